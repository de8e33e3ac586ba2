//! Quartic potential in mode coordinates and first-order Kerr extraction.
//!
//! With `φ_m = φ_ZPF,m (m + m†)` the normal-ordered first-order terms of
//! `Σ t_mnpq φ_m φ_n φ_p φ_q` give
//!
//! * self-Kerr `K_m = 12 t_mmmm φ_m⁴`, so a bare transmon has `K = −E_C`,
//! * cross-Kerr `g_mn = 4 [φ_m²φ_n²] φ_m² φ_n²`,
//! * asymmetric `A_mn = 4 [φ_m³φ_n] φ_m³ φ_n`,
//!
//! where `[·]` is the monomial coefficient. For the canonical quarton
//! circuit this yields `g = E_Q φ_a² φ_b²`.

use crate::circuit::CircuitGraph;
use crate::error::{Error, Result};
use crate::modes::ModalSolution;
use crate::scalar::{lit, Real};

const GHZ_TO_MHZ: f64 = 1e3;

/// Fully symmetric rank-4 tensor of the quartic potential (GHz) in
/// mode-phase coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct QuarticTensor<T> {
    modes: usize,
    data: Vec<T>,
}

impl<T: Real> QuarticTensor<T> {
    fn zeros(modes: usize) -> Self {
        Self {
            modes,
            data: vec![T::zero(); modes.pow(4)],
        }
    }

    fn offset(&self, i: [usize; 4]) -> usize {
        ((i[0] * self.modes + i[1]) * self.modes + i[2]) * self.modes + i[3]
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn get(&self, m: usize, n: usize, p: usize, q: usize) -> T {
        self.data[self.offset([m, n, p, q])]
    }

    /// Coefficient of `Π φ_m^{e_m}` with `Σ e_m = 4`.
    pub fn coefficient(&self, exponents: &[u32]) -> T {
        assert_eq!(exponents.len(), self.modes);
        assert_eq!(exponents.iter().sum::<u32>(), 4, "quartic monomial expected");
        let mut idx = Vec::with_capacity(4);
        let mut ways = 24u32;
        for (m, &e) in exponents.iter().enumerate() {
            ways /= (1..=e).product::<u32>();
            idx.extend(std::iter::repeat_n(m, e as usize));
        }
        self.get(idx[0], idx[1], idx[2], idx[3]) * lit::<T>(ways as f64)
    }

    /// Largest deviation from full index-permutation symmetry.
    pub fn asymmetry(&self) -> T {
        let n = self.modes;
        let mut worst = T::zero();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let t = self.get(a, b, c, d);
                        for p in [[b, a, c, d], [a, c, b, d], [a, b, d, c], [d, c, b, a]] {
                            worst = worst.max((t - self.get(p[0], p[1], p[2], p[3])).abs());
                        }
                    }
                }
            }
        }
        worst
    }
}

/// Sums `c4/24 · (Σ_m r_bm φ_m)⁴` over branches, where `r_bm` is the phase
/// of branch `b` in mode `m`.
pub fn quartic_tensor<T: Real>(graph: &CircuitGraph<T>, modes: &ModalSolution<T>) -> Result<QuarticTensor<T>> {
    if !modes.matches(graph) {
        return Err(Error::MismatchedSolution);
    }
    let n = modes.len();
    let mut t = QuarticTensor::zeros(n);
    for (b, branch) in graph.branches().iter().enumerate() {
        let w = branch.potential.c4 / lit::<T>(24.0);
        if w == T::zero() {
            continue;
        }
        let r: Vec<T> = modes.modes.iter().map(|m| m.branch_amplitudes[b]).collect();
        for o in 0..t.data.len() {
            // sorted index order keeps the tensor exactly symmetric
            let mut idx = [o / (n * n * n), (o / (n * n)) % n, (o / n) % n, o % n];
            idx.sort_unstable();
            t.data[o] += w * r[idx[0]] * r[idx[1]] * r[idx[2]] * r[idx[3]];
        }
    }
    Ok(t)
}

/// Kerr coefficients in MHz; entries touching a free mode are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct KerrReport<T> {
    pub frequencies_ghz: Vec<T>,
    pub self_kerr_mhz: Vec<Option<T>>,
    pub cross_kerr_mhz: Vec<Vec<Option<T>>>,
    /// `asym_mhz[m][n]` is the `φ_m³φ_n` strength.
    pub asym_mhz: Vec<Vec<Option<T>>>,
    pub warnings: Vec<String>,
}

impl<T: Real> KerrReport<T> {
    pub fn self_kerr(&self, m: usize) -> Option<T> {
        self.self_kerr_mhz[m]
    }

    pub fn cross_kerr(&self, m: usize, n: usize) -> Option<T> {
        self.cross_kerr_mhz[m][n]
    }

    pub fn asym(&self, m: usize, n: usize) -> Option<T> {
        self.asym_mhz[m][n]
    }
}

fn check_sizes<T: Real>(t: &QuarticTensor<T>, modes: &ModalSolution<T>) -> Result<()> {
    if t.modes() == modes.len() {
        Ok(())
    } else {
        Err(Error::MismatchedSolution)
    }
}

/// `4 [φ_m³φ_n] φ_m³ φ_n` in MHz for every ordered pair `m ≠ n`.
pub fn asymmetric_coefficients<T: Real>(t: &QuarticTensor<T>, modes: &ModalSolution<T>) -> Result<Vec<Vec<Option<T>>>> {
    check_sizes(t, modes)?;
    let n = modes.len();
    let zpf: Vec<Option<T>> = modes.modes.iter().map(|m| m.phi_zpf).collect();
    let scale = lit::<T>(4.0 * 4.0 * GHZ_TO_MHZ);
    Ok((0..n)
        .map(|m| {
            (0..n)
                .map(|k| match (zpf[m], zpf[k]) {
                    (Some(zm), Some(zk)) if m != k => Some(scale * t.get(m, m, m, k) * zm * zm * zm * zk),
                    _ => None,
                })
                .collect()
        })
        .collect())
}

pub fn kerr_coefficients<T: Real>(t: &QuarticTensor<T>, modes: &ModalSolution<T>) -> Result<KerrReport<T>> {
    check_sizes(t, modes)?;
    let n = modes.len();
    let zpf: Vec<Option<T>> = modes.modes.iter().map(|m| m.phi_zpf).collect();
    let warnings = (0..n)
        .filter(|&m| zpf[m].is_none())
        .map(|m| format!("mode {m} is free (zero frequency) and is excluded from the Kerr report"))
        .collect();
    let mhz = lit::<T>(GHZ_TO_MHZ);
    let self_kerr_mhz = (0..n)
        .map(|m| zpf[m].map(|z| lit::<T>(12.0) * t.get(m, m, m, m) * z.powi(4) * mhz))
        .collect();
    let cross_kerr_mhz = (0..n)
        .map(|m| {
            (0..n)
                .map(|k| match (zpf[m], zpf[k]) {
                    (Some(zm), Some(zk)) if m != k => {
                        let (lo, hi) = (m.min(k), m.max(k));
                        let (zl, zh) = if m < k { (zm, zk) } else { (zk, zm) };
                        Some(lit::<T>(24.0) * t.get(lo, lo, hi, hi) * zl * zl * zh * zh * mhz)
                    }
                    _ => None,
                })
                .collect()
        })
        .collect();
    Ok(KerrReport {
        frequencies_ghz: modes.frequencies(),
        self_kerr_mhz,
        cross_kerr_mhz,
        asym_mhz: asymmetric_coefficients(t, modes)?,
        warnings,
    })
}

/// Normal modes, quartic tensor and Kerr report of a circuit.
pub fn analyze<T: Real>(graph: &CircuitGraph<T>) -> Result<(ModalSolution<T>, KerrReport<T>)> {
    let modes = graph.normal_modes()?;
    let t = quartic_tensor(graph, &modes)?;
    let report = kerr_coefficients(&t, &modes)?;
    Ok((modes, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Element;
    use crate::constants::{charging_energy, inductive_energy};

    fn canonical(e_q: f64, e_ja: f64, e_jb: f64, c_a: f64, c_b: f64) -> CircuitGraph<f64> {
        let mut els = vec![
            Element::capacitor(1, 0, c_a).unwrap(),
            Element::junction(1, 0, e_ja).unwrap(),
            Element::capacitor(2, 0, c_b).unwrap(),
            Element::junction(2, 0, e_jb).unwrap(),
        ];
        if e_q > 0.0 {
            els.extend(Element::quarton(1, 2, e_q, None).unwrap());
        }
        CircuitGraph::new(3, 0, els).unwrap()
    }

    #[test]
    fn bare_transmon_self_kerr_is_minus_ec() {
        let g = canonical(0.0, 20.0, 30.0, 80.0, 60.0);
        let (_, r) = analyze(&g).unwrap();
        let ec = [charging_energy(80.0) * 1e3, charging_energy(60.0) * 1e3];
        let mut k = [r.self_kerr(0).unwrap(), r.self_kerr(1).unwrap()];
        k.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut want = [-ec[0], -ec[1]];
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (k, w) in k.iter().zip(want) {
            assert!((k / w - 1.0).abs() < 1e-12, "{k} vs {w}");
        }
        assert_eq!(r.cross_kerr(0, 1), Some(0.0));
        assert_eq!(r.asym(0, 1), Some(0.0));
    }

    #[test]
    fn canonical_cross_kerr_anchor() {
        let (e_q, e_ja, e_jb) = (3.0, 25.0, 35.0);
        let g = canonical(e_q, e_ja, e_jb, 90.0, 70.0);
        let (modes, r) = analyze(&g).unwrap();
        let zpf: Vec<f64> = modes.modes.iter().map(|m| m.phi_zpf.unwrap()).collect();
        let want = e_q * zpf[0].powi(2) * zpf[1].powi(2) * 1e3;
        assert!((r.cross_kerr(0, 1).unwrap() / want - 1.0).abs() < 1e-12);
        assert_eq!(r.cross_kerr(0, 1), r.cross_kerr(1, 0));
    }

    #[test]
    fn quartic_weights_of_the_coupler() {
        let e_q = 12.0;
        let g = canonical(e_q, 25.0, 25.0, 80.0, 80.0);
        let modes = g.normal_modes().unwrap();
        let t = quartic_tensor(&g, &modes).unwrap();
        let base = e_q / 24.0;
        assert!((t.coefficient(&[2, 2]) - 6.0 * base).abs() < 1e-12);
        assert!((t.coefficient(&[3, 1]) + 4.0 * base).abs() < 1e-12);
        assert!((t.coefficient(&[1, 3]) + 4.0 * base).abs() < 1e-12);
        assert!(t.asymmetry() == 0.0);
    }

    #[test]
    fn identical_qubits_asym_ratio() {
        let g = canonical(5.0, 25.0, 25.0, 80.0, 80.0);
        let (_, r) = analyze(&g).unwrap();
        let ratio = r.asym(0, 1).unwrap() / r.cross_kerr(0, 1).unwrap();
        assert!((ratio.abs() - 4.0 / 6.0).abs() < 1e-9, "{ratio}");
    }

    #[test]
    fn self_kerr_cancels_at_matching_energy() {
        let e_j = 30.0;
        let g = canonical(e_j, e_j, e_j, 80.0, 80.0);
        let (_, r) = analyze(&g).unwrap();
        assert!(r.self_kerr(0).unwrap().abs() < 1e-9);
        assert!(r.self_kerr(1).unwrap().abs() < 1e-9);
        assert!(r.cross_kerr(0, 1).unwrap() > 0.0);
    }

    #[test]
    fn free_modes_are_excluded() {
        let g = CircuitGraph::new(
            3,
            0,
            vec![
                Element::capacitor(1, 0, 80.0).unwrap(),
                Element::junction(1, 0, inductive_energy(10.0)).unwrap(),
                Element::capacitor(2, 0, 50.0).unwrap(),
            ],
        )
        .unwrap();
        let (modes, r) = analyze(&g).unwrap();
        let free = modes.modes.iter().position(|m| m.is_free()).unwrap();
        assert_eq!(r.self_kerr(free), None);
        assert_eq!(r.cross_kerr(0, 1), None);
        assert_eq!(r.warnings.len(), 1);
    }

    #[test]
    fn rejects_foreign_solution() {
        let a = canonical(1.0, 20.0, 20.0, 80.0, 80.0);
        let b = CircuitGraph::new(
            2,
            0,
            vec![
                Element::capacitor(1, 0, 80.0).unwrap(),
                Element::junction(1, 0, 20.0).unwrap(),
            ],
        )
        .unwrap();
        let modes = b.normal_modes().unwrap();
        assert_eq!(quartic_tensor(&a, &modes), Err(Error::MismatchedSolution));
    }
}
