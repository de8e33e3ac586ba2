//! Linear normal modes and zero-point phase fluctuations.
//!
//! Solves `ω² C v = L⁻¹ v` with `C` in fF and `L⁻¹` in 1/nH by reducing it
//! to a symmetric standard problem through the Cholesky factor of `C`.
//! Modes are then expressed in a per-mode phase coordinate: each mode is
//! scaled so that the phase across its reference branch (the branch
//! holding the largest share of its inductive energy) has unit amplitude.

use nalgebra::{Cholesky, DMatrix, DVector, SymmetricEigen};

use crate::circuit::CircuitGraph;
use crate::constants::{CHARGING_GHZ_FF, INDUCTIVE_GHZ_NH};
use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};

/// Free-mode threshold on `ω²`, relative to the largest `|ω²|`.
const FREE_MODE_TOLERANCE: f64 = 1e-10;
/// Relative `ω²` spread below which modes are treated as degenerate.
const DEGENERACY_TOLERANCE: f64 = 1e-9;
const MAX_LOCALIZATION_SWEEPS: usize = 200;

/// A branch as seen by the modal solver: endpoints in grounded-matrix
/// indices (`None` is ground) and its linear coefficient `c2` in GHz.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalBranch<T> {
    pub plus: Option<usize>,
    pub minus: Option<usize>,
    pub linear: T,
}

impl<T: Real> ModalBranch<T> {
    /// Branch phase `v[plus] − v[minus]` for node amplitudes `v`.
    pub fn phase(&self, v: &DVector<T>) -> T {
        let at = |i: Option<usize>| i.map_or(T::zero(), |i| v[i]);
        at(self.plus) - at(self.minus)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mode<T> {
    /// Linear frequency in GHz; zero for free modes.
    pub frequency_ghz: T,
    /// Node amplitudes scaled so the reference branch phase is `+1`.
    pub vector: DVector<T>,
    /// Branch phases of `vector`, one per branch.
    pub branch_amplitudes: DVector<T>,
    pub reference_branch: Option<usize>,
    /// Zero-point phase fluctuation of the reference branch; `None` for
    /// free modes.
    pub phi_zpf: Option<T>,
    /// Share of the mode's inductive energy in each branch; sums to one.
    pub participation: Option<DVector<T>>,
    /// Same mode normalized to `vᵀ C v = 1` (fF).
    pub c_normalized: DVector<T>,
}

impl<T: Real> Mode<T> {
    pub fn is_free(&self) -> bool {
        self.phi_zpf.is_none()
    }

    /// Zero-point phase fluctuation across `branch` in this mode.
    pub fn branch_phi_zpf(&self, branch: usize) -> Option<T> {
        self.phi_zpf.map(|z| z * self.branch_amplitudes[branch])
    }
}

/// Normal modes sorted by ascending frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalSolution<T> {
    pub modes: Vec<Mode<T>>,
    /// Node pairs of the branches, recorded when solved from a graph.
    pub(crate) branch_nodes: Vec<(usize, usize)>,
    pub(crate) num_nodes: Option<(usize, usize)>,
    pub(crate) num_branches: usize,
}

impl<T: Real> ModalSolution<T> {
    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn num_branches(&self) -> usize {
        self.num_branches
    }

    pub fn frequencies(&self) -> Vec<T> {
        self.modes.iter().map(|m| m.frequency_ghz).collect()
    }

    /// Indices of modes with a finite frequency.
    pub fn oscillating(&self) -> Vec<usize> {
        (0..self.modes.len()).filter(|&m| !self.modes[m].is_free()).collect()
    }

    /// `φ_ZPF` per branch (rows) and mode (columns); NaN for free modes.
    pub fn phi_zpf_matrix(&self) -> DMatrix<T> {
        DMatrix::from_fn(self.num_branches, self.modes.len(), |b, m| {
            self.modes[m].branch_phi_zpf(b).unwrap_or_else(|| lit(f64::NAN))
        })
    }

    /// Largest `|vᵢᵀ C vⱼ|` over distinct modes.
    pub fn orthogonality_error(&self, c: &DMatrix<T>) -> T {
        let mut worst = T::zero();
        for i in 0..self.modes.len() {
            for j in 0..i {
                let x = self.modes[i].c_normalized.dot(&(c * &self.modes[j].c_normalized));
                worst = worst.max(x.abs());
            }
        }
        worst
    }

    /// The oscillating mode holding the largest share of `branch`'s
    /// inductive energy, skipping modes in `taken`.
    pub fn dominant_mode(&self, branch: usize, taken: &[usize]) -> Option<usize> {
        self.oscillating()
            .into_iter()
            .filter(|m| !taken.contains(m))
            .filter_map(|m| self.modes[m].participation.as_ref().map(|p| (m, p[branch])))
            .fold(None, |best: Option<(usize, T)>, (m, p)| match best {
                Some((_, bp)) if bp >= p => best,
                _ => Some((m, p)),
            })
            .map(|(m, _)| m)
    }

    pub(crate) fn bind(&mut self, graph: &CircuitGraph<T>) {
        self.branch_nodes = graph.branches().iter().map(|b| b.nodes).collect();
        self.num_nodes = Some((graph.num_nodes(), graph.ground()));
    }

    pub(crate) fn matches(&self, graph: &CircuitGraph<T>) -> bool {
        let nodes: Vec<(usize, usize)> = graph.branches().iter().map(|b| b.nodes).collect();
        nodes.len() == self.num_branches
            && self.modes.iter().all(|m| m.vector.len() == graph.dimension())
            && match self.num_nodes {
                Some(n) => n == (graph.num_nodes(), graph.ground()) && nodes == self.branch_nodes,
                None => true,
            }
    }
}

fn check_symmetric<T: Real>(m: &DMatrix<T>, which: &'static str) -> Result<()> {
    let scale = m.iter().fold(T::zero(), |a, x| a.max(x.abs()));
    let tol = scale * lit::<T>(1e-12);
    for i in 0..m.nrows() {
        for j in 0..i {
            if (m[(i, j)] - m[(j, i)]).abs() > tol {
                return Err(Error::NotSymmetric { which, row: i, col: j });
            }
        }
    }
    Ok(())
}

/// Rotates degenerate columns of `u` to maximize `Σ (c2_b · φ_b²)²`, which
/// concentrates each mode's inductive energy in as few branches as
/// possible.
fn localize<T: Real>(u: &mut DMatrix<T>, cols: &[usize], branches: &[ModalBranch<T>]) {
    let weights: Vec<T> = branches.iter().map(|b| b.linear * b.linear).collect();
    if weights.iter().all(|w| *w == T::zero()) {
        return;
    }
    let half = lit::<T>(0.5);
    for _ in 0..MAX_LOCALIZATION_SWEEPS {
        let mut largest = T::zero();
        for (i, &m) in cols.iter().enumerate() {
            for &n in &cols[i + 1..] {
                let (um, un) = (u.column(m).into_owned(), u.column(n).into_owned());
                let (mut a, mut b, mut x) = (T::zero(), T::zero(), T::zero());
                let mut total = T::zero();
                for (br, &w) in branches.iter().zip(&weights) {
                    let (dm, dn) = (br.phase(&um), br.phase(&un));
                    let p = dm * dn;
                    let q = (dn * dn - dm * dm) * half;
                    a += w * p * p;
                    b += w * q * q;
                    x += w * p * q;
                    total += w * (dm * dm + dn * dn) * (dm * dm + dn * dn);
                }
                let amplitude = ((a - b) * (a - b) + lit::<T>(4.0) * x * x).sqrt();
                if amplitude <= total * lit::<T>(1e-14) {
                    continue;
                }
                // minimizes Σ w (φm φn)² over rotations, i.e. maximizes Σ w (φm⁴ + φn⁴)
                let theta = (-(x + x)).atan2(-(a - b)) * lit::<T>(0.25);
                if theta.abs() < lit::<T>(1e-15) {
                    continue;
                }
                largest = largest.max(theta.abs());
                let (c, s) = (theta.cos(), theta.sin());
                u.set_column(m, &(&um * c + &un * s));
                u.set_column(n, &(&un * c - &um * s));
            }
        }
        if largest < lit::<T>(1e-12) {
            break;
        }
    }
}

fn argmax_with_ties<T: Real>(values: &[T]) -> Option<usize> {
    let best = values.iter().copied().fold(None, |acc: Option<T>, v| match acc {
        Some(a) if a >= v => Some(a),
        _ => Some(v),
    })?;
    let tol = best.abs() * lit::<T>(1e-9);
    values.iter().position(|&v| v >= best - tol)
}

/// Solves `ω² C v = L⁻¹ v`.
///
/// `branches` lists the inductive branches used for zero-point
/// fluctuations, reference-branch normalization and the localization of
/// degenerate modes. Zero-frequency modes are kept and flagged free.
pub fn normal_modes<T: Real>(
    c: &DMatrix<T>,
    linv: &DMatrix<T>,
    branches: &[ModalBranch<T>],
) -> Result<ModalSolution<T>> {
    let n = c.nrows();
    if c.ncols() != n || linv.nrows() != n || linv.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "capacitance {}x{}, inverse inductance {}x{}",
            c.nrows(),
            c.ncols(),
            linv.nrows(),
            linv.ncols()
        )));
    }
    for b in branches {
        if b.plus.is_some_and(|i| i >= n) || b.minus.is_some_and(|i| i >= n) {
            return Err(Error::DimensionMismatch("branch endpoint outside the matrices".into()));
        }
    }
    check_symmetric(c, "capacitance")?;
    check_symmetric(linv, "inverse inductance")?;

    let chol = Cholesky::new(c.clone()).ok_or(Error::NotPositiveDefinite)?;
    let l = chol.l();
    let half_solved = l.solve_lower_triangular(linv).ok_or(Error::NotPositiveDefinite)?;
    let reduced = l
        .solve_lower_triangular(&half_solved.transpose())
        .ok_or(Error::NotPositiveDefinite)?;
    let reduced = (&reduced + reduced.transpose()) * lit::<T>(0.5);
    let eig = SymmetricEigen::new(reduced);
    let mut u = l
        .tr_solve_lower_triangular(&eig.eigenvectors)
        .ok_or(Error::NotPositiveDefinite)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    let lambda: Vec<T> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    u = DMatrix::from_fn(n, n, |r, k| u[(r, order[k])]);

    let scale = lambda.iter().fold(T::zero(), |a, x| a.max(x.abs()));
    let tol = scale * lit::<T>(FREE_MODE_TOLERANCE);
    if let Some(k) = lambda.iter().position(|&x| x < -tol) {
        return Err(Error::Unstable {
            mode: k,
            omega_squared: to_f64(lambda[k]),
        });
    }
    let free: Vec<bool> = lambda.iter().map(|&x| x.abs() <= tol).collect();

    // degenerate clusters among oscillating modes
    let mut k = 0;
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    while k < n {
        let mut end = k + 1;
        if !free[k] {
            while end < n && !free[end] && lambda[end] - lambda[k] <= lambda[end].abs() * lit::<T>(DEGENERACY_TOLERANCE)
            {
                end += 1;
            }
        }
        if end - k > 1 {
            clusters.push((k..end).collect());
        }
        k = end;
    }
    for cluster in &clusters {
        localize(&mut u, cluster, branches);
    }

    let energy_scale = lit::<T>(8.0 * CHARGING_GHZ_FF * INDUCTIVE_GHZ_NH);
    let mut modes: Vec<Mode<T>> = (0..n)
        .map(|k| {
            let mut col = u.column(k).into_owned();
            let mut phases: Vec<T> = branches.iter().map(|b| b.phase(&col)).collect();
            let participation = (!free[k]).then(|| {
                let denom = lambda[k] * lit::<T>(INDUCTIVE_GHZ_NH);
                DVector::from_iterator(
                    branches.len(),
                    branches.iter().zip(&phases).map(|(b, &d)| b.linear * d * d / denom),
                )
            });
            let reference = match &participation {
                Some(p) if p.iter().any(|&x| x > T::zero()) => argmax_with_ties(p.as_slice()),
                _ => {
                    let mags: Vec<T> = phases.iter().map(|d| d.abs()).collect();
                    argmax_with_ties(&mags).filter(|&r| mags[r] > T::zero())
                }
            };
            let mut s = reference.map_or(T::one(), |r| phases[r]);
            if s < T::zero() {
                col = -col;
                phases.iter_mut().for_each(|d| *d = -*d);
                s = -s;
            }
            let frequency_ghz = if free[k] {
                T::zero()
            } else {
                (energy_scale * lambda[k]).sqrt()
            };
            // φ_ZPF² = Δv² · 4 E_C(1 fF) / f for vᵀCv = 1 in fF
            let phi_zpf =
                (!free[k] && reference.is_some()).then(|| s * (lit::<T>(4.0 * CHARGING_GHZ_FF) / frequency_ghz).sqrt());
            Mode {
                frequency_ghz,
                vector: &col / s,
                branch_amplitudes: DVector::from_iterator(branches.len(), phases.iter().map(|&d| d / s)),
                reference_branch: reference,
                phi_zpf,
                participation,
                c_normalized: col,
            }
        })
        .collect();

    for cluster in &clusters {
        let mut sub: Vec<Mode<T>> = cluster.iter().map(|&k| modes[k].clone()).collect();
        sub.sort_by_key(|m| m.reference_branch.unwrap_or(usize::MAX));
        for (&k, m) in cluster.iter().zip(sub) {
            modes[k] = m;
        }
    }

    Ok(ModalSolution {
        modes,
        branch_nodes: Vec::new(),
        num_nodes: None,
        num_branches: branches.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Element;
    use crate::constants::{charging_energy, inductance_for_frequency, inductive_energy};

    fn transmon(c_ff: f64, l_nh: f64) -> CircuitGraph<f64> {
        CircuitGraph::new(
            2,
            0,
            vec![
                Element::capacitor(1, 0, c_ff).unwrap(),
                Element::junction(1, 0, inductive_energy(l_nh)).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn isolated_transmon_frequency_round_trip() {
        let l = inductance_for_frequency(7.0, 103.0);
        let sol = transmon(103.0, l).normal_modes().unwrap();
        assert_eq!(sol.len(), 1);
        assert!((sol.modes[0].frequency_ghz - 7.0).abs() < 1e-10);
    }

    #[test]
    fn isolated_transmon_zero_point_fluctuation() {
        let (c, l) = (80.0, 7.5);
        let sol = transmon(c, l).normal_modes().unwrap();
        let expected = (2.0 * charging_energy(c) / inductive_energy(l)).powf(0.25);
        let got = sol.modes[0].phi_zpf.unwrap();
        assert!((got / expected - 1.0).abs() < 1e-12, "{got} vs {expected}");
        assert_eq!(sol.modes[0].reference_branch, Some(0));
        assert_eq!(sol.modes[0].branch_amplitudes[0], 1.0);
    }

    #[test]
    fn identical_decoupled_transmons_stay_local() {
        let e_j = 25.0f64;
        let mut els = vec![
            Element::capacitor(1, 0, 90.0f64).unwrap(),
            Element::junction(1, 0, e_j).unwrap(),
            Element::capacitor(2, 0, 90.0).unwrap(),
            Element::junction(2, 0, e_j).unwrap(),
        ];
        els.extend(Element::quarton(1, 2, 10.0, None).unwrap());
        let g = CircuitGraph::new(3, 0, els).unwrap();
        let sol = g.normal_modes().unwrap();
        let f = sol.frequencies();
        assert!((f[0] - f[1]).abs() < 1e-12 * f[0]);
        assert_eq!(sol.modes[0].reference_branch, Some(0));
        assert_eq!(sol.modes[1].reference_branch, Some(1));
        for m in &sol.modes {
            // no amplitude leaks into the other qubit
            let other = if m.reference_branch == Some(0) { 1 } else { 0 };
            assert!(m.branch_amplitudes[other].abs() < 1e-10, "{}", m.branch_amplitudes);
        }
        assert!((sol.modes[0].phi_zpf.unwrap() - sol.modes[1].phi_zpf.unwrap()).abs() < 1e-12);
    }

    #[test]
    fn capacitor_only_circuit_is_free() {
        let g = CircuitGraph::new(2, 0, vec![Element::capacitor(1, 0, 10.0).unwrap()]).unwrap();
        let sol = g.normal_modes().unwrap();
        assert!(sol.modes[0].is_free());
        assert_eq!(sol.modes[0].frequency_ghz, 0.0);
        assert!(sol.oscillating().is_empty());
    }

    #[test]
    fn negative_stiffness_is_unstable() {
        let g = CircuitGraph::new(
            2,
            0,
            vec![
                Element::capacitor(1, 0, 10.0).unwrap(),
                Element::inductor(1, 0, 5.0, crate::potentials::Sign::Negative).unwrap(),
            ],
        )
        .unwrap();
        assert!(matches!(g.normal_modes(), Err(Error::Unstable { mode: 0, .. })));
    }

    #[test]
    fn rejects_bad_matrices() {
        let c = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.4, 1.0]);
        let l = DMatrix::identity(2, 2);
        assert!(matches!(normal_modes(&c, &l, &[]), Err(Error::NotSymmetric { .. })));
        let c = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        assert_eq!(normal_modes(&c, &l, &[]), Err(Error::NotPositiveDefinite));
        let c = DMatrix::<f64>::identity(3, 3);
        assert!(matches!(normal_modes(&c, &l, &[]), Err(Error::DimensionMismatch(_))));
    }
}
