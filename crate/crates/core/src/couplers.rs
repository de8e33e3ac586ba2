//! Two-transmon circuits joined by the supported couplers, the tilt
//! equation and the ring-modulator reduction.
//!
//! Two-node couplers use ground `0`, qubit `a` on node `1` and qubit `b` on
//! node `2`, with the coupler and `C_J` across `(1, 2)`. Ring modulators
//! use nodes `0..4` for `φ₁..φ₄` with `φ₄` grounded, qubit `a` across
//! `(φ₁, φ₃)`, qubit `b` across `(φ₂, φ₄)` and one ring element plus `C_J`
//! on each of `(φ₁,φ₂), (φ₂,φ₃), (φ₃,φ₄), (φ₄,φ₁)`.

use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::circuit::{CircuitGraph, Element};
use crate::constants::{charging_energy, inductance_for_frequency, inductive_energy, INDUCTIVE_GHZ_NH};
use crate::error::{Error, Result};
use crate::oracle::{self, OracleInputs};
use crate::poly::Polynomial;
use crate::potentials::TaylorPotential;
use crate::scalar::{abs, int, lit, Real, Scalar};

/// Ring nodes `φ₁..φ₄` of the ring modulators built here.
pub const RING_NODES: [usize; 4] = [0, 1, 2, 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CouplerKind {
    CanonicalQuarton,
    TiltedQuarton,
    CShuntSquid,
    Jrm,
    Qrm,
}

impl CouplerKind {
    pub const ALL: [CouplerKind; 5] = [
        CouplerKind::CanonicalQuarton,
        CouplerKind::TiltedQuarton,
        CouplerKind::CShuntSquid,
        CouplerKind::Jrm,
        CouplerKind::Qrm,
    ];

    pub fn is_ring(self) -> bool {
        matches!(self, CouplerKind::Jrm | CouplerKind::Qrm)
    }

    /// Whether the coupling element is purely nonlinear (quarton based).
    pub fn is_quarton(self) -> bool {
        matches!(
            self,
            CouplerKind::CanonicalQuarton | CouplerKind::TiltedQuarton | CouplerKind::Qrm
        )
    }
}

impl fmt::Display for CouplerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CouplerKind::CanonicalQuarton => "canonical_quarton",
            CouplerKind::TiltedQuarton => "tilted_quarton",
            CouplerKind::CShuntSquid => "c_shunt_squid",
            CouplerKind::Jrm => "jrm",
            CouplerKind::Qrm => "qrm",
        })
    }
}

/// A grounded transmon: shunt capacitance and junction energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Qubit<T> {
    pub c_ff: T,
    pub e_j: T,
}

impl<T: Real> Qubit<T> {
    pub fn new(c_ff: T, e_j: T) -> Self {
        Self { c_ff, e_j }
    }

    /// Junction chosen so the bare `LC` frequency is `f_ghz`.
    pub fn from_frequency(c_ff: T, f_ghz: T) -> Self {
        Self {
            c_ff,
            e_j: inductive_energy(inductance_for_frequency(f_ghz, c_ff)),
        }
    }

    pub fn inductance_nh(&self) -> T {
        lit::<T>(INDUCTIVE_GHZ_NH) / self.e_j
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplerSpec<T> {
    pub kind: CouplerKind,
    pub e_q: T,
    pub qubit_a: Qubit<T>,
    pub qubit_b: Qubit<T>,
    pub c_j: T,
}

fn invalid(reason: impl Into<String>) -> Error {
    Error::InvalidCoupler(reason.into())
}

impl<T: Real> CouplerSpec<T> {
    pub fn validate(&self) -> Result<()> {
        let finite_nonneg = |name: &'static str, v: T| {
            if v >= T::zero() && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    reason: format!("must be finite and non-negative, got {v}"),
                })
            }
        };
        finite_nonneg("e_q", self.e_q)?;
        finite_nonneg("c_j", self.c_j)?;
        for (name, v) in [
            ("qubit_a.c_ff", self.qubit_a.c_ff),
            ("qubit_a.e_j", self.qubit_a.e_j),
            ("qubit_b.c_ff", self.qubit_b.c_ff),
            ("qubit_b.e_j", self.qubit_b.e_j),
        ] {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("must be finite and positive, got {v}"),
                });
            }
        }
        if self.c_j == T::zero() {
            if self.kind == CouplerKind::TiltedQuarton {
                return Err(invalid("a tilted quarton needs C_J > 0 to cancel"));
            }
            if self.kind.is_ring() {
                return Err(invalid("ring modulators need C_J > 0, otherwise the ring nodes float"));
            }
        }
        Ok(())
    }

    /// `C_J/√((C_a+C_J)(C_b+C_J))`.
    pub fn capacitive_ratio(&self) -> T {
        capacitive_ratio(self.c_j, self.qubit_a.c_ff, self.qubit_b.c_ff)
    }

    /// Linear inductance of the tilted quarton, `None` for other kinds.
    pub fn l_tilt(&self) -> Result<Option<T>> {
        if self.kind != CouplerKind::TiltedQuarton {
            return Ok(None);
        }
        tilt_inductance(
            self.c_j,
            self.qubit_a.c_ff,
            self.qubit_b.c_ff,
            self.qubit_a.inductance_nh(),
            self.qubit_b.inductance_nh(),
        )
        .map(Some)
    }

    /// Closed-form inputs: charging energies from `C + C_J`, and the
    /// coupler's effective `E_Q` and linear stiffening `E_Q,tilt`.
    pub fn oracle_inputs(&self) -> Result<OracleInputs<T>> {
        let e_ca = charging_energy(self.qubit_a.c_ff + self.c_j);
        let e_cb = charging_energy(self.qubit_b.c_ff + self.c_j);
        let base = OracleInputs::new(e_ca, e_cb, self.qubit_a.e_j, self.qubit_b.e_j, self.e_q);
        let quarter = lit::<T>(0.25);
        Ok(match self.kind {
            CouplerKind::CanonicalQuarton => base,
            CouplerKind::TiltedQuarton => {
                let l = self.l_tilt()?.expect("tilted");
                base.with_tilt(inductive_energy(l))
            }
            CouplerKind::CShuntSquid => base.with_tilt(self.e_q),
            CouplerKind::Jrm => base.with_e_q(self.e_q * quarter).with_tilt(self.e_q),
            CouplerKind::Qrm => base.with_e_q(self.e_q * quarter),
        })
    }

    /// Closed-form cross-Kerr magnitude in GHz.
    pub fn oracle_g(&self) -> Result<T> {
        Ok(oracle::g_tilted(&self.oracle_inputs()?))
    }

    /// Closed-form self-Kerr of both qubits in GHz; quarton couplers only.
    pub fn oracle_self_kerr(&self) -> Result<Option<(T, T)>> {
        if !self.kind.is_quarton() {
            return Ok(None);
        }
        let i = self.oracle_inputs()?;
        Ok(Some((
            oracle::self_kerr(i.e_ca, i.e_ja, i.e_q, i.e_q_tilt)?,
            oracle::self_kerr(i.e_cb, i.e_jb, i.e_q, i.e_q_tilt)?,
        )))
    }

    /// The two-node canonical circuit a QRM reduces to: `E_Q/4`, qubit
    /// capacitances `C + C_J` and no direct `C_J`.
    pub fn qrm_equivalent(&self) -> Self {
        Self {
            kind: CouplerKind::CanonicalQuarton,
            e_q: self.e_q * lit::<T>(0.25),
            qubit_a: Qubit::new(self.qubit_a.c_ff + self.c_j, self.qubit_a.e_j),
            qubit_b: Qubit::new(self.qubit_b.c_ff + self.c_j, self.qubit_b.e_j),
            c_j: T::zero(),
        }
    }
}

/// A built circuit with the branch index of each qubit junction.
#[derive(Debug, Clone, PartialEq)]
pub struct BuiltCoupler<T> {
    pub graph: CircuitGraph<T>,
    pub qubit_branches: [usize; 2],
    pub l_tilt: Option<T>,
}

fn branch_of(graph: &CircuitGraph<impl Real>, element: usize) -> usize {
    graph
        .branches()
        .iter()
        .position(|b| b.elements.contains(&element))
        .expect("qubit junction belongs to a branch")
}

pub fn build<T: Real>(spec: &CouplerSpec<T>) -> Result<BuiltCoupler<T>> {
    spec.validate()?;
    let (qa, qb) = (spec.qubit_a, spec.qubit_b);
    let has_q = spec.e_q > T::zero();
    let l_tilt = spec.l_tilt()?;

    if spec.kind.is_ring() {
        let mut els = vec![
            Element::capacitor(0, 2, qa.c_ff)?,
            Element::junction(0, 2, qa.e_j)?,
            Element::capacitor(1, 3, qb.c_ff)?,
            Element::junction(1, 3, qb.e_j)?,
        ];
        for k in 0..4 {
            let (x, y) = (RING_NODES[k], RING_NODES[(k + 1) % 4]);
            els.push(Element::capacitor(x, y, spec.c_j)?);
            if has_q {
                match spec.kind {
                    CouplerKind::Jrm => els.push(Element::junction(x, y, spec.e_q)?),
                    _ => els.extend(Element::quarton(x, y, spec.e_q, None)?),
                }
            }
        }
        let graph = CircuitGraph::new(4, 3, els)?;
        let qubit_branches = [branch_of(&graph, 1), branch_of(&graph, 3)];
        return Ok(BuiltCoupler {
            graph,
            qubit_branches,
            l_tilt,
        });
    }

    let mut els = vec![
        Element::capacitor(1, 0, qa.c_ff)?,
        Element::junction(1, 0, qa.e_j)?,
        Element::capacitor(2, 0, qb.c_ff)?,
        Element::junction(2, 0, qb.e_j)?,
    ];
    if spec.c_j > T::zero() {
        els.push(Element::capacitor(1, 2, spec.c_j)?);
    }
    match spec.kind {
        CouplerKind::CanonicalQuarton if has_q => els.extend(Element::quarton(1, 2, spec.e_q, None)?),
        CouplerKind::TiltedQuarton if has_q => els.extend(Element::quarton(1, 2, spec.e_q, l_tilt)?),
        CouplerKind::TiltedQuarton => els.push(Element::inductor(
            1,
            2,
            l_tilt.expect("tilted"),
            crate::potentials::Sign::Positive,
        )?),
        CouplerKind::CShuntSquid if has_q => els.push(Element::junction(1, 2, spec.e_q)?),
        _ => {}
    }
    let graph = CircuitGraph::new(3, 0, els)?;
    let qubit_branches = [branch_of(&graph, 1), branch_of(&graph, 3)];
    Ok(BuiltCoupler {
        graph,
        qubit_branches,
        l_tilt,
    })
}

pub fn capacitive_ratio<T: Real>(c_j: T, c_a: T, c_b: T) -> T {
    c_j / ((c_a + c_j) * (c_b + c_j)).sqrt()
}

/// Linear coupler inductance whose inductive coupling cancels the
/// capacitive coupling through `C_J` under the rotating-wave
/// approximation. Infinite when `C_J = 0`.
pub fn tilt_inductance<T: Real>(c_j: T, c_a: T, c_b: T, l_ja: T, l_jb: T) -> Result<T> {
    for (name, v) in [("c_a", c_a), ("c_b", c_b), ("l_ja", l_ja), ("l_jb", l_jb)] {
        if !(v > T::zero()) || !v.is_finite() {
            return Err(Error::InvalidParameter {
                name,
                reason: format!("must be finite and positive, got {v}"),
            });
        }
    }
    if !(c_j >= T::zero()) || !c_j.is_finite() {
        return Err(Error::InvalidParameter {
            name: "c_j",
            reason: format!("must be finite and non-negative, got {c_j}"),
        });
    }
    if c_j == T::zero() {
        return Ok(lit(f64::INFINITY));
    }
    let g = capacitive_ratio(c_j, c_a, c_b);
    if g >= T::one() {
        return Err(Error::InvalidParameter {
            name: "c_j",
            reason: format!("capacitive ratio {g} must be below 1"),
        });
    }
    let sum = l_ja + l_jb;
    let disc = sum * sum - lit::<T>(4.0) * l_ja * l_jb * (T::one() - T::one() / (g * g));
    Ok((disc.sqrt() - sum) * lit::<T>(0.5))
}

/// Node phases `φ₁..φ₄` in ring-mode coordinates `(a, b, c)` with the
/// common mode dropped: `φ₁ = a/2 + c/4`, `φ₂ = b/2 − c/4`,
/// `φ₃ = −a/2 + c/4`, `φ₄ = −b/2 − c/4`.
fn ring_node_coordinates<S: Scalar>() -> [[S; 3]; 4] {
    let h = S::one() / int::<S>(2);
    let q = S::one() / int::<S>(4);
    let z = S::zero;
    [
        [h.clone(), z(), q.clone()],
        [z(), h.clone(), -q.clone()],
        [-h.clone(), z(), q.clone()],
        [z(), -h, -q],
    ]
}

/// Taylor potential of a four-element ring in `(a, b, c)` coordinates,
/// `a = φ₁ − φ₃`, `b = φ₂ − φ₄`, `c = φ₁ − φ₂ + φ₃ − φ₄`, with element `k`
/// across `(φ_k, φ_{k+1})`.
pub fn ring_potential<S: Scalar>(elements: &[TaylorPotential<S>; 4]) -> Polynomial<S> {
    let coords = ring_node_coordinates::<S>();
    let mut total = Polynomial::zero(3);
    for (k, p) in elements.iter().enumerate() {
        let (x, y) = (&coords[k], &coords[(k + 1) % 4]);
        let d: Vec<S> = (0..3).map(|i| x[i].clone() - y[i].clone()).collect();
        let phase = Polynomial::linear(&d);
        let quad = phase.pow(2).scale(&(p.c2.clone() / int::<S>(2)));
        let quart = phase.pow(4).scale(&(p.c4.clone() / int::<S>(24)));
        total = total.add(&quad).add(&quart);
    }
    total
}

/// Ring of four ideal quartons of energy `e_q`.
pub fn qrm_potential<S: Scalar>(e_q: S) -> Polynomial<S> {
    let q = TaylorPotential::new(S::zero(), e_q);
    ring_potential(&[q.clone(), q.clone(), q.clone(), q])
}

/// Result of reducing a quarton ring modulator to its dipole modes.
#[derive(Debug, Clone, PartialEq)]
pub struct QrmReduction<T> {
    /// Energy of the equivalent single canonical quarton, `E_Q/4`.
    pub effective_e_q: T,
    /// Ring nodes in cycle order `φ₁..φ₄`.
    pub ring: [usize; 4],
    /// Ring potential in `(a, b, c)`.
    pub potential: Polynomial<T>,
    /// Capacitance matrix (fF) in `(a, b, c)`.
    pub mode_capacitance: DMatrix<T>,
}

impl<T> QrmReduction<T> {
    /// Node weights of `a`, `b`, `c` over the ring nodes `φ₁..φ₄`.
    pub fn mode_map(&self) -> [[i8; 4]; 3] {
        [[1, 0, -1, 0], [0, 1, 0, -1], [1, -1, 1, -1]]
    }
}

fn not_ring(reason: impl Into<String>) -> Error {
    Error::NotRingModulator(reason.into())
}

/// Maps ring-mode coordinates `(a, b, c)` to grounded node phases for a
/// ring `φ₁..φ₄` that contains the ground node. A matrix `M` in node
/// coordinates becomes `Jᵀ M J` in mode coordinates.
pub fn ring_mode_transform<T: Real>(graph: &CircuitGraph<T>, ring: [usize; 4]) -> Result<DMatrix<T>> {
    let coords = ring_node_coordinates::<T>();
    let ground_slot = ring
        .iter()
        .position(|&n| n == graph.ground())
        .ok_or_else(|| not_ring("ground must be a ring node"))?;
    let mut jac = DMatrix::zeros(graph.dimension(), 3);
    for (slot, &node) in ring.iter().enumerate() {
        if let Some(i) = graph.node_index(node) {
            for k in 0..3 {
                jac[(i, k)] = coords[slot][k] - coords[ground_slot][k];
            }
        }
    }
    Ok(jac)
}

/// Finds the quarton 4-cycle of `graph`, expands its potential in the
/// ring-mode basis and checks that the quadratic and `φ³φ` terms vanish.
pub fn qrm_reduce<T: Real>(graph: &CircuitGraph<T>) -> Result<QrmReduction<T>> {
    let branches = graph.branches();
    let quartons: Vec<_> = branches
        .iter()
        .filter(|b| b.potential.c2 == T::zero() && b.potential.c4 > T::zero())
        .collect();
    if quartons.len() != 4 {
        return Err(not_ring(format!(
            "expected 4 quarton branches, found {}",
            quartons.len()
        )));
    }
    if graph.num_nodes() != 4 {
        return Err(not_ring("a ring modulator has exactly four nodes"));
    }
    let neighbours = |n: usize| -> Vec<usize> {
        let mut v: Vec<usize> = quartons
            .iter()
            .filter_map(|b| match b.nodes {
                (x, y) if x == n => Some(y),
                (x, y) if y == n => Some(x),
                _ => None,
            })
            .collect();
        v.sort_unstable();
        v
    };
    if (0..4).any(|n| neighbours(n).len() != 2) {
        return Err(not_ring("quarton branches do not form a 4-cycle"));
    }
    let n1 = 0;
    let n2 = neighbours(n1)[0];
    let n4 = neighbours(n1)[1];
    let n3 = *neighbours(n2).iter().find(|&&x| x != n1).expect("cycle");
    if !neighbours(n4).contains(&n3) || n3 == n1 {
        return Err(not_ring("quarton branches do not form a 4-cycle"));
    }
    let ring = [n1, n2, n3, n4];
    let diagonal = |x: usize, y: usize| branches.iter().any(|b| b.nodes == (x, y) || b.nodes == (y, x));
    if !diagonal(n1, n3) || !diagonal(n2, n4) {
        return Err(not_ring("both diagonals must carry a qubit branch"));
    }

    let e_q = quartons[0].potential.c4;
    let scale = e_q.abs();
    if quartons
        .iter()
        .any(|b| (b.potential.c4 - e_q).abs() > scale * lit::<T>(1e-12))
    {
        return Err(not_ring("ring quartons must be identical"));
    }

    // ring element k sits across (φ_k, φ_{k+1}); orientation is irrelevant
    // for an even potential
    let mut elements = [
        TaylorPotential::zero(),
        TaylorPotential::zero(),
        TaylorPotential::zero(),
        TaylorPotential::zero(),
    ];
    for (k, el) in elements.iter_mut().enumerate() {
        let (x, y) = (ring[k], ring[(k + 1) % 4]);
        let b = quartons
            .iter()
            .find(|b| b.nodes == (x, y) || b.nodes == (y, x))
            .expect("cycle edge");
        *el = b.potential.clone();
    }
    let potential = ring_potential(&elements);
    let tol = scale * lit::<T>(1e-12);
    let quadratic = potential.homogeneous_part(2);
    if quadratic.terms().any(|(_, c)| abs(*c) > tol) {
        return Err(not_ring(format!("non-vanishing quadratic part {quadratic}")));
    }
    for e in [[3, 1, 0], [1, 3, 0]] {
        if potential.coefficient(&e).abs() > tol {
            return Err(not_ring("non-vanishing asymmetric quartic terms"));
        }
    }
    // [a²b²] = 6·E_eff/24
    let effective_e_q = potential.coefficient(&[2, 2, 0]) * lit::<T>(4.0);

    let jac = ring_mode_transform(graph, ring)?;
    let mode_capacitance = jac.transpose() * graph.capacitance_matrix()? * &jac;
    Ok(QrmReduction {
        effective_e_q,
        ring,
        potential,
        mode_capacitance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn spec(kind: CouplerKind, e_q: f64, c_j: f64) -> CouplerSpec<f64> {
        CouplerSpec {
            kind,
            e_q,
            qubit_a: Qubit::new(95.0, inductive_energy(10.0)),
            qubit_b: Qubit::new(95.0, inductive_energy(10.0)),
            c_j,
        }
    }

    #[test]
    fn tilt_worked_example() {
        assert!((capacitive_ratio(5.0f64, 95.0, 95.0) - 0.05).abs() < 1e-15);
        let l = tilt_inductance(5.0f64, 95.0, 95.0, 10.0, 10.0).unwrap();
        assert!((l - 190.0).abs() < 1e-9, "{l}");
        let q = Element::quarton(0, 1, inductive_energy(10.0), Some(l)).unwrap();
        assert!((q[1].inductance_nh().unwrap() - 9.5).abs() < 1e-9);
    }

    #[test]
    fn tilt_symmetric_limit_and_zero_cj() {
        let (c, l) = (80.0f64, 12.0);
        let g = capacitive_ratio(3.0, c, c);
        let lt = tilt_inductance(3.0, c, c, l, l).unwrap();
        assert!((lt - l * (1.0 / g - 1.0)).abs() < 1e-9 * lt);
        assert!(tilt_inductance(0.0, c, c, l, l).unwrap().is_infinite());
    }

    #[test]
    fn tilt_asymmetric_satisfies_rwa_condition() {
        let (c_j, c_a, c_b) = (5.0f64, 95.0, 95.0);
        let (l_a, l_b) = (8.0f64, 12.0);
        let lt = tilt_inductance(c_j, c_a, c_b, l_a, l_b).unwrap();
        let (ea, eb, et) = (inductive_energy(l_a), inductive_energy(l_b), inductive_energy(lt));
        let lhs = et / ((ea + et) * (eb + et)).sqrt();
        let g = capacitive_ratio(c_j, c_a, c_b);
        assert!((lhs / g - 1.0).abs() < 1e-9);
    }

    #[test]
    fn tilt_rejects_bad_inputs() {
        assert!(tilt_inductance(5.0, -1.0, 95.0, 10.0, 10.0).is_err());
        assert!(tilt_inductance(-5.0, 95.0, 95.0, 10.0, 10.0).is_err());
    }

    #[test]
    fn canonical_build_has_cancelled_linear_coupling() {
        let built = build(&spec(CouplerKind::CanonicalQuarton, 16.35, 5.0)).unwrap();
        let linv = built.graph.inverse_inductance_matrix();
        assert_eq!(linv[(0, 1)], 0.0);
        let els = built.graph.elements();
        let l: Vec<f64> = els.iter().filter_map(|e| e.inductance_nh()).collect();
        assert!(l.iter().any(|&x| (x + 10.0).abs() < 1e-2));
        assert_eq!(built.qubit_branches, [0, 1]);
    }

    #[test]
    fn tilted_build_uses_tilt_inductance() {
        let e_q = inductive_energy(10.0);
        let built = build(&spec(CouplerKind::TiltedQuarton, e_q, 5.0)).unwrap();
        assert!((built.l_tilt.unwrap() - 190.0).abs() < 1e-9);
        let linv = built.graph.inverse_inductance_matrix();
        assert!((linv[(0, 1)] + 1.0 / 190.0).abs() < 1e-12);
    }

    #[test]
    fn validation() {
        assert!(build(&spec(CouplerKind::TiltedQuarton, 1.0, 0.0)).is_err());
        assert!(build(&spec(CouplerKind::Qrm, 1.0, 0.0)).is_err());
        assert!(build(&spec(CouplerKind::CanonicalQuarton, -1.0, 0.0)).is_err());
        assert!(build(&spec(CouplerKind::CanonicalQuarton, 0.0, 0.0)).is_ok());
    }

    #[test]
    fn exact_qrm_expansion() {
        let r = |n: i64, d: i64| Rational64::new(n, d);
        let p = qrm_potential(r(40, 1));
        assert!(p.homogeneous_part(2).is_zero());
        assert_eq!(p.coefficient(&[3, 1, 0]), r(0, 1));
        assert_eq!(p.coefficient(&[1, 3, 0]), r(0, 1));
        // 6·4/(24·16)·E_Q
        assert_eq!(p.coefficient(&[2, 2, 0]), r(6 * 4 * 40, 24 * 16));
        assert_eq!(p.coefficient(&[4, 0, 0]), r(4 * 40, 24 * 16));
    }

    #[test]
    fn qrm_reduce_quarters_the_energy() {
        let built = build(&spec(CouplerKind::Qrm, 40.0, 5.0)).unwrap();
        let red = qrm_reduce(&built.graph).unwrap();
        assert!((red.effective_e_q - 10.0).abs() < 1e-12);
        assert_eq!(red.ring, [0, 1, 2, 3]);
        let cm = &red.mode_capacitance;
        assert_eq!(cm[(0, 1)], 0.0);
        assert!((cm[(0, 0)] - 100.0).abs() < 1e-12);
        assert!((cm[(2, 2)] - 5.0).abs() < 1e-12);
    }

    #[test]
    fn qrm_reduce_rejects_other_circuits() {
        let jrm = build(&spec(CouplerKind::Jrm, 40.0, 5.0)).unwrap();
        assert!(matches!(qrm_reduce(&jrm.graph), Err(Error::NotRingModulator(_))));
        let canon = build(&spec(CouplerKind::CanonicalQuarton, 40.0, 5.0)).unwrap();
        assert!(matches!(qrm_reduce(&canon.graph), Err(Error::NotRingModulator(_))));
    }

    #[test]
    fn oracle_inputs_per_kind() {
        let s = spec(CouplerKind::Jrm, 8.0, 5.0);
        let i = s.oracle_inputs().unwrap();
        assert_eq!(i.e_q, 2.0);
        assert_eq!(i.e_q_tilt, 8.0);
        assert!((i.e_ca - charging_energy(100.0)).abs() < 1e-15);
        assert!(spec(CouplerKind::CShuntSquid, 8.0, 5.0)
            .oracle_self_kerr()
            .unwrap()
            .is_none());
        let (ka, kb) = spec(CouplerKind::CanonicalQuarton, 0.0, 5.0)
            .oracle_self_kerr()
            .unwrap()
            .unwrap();
        assert_eq!(ka, kb);
        assert!(ka < 0.0);
    }
}
