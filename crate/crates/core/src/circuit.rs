//! Lumped circuit graphs and their nodal matrices.

use nalgebra::DMatrix;

use crate::constants::{inductive_energy, INDUCTIVE_GHZ_NH};
use crate::error::{Error, Result};
use crate::modes::{normal_modes, ModalBranch, ModalSolution};
use crate::potentials::{expand_cosine, PhaseOffset, Sign, TaylorPotential};
use crate::scalar::{lit, Real};

/// Physical content of one branch.
#[derive(Debug, Clone, PartialEq)]
pub enum ElementKind<T> {
    /// Capacitance in fF.
    Capacitor { c_ff: T },
    /// Inductance magnitude in nH; a negative sign flips the potential.
    Inductor { l_nh: T, sign: Sign },
    /// Josephson junction with energy `e_j` in GHz.
    Junction { e_j: T, sign: Sign, flux_bias: PhaseOffset },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Element<T> {
    pub kind: ElementKind<T>,
    pub nodes: (usize, usize),
}

fn positive<T: Real>(name: &'static str, x: T) -> Result<()> {
    if x > T::zero() && x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            reason: format!("must be positive and finite, got {x}"),
        })
    }
}

impl<T: Real> Element<T> {
    pub fn capacitor(a: usize, b: usize, c_ff: T) -> Result<Self> {
        positive("c_ff", c_ff)?;
        Ok(Self {
            kind: ElementKind::Capacitor { c_ff },
            nodes: (a, b),
        })
    }

    pub fn inductor(a: usize, b: usize, l_nh: T, sign: Sign) -> Result<Self> {
        positive("l_nh", l_nh)?;
        Ok(Self {
            kind: ElementKind::Inductor { l_nh, sign },
            nodes: (a, b),
        })
    }

    pub fn junction(a: usize, b: usize, e_j: T) -> Result<Self> {
        Self::signed_junction(a, b, e_j, Sign::Positive, PhaseOffset::Zero)
    }

    pub fn signed_junction(a: usize, b: usize, e_j: T, sign: Sign, flux_bias: PhaseOffset) -> Result<Self> {
        positive("e_j", e_j)?;
        Ok(Self {
            kind: ElementKind::Junction { e_j, sign, flux_bias },
            nodes: (a, b),
        })
    }

    /// A quarton between `a` and `b`: a negative junction of energy `e_q`
    /// in parallel with a positive inductor.
    ///
    /// With `l_tilt = None` the inductor exactly cancels the junction's
    /// linear inductance. With `Some(l)` the net linear inductance is `l`
    /// (the tilted quarton), i.e. `1/L_pos = 1/L_tilt + 1/|L_Jq|`.
    pub fn quarton(a: usize, b: usize, e_q: T, l_tilt: Option<T>) -> Result<Vec<Self>> {
        positive("e_q", e_q)?;
        let l_pos = match l_tilt {
            None => lit::<T>(INDUCTIVE_GHZ_NH) / e_q,
            Some(l) => {
                positive("l_tilt", l)?;
                T::one() / (T::one() / l + e_q / lit::<T>(INDUCTIVE_GHZ_NH))
            }
        };
        Ok(vec![
            Self::signed_junction(a, b, e_q, Sign::Negative, PhaseOffset::Zero)?,
            Self::inductor(a, b, l_pos, Sign::Positive)?,
        ])
    }

    pub fn is_capacitor(&self) -> bool {
        matches!(self.kind, ElementKind::Capacitor { .. })
    }

    /// Quartic Taylor potential across the element, `None` for capacitors.
    pub fn potential(&self) -> Option<TaylorPotential<T>> {
        match &self.kind {
            ElementKind::Capacitor { .. } => None,
            ElementKind::Inductor { l_nh, sign } => Some(TaylorPotential::linear(sign.apply(inductive_energy(*l_nh)))),
            ElementKind::Junction { e_j, sign, flux_bias } => {
                Some(expand_cosine(*e_j, *sign, *flux_bias).expect("validated junction energy"))
            }
        }
    }

    /// Signed linear inductance in nH (junctions via `L_J = φ₀²/E_J`).
    pub fn inductance_nh(&self) -> Option<T> {
        let p = self.potential()?;
        if p.c2 == T::zero() {
            None
        } else {
            Some(lit::<T>(INDUCTIVE_GHZ_NH) / p.c2)
        }
    }
}

/// All inductive elements sharing one unordered node pair, summed.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch<T> {
    /// Endpoints; the branch phase is `φ(nodes.0) − φ(nodes.1)`. Ground,
    /// when present, is always `nodes.1`, otherwise `nodes.0 < nodes.1`.
    pub nodes: (usize, usize),
    pub potential: TaylorPotential<T>,
    pub elements: Vec<usize>,
}

/// Node/branch network with a designated ground.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitGraph<T> {
    num_nodes: usize,
    ground: usize,
    elements: Vec<Element<T>>,
}

struct DisjointSet(Vec<usize>);

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut x = x;
        while self.0[x] != r {
            let next = self.0[x];
            self.0[x] = r;
            x = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Sums terms and treats a result within rounding of zero as exactly zero.
fn cancelling_sum<T: Real>(terms: impl Iterator<Item = T>) -> T {
    let (mut sum, mut scale) = (T::zero(), T::zero());
    for t in terms {
        sum += t;
        scale += t.abs();
    }
    if sum.abs() <= scale * T::default_epsilon() * lit::<T>(8.0) {
        T::zero()
    } else {
        sum
    }
}

impl<T: Real> CircuitGraph<T> {
    pub fn new(num_nodes: usize, ground: usize, elements: Vec<Element<T>>) -> Result<Self> {
        if ground >= num_nodes {
            return Err(Error::NodeOutOfRange {
                node: ground,
                num_nodes,
            });
        }
        let mut connected = DisjointSet::new(num_nodes);
        for (index, e) in elements.iter().enumerate() {
            let (a, b) = e.nodes;
            for n in [a, b] {
                if n >= num_nodes {
                    return Err(Error::NodeOutOfRange { node: n, num_nodes });
                }
            }
            if a == b {
                return Err(Error::SelfLoop { index, node: a });
            }
            connected.union(a, b);
        }
        let root = connected.find(ground);
        if let Some(node) = (0..num_nodes).find(|&n| connected.find(n) != root) {
            return Err(Error::Disconnected { node });
        }
        Ok(Self {
            num_nodes,
            ground,
            elements,
        })
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn elements(&self) -> &[Element<T>] {
        &self.elements
    }

    /// Number of dynamical node coordinates (all nodes except ground).
    pub fn dimension(&self) -> usize {
        self.num_nodes - 1
    }

    /// Row/column of `node` in the grounded matrices, `None` for ground.
    pub fn node_index(&self, node: usize) -> Option<usize> {
        match node.cmp(&self.ground) {
            std::cmp::Ordering::Less => Some(node),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(node - 1),
        }
    }

    /// Node id of grounded-matrix row `index`.
    pub fn node_of_index(&self, index: usize) -> usize {
        if index < self.ground {
            index
        } else {
            index + 1
        }
    }

    fn orient(&self, (a, b): (usize, usize)) -> (usize, usize) {
        if a == self.ground {
            (b, a)
        } else if b == self.ground {
            (a, b)
        } else {
            (a.min(b), a.max(b))
        }
    }

    /// Inductive branches in order of first appearance.
    pub fn branches(&self) -> Vec<Branch<T>> {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let mut members: Vec<Vec<usize>> = Vec::new();
        for (i, e) in self.elements.iter().enumerate() {
            if e.is_capacitor() {
                continue;
            }
            let key = self.orient(e.nodes);
            match pairs.iter().position(|p| *p == key) {
                Some(k) => members[k].push(i),
                None => {
                    pairs.push(key);
                    members.push(vec![i]);
                }
            }
        }
        pairs
            .into_iter()
            .zip(members)
            .map(|(nodes, elements)| {
                // orient every element potential along nodes.0 → nodes.1;
                // the expansion is even so orientation does not change it
                let parts: Vec<TaylorPotential<T>> = elements
                    .iter()
                    .map(|&i| self.elements[i].potential().expect("inductive element"))
                    .collect();
                let potential = TaylorPotential::new(
                    cancelling_sum(parts.iter().map(|p| p.c2)),
                    cancelling_sum(parts.iter().map(|p| p.c4)),
                );
                Branch {
                    nodes,
                    potential,
                    elements,
                }
            })
            .collect()
    }

    fn stamp(&self, m: &mut DMatrix<T>, (a, b): (usize, usize), value: T) {
        let (ia, ib) = (self.node_index(a), self.node_index(b));
        if let Some(i) = ia {
            m[(i, i)] += value;
        }
        if let Some(j) = ib {
            m[(j, j)] += value;
        }
        if let (Some(i), Some(j)) = (ia, ib) {
            m[(i, j)] -= value;
            m[(j, i)] -= value;
        }
    }

    /// Nodal capacitance matrix in fF with the ground row and column removed.
    pub fn capacitance_matrix(&self) -> Result<DMatrix<T>> {
        let mut reach = DisjointSet::new(self.num_nodes);
        for e in self.elements.iter().filter(|e| e.is_capacitor()) {
            reach.union(e.nodes.0, e.nodes.1);
        }
        let root = reach.find(self.ground);
        if let Some(node) = (0..self.num_nodes).find(|&n| reach.find(n) != root) {
            return Err(Error::FloatingNode { node });
        }
        let n = self.dimension();
        let mut c = DMatrix::zeros(n, n);
        for e in &self.elements {
            if let ElementKind::Capacitor { c_ff } = e.kind {
                self.stamp(&mut c, e.nodes, c_ff);
            }
        }
        Ok(c)
    }

    /// Nodal inverse-inductance matrix in 1/nH built from each branch's
    /// linear coefficient. Branches whose linear parts cancel contribute
    /// nothing.
    pub fn inverse_inductance_matrix(&self) -> DMatrix<T> {
        let n = self.dimension();
        let mut m = DMatrix::zeros(n, n);
        for b in self.branches() {
            if b.potential.c2 != T::zero() {
                self.stamp(&mut m, b.nodes, b.potential.c2 / lit::<T>(INDUCTIVE_GHZ_NH));
            }
        }
        m
    }

    /// Branch endpoints and linear coefficients in grounded-matrix indices.
    pub fn modal_branches(&self) -> Vec<ModalBranch<T>> {
        self.branches()
            .iter()
            .map(|b| ModalBranch {
                plus: self.node_index(b.nodes.0),
                minus: self.node_index(b.nodes.1),
                linear: b.potential.c2,
            })
            .collect()
    }

    /// Normal modes of the linearized circuit.
    pub fn normal_modes(&self) -> Result<ModalSolution<T>> {
        let c = self.capacitance_matrix()?;
        let linv = self.inverse_inductance_matrix();
        let mut sol = normal_modes(&c, &linv, &self.modal_branches())?;
        sol.bind(self);
        Ok(sol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::INDUCTIVE_GHZ_NH;

    fn two_transmons(c_j: f64) -> CircuitGraph<f64> {
        let mut els = vec![
            Element::capacitor(1, 0, 103.0).unwrap(),
            Element::junction(1, 0, 30.0).unwrap(),
            Element::capacitor(2, 0, 62.5).unwrap(),
            Element::junction(2, 0, 30.0).unwrap(),
        ];
        if c_j > 0.0 {
            els.push(Element::capacitor(1, 2, c_j).unwrap());
        }
        CircuitGraph::new(3, 0, els).unwrap()
    }

    #[test]
    fn capacitance_matrix_of_coupled_transmons() {
        let c = two_transmons(5.0).capacitance_matrix().unwrap();
        assert_eq!(c, DMatrix::from_row_slice(2, 2, &[108.0, -5.0, -5.0, 67.5]));
        let c = two_transmons(0.0).capacitance_matrix().unwrap();
        assert_eq!(c, DMatrix::from_row_slice(2, 2, &[103.0, 0.0, 0.0, 62.5]));
    }

    #[test]
    fn single_grounded_capacitor() {
        let g = CircuitGraph::new(2, 0, vec![Element::capacitor(0, 1, 42.0).unwrap()]).unwrap();
        assert_eq!(g.capacitance_matrix().unwrap(), DMatrix::from_element(1, 1, 42.0));
    }

    #[test]
    fn floating_node_reported() {
        let g = CircuitGraph::new(
            3,
            0,
            vec![
                Element::capacitor(1, 0, 10.0).unwrap(),
                Element::junction(2, 1, 10.0).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(g.capacitance_matrix(), Err(Error::FloatingNode { node: 2 }));
    }

    #[test]
    fn structural_errors() {
        let e = Element::capacitor(0, 1, 1.0).unwrap();
        assert!(matches!(
            CircuitGraph::new(2, 2, vec![e.clone()]),
            Err(Error::NodeOutOfRange { .. })
        ));
        assert!(matches!(
            CircuitGraph::new(2, 0, vec![Element::capacitor(1, 1, 1.0).unwrap()]),
            Err(Error::SelfLoop { .. })
        ));
        assert!(matches!(
            CircuitGraph::new(3, 0, vec![e]),
            Err(Error::Disconnected { node: 2 })
        ));
        assert!(Element::capacitor(0, 1, 0.0).is_err());
        assert!(Element::inductor(0, 1, -1.0, Sign::Positive).is_err());
        assert!(Element::junction(0, 1, f64::NAN).is_err());
    }

    #[test]
    fn ideal_quarton_has_no_linear_part() {
        for &e_q in &[0.37f64, 16.35, 1234.5] {
            let mut els = vec![
                Element::capacitor(1, 0, 50.0).unwrap(),
                Element::capacitor(2, 0, 50.0).unwrap(),
            ];
            els.extend(Element::quarton(1, 2, e_q, None).unwrap());
            let g = CircuitGraph::new(3, 0, els).unwrap();
            let linv = g.inverse_inductance_matrix();
            assert!(linv.iter().all(|&x| x == 0.0), "{linv}");
            let b = &g.branches()[0];
            assert_eq!(b.potential.c2, 0.0);
            assert!((b.potential.c4 - e_q).abs() < 1e-12 * e_q);
        }
    }

    #[test]
    fn quarton_inductances() {
        let e_q = INDUCTIVE_GHZ_NH / 10.0;
        let els = Element::quarton(0, 1, e_q, None).unwrap();
        assert!((els[0].inductance_nh().unwrap() + 10.0).abs() < 1e-12);
        assert!((els[1].inductance_nh().unwrap() - 10.0).abs() < 1e-12);

        // 16.35 GHz is 10 nH to the precision of the quoted energy
        let els = Element::quarton(0, 1, 16.35f64, None).unwrap();
        assert!((els[1].inductance_nh().unwrap() - 10.0).abs() < 1e-2);
    }

    #[test]
    fn tilted_quarton_net_inductance() {
        // 1/L_tilt = 1/|L_pos| − 1/|L_Jq|
        let e_q = INDUCTIVE_GHZ_NH / 10.0;
        let els = Element::quarton(0, 1, e_q, Some(190.0)).unwrap();
        let l_pos = els[1].inductance_nh().unwrap();
        assert!((l_pos - 9.5).abs() < 1e-12);
        let g = CircuitGraph::new(2, 0, {
            let mut v = els;
            v.push(Element::capacitor(0, 1, 5.0).unwrap());
            v
        })
        .unwrap();
        let linv = g.inverse_inductance_matrix();
        assert!((linv[(0, 0)] - 1.0 / 190.0).abs() < 1e-15);
    }

    #[test]
    fn single_junction_inverse_inductance() {
        let e_j = 25.0;
        let g = CircuitGraph::new(2, 0, vec![Element::junction(1, 0, e_j).unwrap()]).unwrap();
        let l_j = INDUCTIVE_GHZ_NH / e_j;
        assert!((g.inverse_inductance_matrix()[(0, 0)] - 1.0 / l_j).abs() < 1e-15);
    }

    #[test]
    fn node_index_skips_ground() {
        let g = CircuitGraph::new(
            4,
            2,
            vec![
                Element::capacitor(0, 2, 1.0).unwrap(),
                Element::capacitor(1, 2, 1.0).unwrap(),
                Element::capacitor(3, 2, 1.0).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(g.node_index(2), None);
        assert_eq!(g.node_index(3), Some(2));
        assert_eq!(g.node_of_index(2), 3);
        assert_eq!(g.node_of_index(1), 1);
    }
}
