//! JSON netlists: `{nodes, ground, elements: [{kind, value, sign,
//! flux_bias, nodes: [i, j]}]}` with values in fF, nH or GHz.

use serde::{Deserialize, Serialize};

use crate::circuit::{CircuitGraph, Element, ElementKind};
use crate::error::{Error, Result};
use crate::potentials::{PhaseOffset, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NetlistKind {
    Capacitor,
    Inductor,
    Junction,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetlistElement {
    pub kind: NetlistKind,
    /// fF for capacitors, nH for inductors, GHz for junctions.
    pub value: f64,
    #[serde(default = "positive_sign")]
    pub sign: i8,
    /// Flux through the junction in units of Φ₀: `0` or `0.5`.
    #[serde(default)]
    pub flux_bias: f64,
    pub nodes: [usize; 2],
}

fn positive_sign() -> i8 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Netlist {
    pub nodes: usize,
    pub ground: usize,
    pub elements: Vec<NetlistElement>,
}

impl NetlistElement {
    fn to_element(&self, index: usize) -> Result<Element<f64>> {
        let sign = Sign::from_i8(self.sign)
            .ok_or_else(|| Error::Netlist(format!("element {index}: sign must be +1 or -1, got {}", self.sign)))?;
        let [a, b] = self.nodes;
        let wrap = |e: Error| Error::Netlist(format!("element {index}: {e}"));
        if self.kind != NetlistKind::Junction && self.flux_bias != 0.0 {
            return Err(Error::Netlist(format!(
                "element {index}: only junctions take a flux bias"
            )));
        }
        match self.kind {
            NetlistKind::Capacitor if sign == Sign::Negative => Err(Error::Netlist(format!(
                "element {index}: capacitors cannot be negative"
            ))),
            NetlistKind::Capacitor => Element::capacitor(a, b, self.value).map_err(wrap),
            NetlistKind::Inductor => Element::inductor(a, b, self.value, sign).map_err(wrap),
            NetlistKind::Junction => {
                let offset = PhaseOffset::from_flux_quanta(self.flux_bias).map_err(wrap)?;
                Element::signed_junction(a, b, self.value, sign, offset).map_err(wrap)
            }
        }
    }

    fn from_element(e: &Element<f64>) -> Self {
        let nodes = [e.nodes.0, e.nodes.1];
        match e.kind {
            ElementKind::Capacitor { c_ff } => Self {
                kind: NetlistKind::Capacitor,
                value: c_ff,
                sign: 1,
                flux_bias: 0.0,
                nodes,
            },
            ElementKind::Inductor { l_nh, sign } => Self {
                kind: NetlistKind::Inductor,
                value: l_nh,
                sign: sign.as_i8(),
                flux_bias: 0.0,
                nodes,
            },
            ElementKind::Junction { e_j, sign, flux_bias } => Self {
                kind: NetlistKind::Junction,
                value: e_j,
                sign: sign.as_i8(),
                flux_bias: flux_bias.flux_quanta(),
                nodes,
            },
        }
    }
}

impl Netlist {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Netlist(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("netlist serializes")
    }

    pub fn from_graph(graph: &CircuitGraph<f64>) -> Self {
        Self {
            nodes: graph.num_nodes(),
            ground: graph.ground(),
            elements: graph.elements().iter().map(NetlistElement::from_element).collect(),
        }
    }

    pub fn to_graph(&self) -> Result<CircuitGraph<f64>> {
        let elements = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, e)| e.to_element(i))
            .collect::<Result<Vec<_>>>()?;
        CircuitGraph::new(self.nodes, self.ground, elements)
    }
}
