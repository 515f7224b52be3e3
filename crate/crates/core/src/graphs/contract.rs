use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{int, BigRat};
use crate::model::{frac_bracket, Phase};

use super::{DualGraph, GraphError};

/// Per-component data entering the stability condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentData {
    pub genus: u32,
    /// Degree including basepoint orders.
    pub degree: u32,
    pub special_points: u32,
    pub basepoints: Vec<u32>,
}

/// Basepoints of order at most `1/ε`, and `ε·β + 2g − 2 + #special > 0`.
///
/// With `light_delta = Some(δ)` one special point counts with weight `δ`.
pub fn epsilon_stable(c: &ComponentData, epsilon: &BigRat, light_delta: Option<&BigRat>) -> bool {
    if c.basepoints.iter().any(|&b| epsilon * int(b as i64) > int(1)) {
        return false;
    }
    let mut special = int(c.special_points as i64);
    if let Some(delta) = light_delta {
        if c.special_points == 0 {
            return false;
        }
        special = special - int(1) + delta;
    }
    epsilon * int(c.degree as i64) + int(2 * c.genus as i64 - 2) + special > BigRat::zero()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Basepoint {
    pub host: usize,
    pub order: u32,
    #[serde(serialize_with = "crate::algebra::serialize_rat")]
    pub mult: BigRat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContractionRecord {
    pub graph: DualGraph,
    pub basepoints: Vec<Basepoint>,
}

impl ContractionRecord {
    pub fn total_degree(&self) -> u32 {
        self.graph.total_degree()
    }
}

impl DualGraph {
    pub fn component_data(&self, v: usize) -> ComponentData {
        let x = &self.vertices[v];
        ComponentData {
            genus: x.genus,
            degree: x.total_degree(),
            special_points: self.special_points(v),
            basepoints: x.basepoints.clone(),
        }
    }

    pub fn is_epsilon_stable(&self, epsilon: &BigRat) -> bool {
        (0..self.vertices.len()).all(|v| epsilon_stable(&self.component_data(v), epsilon, None))
    }

    /// Every component has `2g − 2 + #special > 0` or positive degree.
    pub fn is_infinity_stable(&self) -> bool {
        (0..self.vertices.len()).all(|v| {
            let x = &self.vertices[v];
            2 * x.genus as i64 - 2 + self.special_points(v) as i64 > 0 || x.beta > 0
        })
    }

    /// Removes vertex `v`, shifting later indices down.
    pub(crate) fn remove_vertex(&mut self, v: usize) {
        self.vertices.remove(v);
        self.edges.retain(|e| e.a != v && e.b != v);
        for e in &mut self.edges {
            if e.a > v {
                e.a -= 1;
            }
            if e.b > v {
                e.b -= 1;
            }
        }
        self.v_bullet = match self.v_bullet {
            Some(b) if b == v => None,
            Some(b) if b > v => Some(b - 1),
            other => other,
        };
        if let Some(c) = &mut self.coloring {
            c.remove(v);
        }
    }
}

fn basepoint_mult(g: &DualGraph, order: u32) -> BigRat {
    match g.phase {
        Phase::Lg => frac_bracket(&BigRat::new(BigInt::from(-(order as i64) - 1), BigInt::from(g.d))),
        Phase::Geometric => BigRat::zero(),
    }
}

fn contract_tails(mut g: DualGraph, epsilon: &BigRat) -> ContractionRecord {
    loop {
        let tail = (0..g.vertices.len()).find(|&v| {
            let x = &g.vertices[v];
            g.vertices.len() > 1
                && x.genus == 0
                && x.legs.is_empty()
                && x.extra_legs == 0
                && g.valence(v) == 1
                && epsilon * int(x.total_degree() as i64) <= int(1)
        });
        let Some(v) = tail else { break };
        let e = g.edges.iter().find(|e| e.a == v || e.b == v).expect("valence one");
        let u = if e.a == v { e.b } else { e.a };
        let order = g.vertices[v].total_degree();
        if order > 0 {
            g.vertices[u].basepoints.push(order);
        }
        g.remove_vertex(v);
    }
    let mut basepoints = Vec::new();
    for (host, x) in g.vertices.iter().enumerate() {
        for &order in &x.basepoints {
            basepoints.push(Basepoint { host, order, mult: basepoint_mult(&g, order) });
        }
    }
    ContractionRecord { graph: g, basepoints }
}

/// Replaces rational tails of degree at most `1/ε` by basepoints until the graph is ε-stable.
pub fn contract_c(graph: &DualGraph, epsilon: &BigRat) -> Result<ContractionRecord, GraphError> {
    if let Some(v) = graph.vertices.iter().position(|x| !x.basepoints.is_empty()) {
        return Err(GraphError::NotInfinityStable(format!("vertex {} carries a basepoint", v)));
    }
    if !graph.is_infinity_stable() {
        return Err(GraphError::NotInfinityStable("unstable component".into()));
    }
    Ok(contract_tails(graph.clone(), epsilon))
}

/// Turns the legs with the `k` largest labels into basepoints of orders `beta_vec`, then contracts.
pub fn convert_markings_b(graph: &DualGraph, beta_vec: &[u32], epsilon: &BigRat) -> Result<ContractionRecord, GraphError> {
    let mut labels: Vec<u32> = graph.vertices.iter().flat_map(|x| x.legs.iter().map(|l| l.label)).collect();
    labels.sort_unstable();
    if beta_vec.len() > labels.len() {
        return Err(GraphError::Malformed(format!("{} orders for {} legs", beta_vec.len(), labels.len())));
    }
    let chosen = &labels[labels.len() - beta_vec.len()..];
    let mut g = graph.clone();
    for (&label, &order) in chosen.iter().zip(beta_vec) {
        let expected = match g.phase {
            Phase::Lg => (order + 1) % g.d,
            Phase::Geometric => 0,
        };
        let (v, i) = g
            .vertices
            .iter()
            .enumerate()
            .find_map(|(v, x)| x.legs.iter().position(|l| l.label == label).map(|i| (v, i)))
            .expect("label present");
        let found = g.vertices[v].legs[i].mult;
        if found != expected {
            return Err(GraphError::WrongMultiplicity {
                label,
                found: super::mult_string(found, g.d),
                expected: super::mult_string(expected, g.d),
            });
        }
        g.vertices[v].legs.remove(i);
        if order > 0 {
            g.vertices[v].basepoints.push(order);
        }
    }
    Ok(contract_tails(g, epsilon))
}
