//! Decorated dual graphs and torus-fixed localization graphs.
//!
//! Multiplicities are stored as numerators `k` of `k/d` with `0 ≤ k < d`.

mod canon;
mod contract;
mod enumerate;
mod order;

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{parse_rat, BigRat};
use crate::model::Phase;

pub use crate::jfun::Level;
pub use canon::{aut_degree, canonical_key, AutDegree, CanonKey};
pub use contract::{contract_c, convert_markings_b, epsilon_stable, Basepoint, ComponentData, ContractionRecord};
pub use enumerate::{enumerate_loc_graphs, MAX_BETA, MAX_DELTA, MAX_GENUS, MAX_LEGS};
pub use order::{descending_chains, graph_leq, longest_descending_chain, triple_stable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("input graph is not infinity-stable: {0}")]
    NotInfinityStable(String),
    #[error("leg {label} has multiplicity {found}, expected {expected}")]
    WrongMultiplicity { label: u32, found: String, expected: String },
    #[error("bounds exceeded: {0}")]
    BoundsExceeded(String),
    #[error("malformed graph: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Leg {
    pub label: u32,
    pub mult: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub genus: u32,
    pub beta: u32,
    pub legs: Vec<Leg>,
    pub extra_legs: u32,
    /// Orders of basepoints carried by the vertex.
    pub basepoints: Vec<u32>,
}

impl Vertex {
    pub fn new(genus: u32, beta: u32) -> Self {
        Vertex { genus, beta, legs: Vec::new(), extra_legs: 0, basepoints: Vec::new() }
    }

    pub fn with_leg(mut self, label: u32, mult: u32) -> Self {
        self.legs.push(Leg { label, mult });
        self
    }

    /// `β(v)` plus the orders of its basepoints.
    pub fn total_degree(&self) -> u32 {
        self.beta + self.basepoints.iter().sum::<u32>()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub m_a: u32,
    pub m_b: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "DualGraphDoc", try_from = "DualGraphDoc")]
pub struct DualGraph {
    pub d: u32,
    pub phase: Phase,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub v_bullet: Option<usize>,
    pub coloring: Option<Vec<Level>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "LocGraphDoc", try_from = "LocGraphDoc")]
pub struct LocGraph {
    /// Levels are carried in `graph.coloring`; basepoint orders `β(e)` sit on
    /// unstable valence-one vertices at level zero.
    pub graph: DualGraph,
    pub delta: Vec<u32>,
}

/// A violated condition, with the vertex or edge where it fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: String,
    pub location: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.condition, self.location)
    }
}

fn violation(condition: &str, location: String) -> Violation {
    Violation { condition: condition.to_string(), location }
}

impl DualGraph {
    pub fn new(d: u32, phase: Phase, vertices: Vec<Vertex>, edges: Vec<Edge>) -> Self {
        DualGraph { d, phase, vertices, edges, v_bullet: None, coloring: None }
    }

    pub fn with_bullet(mut self, v: usize) -> Self {
        self.v_bullet = Some(v);
        self
    }

    /// Multiplicity numerator of an extra leg.
    pub fn extra_mult(&self) -> u32 {
        match self.phase {
            Phase::Lg => 1 % self.d,
            Phase::Geometric => 0,
        }
    }

    /// Multiplicities of the half-edges at `v`, loops contributing twice.
    pub fn half_edge_mults(&self, v: usize) -> Vec<u32> {
        let mut out = Vec::new();
        for e in &self.edges {
            if e.a == v {
                out.push(e.m_a);
            }
            if e.b == v {
                out.push(e.m_b);
            }
        }
        out
    }

    pub fn valence(&self, v: usize) -> u32 {
        self.edges.iter().map(|e| (e.a == v) as u32 + (e.b == v) as u32).sum()
    }

    /// Number of special points: half-edges, legs and extra legs.
    pub fn special_points(&self, v: usize) -> u32 {
        let x = &self.vertices[v];
        self.valence(v) + x.legs.len() as u32 + x.extra_legs
    }

    pub fn h1(&self) -> i64 {
        let comps = self.components();
        self.edges.len() as i64 - self.vertices.len() as i64 + comps as i64
    }

    pub fn total_genus(&self) -> i64 {
        self.h1() + self.vertices.iter().map(|v| v.genus as i64).sum::<i64>()
    }

    pub fn total_degree(&self) -> u32 {
        self.vertices.iter().map(Vertex::total_degree).sum()
    }

    pub fn components(&self) -> usize {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for e in &self.edges {
            let (ra, rb) = (find(&mut parent, e.a), find(&mut parent, e.b));
            parent[ra] = rb;
        }
        (0..n).filter(|&i| find(&mut parent, i) == i).count()
    }

    pub fn is_connected(&self) -> bool {
        self.components() <= 1
    }

    /// Residue mod `d` of the vertex condition, times `d`.
    pub(crate) fn vertex_defect(&self, v: usize) -> i64 {
        let x = &self.vertices[v];
        let d = self.d as i64;
        let hs = self.half_edge_mults(v);
        let msum: i64 = hs.iter().map(|&k| k as i64).sum::<i64>()
            + x.legs.iter().map(|l| l.mult as i64).sum::<i64>()
            + (x.extra_legs * self.extra_mult()) as i64;
        let beta = x.total_degree() as i64;
        let count = hs.len() as i64 + x.legs.len() as i64 + x.extra_legs as i64;
        let r = match self.phase {
            Phase::Lg => -beta + 2 * x.genus as i64 - 2 + count - msum,
            Phase::Geometric => -msum,
        };
        r.rem_euclid(d)
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.vertices.len();
        for (i, e) in self.edges.iter().enumerate() {
            if e.a >= n || e.b >= n {
                out.push(violation("edge endpoint out of range", format!("edge {}", i)));
                continue;
            }
            if e.m_a >= self.d || e.m_b >= self.d {
                out.push(violation("multiplicity outside [0,1)", format!("edge {}", i)));
            }
            if (e.m_a + e.m_b) % self.d != 0 {
                out.push(violation("m(h) + m(h') not an integer", format!("edge {}", i)));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (v, x) in self.vertices.iter().enumerate() {
            if x.legs.iter().any(|l| l.mult >= self.d) {
                out.push(violation("multiplicity outside [0,1)", format!("vertex {}", v)));
            }
            if self.vertex_defect(v) != 0 {
                out.push(violation("vertex multiplicity condition", format!("vertex {}", v)));
            }
        }
        let mut labels: Vec<u32> = self.vertices.iter().flat_map(|x| x.legs.iter().map(|l| l.label)).collect();
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            out.push(violation("repeated leg label", "graph".into()));
        }
        if let Some(b) = self.v_bullet {
            if b >= n {
                out.push(violation("distinguished vertex out of range", format!("vertex {}", b)));
            } else {
                if self.vertices[b].extra_legs != 0 {
                    out.push(violation("n'(v_bullet) = 0", format!("vertex {}", b)));
                }
                if self.vertices[b].beta == 0 {
                    out.push(violation("beta(v_bullet) > 0", format!("vertex {}", b)));
                }
            }
        }
        if let Some(c) = &self.coloring {
            if c.len() != n {
                out.push(violation("coloring length", "graph".into()));
            }
        }
        if !self.is_connected() {
            out.push(violation("graph connected", "graph".into()));
        }
        out
    }
}

/// Role of a vertex of a localization graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    Stable,
    /// Unlegged valence-one end of an edge.
    SmoothEnd,
    /// Valence-one end carrying a marking.
    MarkedEnd,
    /// Valence-two vertex joining two edges.
    Joint,
    /// Valence-one end at level zero carrying a basepoint of order `β(v)`.
    BasepointEnd,
    Unstable,
}

impl LocGraph {
    pub fn level(&self, v: usize) -> Level {
        self.graph.coloring.as_ref().map(|c| c[v]).unwrap_or(Level::Zero)
    }

    /// Classifies `v` by the stability condition at its level.
    pub fn kind(&self, v: usize, epsilon: &BigRat) -> VertexKind {
        let g = &self.graph;
        let x = &g.vertices[v];
        let val = g.valence(v) as i64;
        let legs = x.legs.len() as i64 + x.extra_legs as i64;
        let base = 2 * x.genus as i64 - 2 + val + legs;
        let stable = match self.level(v) {
            Level::Zero => BigRat::from_integer(BigInt::from(base)) + epsilon * BigRat::from_integer(x.beta.into()) > BigRat::from_integer(0.into()),
            Level::Infinity => base > 0 || x.beta > 0,
        };
        if stable {
            return VertexKind::Stable;
        }
        match (x.genus, x.beta > 0, val, legs) {
            (0, false, 1, 0) => VertexKind::SmoothEnd,
            (0, false, 1, 1) if x.extra_legs == 0 => VertexKind::MarkedEnd,
            (0, false, 2, 0) => VertexKind::Joint,
            (0, true, 1, 0) if self.level(v) == Level::Zero => VertexKind::BasepointEnd,
            _ => VertexKind::Unstable,
        }
    }

    /// `d` times the residue of the multiplicity condition on the edge component `e`.
    /// The edge-side multiplicity at every special end is `−m(h)`.
    fn edge_defect(&self, e: usize, epsilon: &BigRat) -> i64 {
        let g = &self.graph;
        let d = g.d as i64;
        let edge = &g.edges[e];
        let mut beta_e = 0i64;
        let mut special = 0i64;
        let mut side = 0i64;
        for (v, m) in [(edge.a, edge.m_a), (edge.b, edge.m_b)] {
            match self.kind(v, epsilon) {
                VertexKind::Stable | VertexKind::Joint | VertexKind::MarkedEnd => {
                    special += 1;
                    side += (d - m as i64) % d;
                }
                VertexKind::BasepointEnd => beta_e += g.vertices[v].beta as i64,
                VertexKind::SmoothEnd | VertexKind::Unstable => {}
            }
        }
        let r = match g.phase {
            Phase::Lg => -beta_e - 2 + special - side,
            Phase::Geometric => -side,
        };
        r.rem_euclid(d)
    }

    pub fn total_delta(&self) -> u32 {
        self.delta.iter().sum()
    }

    /// Checks the fixed-locus rules at stability parameter `epsilon`.
    pub fn validate(&self, epsilon: &BigRat) -> Vec<Violation> {
        let g = &self.graph;
        let mut out: Vec<Violation> = g
            .validate()
            .into_iter()
            .filter(|v| v.condition != "vertex multiplicity condition" && v.condition != "m(h) + m(h') not an integer")
            .collect();
        if g.coloring.as_ref().map(|c| c.len()) != Some(g.vertices.len()) {
            out.push(violation("every vertex has a level", "graph".into()));
            return out;
        }
        if self.delta.len() != g.edges.len() {
            out.push(violation("every edge has a degree", "graph".into()));
            return out;
        }
        if !out.is_empty() {
            return out;
        }
        if g.edges.is_empty() && g.vertices.len() != 1 {
            out.push(violation("graph connected", "graph".into()));
        }
        for (i, e) in g.edges.iter().enumerate() {
            if self.level(e.a) == self.level(e.b) {
                out.push(violation("edge joins the two levels", format!("edge {}", i)));
            }
            if self.delta[i] == 0 {
                out.push(violation("delta(e) > 0", format!("edge {}", i)));
            }
            if self.edge_defect(i, epsilon) != 0 {
                out.push(violation("edge multiplicity condition", format!("edge {}", i)));
            }
        }
        for v in 0..g.vertices.len() {
            let loc = format!("vertex {}", v);
            let x = &g.vertices[v];
            match self.kind(v, epsilon) {
                VertexKind::Stable => {
                    if g.vertex_defect(v) != 0 {
                        out.push(violation("vertex multiplicity condition", loc));
                    }
                }
                VertexKind::SmoothEnd => {
                    if g.half_edge_mults(v) != [0] {
                        out.push(violation("smooth point has multiplicity zero", loc));
                    }
                }
                VertexKind::MarkedEnd => {
                    if (g.half_edge_mults(v)[0] + x.legs[0].mult) % g.d != 0 {
                        out.push(violation("marking on an edge is opposite to its half-edge", loc));
                    }
                }
                VertexKind::Joint => {
                    let hs = g.half_edge_mults(v);
                    if (hs[0] + hs[1]) % g.d != 0 {
                        out.push(violation("balanced node", loc));
                    }
                }
                VertexKind::BasepointEnd => {
                    if g.half_edge_mults(v) != [0] {
                        out.push(violation("basepoint end has multiplicity zero", loc.clone()));
                    }
                    let e = g.edges.iter().position(|e| e.a == v || e.b == v).expect("valence one");
                    if self.delta[e] <= x.beta {
                        out.push(violation("delta(e) > beta(e)", format!("edge {}", e)));
                    }
                }
                VertexKind::Unstable => out.push(violation("vertex stable at its level", loc)),
            }
        }
        out
    }
}

// ---- serialization ----

#[derive(Debug, Clone, Serialize, Deserialize)]
struct LegDoc {
    label: u32,
    mult: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct VertexDoc {
    genus: u32,
    beta: u32,
    #[serde(default)]
    legs: Vec<LegDoc>,
    #[serde(default)]
    extra_legs: u32,
    #[serde(default)]
    basepoints: Vec<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct EdgeDoc {
    a: usize,
    b: usize,
    m_a: String,
    m_b: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct DualGraphDoc {
    d: u32,
    phase: Phase,
    vertices: Vec<VertexDoc>,
    #[serde(default)]
    edges: Vec<EdgeDoc>,
    #[serde(default)]
    v_bullet: Option<usize>,
    #[serde(default)]
    coloring: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct LocGraphDoc {
    graph: DualGraph,
    delta: Vec<u32>,
}

pub fn mult_string(k: u32, d: u32) -> String {
    format!("{}/{}", k, d)
}

pub fn parse_mult(s: &str, d: u32) -> Result<u32, GraphError> {
    let r = parse_rat(s).map_err(|e| GraphError::Malformed(e.to_string()))?;
    let scaled = r * BigRat::from_integer(d.into());
    if !scaled.is_integer() {
        return Err(GraphError::Malformed(format!("multiplicity {} is not a multiple of 1/{}", s, d)));
    }
    let k: i64 = scaled.to_integer().try_into().map_err(|_| GraphError::Malformed(s.into()))?;
    if !(0..d as i64).contains(&k) {
        return Err(GraphError::Malformed(format!("multiplicity {} outside [0,1)", s)));
    }
    Ok(k as u32)
}

pub fn level_string(l: Level) -> &'static str {
    match l {
        Level::Zero => "0",
        Level::Infinity => "inf",
    }
}

pub fn parse_level(s: &str) -> Result<Level, GraphError> {
    match s {
        "0" => Ok(Level::Zero),
        "inf" | "∞" => Ok(Level::Infinity),
        _ => Err(GraphError::Malformed(format!("unknown level {}", s))),
    }
}

impl From<DualGraph> for DualGraphDoc {
    fn from(g: DualGraph) -> Self {
        let d = g.d;
        DualGraphDoc {
            d,
            phase: g.phase,
            vertices: g
                .vertices
                .into_iter()
                .map(|v| VertexDoc {
                    genus: v.genus,
                    beta: v.beta,
                    legs: v.legs.into_iter().map(|l| LegDoc { label: l.label, mult: mult_string(l.mult, d) }).collect(),
                    extra_legs: v.extra_legs,
                    basepoints: v.basepoints,
                })
                .collect(),
            edges: g
                .edges
                .into_iter()
                .map(|e| EdgeDoc { a: e.a, b: e.b, m_a: mult_string(e.m_a, d), m_b: mult_string(e.m_b, d) })
                .collect(),
            v_bullet: g.v_bullet,
            coloring: g.coloring.map(|c| c.into_iter().map(|l| level_string(l).to_string()).collect()),
        }
    }
}

impl TryFrom<DualGraphDoc> for DualGraph {
    type Error = GraphError;

    fn try_from(doc: DualGraphDoc) -> Result<Self, GraphError> {
        let d = doc.d;
        if d == 0 {
            return Err(GraphError::Malformed("d must be positive".into()));
        }
        let vertices = doc
            .vertices
            .into_iter()
            .map(|v| {
                Ok(Vertex {
                    genus: v.genus,
                    beta: v.beta,
                    legs: v
                        .legs
                        .into_iter()
                        .map(|l| Ok(Leg { label: l.label, mult: parse_mult(&l.mult, d)? }))
                        .collect::<Result<_, GraphError>>()?,
                    extra_legs: v.extra_legs,
                    basepoints: v.basepoints,
                })
            })
            .collect::<Result<Vec<_>, GraphError>>()?;
        let edges = doc
            .edges
            .into_iter()
            .map(|e| Ok(Edge { a: e.a, b: e.b, m_a: parse_mult(&e.m_a, d)?, m_b: parse_mult(&e.m_b, d)? }))
            .collect::<Result<Vec<_>, GraphError>>()?;
        let n = vertices.len();
        if edges.iter().any(|e: &Edge| e.a >= n || e.b >= n) {
            return Err(GraphError::Malformed("edge endpoint out of range".into()));
        }
        let coloring = doc
            .coloring
            .map(|c| c.iter().map(|s| parse_level(s)).collect::<Result<Vec<_>, _>>())
            .transpose()?;
        Ok(DualGraph { d, phase: doc.phase, vertices, edges, v_bullet: doc.v_bullet, coloring })
    }
}

impl From<LocGraph> for LocGraphDoc {
    fn from(g: LocGraph) -> Self {
        LocGraphDoc { graph: g.graph, delta: g.delta }
    }
}

impl TryFrom<LocGraphDoc> for LocGraph {
    type Error = GraphError;

    fn try_from(doc: LocGraphDoc) -> Result<Self, GraphError> {
        if doc.graph.coloring.is_none() {
            return Err(GraphError::Malformed("localization graph needs a coloring".into()));
        }
        if doc.delta.len() != doc.graph.edges.len() {
            return Err(GraphError::Malformed("one degree per edge".into()));
        }
        Ok(LocGraph { graph: doc.graph, delta: doc.delta })
    }
}
