use std::collections::BTreeMap;

use crate::algebra::BigRat;
use crate::model::GlsmModel;

use super::{DualGraph, Edge, GraphError, Leg, Level, LocGraph, Vertex, VertexKind};

pub const MAX_GENUS: u32 = 2;
pub const MAX_LEGS: u32 = 4;
pub const MAX_BETA: u32 = 6;
pub const MAX_DELTA: u32 = 4;

/// Ordered compositions of `total` into `parts` nonnegative entries.
pub(crate) fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Connected bipartite multigraphs: `(levels, edges)` with every level-zero vertex before every level-∞ one.
fn shapes(n_edges: usize, max_h1: u32) -> Vec<(Vec<Level>, Vec<(usize, usize)>)> {
    let mut out = Vec::new();
    if n_edges == 0 {
        out.push((vec![Level::Zero], vec![]));
        out.push((vec![Level::Infinity], vec![]));
        return out;
    }
    for v in 2..=n_edges + 1 {
        if (n_edges + 1 - v) as u32 > max_h1 {
            continue;
        }
        for v0 in 1..v {
            let pairs: Vec<(usize, usize)> = (0..v0).flat_map(|a| (v0..v).map(move |b| (a, b))).collect();
            for idx in multisets(pairs.len(), n_edges) {
                let edges: Vec<(usize, usize)> = idx.iter().map(|&i| pairs[i]).collect();
                if connected(v, &edges) {
                    let levels = (0..v).map(|i| if i < v0 { Level::Zero } else { Level::Infinity }).collect();
                    out.push((levels, edges));
                }
            }
        }
    }
    out
}

/// Non-decreasing sequences of length `len` over `0..k`.
fn multisets(k: usize, len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for mut rest in multisets(k, len - 1) {
        let lo = rest.last().copied().unwrap_or(0);
        for i in lo..k {
            rest.push(i);
            out.push(rest.clone());
            rest.pop();
        }
    }
    out
}

fn connected(v: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; v];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &(a, b) in edges {
            for (p, q) in [(a, b), (b, a)] {
                if p == x && !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

enum Constraint {
    Vertex(usize),
    Edge(usize),
    Zero(usize, bool),
    Marked(usize, bool, usize),
    Joint(usize),
}

/// A multiplicity variable: a leg `(vertex, index)` or a half-edge `(edge, is_b)`.
#[derive(Clone, Copy)]
enum Var {
    Leg(usize, usize),
    Half(usize, bool),
}

struct Solver<'a> {
    epsilon: &'a BigRat,
    vars: Vec<Var>,
    checks: Vec<Vec<Constraint>>,
    kinds: Vec<VertexKind>,
}

impl Solver<'_> {
    fn set(g: &mut LocGraph, var: Var, k: u32) {
        match var {
            Var::Leg(v, i) => g.graph.vertices[v].legs[i].mult = k,
            Var::Half(e, false) => g.graph.edges[e].m_a = k,
            Var::Half(e, true) => g.graph.edges[e].m_b = k,
        }
    }

    fn holds(&self, g: &LocGraph, c: &Constraint) -> bool {
        let gr = &g.graph;
        let half = |e: usize, b: bool| if b { gr.edges[e].m_b } else { gr.edges[e].m_a };
        match *c {
            Constraint::Vertex(v) => gr.vertex_defect(v) == 0,
            Constraint::Edge(e) => g.edge_defect(e, self.epsilon) == 0,
            Constraint::Zero(e, b) => half(e, b) == 0,
            Constraint::Marked(e, b, v) => (half(e, b) + gr.vertices[v].legs[0].mult) % gr.d == 0,
            Constraint::Joint(v) => {
                let hs = gr.half_edge_mults(v);
                (hs[0] + hs[1]) % gr.d == 0
            }
        }
    }

    fn run(&self, g: &mut LocGraph, i: usize, out: &mut Vec<LocGraph>) {
        if i == self.vars.len() {
            out.push(g.clone());
            return;
        }
        for k in 0..g.graph.d {
            Self::set(g, self.vars[i], k);
            if self.checks[i].iter().all(|c| self.holds(g, c)) {
                self.run(g, i + 1, out);
            }
        }
    }
}

fn solve_multiplicities(g: LocGraph, epsilon: &BigRat) -> Vec<LocGraph> {
    let gr = &g.graph;
    let kinds: Vec<VertexKind> = (0..gr.vertices.len()).map(|v| g.kind(v, epsilon)).collect();
    let mut vars = Vec::new();
    let mut leg_var = BTreeMap::new();
    for (v, x) in gr.vertices.iter().enumerate() {
        for i in 0..x.legs.len() {
            leg_var.entry(v).or_insert_with(Vec::new).push(vars.len());
            vars.push(Var::Leg(v, i));
        }
    }
    let first_half = vars.len();
    for e in 0..gr.edges.len() {
        vars.push(Var::Half(e, false));
        vars.push(Var::Half(e, true));
    }
    let half_var = |e: usize, b: bool| first_half + 2 * e + b as usize;
    let mut checks: Vec<Vec<Constraint>> = (0..vars.len().max(1)).map(|_| Vec::new()).collect();
    let place = |scope: Vec<usize>, c: Constraint, checks: &mut Vec<Vec<Constraint>>| {
        let last = scope.into_iter().max().unwrap_or(0);
        checks[last].push(c);
    };
    let incident = |v: usize| -> Vec<usize> {
        gr.edges
            .iter()
            .enumerate()
            .flat_map(|(e, ed)| {
                let mut s = Vec::new();
                if ed.a == v {
                    s.push(half_var(e, false));
                }
                if ed.b == v {
                    s.push(half_var(e, true));
                }
                s
            })
            .collect()
    };
    for (v, kind) in kinds.iter().enumerate() {
        let mut scope = incident(v);
        scope.extend(leg_var.get(&v).into_iter().flatten().copied());
        match kind {
            VertexKind::Stable => place(scope, Constraint::Vertex(v), &mut checks),
            VertexKind::SmoothEnd | VertexKind::BasepointEnd | VertexKind::MarkedEnd => {
                let (e, ed) = gr.edges.iter().enumerate().find(|(_, ed)| ed.a == v || ed.b == v).expect("valence one");
                let b = ed.b == v;
                let c = if *kind == VertexKind::MarkedEnd {
                    Constraint::Marked(e, b, v)
                } else {
                    Constraint::Zero(e, b)
                };
                place(scope, c, &mut checks);
            }
            VertexKind::Joint => place(scope, Constraint::Joint(v), &mut checks),
            VertexKind::Unstable => return Vec::new(),
        }
    }
    for (e, ed) in gr.edges.iter().enumerate() {
        let mut scope = vec![half_var(e, false), half_var(e, true)];
        for v in [ed.a, ed.b] {
            scope.extend(leg_var.get(&v).into_iter().flatten().copied());
        }
        place(scope, Constraint::Edge(e), &mut checks);
    }
    let solver = Solver { epsilon, vars, checks, kinds };
    debug_assert_eq!(solver.kinds.len(), g.graph.vertices.len());
    let mut out = Vec::new();
    let mut work = g;
    if solver.vars.is_empty() {
        if solver.checks.iter().flatten().all(|c| solver.holds(&work, c)) {
            out.push(work);
        }
        return out;
    }
    solver.run(&mut work, 0, &mut out);
    out
}

/// Torus-fixed localization graphs of genus `g` with `n` markings, degree `beta`
/// and total edge degree `delta`, one per isomorphism class, in canonical order.
pub fn enumerate_loc_graphs(model: &GlsmModel, g: u32, n: u32, beta: u32, delta: u32) -> Result<Vec<LocGraph>, GraphError> {
    if g > MAX_GENUS || n > MAX_LEGS || beta > MAX_BETA || delta > MAX_DELTA {
        return Err(GraphError::BoundsExceeded(format!(
            "g = {}, n = {}, beta = {}, delta = {} (limits {}, {}, {}, {})",
            g, n, beta, delta, MAX_GENUS, MAX_LEGS, MAX_BETA, MAX_DELTA
        )));
    }
    let eps = &model.epsilon;
    let d = model.d as u32;
    let mut found: BTreeMap<super::CanonKey, LocGraph> = BTreeMap::new();
    let edge_counts: Vec<usize> = if delta == 0 { vec![0] } else { (1..=delta as usize).collect() };
    for ne in edge_counts {
        for (levels, pairs) in shapes(ne, g) {
            let nv = levels.len();
            let h1 = (ne + 1).saturating_sub(nv) as u32;
            let degs = if ne == 0 {
                vec![vec![]]
            } else {
                compositions(delta - ne as u32, ne).into_iter().map(|c| c.iter().map(|x| x + 1).collect()).collect()
            };
            for dg in &degs {
                for gs in compositions(g - h1, nv) {
                    for bs in compositions(beta, nv) {
                        for code in 0..nv.pow(n) {
                            let mut vertices: Vec<Vertex> = (0..nv).map(|v| Vertex::new(gs[v], bs[v])).collect();
                            let mut c = code;
                            for label in 1..=n {
                                vertices[c % nv].legs.push(Leg { label, mult: 0 });
                                c /= nv;
                            }
                            let edges = pairs.iter().map(|&(a, b)| Edge { a, b, m_a: 0, m_b: 0 }).collect();
                            let mut graph = DualGraph::new(d, model.phase, vertices, edges);
                            graph.coloring = Some(levels.clone());
                            let cand = LocGraph { graph, delta: dg.clone() };
                            let ok_shape = (0..nv).all(|v| match cand.kind(v, eps) {
                                VertexKind::Unstable => false,
                                VertexKind::BasepointEnd => {
                                    let e = cand.graph.edges.iter().position(|e| e.a == v || e.b == v).expect("valence one");
                                    cand.delta[e] > cand.graph.vertices[v].beta
                                }
                                _ => true,
                            });
                            if !ok_shape {
                                continue;
                            }
                            for sol in solve_multiplicities(cand, eps) {
                                debug_assert!(sol.validate(eps).is_empty(), "{:?}", sol.validate(eps));
                                found.entry(sol.canonical_key()).or_insert(sol);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(found.into_values().collect())
}
