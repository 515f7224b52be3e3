use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use crate::algebra::BigRat;

use super::{DualGraph, Leg, Level, LocGraph, VertexKind};

type VKey = (Option<Level>, u32, u32, Vec<u32>, Vec<Leg>, u32, bool);
type EKey = (usize, u32, usize, u32, u32);

/// Isomorphism-invariant form of a decorated graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonKey {
    vertices: Vec<VKey>,
    edges: Vec<EKey>,
}

struct Decorated {
    vkeys: Vec<VKey>,
    edges: Vec<EKey>,
}

fn decorate(g: &DualGraph, delta: Option<&[u32]>) -> Decorated {
    let vkeys = g
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut bp = v.basepoints.clone();
            bp.sort_unstable();
            let mut legs = v.legs.clone();
            legs.sort();
            (
                g.coloring.as_ref().map(|c| c[i]),
                v.genus,
                v.beta,
                bp,
                legs,
                v.extra_legs,
                g.v_bullet == Some(i),
            )
        })
        .collect();
    let edges = g
        .edges
        .iter()
        .enumerate()
        .map(|(i, e)| (e.a, e.m_a, e.b, e.m_b, delta.map(|d| d[i]).unwrap_or(0)))
        .collect();
    Decorated { vkeys, edges }
}

fn orient(e: EKey) -> EKey {
    let (a, ma, b, mb, x) = e;
    if (a, ma) <= (b, mb) {
        e
    } else {
        (b, mb, a, ma, x)
    }
}

fn key_under(dec: &Decorated, perm: &[usize]) -> CanonKey {
    let mut vertices = vec![None; dec.vkeys.len()];
    for (v, k) in dec.vkeys.iter().enumerate() {
        vertices[perm[v]] = Some(k.clone());
    }
    let mut edges: Vec<EKey> = dec
        .edges
        .iter()
        .map(|&(a, ma, b, mb, x)| orient((perm[a], ma, perm[b], mb, x)))
        .collect();
    edges.sort_unstable();
    CanonKey { vertices: vertices.into_iter().map(|v| v.expect("permutation")).collect(), edges }
}

fn ranks<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = sigs.to_vec();
    sorted.sort();
    sorted.dedup();
    sigs.iter().map(|s| sorted.binary_search(s).expect("present")).collect()
}

/// Color refinement to a fixed point, starting from vertex decorations.
fn refine(dec: &Decorated) -> Vec<usize> {
    let mut colors = ranks(&dec.vkeys);
    loop {
        let classes = colors.iter().collect::<std::collections::BTreeSet<_>>().len();
        let sigs: Vec<(usize, Vec<(usize, u32, u32, u32)>)> = (0..colors.len())
            .map(|v| {
                let mut nb = Vec::new();
                for &(a, ma, b, mb, x) in &dec.edges {
                    if a == v {
                        nb.push((colors[b], ma, mb, x));
                    }
                    if b == v {
                        nb.push((colors[a], mb, ma, x));
                    }
                }
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let next = ranks(&sigs);
        let next_classes = next.iter().collect::<std::collections::BTreeSet<_>>().len();
        colors = next;
        if next_classes == classes {
            return colors;
        }
    }
}

/// All vertex relabelings that list the color classes in order.
fn cell_perms(colors: &[usize]) -> Vec<Vec<usize>> {
    let n = colors.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| colors[v]);
    let mut cells: Vec<(usize, Vec<usize>)> = Vec::new();
    for (pos, &v) in order.iter().enumerate() {
        match cells.last_mut() {
            Some((_, members)) if colors[members[0]] == colors[v] => members.push(v),
            _ => cells.push((pos, vec![v])),
        }
    }
    let mut out = vec![vec![usize::MAX; n]];
    for (start, members) in &cells {
        let mut next = Vec::new();
        for p in &out {
            for arrangement in permutations(members) {
                let mut q = p.clone();
                for (i, &v) in arrangement.iter().enumerate() {
                    q[v] = start + i;
                }
                next.push(q);
            }
        }
        out = next;
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn canonical_of(dec: &Decorated) -> (CanonKey, u64) {
    let perms = cell_perms(&refine(dec));
    let base = key_under(dec, &perms[0]);
    let mut best = base.clone();
    let mut auts = 0u64;
    for p in &perms {
        let k = key_under(dec, p);
        if k == base {
            auts += 1;
        }
        if k < best {
            best = k;
        }
    }
    let mut counts: BTreeMap<&EKey, u64> = BTreeMap::new();
    for e in &base.edges {
        *counts.entry(e).or_default() += 1;
    }
    for (e, k) in counts {
        auts *= (1..=k).product::<u64>();
        if e.0 == e.2 && e.1 == e.3 {
            auts *= 2u64.pow(k as u32);
        }
    }
    (best, auts)
}

pub fn canonical_key(g: &DualGraph, delta: Option<&[u32]>) -> CanonKey {
    canonical_of(&decorate(g, delta)).0
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutDegree {
    pub aut_order: u64,
    #[serde(serialize_with = "crate::algebra::serialize_rat")]
    pub degree_factor: BigRat,
}

fn d_m(d: u32, k: u32) -> u64 {
    (d / d.gcd(&k)) as u64
}

/// `|Aut(Γ)|` and `|Aut(Γ)| / ∏_e d_{m(h_e)}` with one half-edge per edge.
pub fn aut_degree(g: &DualGraph) -> AutDegree {
    let (_, aut_order) = canonical_of(&decorate(g, None));
    let den: u64 = g.edges.iter().map(|e| d_m(g.d, e.m_a)).product();
    AutDegree { aut_order, degree_factor: BigRat::new(aut_order.into(), den.into()) }
}

impl LocGraph {
    pub fn canonical_key(&self) -> CanonKey {
        canonical_key(&self.graph, Some(&self.delta))
    }

    /// `|Aut(Λ)| / ∏_{h∈H̃} d_{m(h)}`: every half-edge at a stable vertex, and at a
    /// joint the half-edge whose edge leads to the lower vertex id.
    pub fn aut_degree(&self, epsilon: &BigRat) -> AutDegree {
        let g = &self.graph;
        let (_, aut_order) = canonical_of(&decorate(g, Some(&self.delta)));
        let mut den = 1u64;
        for v in 0..g.vertices.len() {
            match self.kind(v, epsilon) {
                VertexKind::Stable => {
                    den *= g.half_edge_mults(v).iter().map(|&k| d_m(g.d, k)).product::<u64>();
                }
                VertexKind::Joint => {
                    let m = g
                        .edges
                        .iter()
                        .filter_map(|e| {
                            if e.a == v {
                                Some((e.b, e.m_a))
                            } else if e.b == v {
                                Some((e.a, e.m_b))
                            } else {
                                None
                            }
                        })
                        .min()
                        .expect("valence two")
                        .1;
                    den *= d_m(g.d, m);
                }
                _ => {}
            }
        }
        AutDegree { aut_order, degree_factor: BigRat::new(aut_order.into(), den.into()) }
    }
}
