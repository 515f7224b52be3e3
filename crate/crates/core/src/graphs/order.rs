use std::collections::{BTreeMap, BTreeSet};

use super::{canonical_key, CanonKey, DualGraph, Edge, Vertex};

/// `v_•` set with `n′(v_•) = 0` and `β(v_•) > 0`, and every vertex stable after adding its `n′` legs.
pub fn triple_stable(g: &DualGraph) -> bool {
    let Some(b) = g.v_bullet else { return false };
    if b >= g.vertices.len() || g.vertices[b].extra_legs != 0 || g.vertices[b].beta == 0 {
        return false;
    }
    (0..g.vertices.len()).all(|v| {
        let x = &g.vertices[v];
        2 * x.genus as i64 - 2 + g.special_points(v) as i64 > 0 || x.beta > 0
    })
}

fn triple_key(g: &DualGraph) -> CanonKey {
    let mut h = g.clone();
    h.coloring = None;
    canonical_key(&h, None)
}

/// Collapses the connected subgraph `(s, f)` of `a` to a single distinguished vertex.
fn collapse(a: &DualGraph, s: &[usize], f: &[usize]) -> DualGraph {
    let in_s = |v: usize| s.contains(&v);
    let mut merged = Vertex::new(0, 0);
    let mut genus = f.len() as i64 - s.len() as i64 + 1;
    for &v in s {
        let x = &a.vertices[v];
        genus += x.genus as i64;
        merged.beta += x.beta;
        merged.legs.extend(x.legs.iter().cloned());
        merged.basepoints.extend(x.basepoints.iter().copied());
    }
    merged.genus = genus as u32;
    let mut index = vec![usize::MAX; a.vertices.len()];
    let mut vertices = Vec::new();
    for (v, x) in a.vertices.iter().enumerate() {
        if !in_s(v) {
            index[v] = vertices.len();
            vertices.push(x.clone());
        }
    }
    let hub = vertices.len();
    vertices.push(merged);
    for &v in s {
        index[v] = hub;
    }
    let edges = a
        .edges
        .iter()
        .enumerate()
        .filter(|(i, _)| !f.contains(i))
        .map(|(_, e)| Edge { a: index[e.a], b: index[e.b], m_a: e.m_a, m_b: e.m_b })
        .collect();
    let mut out = DualGraph::new(a.d, a.phase, vertices, edges);
    out.v_bullet = Some(hub);
    out
}

fn spans(s: &[usize], f: &[usize], edges: &[Edge]) -> bool {
    let mut seen = BTreeSet::from([s[0]]);
    let mut changed = true;
    while changed {
        changed = false;
        for &i in f {
            let e = &edges[i];
            if seen.contains(&e.a) != seen.contains(&e.b) {
                seen.insert(e.a);
                seen.insert(e.b);
                changed = true;
            }
        }
    }
    seen.len() == s.len()
}

/// `a ≤ b`: `b` arises from `a` by collapsing a connected subgraph through `a`'s
/// distinguished vertex to `b`'s distinguished vertex.
pub fn graph_leq(a: &DualGraph, b: &DualGraph) -> bool {
    let (Some(va), Some(_)) = (a.v_bullet, b.v_bullet) else { return false };
    let target = triple_key(b);
    let others: Vec<usize> = (0..a.vertices.len()).filter(|&v| v != va).collect();
    for mask in 0u64..(1u64 << others.len()) {
        let mut s = vec![va];
        s.extend(others.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v));
        if a.vertices.len() - s.len() + 1 != b.vertices.len() {
            continue;
        }
        let inside: Vec<usize> =
            (0..a.edges.len()).filter(|&i| s.contains(&a.edges[i].a) && s.contains(&a.edges[i].b)).collect();
        for fmask in 0u64..(1u64 << inside.len()) {
            let f: Vec<usize> = inside.iter().enumerate().filter(|(i, _)| fmask >> i & 1 == 1).map(|(_, &e)| e).collect();
            if a.edges.len() - f.len() != b.edges.len() || !spans(&s, &f, &a.edges) {
                continue;
            }
            if triple_key(&collapse(a, &s, &f)) == target {
                return true;
            }
        }
    }
    false
}

/// Triples one elementary step below `b`: a loop at `v_•` absorbing one genus,
/// or `v_•` split in two along a new edge.
fn predecessors(b: &DualGraph) -> Vec<DualGraph> {
    let Some(v) = b.v_bullet else { return Vec::new() };
    let d = b.d;
    let x = b.vertices[v].clone();
    let mut found: BTreeMap<CanonKey, DualGraph> = BTreeMap::new();
    let keep = |g: DualGraph, found: &mut BTreeMap<CanonKey, DualGraph>| {
        if triple_stable(&g) && g.validate().is_empty() {
            found.entry(triple_key(&g)).or_insert(g);
        }
    };
    if x.genus > 0 {
        for m in 0..d {
            let m2 = (d - m) % d;
            if m > m2 {
                continue;
            }
            let mut g = b.clone();
            g.vertices[v].genus -= 1;
            g.edges.push(Edge { a: v, b: v, m_a: m, m_b: m2 });
            keep(g, &mut found);
        }
    }
    let halves: Vec<(usize, bool)> = b
        .edges
        .iter()
        .enumerate()
        .flat_map(|(i, e)| {
            let mut s = Vec::new();
            if e.a == v {
                s.push((i, false));
            }
            if e.b == v {
                s.push((i, true));
            }
            s
        })
        .collect();
    let items = x.legs.len() + halves.len();
    for mask in 0u64..(1u64 << items) {
        for gu in 0..=x.genus {
            for bu in 1..=x.beta {
                let mut g = b.clone();
                let w = g.vertices.len();
                let mut u_vertex = Vertex::new(gu, bu);
                u_vertex.basepoints = x.basepoints.clone();
                let mut w_vertex = Vertex::new(x.genus - gu, x.beta - bu);
                for (i, leg) in x.legs.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        w_vertex.legs.push(leg.clone());
                    } else {
                        u_vertex.legs.push(leg.clone());
                    }
                }
                for (j, &(e, side_b)) in halves.iter().enumerate() {
                    if mask >> (x.legs.len() + j) & 1 == 1 {
                        if side_b {
                            g.edges[e].b = w;
                        } else {
                            g.edges[e].a = w;
                        }
                    }
                }
                g.vertices[v] = u_vertex;
                g.vertices.push(w_vertex);
                g.edges.push(Edge { a: v, b: w, m_a: 0, m_b: 0 });
                let r = g.vertex_defect(w) as u32;
                let last = g.edges.len() - 1;
                g.edges[last].m_b = r;
                g.edges[last].m_a = (d - r) % d;
                keep(g, &mut found);
            }
        }
    }
    found.into_values().collect()
}

/// Strictly decreasing chains starting at `b`, each extended until it has
/// `max_len` steps or no elementary predecessor remains.
pub fn descending_chains(b: &DualGraph, max_len: usize) -> Vec<Vec<DualGraph>> {
    let mut out = Vec::new();
    let mut chain = vec![b.clone()];
    extend(&mut chain, max_len, &mut out);
    out
}

fn extend(chain: &mut Vec<DualGraph>, max_len: usize, out: &mut Vec<Vec<DualGraph>>) {
    let preds = if chain.len() > max_len { Vec::new() } else { predecessors(chain.last().expect("nonempty")) };
    if preds.is_empty() {
        out.push(chain.clone());
        return;
    }
    for p in preds {
        chain.push(p);
        extend(chain, max_len, out);
        chain.pop();
    }
}

/// Number of steps in the longest strictly decreasing chain from `b`.
pub fn longest_descending_chain(b: &DualGraph) -> usize {
    let mut memo = BTreeMap::new();
    longest(b, &mut memo)
}

fn longest(b: &DualGraph, memo: &mut BTreeMap<CanonKey, usize>) -> usize {
    let key = triple_key(b);
    if let Some(&n) = memo.get(&key) {
        return n;
    }
    let n = predecessors(b).iter().map(|p| 1 + longest(p, memo)).max().unwrap_or(0);
    memo.insert(key, n);
    n
}
