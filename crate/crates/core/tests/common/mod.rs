#![allow(dead_code)]

use std::collections::BTreeSet;

use glsm_core::algebra::{int, BigRat};
use glsm_core::graphs::*;
use glsm_core::model::{GlsmModel, Phase};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn lg(vertices: Vec<Vertex>, edges: Vec<Edge>) -> DualGraph {
    DualGraph::new(5, Phase::Lg, vertices, edges)
}

pub fn edge(a: usize, b: usize, m_a: u32, m_b: u32) -> Edge {
    Edge { a, b, m_a, m_b }
}


/// Top graph of the order example: `A(g=1) – v•(g=2, β=1)` with a leg at `A`.
pub fn order_example_top() -> DualGraph {
    lg(vec![Vertex::new(1, 0).with_leg(1, 4), Vertex::new(2, 1)], vec![edge(0, 1, 3, 2)]).with_bullet(1)
}

pub fn order_example_predecessors() -> Vec<DualGraph> {
    vec![
        lg(
            vec![Vertex::new(1, 0).with_leg(1, 4), Vertex::new(1, 1), Vertex::new(1, 0)],
            vec![edge(0, 1, 3, 2), edge(1, 2, 4, 1)],
        )
        .with_bullet(1),
        lg(
            vec![Vertex::new(1, 0).with_leg(1, 4), Vertex::new(1, 0), Vertex::new(1, 1)],
            vec![edge(0, 1, 3, 2), edge(1, 2, 0, 0)],
        )
        .with_bullet(2),
        lg(vec![Vertex::new(1, 0).with_leg(1, 4), Vertex::new(1, 1)], vec![edge(0, 1, 3, 2), edge(1, 1, 0, 0)])
            .with_bullet(1),
        lg(
            vec![Vertex::new(1, 0).with_leg(1, 4), Vertex::new(0, 1), Vertex::new(1, 0)],
            vec![edge(0, 1, 3, 2), edge(1, 1, 0, 0), edge(1, 2, 4, 1)],
        )
        .with_bullet(1),
    ]
}


// ---- enumeration against an independent brute force ----

pub fn quintic(eps: BigRat) -> GlsmModel {
    GlsmModel::fermat(5, Phase::Lg, eps).unwrap()
}

#[derive(Clone, Debug)]
struct Raw {
    level: Vec<bool>, // true = ∞
    genus: Vec<u32>,
    beta: Vec<u32>,
    legs: Vec<Vec<(u32, u32)>>,
    edges: Vec<(usize, usize, u32, u32, u32)>, // a, b, m_a, m_b, δ
}

const D: i64 = 5;

/// Vertex kinds, or `None` when some vertex fits no allowed shape.
fn raw_kinds(r: &Raw, eps: &BigRat) -> Option<Vec<u8>> {
    let nv = r.level.len();
    let val = |v: usize| r.edges.iter().map(|e| (e.0 == v) as u32 + (e.1 == v) as u32).sum::<u32>();
    // 0 stable, 1 smooth end, 2 marked end, 3 joint, 4 basepoint end
    let mut kind = vec![0; nv];
    for v in 0..nv {
        let a = 2 * r.genus[v] as i64 - 2 + val(v) as i64 + r.legs[v].len() as i64;
        let stable = if r.level[v] { a > 0 || r.beta[v] > 0 } else { int(a) + eps * int(r.beta[v] as i64) > int(0) };
        kind[v] = if stable {
            0
        } else if r.genus[v] != 0 {
            return None;
        } else if r.beta[v] == 0 && val(v) == 1 && r.legs[v].is_empty() {
            1
        } else if r.beta[v] == 0 && val(v) == 1 && r.legs[v].len() == 1 {
            2
        } else if r.beta[v] == 0 && val(v) == 2 && r.legs[v].is_empty() {
            3
        } else if r.beta[v] > 0 && val(v) == 1 && r.legs[v].is_empty() && !r.level[v] {
            4
        } else {
            return None;
        };
    }
    Some(kind)
}

fn raw_ok(r: &Raw, kind: &[u8]) -> bool {
    let nv = r.level.len();
    let halves = |v: usize| -> Vec<u32> {
        let mut h = Vec::new();
        for e in &r.edges {
            if e.0 == v {
                h.push(e.2);
            }
            if e.1 == v {
                h.push(e.3);
            }
        }
        h
    };
    for e in &r.edges {
        if r.level[e.0] == r.level[e.1] || e.4 == 0 {
            return false;
        }
        let mut beta_e = 0i64;
        let mut special = 0i64;
        let mut side = 0i64;
        for (v, m) in [(e.0, e.2), (e.1, e.3)] {
            match kind[v] {
                0 | 3 => {
                    special += 1;
                    side += (D - m as i64) % D;
                }
                2 => {
                    special += 1;
                    side += r.legs[v][0].1 as i64;
                    if (m + r.legs[v][0].1) as i64 % D != 0 {
                        return false;
                    }
                }
                1 => {
                    if m != 0 {
                        return false;
                    }
                }
                _ => {
                    beta_e += r.beta[v] as i64;
                    if m != 0 || e.4 as i64 <= beta_e {
                        return false;
                    }
                }
            }
        }
        if (-beta_e - 2 + special - side).rem_euclid(D) != 0 {
            return false;
        }
    }
    for v in 0..nv {
        let hs = halves(v);
        match kind[v] {
            0 => {
                let msum: i64 = hs.iter().map(|&m| m as i64).sum::<i64>() + r.legs[v].iter().map(|l| l.1 as i64).sum::<i64>();
                let cnt = hs.len() as i64 + r.legs[v].len() as i64;
                if (-(r.beta[v] as i64) + 2 * r.genus[v] as i64 - 2 + cnt - msum).rem_euclid(D) != 0 {
                    return false;
                }
            }
            3 => {
                if (hs[0] + hs[1]) as i64 % D != 0 {
                    return false;
                }
            }
            _ => {}
        }
    }
    true
}

fn raw_canon(r: &Raw) -> String {
    let nv = r.level.len();
    let mut best: Option<String> = None;
    for p in perms(nv) {
        let mut vs = vec![String::new(); nv];
        for v in 0..nv {
            let mut legs = r.legs[v].clone();
            legs.sort();
            vs[p[v]] = format!("{}:{}:{}:{:?}", r.level[v], r.genus[v], r.beta[v], legs);
        }
        let mut es: Vec<(usize, u32, usize, u32, u32)> = r
            .edges
            .iter()
            .map(|e| {
                let (x, y) = ((p[e.0], e.2), (p[e.1], e.3));
                let (x, y) = if x <= y { (x, y) } else { (y, x) };
                (x.0, x.1, y.0, y.1, e.4)
            })
            .collect();
        es.sort();
        let s = format!("{:?}|{:?}", vs, es);
        if best.as_ref().map_or(true, |b| &s < b) {
            best = Some(s);
        }
    }
    best.unwrap()
}

fn perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in perms(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn splits(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    (0..=total)
        .flat_map(|f| {
            splits(total - f, parts - 1).into_iter().map(move |mut r| {
                r.insert(0, f);
                r
            })
        })
        .collect()
}

/// Every labeled configuration up to relabeling the vertices, counted by brute force.
pub fn brute_force_count(g: u32, n: u32, beta: u32, delta: u32, eps: &BigRat) -> usize {
    let mut seen = BTreeSet::new();
    let max_e = if delta == 0 { 0 } else { delta as usize };
    for ne in (if delta == 0 { 0 } else { 1 })..=max_e {
        let max_v = ne + 1;
        for nv in 1..=max_v {
            if ne + 1 < nv || (ne + 1 - nv) as u32 > g || (ne == 0 && nv != 1) {
                continue;
            }
            let pairs: Vec<(usize, usize)> = (0..nv).flat_map(|a| (a + 1..nv).map(move |b| (a, b))).collect();
            let edge_lists: Vec<Vec<(usize, usize)>> = if ne == 0 {
                vec![vec![]]
            } else {
                let mut out = vec![vec![]];
                for _ in 0..ne {
                    out = out
                        .into_iter()
                        .flat_map(|l: Vec<(usize, usize)>| pairs.iter().map(move |&p| [l.clone(), vec![p]].concat()))
                        .collect();
                }
                out
            };
            for el in &edge_lists {
                // connectivity
                let mut comp: Vec<usize> = (0..nv).collect();
                for _ in 0..nv {
                    for &(a, b) in el {
                        let m = comp[a].min(comp[b]);
                        comp[a] = m;
                        comp[b] = m;
                    }
                }
                if comp.iter().any(|&c| c != 0) {
                    continue;
                }
                let h1 = (ne + 1 - nv) as u32;
                for lv in 0..(1u32 << nv) {
                    let level: Vec<bool> = (0..nv).map(|v| lv >> v & 1 == 1).collect();
                    if el.iter().any(|&(a, b)| level[a] == level[b]) {
                        continue;
                    }
                    for ds in splits(delta - ne as u32, ne) {
                        for gs in splits(g - h1, nv) {
                            for bs in splits(beta, nv) {
                                for place in 0..nv.pow(n) {
                                    let mut shape = Raw { level: level.clone(), genus: gs.clone(), beta: bs.clone(), legs: vec![vec![]; nv], edges: vec![] };
                                    let mut p = place;
                                    for label in 1..=n {
                                        shape.legs[p % nv].push((label, 0));
                                        p /= nv;
                                    }
                                    shape.edges = el.iter().map(|&(a, b)| (a, b, 0, 0, 1)).collect();
                                    let Some(kind) = raw_kinds(&shape, eps) else { continue };
                                    for lm in 0..(D as usize).pow(n) {
                                        let mut legs = vec![vec![]; nv];
                                        let (mut p, mut m) = (place, lm);
                                        for label in 1..=n {
                                            legs[p % nv].push((label, (m % D as usize) as u32));
                                            p /= nv;
                                            m /= D as usize;
                                        }
                                        for hm in 0..(D as usize).pow(2 * ne as u32) {
                                            let mut h = hm;
                                            let edges = el
                                                .iter()
                                                .zip(&ds)
                                                .map(|(&(a, b), &dd)| {
                                                    let ma = (h % D as usize) as u32;
                                                    h /= D as usize;
                                                    let mb = (h % D as usize) as u32;
                                                    h /= D as usize;
                                                    (a, b, ma, mb, dd + 1)
                                                })
                                                .collect();
                                            let r = Raw { level: level.clone(), genus: gs.clone(), beta: bs.clone(), legs: legs.clone(), edges };
                                            if raw_ok(&r, &kind) {
                                                seen.insert(raw_canon(&r));
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    seen.len()
}

/// Random valid ∞-stable tree with multiplicities solved leaf to root.
pub fn random_tree(rng: &mut ChaCha8Rng) -> DualGraph {
    loop {
        let nv = rng.gen_range(1..=5);
        let mut vertices: Vec<Vertex> = (0..nv).map(|_| Vertex::new(rng.gen_range(0..=1) * rng.gen_range(0..=2), rng.gen_range(0..=2))).collect();
        let parent: Vec<usize> = (1..nv).map(|v| rng.gen_range(0..v)).collect();
        let mut label = 1;
        for v in 0..nv {
            if rng.gen_bool(0.3) {
                vertices[v].legs.push(Leg { label, mult: rng.gen_range(0..5) });
                label += 1;
            }
        }
        vertices[0].legs.push(Leg { label, mult: 0 });
        let mut g = lg(vertices, (1..nv).map(|v| edge(parent[v - 1], v, 0, 0)).collect());
        for v in (1..nv).rev() {
            let r = (0..5).find(|&k| {
                g.edges[v - 1].m_b = k;
                g.edges[v - 1].m_a = (5 - k) % 5;
                g.validate().iter().all(|x| x.location != format!("vertex {}", v))
            });
            assert!(r.is_some());
        }
        let root = g.vertices[0].legs.len() - 1;
        for k in 0..5 {
            g.vertices[0].legs[root].mult = k;
            if g.validate().is_empty() {
                break;
            }
        }
        let n = g.vertices.iter().map(|v| v.legs.len() as i64).sum::<i64>();
        if g.validate().is_empty() && g.is_infinity_stable() && 2 * g.total_genus() - 2 + n > 0 {
            return g;
        }
    }
}

pub fn random_triple(rng: &mut ChaCha8Rng) -> DualGraph {
    loop {
        let mut g = random_tree(rng);
        if g.vertices.len() > 3 {
            continue;
        }
        let b = rng.gen_range(0..g.vertices.len());
        g.vertices[b].beta = g.vertices[b].beta.max(1);
        g.vertices[b].genus = g.vertices[b].genus.min(1);
        for k in 0..5 {
            if g.validate().is_empty() {
                break;
            }
            let root = g.vertices[0].legs.len() - 1;
            g.vertices[0].legs[root].mult = k;
        }
        g.v_bullet = Some(b);
        if g.validate().is_empty() && triple_stable(&g) && g.total_genus() <= 2 {
            return g;
        }
    }
}
