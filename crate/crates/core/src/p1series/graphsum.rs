use num_traits::Zero;

use crate::algebra::{factorial, int, BigRat, CohClass, RatFun};

use super::{edge_factor, restriction, tangent, P1Error};

/// An insertion `τ_a(α)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Insertion {
    pub class: CohClass,
    pub psi: u32,
}

impl Insertion {
    pub fn new(class: CohClass, psi: u32) -> Self {
        Insertion { class, psi }
    }
}

pub const MAX_POINTS: usize = 5;
pub const MAX_DEGREE: u32 = 3;

/// `∫_{M̄_{0,n}} ∏ ψ_i^{a_i} = (n−3)!/∏ a_i!` when `Σ a_i = n − 3`, else 0.
pub fn psi_integral_genus0(exps: &[u32]) -> BigRat {
    let n = exps.len();
    if n < 3 || exps.iter().map(|&a| a as usize).sum::<usize>() != n - 3 {
        return BigRat::zero();
    }
    let mut r = BigRat::from_integer(factorial(n - 3));
    for &a in exps {
        r /= BigRat::from_integer(factorial(a as usize));
    }
    r
}

/// Compositions of `total` into `parts` nonnegative entries.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
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

/// Contribution of a vertex at level `j` with incident edge degrees `degs`
/// and markings `(α|_j, a)`.
fn vertex_factor(j: usize, degs: &[u32], marks: &[(RatFun, u32)]) -> RatFun {
    let t = tangent(j);
    let omega: Vec<RatFun> = degs.iter().map(|&d| t.scale(&int(d as i64).recip())).collect();
    let alpha = marks.iter().fold(RatFun::one(), |acc, (a, _)| acc.mul(a));
    if alpha.is_zero() {
        return RatFun::zero();
    }
    let (r, nv) = (degs.len(), marks.len());
    match (r, nv) {
        (1, 0) => return omega[0].clone(),
        (2, 0) => return t.div(&omega[0].add(&omega[1])).expect("nonzero weight"),
        (1, 1) => {
            let a = marks[0].1 as i64;
            return alpha.mul(&omega[0].neg().pow(a).expect("nonnegative power"));
        }
        _ => {}
    }
    let dim = (r + nv) as i64 - 3;
    let a_sum: i64 = marks.iter().map(|(_, a)| *a as i64).sum();
    let rest = dim - a_sum;
    if rest < 0 {
        return RatFun::zero();
    }
    let mut acc = RatFun::zero();
    for bs in compositions(rest as u32, r) {
        let exps: Vec<u32> = bs.iter().copied().chain(marks.iter().map(|(_, a)| *a)).collect();
        let c = psi_integral_genus0(&exps);
        if c.is_zero() {
            continue;
        }
        let mut term = RatFun::constant(c);
        for (w, &b) in omega.iter().zip(&bs) {
            term = term.mul(&w.pow(-(b as i64) - 1).expect("nonzero weight"));
        }
        acc = acc.add(&term);
    }
    acc.mul(&t.pow(r as i64 - 1).expect("nonzero weight")).mul(&alpha)
}

/// Labeled trees on `v ≥ 2` vertices, via Prüfer sequences.
fn labeled_trees(v: usize) -> Vec<Vec<(usize, usize)>> {
    if v == 2 {
        return vec![vec![(0, 1)]];
    }
    let mut out = Vec::new();
    let len = v - 2;
    let total = v.pow(len as u32);
    for code in 0..total {
        let mut seq = Vec::with_capacity(len);
        let mut c = code;
        for _ in 0..len {
            seq.push(c % v);
            c /= v;
        }
        let mut degree = vec![1usize; v];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut edges = Vec::with_capacity(v - 1);
        for &s in &seq {
            let leaf = (0..v).find(|&i| degree[i] == 1).expect("leaf exists");
            edges.push((leaf, s));
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let rest: Vec<usize> = (0..v).filter(|&i| degree[i] == 1).collect();
        edges.push((rest[0], rest[1]));
        out.push(edges);
    }
    out
}

/// Equivariant genus-zero invariant `⟨τ_{a_1}(α_1) ⋯ τ_{a_n}(α_n)⟩_{0,n,δ}` of the projective line,
/// as a sum over torus-fixed graphs.
pub fn p1_graph_sum(delta: u32, insertions: &[Insertion]) -> Result<RatFun, P1Error> {
    let n = insertions.len();
    if n > MAX_POINTS || delta > MAX_DEGREE {
        return Err(P1Error::BoundsExceeded(format!(
            "n = {} (max {}), delta = {} (max {})",
            n, MAX_POINTS, delta, MAX_DEGREE
        )));
    }
    let restr: Vec<[RatFun; 2]> = insertions
        .iter()
        .map(|i| [restriction(&i.class, 0), restriction(&i.class, 1)])
        .collect();
    if delta == 0 {
        if n < 3 {
            return Ok(RatFun::zero());
        }
        let exps: Vec<u32> = insertions.iter().map(|i| i.psi).collect();
        let c = psi_integral_genus0(&exps);
        let mut acc = RatFun::zero();
        for j in 0..2 {
            let a = restr.iter().fold(RatFun::one(), |acc, r| acc.mul(&r[j]));
            acc = acc.add(&a.div(&tangent(j)).expect("nonzero weight"));
        }
        return Ok(acc.scale(&c));
    }
    let mut total = RatFun::zero();
    for e in 1..=delta as usize {
        let v = e + 1;
        let weight = BigRat::from_integer(factorial(v)).recip();
        let trees = labeled_trees(v);
        for degs in compositions(delta - e as u32, e) {
            let degs: Vec<u32> = degs.iter().map(|d| d + 1).collect();
            let edge_part = degs.iter().fold(RatFun::one(), |acc, &d| acc.mul(&edge_factor(d)));
            for tree in &trees {
                let mut level = vec![usize::MAX; v];
                level[0] = 0;
                let mut changed = true;
                while changed {
                    changed = false;
                    for &(a, b) in tree {
                        if level[a] != usize::MAX && level[b] == usize::MAX {
                            level[b] = 1 - level[a];
                            changed = true;
                        } else if level[b] != usize::MAX && level[a] == usize::MAX {
                            level[a] = 1 - level[b];
                            changed = true;
                        }
                    }
                }
                let mut incident: Vec<Vec<u32>> = vec![vec![]; v];
                for (&(a, b), &d) in tree.iter().zip(&degs) {
                    incident[a].push(d);
                    incident[b].push(d);
                }
                for flip in 0..2 {
                    let lev: Vec<usize> = level.iter().map(|&l| l ^ flip).collect();
                    for code in 0..v.pow(n as u32) {
                        let mut place = Vec::with_capacity(n);
                        let mut c = code;
                        for _ in 0..n {
                            place.push(c % v);
                            c /= v;
                        }
                        let mut term = edge_part.clone();
                        for vert in 0..v {
                            let marks: Vec<(RatFun, u32)> = (0..n)
                                .filter(|&k| place[k] == vert)
                                .map(|k| (restr[k][lev[vert]].clone(), insertions[k].psi))
                                .collect();
                            term = term.mul(&vertex_factor(lev[vert], &incident[vert], &marks));
                            if term.is_zero() {
                                break;
                            }
                        }
                        total = total.add(&term.scale(&weight));
                    }
                }
            }
        }
    }
    Ok(total)
}
