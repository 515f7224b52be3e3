use glsm_core::algebra::{int, rat, BigRat, CohClass, RatFun, Relation};
use glsm_core::graphs::{
    contract_c, convert_markings_b, graph_leq, longest_descending_chain, triple_stable, DualGraph, Edge, Leg,
    Vertex, VertexKind,
};
use glsm_core::jfun::{localization_coefficient, mu_table, positive_j};
use glsm_core::model::{choose_delta, frac_bracket, on_wall, GlsmModel, Phase};
use glsm_core::p1series::{
    closed_form_stilde_h, closed_form_stilde_one, hyperplane, irr_ratio_check, one, p1_graph_sum, point_inf,
    point_zero, stilde_at_zero, tree_series_eps, Insertion,
};
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::report::Check;

type Step = Result<Value, String>;

pub fn run(cfg: &RunConfig) -> (Value, Vec<Check>) {
    let y = cfg.truncations.y_max.max(1);
    let steps: Vec<(&str, Step)> = vec![
        ("1 stilde closed forms", stilde_forms()),
        ("2 irrational ratio", irrational(y)),
        ("3 epsilon series has no y^0 term", eps_series(y)),
        ("4 unstable terms by two paths", dual_paths()),
        ("5 leading normalization", normalization(cfg.truncations.q_max)),
        ("6 graph-sum identities", graph_sums()),
        ("7 localization graph enumeration", enumeration()),
        ("8 contraction corpus", contraction()),
        ("9 partial order", partial_order()),
        ("10 delta rule", delta_rule()),
    ];
    let mut results = serde_json::Map::new();
    let mut checks = Vec::new();
    for (name, r) in steps {
        match r {
            Ok(v) => {
                results.insert(name.to_string(), v);
                checks.push(Check::pass(name));
            }
            Err(e) => checks.push(Check::fail(name, e)),
        }
    }
    (Value::Object(results), checks)
}

fn stilde_forms() -> Step {
    let pairs = [
        ("1", stilde_at_zero(&one(), 3), closed_form_stilde_one(3)),
        ("H", stilde_at_zero(&hyperplane(), 3), closed_form_stilde_h(3)),
    ];
    for (name, got, want) in &pairs {
        for k in 0..=3 {
            if got.coeff(k) != want.coeff(k) {
                return Err(format!("S({}) at y^{}: {} vs {}", name, k, got.coeff(k), want.coeff(k)));
            }
        }
    }
    Ok(json!({ "y_order": 3 }))
}

fn irrational(y: usize) -> Step {
    let r = irr_ratio_check(y).map_err(|e| e.to_string())?;
    let coeffs: Vec<String> = r.pure_powers.iter().map(|(_, c)| glsm_core::algebra::fmt_rat(c)).collect();
    Ok(json!({ "y_order": y, "lambda_power_coefficients": coeffs }))
}

fn eps_series(y: usize) -> Step {
    let e = tree_series_eps(y, y);
    let c0 = e.coeff(0);
    match (0..=c0.order()).find(|&a| !c0.coeff(a).is_zero()) {
        None => Ok(json!({ "y_order": y, "z_order": y })),
        Some(a) => Err(format!("y^0 z^{} coefficient is {}", a, c0.coeff(a))),
    }
}

fn h(rel: Relation) -> CohClass {
    CohClass::h(rel)
}

fn z(rel: Relation) -> CohClass {
    CohClass::scalar(rel, RatFun::z())
}

fn twist_product(rel: Relation, beta: u32) -> CohClass {
    let l0 = CohClass::scalar(rel, RatFun::lambda()).sub(&h(rel));
    (0..beta as i64).fold(CohClass::one(rel), |t, k| t.mul(&l0.sub(&z(rel).scale(&int(k)))))
}

/// Hypergeometric product form of the `q^β` coefficient.
fn hypergeometric(m: &GlsmModel, beta: u32, twisted: bool) -> Result<CohClass, String> {
    let b = beta as i64;
    let d = m.d as i64;
    let (rel, num, den) = match m.phase {
        Phase::Lg => {
            let rel = Relation::Nilpotent(m.n as usize);
            let c = rat(b + 1, d);
            let mut num = z(rel);
            for &w in &m.weights {
                let cw = &c * int(w as i64);
                let mut x = frac_bracket(&cw);
                while x < cw {
                    num = num.mul(&h(rel).scale(&rat(-(w as i64), d)).sub(&z(rel).scale(&x)));
                    x += int(1);
                }
            }
            let den = (1..=b).fold(CohClass::one(rel), |acc, k| acc.mul(&h(rel).add(&z(rel).scale(&int(k))).pow(m.n as u32)));
            (rel, num, den)
        }
        Phase::Geometric => {
            let rel = Relation::Nilpotent(m.weights.len());
            let num = (1..=d * b).fold(z(rel), |acc, k| acc.mul(&h(rel).scale(&int(d)).add(&z(rel).scale(&int(k))).pow(m.n as u32)));
            let mut den = CohClass::one(rel);
            for &w in &m.weights {
                for k in 1..=w as i64 * b {
                    den = den.mul(&h(rel).scale(&int(w as i64)).add(&z(rel).scale(&int(k))));
                }
            }
            (rel, num, den)
        }
    };
    let mut out = num.mul(&den.inv().map_err(|e| e.to_string())?);
    if twisted {
        out = out.mul(&twist_product(rel, beta));
    }
    Ok(out)
}

fn dual_paths() -> Step {
    let cases = [(Phase::Lg, rat(2, 15), 6u32), (Phase::Geometric, rat(2, 7), 3)];
    for (phase, eps, top) in cases {
        let m = GlsmModel::fermat(5, phase, eps).map_err(|e| e.to_string())?;
        for tw in [false, true] {
            for b in 0..=top {
                let direct = localization_coefficient(&m, b, tw).map_err(|e| e.to_string())?.value;
                let closed = hypergeometric(&m, b, tw)?;
                if direct != closed {
                    return Err(format!("{:?} beta {} twisted {}: {} vs {}", phase, b, tw, direct, closed));
                }
            }
        }
    }
    Ok(json!({ "lg_beta_max": 6, "geometric_beta_max": 3 }))
}

fn test_matrix() -> Vec<GlsmModel> {
    let mut out = Vec::new();
    for e in [rat(2, 15), rat(2, 5), rat(2, 3), rat(3, 2)] {
        out.push(GlsmModel::fermat(5, Phase::Lg, e).unwrap());
    }
    for e in [rat(2, 7), rat(2, 5), rat(3, 2)] {
        out.push(GlsmModel::fermat(5, Phase::Geometric, e).unwrap());
    }
    for e in [rat(2, 11), rat(2, 3)] {
        out.push(GlsmModel::new(vec![1, 1, 2, 2], 2, 4, Phase::Lg, e).unwrap());
    }
    out
}

fn normalization(q_max: u32) -> Step {
    let mut n = 0;
    for m in test_matrix() {
        let rel = glsm_core::jfun::cohomology_relation(&m);
        let tag = format!("{:?} weights {:?} epsilon {}", m.phase, m.weights, m.epsilon);
        for tw in [false, true] {
            let pj = positive_j(&m, q_max, tw).map_err(|e| e.to_string())?;
            if pj.terms[0].value != z(rel) {
                return Err(format!("{}: q^0 of [J]_+ is {}", tag, pj.terms[0].value));
            }
            let mu = mu_table(&m, q_max, tw).map_err(|e| e.to_string())?;
            for (b, c) in &mu.entries {
                if (*b == 0 || *b as i64 > m.unstable_bound()) && !c.is_zero() {
                    return Err(format!("{}: mu at q^{} is {}", tag, b, c));
                }
            }
            n += 1;
        }
    }
    Ok(json!({ "cases": n, "q_max": q_max }))
}

#[derive(Clone, Copy)]
struct Slot {
    class: usize,
    psi: u32,
}

const CLASS_NAMES: [&str; 4] = ["1", "H", "0", "inf"];

fn class_of(i: usize) -> CohClass {
    match i {
        0 => one(),
        1 => hyperplane(),
        2 => point_zero(),
        _ => point_inf(),
    }
}

fn correlator(delta: u32, slots: &[(CohClass, u32)]) -> Result<RatFun, String> {
    let ins: Vec<Insertion> = slots.iter().map(|(c, p)| Insertion::new(c.clone(), *p)).collect();
    p1_graph_sum(delta, &ins).map_err(|e| e.to_string())
}

fn describe(delta: u32, slots: &[Slot]) -> String {
    let parts: Vec<String> = slots.iter().map(|s| format!("t{}({})", s.psi, CLASS_NAMES[s.class])).collect();
    format!("<{}>_{}", parts.join(","), delta)
}

fn degree_check(delta: u32, slots: &[(CohClass, u32, i64)], v: &RatFun) -> Result<(), String> {
    let total: i64 = slots.iter().map(|(_, p, d)| *p as i64 + d).sum();
    let dim = 2 * delta as i64 - 2 + slots.len() as i64;
    let excess = total - dim;
    let ok = if excess < 0 {
        v.is_zero()
    } else {
        v.is_zero() || (v.is_polynomial() && v.homogeneous_degree() == Some(excess))
    };
    if ok {
        Ok(())
    } else {
        Err(format!("degree excess {} but value {}", excess, v))
    }
}

fn slot_lists(n: usize) -> Vec<Vec<Slot>> {
    let all: Vec<Slot> = (0..4).flat_map(|c| (0..2).map(move |p| Slot { class: c, psi: p })).collect();
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for l in &out {
            let start = l.last().map_or(0, |s: &Slot| s.class * 2 + s.psi as usize);
            for s in &all[start..] {
                let mut x = l.clone();
                x.push(*s);
                next.push(x);
            }
        }
        out = next;
    }
    out
}

fn graph_sums() -> Step {
    let two = correlator(1, &[(point_zero(), 0), (point_inf(), 0)])?;
    let hh = correlator(1, &[(hyperplane(), 0), (hyperplane(), 0)])?;
    if two != RatFun::one() || hh != RatFun::one() {
        return Err(format!("two-point invariants {} and {}", two, hh));
    }
    let mut checked = 0usize;
    for delta in 0..=2u32 {
        for n in 1..=3usize {
            if delta == 0 && n < 3 {
                continue;
            }
            for slots in slot_lists(n) {
                let base: Vec<(CohClass, u32)> = slots.iter().map(|s| (class_of(s.class), s.psi)).collect();
                let lower = correlator(delta, &base)?;
                let with_deg = |extra: &[(CohClass, u32, i64)]| -> Vec<(CohClass, u32, i64)> {
                    let mut v: Vec<_> = slots.iter().map(|s| (class_of(s.class), s.psi, (s.class > 0) as i64)).collect();
                    v.extend_from_slice(extra);
                    v
                };
                degree_check(delta, &with_deg(&[]), &lower).map_err(|e| format!("{}: {}", describe(delta, &slots), e))?;
                let lowered = |j: usize, by: Option<CohClass>| -> Result<RatFun, String> {
                    let mut v = base.clone();
                    v[j].1 -= 1;
                    if let Some(c) = by {
                        v[j].0 = v[j].0.mul(&c);
                    }
                    correlator(delta, &v)
                };
                // string
                let mut ins = base.clone();
                ins.push((one(), 0));
                let lhs = correlator(delta, &ins)?;
                let mut rhs = RatFun::zero();
                for j in 0..n {
                    if base[j].1 > 0 {
                        rhs = rhs.add(&lowered(j, None)?);
                    }
                }
                if lhs != rhs {
                    return Err(format!("string equation fails for {}: {} vs {}", describe(delta, &slots), lhs, rhs));
                }
                // divisor
                let mut ins = base.clone();
                ins.push((hyperplane(), 0));
                let lhs = correlator(delta, &ins)?;
                degree_check(delta, &with_deg(&[(hyperplane(), 0, 1)]), &lhs)
                    .map_err(|e| format!("{} with H: {}", describe(delta, &slots), e))?;
                let mut rhs = lower.scale(&int(delta as i64));
                for j in 0..n {
                    if base[j].1 > 0 {
                        rhs = rhs.add(&lowered(j, Some(hyperplane()))?);
                    }
                }
                if lhs != rhs {
                    return Err(format!("divisor equation fails for {}: {} vs {}", describe(delta, &slots), lhs, rhs));
                }
                // dilaton
                let mut ins = base.clone();
                ins.push((one(), 1));
                let lhs = correlator(delta, &ins)?;
                let rhs = lower.scale(&int(n as i64 - 2));
                if lhs != rhs {
                    return Err(format!("dilaton equation fails for {}: {} vs {}", describe(delta, &slots), lhs, rhs));
                }
                checked += 1;
            }
        }
    }
    Ok(json!({ "base_correlators": checked }))
}

fn enumeration() -> Step {
    let m = GlsmModel::fermat(5, Phase::Lg, rat(2, 5)).unwrap();
    let eps = &m.epsilon;
    let mut counts = serde_json::Map::new();
    for g in 0..=1 {
        for n in 0..=2 {
            for beta in 0..=3 {
                for delta in 0..=2 {
                    let gs = glsm_core::graphs::enumerate_loc_graphs(&m, g, n, beta, delta).map_err(|e| e.to_string())?;
                    for lg in &gs {
                        if let Some(v) = lg.validate(eps).first() {
                            return Err(format!("(g,n,beta,delta) = ({},{},{},{}): {}", g, n, beta, delta, v));
                        }
                        for (i, e) in lg.graph.edges.iter().enumerate() {
                            for end in [e.a, e.b] {
                                if lg.kind(end, eps) == VertexKind::BasepointEnd && lg.delta[i] <= lg.graph.vertices[end].beta {
                                    return Err(format!("basepoint edge with delta {} <= beta", lg.delta[i]));
                                }
                            }
                        }
                    }
                    counts.insert(format!("{},{},{},{}", g, n, beta, delta), json!(gs.len()));
                }
            }
        }
    }
    Ok(Value::Object(counts))
}

fn lg(vertices: Vec<Vertex>, edges: Vec<Edge>) -> DualGraph {
    DualGraph::new(5, Phase::Lg, vertices, edges)
}

/// Random valid ∞-stable tree with multiplicities solved leaf to root.
fn random_tree(rng: &mut ChaCha8Rng) -> DualGraph {
    loop {
        let nv = rng.gen_range(1..=5);
        let mut vertices: Vec<Vertex> =
            (0..nv).map(|_| Vertex::new(rng.gen_range(0..=1) * rng.gen_range(0..=2), rng.gen_range(0..=2))).collect();
        let parent: Vec<usize> = (1..nv).map(|v| rng.gen_range(0..v)).collect();
        let mut label = 1;
        for v in vertices.iter_mut() {
            if rng.gen_bool(0.3) {
                v.legs.push(Leg { label, mult: rng.gen_range(0..5) });
                label += 1;
            }
        }
        vertices[0].legs.push(Leg { label, mult: 0 });
        let edges = (1..nv).map(|v| Edge { a: parent[v - 1], b: v, m_a: 0, m_b: 0 }).collect();
        let mut g = lg(vertices, edges);
        for v in (1..nv).rev() {
            let here = format!("vertex {}", v);
            for k in 0..5 {
                g.edges[v - 1].m_b = k;
                g.edges[v - 1].m_a = (5 - k) % 5;
                if g.validate().iter().all(|x| x.location != here) {
                    break;
                }
            }
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

fn contraction() -> Step {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let choices = [rat(1, 4), rat(2, 3), rat(3, 7), rat(2, 5)];
    let mut removed = 0;
    for i in 0..50 {
        let g = random_tree(&mut rng);
        let eps = &choices[rng.gen_range(0..choices.len())];
        let rec = contract_c(&g, eps).map_err(|e| format!("graph {}: {}", i, e))?;
        if rec.graph.total_degree() != g.total_degree() {
            return Err(format!("graph {}: degree {} became {}", i, g.total_degree(), rec.graph.total_degree()));
        }
        if !rec.graph.is_epsilon_stable(eps) || !rec.graph.validate().is_empty() {
            return Err(format!("graph {}: output is not a valid epsilon-stable graph", i));
        }
        let again = convert_markings_b(&rec.graph, &[], eps).map_err(|e| format!("graph {}: {}", i, e))?;
        if again.graph != rec.graph {
            return Err(format!("graph {}: contraction is not idempotent", i));
        }
        removed += g.vertices.len() - rec.graph.vertices.len();
    }
    Ok(json!({ "graphs": 50, "vertices_removed": removed }))
}

fn order_example() -> (DualGraph, Vec<DualGraph>) {
    let e = |a, b, m_a, m_b| Edge { a, b, m_a, m_b };
    let a = || Vertex::new(1, 0).with_leg(1, 4);
    let top = lg(vec![a(), Vertex::new(2, 1)], vec![e(0, 1, 3, 2)]).with_bullet(1);
    let preds = vec![
        lg(vec![a(), Vertex::new(1, 1), Vertex::new(1, 0)], vec![e(0, 1, 3, 2), e(1, 2, 4, 1)]).with_bullet(1),
        lg(vec![a(), Vertex::new(1, 0), Vertex::new(1, 1)], vec![e(0, 1, 3, 2), e(1, 2, 0, 0)]).with_bullet(2),
        lg(vec![a(), Vertex::new(1, 1)], vec![e(0, 1, 3, 2), e(1, 1, 0, 0)]).with_bullet(1),
        lg(vec![a(), Vertex::new(0, 1), Vertex::new(1, 0)], vec![e(0, 1, 3, 2), e(1, 1, 0, 0), e(1, 2, 4, 1)])
            .with_bullet(1),
    ];
    (top, preds)
}

fn random_triple(rng: &mut ChaCha8Rng) -> DualGraph {
    loop {
        let mut g = random_tree(rng);
        if g.vertices.len() > 3 {
            continue;
        }
        let b = rng.gen_range(0..g.vertices.len());
        g.vertices[b].beta = g.vertices[b].beta.max(1);
        g.vertices[b].genus = g.vertices[b].genus.min(1);
        let root = g.vertices[0].legs.len() - 1;
        for k in 0..5 {
            if g.validate().is_empty() {
                break;
            }
            g.vertices[0].legs[root].mult = k;
        }
        g.v_bullet = Some(b);
        if g.validate().is_empty() && triple_stable(&g) && g.total_genus() <= 2 {
            return g;
        }
    }
}

fn chain_bound(g: &DualGraph) -> usize {
    g.edges.len() + g.vertices.iter().map(|v| v.genus as usize).sum::<usize>() + 2
}

/// `Σg + 2B + 2(Σg + h¹) − 2 + n − |V|`: loops lower Σg, splits add vertices.
fn degree_aware_bound(g: &DualGraph) -> usize {
    let genus: i64 = g.vertices.iter().map(|v| v.genus as i64).sum();
    let beta: i64 = g.vertices.iter().map(|v| v.beta as i64).sum();
    let legs: i64 = g.vertices.iter().map(|v| (v.legs.len() + v.extra_legs as usize) as i64).sum();
    let arith = genus + g.h1();
    (genus + 2 * beta + 2 * arith - 2 + legs - g.vertices.len() as i64).max(0) as usize
}

fn partial_order() -> Step {
    let (top, preds) = order_example();
    for (i, p) in preds.iter().enumerate() {
        if !graph_leq(p, &top) || graph_leq(&top, p) || !graph_leq(p, p) {
            return Err(format!("relation {} of the example fails", i + 1));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut samples = vec![top];
    samples.extend((0..19).map(|_| random_triple(&mut rng)));
    let mut longest = Vec::new();
    let mut over = Vec::new();
    for (i, g) in samples.iter().enumerate() {
        let l = longest_descending_chain(g);
        if l > degree_aware_bound(g) {
            return Err(format!("triple {}: chain of length {} exceeds even {}", i, l, degree_aware_bound(g)));
        }
        if l > chain_bound(g) {
            over.push(format!("triple {} has a chain of length {} > {}: {}", i, l, chain_bound(g), serde_json::to_string(g).expect("graph serializes")));
        }
        longest.push(l);
    }
    match over.first() {
        None => Ok(json!({ "longest_chains": longest })),
        Some(e) => Err(format!("{} of 20 triples exceed |E| + sum g + 2; first: {}", over.len(), e)),
    }
}

fn delta_rule() -> Step {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut tested = 0;
    while tested < 100 {
        let eps = BigRat::new(rng.gen_range(1..60i64).into(), rng.gen_range(1..40i64).into());
        if on_wall(&eps) {
            continue;
        }
        let delta = choose_delta(&eps).map_err(|e| e.to_string())?;
        if !delta.is_positive() {
            return Err(format!("epsilon {}: delta {} is not positive", eps, delta));
        }
        let top = (BigRat::from_integer(2.into()) / &eps).ceil().to_integer();
        let mut k = BigRat::from_integer((-1).into());
        while k.to_integer() <= top {
            let a = &k * &eps - BigRat::one();
            let b = &a + &delta;
            if a.signum() != b.signum() {
                return Err(format!("epsilon {}: k = {} changes sign", eps, k));
            }
            k += BigRat::one();
        }
        tested += 1;
    }
    Ok(json!({ "epsilons": tested }))
}
