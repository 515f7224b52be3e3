use glsm_core::algebra::{int, rat, BigRat, CohClass, RatFun, Relation};
use glsm_core::jfun::*;
use glsm_core::model::{frac_bracket, GlsmModel, Phase};
use glsm_core::model::d_m;
use proptest::prelude::*;

fn h(rel: Relation) -> CohClass {
    CohClass::h(rel)
}
fn sc(rel: Relation, f: RatFun) -> CohClass {
    CohClass::scalar(rel, f)
}
fn z(rel: Relation) -> CohClass {
    sc(rel, RatFun::z())
}
fn lam(rel: Relation) -> CohClass {
    sc(rel, RatFun::lambda())
}

/// Hypergeometric product form of the LG-phase coefficient.
fn lg_closed_form(w: &[u64], n: u64, d: u64, beta: u32, twisted: bool) -> CohClass {
    let rel = Relation::Nilpotent(n as usize);
    let c = rat(beta as i64 + 1, d as i64);
    let mut num = z(rel);
    for &wi in w {
        let cw = &c * int(wi as i64);
        let f = frac_bracket(&cw);
        let mut b = f.clone();
        while b < cw {
            let factor = h(rel).scale(&rat(-(wi as i64), d as i64)).sub(&z(rel).scale(&b));
            num = num.mul(&factor);
            b += int(1);
        }
    }
    let mut den = CohClass::one(rel);
    for k in 1..=beta as i64 {
        den = den.mul(&h(rel).add(&z(rel).scale(&int(k))).pow(n as u32));
    }
    let mut out = num.mul(&den.inv().unwrap());
    if twisted {
        out = out.mul(&twist_oracle(rel, beta));
    }
    out
}

fn twist_oracle(rel: Relation, beta: u32) -> CohClass {
    if beta == 0 {
        return CohClass::one(rel);
    }
    let l0 = lam(rel).sub(&h(rel));
    let mut t = l0.clone();
    for k in 1..beta as i64 {
        t = t.mul(&l0.sub(&z(rel).scale(&int(k))));
    }
    t
}

fn geometric_closed_form(w: &[u64], n: u64, d: u64, beta: u32, twisted: bool) -> CohClass {
    let rel = Relation::Nilpotent(w.len());
    let b = beta as i64;
    let mut num = z(rel);
    for k in 1..=d as i64 * b {
        num = num.mul(&h(rel).scale(&int(d as i64)).add(&z(rel).scale(&int(k))).pow(n as u32));
    }
    let mut den = CohClass::one(rel);
    for &wi in w {
        for k in 1..=wi as i64 * b {
            den = den.mul(&h(rel).scale(&int(wi as i64)).add(&z(rel).scale(&int(k))));
        }
    }
    let mut out = num.mul(&den.inv().unwrap());
    if twisted {
        out = out.mul(&twist_oracle(rel, beta));
    }
    out
}

fn quintic(phase: Phase, eps: BigRat) -> GlsmModel {
    GlsmModel::fermat(5, phase, eps).unwrap()
}

#[test]
fn lg_quintic_dual_path() {
    let m = quintic(Phase::Lg, rat(2, 15));
    for tw in [false, true] {
        for b in 0..=6 {
            let direct = unstable_j_coefficient(&m, b, tw).unwrap();
            assert_eq!(direct.value, lg_closed_form(&m.weights, 1, 5, b, tw), "beta {b} twisted {tw}");
        }
    }
}

#[test]
fn geometric_quintic_dual_path() {
    let m = quintic(Phase::Geometric, rat(2, 7));
    for tw in [false, true] {
        for b in 0..=3 {
            let direct = unstable_j_coefficient(&m, b, tw).unwrap();
            assert_eq!(direct.value, geometric_closed_form(&m.weights, 1, 5, b, tw), "beta {b} twisted {tw}");
        }
    }
}

#[test]
fn weighted_lg_dual_path() {
    let m = GlsmModel::new(vec![1, 1, 2, 2], 2, 4, Phase::Lg, rat(2, 11)).unwrap();
    for b in 0..=5 {
        let direct = unstable_j_coefficient(&m, b, true).unwrap();
        assert_eq!(direct.value, lg_closed_form(&m.weights, 2, 4, b, true), "beta {b}");
    }
}

#[test]
fn grading() {
    let models = [
        quintic(Phase::Lg, rat(2, 15)),
        quintic(Phase::Geometric, rat(2, 7)),
        GlsmModel::new(vec![1, 1, 2, 2], 2, 4, Phase::Lg, rat(2, 11)).unwrap(),
    ];
    for m in &models {
        for tw in [false, true] {
            for b in 0..=3 {
                let v = localization_coefficient(m, b, tw).unwrap().value;
                let deg = predicted_degree(m, b, tw).unwrap();
                assert!(v.is_homogeneous_of(deg), "{:?} beta {b} tw {tw}: {v} not of degree {deg}", m.phase);
            }
        }
    }
}

#[test]
fn edge_reduces_to_p1_factor() {
    let m = quintic(Phase::Lg, rat(2, 3));
    let e = edge_contribution(&m, 1, 0, false, None).unwrap();
    let dm = 5;
    let expected = RatFun::lambda().mul(&RatFun::lambda().neg()).inv().unwrap();
    assert_eq!(e.scale(&int(dm)).coeff(0), expected);
}

#[test]
fn bundle_weight_examples() {
    let rel = Relation::Nilpotent(1);
    let t = lam(rel);
    let f = lam(rel).sub(&h(rel));
    let zero = int(0);
    let w = bundle_weights(&int(3), &zero, &zero, &t, &f).unwrap();
    assert_eq!((w.h0_weights.len(), w.h1_weights.len()), (4, 0));
    assert_eq!(w.h0_weights[3], f.sub(&t.scale(&int(3))));
    let w = bundle_weights(&int(-1), &zero, &zero, &t, &f).unwrap();
    assert!(w.h0_weights.is_empty() && w.h1_weights.is_empty());
    let w = bundle_weights(&int(-2), &zero, &zero, &t, &f).unwrap();
    assert_eq!(w.h1_weights, vec![f.add(&t)]);
    let w = bundle_weights(&rat(2, 5), &rat(2, 5), &zero, &t, &f).unwrap();
    assert_eq!(w.h0_weights, vec![f.sub(&t.scale(&rat(2, 5)))]);
    assert!(bundle_weights(&rat(1, 5), &zero, &zero, &t, &f).is_err());
}

#[test]
fn degree_zero_coefficient_is_z() {
    for m in [quintic(Phase::Lg, rat(2, 5)), quintic(Phase::Geometric, rat(2, 7))] {
        for tw in [false, true] {
            let j = positive_j(&m, 2, tw).unwrap();
            let rel = cohomology_relation(&m);
            assert_eq!(j.coeff(0).unwrap().value, z(rel));
            let mu = mu_table(&m, 2, tw).unwrap();
            assert!(mu.entries[&0].is_zero());
        }
    }
}

#[test]
fn wall_crossing_comparison() {
    let lg = quintic(Phase::Lg, rat(2, 3));
    let same = jwc_check(&lg, &rat(2, 3), &rat(2, 3), 3, false).unwrap();
    assert!(same.gained.is_empty() && same.lost.is_empty());
    let r = jwc_check(&lg, &rat(2, 3), &rat(2, 5), 3, false).unwrap();
    assert_eq!(r.gained, vec![2]);
    assert!(r.lost.is_empty());
    let back = jwc_check(&lg, &rat(2, 5), &rat(2, 3), 3, false).unwrap();
    assert_eq!(back.lost, vec![2]);
    let geo = quintic(Phase::Geometric, rat(2, 3));
    let r = jwc_check(&geo, &rat(2, 3), &rat(2, 5), 3, true).unwrap();
    assert_eq!(r.gained, vec![2]);
}

#[test]
fn node_contributions() {
    let m = quintic(Phase::Lg, rat(2, 5));
    let rel = cohomology_relation(&m);
    let l0 = lam(rel).sub(&h(rel));
    let n = node_contribution(&m, &rat(1, 5), Level::Zero, 2);
    assert_eq!(n.normal, l0);
    assert_eq!(n.d_m, 5);
    assert_eq!(n.edge_tangent, l0.scale(&rat(1, 2)));
    let psi = n.expand_in_psi(2).unwrap();
    let inv = l0.scale(&rat(1, 2)).inv().unwrap();
    assert_eq!(psi[0], inv.scale(&int(5)));
    assert_eq!(psi[2], inv.pow(3).scale(&int(5)));
    let n = node_contribution(&m, &int(0), Level::Infinity, 1);
    assert_eq!(n.normal, l0.neg());
    assert_eq!(n.d_m, 1);
    let s = n.edge_to_edge(&l0.scale(&rat(1, 3))).unwrap();
    assert_eq!(s, l0.scale(&rat(-2, 3)).inv().unwrap());
}

#[test]
fn edge_contributions_degree_two() {
    let m = quintic(Phase::Lg, rat(2, 15));
    let rel = cohomology_relation(&m);
    let l0 = lam(rel).sub(&h(rel));
    for beta in 0..=1u32 {
        let e = edge_contribution(&m, 2, beta, false, None).unwrap();
        let dm = d_m(5, &glsm_core::jfun::marked_sector(&m, beta)) as i64;
        let j = lg_closed_form(&m.weights, 1, 5, beta, false);
        let jz = substitute_z_in_class(&j, &l0.scale(&rat(1, 2))).unwrap();
        // ∏_{b=1,2} (bλ₀/2)(−bλ₀/2) = λ₀⁴/4
        let den = l0.pow(5).scale(&rat(dm, 8));
        assert_eq!(e, jz.mul(&den.inv().unwrap()), "beta {beta}");
    }
    let e0 = edge_contribution(&m, 2, 0, false, None).unwrap();
    let dm0 = d_m(5, &glsm_core::jfun::marked_sector(&m, 0)) as i64;
    assert_eq!(e0, l0.pow(4).scale(&rat(dm0, 4)).inv().unwrap());
    let with_vertex = edge_contribution(&m, 2, 0, false, Some(Level::Infinity)).unwrap();
    assert_eq!(with_vertex, e0.mul(&l0.scale(&rat(-1, 2))));
    assert!(edge_contribution(&m, 1, 1, false, None).is_err());
    assert!(edge_contribution(&m, 0, 0, false, None).is_err());
}

#[test]
fn twist_top_lambda_recovers_untwisted() {
    for m in [quintic(Phase::Lg, rat(2, 15)), quintic(Phase::Geometric, rat(2, 7))] {
        for b in 0..=3 {
            let tw = localization_coefficient(&m, b, true).unwrap().value;
            let un = localization_coefficient(&m, b, false).unwrap().value;
            assert_eq!(top_lambda_part(&tw, b), un, "{:?} beta {b}", m.phase);
            assert_eq!(twist_factor(&m, b).unwrap(), twist_oracle(cohomology_relation(&m), b));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn weight_counts_match_euler_characteristic(deg in -8i64..8, a0 in 0i64..5, ainf in 0i64..5) {
        let rel = Relation::Nilpotent(1);
        let (a0, ainf) = (rat(a0, 5), rat(ainf, 5));
        let degree = int(deg) + &a0 + &ainf;
        let w = bundle_weights(&degree, &a0, &ainf, &lam(rel), &h(rel)).unwrap();
        prop_assert_eq!(w.euler_characteristic(), deg + 1);
        prop_assert!(w.h0_weights.is_empty() || w.h1_weights.is_empty());
    }
}
