use glsm_core::algebra::{int, rat, BigRat};
use glsm_core::model::*;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn quintic(phase: Phase) -> GlsmModel {
    GlsmModel::fermat(5, phase, rat(2, 5)).unwrap()
}

fn fifths(ks: &[i64]) -> Vec<BigRat> {
    ks.iter().map(|&k| rat(k, 5)).collect()
}

#[test]
fn quintic_sectors() {
    let secs = list_sectors(&quintic(Phase::Lg));
    assert_eq!(secs.len(), 5);
    let narrow: Vec<BigRat> = secs.iter().filter(|s| s.narrow).map(|s| s.m.clone()).collect();
    assert_eq!(narrow, fifths(&[1, 2, 3, 4]));
    assert_eq!(secs[0].fixed_coords, vec![1, 2, 3, 4, 5]);
    assert_eq!(secs[0].d_m, 1);
    assert!(secs[1..].iter().all(|s| s.d_m == 5));
}

#[test]
fn weighted_sectors() {
    let m = GlsmModel::new(vec![1, 1, 2, 2], 1, 4, Phase::Lg, rat(2, 5)).unwrap();
    let secs = list_sectors(&m);
    let half = secs.iter().find(|s| s.m == rat(1, 2)).unwrap();
    assert!(!half.narrow);
    assert_eq!(half.fixed_coords, vec![3, 4]);
    assert_eq!(half.d_m, 2);
    let narrow: Vec<BigRat> = secs.iter().filter(|s| s.narrow).map(|s| s.m.clone()).collect();
    assert_eq!(narrow, vec![rat(1, 4), rat(3, 4)]);
    assert_eq!(d_m(6, &BigRat::zero()), 1);
}

#[test]
fn compatibility_examples() {
    let lg = quintic(Phase::Lg);
    assert!(check_compatibility(&lg, 0, &int(2), &fifths(&[1, 1, 2])));
    assert!(!check_compatibility(&lg, 0, &int(2), &fifths(&[1, 1, 1])));
    assert_eq!(solve_last(&lg, 1, &int(0), &[]), rat(1, 5));
    let geo = quintic(Phase::Geometric);
    assert!(check_compatibility(&geo, 0, &rat(7, 5), &fifths(&[1, 1])));
    assert!(!check_compatibility(&geo, 0, &rat(7, 5), &fifths(&[1])));
}

#[test]
fn graph_multiplicity_examples() {
    assert_eq!(graph_multiplicities(5, 3), (rat(1, 5), rat(4, 5)));
    assert_eq!(graph_multiplicities(5, 4), (BigRat::zero(), BigRat::zero()));
    assert_eq!(graph_multiplicities(5, 9), (BigRat::zero(), BigRat::zero()));
    for b in 0..20 {
        let (m1, bp) = graph_multiplicities(5, b);
        assert!((m1 + bp).is_integer());
    }
}

#[test]
fn euler_characteristics() {
    let chi = |g, deg: BigRat, ages: Vec<BigRat>| euler_char(&OrbiBundleData { genus: g, coarse_degree: deg, ages });
    assert_eq!(chi(1, BigRat::zero(), vec![]), Ok(0));
    assert_eq!(chi(0, int(-1), vec![]), Ok(0));
    assert_eq!(chi(0, rat(7, 5), fifths(&[1, 1])), Ok(2));
    assert!(matches!(chi(0, rat(7, 5), fifths(&[1])), Err(ModelError::NonIntegralChi { .. })));
}

#[test]
fn virtual_dimension_differences() {
    let geo = quintic(Phase::Geometric);
    let lg = quintic(Phase::Lg);
    for n in 1..4usize {
        let zeros = vec![BigRat::zero(); n];
        let base = virtual_dimension(&geo, 0, &zeros, &int(0)).unwrap();
        for beta in 1..6 {
            // Calabi-Yau target: no dependence on the degree
            assert_eq!(virtual_dimension(&geo, 0, &zeros, &int(beta)).unwrap(), base);
        }
        for beta in 0..5 {
            let b = int(beta);
            let mut mults = vec![lg.unit_mult(); n - 1];
            mults.insert(0, solve_last(&lg, 0, &b, &mults));
            let v = virtual_dimension(&lg, 0, &mults, &b).unwrap();
            let shifted = virtual_dimension(&lg, 0, &mults, &int(beta + 5)).unwrap();
            assert_eq!(v, shifted, "n {} beta {}", n, beta);
        }
    }
}

#[test]
fn model_validation() {
    assert!(matches!(GlsmModel::new(vec![2, 3], 1, 5, Phase::Lg, rat(2, 5)), Err(ModelError::Invalid(_))));
    assert!(matches!(GlsmModel::new(vec![], 1, 5, Phase::Lg, rat(2, 5)), Err(ModelError::Invalid(_))));
    assert!(matches!(GlsmModel::fermat(5, Phase::Lg, rat(1, 2)), Err(ModelError::OnWall(_))));
    assert!(matches!(GlsmModel::fermat(5, Phase::Lg, int(-1)), Err(ModelError::Invalid(_))));
    assert_eq!(quintic(Phase::Lg).unstable_bound(), 2);
    assert_eq!(quintic(Phase::Lg).unit_mult(), rat(1, 5));
    assert_eq!(quintic(Phase::Geometric).unit_mult(), BigRat::zero());
}

#[test]
fn spec_round_trip() {
    let m = GlsmModel::new(vec![1, 1, 2, 2], 2, 4, Phase::Geometric, rat(3, 7)).unwrap();
    let s = serde_json::to_string(&m.to_spec()).unwrap();
    assert!(s.contains("\"N\":2") && s.contains("\"3/7\""));
    let back: ModelSpec = serde_json::from_str(&s).unwrap();
    assert_eq!(GlsmModel::from_spec(&back).unwrap(), m);
    let lg: ModelSpec =
        serde_json::from_str(r#"{"weights":[1],"N":1,"d":1,"phase":"LG","epsilon":"3"}"#).unwrap();
    assert_eq!(lg.phase, Phase::Lg);
}

/// Every `k` with `|kε − 1| ≤ 1`, checked directly.
fn sign_rule_holds(eps: &BigRat, delta: &BigRat) -> bool {
    let mut k = 0i64;
    loop {
        let a = eps * int(k) - BigRat::one();
        if a > BigRat::one() {
            return true;
        }
        if a.signum() != (&a + delta).signum() {
            return false;
        }
        k += 1;
    }
}

#[test]
fn delta_rule_on_a_grid() {
    let mut n = 0;
    'outer: for den in 1..40i64 {
        for num in 1..60i64 {
            let eps = rat(num, den);
            if on_wall(&eps) {
                continue;
            }
            let delta = choose_delta(&eps).unwrap();
            assert!(delta.is_positive());
            assert!(sign_rule_holds(&eps, &delta), "epsilon {}", eps);
            n += 1;
            if n == 100 {
                break 'outer;
            }
        }
    }
    assert_eq!(n, 100);
}

proptest! {
    #[test]
    fn appending_unit_leg_keeps_compatibility(
        g in 0u32..3, beta in 0i64..12, ks in prop::collection::vec(0i64..5, 0..5), lg in any::<bool>()
    ) {
        let m = quintic(if lg { Phase::Lg } else { Phase::Geometric });
        let b = int(beta);
        let mut mults = fifths(&ks);
        mults.push(solve_last(&m, g, &b, &mults));
        prop_assert!(check_compatibility(&m, g, &b, &mults));
        mults.push(m.unit_mult());
        prop_assert!(check_compatibility(&m, g, &b, &mults));
        let last = mults.pop().unwrap();
        let other = frac_bracket(&(last + rat(1, 5)));
        mults.push(other);
        prop_assert!(!check_compatibility(&m, g, &b, &mults));
    }

    #[test]
    fn p_bundle_degree_is_beta(g in 0u32..3, beta in 0i64..12, ks in prop::collection::vec(0i64..5, 0..4)) {
        let m = quintic(Phase::Lg);
        let b = int(beta);
        let mut mults = fifths(&ks);
        mults.push(solve_last(&m, g, &b, &mults));
        let p = p_bundle_data(&m, g, &mults, &b);
        prop_assert_eq!(&p.coarse_degree, &b);
        prop_assert!(p.pushforward_degree().is_ok());
        for &w in &m.weights {
            prop_assert!(twisted_power_data(&m, w, g, &mults, &b).pushforward_degree().is_ok());
        }
    }

    #[test]
    fn sector_orders(d in 1u64..13, k in 0u64..13) {
        let k = k % d;
        let m = rat(k as i64, d as i64);
        prop_assert_eq!(d_m(d, &m), d_m(d, &frac_bracket(&-m.clone())));
        prop_assert_eq!(d % d_m(d, &m), 0);
        let g = num_integer::Integer::gcd(&k, &d);
        prop_assert_eq!(d_m(d, &m), d / g);
    }

    #[test]
    fn delta_rule_random(num in 1i64..200, den in 1i64..200) {
        let eps = rat(num, den);
        prop_assume!(!on_wall(&eps));
        let delta = choose_delta(&eps).unwrap();
        prop_assert!(sign_rule_holds(&eps, &delta));
    }
}
