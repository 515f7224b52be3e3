use glsm_core::algebra::{int, rat, series_root_pow, CohClass, RatFun, SeriesVar, TruncSeries};
use glsm_core::p1series::*;
use proptest::prelude::*;

fn lam_pow(c: glsm_core::BigRat, e: i64) -> RatFun {
    RatFun::lambda_pow(c, e)
}

#[test]
fn psi_integrals() {
    assert_eq!(psi_integral_genus0(&[0, 0, 0]), int(1));
    assert_eq!(psi_integral_genus0(&[1, 0, 0, 0]), int(1));
    assert_eq!(psi_integral_genus0(&[1, 1, 0, 0, 0]), int(2));
    assert_eq!(psi_integral_genus0(&[2, 0, 0, 0, 0]), int(1));
    assert_eq!(psi_integral_genus0(&[1, 0, 0]), int(0));
    assert_eq!(psi_integral_genus0(&[0, 0]), int(0));
}

#[test]
fn class_restrictions() {
    let lam = RatFun::lambda();
    assert_eq!(point_zero().restrictions(), (lam.clone(), RatFun::zero()));
    assert_eq!(point_inf().restrictions(), (RatFun::zero(), lam.neg()));
    assert_eq!(phi_zero().mul(&phi_inf()), CohClass::zero(glsm_core::Relation::ProjLine));
}

#[test]
fn stilde_one_matches_closed_form() {
    let s = stilde_at_zero(&one(), 3);
    assert_eq!(s, closed_form_stilde_one(3));
    assert_eq!(*s.coeff(0), RatFun::one());
    assert_eq!(*s.coeff(1), lam_pow(int(-1), -2));
    assert_eq!(*s.coeff(2), lam_pow(rat(5, 2), -4));
}

#[test]
fn stilde_h_matches_closed_form() {
    let s = stilde_at_zero(&hyperplane(), 3);
    assert_eq!(s, closed_form_stilde_h(3));
    assert_eq!(*s.coeff(0), RatFun::lambda());
    // the φ^{-1/4} and √φ corrections cancel at first order
    assert!(s.coeff(1).is_zero());
}

#[test]
fn stilde_h_is_stilde_one_times_half_sum() {
    let y = 4;
    let one_series = TruncSeries::one(SeriesVar::Y, y, &RatFun::zero());
    let half_lambda = RatFun::lambda().scale(&rat(1, 2));
    let factor = one_series.add(&sqrt_phi(y)).scale_by(&half_lambda);
    assert_eq!(stilde_at_zero(&hyperplane(), y), stilde_at_zero(&one(), y).mul(&factor));
}

#[test]
fn tree_series_leading_terms() {
    let s = tree_series_s(&one(), 2, 2);
    assert_eq!(*s.coeff(0).coeff(0), RatFun::one());
    assert!(s.coeff(0).coeff(1).is_zero());
    let h = tree_series_s(&hyperplane(), 2, 2);
    assert_eq!(*h.coeff(0).coeff(0), RatFun::lambda());
    for order in 1..=4 {
        let e = tree_series_eps(order, order);
        assert!(e.coeff(0).is_zero());
        assert!(!e.coeff(1).is_zero());
    }
}

#[test]
fn irrational_ratio() {
    let rep = irr_ratio_check(6).unwrap();
    assert!(rep.ratio.coeff(0).is_zero());
    assert_eq!(*rep.ratio.coeff(1), lam_pow(int(-1), -2));
    assert_eq!(*rep.ratio.coeff(2), lam_pow(int(2), -4));
    assert_eq!(rep.pure_powers.len(), 6);
    for (k, e) in rep.expansions.iter().enumerate().skip(1) {
        assert_eq!(e.terms().len(), 1);
        assert_eq!(e.min_exponent, -2 * k as i64);
    }
}

#[test]
fn ratio_closed_form_by_division() {
    let y = 5;
    let one_series = TruncSeries::one(SeriesVar::Y, y, &RatFun::zero());
    let r = series_root_pow(&phi(y), &rat(1, 2)).unwrap();
    let want = one_series.sub(&r).div(&one_series.add(&r)).unwrap();
    assert_eq!(irr_ratio_closed_form(y), want);
}

#[test]
fn two_point_degree_one() {
    let r = p1_graph_sum(1, &[Insertion::new(point_zero(), 0), Insertion::new(point_inf(), 0)]).unwrap();
    assert_eq!(r, RatFun::one());
    let r = p1_graph_sum(1, &[Insertion::new(hyperplane(), 0), Insertion::new(hyperplane(), 0)]).unwrap();
    assert_eq!(r, RatFun::one());
    for delta in 1..=3 {
        let r = p1_graph_sum(delta, &[Insertion::new(one(), 0), Insertion::new(one(), 0)]).unwrap();
        assert!(r.is_zero());
    }
}

#[test]
fn graph_sum_bounds() {
    let six: Vec<Insertion> = (0..6).map(|_| Insertion::new(one(), 0)).collect();
    assert!(p1_graph_sum(1, &six).is_err());
    assert!(p1_graph_sum(4, &six[..2]).is_err());
}

fn class_of(i: usize) -> CohClass {
    [one(), hyperplane(), point_zero(), point_inf()][i].clone()
}

fn insertion_list() -> impl Strategy<Value = Vec<(usize, u32)>> {
    prop::collection::vec((0usize..4, 0u32..3), 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn string_equation(ins in insertion_list(), delta in 1u32..=2) {
        let base: Vec<Insertion> = ins.iter().map(|&(c, a)| Insertion::new(class_of(c), a)).collect();
        let mut up = base.clone();
        up.push(Insertion::new(one(), 0));
        let lhs = p1_graph_sum(delta, &up).unwrap();
        let mut rhs = RatFun::zero();
        for j in 0..base.len() {
            if base[j].psi > 0 {
                let mut low = base.clone();
                low[j].psi -= 1;
                rhs = rhs.add(&p1_graph_sum(delta, &low).unwrap());
            }
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dimension_constraint(ins in prop::collection::vec((0usize..4, 0u32..3), 2..=4), delta in 1u32..=2) {
        let base: Vec<Insertion> = ins.iter().map(|&(c, a)| Insertion::new(class_of(c), a)).collect();
        let v = p1_graph_sum(delta, &base).unwrap();
        let deg: i64 = ins.iter().map(|&(c, a)| a as i64 + (c > 0) as i64).sum();
        let excess = deg - (2 * delta as i64 - 2 + ins.len() as i64);
        if excess < 0 {
            prop_assert!(v.is_zero());
        } else if excess == 0 {
            prop_assert!(v.constant_value().is_some());
        } else {
            prop_assert!(v.is_zero() || (v.is_polynomial() && v.homogeneous_degree() == Some(excess)));
        }
    }
}
