use glsm_core::algebra::*;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn lam() -> RatFun {
    RatFun::lambda()
}

fn lp(c: BigRat, e: i64) -> RatFun {
    RatFun::lambda_pow(c, e)
}

fn phi(order: usize) -> TruncSeries<RatFun> {
    let mut s = TruncSeries::one(SeriesVar::Y, order, &RatFun::zero());
    s.set_coeff(1, lp(int(4), -2));
    s
}

fn y_series(order: usize, coeffs: Vec<RatFun>) -> TruncSeries<RatFun> {
    TruncSeries::from_coeffs(SeriesVar::Y, order, &RatFun::zero(), coeffs)
}

#[test]
fn projective_line_relation() {
    let rel = Relation::ProjLine;
    let h = CohClass::h(rel);
    let l = CohClass::scalar(rel, lam());
    let a = l.sub(&h);
    let got = a.mul(&a.neg());
    let want = CohClass::from_coeffs(rel, vec![lam().mul(&lam()).neg(), lam()]);
    assert_eq!(got, want);
}

#[test]
fn series_identities() {
    let mut s = TruncSeries::one(SeriesVar::Q, 4, &RatFun::zero());
    s.set_coeff(1, RatFun::one());
    assert!(s.div(&s).unwrap().is_one());

    let inv = phi(2).inv().unwrap();
    assert_eq!(inv, y_series(2, vec![RatFun::one(), lp(int(-4), -2), lp(int(16), -4)]));
}

#[test]
fn root_pow_examples() {
    let sqrt = series_root_pow(&phi(3), &rat(1, 2)).unwrap();
    assert_eq!(sqrt, y_series(3, vec![RatFun::one(), lp(int(2), -2), lp(int(-2), -4), lp(int(4), -6)]));
    let quarter = series_root_pow(&phi(2), &rat(-1, 4)).unwrap();
    assert_eq!(quarter, y_series(2, vec![RatFun::one(), lp(int(-1), -2), lp(rat(5, 2), -4)]));
    assert!(series_root_pow(&phi(5), &BigRat::zero()).unwrap().is_one());
    let bad = phi(2).scale(&int(2));
    assert_eq!(series_root_pow(&bad, &rat(1, 2)), Err(AlgebraError::BadConstantTerm));
}

#[test]
fn laurent_examples() {
    let sq = series_root_pow(&phi(2), &rat(1, 2)).unwrap();
    let one = TruncSeries::one(SeriesVar::Y, 2, &RatFun::zero());
    let ratio = one.sub(&sq).div(&one.add(&sq)).unwrap();
    let ex = laurent_expand(&ratio, -8).unwrap();
    assert_eq!(ex[1].terms(), vec![(-2, int(-1))]);
    assert_eq!(ex[2].terms(), vec![(-4, int(2))]);

    let c = LaurentInLambda::expand(&RatFun::one(), -4).unwrap();
    assert_eq!(c.min_exponent, 0);
    assert_eq!(c.coeffs, vec![BigRat::one()]);

    let m = laurent_expand(&y_series(1, vec![RatFun::zero(), lp(int(4), -2)]), -4).unwrap();
    assert!(m[0].is_zero());
    assert_eq!(m[1].terms(), vec![(-2, int(4))]);

    // 1/(λ − 1) = λ⁻¹ + λ⁻² + …
    let f = RatFun::one().div(&lam().sub(&RatFun::one())).unwrap();
    let e = LaurentInLambda::expand(&f, -5).unwrap();
    assert_eq!(e.terms(), (1..=5).rev().map(|k| (-k, int(1))).collect::<Vec<_>>());
    let zf = RatFun::z();
    assert_eq!(LaurentInLambda::expand(&zf, 0), Err(AlgebraError::NotLambdaOnly));
}

#[test]
fn substitution_examples() {
    let rel = Relation::ProjLine;
    let l0 = CohClass::scalar(rel, lam()).sub(&CohClass::h(rel));
    let half = l0.scale(&rat(1, 2));
    let z2 = RatFun::z().mul(&RatFun::z());
    let want = CohClass::from_coeffs(rel, vec![lam().mul(&lam()), lam().neg()]).scale(&rat(1, 4));
    assert_eq!(substitute_z(&z2, &half).unwrap(), want);
    assert_eq!(substitute_z(&RatFun::z(), &l0).unwrap(), l0);

    let rel = Relation::Nilpotent(2);
    let l0 = CohClass::scalar(rel, lam()).sub(&CohClass::h(rel));
    let inv_z = RatFun::z().inv().unwrap();
    let got = substitute_z(&inv_z, &l0).unwrap();
    let l2 = lam().mul(&lam());
    let want = CohClass::from_coeffs(rel, vec![lam().div(&l2).unwrap(), l2.inv().unwrap()]);
    assert_eq!(got, want);
    assert_eq!(got.mul(&l0), CohClass::one(rel));
    assert_eq!(substitute_z(&inv_z, &CohClass::h(rel)), Err(AlgebraError::SubstitutionPole));
}

#[test]
fn division_by_non_units() {
    assert_eq!(RatFun::zero().inv(), Err(AlgebraError::DivisionByNonUnit));
    assert_eq!(CohClass::h(Relation::Nilpotent(3)).inv(), Err(AlgebraError::DivisionByNonUnit));
    let s = y_series(2, vec![RatFun::zero(), RatFun::one()]);
    assert!(s.inv().is_err());
}

#[test]
fn canonical_rational_functions() {
    let two_l = Poly::var(Var::Lambda).scale(&int(2));
    let four_lz = Poly::var(Var::Lambda).mul(&Poly::var(Var::Z)).scale(&int(-4));
    let f = RatFun::new(two_l, four_lz).unwrap();
    let g = RatFun::new(Poly::constant(int(-1)), Poly::var(Var::Z).scale(&int(2))).unwrap();
    assert_eq!(f, g);
    let (_, c) = f.denom().lead().unwrap();
    assert!(c > &BigRat::zero());
    assert_eq!(parse_rat("6/-4").map(|r| fmt_rat(&r)).ok(), Some("-3/2".into()));
    assert!(parse_rat("x").is_err());
}

// ---- random elements ----

fn small_rat() -> impl Strategy<Value = BigRat> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u32..=2, 0u32..=2, small_rat()), 0..=3)
        .prop_map(|ts| Poly::from_terms(ts.into_iter().map(|(l, z, c)| (Mono::new(l, z), c))))
}

fn ratfun() -> impl Strategy<Value = RatFun> {
    (poly(), poly()).prop_map(|(n, d)| RatFun::new(n, if d.is_zero() { Poly::one() } else { d }).unwrap())
}

fn lambda_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u32..=2, small_rat()), 0..=3)
        .prop_map(|ts| Poly::from_terms(ts.into_iter().map(|(l, c)| (Mono::new(l, 0), c))))
}

fn lambda_ratfun() -> impl Strategy<Value = RatFun> {
    (lambda_poly(), lambda_poly()).prop_map(|(n, d)| RatFun::new(n, if d.is_zero() { Poly::one() } else { d }).unwrap())
}

/// Coefficients for the composite rings: polynomials in `λ, z` or rational in `λ`.
fn coeff() -> impl Strategy<Value = RatFun> {
    prop_oneof![poly().prop_map(RatFun::from_poly), lambda_ratfun()]
}

fn class(rel: Relation) -> impl Strategy<Value = CohClass> {
    prop::collection::vec(coeff(), rel.rank()).prop_map(move |c| CohClass::from_coeffs(rel, c))
}

fn series() -> impl Strategy<Value = TruncSeries<RatFun>> {
    prop::collection::vec(coeff(), 4).prop_map(|c| y_series(3, c))
}

fn unit_series() -> impl Strategy<Value = TruncSeries<RatFun>> {
    prop::collection::vec(lambda_ratfun(), 3).prop_map(|mut c| {
        c.insert(0, RatFun::one());
        y_series(3, c)
    })
}

fn ring_axioms<R: Ring>(a: &R, b: &R, c: &R) -> std::result::Result<(), TestCaseError> {
    prop_assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
    prop_assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
    prop_assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
    prop_assert_eq!(a.mul(b), b.mul(a));
    prop_assert!(a.sub(a).is_zero());
    prop_assert_eq!(a.mul(&a.one_like()), a.clone());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn polynomial_ring(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        if !b.is_zero() {
            prop_assert_eq!(a.mul(&b).div_exact(&b), Some(a.clone()));
        }
    }

    #[test]
    fn ratfun_ring(a in ratfun(), b in ratfun(), c in ratfun()) {
        ring_axioms(&a, &b, &c)?;
        if !b.is_zero() {
            prop_assert_eq!(a.div(&b).unwrap().mul(&b), a.clone());
        }
    }

    #[test]
    fn nilpotent_class_ring(a in class(Relation::Nilpotent(3)), b in class(Relation::Nilpotent(3)), c in class(Relation::Nilpotent(3))) {
        ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn projline_class_ring(a in class(Relation::ProjLine), b in class(Relation::ProjLine), c in class(Relation::ProjLine)) {
        ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn series_ring(a in series(), b in series(), c in series()) {
        ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn root_pow_inverse(s in unit_series(), n in prop_oneof![-5i64..=-1, 1i64..=5], d in 1i64..=4) {
        let a = rat(n, d);
        let x = series_root_pow(&s, &a).unwrap();
        let y = series_root_pow(&s, &-a).unwrap();
        prop_assert!(x.mul(&y).is_one());
    }

    #[test]
    fn root_pow_square(s in unit_series()) {
        let r = series_root_pow(&s, &rat(1, 2)).unwrap();
        prop_assert_eq!(r.mul(&r), s);
    }

    #[test]
    fn laurent_of_product(f in lambda_ratfun(), g in lambda_ratfun()) {
        let lo = -6;
        let ef = LaurentInLambda::expand(&f, lo).unwrap();
        let eg = LaurentInLambda::expand(&g, lo).unwrap();
        let prod = ef.mul(&eg);
        let direct = LaurentInLambda::expand(&f.mul(&g), prod.window_lo).unwrap();
        prop_assert_eq!(prod.terms(), direct.terms());
    }
}
