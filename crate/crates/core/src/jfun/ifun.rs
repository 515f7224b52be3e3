use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{int, BigRat, CohClass, Mono, Poly, RatFun, Relation, Var};
use crate::model::{d_m, euler_char, frac_bracket, GlsmModel, OrbiBundleData, Phase};

use super::weights::{bundle_weights, product, WeightTable};
use super::JError;

pub fn cohomology_relation(model: &GlsmModel) -> Relation {
    match model.phase {
        Phase::Lg => Relation::Nilpotent(model.n as usize),
        Phase::Geometric => Relation::Nilpotent(model.m()),
    }
}

fn h(rel: Relation) -> CohClass {
    CohClass::h(rel)
}

fn scalar(rel: Relation, f: RatFun) -> CohClass {
    CohClass::scalar(rel, f)
}

/// `λ₀ = λ − H`.
pub fn lambda_zero(rel: Relation) -> CohClass {
    scalar(rel, RatFun::lambda()).sub(&h(rel))
}

/// `λ_∞ = −λ + H`.
pub fn lambda_inf(rel: Relation) -> CohClass {
    lambda_zero(rel).neg()
}

/// One `q^β` coefficient of an I- or J-function.
#[derive(Debug, Clone, PartialEq)]
pub struct JTerm {
    pub beta: u32,
    /// Multiplicity of the insertion sector.
    pub sector: BigRat,
    pub value: CohClass,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JSeries {
    pub phase: Phase,
    pub twisted: bool,
    pub terms: Vec<JTerm>,
}

impl JSeries {
    pub fn coeff(&self, beta: u32) -> Option<&JTerm> {
        self.terms.iter().find(|t| t.beta == beta)
    }
}

/// Marked-point multiplicity of the graph space at degree `β`.
pub fn marked_sector(model: &GlsmModel, beta: u32) -> BigRat {
    match model.phase {
        Phase::Lg => crate::model::graph_multiplicities(model.d, beta as i64).0,
        Phase::Geometric => BigRat::zero(),
    }
}

/// Weight tables entering the `q^β` coefficient, as `(numerator, denominator)` factors.
struct Factors {
    num: Vec<CohClass>,
    den: Vec<CohClass>,
}

fn is_fixed(w: &CohClass) -> bool {
    w.coeff(0).is_zero()
}

fn field_factors(model: &GlsmModel, beta: u32) -> Result<Factors, JError> {
    let rel = cohomology_relation(model);
    let z = scalar(rel, RatFun::z());
    let hh = h(rel);
    let d = model.d as i64;
    let b = beta as i64;
    let mut num = Vec::new();
    let mut den = Vec::new();
    match model.phase {
        Phase::Lg => {
            let m1 = marked_sector(model, beta);
            let r = d_m(model.d, &m1) as i64;
            let inv_r = BigRat::new(BigInt::from(1), BigInt::from(r));
            for &w in &model.weights {
                let w = w as i64;
                let x = BigRat::new(BigInt::from((b + 1) * w), BigInt::from(d));
                let a = frac_bracket(&-x.clone());
                let degree = -x - &inv_r;
                let age_inf = frac_bracket(&(a - &inv_r));
                let fiber = hh.add(&z.scale(&int(b + 1))).scale(&BigRat::new((-w).into(), d.into()));
                let t = bundle_weights(&degree, &BigRat::zero(), &age_inf, &z, &fiber)?;
                debug_assert!(t.h0_weights.is_empty());
                num.extend(t.h1_weights);
            }
            let t = bundle_weights(&int(b), &BigRat::zero(), &BigRat::zero(), &z, &hh.add(&z.scale(&int(b))))?;
            for _ in 0..model.n {
                den.extend(t.h0_weights.iter().filter(|w| !is_fixed(w)).cloned());
            }
        }
        Phase::Geometric => {
            for &w in &model.weights {
                let w = w as i64;
                let fiber = hh.add(&z.scale(&int(b))).scale(&int(w));
                let t = bundle_weights(&int(w * b), &BigRat::zero(), &BigRat::zero(), &z, &fiber)?;
                den.extend(t.h0_weights.into_iter().filter(|w| !is_fixed(w)));
            }
            let fiber = hh.add(&z.scale(&int(b))).scale(&int(d));
            let t = bundle_weights(&int(d * b), &BigRat::zero(), &BigRat::zero(), &z, &fiber)?;
            for _ in 0..model.n {
                num.extend(t.h0_weights.iter().filter(|w| !is_fixed(w)).cloned());
            }
        }
    }
    Ok(Factors { num, den })
}

/// Weights of `Rπ_*(P^∨ ⊗ ℂ_λ)` on the degree-`β` graph-space component.
pub fn twist_table(model: &GlsmModel, beta: u32) -> Result<WeightTable, JError> {
    let rel = cohomology_relation(model);
    let z = scalar(rel, RatFun::z());
    let fiber = lambda_zero(rel).sub(&z.scale(&int(beta as i64)));
    bundle_weights(&int(-(beta as i64)), &BigRat::zero(), &BigRat::zero(), &z, &fiber)
}

/// `(λ − H) · e(−Rπ_*(P^∨ ⊗ ℂ_λ))`.
pub fn twist_factor(model: &GlsmModel, beta: u32) -> Result<CohClass, JError> {
    let rel = cohomology_relation(model);
    Ok(lambda_zero(rel).mul(&twist_table(model, beta)?.inverse_euler(rel)?))
}

/// The `q^β` coefficient as a product of torus weights on the graph-space fixed locus
/// where all degree sits over `0` and the marking is at `∞`.
pub fn localization_coefficient(model: &GlsmModel, beta: u32, twisted: bool) -> Result<JTerm, JError> {
    let rel = cohomology_relation(model);
    let f = field_factors(model, beta)?;
    let mut value = scalar(rel, RatFun::z())
        .mul(&product(rel, &f.num))
        .mul(&product(rel, &f.den).inv()?);
    if twisted {
        value = value.mul(&twist_factor(model, beta)?);
    }
    Ok(JTerm { beta, sector: marked_sector(model, beta), value })
}

/// `q^β` coefficient of `J^ε` for `β` in the unstable range `β ≤ 1/ε`.
pub fn unstable_j_coefficient(model: &GlsmModel, beta: u32, twisted: bool) -> Result<JTerm, JError> {
    let bound = model.unstable_bound();
    if beta as i64 > bound {
        return Err(JError::OutOfUnstableRange { beta, bound });
    }
    localization_coefficient(model, beta, twisted)
}

/// `I(q,z)` through `q^{q_max}`: every degree is unstable as `ε → 0+`.
pub fn i_function(model: &GlsmModel, q_max: u32, twisted: bool) -> Result<JSeries, JError> {
    let terms = (0..=q_max)
        .map(|b| localization_coefficient(model, b, twisted))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(JSeries { phase: model.phase, twisted, terms })
}

/// Homogeneous degree of the `q^β` coefficient from Euler characteristics,
/// counting `deg H = deg λ = deg z = 1`.
pub fn predicted_degree(model: &GlsmModel, beta: u32, twisted: bool) -> Result<i64, JError> {
    let chi = |degree: BigRat, ages: Vec<BigRat>| {
        euler_char(&OrbiBundleData { genus: 0, coarse_degree: degree, ages }).map_err(JError::from)
    };
    let b = beta as i64;
    let d = model.d as i64;
    let mut deg = 1;
    match model.phase {
        Phase::Lg => {
            let m1 = marked_sector(model, beta);
            let r = d_m(model.d, &m1) as i64;
            for &w in &model.weights {
                let x = BigRat::new(BigInt::from((b + 1) * w as i64), BigInt::from(d));
                let inv_r = BigRat::new(1.into(), r.into());
                let age = frac_bracket(&(frac_bracket(&-x.clone()) - &inv_r));
                deg -= chi(-x - inv_r, vec![age])?;
            }
            deg -= model.n as i64 * (chi(int(b), vec![])? - 1);
        }
        Phase::Geometric => {
            for &w in &model.weights {
                deg -= chi(int(w as i64 * b), vec![])? - 1;
            }
            deg += model.n as i64 * (chi(int(d * b), vec![])? - 1);
        }
    }
    if twisted {
        deg += 1 - chi(int(-b), vec![])?;
    }
    Ok(deg)
}

/// Splits a rational function whose denominator is `c·z^k` into powers of `z`.
pub fn z_laurent_parts(f: &RatFun) -> Result<BTreeMap<i64, Poly>, JError> {
    let den = f.denom();
    if den.len() != 1 || den.involves(Var::Lambda) {
        return Err(JError::NotLaurentInZ(f.to_string()));
    }
    let (m, c) = den.lead().expect("nonzero denominator");
    let shift = m.z as i64;
    let inv = c.recip();
    let mut out: BTreeMap<i64, Poly> = BTreeMap::new();
    for (k, coeff) in f.numer().collect(Var::Z) {
        out.insert(k as i64 - shift, coeff.scale(&inv));
    }
    Ok(out)
}

/// Keeps the nonnegative powers of `z` in every `H^k` coefficient.
pub fn positive_part(c: &CohClass) -> Result<CohClass, JError> {
    let coeffs = c
        .coeffs()
        .iter()
        .map(|f| {
            let parts = z_laurent_parts(f)?;
            let mut p = Poly::zero();
            for (e, coeff) in parts.range(0..) {
                p = p.add(&coeff.mul(&Poly::monomial(BigRat::from_integer(1.into()), Mono::new(0, *e as u32))));
            }
            Ok(RatFun::from_poly(p))
        })
        .collect::<Result<Vec<_>, JError>>()?;
    Ok(CohClass::from_coeffs(c.relation(), coeffs))
}

/// `[J^ε]_+` through `q^{q_max}`; stable degrees contribute nothing.
pub fn positive_j(model: &GlsmModel, q_max: u32, twisted: bool) -> Result<JSeries, JError> {
    let bound = model.unstable_bound();
    let rel = cohomology_relation(model);
    let terms = (0..=q_max)
        .map(|b| {
            if b as i64 <= bound {
                let t = unstable_j_coefficient(model, b, twisted)?;
                Ok(JTerm { value: positive_part(&t.value)?, ..t })
            } else {
                Ok(JTerm { beta: b, sector: marked_sector(model, b), value: CohClass::zero(rel) })
            }
        })
        .collect::<Result<Vec<_>, JError>>()?;
    Ok(JSeries { phase: model.phase, twisted, terms })
}

/// `μ^ε_β(z)`, the `q^β` coefficients of `−z·1 + [J^ε]_+`.
#[derive(Debug, Clone, PartialEq)]
pub struct MuTable {
    pub twisted: bool,
    pub entries: BTreeMap<u32, CohClass>,
}

pub fn mu_table(model: &GlsmModel, q_max: u32, twisted: bool) -> Result<MuTable, JError> {
    let rel = cohomology_relation(model);
    let pj = positive_j(model, q_max, twisted)?;
    let mut entries = BTreeMap::new();
    for t in pj.terms {
        let mut v = t.value;
        if t.beta == 0 {
            v = v.sub(&scalar(rel, RatFun::z()));
        }
        entries.insert(t.beta, v);
    }
    Ok(MuTable { twisted, entries })
}

/// Coefficient of the top power `λ^top` in every `H^k` coefficient.
pub fn top_lambda_part(c: &CohClass, top: u32) -> CohClass {
    let coeffs = c
        .coeffs()
        .iter()
        .map(|f| {
            assert!(!f.denom().involves(Var::Lambda), "denominator must be free of λ");
            let p = f.numer().collect(Var::Lambda).remove(&top).unwrap_or_default();
            RatFun::new(p, f.denom().clone()).expect("nonzero denominator")
        })
        .collect();
    CohClass::from_coeffs(c.relation(), coeffs)
}
