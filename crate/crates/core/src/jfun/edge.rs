use crate::algebra::{int, substitute_z, BigRat, CohClass, Relation};
use crate::model::{d_m, GlsmModel};

use super::ifun::{cohomology_relation, lambda_inf, lambda_zero, localization_coefficient, marked_sector};
use super::JError;

/// Which fixed section a vertex lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Zero,
    Infinity,
}

fn level_weight(rel: Relation, level: Level) -> CohClass {
    match level {
        Level::Zero => lambda_zero(rel),
        Level::Infinity => lambda_inf(rel),
    }
}

/// Substitutes `z := value` in every coefficient of `c`.
pub fn substitute_z_in_class(c: &CohClass, value: &CohClass) -> Result<CohClass, JError> {
    let rel = c.relation();
    let mut acc = CohClass::zero(rel);
    let mut hpow = CohClass::one(rel);
    for coeff in c.coeffs() {
        acc = acc.add(&substitute_z(coeff, value)?.mul(&hpow));
        hpow = hpow.mul(&CohClass::h(rel));
    }
    Ok(acc)
}

/// Localization contribution of an edge of degree `δ_e` carrying a basepoint of order `β_e`.
///
/// `(δ/(λ₀ d_m)) [J^ε|_{z=λ₀/δ}]_{q^{β_e}} / ∏_{b=1}^{δ} (bλ₀/δ)(bλ_∞/δ)`, with the twist
/// included in `J` when `twisted`. `unstable_vertex` multiplies by `λ_j/δ`.
pub fn edge_contribution(
    model: &GlsmModel,
    delta_e: u32,
    beta_e: u32,
    twisted: bool,
    unstable_vertex: Option<Level>,
) -> Result<CohClass, JError> {
    if delta_e == 0 {
        return Err(JError::DegreeViolation { delta: delta_e, beta: beta_e });
    }
    if beta_e > 0 && delta_e <= beta_e {
        return Err(JError::DegreeViolation { delta: delta_e, beta: beta_e });
    }
    let bound = model.unstable_bound();
    if beta_e as i64 > bound {
        return Err(JError::OutOfUnstableRange { beta: beta_e, bound });
    }
    let rel = cohomology_relation(model);
    let l0 = lambda_zero(rel);
    let linf = lambda_inf(rel);
    let delta = int(delta_e as i64);
    let inv_delta = delta.recip();
    let zval = l0.scale(&inv_delta);
    let j = localization_coefficient(model, beta_e, twisted)?;
    let jz = substitute_z_in_class(&j.value, &zval)?;
    let dm = d_m(model.d, &marked_sector(model, beta_e));
    let mut den = l0.scale(&int(dm as i64)).scale(&inv_delta);
    for b in 1..=delta_e as i64 {
        let f = BigRat::new(b.into(), (delta_e as i64).into());
        den = den.mul(&l0.scale(&f)).mul(&linf.scale(&f));
    }
    let mut out = jz.mul(&den.inv()?);
    if let Some(level) = unstable_vertex {
        out = out.mul(&level_weight(rel, level).scale(&inv_delta));
    }
    Ok(out)
}

/// Factor `(e(N), d_m/(λ_j/δ − ψ))` of a node between an edge and a vertex.
///
/// The vertex-side class `ψ` stays symbolic; [`NodeContribution::expand_in_psi`]
/// gives its coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeContribution {
    pub normal: CohClass,
    pub d_m: u64,
    pub edge_tangent: CohClass,
}

pub fn node_contribution(model: &GlsmModel, m_h: &BigRat, level: Level, delta_e: u32) -> NodeContribution {
    let rel = cohomology_relation(model);
    let normal = level_weight(rel, level);
    let edge_tangent = normal.scale(&int(delta_e as i64).recip());
    NodeContribution { normal, d_m: d_m(model.d, m_h), edge_tangent }
}

impl NodeContribution {
    /// Coefficients `c_k` in `d_m/(ω − ψ) = Σ_k c_k ψ^k` for `k ≤ order`.
    pub fn expand_in_psi(&self, order: usize) -> Result<Vec<CohClass>, JError> {
        let inv = self.edge_tangent.inv()?;
        let mut out = Vec::with_capacity(order + 1);
        let mut c = inv.scale(&int(self.d_m as i64));
        for _ in 0..=order {
            out.push(c.clone());
            c = c.mul(&inv);
        }
        Ok(out)
    }

    /// Smoothing factor when the other branch is an edge with tangent weight `other`.
    pub fn edge_to_edge(&self, other: &CohClass) -> Result<CohClass, JError> {
        Ok(self.edge_tangent.add(other).inv()?.scale(&int(self.d_m as i64)))
    }
}
