//! Genus-zero localization on the equivariant projective line: fixed-graph
//! sums, tree generating series and their values after the ψ̄ rewrite.

mod graphsum;
mod stilde;
mod trees;

use thiserror::Error;

use crate::algebra::{AlgebraError, CohClass, RatFun, Relation};

pub use graphsum::{p1_graph_sum, psi_integral_genus0, Insertion};
pub use stilde::{
    closed_form_stilde_h, closed_form_stilde_one, irr_ratio_check, irr_ratio_closed_form, phi, sqrt_phi,
    stilde_at_zero, IrrRatioReport,
};
pub use trees::{tree_series_eps, tree_series_s, TreeSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum P1Error {
    #[error("graph sum bounds exceeded: {0}")]
    BoundsExceeded(String),
    #[error("identity failed at y^{degree}: expected {expected}, got {actual}")]
    IdentityFailed {
        degree: usize,
        expected: String,
        actual: String,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub fn one() -> CohClass {
    CohClass::one(Relation::ProjLine)
}

pub fn hyperplane() -> CohClass {
    CohClass::h(Relation::ProjLine)
}

/// `[0] = H`.
pub fn point_zero() -> CohClass {
    hyperplane()
}

/// `[∞] = H − λ`.
pub fn point_inf() -> CohClass {
    hyperplane().sub(&CohClass::scalar(Relation::ProjLine, RatFun::lambda()))
}

/// `φ₀ = [0]/λ`.
pub fn phi_zero() -> CohClass {
    point_zero().scale_by(&RatFun::lambda().inv().expect("λ ≠ 0"))
}

/// `φ_∞ = −[∞]/λ`.
pub fn phi_inf() -> CohClass {
    point_inf().scale_by(&RatFun::lambda().inv().expect("λ ≠ 0").neg())
}

/// Tangent weight at level `j` (0 or 1 for ∞): `λ` or `−λ`.
pub(crate) fn tangent(j: usize) -> RatFun {
    if j == 0 {
        RatFun::lambda()
    } else {
        RatFun::lambda().neg()
    }
}

pub(crate) fn restriction(alpha: &CohClass, j: usize) -> RatFun {
    let (a0, ai) = alpha.restrictions();
    if j == 0 {
        a0
    } else {
        ai
    }
}

/// `(1/δ) / ∏_{b=1}^{δ} (bλ/δ)(−bλ/δ)`.
pub(crate) fn edge_factor(delta: u32) -> RatFun {
    use crate::algebra::rat;
    let mut c = rat(1, delta as i64);
    for b in 1..=delta as i64 {
        c = c / (rat(b, delta as i64) * rat(-b, delta as i64));
    }
    RatFun::lambda_pow(c, -2 * delta as i64)
}
