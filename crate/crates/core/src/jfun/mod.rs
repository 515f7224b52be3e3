//! I- and J-function coefficients, mirror transforms, and edge and node
//! factors of the localization formula.

mod edge;
mod ifun;
mod weights;

use thiserror::Error;

use crate::algebra::{AlgebraError, BigRat};
use crate::model::{GlsmModel, ModelError};

pub use edge::{edge_contribution, node_contribution, substitute_z_in_class, Level, NodeContribution};
pub use ifun::{
    cohomology_relation, i_function, lambda_inf, lambda_zero, localization_coefficient, marked_sector, mu_table,
    positive_j, positive_part, predicted_degree, top_lambda_part, twist_factor, twist_table,
    unstable_j_coefficient, z_laurent_parts, JSeries, JTerm, MuTable,
};
pub use weights::{bundle_weights, WeightTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JError {
    #[error("degree {beta} lies outside the unstable range (bound {bound})")]
    OutOfUnstableRange { beta: u32, bound: i64 },
    #[error("edge degree {delta} must exceed basepoint order {beta}")]
    DegreeViolation { delta: u32, beta: u32 },
    #[error("inconsistent orbifold data: {0}")]
    InconsistentOrbData(String),
    #[error("not a Laurent polynomial in z: {0}")]
    NotLaurentInZ(String),
    #[error("identity failed: {0}")]
    IdentityFailed(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct JwcReport {
    pub bound_1: i64,
    pub bound_2: i64,
    /// Degrees whose μ-coefficient is present for `ε₂` but not `ε₁`.
    pub gained: Vec<u32>,
    /// Degrees whose μ-coefficient is present for `ε₁` but not `ε₂`.
    pub lost: Vec<u32>,
}

/// Compares the unstable parts for two values of `ε` against truncations of `I`.
pub fn jwc_check(
    model: &GlsmModel,
    epsilon_1: &BigRat,
    epsilon_2: &BigRat,
    q_max: u32,
    twisted: bool,
) -> Result<JwcReport, JError> {
    let m1 = model.with_epsilon(epsilon_1.clone())?;
    let m2 = model.with_epsilon(epsilon_2.clone())?;
    let i = i_function(model, q_max, twisted)?;
    let rel = cohomology_relation(model);
    let i_plus = i
        .terms
        .iter()
        .map(|t| positive_part(&t.value))
        .collect::<Result<Vec<_>, _>>()?;
    for m in [&m1, &m2] {
        let pj = positive_j(m, q_max, twisted)?;
        let bound = m.unstable_bound();
        for t in &pj.terms {
            let expected = if t.beta as i64 <= bound {
                i_plus[t.beta as usize].clone()
            } else {
                crate::algebra::CohClass::zero(rel)
            };
            if t.value != expected {
                return Err(JError::IdentityFailed(format!(
                    "[J]_+ at q^{} for epsilon {}: expected {}, got {}",
                    t.beta, m.epsilon, expected, t.value
                )));
            }
        }
    }
    let mu1 = mu_table(&m1, q_max, twisted)?;
    let mu2 = mu_table(&m2, q_max, twisted)?;
    let (b1, b2) = (m1.unstable_bound(), m2.unstable_bound());
    let mut gained = Vec::new();
    let mut lost = Vec::new();
    for beta in 0..=q_max {
        let in1 = beta as i64 <= b1;
        let in2 = beta as i64 <= b2;
        let diff = mu2.entries[&beta].sub(&mu1.entries[&beta]);
        let expected = match (in1, in2) {
            (false, true) if beta > 0 => {
                gained.push(beta);
                i_plus[beta as usize].clone()
            }
            (true, false) if beta > 0 => {
                lost.push(beta);
                i_plus[beta as usize].neg()
            }
            _ => crate::algebra::CohClass::zero(rel),
        };
        if diff != expected {
            return Err(JError::IdentityFailed(format!(
                "mu difference at q^{}: expected {}, got {}",
                beta, expected, diff
            )));
        }
    }
    Ok(JwcReport { bound_1: b1, bound_2: b2, gained, lost })
}
