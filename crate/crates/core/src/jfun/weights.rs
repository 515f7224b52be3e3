use num_traits::{ToPrimitive, Zero};

use crate::algebra::{int, BigRat, CohClass, Relation};
use crate::model::{euler_char, OrbiBundleData};

use super::JError;

/// Torus weights on `H⁰` and `H¹` of a line bundle on an orbifold projective line.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable {
    pub h0_weights: Vec<CohClass>,
    pub h1_weights: Vec<CohClass>,
}

impl WeightTable {
    pub fn euler_characteristic(&self) -> i64 {
        self.h0_weights.len() as i64 - self.h1_weights.len() as i64
    }

    /// `e(H¹)/e(H⁰)`, the equivariant Euler class of `−Rπ_*`.
    pub fn inverse_euler(&self, rel: Relation) -> Result<CohClass, JError> {
        let num = product(rel, &self.h1_weights);
        let den = product(rel, &self.h0_weights);
        Ok(num.mul(&den.inv()?))
    }
}

pub(crate) fn product(rel: Relation, ws: &[CohClass]) -> CohClass {
    ws.iter().fold(CohClass::one(rel), |acc, w| acc.mul(w))
}

/// Weights of `H^*(L)` for `L` of orbifold degree `degree` with ages at `0` and `∞`.
///
/// With `D̄ = degree − age0 − age_inf`, sections have weights
/// `w₀ − (k + age0)t` for `0 ≤ k ≤ D̄` and `H¹` has `w₀ − (k + age0)t` for `D̄ < k < 0`.
pub fn bundle_weights(
    degree: &BigRat,
    age0: &BigRat,
    age_inf: &BigRat,
    tangent_at_0: &CohClass,
    fiber_at_0: &CohClass,
) -> Result<WeightTable, JError> {
    let dbar = degree - age0 - age_inf;
    if !dbar.is_integer() {
        return Err(JError::InconsistentOrbData(format!(
            "degree {} minus ages {} and {} is not an integer",
            degree, age0, age_inf
        )));
    }
    let dbar = dbar.to_integer().to_i64().expect("degree fits in i64");
    let weight = |k: i64| fiber_at_0.sub(&tangent_at_0.scale(&(int(k) + age0)));
    let h0_weights = (0..=dbar).map(weight).collect::<Vec<_>>();
    let h1_weights = (dbar + 1..0).rev().map(weight).collect::<Vec<_>>();
    let table = WeightTable { h0_weights, h1_weights };
    let ages = [age0, age_inf]
        .into_iter()
        .filter(|a| !a.is_zero())
        .cloned()
        .collect();
    let chi = euler_char(&OrbiBundleData { genus: 0, coarse_degree: degree.clone(), ages })
        .map_err(|e| JError::InconsistentOrbData(e.to_string()))?;
    debug_assert_eq!(table.euler_characteristic(), chi);
    Ok(table)
}
