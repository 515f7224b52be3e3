//! Model data: weights, degree, phase and stability parameter, with the
//! multiplicity and Euler-characteristic arithmetic built on them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{fmt_rat, int, parse_rat, BigRat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid model: {0}")]
    Invalid(String),
    #[error("epsilon {0} lies on a wall")]
    OnWall(String),
    #[error("Euler characteristic is not an integer (degree {degree}, ages sum {ages})")]
    NonIntegralChi { degree: String, ages: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    #[serde(alias = "LG")]
    Lg,
    Geometric,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlsmModel {
    pub weights: Vec<u64>,
    pub n: u64,
    pub d: u64,
    pub phase: Phase,
    pub epsilon: BigRat,
}

/// Serialized form of a model; rationals are `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub weights: Vec<u64>,
    #[serde(rename = "N")]
    pub n: u64,
    pub d: u64,
    pub phase: Phase,
    pub epsilon: String,
}

impl GlsmModel {
    pub fn new(weights: Vec<u64>, n: u64, d: u64, phase: Phase, epsilon: BigRat) -> Result<Self, ModelError> {
        if weights.is_empty() || weights.iter().any(|&w| w == 0) {
            return Err(ModelError::Invalid("weights must be positive and nonempty".into()));
        }
        if n == 0 || d == 0 {
            return Err(ModelError::Invalid("N and d must be positive".into()));
        }
        if let Some(w) = weights.iter().find(|&&w| d % w != 0) {
            return Err(ModelError::Invalid(format!("weight {} does not divide d = {}", w, d)));
        }
        if !epsilon.is_positive() {
            return Err(ModelError::Invalid("epsilon must be positive".into()));
        }
        if on_wall(&epsilon) {
            return Err(ModelError::OnWall(fmt_rat(&epsilon)));
        }
        Ok(GlsmModel { weights, n, d, phase, epsilon })
    }

    /// Fermat-type model `Σ x_i^d` with `M = d` unit weights and one `p`.
    pub fn fermat(d: u64, phase: Phase, epsilon: BigRat) -> Result<Self, ModelError> {
        GlsmModel::new(vec![1; d as usize], 1, d, phase, epsilon)
    }

    pub fn from_spec(spec: &ModelSpec) -> Result<Self, ModelError> {
        let eps = parse_rat(&spec.epsilon).map_err(|e| ModelError::Invalid(e.to_string()))?;
        GlsmModel::new(spec.weights.clone(), spec.n, spec.d, spec.phase, eps)
    }

    pub fn to_spec(&self) -> ModelSpec {
        ModelSpec {
            weights: self.weights.clone(),
            n: self.n,
            d: self.d,
            phase: self.phase,
            epsilon: fmt_rat(&self.epsilon),
        }
    }

    pub fn m(&self) -> usize {
        self.weights.len()
    }

    pub fn with_epsilon(&self, epsilon: BigRat) -> Result<Self, ModelError> {
        GlsmModel::new(self.weights.clone(), self.n, self.d, self.phase, epsilon)
    }

    /// Multiplicity of the extra legs: `1/d` in the LG phase, `0` in the geometric phase.
    pub fn unit_mult(&self) -> BigRat {
        match self.phase {
            Phase::Lg => BigRat::new(BigInt::one(), BigInt::from(self.d)),
            Phase::Geometric => BigRat::zero(),
        }
    }

    /// Largest degree in the unstable range, `⌊1/ε⌋`.
    pub fn unstable_bound(&self) -> i64 {
        self.epsilon.recip().floor().to_integer().to_i64().unwrap_or(i64::MAX)
    }

    pub fn d_m(&self, m: &BigRat) -> u64 {
        d_m(self.d, m)
    }
}

pub fn on_wall(epsilon: &BigRat) -> bool {
    let inv = epsilon.recip();
    inv.is_integer() && inv.is_positive()
}

/// `⟨a⟩`, the representative of `a` modulo ℤ in `[0, 1)`.
pub fn frac_bracket(a: &BigRat) -> BigRat {
    a - a.floor()
}

/// Order of `exp(2πi m)` in the group of `d`-th roots of unity.
pub fn d_m(d: u64, m: &BigRat) -> u64 {
    let k = (frac_bracket(m) * int(d as i64)).to_integer();
    let g = k.gcd(&BigInt::from(d));
    (BigInt::from(d) / g).to_u64().expect("d fits in u64")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sector {
    #[serde(serialize_with = "ser_rat")]
    pub m: BigRat,
    pub fixed_coords: Vec<usize>,
    pub narrow: bool,
    pub d_m: u64,
}

fn ser_rat<S: serde::Serializer>(r: &BigRat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rat(r))
}

pub fn list_sectors(model: &GlsmModel) -> Vec<Sector> {
    (0..model.d)
        .map(|k| {
            let m = BigRat::new(BigInt::from(k), BigInt::from(model.d));
            let fixed_coords: Vec<usize> = model
                .weights
                .iter()
                .enumerate()
                .filter(|(_, &w)| (&m * int(w as i64)).is_integer())
                .map(|(i, _)| i + 1)
                .collect();
            Sector {
                narrow: fixed_coords.is_empty(),
                d_m: d_m(model.d, &m),
                m,
                fixed_coords,
            }
        })
        .collect()
}

/// The quantity that must be an integer plus `Σ m_i`.
fn compat_target(model: &GlsmModel, g: u32, beta: &BigRat, n: usize) -> BigRat {
    match model.phase {
        Phase::Lg => (-beta + int(2 * g as i64 - 2 + n as i64)) / int(model.d as i64),
        Phase::Geometric => beta.clone(),
    }
}

pub fn check_compatibility(model: &GlsmModel, g: u32, beta: &BigRat, mults: &[BigRat]) -> bool {
    let s: BigRat = mults.iter().fold(BigRat::zero(), |a, m| a + m);
    (compat_target(model, g, beta, mults.len()) - s).is_integer()
}

/// The unique last multiplicity in `[0,1)` completing `mults` to a compatible tuple.
pub fn solve_last(model: &GlsmModel, g: u32, beta: &BigRat, mults: &[BigRat]) -> BigRat {
    let s: BigRat = mults.iter().fold(BigRat::zero(), |a, m| a + m);
    frac_bracket(&(compat_target(model, g, beta, mults.len() + 1) - s))
}

/// `(⟨(−β−1)/d⟩, ⟨(β+1)/d⟩)`.
pub fn graph_multiplicities(d: u64, beta: i64) -> (BigRat, BigRat) {
    let a = BigRat::new(BigInt::from(beta + 1), BigInt::from(d));
    (frac_bracket(&-a.clone()), frac_bracket(&a))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbiBundleData {
    pub genus: u32,
    /// Degree on the orbifold curve.
    pub coarse_degree: BigRat,
    pub ages: Vec<BigRat>,
}

impl OrbiBundleData {
    /// Degree of the pushforward to the coarse curve.
    pub fn pushforward_degree(&self) -> Result<i64, ModelError> {
        let a: BigRat = self.ages.iter().fold(BigRat::zero(), |s, x| s + x);
        let deg = &self.coarse_degree - &a;
        if !deg.is_integer() {
            return Err(ModelError::NonIntegralChi {
                degree: fmt_rat(&self.coarse_degree),
                ages: fmt_rat(&a),
            });
        }
        Ok(deg.to_integer().to_i64().expect("degree fits in i64"))
    }
}

pub fn euler_char(data: &OrbiBundleData) -> Result<i64, ModelError> {
    Ok(1 - data.genus as i64 + data.pushforward_degree()?)
}

/// Degree of `L` on a curve of genus `g` with `n` markings.
pub fn line_bundle_degree(model: &GlsmModel, g: u32, n: usize, beta: &BigRat) -> BigRat {
    match model.phase {
        Phase::Lg => (int(2 * g as i64 - 2 + n as i64) - beta) / int(model.d as i64),
        Phase::Geometric => beta.clone(),
    }
}

/// Orbifold data of `L^{w}(−Σ q_k)` with ages `⟨w m_k⟩`.
pub fn twisted_power_data(model: &GlsmModel, w: u64, g: u32, mults: &[BigRat], beta: &BigRat) -> OrbiBundleData {
    let deg_l = line_bundle_degree(model, g, mults.len(), beta);
    OrbiBundleData {
        genus: g,
        coarse_degree: deg_l * int(w as i64) - int(mults.len() as i64),
        ages: mults.iter().map(|m| frac_bracket(&(m * int(w as i64)))).collect(),
    }
}

/// Orbifold data of `P = L^{−d} ⊗ ω_log`.
pub fn p_bundle_data(model: &GlsmModel, g: u32, mults: &[BigRat], beta: &BigRat) -> OrbiBundleData {
    let n = mults.len();
    let deg_l = line_bundle_degree(model, g, n, beta);
    OrbiBundleData {
        genus: g,
        coarse_degree: -deg_l * int(model.d as i64) + int(2 * g as i64 - 2 + n as i64),
        ages: mults.iter().map(|m| frac_bracket(&(-m * int(model.d as i64)))).collect(),
    }
}

/// `(4g−4+n) + Σ_i χ(L^{w_i}(−Σq)) + N·χ(P)`.
pub fn virtual_dimension(model: &GlsmModel, g: u32, mults: &[BigRat], beta: &BigRat) -> Result<i64, ModelError> {
    let mut v = 4 * g as i64 - 4 + mults.len() as i64;
    for &w in &model.weights {
        v += euler_char(&twisted_power_data(model, w, g, mults, beta))?;
    }
    v += model.n as i64 * euler_char(&p_bundle_data(model, g, mults, beta))?;
    Ok(v)
}

/// Half the smallest positive gap `1 − kε`, or `1/2` when no `k ≥ 1` has `kε < 1`.
pub fn choose_delta(epsilon: &BigRat) -> Result<BigRat, ModelError> {
    if !epsilon.is_positive() {
        return Err(ModelError::Invalid("epsilon must be positive".into()));
    }
    if on_wall(epsilon) {
        return Err(ModelError::OnWall(fmt_rat(epsilon)));
    }
    let mut best: Option<BigRat> = None;
    let mut k = 1i64;
    loop {
        let gap = BigRat::one() - epsilon * int(k);
        if !gap.is_positive() {
            break;
        }
        best = Some(match best {
            Some(b) if b < gap => b,
            _ => gap,
        });
        k += 1;
    }
    Ok(best.map_or_else(|| BigRat::new(1.into(), 2.into()), |b| b / int(2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn bracket_examples() {
        assert_eq!(frac_bracket(&rat(-4, 5)), rat(1, 5));
        assert_eq!(frac_bracket(&int(-2)), int(0));
        assert_eq!(frac_bracket(&rat(7, 3)), rat(1, 3));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(choose_delta(&rat(2, 5)).unwrap(), rat(1, 10));
        assert_eq!(choose_delta(&rat(3, 7)).unwrap(), rat(1, 14));
        assert_eq!(choose_delta(&int(2)).unwrap(), rat(1, 2));
        assert!(choose_delta(&rat(1, 3)).is_err());
    }
}
