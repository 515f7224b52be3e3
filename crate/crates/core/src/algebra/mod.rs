//! Exact arithmetic: rationals, rational functions in `λ, z`, cohomology
//! classes modulo a relation, truncated power series and expansions at `λ = ∞`.

pub mod cohclass;
pub mod laurent;
pub mod poly;
pub mod ratfun;
pub mod series;

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

pub use cohclass::{substitute_z, CohClass, Relation};
pub use laurent::{laurent_expand, LaurentInLambda};
pub use poly::{Mono, Poly, Var};
pub use ratfun::RatFun;
pub use series::{series_root_pow, SeriesVar, TruncSeries};

pub type BigRat = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by a non-unit")]
    DivisionByNonUnit,
    #[error("series constant term must be 1")]
    BadConstantTerm,
    #[error("denominator vanishes after substitution")]
    SubstitutionPole,
    #[error("coefficient depends on z, expected a function of lambda alone")]
    NotLambdaOnly,
    #[error("cannot parse rational `{0}`")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;

/// Commutative ring with unit, as used by the generic series code.
///
/// Elements carry enough shape information (relation tags, truncation
/// orders) that zero and one are produced from an existing element.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn try_inv(&self) -> Result<Self>;
    fn scale(&self, c: &BigRat) -> Self;
    fn from_rat_like(&self, c: &BigRat) -> Self {
        self.one_like().scale(c)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.try_inv()?))
    }
    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rat(s: &str) -> Result<BigRat> {
    let s = s.trim();
    let bad = || AlgebraError::Parse(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRat::new(p, q))
        }
        None => Ok(BigRat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn fmt_rat(r: &BigRat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Serde helper writing a rational as `"p/q"`.
pub fn serialize_rat<S: serde::Serializer>(r: &BigRat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rat(r))
}

/// Generalised binomial coefficient `a choose k`.
pub fn binom_rat(a: &BigRat, k: usize) -> BigRat {
    let mut r = BigRat::one();
    for i in 0..k {
        r = r * (a - int(i as i64)) / int(i as i64 + 1);
    }
    r
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}
