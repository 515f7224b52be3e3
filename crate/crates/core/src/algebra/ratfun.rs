use std::fmt;

use num_traits::{One, Signed, Zero};

use super::poly::{Mono, Poly, Var};
use super::{AlgebraError, BigRat, Result, Ring};

/// Reduced quotient of two polynomials in `λ` and `z`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByNonUnit);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFun::zero();
        }
        if let Some(c) = den.constant_value() {
            return RatFun {
                num: num.scale(&c.recip()),
                den: Poly::one(),
            };
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        if let Some(c) = den.constant_value() {
            return RatFun {
                num: num.scale(&c.recip()),
                den: Poly::one(),
            };
        }
        // integral, content one, denominator leading coefficient positive
        let den_p = den.primitive_integral();
        let factor = den_p
            .lead()
            .map(|(m, c)| c / den.coeff(m))
            .expect("nonzero denominator");
        RatFun {
            num: num.scale(&factor),
            den: den_p,
        }
    }

    pub fn zero() -> Self {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFun::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        RatFun {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn lambda() -> Self {
        RatFun::from_poly(Poly::var(Var::Lambda))
    }

    pub fn z() -> Self {
        RatFun::from_poly(Poly::var(Var::Z))
    }

    /// `c · λ^k` for any integer `k`.
    pub fn lambda_pow(c: BigRat, k: i64) -> Self {
        if k >= 0 {
            RatFun::from_poly(Poly::monomial(c, Mono::new(k as u32, 0)))
        } else {
            RatFun::normalize(
                Poly::constant(c),
                Poly::monomial(BigRat::one(), Mono::new((-k) as u32, 0)),
            )
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<BigRat> {
        if self.den.is_constant() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn involves(&self, v: Var) -> bool {
        self.num.involves(v) || self.den.involves(v)
    }

    /// Coefficient and exponent when `self = c · λ^k`.
    pub fn as_lambda_monomial(&self) -> Option<(BigRat, i64)> {
        if self.num.len() != 1 || self.den.len() != 1 {
            return None;
        }
        let (nm, nc) = self.num.lead()?;
        let (dm, dc) = self.den.lead()?;
        if nm.z != 0 || dm.z != 0 {
            return None;
        }
        Some((nc / dc, nm.l as i64 - dm.l as i64))
    }

    /// Degree of numerator minus degree of denominator when both are homogeneous.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        if !self.num.is_homogeneous() || !self.den.is_homogeneous() {
            return None;
        }
        Some(self.num.total_degree()? as i64 - self.den.total_degree()? as i64)
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFun::normalize(self.num.add(&o.num), self.den.clone());
        }
        RatFun::normalize(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn neg(&self) -> Self {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return RatFun::zero();
        }
        RatFun::normalize(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByNonUnit);
        }
        Ok(RatFun::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut r = RatFun::one();
        for _ in 0..k.unsigned_abs() {
            r = r.mul(&base);
        }
        Ok(r)
    }

    /// Substitute `v := value` in numerator and denominator.
    pub fn substitute(&self, v: Var, value: &RatFun) -> Result<Self> {
        let eval = |p: &Poly| -> RatFun {
            let mut acc = RatFun::zero();
            let coll = p.collect(v);
            let top = coll.keys().next_back().copied().unwrap_or(0);
            for k in (0..=top).rev() {
                acc = acc.mul(value);
                if let Some(c) = coll.get(&k) {
                    acc = acc.add(&RatFun::from_poly(c.clone()));
                }
            }
            acc
        };
        eval(&self.num).div(&eval(&self.den))
    }

    pub fn eval(&self, l: &BigRat, z: &BigRat) -> Result<BigRat> {
        let d = self.den.eval(l, z);
        if d.is_zero() {
            return Err(AlgebraError::DivisionByNonUnit);
        }
        Ok(self.num.eval(l, z) / d)
    }
}

impl Default for RatFun {
    fn default() -> Self {
        RatFun::zero()
    }
}

impl From<BigRat> for RatFun {
    fn from(c: BigRat) -> Self {
        RatFun::constant(c)
    }
}

impl Ring for RatFun {
    fn zero_like(&self) -> Self {
        RatFun::zero()
    }
    fn one_like(&self) -> Self {
        RatFun::one()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        RatFun::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFun::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFun::mul(self, o)
    }
    fn neg(&self) -> Self {
        RatFun::neg(self)
    }
    fn try_inv(&self) -> Result<Self> {
        self.inv()
    }
    fn scale(&self, c: &BigRat) -> Self {
        RatFun::scale(self, c)
    }
    fn from_rat_like(&self, c: &BigRat) -> Self {
        RatFun::constant(c.clone())
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.den.constant_value() {
            if c.is_one() {
                return write!(f, "{}", self.num);
            }
        }
        let wrap = |p: &Poly| {
            if p.len() > 1 || p.lead().map_or(false, |(_, c)| c.is_negative()) {
                format!("({})", p)
            } else {
                format!("{}", p)
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}
