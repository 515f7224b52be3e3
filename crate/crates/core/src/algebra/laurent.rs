use std::fmt;

use num_traits::Zero;

use super::poly::{Poly, Var};
use super::ratfun::RatFun;
use super::series::TruncSeries;
use super::{AlgebraError, BigRat, Result};

/// Expansion `Σ_{e ≥ window_lo} c_e λ^e` at `λ = ∞`, exact for exponents `≥ window_lo`.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentInLambda {
    pub min_exponent: i64,
    pub coeffs: Vec<BigRat>,
    pub window_lo: i64,
}

impl LaurentInLambda {
    pub fn zero(window_lo: i64) -> Self {
        LaurentInLambda {
            min_exponent: 0,
            coeffs: vec![],
            window_lo,
        }
    }

    fn from_dense(lo: i64, dense: Vec<BigRat>, window_lo: i64) -> Self {
        let first = dense.iter().position(|c| !c.is_zero());
        let last = dense.iter().rposition(|c| !c.is_zero());
        match (first, last) {
            (Some(a), Some(b)) => LaurentInLambda {
                min_exponent: lo + a as i64,
                coeffs: dense[a..=b].to_vec(),
                window_lo,
            },
            _ => LaurentInLambda::zero(window_lo),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.min_exponent + self.coeffs.len() as i64 - 1)
        }
    }

    pub fn coeff(&self, e: i64) -> BigRat {
        let i = e - self.min_exponent;
        if i < 0 || i >= self.coeffs.len() as i64 {
            BigRat::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Nonzero `(exponent, coefficient)` pairs, ascending.
    pub fn terms(&self) -> Vec<(i64, BigRat)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.min_exponent + i as i64, c.clone()))
            .collect()
    }

    /// Expands a rational function of `λ` alone.
    pub fn expand(f: &RatFun, window_lo: i64) -> Result<Self> {
        if f.involves(Var::Z) {
            return Err(AlgebraError::NotLambdaOnly);
        }
        if f.is_zero() {
            return Ok(LaurentInLambda::zero(window_lo));
        }
        let dense = |p: &Poly| -> Vec<BigRat> {
            let deg = p.degree_in(Var::Lambda).unwrap_or(0) as usize;
            let mut v = vec![BigRat::zero(); deg + 1];
            for (m, c) in p.terms() {
                v[m.l as usize] = c.clone();
            }
            v
        };
        // in t = 1/λ: f = t^{dd-dn} · Ñ(t)/D̃(t), with reversed coefficient lists
        let mut n = dense(f.numer());
        let mut d = dense(f.denom());
        let (dn, dd) = (n.len() as i64 - 1, d.len() as i64 - 1);
        n.reverse();
        d.reverse();
        let top = dn - dd;
        if top < window_lo {
            return Ok(LaurentInLambda::zero(window_lo));
        }
        let len = (top - window_lo + 1) as usize;
        let d0 = d[0].clone();
        let mut out = vec![BigRat::zero(); len];
        for k in 0..len {
            let mut acc = n.get(k).cloned().unwrap_or_else(BigRat::zero);
            for j in 1..=k.min(d.len() - 1) {
                acc -= &d[j] * &out[k - j];
            }
            out[k] = acc / &d0;
        }
        out.reverse();
        Ok(LaurentInLambda::from_dense(window_lo, out, window_lo))
    }

    pub fn add(&self, o: &Self) -> Self {
        let lo = self.window_lo.max(o.window_lo);
        let hi = self.max_exponent().into_iter().chain(o.max_exponent()).max();
        let Some(hi) = hi else {
            return LaurentInLambda::zero(lo);
        };
        if hi < lo {
            return LaurentInLambda::zero(lo);
        }
        let dense = (lo..=hi).map(|e| self.coeff(e) + o.coeff(e)).collect();
        LaurentInLambda::from_dense(lo, dense, lo)
    }

    /// Product, exact down to the lowest exponent both factors determine.
    pub fn mul(&self, o: &Self) -> Self {
        let (Some(a), Some(b)) = (self.max_exponent(), o.max_exponent()) else {
            return LaurentInLambda::zero(self.window_lo.max(o.window_lo) );
        };
        let lo = (self.window_lo + b).max(o.window_lo + a);
        let hi = a + b;
        if hi < lo {
            return LaurentInLambda::zero(lo);
        }
        let mut dense = vec![BigRat::zero(); (hi - lo + 1) as usize];
        for (e1, c1) in self.terms() {
            for (e2, c2) in o.terms() {
                let e = e1 + e2;
                if e >= lo {
                    dense[(e - lo) as usize] += &c1 * &c2;
                }
            }
        }
        LaurentInLambda::from_dense(lo, dense, lo)
    }

    /// Restricts to exponents `≥ lo`.
    pub fn clip(&self, lo: i64) -> Self {
        let lo = lo.max(self.window_lo);
        let Some(hi) = self.max_exponent() else {
            return LaurentInLambda::zero(lo);
        };
        if hi < lo {
            return LaurentInLambda::zero(lo);
        }
        let dense = (lo..=hi).map(|e| self.coeff(e)).collect();
        LaurentInLambda::from_dense(lo, dense, lo)
    }
}

/// Expands every coefficient of a series whose coefficients depend on `λ` only.
pub fn laurent_expand(f: &TruncSeries<RatFun>, window_lo: i64) -> Result<Vec<LaurentInLambda>> {
    f.coeffs()
        .iter()
        .map(|c| LaurentInLambda::expand(c, window_lo))
        .collect()
}

impl fmt::Debug for LaurentInLambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LaurentInLambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.terms();
        if t.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in t.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})*l^{}", c, e)?;
        }
        write!(f, " + O(l^{})", self.window_lo - 1)
    }
}
