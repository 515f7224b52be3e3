use std::fmt;

use super::{binom_rat, AlgebraError, BigRat, Result, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesVar {
    Q,
    Y,
    Z,
}

impl fmt::Display for SeriesVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SeriesVar::Q => "q",
            SeriesVar::Y => "y",
            SeriesVar::Z => "z",
        };
        write!(f, "{}", s)
    }
}

/// Power series in one variable truncated after degree `order`.
#[derive(Clone, PartialEq)]
pub struct TruncSeries<R> {
    var: SeriesVar,
    order: usize,
    coeffs: Vec<R>,
}

impl<R: Ring> TruncSeries<R> {
    pub fn zero(var: SeriesVar, order: usize, proto: &R) -> Self {
        TruncSeries {
            var,
            order,
            coeffs: vec![proto.zero_like(); order + 1],
        }
    }

    pub fn constant(var: SeriesVar, order: usize, c: R) -> Self {
        let mut s = TruncSeries::zero(var, order, &c);
        s.coeffs[0] = c;
        s
    }

    pub fn one(var: SeriesVar, order: usize, proto: &R) -> Self {
        TruncSeries::constant(var, order, proto.one_like())
    }

    /// `c · var^k`, or zero when `k > order`.
    pub fn monomial(var: SeriesVar, order: usize, c: R, k: usize) -> Self {
        let mut s = TruncSeries::zero(var, order, &c);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Builds from the leading coefficients; missing ones are zero, extra ones dropped.
    pub fn from_coeffs(var: SeriesVar, order: usize, proto: &R, coeffs: Vec<R>) -> Self {
        let mut s = TruncSeries::zero(var, order, proto);
        for (k, c) in coeffs.into_iter().enumerate().take(order + 1) {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn var(&self) -> SeriesVar {
        self.var
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    pub fn set_coeff(&mut self, k: usize, c: R) {
        if k <= self.order {
            self.coeffs[k] = c;
        }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> TruncSeries<S> {
        TruncSeries {
            var: self.var,
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let proto = &self.coeffs[0];
        let mut s = TruncSeries::zero(self.var, order, proto);
        for k in 0..=order.min(self.order) {
            s.coeffs[k] = self.coeffs[k].clone();
        }
        s
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.var, o.var, "mixed series variables");
        assert_eq!(self.order, o.order, "mixed truncation orders");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        TruncSeries {
            var: self.var,
            order: self.order,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        TruncSeries {
            var: self.var,
            order: self.order,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        self.map(|a| a.scale(c))
    }

    pub fn scale_by(&self, c: &R) -> Self {
        self.map(|a| a.mul(c))
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let mut out = TruncSeries::zero(self.var, self.order, &self.coeffs[0]);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(self.order + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] = out.coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut r = TruncSeries::one(self.var, self.order, &self.coeffs[0]);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut out = TruncSeries::zero(self.var, self.order, &self.coeffs[0]);
        for i in 0..=self.order {
            if i + k <= self.order {
                out.coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        out
    }

    pub fn inv(&self) -> Result<Self> {
        let b0 = self.coeffs[0].try_inv()?;
        let mut out = TruncSeries::zero(self.var, self.order, &b0);
        out.coeffs[0] = b0.clone();
        for n in 1..=self.order {
            let mut acc = b0.zero_like();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc = acc.add(&self.coeffs[k].mul(&out.coeffs[n - k]));
                }
            }
            out.coeffs[n] = acc.mul(&b0).neg();
        }
        Ok(out)
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Sum `Σ c_k value^k` for a series `value` without constant term, or any value when finite.
    pub fn compose(&self, value: &TruncSeries<R>) -> Self {
        let mut acc = TruncSeries::zero(value.var, value.order, &self.coeffs[0]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(value);
            acc.coeffs[0] = acc.coeffs[0].add(c);
        }
        acc
    }
}

/// `s^a` for a series with constant term one, by the binomial series.
pub fn series_root_pow<R: Ring>(s: &TruncSeries<R>, a: &BigRat) -> Result<TruncSeries<R>> {
    if !s.coeffs[0].is_one() {
        return Err(AlgebraError::BadConstantTerm);
    }
    let mut u = s.clone();
    u.coeffs[0] = u.coeffs[0].zero_like();
    let one = s.coeffs[0].one_like();
    let mut out = TruncSeries::one(s.var, s.order, &one);
    let mut upow = out.clone();
    for k in 1..=s.order {
        upow = upow.mul(&u);
        let b = binom_rat(a, k);
        if !num_traits::Zero::is_zero(&b) {
            out = out.add(&upow.scale(&b));
        }
    }
    Ok(out)
}

impl<R: Ring> Ring for TruncSeries<R> {
    fn zero_like(&self) -> Self {
        TruncSeries::zero(self.var, self.order, &self.coeffs[0])
    }
    fn one_like(&self) -> Self {
        TruncSeries::one(self.var, self.order, &self.coeffs[0])
    }
    fn is_zero(&self) -> bool {
        TruncSeries::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        TruncSeries::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        TruncSeries::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        TruncSeries::mul(self, o)
    }
    fn neg(&self) -> Self {
        TruncSeries::neg(self)
    }
    fn try_inv(&self) -> Result<Self> {
        self.inv()
    }
    fn scale(&self, c: &BigRat) -> Self {
        TruncSeries::scale(self, c)
    }
}

impl<R: Ring + fmt::Display> fmt::Display for TruncSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({})*{}^{}", c, self.var, k))
            .collect();
        if parts.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", parts.join(" + "))?;
        }
        write!(f, " + O({}^{})", self.var, self.order + 1)
    }
}

impl<R: fmt::Debug> fmt::Debug for TruncSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruncSeries")
            .field("var", &self.var)
            .field("order", &self.order)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}
