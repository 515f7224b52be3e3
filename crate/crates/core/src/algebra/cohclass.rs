use std::fmt;

use super::poly::Var;
use super::ratfun::RatFun;
use super::{AlgebraError, BigRat, Result, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `H^r = 0`
    Nilpotent(usize),
    /// `H^2 = λH`
    ProjLine,
}

impl Relation {
    pub fn rank(&self) -> usize {
        match self {
            Relation::Nilpotent(r) => *r,
            Relation::ProjLine => 2,
        }
    }
}

/// `Σ c_k H^k` reduced modulo a relation, coefficients in `RatFun`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CohClass {
    relation: Relation,
    coeffs: Vec<RatFun>,
}

impl CohClass {
    pub fn from_coeffs(relation: Relation, mut coeffs: Vec<RatFun>) -> Self {
        let r = relation.rank();
        assert!(r >= 1, "relation rank must be positive");
        let mut extra = coeffs.split_off(r.min(coeffs.len()));
        coeffs.resize(r, RatFun::zero());
        let mut c = CohClass { relation, coeffs };
        if relation == Relation::ProjLine {
            // H^k = λ^{k-1} H
            for (i, e) in extra.drain(..).enumerate() {
                let k = i as i64 + 2;
                let f = RatFun::lambda_pow(BigRat::from_integer(1.into()), k - 1);
                c.coeffs[1] = c.coeffs[1].add(&e.mul(&f));
            }
        }
        c
    }

    pub fn scalar(relation: Relation, c: RatFun) -> Self {
        CohClass::from_coeffs(relation, vec![c])
    }

    pub fn zero(relation: Relation) -> Self {
        CohClass::from_coeffs(relation, vec![])
    }

    pub fn one(relation: Relation) -> Self {
        CohClass::scalar(relation, RatFun::one())
    }

    pub fn h(relation: Relation) -> Self {
        CohClass::from_coeffs(relation, vec![RatFun::zero(), RatFun::one()])
    }

    pub fn relation(&self) -> Relation {
        self.relation
    }

    pub fn coeffs(&self) -> &[RatFun] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> RatFun {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.relation, o.relation, "mixed cohomology relations");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        CohClass {
            relation: self.relation,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        CohClass {
            relation: self.relation,
            coeffs: self.coeffs.iter().map(|a| a.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        self.scale_by(&RatFun::constant(c.clone()))
    }

    pub fn scale_by(&self, f: &RatFun) -> Self {
        CohClass {
            relation: self.relation,
            coeffs: self.coeffs.iter().map(|a| a.mul(f)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let r = self.relation.rank();
        match self.relation {
            Relation::Nilpotent(_) => {
                let mut out = vec![RatFun::zero(); r];
                for (i, a) in self.coeffs.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in o.coeffs.iter().enumerate().take(r - i) {
                        if !b.is_zero() {
                            out[i + j] = out[i + j].add(&a.mul(b));
                        }
                    }
                }
                CohClass { relation: self.relation, coeffs: out }
            }
            Relation::ProjLine => {
                let (a0, a1) = (&self.coeffs[0], &self.coeffs[1]);
                let (b0, b1) = (&o.coeffs[0], &o.coeffs[1]);
                let c0 = a0.mul(b0);
                let c1 = a0
                    .mul(b1)
                    .add(&a1.mul(b0))
                    .add(&a1.mul(b1).mul(&RatFun::lambda()));
                CohClass { relation: self.relation, coeffs: vec![c0, c1] }
            }
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = CohClass::one(self.relation);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn inv(&self) -> Result<Self> {
        match self.relation {
            Relation::Nilpotent(r) => {
                let a0 = &self.coeffs[0];
                let a0i = a0.inv()?;
                // a = a0 (1 + n), n nilpotent
                let mut n = self.scale_by(&a0i);
                n.coeffs[0] = RatFun::zero();
                let mn = n.neg();
                let mut term = CohClass::one(self.relation);
                let mut acc = term.clone();
                for _ in 1..r {
                    term = term.mul(&mn);
                    acc = acc.add(&term);
                }
                Ok(acc.scale_by(&a0i))
            }
            Relation::ProjLine => {
                let (x0, xi) = self.restrictions();
                let (i0, ii) = (x0.inv()?, xi.inv()?);
                let b1 = i0.sub(&ii).div(&RatFun::lambda())?;
                Ok(CohClass { relation: self.relation, coeffs: vec![ii, b1] })
            }
        }
    }

    /// Restrictions `(α|_0, α|_∞)` of a projective-line class, with `H|_0 = λ`, `H|_∞ = 0`.
    pub fn restrictions(&self) -> (RatFun, RatFun) {
        assert_eq!(self.relation, Relation::ProjLine);
        let a0 = &self.coeffs[0];
        let a1 = &self.coeffs[1];
        (a0.add(&a1.mul(&RatFun::lambda())), a0.clone())
    }

    /// Substitute `z := value` in every coefficient.
    pub fn substitute_coeffs(&self, v: Var, value: &RatFun) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.substitute(v, value))
            .collect::<Result<Vec<_>>>()?;
        Ok(CohClass { relation: self.relation, coeffs })
    }

    /// Top-degree part in `λ` of every coefficient, weighting `H` like `λ`.
    pub fn is_homogeneous_of(&self, deg: i64) -> bool {
        self.coeffs.iter().enumerate().all(|(k, c)| {
            c.is_zero() || c.homogeneous_degree() == Some(deg - k as i64)
        })
    }
}

impl Ring for CohClass {
    fn zero_like(&self) -> Self {
        CohClass::zero(self.relation)
    }
    fn one_like(&self) -> Self {
        CohClass::one(self.relation)
    }
    fn is_zero(&self) -> bool {
        CohClass::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        CohClass::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        CohClass::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        CohClass::mul(self, o)
    }
    fn neg(&self) -> Self {
        CohClass::neg(self)
    }
    fn try_inv(&self) -> Result<Self> {
        self.inv()
    }
    fn scale(&self, c: &BigRat) -> Self {
        CohClass::scale(self, c)
    }
}

/// Substitute `z := value` into a rational function of `λ, z`.
pub fn substitute_z(expr: &RatFun, value: &CohClass) -> Result<CohClass> {
    let rel = value.relation();
    let horner = |p: &super::Poly| {
        let coll = p.collect(Var::Z);
        let top = coll.keys().next_back().copied().unwrap_or(0);
        let mut acc = CohClass::zero(rel);
        for k in (0..=top).rev() {
            acc = acc.mul(value);
            if let Some(c) = coll.get(&k) {
                acc = acc.add(&CohClass::scalar(rel, RatFun::from_poly(c.clone())));
            }
        }
        acc
    };
    let n = horner(expr.numer());
    let d = horner(expr.denom());
    let di = d.inv().map_err(|e| match e {
        AlgebraError::DivisionByNonUnit => AlgebraError::SubstitutionPole,
        e => e,
    })?;
    Ok(n.mul(&di))
}

impl fmt::Debug for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({})", c),
                1 => format!("({})*H", c),
                _ => format!("({})*H^{}", c, k),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
