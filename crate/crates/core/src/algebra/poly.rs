//! Sparse polynomials in the two equivariant parameters `λ` and `z` over ℚ.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::BigRat;

/// Exponent pair `λ^l z^z`, ordered graded-lexicographically with `λ > z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mono {
    pub l: u32,
    pub z: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { l: 0, z: 0 };

    pub fn new(l: u32, z: u32) -> Self {
        Mono { l, z }
    }

    pub fn degree(&self) -> u32 {
        self.l + self.z
    }

    fn divides(&self, other: &Mono) -> bool {
        self.l <= other.l && self.z <= other.z
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono::new(self.l + other.l, self.z + other.z)
    }

    fn div(&self, other: &Mono) -> Mono {
        Mono::new(self.l - other.l, self.z - other.z)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.l.cmp(&other.l))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Which of the two variables a univariate operation acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Lambda,
    Z,
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, BigRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Poly::monomial(c, Mono::ONE)
    }

    pub fn monomial(c: BigRat, m: Mono) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::Lambda => Poly::monomial(BigRat::one(), Mono::new(1, 0)),
            Var::Z => Poly::monomial(BigRat::one(), Mono::new(0, 1)),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, BigRat)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &BigRat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Mono::ONE)
    }

    pub fn constant_value(&self) -> Option<BigRat> {
        if self.is_zero() {
            Some(BigRat::zero())
        } else if self.is_constant() {
            self.terms.get(&Mono::ONE).cloned()
        } else {
            None
        }
    }

    pub fn coeff(&self, m: Mono) -> BigRat {
        self.terms.get(&m).cloned().unwrap_or_else(BigRat::zero)
    }

    fn add_term(&mut self, m: Mono, c: BigRat) {
        if c.is_zero() {
            return;
        }
        let remove = {
            let e = self.terms.entry(m).or_insert_with(BigRat::zero);
            *e += c;
            e.is_zero()
        };
        if remove {
            self.terms.remove(&m);
        }
    }

    /// Leading monomial and coefficient under grlex.
    pub fn lead(&self) -> Option<(Mono, &BigRat)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| match v {
                Var::Lambda => m.l,
                Var::Z => m.z,
            })
            .max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn min_total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn involves(&self, v: Var) -> bool {
        self.degree_in(v).map_or(false, |d| d > 0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.total_degree() == self.min_total_degree()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, -c.clone());
        }
        r
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: Mono) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(&m), c.clone())).collect(),
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::one();
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Exact quotient, or `None` when `o` does not divide `self`.
    pub fn div_exact(&self, o: &Poly) -> Option<Poly> {
        let (lm, lc) = o.lead()?;
        let lc = lc.clone();
        let mut rem = self.clone();
        let mut q = Poly::zero();
        while let Some((rm, rc)) = rem.lead() {
            if !lm.divides(&rm) {
                return None;
            }
            let qm = rm.div(&lm);
            let qc = rc / &lc;
            rem = rem.sub(&o.mul_mono(qm).scale(&qc));
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// Coefficients as a polynomial in `v`, each coefficient free of `v`.
    pub fn collect(&self, v: Var) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (k, rest) = match v {
                Var::Lambda => (m.l, Mono::new(0, m.z)),
                Var::Z => (m.z, Mono::new(m.l, 0)),
            };
            out.entry(k).or_default().add_term(rest, c.clone());
        }
        out
    }

    fn lc_in(&self, v: Var) -> Poly {
        let d = self.degree_in(v).unwrap_or(0);
        self.collect(v).remove(&d).unwrap_or_default()
    }

    /// Substitute `v := value` where `value` is itself a polynomial.
    pub fn substitute(&self, v: Var, value: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (k, c) in self.collect(v) {
            r = r.add(&c.mul(&value.pow(k)));
        }
        r
    }

    /// Evaluate at `λ = l`, `z = z`.
    pub fn eval(&self, l: &BigRat, z: &BigRat) -> BigRat {
        let mut r = BigRat::zero();
        for (m, c) in &self.terms {
            r += c * num_traits::pow(l.clone(), m.l as usize) * num_traits::pow(z.clone(), m.z as usize);
        }
        r
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Gcd of the numerators of an integral polynomial.
    pub fn integer_content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()))
    }

    /// Scale to integer coefficients with unit content and positive leading coefficient.
    pub fn primitive_integral(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let l = BigRat::from_integer(self.denominator_lcm());
        let p = self.scale(&l);
        let mut c = BigRat::from_integer(p.integer_content());
        if p.lead().map_or(false, |(_, lc)| lc.is_negative()) {
            c = -c;
        }
        p.scale(&c.recip())
    }

    fn monic(&self) -> Poly {
        match self.lead() {
            Some((_, lc)) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
            None => Poly::zero(),
        }
    }

    fn min_mono(&self) -> Mono {
        let l = self.terms.keys().map(|m| m.l).min().unwrap_or(0);
        let z = self.terms.keys().map(|m| m.z).min().unwrap_or(0);
        Mono::new(l, z)
    }

    /// Division with remainder for polynomials in the single variable `v`.
    fn div_rem_uni(&self, o: &Poly, v: Var) -> (Poly, Poly) {
        let deg = |p: &Poly| p.degree_in(v).unwrap_or(0);
        let od = deg(o);
        let olc = o.lc_in(v).constant_value().expect("univariate divisor");
        let mut q = Poly::zero();
        let mut r = self.clone();
        while !r.is_zero() && deg(&r) >= od {
            let k = deg(&r) - od;
            let rlc = r.lc_in(v).constant_value().expect("univariate dividend");
            let m = match v {
                Var::Lambda => Mono::new(k, 0),
                Var::Z => Mono::new(0, k),
            };
            let c = rlc / &olc;
            r = r.sub(&o.mul_mono(m).scale(&c));
            q.add_term(m, c);
        }
        (q, r)
    }

    fn gcd_uni(a: &Poly, b: &Poly, v: Var) -> Poly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem_uni(&b, v);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Content with respect to `z`: gcd of the λ-polynomial coefficients.
    fn content_z(&self) -> Poly {
        let mut g = Poly::zero();
        for c in self.collect(Var::Z).values() {
            g = if g.is_zero() {
                c.monic()
            } else {
                Poly::gcd_uni(&g, c, Var::Lambda)
            };
            if g.is_constant() {
                return Poly::one();
            }
        }
        g
    }

    fn pp_z(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let c = self.content_z();
        self.div_exact(&c).expect("content divides")
    }

    fn prem_z(a: &Poly, b: &Poly) -> Poly {
        let db = b.degree_in(Var::Z).unwrap_or(0);
        let lb = b.lc_in(Var::Z);
        let mut r = a.clone();
        while !r.is_zero() && r.degree_in(Var::Z).unwrap_or(0) >= db {
            let k = r.degree_in(Var::Z).unwrap_or(0) - db;
            let lr = r.lc_in(Var::Z);
            r = r.mul(&lb).sub(&b.mul_mono(Mono::new(0, k)).mul(&lr));
        }
        r
    }

    /// Greatest common divisor, normalised to integral primitive form.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.primitive_integral();
        }
        if b.is_zero() {
            return a.primitive_integral();
        }
        if a.len() == 1 || b.len() == 1 {
            let (ma, mb) = (a.min_mono(), b.min_mono());
            return Poly::monomial(
                BigRat::one(),
                Mono::new(ma.l.min(mb.l), ma.z.min(mb.z)),
            );
        }
        let az = a.involves(Var::Z) || b.involves(Var::Z);
        let al = a.involves(Var::Lambda) || b.involves(Var::Lambda);
        let g = match (al, az) {
            (false, false) => Poly::one(),
            (true, false) => Poly::gcd_uni(a, b, Var::Lambda),
            (false, true) => Poly::gcd_uni(a, b, Var::Z),
            (true, true) => {
                let c = Poly::gcd_uni(&a.content_z(), &b.content_z(), Var::Lambda);
                let mut p = a.pp_z();
                let mut q = b.pp_z();
                if p.degree_in(Var::Z) < q.degree_in(Var::Z) {
                    std::mem::swap(&mut p, &mut q);
                }
                while !q.is_zero() {
                    let r = Poly::prem_z(&p, &q);
                    p = q;
                    q = r.pp_z();
                }
                let prim = if p.involves(Var::Z) { p.pp_z() } else { Poly::one() };
                c.mul(&prim)
            }
        };
        g.primitive_integral()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = a.is_one() && *m != Mono::ONE;
            if !unit {
                write!(f, "{}", a)?;
                if *m != Mono::ONE {
                    write!(f, "*")?;
                }
            }
            let mut parts = Vec::new();
            if m.l == 1 {
                parts.push("l".to_string());
            } else if m.l > 1 {
                parts.push(format!("l^{}", m.l));
            }
            if m.z == 1 {
                parts.push("z".to_string());
            } else if m.z > 1 {
                parts.push(format!("z^{}", m.z));
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}
