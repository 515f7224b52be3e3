use std::collections::HashMap;

use crate::algebra::{factorial, int, BigRat, CohClass, RatFun, SeriesVar, TruncSeries};

use super::{edge_factor, restriction};

/// Series in `y` whose coefficients are truncated series in `z` over `ℚ(λ)`.
pub type TreeSeries = TruncSeries<TruncSeries<RatFun>>;

type YSeries = TruncSeries<RatFun>;

/// Nonincreasing lists of positive integers with sum at most `max`, including the empty list.
pub(crate) fn multisets(max: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, rem: usize, top: usize, out: &mut Vec<Vec<usize>>) {
        for d in (1..=rem.min(top)).rev() {
            cur.push(d);
            out.push(cur.clone());
            rec(cur, rem - d, d, out);
            cur.pop();
        }
    }
    let mut out = vec![vec![]];
    rec(&mut Vec::new(), max, max, &mut out);
    out
}

/// `∏ (multiplicity)!` over repeated entries of a sorted list.
fn symmetry(v: &[usize]) -> BigRat {
    let mut s = BigRat::from_integer(1.into());
    let mut i = 0;
    while i < v.len() {
        let j = v[i..].iter().take_while(|&&x| x == v[i]).count();
        s *= BigRat::from_integer(factorial(j));
        i += j;
    }
    s
}

fn pow_t(j: usize, e: i64) -> RatFun {
    let sign = if j == 1 && e.rem_euclid(2) == 1 { -1 } else { 1 };
    RatFun::lambda_pow(int(sign), e)
}

/// Memoised branch series.
///
/// A branch is an edge of degree `d` hanging below a parent at level `1 − q`
/// together with everything beyond its child vertex at level `q`.
struct Branches {
    order: usize,
    alpha: Option<(RatFun, RatFun)>,
    unmarked: HashMap<(usize, usize, usize), YSeries>,
    marked: HashMap<(usize, usize, usize), YSeries>,
}

impl Branches {
    fn new(order: usize, alpha: Option<&CohClass>) -> Self {
        Branches {
            order,
            alpha: alpha.map(|a| (restriction(a, 0), restriction(a, 1))),
            unmarked: HashMap::new(),
            marked: HashMap::new(),
        }
    }

    fn zero(&self) -> YSeries {
        TruncSeries::zero(SeriesVar::Y, self.order, &RatFun::zero())
    }

    /// `y^d · edge(d) · body`, with degrees above `budget` discarded.
    fn edge_term(&self, d: usize, budget: usize, body: &YSeries) -> YSeries {
        let mut out = body.scale_by(&edge_factor(d as u32)).shift(d);
        for k in budget + 1..=self.order {
            out.set_coeff(k, RatFun::zero());
        }
        out
    }

    fn unmarked(&mut self, q: usize, d: usize, budget: usize) -> YSeries {
        if d > budget {
            return self.zero();
        }
        if let Some(s) = self.unmarked.get(&(q, d, budget)) {
            return s.clone();
        }
        let p = 1 - q;
        let mut tot = self.zero();
        for subs in multisets(budget - d) {
            let r = subs.len() as i64 + 1;
            let big_d: usize = d + subs.iter().sum::<usize>();
            let prod_deg: usize = d * subs.iter().product::<usize>();
            // ∏δ_i · D^{r−3} · t^{2−r}
            let c = BigRat::from_integer((prod_deg as i64).into()) * pow_rat(big_d, r - 3) / symmetry(&subs);
            let mut body = TruncSeries::constant(SeriesVar::Y, self.order, pow_t(q, 2 - r).scale(&c));
            for &s in &subs {
                body = body.mul(&self.unmarked(p, s, budget - d));
            }
            tot = tot.add(&body);
        }
        let out = self.edge_term(d, budget, &tot);
        self.unmarked.insert((q, d, budget), out.clone());
        out
    }

    fn marked(&mut self, q: usize, d: usize, budget: usize) -> YSeries {
        if d > budget {
            return self.zero();
        }
        if let Some(s) = self.marked.get(&(q, d, budget)) {
            return s.clone();
        }
        let p = 1 - q;
        let alpha_q = {
            let a = self.alpha.as_ref().expect("marked branch needs an insertion");
            if q == 0 { a.0.clone() } else { a.1.clone() }
        };
        let mut tot = self.zero();
        // marking on the child vertex
        for subs in multisets(budget - d) {
            let r = subs.len() as i64 + 1;
            let big_d: usize = d + subs.iter().sum::<usize>();
            let prod_deg: usize = d * subs.iter().product::<usize>();
            let c = BigRat::from_integer((prod_deg as i64).into()) * pow_rat(big_d, r - 2) / symmetry(&subs);
            let mut body = TruncSeries::constant(
                SeriesVar::Y,
                self.order,
                pow_t(q, 1 - r).mul(&alpha_q).scale(&c),
            );
            for &s in &subs {
                body = body.mul(&self.unmarked(p, s, budget - d));
            }
            tot = tot.add(&body);
        }
        // marking further down one sub-branch of degree s0
        for s0 in 1..=budget - d {
            for subs in multisets(budget - d - s0) {
                let r = subs.len() as i64 + 2;
                let big_d: usize = d + s0 + subs.iter().sum::<usize>();
                let prod_deg: usize = d * s0 * subs.iter().product::<usize>();
                let c = BigRat::from_integer((prod_deg as i64).into()) * pow_rat(big_d, r - 3) / symmetry(&subs);
                let mut body = self.marked(p, s0, budget - d).scale_by(&pow_t(q, 2 - r).scale(&c));
                for &s in &subs {
                    body = body.mul(&self.unmarked(p, s, budget - d));
                }
                tot = tot.add(&body);
            }
        }
        let out = self.edge_term(d, budget, &tot);
        self.marked.insert((q, d, budget), out.clone());
        out
    }
}

fn pow_rat(base: usize, e: i64) -> BigRat {
    let b = int(base as i64);
    if e >= 0 {
        num_traits::pow(b, e as usize)
    } else {
        num_traits::pow(b.recip(), (-e) as usize)
    }
}

/// `λ/(λ/δ − z) = Σ_a δ^{a+1} z^a λ^{−a}`.
fn root_factor(delta: usize, z_order: usize) -> YSeries {
    let coeffs = (0..=z_order)
        .map(|a| RatFun::lambda_pow(pow_rat(delta, a as i64 + 1), -(a as i64)))
        .collect();
    TruncSeries::from_coeffs(SeriesVar::Z, z_order, &RatFun::zero(), coeffs)
}

fn attach_roots(
    y_order: usize,
    z_order: usize,
    constant: Option<RatFun>,
    mut branch: impl FnMut(usize) -> YSeries,
) -> TreeSeries {
    let zproto = TruncSeries::zero(SeriesVar::Z, z_order, &RatFun::zero());
    let mut out = TruncSeries::zero(SeriesVar::Y, y_order, &zproto);
    if let Some(c) = constant {
        out.set_coeff(0, TruncSeries::constant(SeriesVar::Z, z_order, c));
    }
    for d in 1..=y_order {
        let b = branch(d);
        let root = root_factor(d, z_order);
        for k in 0..=y_order {
            let c = b.coeff(k);
            if !crate::algebra::Ring::is_zero(c) {
                let v = out.coeff(k).add(&root.scale_by(c));
                out.set_coeff(k, v);
            }
        }
    }
    out
}

/// Generating series of trees at level 0 carrying the marking with insertion `alpha`.
pub fn tree_series_s(alpha: &CohClass, y_order: usize, z_order: usize) -> TreeSeries {
    let mut br = Branches::new(y_order, Some(alpha));
    attach_roots(y_order, z_order, Some(restriction(alpha, 0)), |d| br.marked(1, d, y_order))
}

/// Generating series of trees at level 0 carrying no marking.
pub fn tree_series_eps(y_order: usize, z_order: usize) -> TreeSeries {
    let mut br = Branches::new(y_order, None);
    attach_roots(y_order, z_order, None, |d| br.unmarked(1, d, y_order))
}
