use crate::algebra::{factorial, int, rat, series_root_pow, BigRat, CohClass, LaurentInLambda, RatFun, Ring, SeriesVar, TruncSeries};

use super::trees::{tree_series_eps, tree_series_s, TreeSeries};
use super::{phi_inf, phi_zero, P1Error};

type YSeries = TruncSeries<RatFun>;

fn z_coeff(s: &TreeSeries, a: usize) -> YSeries {
    s.map(|zs| {
        if a <= zs.order() {
            zs.coeff(a).clone()
        } else {
            RatFun::zero()
        }
    })
}

/// `S̃(α, 0)` from the tree series.
///
/// With `f = S(α, ·)` and `g = (f − f(0))/z`, the value is
/// `f(0) + Σ_{s ≥ 1} (1/s!) ∫_{M̄_{0,s+2}} g(ψ_k) ∏_{j=1}^{s} ε(ψ_j)`,
/// where the last point carries no ψ-class.
pub fn stilde_at_zero(alpha: &CohClass, y_order: usize) -> YSeries {
    let z_order = y_order.max(1);
    let f = tree_series_s(alpha, y_order, z_order);
    let eps = tree_series_eps(y_order, z_order);
    let yzero = TruncSeries::zero(SeriesVar::Y, y_order, &RatFun::zero());

    // ε̂(x) = Σ_b ε_b x^b / b!
    let e_hat: TruncSeries<YSeries> = TruncSeries::from_coeffs(
        SeriesVar::Z,
        z_order,
        &yzero,
        (0..=z_order)
            .map(|b| z_coeff(&eps, b).scale(&BigRat::from_integer(factorial(b)).recip()))
            .collect(),
    );

    let mut res = z_coeff(&f, 0);
    let mut power = e_hat.one_like();
    for s in 1..=y_order {
        power = power.mul(&e_hat);
        // ∫ ψ_k^a ∏ψ_j^{b_j} = (s−1)!/(a! ∏ b_j!)
        let mut tot = yzero.clone();
        for a in 0..s {
            let rest = s - 1 - a;
            if rest > z_order || a + 1 > z_order {
                continue;
            }
            let g_a = z_coeff(&f, a + 1).scale(&BigRat::from_integer(factorial(a)).recip());
            tot = tot.add(&g_a.mul(power.coeff(rest)));
        }
        res = res.add(&tot.scale(&rat(1, s as i64)));
    }
    res
}

/// `φ = 1 + 4y/λ²`.
pub fn phi(y_order: usize) -> YSeries {
    let mut s = TruncSeries::one(SeriesVar::Y, y_order, &RatFun::zero());
    s.set_coeff(1, RatFun::lambda_pow(int(4), -2));
    s
}

pub fn sqrt_phi(y_order: usize) -> YSeries {
    series_root_pow(&phi(y_order), &rat(1, 2)).expect("constant term is one")
}

/// `φ^{−1/4}`.
pub fn closed_form_stilde_one(y_order: usize) -> YSeries {
    series_root_pow(&phi(y_order), &rat(-1, 4)).expect("constant term is one")
}

/// `φ^{−1/4}(λ/2 + (λ/2)√φ)`.
pub fn closed_form_stilde_h(y_order: usize) -> YSeries {
    let half_l = RatFun::lambda().scale(&rat(1, 2));
    let one = TruncSeries::one(SeriesVar::Y, y_order, &RatFun::zero());
    let inner = one.add(&sqrt_phi(y_order)).scale_by(&half_l);
    closed_form_stilde_one(y_order).mul(&inner)
}

/// `(1 − √φ)/(1 + √φ)`.
pub fn irr_ratio_closed_form(y_order: usize) -> YSeries {
    let one = TruncSeries::one(SeriesVar::Y, y_order, &RatFun::zero());
    let r = sqrt_phi(y_order);
    one.sub(&r).div(&one.add(&r)).expect("1 + √φ is a unit")
}

#[derive(Debug, Clone)]
pub struct IrrRatioReport {
    pub ratio: YSeries,
    /// Expansion of each `y^k` coefficient at `λ = ∞`.
    pub expansions: Vec<LaurentInLambda>,
    /// `(k, c)` with `y^k` coefficient equal to `c · λ^{−2k}`.
    pub pure_powers: Vec<(usize, BigRat)>,
}

/// Checks `S̃(φ_∞,0)/S̃(φ₀,0) = (1−√φ)/(1+√φ)` and that each positive `y^k`
/// coefficient is a nonzero multiple of `λ^{−2k}`.
pub fn irr_ratio_check(y_order: usize) -> Result<IrrRatioReport, P1Error> {
    let num = stilde_at_zero(&phi_inf(), y_order);
    let den = stilde_at_zero(&phi_zero(), y_order);
    let ratio = num.div(&den)?;
    let expected = irr_ratio_closed_form(y_order);
    for k in 0..=y_order {
        if ratio.coeff(k) != expected.coeff(k) {
            return Err(P1Error::IdentityFailed {
                degree: k,
                expected: expected.coeff(k).to_string(),
                actual: ratio.coeff(k).to_string(),
            });
        }
    }
    let window = -2 * y_order as i64 - 2;
    let expansions = crate::algebra::laurent_expand(&ratio, window)?;
    let mut pure_powers = Vec::new();
    for k in 1..=y_order {
        match ratio.coeff(k).as_lambda_monomial() {
            Some((c, e)) if e == -2 * k as i64 => pure_powers.push((k, c)),
            _ => {
                return Err(P1Error::IdentityFailed {
                    degree: k,
                    expected: format!("c*l^{}", -2 * k as i64),
                    actual: ratio.coeff(k).to_string(),
                })
            }
        }
    }
    Ok(IrrRatioReport { ratio, expansions, pure_powers })
}
