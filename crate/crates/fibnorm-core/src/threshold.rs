//! The threshold exponent: how large p must be before the p-norm of the
//! prefix vector sits within epsilon of the sup-norm.
//!
//! The bound p >= ln(n) / ln(eps/F(n) + 1) is sufficient, not minimal; a
//! bisection companion quantifies the slack.

use crate::error::{Error, Result};
use crate::fib::fib;
use crate::real::{Precision, Real};

/// A threshold question: vector length n >= 2 and a positive gap epsilon.
///
/// n = 1 is rejected outright: every p-norm of a single-entry vector equals
/// that entry, so any p works and the bound ln(1)/... is vacuous.
#[derive(Clone, Copy, Debug)]
pub struct ThresholdQuery {
    n: u64,
    epsilon: f64,
}

impl ThresholdQuery {
    pub fn new(n: u64, epsilon: f64) -> Result<ThresholdQuery> {
        if n < 2 {
            return Err(Error::DegenerateThreshold(n));
        }
        if epsilon.is_nan() || epsilon <= 0.0 || epsilon.is_infinite() {
            return Err(Error::InvalidEpsilon(epsilon));
        }
        Ok(ThresholdQuery { n, epsilon })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

/// The sufficient exponent ln(n) / ln(eps/F(n) + 1) at working precision.
pub fn threshold_exponent(q: ThresholdQuery, prec: Precision) -> Real {
    let n = Real::from_u64(q.n, prec);
    let fn_exact = Real::from_bigint(&fib(q.n), prec);
    let eps = Real::from_f64(q.epsilon, prec);
    let denom = eps.div(&fn_exact).add(&Real::one(prec)).ln();
    n.ln().div(&denom)
}

/// The gap ||q_n||_p - F(n), evaluated in the max-factored form
/// F(n) * ((sum (F_i/F_n)^p)^(1/p) - 1) so that huge p cannot overflow:
/// ratio powers underflow to zero harmlessly.
pub fn norm_gap(n: u64, p: &Real, prec: Precision) -> Real {
    let fn_exact = Real::from_bigint(&fib(n), prec);
    let mut sum = Real::zero(prec);
    for i in 1..=n {
        let ratio = Real::from_bigint(&fib(i), prec).div(&fn_exact);
        sum = sum.add(&ratio.pow(p));
    }
    let root = sum.pow(&p.recip());
    fn_exact.mul(&root.sub(&Real::one(prec)))
}

/// Empirically smallest exponent achieving gap <= eps, by bisection to
/// 1e-6 absolute. Always <= the sufficient bound, quantifying its slack.
pub fn minimal_exponent(q: ThresholdQuery, prec: Precision) -> f64 {
    let eps = Real::from_f64(q.epsilon, prec);
    let bound = threshold_exponent(q, prec).to_f64();
    let gap_ok = |p: f64| -> bool {
        let g = norm_gap(q.n, &Real::from_f64(p, prec), prec);
        g.compare(&eps) != Some(std::cmp::Ordering::Greater)
    };
    let mut hi = bound.max(1e-6);
    if gap_ok(1e-9) {
        return 1e-9;
    }
    let mut lo = 1e-9_f64;
    // the gap is decreasing in p, so the bound itself must qualify
    debug_assert!(gap_ok(hi));
    while hi - lo > 1e-6 {
        let mid = lo + (hi - lo) / 2.0;
        if gap_ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Everything the threshold theorem asserts, checked at one query.
#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub n: u64,
    pub epsilon: f64,
    /// The sufficient exponent from the closed form.
    pub p_bound: f64,
    /// The bisected smallest exponent achieving the gap.
    pub p_empirical: f64,
    /// Gap at the sufficient exponent; must be <= eps * (1 + 1e-9).
    pub gap_at_bound: f64,
    /// The relaxation n^(1/p) F(n) - F(n) at the bound; equals eps there.
    pub holder_gap_at_bound: f64,
    /// (p, gap) along the requested grid of offsets above the bound.
    pub grid_gaps: Vec<(f64, f64)>,
    pub bound_holds: bool,
    pub holder_equality: bool,
    pub gaps_non_increasing: bool,
}

impl TheoremReport {
    pub fn all_good(&self) -> bool {
        self.bound_holds && self.holder_equality && self.gaps_non_increasing
    }
}

const REL_TOL: f64 = 1e-9;

/// Verifies the theorem at one query: the gap at the bound stays within
/// epsilon, the relaxed bound is tight there, and the gap keeps shrinking
/// along `margin_grid` offsets above the bound.
pub fn verify_theorem(
    q: ThresholdQuery,
    margin_grid: &[f64],
    prec: Precision,
) -> TheoremReport {
    let p_bound_hp = threshold_exponent(q, prec);
    let p_bound = p_bound_hp.to_f64();
    let eps = q.epsilon;

    let gap_at_bound = norm_gap(q.n, &p_bound_hp, prec).to_f64();
    let bound_holds = gap_at_bound <= eps * (1.0 + REL_TOL);

    // n^(1/p*) F(n) - F(n) collapses to eps exactly, up to rounding
    let fn_exact = Real::from_bigint(&fib(q.n), prec);
    let n_pow = Real::from_u64(q.n, prec).pow(&p_bound_hp.recip());
    let holder_gap_at_bound = n_pow.mul(&fn_exact).sub(&fn_exact).to_f64();
    let holder_equality = (holder_gap_at_bound - eps).abs() <= eps * 1e-6;

    let mut grid_gaps = Vec::with_capacity(margin_grid.len());
    for &off in margin_grid {
        let p = p_bound + off;
        let g = norm_gap(q.n, &Real::from_f64(p, prec), prec).to_f64();
        grid_gaps.push((p, g));
    }
    let gaps_non_increasing = grid_gaps
        .windows(2)
        .all(|w| w[1].1 <= w[0].1 * (1.0 + REL_TOL) + f64::MIN_POSITIVE);

    let p_empirical = minimal_exponent(q, prec);

    TheoremReport {
        n: q.n,
        epsilon: eps,
        p_bound,
        p_empirical,
        gap_at_bound,
        holder_gap_at_bound,
        grid_gaps,
        bound_holds,
        holder_equality,
        gaps_non_increasing,
    }
}

/// Upper bound of the norm by the relaxation: ||q_n||_p <= n^(1/p) * F(n).
pub fn holder_upper_bound_holds(n: u64, p: f64, prec: Precision) -> bool {
    let pr = Real::from_f64(p, prec);
    let fn_exact = Real::from_bigint(&fib(n), prec);
    let lhs = norm_gap(n, &pr, prec).add(&fn_exact); // the norm itself
    let rhs = Real::from_u64(n, prec).pow(&pr.recip()).mul(&fn_exact);
    let slack = rhs.mul(&Real::from_f64(REL_TOL, prec));
    lhs.compare(&rhs.add(&slack)) != Some(std::cmp::Ordering::Greater)
}
