//! p-distances between shifted window vectors, the shift-2 and shift-3
//! closed forms, the 1-norm sum/difference law, the parallelogram law,
//! and the golden-ratio approximation with explicit error tracking.
//!
//! Only shifts d = 2 and d = 3 admit closed forms: F(m+d) - F(m) equals
//! F(d) * F(m+1) exactly when F(d-1) = 1, i.e. d in {2, 3}. Other shifts
//! fall back to direct exact evaluation.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::fib::{fib, GoldenConstants};
use crate::norm::{pdistance, pnorm, ExactVector, NormOrder, PNormResult};
use crate::real::{Precision, Real};
use crate::structs::fib_window;

/// Two window vectors of equal length r whose elements sit d positions
/// apart in the sequence: x = window(n+d, r), y = window(n, r).
#[derive(Clone, Debug)]
pub struct ShiftedPair {
    pub n: u64,
    pub r: u64,
    pub d: u64,
    pub x: ExactVector,
    pub y: ExactVector,
}

impl ShiftedPair {
    pub fn new(n: u64, r: u64, d: u64) -> ShiftedPair {
        assert!(r >= 1 && d >= 1, "need r >= 1 and d >= 1");
        ShiftedPair { n, r, d, x: fib_window(n + d, r), y: fib_window(n, r) }
    }

    /// Exact power sum of the p-distance between the pair.
    pub fn distance_power_sum(&self, p: u32, prec: Precision) -> BigInt {
        let result = pdistance(&self.x, &self.y, NormOrder::Integer(p as i64), prec)
            .expect("equal lengths");
        result.exact.expect("positive integer order").to_integer()
    }

    pub fn distance(&self, order: NormOrder, prec: Precision) -> PNormResult {
        pdistance(&self.x, &self.y, order, prec).expect("equal lengths")
    }
}

/// Closed form of the shift-2 distance power sum: sum of F(n+i+1)^p
/// over i = 1..r. Every difference F(n+i+2) - F(n+i) is F(n+i+1).
pub fn d2_power_sum_closed(n: u64, r: u64, p: u32) -> BigInt {
    (1..=r).map(|i| fib(n + i + 1).pow(p)).sum()
}

/// Closed form of the shift-3 distance power sum: F(3)^p * sum F(n+i+1)^p,
/// using F(m+3) - F(m) = 2 F(m+1).
pub fn d3_power_sum_closed(n: u64, r: u64, p: u32) -> BigInt {
    BigInt::from(2u32).pow(p) * d2_power_sum_closed(n, r, p)
}

/// Whether F(m+d) - F(m) == F(d) * F(m+1) for every m in 1..=limit.
/// True only for d = 2 and d = 3; used by tests to document why only
/// those shifts get closed forms.
pub fn shift_identity_holds(d: u64, limit: u64) -> bool {
    (1..=limit).all(|m| fib(m + d) - fib(m) == fib(d) * fib(m + 1))
}

/// The 1-norm sum/difference law: ||x+y||_1 + ||x-y||_1 computed directly
/// and via the closed form 2 (F(n+r+d+2) - F(n+d+2)).
///
/// Valid for n >= 1 (elementwise x >= y makes the absolute values drop);
/// the n = 0 boundary also satisfies the law (first difference F(d+1)-F(1)
/// is still non-negative) and is covered by tests, but the constructor
/// keeps the documented domain.
#[derive(Clone, Debug)]
pub struct SumDiffReport {
    pub n: u64,
    pub r: u64,
    pub d: u64,
    pub direct: BigInt,
    pub closed: BigInt,
}

impl SumDiffReport {
    pub fn agrees(&self) -> bool {
        self.direct == self.closed
    }
}

pub fn sum_diff_one_norm(n: u64, r: u64, d: u64, prec: Precision) -> SumDiffReport {
    assert!(n >= 1, "the closed form is claimed for n >= 1");
    sum_diff_one_norm_unchecked(n, r, d, prec)
}

/// Same computation without the domain clamp; used to probe the n = 0
/// boundary by oracle.
pub fn sum_diff_one_norm_unchecked(n: u64, r: u64, d: u64, prec: Precision) -> SumDiffReport {
    let pair = ShiftedPair::new(n, r, d);
    let sum = pair.x.add(&pair.y).expect("equal lengths");
    let norm_sum = pnorm(&sum, NormOrder::Integer(1), prec).expect("in-domain");
    let norm_diff = pair.distance(NormOrder::Integer(1), prec);
    let direct = (norm_sum.exact.unwrap() + norm_diff.exact.unwrap()).to_integer();
    let closed = (fib(n + r + d + 2) - fib(n + d + 2)) * 2;
    SumDiffReport { n, r, d, direct, closed }
}

/// All four exact quantities of the parallelogram law at order 2:
/// ||x+y||^2, ||x-y||^2, 2(||x||^2 + ||y||^2) directly, and the same
/// right-hand side through the consecutive-product closed forms.
#[derive(Clone, Debug)]
pub struct ParallelogramReport {
    pub n: u64,
    pub r: u64,
    pub d: u64,
    pub sum_sq: BigInt,
    pub diff_sq: BigInt,
    pub rhs_direct: BigInt,
    pub rhs_closed: BigInt,
}

impl ParallelogramReport {
    /// The law itself: ||x+y||^2 + ||x-y||^2 == 2(||x||^2 + ||y||^2).
    pub fn law_holds(&self) -> bool {
        &self.sum_sq + &self.diff_sq == self.rhs_direct
    }

    pub fn closed_matches(&self) -> bool {
        self.rhs_direct == self.rhs_closed
    }

    pub fn lhs(&self) -> BigInt {
        &self.sum_sq + &self.diff_sq
    }
}

pub fn parallelogram_check(n: u64, r: u64, d: u64, prec: Precision) -> ParallelogramReport {
    let pair = ShiftedPair::new(n, r, d);
    let sum = pair.x.add(&pair.y).expect("equal lengths");
    let two = NormOrder::Integer(2);
    let sum_sq = pnorm(&sum, two, prec).expect("in-domain").exact.unwrap().to_integer();
    let diff_sq = pair.distance(two, prec).exact.unwrap().to_integer();
    let x_sq = pnorm(&pair.x, two, prec).expect("in-domain").exact.unwrap().to_integer();
    let y_sq = pnorm(&pair.y, two, prec).expect("in-domain").exact.unwrap().to_integer();
    let rhs_direct = (x_sq + y_sq) * 2;
    // squared 2-norms of the windows as consecutive-product differences
    let x_sq_closed = fib(n + r + d) * fib(n + r + d + 1) - fib(n + d) * fib(n + d + 1);
    let y_sq_closed = fib(n + r) * fib(n + r + 1) - fib(n) * fib(n + 1);
    let rhs_closed = (x_sq_closed + y_sq_closed) * 2;
    ParallelogramReport { n, r, d, sum_sq, diff_sq, rhs_direct, rhs_closed }
}

/// The golden-ratio approximation of 2(||x||^2 + ||y||^2) by
/// 2 phi (F(n+r+d)^2 - F(n+d)^2 + F(n+r)^2 - F(n)^2), with exact value,
/// approximation, and both error measures.
#[derive(Clone, Debug)]
pub struct GoldenApproxReport {
    pub n: u64,
    pub r: u64,
    pub d: u64,
    pub exact: BigInt,
    pub approx: Real,
    pub abs_err: Real,
    pub rel_err: f64,
}

pub fn golden_approx(n: u64, r: u64, d: u64, prec: Precision) -> GoldenApproxReport {
    let report = parallelogram_check(n, r, d, prec);
    let exact = report.rhs_direct.clone();
    let g = GoldenConstants::new(prec);
    let squares =
        fib(n + r + d).pow(2) - fib(n + d).pow(2) + fib(n + r).pow(2) - fib(n).pow(2);
    let approx = g.phi.mul(&Real::from_bigint(&squares, prec)).mul(&Real::from_u64(2, prec));
    let exact_r = Real::from_bigint(&exact, prec);
    let abs_err = exact_r.sub(&approx).abs();
    let rel_err = if exact.is_zero() { 0.0 } else { abs_err.div(&exact_r).to_f64() };
    GoldenApproxReport { n, r, d, exact, approx, abs_err, rel_err }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: Precision = Precision::DEFAULT;

    #[test]
    fn shifted_pair_construction() {
        let pair = ShiftedPair::new(1, 3, 2);
        assert_eq!(pair.x, fib_window(3, 3)); // (3, 5, 8)
        assert_eq!(pair.y, fib_window(1, 3)); // (1, 2, 3)
    }

    #[test]
    fn d2_closed_form_examples() {
        // F3 + F4 + F5 = 2 + 3 + 5
        assert_eq!(d2_power_sum_closed(1, 3, 1), BigInt::from(10));
        // single-term case collapses to F(n+2)
        for n in 0..=20u64 {
            assert_eq!(d2_power_sum_closed(n, 1, 1), fib(n + 2));
        }
        // squared-difference example at n=2, r=4
        let expect: BigInt = (4..=7u64).map(|i| fib(i).pow(2)).sum();
        assert_eq!(d2_power_sum_closed(2, 4, 2), expect);
    }

    #[test]
    fn d3_closed_form_examples() {
        // x = (5, 8), y = (1, 2): diffs (4, 6), 1-norm 10 = 2 (F3 + F4)
        assert_eq!(d3_power_sum_closed(1, 2, 1), BigInt::from(10));
        // p = 1 is exactly twice the shift-2 form
        for n in 0..=10u64 {
            for r in 1..=6 {
                assert_eq!(
                    d3_power_sum_closed(n, r, 1),
                    d2_power_sum_closed(n, r, 1) * 2
                );
            }
        }
        // 4 (F2^2 + F3^2 + F4^2)
        let expect: BigInt = BigInt::from(4) * (fib(2).pow(2) + fib(3).pow(2) + fib(4).pow(2));
        assert_eq!(d3_power_sum_closed(0, 3, 2), expect);
    }

    #[test]
    fn closed_forms_match_direct_distances() {
        for n in 0..=25u64 {
            for r in 1..=10 {
                for p in 1..=3u32 {
                    let pair2 = ShiftedPair::new(n, r, 2);
                    assert_eq!(
                        pair2.distance_power_sum(p, P),
                        d2_power_sum_closed(n, r, p),
                        "d=2 n={n} r={r} p={p}"
                    );
                    let pair3 = ShiftedPair::new(n, r, 3);
                    assert_eq!(
                        pair3.distance_power_sum(p, P),
                        d3_power_sum_closed(n, r, p),
                        "d=3 n={n} r={r} p={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn shift_identity_only_for_2_and_3() {
        assert!(shift_identity_holds(2, 300));
        assert!(shift_identity_holds(3, 300));
        for d in [1u64, 4, 5] {
            assert!(!shift_identity_holds(d, 300), "d={d} unexpectedly holds");
        }
    }

    #[test]
    fn sum_diff_law_examples() {
        // (4,7,11) and (2,3,5): 22 + 10 = 32 = 2 (F8 - F5)
        let rep = sum_diff_one_norm(1, 3, 2, P);
        assert_eq!(rep.direct, BigInt::from(32));
        assert!(rep.agrees());

        // boundary probe r=1, d=1: x=(2), y=(1): 3 + 1 = 4 = 2 (F5 - F4)
        let rep = sum_diff_one_norm(1, 1, 1, P);
        assert_eq!(rep.direct, BigInt::from(4));
        assert!(rep.agrees());
    }

    #[test]
    fn sum_diff_law_holds_on_grid_and_at_n0() {
        for n in 1..=20u64 {
            for r in 1..=8 {
                for d in 1..=4 {
                    assert!(sum_diff_one_norm(n, r, d, P).agrees(), "n={n} r={r} d={d}");
                }
            }
        }
        // the n = 0 boundary, where the first difference can be 0
        for r in 1..=8u64 {
            for d in 1..=4 {
                assert!(sum_diff_one_norm_unchecked(0, r, d, P).agrees(), "r={r} d={d}");
            }
        }
    }

    #[test]
    fn parallelogram_worked_example() {
        let rep = parallelogram_check(1, 3, 2, P);
        assert_eq!(rep.lhs(), BigInt::from(224));
        assert_eq!(rep.rhs_direct, BigInt::from(224));
        assert_eq!(rep.rhs_closed, BigInt::from(224));
        assert!(rep.law_holds() && rep.closed_matches());
    }

    #[test]
    fn parallelogram_is_algebraic() {
        for n in 0..=15u64 {
            for r in 1..=6 {
                for d in 1..=4 {
                    let rep = parallelogram_check(n, r, d, P);
                    assert!(rep.law_holds(), "law n={n} r={r} d={d}");
                    assert!(rep.closed_matches(), "closed n={n} r={r} d={d}");
                }
            }
        }
    }

    #[test]
    fn golden_approx_worked_example() {
        let rep = golden_approx(1, 3, 2, P);
        assert_eq!(rep.exact, BigInt::from(224));
        let approx = rep.approx.to_f64();
        assert!((approx - 220.05).abs() < 0.05, "approx={approx}");
        assert!((rep.rel_err - 0.0176).abs() < 0.001, "rel={}", rep.rel_err);
    }

    #[test]
    fn golden_approx_error_decays() {
        let rep10 = golden_approx(10, 3, 2, P);
        assert!(rep10.rel_err < 1e-3);
        let rep20 = golden_approx(20, 3, 2, P);
        assert!(rep20.rel_err < rep10.rel_err);
        // degenerate small case still computes
        let rep0 = golden_approx(0, 1, 1, P);
        assert!(rep0.rel_err > 0.0);
    }
}
