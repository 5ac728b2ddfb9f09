//! Fixed-precision real arithmetic used for every non-exact code path.
//!
//! Exact quantities stay in `BigInt`/`BigRational`; only final roots,
//! logarithms and error estimates are floated, always at an explicit
//! working precision (128 significand bits unless overridden).

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Working precision in significand bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision(u32);

impl Precision {
    pub const DEFAULT: Precision = Precision(128);
    const MIN_BITS: u32 = 32;

    /// Clamps to at least 32 bits; below that the root/log kernels degrade.
    pub fn new(bits: u32) -> Precision {
        Precision(bits.max(Self::MIN_BITS))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    fn p(self) -> usize {
        self.0 as usize
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::DEFAULT
    }
}

/// A real number carried at a fixed working precision.
#[derive(Clone, Debug)]
pub struct Real {
    x: BigFloat,
    prec: Precision,
}

impl Real {
    pub fn zero(prec: Precision) -> Real {
        Real { x: BigFloat::from_u64(0, prec.p()), prec }
    }

    pub fn one(prec: Precision) -> Real {
        Real { x: BigFloat::from_u64(1, prec.p()), prec }
    }

    pub fn from_u64(v: u64, prec: Precision) -> Real {
        Real { x: BigFloat::from_u64(v, prec.p()), prec }
    }

    pub fn from_i64(v: i64, prec: Precision) -> Real {
        Real { x: BigFloat::from_i64(v, prec.p()), prec }
    }

    pub fn from_f64(v: f64, prec: Precision) -> Real {
        Real { x: BigFloat::from_f64(v, prec.p()), prec }
    }

    pub fn infinity(prec: Precision) -> Real {
        Real { x: astro_float::INF_POS, prec }
    }

    /// Exact integer rounded to the working precision (error < 1 ulp).
    pub fn from_bigint(v: &BigInt, prec: Precision) -> Real {
        if v.is_zero() {
            return Real::zero(prec);
        }
        let mag = v.magnitude();
        let bits = mag.bits();
        // from_words wants the top bit of the top word set
        let shift = (64 - (bits % 64)) % 64;
        let shifted = mag << shift;
        let words = shifted.to_u64_digits();
        let sign = if v.sign() == num_bigint::Sign::Minus { Sign::Neg } else { Sign::Pos };
        let mut x = BigFloat::from_words(&words, sign, bits as i32);
        x.set_precision(prec.p(), RM).expect("set precision");
        Real { x, prec }
    }

    pub fn from_ratio(v: &BigRational, prec: Precision) -> Real {
        let num = Real::from_bigint(v.numer(), prec);
        let den = Real::from_bigint(v.denom(), prec);
        num.div(&den)
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    fn join(&self, rhs: &Real) -> Precision {
        Precision(self.prec.0.max(rhs.prec.0))
    }

    pub fn add(&self, rhs: &Real) -> Real {
        let prec = self.join(rhs);
        Real { x: self.x.add(&rhs.x, prec.p(), RM), prec }
    }

    pub fn sub(&self, rhs: &Real) -> Real {
        let prec = self.join(rhs);
        Real { x: self.x.sub(&rhs.x, prec.p(), RM), prec }
    }

    pub fn mul(&self, rhs: &Real) -> Real {
        let prec = self.join(rhs);
        Real { x: self.x.mul(&rhs.x, prec.p(), RM), prec }
    }

    pub fn div(&self, rhs: &Real) -> Real {
        let prec = self.join(rhs);
        Real { x: self.x.div(&rhs.x, prec.p(), RM), prec }
    }

    pub fn neg(&self) -> Real {
        Real { x: self.x.neg(), prec: self.prec }
    }

    pub fn abs(&self) -> Real {
        Real { x: self.x.abs(), prec: self.prec }
    }

    pub fn sqrt(&self) -> Real {
        Real { x: self.x.sqrt(self.prec.p(), RM), prec: self.prec }
    }

    pub fn powi(&self, n: u64) -> Real {
        Real { x: self.x.powi(n as usize, self.prec.p(), RM), prec: self.prec }
    }

    fn is_one(&self) -> bool {
        self.x.cmp(&BigFloat::from_u64(1, 1)).map(|s| s == 0).unwrap_or(false)
    }

    /// The exponent as an integer if it is integer-valued and small enough
    /// to route through repeated multiplication.
    fn as_small_int(&self) -> Option<i64> {
        if self.x.is_int() {
            let f = self.to_f64();
            if f.abs() <= 4_294_967_296.0 {
                return Some(f as i64);
            }
        }
        None
    }

    /// Full real power of a non-negative base.
    ///
    /// Integer-valued exponents route through repeated multiplication.
    /// Fractional exponents are computed as exp(y * ln x) stage by stage:
    /// the backend's fused pow retries at ever-higher precision chasing a
    /// correctly rounded x^y and never terminates when x^y is exactly
    /// representable (for example 8^(1/3)), while the staged form only ever
    /// rounds perturbed intermediate values.
    pub fn pow(&self, exp: &Real) -> Real {
        let prec = self.join(exp);
        if exp.is_zero() {
            return Real::one(prec);
        }
        if self.is_zero() {
            return if exp.is_negative() { Real::infinity(prec) } else { Real::zero(prec) };
        }
        if self.is_one() {
            return Real::one(prec);
        }
        if let Some(n) = exp.as_small_int() {
            return self.powi_signed(n);
        }
        exp.mul(&self.ln()).exp()
    }

    pub fn powi_signed(&self, n: i64) -> Real {
        if n >= 0 {
            self.powi(n as u64)
        } else {
            self.powi(n.unsigned_abs()).recip()
        }
    }

    /// `self^(1/p)` for a nonzero integer `p`; `0^(1/p)` is 0 for p > 0.
    pub fn root(&self, p: i64) -> Real {
        assert!(p != 0, "0th root is undefined");
        match p {
            1 => return self.clone(),
            -1 => return self.recip(),
            2 => return self.sqrt(),
            -2 => return self.sqrt().recip(),
            _ => {}
        }
        if self.is_zero() {
            return if p > 0 { Real::zero(self.prec) } else { Real::infinity(self.prec) };
        }
        if self.is_one() {
            return Real::one(self.prec);
        }
        let exp = Real::one(self.prec).div(&Real::from_i64(p, self.prec));
        self.ln().mul(&exp).exp()
    }

    pub fn ln(&self) -> Real {
        if self.is_one() {
            return Real::zero(self.prec);
        }
        let x = with_consts(|cc| self.x.ln(self.prec.p(), RM, cc));
        Real { x, prec: self.prec }
    }

    pub fn exp(&self) -> Real {
        if self.is_zero() {
            return Real::one(self.prec);
        }
        let x = with_consts(|cc| self.x.exp(self.prec.p(), RM, cc));
        Real { x, prec: self.prec }
    }

    pub fn recip(&self) -> Real {
        Real { x: self.x.reciprocal(self.prec.p(), RM), prec: self.prec }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero()
    }

    pub fn is_nan(&self) -> bool {
        self.x.is_nan()
    }

    pub fn is_infinite(&self) -> bool {
        self.x.is_inf()
    }

    pub fn is_finite(&self) -> bool {
        !self.x.is_inf() && !self.x.is_nan()
    }

    pub fn is_negative(&self) -> bool {
        self.x.is_negative()
    }

    pub fn compare(&self, rhs: &Real) -> Option<Ordering> {
        self.x.cmp(&rhs.x).map(|s| s.cmp(&0))
    }

    /// Nearest integer (ties away from zero) as an exact BigInt.
    pub fn to_bigint_rounded(&self) -> BigInt {
        use num_bigint::BigUint;
        if self.x.is_zero() || !self.is_finite() {
            return BigInt::zero();
        }
        let (words, _n, sign, e, _) = self.x.as_raw_parts().expect("finite value");
        let mag = BigUint::from_slice(
            &words.iter().flat_map(|w| [*w as u32, (*w >> 32) as u32]).collect::<Vec<_>>(),
        );
        let total_bits = (words.len() * 64) as i64;
        let shift = e as i64 - total_bits; // value = mag * 2^shift
        let int_mag = if shift >= 0 {
            mag << shift as u64
        } else {
            let drop = (-shift) as u64;
            if drop > total_bits as u64 {
                BigUint::zero()
            } else {
                let kept = &mag >> drop;
                let half_bit = (mag >> (drop - 1)) & BigUint::from(1u32);
                kept + half_bit
            }
        };
        let v = BigInt::from(int_mag);
        if sign == Sign::Neg {
            -v
        } else {
            v
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.x.is_zero() {
            return 0.0;
        }
        if self.x.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.x.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        if self.x.is_nan() {
            return f64::NAN;
        }
        let (words, _n, sign, e, _) = self.x.as_raw_parts().expect("finite value");
        // mantissa is little-endian and normalized; value = 0.m * 2^e
        let mut frac = 0.0f64;
        for (i, w) in words.iter().rev().take(2).enumerate() {
            frac += (*w as f64) * (2.0f64).powi(-64 * (i as i32 + 1));
        }
        let v = frac * (2.0f64).powi(e);
        if sign == Sign::Neg {
            -v
        } else {
            v
        }
    }
}

/// `r^(1/p)` for a non-negative rational `r` and nonzero integer `p`,
/// returning the exact value when `r` is a perfect p-th power and the
/// floated staged root otherwise.
///
/// The perfect-power check is only attempted for small exponents: integer
/// nth_root costs as much as the root itself, which is wasteful for the
/// large-exponent geometric-mean case where exact hits are impossible in
/// practice.
pub fn ratio_root(r: &BigRational, p: i64, prec: Precision) -> Real {
    assert!(p != 0, "0th root is undefined");
    if r.is_zero() {
        return if p > 0 { Real::zero(prec) } else { Real::infinity(prec) };
    }
    let q = p.unsigned_abs();
    if q <= 8 {
        let q = q as u32;
        let rn = r.numer().nth_root(q);
        let rd = r.denom().nth_root(q);
        if rn.pow(q) == *r.numer() && rd.pow(q) == *r.denom() {
            let exact = Real::from_ratio(&BigRational::new(rn, rd), prec);
            return if p > 0 { exact } else { exact.recip() };
        }
    }
    Real::from_ratio(r, prec).root(p)
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.x)
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.compare(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p() -> Precision {
        Precision::DEFAULT
    }

    #[test]
    fn bigint_conversion_is_faithful() {
        let cases: [&str; 4] = [
            "1",
            "-55",
            "18446744073709551616",
            "354224848179261915075",
        ];
        for s in cases {
            let v: BigInt = s.parse().unwrap();
            let r = Real::from_bigint(&v, p());
            let back: f64 = s.parse::<f64>().unwrap();
            let rel = (r.to_f64() - back).abs() / back.abs().max(1.0);
            assert!(rel < 1e-12, "{s}: {} vs {back}", r.to_f64());
        }
    }

    #[test]
    fn sqrt_and_golden_ratio() {
        let five = Real::from_u64(5, p());
        let phi = five.sqrt().add(&Real::one(p())).div(&Real::from_u64(2, p()));
        // phi^2 - phi - 1 == 0 at working precision
        let resid = phi.powi(2).sub(&phi).sub(&Real::one(p()));
        assert!(resid.abs().to_f64() < 1e-30);
        assert!((phi.to_f64() - 1.618033988749895).abs() < 1e-15);
    }

    #[test]
    fn ln_exp_roundtrip() {
        let x = Real::from_f64(3.75, p());
        let y = x.ln().exp();
        assert!((y.to_f64() - 3.75).abs() < 1e-25);
    }

    #[test]
    fn integer_roots() {
        let eight = Real::from_u64(8, p());
        assert!((eight.root(3).to_f64() - 2.0).abs() < 1e-25);
        let quarter = Real::from_f64(0.25, p());
        assert!((quarter.root(-2).to_f64() - 2.0).abs() < 1e-25);
        let seven = Real::from_u64(7, p());
        assert!((seven.root(2).to_f64() - 7f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn rational_roots_detect_exactness() {
        let r = BigRational::new(BigInt::from(8), BigInt::from(27));
        let v = ratio_root(&r, 3, p());
        assert_eq!(v.to_f64(), 2.0 / 3.0);
        let v = ratio_root(&r, -3, p());
        assert_eq!(v.to_f64(), 1.5);
        // inexact case falls back to the staged root
        let r2 = BigRational::new(BigInt::from(2), BigInt::from(1));
        let v2 = ratio_root(&r2, 2, p());
        assert!((v2.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
        // the exact-representable case that breaks fused pow
        let r3 = BigRational::from_integer(BigInt::from(1));
        assert_eq!(ratio_root(&r3, 5, p()).to_f64(), 1.0);
    }

    #[test]
    fn pow_on_exactly_representable_results_terminates() {
        let four = Real::from_u64(4, p());
        let half = Real::from_f64(0.5, p());
        assert!((four.pow(&half).to_f64() - 2.0).abs() < 1e-25);
        let x = Real::from_u64(3, p());
        let two = Real::from_f64(2.0, p());
        assert_eq!(x.pow(&two).to_f64(), 9.0);
    }

    #[test]
    fn huge_negative_exponents_underflow_to_zero() {
        let ratio = Real::from_f64(0.6180339887, p());
        let giant = Real::from_f64(6.3e18, p());
        let tiny = ratio.pow(&giant);
        assert!(tiny.is_zero() || tiny.to_f64() == 0.0);
    }

    #[test]
    fn ratio_conversion() {
        let r = BigRational::new(BigInt::from(5), BigInt::from(2));
        assert_eq!(Real::from_ratio(&r, p()).to_f64(), 2.5);
    }

    #[test]
    fn ordering() {
        let a = Real::from_u64(3, p());
        let b = Real::from_u64(4, p());
        assert_eq!(a.compare(&b), Some(Ordering::Less));
        assert_eq!(b.compare(&a), Some(Ordering::Greater));
        assert_eq!(a.compare(&a.clone()), Some(Ordering::Equal));
    }
}
