//! Entrywise p-norms and p-distances over exact integer vectors and matrices.
//!
//! Integer orders keep the power sum exact (big rationals); only the p-th
//! root is floated. The order spectrum covers integer p, real p, both
//! infinities, and the p = 0 product convention (not a norm; exposed as the
//! exact product plus the geometric mean).

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::real::{ratio_root, Precision, Real};

/// Non-empty vector of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactVector {
    entries: Vec<BigInt>,
}

impl ExactVector {
    pub fn new(entries: Vec<BigInt>) -> Result<ExactVector> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        Ok(ExactVector { entries })
    }

    pub fn from_u64s(values: &[u64]) -> ExactVector {
        ExactVector::new(values.iter().map(|&v| BigInt::from(v)).collect())
            .expect("non-empty input")
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    /// 1-based accessor, matching the indexing used throughout.
    pub fn get(&self, i: usize) -> &BigInt {
        &self.entries[i - 1]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BigInt> {
        self.entries.iter()
    }

    pub fn scale(&self, c: &BigInt) -> ExactVector {
        ExactVector { entries: self.entries.iter().map(|e| e * c).collect() }
    }

    pub fn add(&self, rhs: &ExactVector) -> Result<ExactVector> {
        if self.len() != rhs.len() {
            return Err(Error::LengthMismatch(self.len(), rhs.len()));
        }
        Ok(ExactVector {
            entries: self.iter().zip(rhs.iter()).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, rhs: &ExactVector) -> Result<ExactVector> {
        if self.len() != rhs.len() {
            return Err(Error::LengthMismatch(self.len(), rhs.len()));
        }
        Ok(ExactVector {
            entries: self.iter().zip(rhs.iter()).map(|(a, b)| a - b).collect(),
        })
    }
}

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<ExactMatrix> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::EmptyDimension);
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::LengthMismatch(cols, rows.iter().map(Vec::len).max().unwrap()));
        }
        let nrows = rows.len();
        let data = rows.into_iter().flatten().collect();
        Ok(ExactMatrix { rows: nrows, cols, data })
    }

    /// Builds an n x m matrix from a 1-based entry function.
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> BigInt) -> Result<ExactMatrix> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyDimension);
        }
        let mut data = Vec::with_capacity(rows * cols);
        for i in 1..=rows {
            for j in 1..=cols {
                data.push(f(i, j));
            }
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// 1-based accessor.
    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.data[(i - 1) * self.cols + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[(i - 1) * self.cols + (j - 1)] = v;
    }

    pub fn data(&self) -> &[BigInt] {
        &self.data
    }
}

/// The norm parameter p as a tagged value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NormOrder {
    /// Nonzero integer p; power sums stay exact.
    Integer(i64),
    /// Finite nonzero real p; evaluated in floating point.
    Real(f64),
    PosInf,
    NegInf,
    /// The product convention ||x||_0^n = prod |x_i|; not a norm.
    Zero,
}

impl NormOrder {
    pub fn integer(p: i64) -> Result<NormOrder> {
        if p == 0 {
            return Err(Error::ZeroOrder);
        }
        Ok(NormOrder::Integer(p))
    }

    pub fn real(p: f64) -> Result<NormOrder> {
        if !p.is_finite() {
            return Err(Error::InvalidRealOrder(p));
        }
        if p == 0.0 {
            return Err(Error::ZeroOrder);
        }
        Ok(NormOrder::Real(p))
    }

    /// Accepts "1", "-1", "0", "inf", "-inf", "2.5", "1e2", ...
    /// A decimal point or exponent selects the real (float) order.
    pub fn parse(token: &str) -> Result<NormOrder> {
        let t = token.trim();
        match t {
            "inf" | "+inf" | "infinity" => return Ok(NormOrder::PosInf),
            "-inf" | "-infinity" => return Ok(NormOrder::NegInf),
            "0" | "+0" | "-0" => return Ok(NormOrder::Zero),
            _ => {}
        }
        if let Ok(p) = t.parse::<i64>() {
            return NormOrder::integer(p);
        }
        match t.parse::<f64>() {
            Ok(p) => NormOrder::real(p),
            Err(_) => Err(Error::InvalidRealOrder(f64::NAN)),
        }
    }

    /// Orders in the negative-exponent family, where a zero entry
    /// degenerates the value.
    pub fn is_negative_exponent(&self) -> bool {
        matches!(
            self,
            NormOrder::Integer(p) if *p < 0
        ) || matches!(self, NormOrder::Real(p) if *p < 0.0)
            || matches!(self, NormOrder::NegInf)
    }

    pub fn token(&self) -> String {
        match self {
            NormOrder::Integer(p) => p.to_string(),
            NormOrder::Real(p) => format!("{p}"),
            NormOrder::PosInf => "inf".into(),
            NormOrder::NegInf => "-inf".into(),
            NormOrder::Zero => "0".into(),
        }
    }
}

/// Outcome of a p-norm evaluation.
///
/// `exact` carries the order-dependent exact aggregate when one exists:
/// the power sum for integer p, the entry product for order zero, and the
/// max/min entry for the infinite orders. Real orders have no exact part.
/// `value` approximates the norm itself at the working precision and is
/// `+inf` for the degenerate negative-order case (some entry zero).
#[derive(Clone, Debug)]
pub struct PNormResult {
    pub order: NormOrder,
    pub exact: Option<BigRational>,
    pub value: Real,
    pub degenerate: bool,
}

impl PNormResult {
    /// Exact part rendered as "num" or "num/den".
    pub fn exact_string(&self) -> Option<String> {
        self.exact.as_ref().map(ratio_string)
    }
}

/// "num/den", or just "num" for integers.
pub fn ratio_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Product with balanced operand sizes; much faster than a left fold when
/// the factor count is large.
pub fn balanced_product(mut items: Vec<BigInt>) -> BigInt {
    if items.is_empty() {
        return BigInt::one();
    }
    while items.len() > 1 {
        let mut next = Vec::with_capacity(items.len() / 2 + 1);
        let mut it = items.chunks_exact(2);
        for pair in &mut it {
            next.push(&pair[0] * &pair[1]);
        }
        if let [last] = it.remainder() {
            next.push(last.clone());
        }
        items = next;
    }
    items.pop().unwrap()
}

/// Rational sum with balanced operand sizes, keeping gcd reductions cheap.
pub fn balanced_rational_sum(mut items: Vec<BigRational>) -> BigRational {
    if items.is_empty() {
        return BigRational::zero();
    }
    while items.len() > 1 {
        let mut next = Vec::with_capacity(items.len() / 2 + 1);
        let mut it = items.chunks_exact(2);
        for pair in &mut it {
            next.push(&pair[0] + &pair[1]);
        }
        if let [last] = it.remainder() {
            next.push(last.clone());
        }
        items = next;
    }
    items.pop().unwrap()
}

fn abs_entries(v: &ExactVector) -> Vec<BigInt> {
    v.iter().map(|e| e.abs()).collect()
}

/// Entrywise p-norm of a vector for any supported order.
pub fn pnorm(v: &ExactVector, order: NormOrder, prec: Precision) -> Result<PNormResult> {
    // hand-constructed orders may bypass the checked constructors
    if let NormOrder::Integer(0) = order {
        return Err(Error::ZeroOrder);
    }
    if let NormOrder::Real(p) = order {
        if p == 0.0 {
            return Err(Error::ZeroOrder);
        }
        if !p.is_finite() {
            return Err(Error::InvalidRealOrder(p));
        }
    }
    let abs = abs_entries(v);
    let has_zero = abs.iter().any(|e| e.is_zero());
    match order {
        NormOrder::Integer(p) if p > 0 => {
            let sum: BigInt = abs.iter().map(|e| e.pow(p as u32)).sum();
            let sum = BigRational::from_integer(sum);
            let value = ratio_root(&sum, p, prec);
            Ok(PNormResult { order, exact: Some(sum), value, degenerate: false })
        }
        NormOrder::Integer(p) => {
            // p < 0: reciprocal power sum; any zero entry degenerates to +inf
            if has_zero {
                return Ok(PNormResult {
                    order,
                    exact: None,
                    value: Real::infinity(prec),
                    degenerate: true,
                });
            }
            let terms: Vec<BigRational> = abs
                .iter()
                .map(|e| BigRational::new(BigInt::one(), e.pow(p.unsigned_abs() as u32)))
                .collect();
            let sum = balanced_rational_sum(terms);
            let value = ratio_root(&sum, p, prec);
            Ok(PNormResult { order, exact: Some(sum), value, degenerate: false })
        }
        NormOrder::PosInf => {
            let max = abs.iter().max().cloned().expect("non-empty");
            let value = Real::from_bigint(&max, prec);
            Ok(PNormResult {
                order,
                exact: Some(BigRational::from_integer(max)),
                value,
                degenerate: false,
            })
        }
        NormOrder::NegInf => {
            let min = abs.iter().min().cloned().expect("non-empty");
            let value = Real::from_bigint(&min, prec);
            Ok(PNormResult {
                order,
                exact: Some(BigRational::from_integer(min)),
                value,
                degenerate: has_zero,
            })
        }
        NormOrder::Zero => {
            let product = BigRational::from_integer(balanced_product(abs));
            let value = ratio_root(&product, v.len() as i64, prec);
            Ok(PNormResult { order, exact: Some(product), value, degenerate: false })
        }
        NormOrder::Real(p) => {
            if p < 0.0 && has_zero {
                return Ok(PNormResult {
                    order,
                    exact: None,
                    value: Real::infinity(prec),
                    degenerate: true,
                });
            }
            let pr = Real::from_f64(p, prec);
            let mut sum = Real::zero(prec);
            for e in &abs {
                if e.is_zero() {
                    continue; // p > 0 here; zero entries contribute nothing
                }
                sum = sum.add(&Real::from_bigint(e, prec).pow(&pr));
            }
            let value = if sum.is_zero() { sum } else { sum.pow(&pr.recip()) };
            if !value.is_finite() || value.is_nan() {
                return Err(Error::RangeOverflow(prec.bits()));
            }
            Ok(PNormResult { order, exact: None, value, degenerate: false })
        }
    }
}

/// Row-major vectorization: output[(i-1)*cols + j] = m[i][j].
pub fn vec_rowmajor(m: &ExactMatrix) -> ExactVector {
    ExactVector { entries: m.data.clone() }
}

/// Entrywise matrix p-norm; by definition the norm of the vectorization.
pub fn matrix_pnorm(m: &ExactMatrix, order: NormOrder, prec: Precision) -> Result<PNormResult> {
    pnorm(&vec_rowmajor(m), order, prec)
}

/// p-distance: the p-norm of the entrywise difference.
pub fn pdistance(
    x: &ExactVector,
    y: &ExactVector,
    order: NormOrder,
    prec: Precision,
) -> Result<PNormResult> {
    let diff = x.sub(y)?;
    pnorm(&diff, order, prec)
}

/// Convenience comparison used by tests: |a - b| <= tol * max(|a|, |b|).
pub fn approx_eq_rel(a: &Real, b: &Real, tol: f64) -> bool {
    if a.is_infinite() || b.is_infinite() {
        return a.is_infinite() && b.is_infinite() && (a.is_negative() == b.is_negative());
    }
    let diff = a.sub(b).abs();
    let scale = match a.abs().compare(&b.abs()) {
        Some(Ordering::Less) => b.abs(),
        _ => a.abs(),
    };
    if scale.is_zero() {
        return diff.is_zero();
    }
    diff.compare(&scale.mul(&Real::from_f64(tol, a.precision()))) != Some(Ordering::Greater)
}
