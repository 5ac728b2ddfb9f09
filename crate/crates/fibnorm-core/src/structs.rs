//! Fibonacci vectors and the three matrix families built from k-Fibonacci
//! numbers: the lower-triangular family, the symmetric prefix-square family,
//! and the Hankel family whose anti-diagonals are constant.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fib::{fib, kfib_sequence};
use crate::norm::{ExactMatrix, ExactVector};

/// (F_1, ..., F_n); the first column of the order-n matrix families.
pub fn fib_vector(n: u64) -> ExactVector {
    assert!(n >= 1, "fib_vector requires n >= 1");
    ExactVector::new((1..=n).map(fib).collect()).expect("n >= 1")
}

/// The window (F_{n+1}, ..., F_{n+r}); offset n >= 0, length r >= 1.
pub fn fib_window(n: u64, r: u64) -> ExactVector {
    assert!(r >= 1, "fib_window requires r >= 1");
    ExactVector::new((n + 1..=n + r).map(fib).collect()).expect("r >= 1")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FibMatrixKind {
    /// f_ij = g(i-j+1) on and below the diagonal, 0 above.
    LowerTriangular,
    /// Symmetric: squared-prefix diagonal, order-k row recurrence off it.
    Symmetric,
    /// Hankel: s_ij = g(i+j-1), constant anti-diagonals.
    Hankel,
}

impl FibMatrixKind {
    pub fn token(self) -> &'static str {
        match self {
            FibMatrixKind::LowerTriangular => "fmat",
            FibMatrixKind::Symmetric => "qmat",
            FibMatrixKind::Hankel => "smat",
        }
    }
}

/// An n x n matrix from one of the three k-Fibonacci families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibMatrix {
    pub kind: FibMatrixKind,
    pub k: u32,
    pub n: usize,
    matrix: ExactMatrix,
}

impl FibMatrix {
    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    /// 1-based accessor.
    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        self.matrix.entry(i, j)
    }

    /// Lower-triangular family: consecutive k-Fibonacci numbers down each
    /// column, zero above the diagonal.
    pub fn lower_triangular(k: u32, n: usize) -> Result<FibMatrix> {
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        let seq = kfib_sequence(k)?;
        let g = seq.window(1, n as u64)?;
        let matrix = ExactMatrix::from_fn(n, n, |i, j| {
            if i >= j {
                g[i - j].clone()
            } else {
                BigInt::zero()
            }
        })?;
        Ok(FibMatrix { kind: FibMatrixKind::LowerTriangular, k, n, matrix })
    }

    /// Symmetric family: diagonal q_ii = sum of the first i squared terms;
    /// for j > i, q_ij follows the order-k row recurrence
    /// q_ij = q_{i,j-1} + ... + q_{i,j-k} with zero left padding, mirrored
    /// below the diagonal.
    pub fn symmetric(k: u32, n: usize) -> Result<FibMatrix> {
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        let seq = kfib_sequence(k)?;
        let g = seq.window(1, n as u64)?;
        let mut m = ExactMatrix::from_fn(n, n, |_, _| BigInt::zero())?;
        let mut sq_prefix = BigInt::zero();
        for i in 1..=n {
            sq_prefix += &g[i - 1] * &g[i - 1];
            m.set(i, i, sq_prefix.clone());
            for j in i + 1..=n {
                let mut acc = BigInt::zero();
                for l in 1..=k as usize {
                    if j > l {
                        let c = j - l;
                        // cells left of the diagonal live in earlier rows
                        acc += if c < i { m.entry(c, i) } else { m.entry(i, c) };
                    }
                }
                m.set(i, j, acc.clone());
                m.set(j, i, acc);
            }
        }
        Ok(FibMatrix { kind: FibMatrixKind::Symmetric, k, n, matrix: m })
    }

    /// Hankel family: s_ij = g(i+j-1); every entry is a k-Fibonacci number.
    pub fn hankel(k: u32, n: usize) -> Result<FibMatrix> {
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        let seq = kfib_sequence(k)?;
        let g = seq.window(1, (2 * n - 1) as u64)?;
        let matrix = ExactMatrix::from_fn(n, n, |i, j| g[i + j - 2].clone())?;
        Ok(FibMatrix { kind: FibMatrixKind::Hankel, k, n, matrix })
    }

    /// Dense JSON with decimal-string entries (exactness survives parsing).
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = (1..=self.n)
            .map(|i| {
                serde_json::Value::Array(
                    (1..=self.n)
                        .map(|j| serde_json::Value::String(self.entry(i, j).to_string()))
                        .collect(),
                )
            })
            .collect();
        serde_json::json!({
            "kind": self.kind.token(),
            "k": self.k,
            "n": self.n,
            "entries": rows,
        })
    }

    pub fn to_csv(&self) -> String {
        (1..=self.n)
            .map(|i| {
                (1..=self.n)
                    .map(|j| self.entry(i, j).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Row multiplicities of the reorganized Hankel matrix: row i of the
/// triangle holds n - |n - i| copies of the i-th sequence value, for
/// i = 1..2n-1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityPattern {
    pub n: usize,
    weights: Vec<u64>,
}

impl MultiplicityPattern {
    pub fn new(n: usize) -> MultiplicityPattern {
        assert!(n >= 1, "pattern requires n >= 1");
        let nn = n as i64;
        let weights = (1..=2 * nn - 1).map(|i| (nn - (nn - i).abs()) as u64).collect();
        MultiplicityPattern { n, weights }
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Weight of index i (1-based, i in 1..=2n-1).
    pub fn weight(&self, i: usize) -> u64 {
        self.weights[i - 1]
    }

    pub fn total(&self) -> u64 {
        self.weights.iter().sum()
    }
}

/// Exact weighted power sum of the order-n Fibonacci Hankel matrix:
/// sum over i = 1..2n-1 of F_i^p * (n - |n - i|). Must equal the entrywise
/// power sum of the built matrix.
pub fn hankel_power_sum(n: usize, p: u32) -> BigInt {
    assert!(n >= 1 && p >= 1);
    let pattern = MultiplicityPattern::new(n);
    let mut sum = BigInt::zero();
    for i in 1..=2 * n - 1 {
        sum += fib(i as u64).pow(p) * BigInt::from(pattern.weight(i));
    }
    sum
}

/// Rows of the reorganized Hankel triangle: (value, multiplicity) for
/// i = 1..2n-1. Only used for pretty-printing.
pub fn reorganized_rows(n: usize) -> Vec<(BigInt, u64)> {
    let pattern = MultiplicityPattern::new(n);
    (1..=2 * n - 1).map(|i| (fib(i as u64), pattern.weight(i))).collect()
}
