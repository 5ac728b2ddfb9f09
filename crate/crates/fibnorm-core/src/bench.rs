//! Closed-form vs direct-summation timing for the Fibonacci norm
//! quantities. Correctness comes first: both strategies must produce the
//! identical exact value (checked via a digest of the decimal string)
//! before any timing is reported.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::fib::fib_pair;
use crate::structs::MultiplicityPattern;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BenchQuantity {
    /// Sum of the first n Fibonacci numbers (the prefix 1-norm).
    Q1Norm,
    /// Sum of their squares (the prefix squared 2-norm).
    Q2NormSq,
    /// Entrywise sum of the order-n Hankel matrix.
    S1Norm,
}

impl BenchQuantity {
    pub fn token(self) -> &'static str {
        match self {
            BenchQuantity::Q1Norm => "q1norm",
            BenchQuantity::Q2NormSq => "q2norm_sq",
            BenchQuantity::S1Norm => "s1norm",
        }
    }

    pub fn parse(token: &str) -> Result<BenchQuantity> {
        Ok(match token {
            "q1norm" => BenchQuantity::Q1Norm,
            "q2norm_sq" | "q2norm" => BenchQuantity::Q2NormSq,
            "s1norm" => BenchQuantity::S1Norm,
            other => return Err(Error::UnknownIdentity(other.to_string())),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    DirectSum,
    ClosedForm,
}

impl Strategy {
    pub fn token(self) -> &'static str {
        match self {
            Strategy::DirectSum => "direct_sum",
            Strategy::ClosedForm => "closed_form",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BenchCase {
    pub quantity: BenchQuantity,
    pub n: u64,
    pub repetitions: u32,
}

impl BenchCase {
    pub fn new(quantity: BenchQuantity, n: u64, repetitions: u32) -> Result<BenchCase> {
        if repetitions < 3 {
            return Err(Error::TooFewRepetitions(repetitions));
        }
        if n < 1 {
            return Err(Error::InvalidIndex(n));
        }
        Ok(BenchCase { quantity, n, repetitions })
    }
}

#[derive(Clone, Debug)]
pub struct StrategyTiming {
    pub strategy: Strategy,
    pub median_ns: u128,
}

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub quantity: BenchQuantity,
    pub n: u64,
    /// FNV-1a 64 digest of the decimal value, identical across strategies.
    pub digest: String,
    pub timings: Vec<StrategyTiming>,
}

impl BenchReport {
    pub fn median(&self, strategy: Strategy) -> u128 {
        self.timings.iter().find(|t| t.strategy == strategy).map(|t| t.median_ns).unwrap_or(0)
    }

    pub fn closed_is_faster(&self) -> bool {
        self.median(Strategy::ClosedForm) < self.median(Strategy::DirectSum)
    }

    pub fn speedup(&self) -> f64 {
        let c = self.median(Strategy::ClosedForm).max(1) as f64;
        self.median(Strategy::DirectSum) as f64 / c
    }
}

/// FNV-1a over the decimal rendering; stable across runs and platforms.
pub fn value_digest(v: &BigInt) -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in v.to_string().bytes() {
        hash ^= byte as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{hash:016x}")
}

// Every evaluator builds its sequence state from scratch so that no warm
// global cache biases either strategy.

fn q1_direct(n: u64) -> BigInt {
    let mut a = BigInt::one(); // F(1)
    let mut b = BigInt::one(); // F(2)
    let mut sum = BigInt::from(0u32);
    for _ in 0..n {
        sum += &a;
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    sum
}

fn q1_closed(n: u64) -> BigInt {
    fib_pair(n + 2).0 - 1
}

fn q2_direct(n: u64) -> BigInt {
    let mut a = BigInt::one();
    let mut b = BigInt::one();
    let mut sum = BigInt::from(0u32);
    for _ in 0..n {
        sum += &a * &a;
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    sum
}

fn q2_closed(n: u64) -> BigInt {
    let (fn_, fn1) = fib_pair(n);
    fn_ * fn1
}

fn s1_direct(n: u64) -> BigInt {
    // fresh sequence up to F(2n-1), then plain entry enumeration
    let len = (2 * n - 1) as usize;
    let mut seq = Vec::with_capacity(len);
    let mut a = BigInt::one();
    let mut b = BigInt::one();
    for _ in 0..len {
        seq.push(a.clone());
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    let mut sum = BigInt::from(0u32);
    for i in 1..=n as usize {
        for j in 1..=n as usize {
            sum += &seq[i + j - 2];
        }
    }
    sum
}

fn s1_closed(n: u64) -> BigInt {
    let pattern = MultiplicityPattern::new(n as usize);
    let len = (2 * n - 1) as usize;
    let mut a = BigInt::one();
    let mut b = BigInt::one();
    let mut sum = BigInt::from(0u32);
    for i in 1..=len {
        sum += &a * BigInt::from(pattern.weight(i));
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    sum
}

fn evaluate(quantity: BenchQuantity, strategy: Strategy, n: u64) -> BigInt {
    match (quantity, strategy) {
        (BenchQuantity::Q1Norm, Strategy::DirectSum) => q1_direct(n),
        (BenchQuantity::Q1Norm, Strategy::ClosedForm) => q1_closed(n),
        (BenchQuantity::Q2NormSq, Strategy::DirectSum) => q2_direct(n),
        (BenchQuantity::Q2NormSq, Strategy::ClosedForm) => q2_closed(n),
        (BenchQuantity::S1Norm, Strategy::DirectSum) => s1_direct(n),
        (BenchQuantity::S1Norm, Strategy::ClosedForm) => s1_closed(n),
    }
}

/// Runs one case: cross-checks the strategies, then reports the median
/// wall time of each over the requested repetitions. A seed shuffles the
/// per-repetition execution order of the two strategies.
pub fn run_bench(case: &BenchCase, seed: Option<u64>) -> Result<BenchReport> {
    let direct = evaluate(case.quantity, Strategy::DirectSum, case.n);
    let closed = evaluate(case.quantity, Strategy::ClosedForm, case.n);
    if direct != closed {
        return Err(Error::StrategyMismatch {
            quantity: case.quantity.token().to_string(),
            n: case.n,
            lhs: direct.to_string(),
            rhs: closed.to_string(),
        });
    }
    let digest = value_digest(&direct);

    let mut rng = seed.unwrap_or(0x9e37_79b9_7f4a_7c15);
    let mut next_bit = move || {
        rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (rng >> 63) & 1 == 1
    };

    let mut direct_ns = Vec::with_capacity(case.repetitions as usize);
    let mut closed_ns = Vec::with_capacity(case.repetitions as usize);
    for _ in 0..case.repetitions {
        let order = if next_bit() {
            [Strategy::DirectSum, Strategy::ClosedForm]
        } else {
            [Strategy::ClosedForm, Strategy::DirectSum]
        };
        for strategy in order {
            let start = Instant::now();
            let value = evaluate(case.quantity, strategy, case.n);
            let elapsed = start.elapsed().as_nanos();
            debug_assert_eq!(value, direct);
            match strategy {
                Strategy::DirectSum => direct_ns.push(elapsed),
                Strategy::ClosedForm => closed_ns.push(elapsed),
            }
        }
    }

    let median = |mut v: Vec<u128>| -> u128 {
        v.sort_unstable();
        v[v.len() / 2]
    };

    Ok(BenchReport {
        quantity: case.quantity,
        n: case.n,
        digest,
        timings: vec![
            StrategyTiming { strategy: Strategy::DirectSum, median_ns: median(direct_ns) },
            StrategyTiming { strategy: Strategy::ClosedForm, median_ns: median(closed_ns) },
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fib::fib;
    use crate::structs::hankel_power_sum;

    #[test]
    fn strategies_agree_on_small_sizes() {
        for n in [1u64, 2, 7, 50, 300] {
            assert_eq!(q1_direct(n), q1_closed(n), "q1 n={n}");
            assert_eq!(q2_direct(n), q2_closed(n), "q2 n={n}");
            assert_eq!(s1_direct(n), s1_closed(n), "s1 n={n}");
        }
        assert_eq!(q1_direct(1), BigInt::one());
        assert_eq!(q1_closed(1), BigInt::one());
    }

    #[test]
    fn values_match_the_library_paths() {
        assert_eq!(q1_closed(100), fib(102) - 1);
        assert_eq!(q2_closed(100), fib(100) * fib(101));
        assert_eq!(s1_closed(40), hankel_power_sum(40, 1));
    }

    #[test]
    fn q2_digests_match_the_product_form_at_scale() {
        let n = 10_000u64;
        let expected = value_digest(&(fib(n) * fib(n + 1)));
        assert_eq!(value_digest(&q2_direct(n)), expected);
        assert_eq!(value_digest(&q2_closed(n)), expected);
    }

    #[test]
    fn bench_produces_equal_digests() {
        let case = BenchCase::new(BenchQuantity::Q1Norm, 2000, 3).unwrap();
        let report = run_bench(&case, Some(42)).unwrap();
        assert_eq!(report.timings.len(), 2);
        assert_eq!(report.digest, value_digest(&q1_direct(2000)));
        assert!(report.median(Strategy::DirectSum) > 0);
    }

    #[test]
    fn too_few_repetitions_rejected() {
        assert!(matches!(
            BenchCase::new(BenchQuantity::Q1Norm, 10, 2),
            Err(Error::TooFewRepetitions(2))
        ));
    }

    #[test]
    fn digest_is_stable() {
        let a = BigInt::from(12345u32);
        assert_eq!(value_digest(&a), value_digest(&BigInt::from(12345u32)));
        assert_ne!(value_digest(&a), value_digest(&BigInt::from(12346u32)));
    }
}
