//! Fibonacci and k-Fibonacci number generation with exact arithmetic.
//!
//! Two independent computation paths are kept on purpose: the defining
//! recurrence (cached, O(n)) and fast doubling (O(log n) multiplications).
//! Tests cross-check one against the other.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::real::{Precision, Real};

/// Lazily extended cache of the order-k generalized Fibonacci sequence.
///
/// Indexing is 1-based. Seeds are k-2 zeros followed by two ones, so the
/// order-2 instance is the plain Fibonacci sequence. Extension appends only;
/// previously cached values never change, and readers always observe a
/// consistent prefix.
pub struct KFibSequence {
    k: u32,
    cache: RwLock<Vec<BigInt>>,
}

impl KFibSequence {
    pub fn new(k: u32) -> Result<KFibSequence> {
        if k < 2 {
            return Err(Error::InvalidOrder(k));
        }
        let mut seed = vec![BigInt::zero(); (k - 2) as usize];
        seed.push(BigInt::one());
        seed.push(BigInt::one());
        Ok(KFibSequence { k, cache: RwLock::new(seed) })
    }

    pub fn order(&self) -> u32 {
        self.k
    }

    /// The n-th term (n >= 1), extending the cache if necessary.
    pub fn get(&self, n: u64) -> Result<BigInt> {
        if n < 1 {
            return Err(Error::InvalidIndex(n));
        }
        let idx = (n - 1) as usize;
        {
            let cache = self.cache.read().expect("cache lock");
            if idx < cache.len() {
                return Ok(cache[idx].clone());
            }
        }
        let mut cache = self.cache.write().expect("cache lock");
        while cache.len() <= idx {
            let len = cache.len();
            let from = len.saturating_sub(self.k as usize);
            let next: BigInt = cache[from..len].iter().sum();
            cache.push(next);
        }
        Ok(cache[idx].clone())
    }

    /// Terms `from..=to` as a vector (1-based, inclusive).
    pub fn window(&self, from: u64, to: u64) -> Result<Vec<BigInt>> {
        if from < 1 || from > to {
            return Err(Error::InvalidIndex(from.min(to)));
        }
        self.get(to)?;
        let cache = self.cache.read().expect("cache lock");
        Ok(cache[(from - 1) as usize..=(to - 1) as usize].to_vec())
    }

    pub fn cached_len(&self) -> usize {
        self.cache.read().expect("cache lock").len()
    }
}

static FIB2: LazyLock<KFibSequence> = LazyLock::new(|| KFibSequence::new(2).expect("order 2"));

static KFIB: LazyLock<Mutex<HashMap<u32, Arc<KFibSequence>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Shared cache for order-k sequences; one instance per k, process-wide.
pub fn kfib_sequence(k: u32) -> Result<Arc<KFibSequence>> {
    if k < 2 {
        return Err(Error::InvalidOrder(k));
    }
    let mut map = KFIB.lock().expect("kfib registry");
    Ok(map
        .entry(k)
        .or_insert_with(|| Arc::new(KFibSequence::new(k).expect("validated order")))
        .clone())
}

/// F(n) with F(0) = 0, F(1) = F(2) = 1; exact for every n.
pub fn fib(n: u64) -> BigInt {
    if n == 0 {
        return BigInt::zero();
    }
    FIB2.get(n).expect("n >= 1")
}

/// (F(n), F(n+1)) by binary fast doubling, independent of the cache.
pub fn fib_pair(n: u64) -> (BigInt, BigInt) {
    let mut a = BigInt::zero(); // F(0)
    let mut b = BigInt::one(); // F(1)
    if n == 0 {
        return (a, b);
    }
    let bits = 64 - n.leading_zeros();
    for i in (0..bits).rev() {
        // F(2m) = F(m) * (2 F(m+1) - F(m)); F(2m+1) = F(m)^2 + F(m+1)^2
        let c = &a * ((&b << 1) - &a);
        let d = &a * &a + &b * &b;
        if (n >> i) & 1 == 0 {
            a = c;
            b = d;
        } else {
            b = c + &d;
            a = d;
        }
    }
    (a, b)
}

/// F(n) in O(log n) big-integer multiplications; agrees with [`fib`].
pub fn fib_fast_doubling(n: u64) -> BigInt {
    fib_pair(n).0
}

/// g(k)(n): the order-k term for k >= 2, n >= 1; equals F(n) when k = 2.
pub fn kfib(k: u32, n: u64) -> Result<BigInt> {
    if k == 2 {
        if n < 1 {
            return Err(Error::InvalidIndex(n));
        }
        return Ok(fib(n));
    }
    kfib_sequence(k)?.get(n)
}

/// The golden ratio and sqrt(5) at a given working precision.
pub struct GoldenConstants {
    pub phi: Real,
    pub sqrt5: Real,
}

impl GoldenConstants {
    pub fn new(prec: Precision) -> GoldenConstants {
        let sqrt5 = Real::from_u64(5, prec).sqrt();
        let phi = sqrt5.add(&Real::one(prec)).div(&Real::from_u64(2, prec));
        GoldenConstants { phi, sqrt5 }
    }
}

/// Bits of precision required before Binet rounding is guaranteed: the
/// magnitude of F(n) (n * log2(phi)) plus 32 guard bits.
pub fn binet_bits_required(n: u64) -> u32 {
    const LOG2_PHI: f64 = 0.694_241_913_630_617_4;
    (n as f64 * LOG2_PHI).ceil() as u32 + 32
}

/// Binet evaluation (phi^n - (1-phi)^n) / sqrt(5) at the working precision.
///
/// Rejects the query instead of silently returning an unreliable value when
/// the precision cannot carry the magnitude of F(n).
pub fn binet_approx(n: u64, prec: Precision) -> Result<Real> {
    let need = binet_bits_required(n);
    if prec.bits() < need {
        return Err(Error::InsufficientPrecision { n, have: prec.bits(), need });
    }
    let g = GoldenConstants::new(prec);
    let psi = Real::one(prec).sub(&g.phi); // 1 - phi = -1/phi
    let value = g.phi.powi(n).sub(&psi.powi(n)).div(&g.sqrt5);
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn base_values_match_the_sequence() {
        let expect: [u64; 13] = [0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(fib(n as u64), BigInt::from(*e), "F({n})");
        }
    }

    #[test]
    fn fast_doubling_agrees_with_recurrence() {
        assert_eq!(fib_fast_doubling(1), BigInt::one());
        assert_eq!(fib_fast_doubling(12), BigInt::from(144u32));
        for n in 0..=2000u64 {
            assert_eq!(fib(n), fib_fast_doubling(n), "n={n}");
        }
        assert_eq!(fib(10_000), fib_fast_doubling(10_000));
    }

    #[test]
    fn cassini_sentinel() {
        for n in 2..=300u64 {
            let lhs = fib(n + 1) * fib(n - 1) - fib(n) * fib(n);
            let expect = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            assert_eq!(lhs, expect, "n={n}");
        }
    }

    #[test]
    fn monotone_growth() {
        for n in 1..=500u64 {
            assert!(fib(n + 1) >= fib(n));
        }
    }

    #[test]
    fn kfib_seeds_and_recurrence() {
        // g(3): 0, 1, 1, 2, 4, 7, 13, ...
        let g3: [u64; 7] = [0, 1, 1, 2, 4, 7, 13];
        for (i, e) in g3.iter().enumerate() {
            assert_eq!(kfib(3, i as u64 + 1).unwrap(), BigInt::from(*e));
        }
        assert_eq!(kfib(2, 7).unwrap(), BigInt::from(13u32));
        assert!(kfib(1, 3).is_err());
        assert!(kfib(3, 0).is_err());
    }

    #[test]
    fn kfib_window_recurrence_holds() {
        for k in 2..=6u32 {
            let seq = kfib_sequence(k).unwrap();
            for n in (k as u64 + 1)..=500 {
                let mut sum = BigInt::zero();
                for j in 1..=k as u64 {
                    if n > j {
                        sum += seq.get(n - j).unwrap();
                    }
                }
                assert_eq!(seq.get(n).unwrap(), sum, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn kfib_reduces_to_fib_for_k2() {
        for n in 1..=200u64 {
            assert_eq!(kfib(2, n).unwrap(), fib(n));
        }
    }

    #[test]
    fn golden_constants_satisfy_the_defining_equation() {
        let g = GoldenConstants::new(Precision::DEFAULT);
        let resid = g.phi.powi(2).sub(&g.phi).sub(&Real::one(Precision::DEFAULT));
        assert!(resid.abs().to_f64() < 1e-12);
    }

    #[test]
    fn binet_rounds_to_exact_values() {
        let prec = Precision::DEFAULT;
        assert_eq!(binet_approx(0, prec).unwrap().to_f64(), 0.0);
        for n in 0..=90u64 {
            let approx = binet_approx(n, prec).unwrap();
            assert_eq!(approx.to_bigint_rounded(), fib(n), "n={n} approx={approx}");
        }
    }

    #[test]
    fn binet_rejects_insufficient_precision() {
        let small = Precision::new(64);
        let err = binet_approx(120, small).unwrap_err();
        match err {
            Error::InsufficientPrecision { n, have, need } => {
                assert_eq!(n, 120);
                assert_eq!(have, 64);
                assert!(need > 64);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn cache_extension_is_consistent_across_threads() {
        let seq = Arc::new(KFibSequence::new(2).unwrap());
        let mut handles = Vec::new();
        for t in 0..4u64 {
            let seq = Arc::clone(&seq);
            handles.push(std::thread::spawn(move || {
                for n in 1..=400u64 {
                    let v = seq.get(n + t * 37).unwrap();
                    assert!(!v.is_negative());
                }
            }));
        }
        for h in handles {
            h.join().unwrap();
        }
        // spot-check after concurrent extension
        assert_eq!(seq.get(10).unwrap(), BigInt::from(55u32));
    }
}
