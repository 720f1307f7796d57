//! Exact arithmetic functions on positive integers.
//!
//! Everything here works by trial division and is meant for single queries.
//! Bulk work over a whole range should go through [`crate::sieve::SpfTable`],
//! which answers the same questions from a smallest-prime-factor table.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Canonical prime factorization `p1^j1 * p2^j2 * ... * ps^js`.
///
/// Primes are strictly increasing and every multiplicity is at least one. The
/// empty factorization is the number 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    /// Builds a factorization from `(prime, multiplicity)` pairs, checking
    /// every invariant of the canonical form.
    pub fn from_pairs(pairs: Vec<(u64, u32)>) -> Result<Self> {
        for window in pairs.windows(2) {
            if window[0].0 >= window[1].0 {
                return Err(Error::InvalidParameter(format!(
                    "primes must be strictly increasing, got {} then {}",
                    window[0].0, window[1].0
                )));
            }
        }
        for &(p, j) in &pairs {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if j == 0 {
                return Err(Error::InvalidParameter(format!("prime {p} has multiplicity 0")));
            }
        }
        let f = Self { pairs };
        if f.checked_value().is_none() {
            return Err(Error::InvalidParameter("factorization overflows u64".into()));
        }
        Ok(f)
    }

    /// Trusted constructor for factorizations produced inside the crate.
    pub(crate) fn from_sorted_unchecked(pairs: Vec<(u64, u32)>) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0].0 < w[1].0));
        Self { pairs }
    }

    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    /// Distinct prime divisors in ascending order.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().map(|&(p, _)| p)
    }

    /// Number of distinct prime divisors.
    pub fn distinct(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.pairs.iter().all(|&(_, j)| j == 1)
    }

    /// Exponent of `p` in the factored number, 0 if absent.
    pub fn exponent_of(&self, p: u64) -> u32 {
        self.pairs
            .binary_search_by_key(&p, |&(q, _)| q)
            .map(|i| self.pairs[i].1)
            .unwrap_or(0)
    }

    /// The factored number.
    pub fn value(&self) -> u64 {
        self.checked_value().expect("validated on construction")
    }

    fn checked_value(&self) -> Option<u64> {
        self.pairs
            .iter()
            .try_fold(1u64, |acc, &(p, j)| acc.checked_mul(p.checked_pow(j)?))
    }

    /// Product of the distinct primes.
    pub fn radical(&self) -> u64 {
        self.primes().product()
    }

    /// `(-1)^s` for squarefree numbers with `s` prime factors, 0 otherwise.
    pub fn moebius(&self) -> i32 {
        if !self.is_squarefree() {
            0
        } else if self.pairs.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// All divisors in ascending order.
    pub fn divisors(&self) -> Vec<u64> {
        let count: usize = self.pairs.iter().map(|&(_, j)| j as usize + 1).product();
        let mut out = Vec::with_capacity(count);
        out.push(1u64);
        for &(p, j) in &self.pairs {
            let existing = out.len();
            let mut pk = 1u64;
            for _ in 0..j {
                pk *= p;
                for i in 0..existing {
                    out.push(out[i] * pk);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The base prime when the number is a prime power `p^a`, `a >= 1`.
    pub fn prime_power_base(&self) -> Option<u64> {
        match self.pairs.as_slice() {
            [(p, _)] => Some(*p),
            _ => None,
        }
    }
}

fn nonzero(n: u64) -> Result<u64> {
    if n == 0 {
        Err(Error::Zero)
    } else {
        Ok(n)
    }
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d <= n / d {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

fn smallest_prime_factor(n: u64) -> u64 {
    debug_assert!(n >= 2);
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut d = 3u64;
    while d <= n / d {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    n
}

pub fn factorize(n: u64) -> Result<Factorization> {
    let mut rest = nonzero(n)?;
    let mut pairs = Vec::new();
    let mut d = 2u64;
    while d <= rest / d {
        if rest % d == 0 {
            let mut j = 0;
            while rest % d == 0 {
                rest /= d;
                j += 1;
            }
            pairs.push((d, j));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        pairs.push((rest, 1));
    }
    Ok(Factorization::from_sorted_unchecked(pairs))
}

/// Largest `e` with `p^e | n`.
pub fn multiplicity(p: u64, n: u64) -> Result<u32> {
    let mut n = nonzero(n)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    Ok(e)
}

/// Greatest squarefree divisor.
pub fn radical(n: u64) -> Result<u64> {
    Ok(factorize(n)?.radical())
}

pub fn moebius(n: u64) -> Result<i32> {
    Ok(factorize(n)?.moebius())
}

/// The prime `p` when `n = p^a` with `a >= 1`, decided with integer division
/// only.
pub fn prime_power_base(n: u64) -> Result<Option<u64>> {
    let n = nonzero(n)?;
    if n == 1 {
        return Ok(None);
    }
    let p = smallest_prime_factor(n);
    let mut rest = n;
    while rest % p == 0 {
        rest /= p;
    }
    Ok((rest == 1).then_some(p))
}

/// von Mangoldt's function: `ln p` when `n = p^a` with `a >= 1`, else 0.
pub fn mangoldt<F: Real>(n: u64) -> Result<F> {
    Ok(match prime_power_base(n)? {
        Some(p) => F::of_u64(p).ln(),
        None => F::zero(),
    })
}

/// All divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    Ok(factorize(n)?.divisors())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Independent oracles: plain scans that share no code with the functions
    // under test.
    fn trial_division_oracle(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut p = 2;
        while n > 1 {
            let mut j = 0;
            while n.is_multiple_of(p) {
                n /= p;
                j += 1;
            }
            if j > 0 {
                out.push((p, j));
            }
            p += 1;
        }
        out
    }

    fn divisor_scan_oracle(n: u64) -> Vec<u64> {
        (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
    }

    fn is_prime_oracle(n: u64) -> bool {
        n >= 2 && (2..n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(1).unwrap().pairs(), &[] as &[(u64, u32)]);
        assert_eq!(factorize(12).unwrap().pairs(), trial_division_oracle(12).as_slice());
        assert_eq!(factorize(12).unwrap().pairs(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(97).unwrap().pairs(), &[(97, 1)]);
        assert_eq!(factorize(0), Err(Error::Zero));
    }

    #[test]
    fn factorize_large_semiprime() {
        let n = 4_294_967_291u64 * 4_294_967_279u64;
        assert_eq!(
            factorize(n).unwrap().pairs(),
            &[(4_294_967_279, 1), (4_294_967_291, 1)]
        );
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(multiplicity(2, 8), Ok(3));
        assert_eq!(multiplicity(3, 8), Ok(0));
        assert_eq!(multiplicity(7, 1), Ok(0));
        assert_eq!(multiplicity(4, 8), Err(Error::NotPrime(4)));
        assert_eq!(multiplicity(1, 8), Err(Error::NotPrime(1)));
        assert_eq!(multiplicity(2, 0), Err(Error::Zero));
    }

    #[test]
    fn radical_examples() {
        assert_eq!(radical(1), Ok(1));
        assert_eq!(radical(12), Ok(6));
        assert_eq!(radical(8), Ok(2));
        assert_eq!(radical(0), Err(Error::Zero));
    }

    #[test]
    fn moebius_examples() {
        assert_eq!(moebius(1), Ok(1));
        assert_eq!(moebius(30), Ok(-1));
        assert_eq!(moebius(12), Ok(0));
        assert_eq!(moebius(0), Err(Error::Zero));
    }

    #[test]
    fn mangoldt_examples() {
        assert_eq!(mangoldt::<f64>(1), Ok(0.0));
        assert!((mangoldt::<f64>(8).unwrap() - 0.693147).abs() < 1e-6);
        assert_eq!(mangoldt::<f64>(8).unwrap(), 2f64.ln());
        assert_eq!(mangoldt::<f64>(6), Ok(0.0));
        assert_eq!(mangoldt::<f32>(0), Err(Error::Zero));
        // perfect powers near float rounding trouble
        assert_eq!(mangoldt::<f64>(3u64.pow(40)).unwrap(), 3f64.ln());
        assert_eq!(mangoldt::<f64>(3u64.pow(40) - 1).unwrap(), 0.0);
    }

    #[test]
    fn divisors_examples() {
        assert_eq!(divisors(1), Ok(vec![1]));
        assert_eq!(divisors(12), Ok(divisor_scan_oracle(12)));
        assert_eq!(divisors(7), Ok(vec![1, 7]));
        assert_eq!(divisors(0), Err(Error::Zero));
    }

    #[test]
    fn from_pairs_validates() {
        assert!(Factorization::from_pairs(vec![(2, 1), (3, 2)]).is_ok());
        assert_eq!(
            Factorization::from_pairs(vec![(4, 1)]),
            Err(Error::NotPrime(4))
        );
        assert!(Factorization::from_pairs(vec![(3, 1), (2, 1)]).is_err());
        assert!(Factorization::from_pairs(vec![(2, 0)]).is_err());
        assert!(Factorization::from_pairs(vec![(2, 64)]).is_err());
    }

    #[test]
    fn exhaustive_small_range() {
        for n in 1..=2_000u64 {
            let f = factorize(n).unwrap();
            assert_eq!(f.pairs(), trial_division_oracle(n).as_slice(), "n = {n}");
            assert_eq!(f.value(), n);
            assert!(f.primes().all(is_prime_oracle));
            assert_eq!(f.divisors(), divisor_scan_oracle(n));
            assert_eq!(is_prime(n), is_prime_oracle(n));
        }
    }

    #[test]
    fn squarefree_characterization() {
        for n in 1..=10_000u64 {
            let mu = moebius(n).unwrap();
            assert_eq!(mu != 0, radical(n).unwrap() == n, "n = {n}");
        }
    }

    #[test]
    fn radical_divides_and_is_idempotent() {
        for n in 1..=10_000u64 {
            let r = radical(n).unwrap();
            assert_eq!(n % r, 0);
            assert_eq!(radical(r).unwrap(), r);
        }
    }

    #[test]
    fn multiplicity_matches_factorization() {
        let small_primes: Vec<u64> = (2..=100).filter(|&p| is_prime_oracle(p)).collect();
        for n in 1..=10_000u64 {
            let f = factorize(n).unwrap();
            for &p in &small_primes {
                assert_eq!(multiplicity(p, n).unwrap(), f.exponent_of(p));
            }
            let rebuilt: u64 = f
                .primes()
                .map(|p| p.pow(multiplicity(p, n).unwrap()))
                .product();
            assert_eq!(rebuilt, n);
        }
    }

    #[test]
    fn divisibility_via_multiplicities() {
        let primes: Vec<u64> = (2..=1000).filter(|&p| is_prime(p)).collect();
        let mults: Vec<Vec<u32>> = (0..=1000u64)
            .map(|n| {
                if n == 0 {
                    vec![]
                } else {
                    primes.iter().map(|&p| multiplicity(p, n).unwrap()).collect()
                }
            })
            .collect();
        for n in 1..=1000usize {
            for m in 1..=1000usize {
                let by_mult = mults[n].iter().zip(&mults[m]).all(|(a, b)| a <= b);
                assert_eq!(m % n == 0, by_mult, "n = {n}, m = {m}");
            }
        }
    }

    proptest! {
        #[test]
        fn moebius_is_multiplicative(m in 1u64..=1000, n in 1u64..=1000) {
            prop_assume!(num_integer::gcd(m, n) == 1);
            prop_assert_eq!(moebius(m * n).unwrap(), moebius(m).unwrap() * moebius(n).unwrap());
        }

        #[test]
        fn factorization_reconstructs(n in 1u64..=u32::MAX as u64) {
            let f = factorize(n).unwrap();
            prop_assert_eq!(f.value(), n);
            prop_assert!(f.pairs().windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    #[test]
    fn coprime_multiplicativity_exhaustive() {
        for m in 1..=1000u64 {
            for n in (1..=1000u64).step_by(7) {
                if num_integer::gcd(m, n) == 1 {
                    assert_eq!(
                        moebius(m * n).unwrap(),
                        moebius(m).unwrap() * moebius(n).unwrap()
                    );
                }
            }
        }
    }
}
