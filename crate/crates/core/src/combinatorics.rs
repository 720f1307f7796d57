//! Divisor-sum identities and summation transforms.
//!
//! Every identity is exposed as a pair of functions evaluating the two sides
//! independently, so callers (and the tests) can compare them. Over exact
//! scalars the comparison is plain equality.

use crate::arith;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A function on `1..=limit`, stored as a table.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedFunction<S> {
    values: Vec<S>,
}

impl<S: Scalar> TabulatedFunction<S> {
    /// Tabulates `f` on `1..=limit`.
    pub fn from_fn(limit: u64, f: impl FnMut(u64) -> S) -> Result<Self> {
        if limit == 0 {
            return Err(Error::Zero);
        }
        Ok(Self {
            values: (1..=limit).map(f).collect(),
        })
    }

    /// Takes `values[i]` as the value at `i + 1`.
    pub fn from_values(values: Vec<S>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Zero);
        }
        Ok(Self { values })
    }

    /// The summatory transform `m ↦ Σ_{d | m} g(d)` of `self`.
    pub fn divisor_summatory(&self) -> Self {
        let limit = self.limit() as usize;
        let mut out = vec![S::zero(); limit];
        for d in 1..=limit {
            for m in (d..=limit).step_by(d) {
                out[m - 1] = out[m - 1].clone() + self.values[d - 1].clone();
            }
        }
        Self { values: out }
    }

    pub fn limit(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn get(&self, n: u64) -> Result<&S> {
        if n == 0 {
            return Err(Error::Zero);
        }
        self.values.get(n as usize - 1).ok_or_else(|| Error::OutOfDomain {
            value: n.to_string(),
            limit: self.limit(),
        })
    }

    fn at(&self, n: u64) -> S {
        self.values[n as usize - 1].clone()
    }

    fn require(&self, n: u64) -> Result<()> {
        self.get(n).map(|_| ())
    }
}

fn positive(n: u64) -> Result<u64> {
    if n == 0 {
        Err(Error::Zero)
    } else {
        Ok(n)
    }
}

fn sum<S: Scalar>(terms: impl Iterator<Item = S>) -> S {
    terms.fold(S::zero(), |acc, t| acc + t)
}

/// `Σ_{d | n} f(d)`.
pub fn divisor_sum<S: Scalar>(n: u64, f: &TabulatedFunction<S>) -> Result<S> {
    f.require(n)?;
    Ok(sum(arith::divisors(n)?.into_iter().map(|d| f.at(d))))
}

/// `Σ_{d | n} f(n / d)`, the same sum reindexed through `d ↦ n/d`.
pub fn reflected_divisor_sum<S: Scalar>(n: u64, f: &TabulatedFunction<S>) -> Result<S> {
    f.require(n)?;
    Ok(sum(arith::divisors(n)?.into_iter().map(|d| f.at(n / d))))
}

/// `Σ_{d ≤ n} Σ_{d' ≤ n/d} f(d, d')`.
pub fn triangle_sum_lhs<S: Scalar>(n: u64, f: impl Fn(u64, u64) -> S) -> Result<S> {
    let n = positive(n)?;
    Ok(sum((1..=n).flat_map(|d| (1..=n / d).map(move |e| (d, e))).map(|(d, e)| f(d, e))))
}

/// `Σ_{c ≤ n} Σ_{d | c} f(d, c/d)`.
pub fn triangle_sum_rhs<S: Scalar>(n: u64, f: impl Fn(u64, u64) -> S) -> Result<S> {
    let n = positive(n)?;
    let mut acc = S::zero();
    for c in 1..=n {
        for d in arith::divisors(c)? {
            acc = acc + f(d, c / d);
        }
    }
    Ok(acc)
}

/// `Σ_{d | n} Σ_{d' | (n/d)} f(d, d')`.
pub fn divisor_pair_sum_lhs<S: Scalar>(n: u64, f: impl Fn(u64, u64) -> S) -> Result<S> {
    let mut acc = S::zero();
    for d in arith::divisors(n)? {
        for e in arith::divisors(n / d)? {
            acc = acc + f(d, e);
        }
    }
    Ok(acc)
}

/// `Σ_{c | n} Σ_{d | c} f(d, c/d)`.
pub fn divisor_pair_sum_rhs<S: Scalar>(n: u64, f: impl Fn(u64, u64) -> S) -> Result<S> {
    let mut acc = S::zero();
    for c in arith::divisors(n)? {
        for d in arith::divisors(c)? {
            acc = acc + f(d, c / d);
        }
    }
    Ok(acc)
}

/// `Σ_{d | n} μ(d)`, computed by enumerating divisors.
pub fn moebius_divisor_sum(n: u64) -> Result<i64> {
    let mut acc = 0i64;
    for d in arith::divisors(n)? {
        acc += arith::moebius(d)? as i64;
    }
    Ok(acc)
}

/// `Σ_{d | n} μ(d) f(n/d)`. When `f(m) = Σ_{d | m} g(d)` this recovers `g(n)`.
pub fn moebius_invert<S: Scalar>(f: &TabulatedFunction<S>, n: u64) -> Result<S> {
    f.require(n)?;
    let mut acc = S::zero();
    for d in arith::divisors(n)? {
        match arith::moebius(d)? {
            0 => {}
            1 => acc = acc + f.at(n / d),
            _ => acc = acc - f.at(n / d),
        }
    }
    Ok(acc)
}

fn partial_summation_domain<S: Scalar>(
    f: &TabulatedFunction<S>,
    g: &TabulatedFunction<S>,
    a: u64,
    b: u64,
) -> Result<()> {
    if a > b {
        return Err(Error::InvalidParameter(format!(
            "partial summation needs a <= b, got a = {a}, b = {b}"
        )));
    }
    f.require(b + 1)?;
    g.require(b + 2)
}

/// `Σ_{n=a}^{b} f(n+1) G(n+1)`.
pub fn partial_summation_lhs<S: Scalar>(
    f: &TabulatedFunction<S>,
    g: &TabulatedFunction<S>,
    a: u64,
    b: u64,
) -> Result<S> {
    partial_summation_domain(f, g, a, b)?;
    Ok(sum((a..=b).map(|n| f.at(n + 1) * g.at(n + 1))))
}

/// `F(b+1)G(b+1) − F(a)G(a+1) − Σ_{n=a}^{b−1} F(n+1)(G(n+2) − G(n+1))`
/// with `F(n) = Σ_{i ≤ n} f(i)`.
pub fn partial_summation_rhs<S: Scalar>(
    f: &TabulatedFunction<S>,
    g: &TabulatedFunction<S>,
    a: u64,
    b: u64,
) -> Result<S> {
    partial_summation_domain(f, g, a, b)?;
    // prefix[n] = F(n), prefix[0] = 0
    let mut prefix = Vec::with_capacity(b as usize + 2);
    prefix.push(S::zero());
    for i in 1..=b + 1 {
        let next = prefix[i as usize - 1].clone() + f.at(i);
        prefix.push(next);
    }
    let big_f = |n: u64| prefix[n as usize].clone();
    let boundary = big_f(b + 1) * g.at(b + 1) - big_f(a) * g.at(a + 1);
    let interior = sum((a..b).map(|n| big_f(n + 1) * (g.at(n + 2) - g.at(n + 1))));
    Ok(boundary - interior)
}
