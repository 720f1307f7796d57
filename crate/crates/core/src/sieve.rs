//! Sieved tables of Λ, ψ, θ and π over `1..=N`.
//!
//! Up to [`TableConfig::dense_limit`] every per-n value is stored. Past it the
//! tables keep only the compensated prefix state at every `checkpoint_stride`
//! integers and re-sieve a single segment to answer a lookup.

use std::ops::RangeInclusive;

use crate::accum::CompensatedSum;
use crate::arith::Factorization;
use crate::asymptotics::floor::bound_index;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest supported table limit.
pub const MAX_LIMIT: u64 = 100_000_000;

/// Smallest limit for which [`chebyshev_window_scan`] is meaningful.
pub const WINDOW_SCAN_MIN_LIMIT: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableConfig {
    /// Largest limit stored densely.
    pub dense_limit: u64,
    /// Upper bound on the estimated table footprint, in bytes.
    pub memory_budget: u64,
    /// Distance between stored prefix states in checkpointed mode.
    pub checkpoint_stride: u64,
}

impl Default for TableConfig {
    fn default() -> Self {
        Self {
            dense_limit: 10_000_000,
            memory_budget: 1 << 30,
            checkpoint_stride: 1 << 14,
        }
    }
}

/// Smallest-prime-factor table for `0..=limit`; entries 0 and 1 are 0.
///
/// Batch factorization and the arithmetic functions built on it.
#[derive(Debug, Clone)]
pub struct SpfTable {
    spf: Vec<u32>,
}

impl SpfTable {
    pub fn new(limit: u64) -> Result<Self> {
        if limit == 0 {
            return Err(Error::Zero);
        }
        if limit > u32::MAX as u64 {
            return Err(Error::LimitTooLarge {
                requested: limit,
                max: u32::MAX as u64,
            });
        }
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        for i in 2..=n {
            if spf[i] != 0 {
                continue;
            }
            spf[i] = i as u32;
            let mut j = i.saturating_mul(i);
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
        Ok(Self { spf })
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    fn check(&self, n: u64) -> Result<usize> {
        match n {
            0 => Err(Error::Zero),
            n if n > self.limit() => Err(Error::OutOfDomain {
                value: n.to_string(),
                limit: self.limit(),
            }),
            n => Ok(n as usize),
        }
    }

    /// Smallest prime factor; 1 for `n = 1`.
    pub fn smallest_prime_factor(&self, n: u64) -> Result<u64> {
        let i = self.check(n)?;
        Ok(if i == 1 { 1 } else { self.spf[i] as u64 })
    }

    pub fn is_prime(&self, n: u64) -> Result<bool> {
        let i = self.check(n)?;
        Ok(i >= 2 && self.spf[i] as usize == i)
    }

    /// Primes up to the table limit, ascending.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.spf
            .iter()
            .enumerate()
            .skip(2)
            .filter(|&(i, &p)| p as usize == i)
            .map(|(i, _)| i as u64)
    }

    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        let mut rest = self.check(n)?;
        let mut pairs: Vec<(u64, u32)> = Vec::new();
        while rest > 1 {
            let p = self.spf[rest] as usize;
            let mut j = 0;
            while rest % p == 0 {
                rest /= p;
                j += 1;
            }
            pairs.push((p as u64, j));
        }
        Ok(Factorization::from_sorted_unchecked(pairs))
    }

    pub fn divisors(&self, n: u64) -> Result<Vec<u64>> {
        Ok(self.factorize(n)?.divisors())
    }

    pub fn moebius(&self, n: u64) -> Result<i32> {
        Ok(self.factorize(n)?.moebius())
    }

    pub fn radical(&self, n: u64) -> Result<u64> {
        Ok(self.factorize(n)?.radical())
    }

    pub fn mangoldt<F: Real>(&self, n: u64) -> Result<F> {
        Ok(match self.factorize(n)?.prime_power_base() {
            Some(p) => F::of_u64(p).ln(),
            None => F::zero(),
        })
    }
}

/// The values of the prefix tables at one integer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prefix<F> {
    pub pi: u64,
    pub theta: F,
    pub psi: F,
}

/// One step of a table scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Entry<F> {
    pub n: u64,
    pub lambda: F,
    pub is_prime: bool,
    pub prefix: Prefix<F>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct State<F> {
    pi: u64,
    theta: CompensatedSum<F>,
    psi: CompensatedSum<F>,
}

impl<F: Real> State<F> {
    fn new() -> Self {
        Self {
            pi: 0,
            theta: CompensatedSum::new(),
            psi: CompensatedSum::new(),
        }
    }

    #[inline]
    fn push(&mut self, lambda: F, is_prime: bool) {
        self.psi.add(lambda);
        if is_prime {
            self.pi += 1;
            self.theta.add(lambda);
        }
    }

    fn prefix(&self) -> Prefix<F> {
        Prefix {
            pi: self.pi,
            theta: self.theta.value(),
            psi: self.psi.value(),
        }
    }
}

#[derive(Debug, Clone)]
enum Storage<F> {
    Dense {
        lambda: Vec<F>,
        is_prime: Vec<bool>,
        psi: Vec<F>,
        theta: Vec<F>,
        pi: Vec<u32>,
    },
    Checkpointed {
        stride: u64,
        base_primes: Vec<u64>,
        states: Vec<State<F>>,
    },
}

/// Immutable prefix tables of Λ, ψ, θ and π over `1..=limit`.
#[derive(Debug, Clone)]
pub struct ChebyshevTables<F> {
    limit: u64,
    storage: Storage<F>,
}

impl<F: Real> ChebyshevTables<F> {
    /// Builds tables with the default [`TableConfig`].
    pub fn build(limit: u64) -> Result<Self> {
        Self::build_with(limit, &TableConfig::default())
    }

    pub fn build_with(limit: u64, config: &TableConfig) -> Result<Self> {
        if limit == 0 {
            return Err(Error::Zero);
        }
        if limit > MAX_LIMIT {
            return Err(Error::LimitTooLarge {
                requested: limit,
                max: MAX_LIMIT,
            });
        }
        if config.checkpoint_stride == 0 {
            return Err(Error::InvalidParameter("checkpoint stride must be positive".into()));
        }
        let dense = limit <= config.dense_limit;
        let needed = Self::estimated_bytes(limit, dense, config.checkpoint_stride);
        if needed > config.memory_budget {
            return Err(Error::MemoryBudget {
                limit,
                needed,
                budget: config.memory_budget,
            });
        }
        let storage = if dense {
            Self::build_dense(limit)?
        } else {
            Self::build_checkpointed(limit, config.checkpoint_stride)?
        };
        Ok(Self { limit, storage })
    }

    /// Rough footprint of the stored tables plus construction scratch space.
    pub fn estimated_bytes(limit: u64, dense: bool, stride: u64) -> u64 {
        let f = std::mem::size_of::<F>() as u64;
        if dense {
            // lambda, psi, theta, pi, is_prime, and the spf scratch table
            (limit + 1) * (3 * f + 4 + 1 + 4)
        } else {
            let states = limit / stride + 1;
            let state = std::mem::size_of::<State<F>>() as u64;
            let sqrt = limit.isqrt() + 1;
            states * state + sqrt * (8 + 4) + stride * (f + 1)
        }
    }

    fn build_dense(limit: u64) -> Result<Storage<F>> {
        let spf = SpfTable::new(limit)?;
        let n = limit as usize;
        let mut lambda = vec![F::zero(); n + 1];
        let mut is_prime = vec![false; n + 1];
        for i in 2..=n {
            let p = spf.spf[i] as usize;
            if p == i {
                is_prime[i] = true;
                lambda[i] = F::of_u64(i as u64).ln();
            } else {
                // i is a power of p exactly when i / p is
                let q = i / p;
                if spf.spf[q] as usize == p {
                    lambda[i] = lambda[q];
                }
            }
        }
        drop(spf);

        let mut psi = Vec::with_capacity(n + 1);
        let mut theta = Vec::with_capacity(n + 1);
        let mut pi = Vec::with_capacity(n + 1);
        let mut state = State::new();
        psi.push(F::zero());
        theta.push(F::zero());
        pi.push(0);
        for i in 1..=n {
            state.push(lambda[i], is_prime[i]);
            let prefix = state.prefix();
            psi.push(prefix.psi);
            theta.push(prefix.theta);
            pi.push(prefix.pi as u32);
        }
        Ok(Storage::Dense {
            lambda,
            is_prime,
            psi,
            theta,
            pi,
        })
    }

    fn build_checkpointed(limit: u64, stride: u64) -> Result<Storage<F>> {
        let base_primes: Vec<u64> = SpfTable::new(limit.isqrt().max(1))?.primes().collect();
        let mut states = vec![State::new()];
        let mut state = State::new();
        let mut segment = Segment::new(stride as usize);
        let mut lo = 1;
        while lo + stride - 1 <= limit {
            let hi = lo + stride - 1;
            segment.fill(lo, hi, &base_primes);
            for (lambda, is_prime) in segment.iter() {
                state.push(lambda, is_prime);
            }
            states.push(state);
            lo = hi + 1;
        }
        Ok(Storage::Checkpointed {
            stride,
            base_primes,
            states,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// `true` when every per-n value is held in memory.
    pub fn is_dense(&self) -> bool {
        matches!(self.storage, Storage::Dense { .. })
    }

    fn check_index(&self, n: u64) -> Result<()> {
        if n > self.limit {
            Err(Error::OutOfDomain {
                value: n.to_string(),
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }

    /// Λ(n) for `1 ≤ n ≤ limit`.
    pub fn lambda(&self, n: u64) -> Result<F> {
        if n == 0 {
            return Err(Error::Zero);
        }
        self.check_index(n)?;
        match &self.storage {
            Storage::Dense { lambda, .. } => Ok(lambda[n as usize]),
            Storage::Checkpointed { .. } => {
                let mut out = F::zero();
                self.scan(n..=n, |e| out = e.lambda)?;
                Ok(out)
            }
        }
    }

    /// π, θ and ψ at the integer `n ≤ limit`; all zero at `n = 0`.
    pub fn prefix_at(&self, n: u64) -> Result<Prefix<F>> {
        self.check_index(n)?;
        match &self.storage {
            Storage::Dense { psi, theta, pi, .. } => {
                let i = n as usize;
                Ok(Prefix {
                    pi: pi[i] as u64,
                    theta: theta[i],
                    psi: psi[i],
                })
            }
            Storage::Checkpointed { stride, states, .. } => {
                let k = n / stride;
                let start = states[k as usize];
                if k * stride == n {
                    return Ok(start.prefix());
                }
                let mut out = start.prefix();
                self.scan(k * stride + 1..=n, |e| out = e.prefix)?;
                Ok(out)
            }
        }
    }

    pub fn psi_at(&self, n: u64) -> Result<F> {
        Ok(self.prefix_at(n)?.psi)
    }

    pub fn theta_at(&self, n: u64) -> Result<F> {
        Ok(self.prefix_at(n)?.theta)
    }

    pub fn pi_at(&self, n: u64) -> Result<u64> {
        Ok(self.prefix_at(n)?.pi)
    }

    /// ψ(x) = Σ_{n ≤ x} Λ(n); zero for `x < 1`.
    pub fn psi(&self, x: F) -> Result<F> {
        self.psi_at(bound_index(x, self.limit)?)
    }

    /// θ(x) = Σ_{p ≤ x} ln p.
    pub fn theta(&self, x: F) -> Result<F> {
        self.theta_at(bound_index(x, self.limit)?)
    }

    /// π(x), the number of primes not exceeding `x`.
    pub fn pi(&self, x: F) -> Result<u64> {
        self.pi_at(bound_index(x, self.limit)?)
    }

    /// The error term R(x) = ψ(x) − x for `1 ≤ x ≤ limit`.
    pub fn r_error(&self, x: F) -> Result<F> {
        if x.is_nan() || x < F::one() {
            return Err(Error::OutOfDomain {
                value: x.to_string(),
                limit: self.limit,
            });
        }
        Ok(self.psi(x)? - x)
    }

    /// Visits every integer of `range` in ascending order.
    pub fn scan(&self, range: RangeInclusive<u64>, mut visit: impl FnMut(Entry<F>)) -> Result<()> {
        let (lo, hi) = (*range.start(), *range.end());
        if lo == 0 {
            return Err(Error::Zero);
        }
        self.check_index(hi)?;
        if lo > hi {
            return Ok(());
        }
        match &self.storage {
            Storage::Dense {
                lambda,
                is_prime,
                psi,
                theta,
                pi,
            } => {
                for n in lo..=hi {
                    let i = n as usize;
                    visit(Entry {
                        n,
                        lambda: lambda[i],
                        is_prime: is_prime[i],
                        prefix: Prefix {
                            pi: pi[i] as u64,
                            theta: theta[i],
                            psi: psi[i],
                        },
                    });
                }
            }
            Storage::Checkpointed {
                stride,
                base_primes,
                states,
            } => {
                let k = (lo - 1) / stride;
                let mut state = states[k as usize];
                let mut seg_lo = k * stride + 1;
                let mut segment = Segment::new(*stride as usize);
                while seg_lo <= hi {
                    let seg_hi = (seg_lo + stride - 1).min(hi);
                    segment.fill(seg_lo, seg_hi, base_primes);
                    for (offset, (lambda, prime)) in segment.iter().enumerate() {
                        state.push(lambda, prime);
                        let n = seg_lo + offset as u64;
                        if n >= lo {
                            visit(Entry {
                                n,
                                lambda,
                                is_prime: prime,
                                prefix: state.prefix(),
                            });
                        }
                    }
                    seg_lo = seg_hi + 1;
                }
            }
        }
        Ok(())
    }
}

/// Scratch buffer for one sieved segment `[lo, hi]`.
struct Segment<F> {
    lo: u64,
    lambda: Vec<F>,
    composite: Vec<bool>,
}

impl<F: Real> Segment<F> {
    fn new(capacity: usize) -> Self {
        Self {
            lo: 1,
            lambda: Vec::with_capacity(capacity),
            composite: Vec::with_capacity(capacity),
        }
    }

    /// Sieves `[lo, hi]` with the primes up to `sqrt(hi)`.
    fn fill(&mut self, lo: u64, hi: u64, base_primes: &[u64]) {
        let len = (hi - lo + 1) as usize;
        self.lo = lo;
        self.lambda.clear();
        self.lambda.resize(len, F::zero());
        self.composite.clear();
        self.composite.resize(len, false);
        if lo == 1 {
            self.composite[0] = true;
        }
        for &p in base_primes {
            if p * p > hi {
                break;
            }
            let mut m = (p * p).max(lo.div_ceil(p) * p);
            while m <= hi {
                self.composite[(m - lo) as usize] = true;
                m += p;
            }
        }
        for (i, flag) in self.composite.iter().enumerate() {
            if !flag {
                self.lambda[i] = F::of_u64(lo + i as u64).ln();
            }
        }
        for &p in base_primes {
            if p * p > hi {
                break;
            }
            let ln_p = F::of_u64(p).ln();
            let mut pw = p * p;
            while pw <= hi {
                if pw >= lo {
                    self.lambda[(pw - lo) as usize] = ln_p;
                }
                match pw.checked_mul(p) {
                    Some(next) => pw = next,
                    None => break,
                }
            }
        }
    }

    /// `(Λ(n), n is prime)` for every `n` in the segment.
    fn iter(&self) -> impl Iterator<Item = (F, bool)> + '_ {
        self.lambda
            .iter()
            .zip(&self.composite)
            .map(|(&l, &c)| (l, !c))
    }
}

/// Chebyshev's constant `B = ln2/2 + ln3/3 + ln5/5 − ln30/30`.
pub fn chebyshev_b<F: Real>() -> F {
    let term = |n: f64| F::lit(n).ln() / F::lit(n);
    term(2.0) + term(3.0) + term(5.0) - term(30.0)
}

/// Outcome of [`chebyshev_window_scan`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowScan<F> {
    /// Least integer from which `B < π(x) ln x / x < 6B/5` holds up to the
    /// table limit.
    pub x0: u64,
    pub min_ratio: F,
    pub min_at: u64,
    pub max_ratio: F,
    pub max_at: u64,
}

/// `π(x) ln x / x` at an integer.
pub fn pi_ratio<F: Real>(pi: u64, x: u64) -> F {
    let xf = F::of_u64(x);
    F::of_u64(pi) * xf.ln() / xf
}

/// Finds the least `x0` such that Chebyshev's bounds hold for every integer of
/// `[x0, limit]`.
pub fn chebyshev_window_scan<F: Real>(tables: &ChebyshevTables<F>) -> Result<WindowScan<F>> {
    if tables.limit() < WINDOW_SCAN_MIN_LIMIT {
        return Err(Error::InvalidParameter(format!(
            "window scan needs a table limit of at least {WINDOW_SCAN_MIN_LIMIT}, got {}",
            tables.limit()
        )));
    }
    let lower = chebyshev_b::<F>();
    let upper = lower * F::lit(6.0) / F::lit(5.0);
    let mut window: Option<WindowScan<F>> = None;
    tables.scan(1..=tables.limit(), |e| {
        let r = pi_ratio::<F>(e.prefix.pi, e.n);
        if !(lower < r && r < upper) {
            window = None;
            return;
        }
        match &mut window {
            None => {
                window = Some(WindowScan {
                    x0: e.n,
                    min_ratio: r,
                    min_at: e.n,
                    max_ratio: r,
                    max_at: e.n,
                })
            }
            Some(w) => {
                if r < w.min_ratio {
                    w.min_ratio = r;
                    w.min_at = e.n;
                }
                if r > w.max_ratio {
                    w.max_ratio = r;
                    w.max_at = e.n;
                }
            }
        }
    })?;
    window.ok_or(Error::NoWindow {
        limit: tables.limit(),
    })
}
