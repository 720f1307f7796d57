//! Selberg's symmetry formula, the error-term inequality, the
//! `a ↦ a − k·a³` iteration, and the π/θ/ψ ratio table.

use std::sync::Arc;

use crate::accum::CompensatedSum;
use crate::asymptotics::floor::{bound_index, natfloor};
use crate::asymptotics::{check_claim, BigOClaim, BigOReport, ClaimDomain, SampleGrid, SupTracker};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::sieve::{pi_ratio, ChebyshevTables, SpfTable};

/// Sup of `|S(x) − 2x ln x| / x` over the integers of `[2, 10⁵]`, where `S` is
/// the left side of the symmetry formula. Attained at x = 190.
pub const SELBERG_CONSTANT: f64 = 3.207_003_124_685_548;
pub const SELBERG_WITNESS: u64 = 190;
/// Upper end of the range `SELBERG_CONSTANT` was recorded on.
pub const SELBERG_RANGE: u64 = 100_000;

/// Constant for `|R(x)| ln²x − 2 Σ_{n≤x} |R(x/n)| ln n ≤ C·x ln x`.
///
/// On every integer of `[2, 10⁴]` the left side is negative; its largest value
/// relative to `x ln x` is about −0.547, at x = 2. Any `C ≥ 0` works there.
pub const R_INEQUALITY_CONSTANT: f64 = 0.0;
pub const R_INEQUALITY_OBSERVED_SUP: f64 = -0.547_079_326_399_155_5;

/// Prefix sums `S(n) = Σ_{m≤n} Λ(m) ln m + Σ_{m≤n} Σ_{d|m} Λ(d) Λ(m/d)`.
#[derive(Debug, Clone)]
pub struct SelbergSeries<F> {
    prefix: Arc<Vec<F>>,
}

impl<F: Real> SelbergSeries<F> {
    /// Sums for `n = 0..=upto`, convolving by divisor enumeration per `n`.
    pub fn new(tables: &ChebyshevTables<F>, upto: u64) -> Result<Self> {
        if upto > tables.limit() {
            return Err(Error::OutOfDomain {
                value: upto.to_string(),
                limit: tables.limit(),
            });
        }
        let mut prefix = Vec::with_capacity(upto as usize + 1);
        prefix.push(F::zero());
        if upto == 0 {
            return Ok(Self {
                prefix: Arc::new(prefix),
            });
        }
        let mut lambda = vec![F::zero()];
        tables.scan(1..=upto, |e| lambda.push(e.lambda))?;
        let spf = SpfTable::new(upto)?;
        let mut acc = CompensatedSum::new();
        for n in 1..=upto {
            let mut term = lambda[n as usize] * F::of_u64(n).ln();
            for d in spf.divisors(n)? {
                term = term + lambda[d as usize] * lambda[(n / d) as usize];
            }
            acc.add(term);
            prefix.push(acc.value());
        }
        Ok(Self {
            prefix: Arc::new(prefix),
        })
    }

    pub fn upto(&self) -> u64 {
        (self.prefix.len() - 1) as u64
    }

    /// `S(x)` for a real `x`; 0 below 1.
    pub fn at(&self, x: F) -> Result<F> {
        Ok(self.prefix[bound_index(x, self.upto())? as usize])
    }
}

/// Left side of the symmetry formula at `x`, `1 ≤ x ≤ limit`.
pub fn selberg_lhs<F: Real>(x: F, tables: &ChebyshevTables<F>) -> Result<F> {
    if x.is_nan() || x < F::one() {
        return Err(Error::OutOfDomain {
            value: x.to_string(),
            limit: tables.limit(),
        });
    }
    let n = bound_index(x, tables.limit())?;
    Ok(SelbergSeries::new(tables, n)?.prefix[n as usize])
}

/// `|S(x) − 2x ln x| / x` at `x`.
pub fn selberg_ratio<F: Real>(series: &SelbergSeries<F>, x: F) -> Result<F> {
    let two = F::lit(2.0);
    Ok((series.at(x)? - two * x * x.ln()).abs() / x)
}

/// The symmetry formula as a big-O claim with constant `constant`, evaluable
/// up to `series.upto()`.
pub fn selberg_claim<F: Real>(series: &SelbergSeries<F>, constant: F) -> Result<BigOClaim<F>> {
    let prefix = Arc::clone(&series.prefix);
    let two = F::lit(2.0);
    Ok(BigOClaim::new(
        "selberg_symmetry",
        move |x: F| prefix[natfloor(x) as usize],
        move |x: F| two * x * x.ln(),
        |x: F| x,
        constant,
        two,
        ClaimDomain::Reals,
    )?
    .with_upper(F::of_u64(series.upto())))
}

/// Checks the symmetry formula over `grid` against [`SELBERG_CONSTANT`].
pub fn selberg_check<F: Real>(tables: &ChebyshevTables<F>, grid: &SampleGrid) -> Result<BigOReport<F>> {
    selberg_check_with(tables, grid, F::lit(SELBERG_CONSTANT))
}

pub fn selberg_check_with<F: Real>(
    tables: &ChebyshevTables<F>,
    grid: &SampleGrid,
    constant: F,
) -> Result<BigOReport<F>> {
    if grid.lo() < 2 {
        return Err(Error::InvalidParameter(format!(
            "symmetry check needs a grid starting at 2 or above, got {}",
            grid.lo()
        )));
    }
    let series = SelbergSeries::new(tables, grid.hi())?;
    check_claim(&selberg_claim(&series, constant)?, grid)
}

/// `|R(x)| ln²x − 2 Σ_{n≤x} |R(x/n)| ln n` at an integer `x`.
pub fn r_inequality_excess<F: Real>(tables: &ChebyshevTables<F>, x: u64) -> Result<F> {
    if x < 2 || x > tables.limit() {
        return Err(Error::OutOfDomain {
            value: x.to_string(),
            limit: tables.limit(),
        });
    }
    let xf = F::of_u64(x);
    let ln_x = xf.ln();
    let lhs = (tables.psi_at(x)? - xf).abs() * ln_x * ln_x;
    let mut sum = CompensatedSum::new();
    for n in 1..=x {
        let r = tables.psi_at(x / n)? - xf / F::of_u64(n);
        sum.add(r.abs() * F::of_u64(n).ln());
    }
    Ok(lhs - F::lit(2.0) * sum.value())
}

/// Checks the error-term inequality at each sample point against
/// [`R_INEQUALITY_CONSTANT`].
///
/// `sup_ratio` is the signed maximum of `excess / (x ln x)`; negative values
/// mean the inequality holds with no error term at all.
pub fn r_inequality_check<F: Real>(tables: &ChebyshevTables<F>, xs: &[u64]) -> Result<BigOReport<F>> {
    r_inequality_check_with(tables, xs, F::lit(R_INEQUALITY_CONSTANT))
}

pub fn r_inequality_check_with<F: Real>(
    tables: &ChebyshevTables<F>,
    xs: &[u64],
    constant: F,
) -> Result<BigOReport<F>> {
    let mut points = xs.to_vec();
    points.sort_unstable();
    points.dedup();
    let mut sup = SupTracker::new();
    for x in points {
        let xf = F::of_u64(x);
        let ratio = r_inequality_excess(tables, x)? / (xf * xf.ln());
        sup.observe(xf, ratio);
    }
    sup.finish(|r| r <= constant)
}

/// The sequence `a₁, a₂, …` with `a_{i+1} = a_i − k·a_i³`.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace<F> {
    pub k: F,
    pub values: Vec<F>,
}

impl<F: Real> IterationTrace<F> {
    pub fn first(&self) -> F {
        self.values[0]
    }

    pub fn last(&self) -> F {
        *self.values.last().expect("traces are non-empty")
    }

    /// `a_n` for 1-based `n`.
    pub fn term(&self, n: usize) -> Option<F> {
        n.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }

    pub fn is_positive(&self) -> bool {
        self.values.iter().all(|&a| a > F::zero())
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[1] < w[0])
    }

    /// `1 / sqrt(1/a₁² + 2k(n − 1))`, which bounds `a_n` from above.
    pub fn closed_form_bound(&self, n: usize) -> F {
        let a1 = self.first();
        let two = F::lit(2.0);
        (F::one() / (a1 * a1) + two * self.k * F::of_u64(n as u64 - 1))
            .sqrt()
            .recip()
    }

    /// First 1-based index whose term exceeds the closed-form bound, allowing
    /// a few ulps of rounding.
    pub fn first_bound_violation(&self) -> Option<usize> {
        let slack = F::one() + F::lit(4.0) * F::epsilon();
        (1..=self.values.len()).find(|&n| self.values[n - 1] > self.closed_form_bound(n) * slack)
    }
}

/// Runs the iteration for `steps` terms starting from `a1`.
pub fn iterate_bound<F: Real>(a1: F, k: F, steps: usize) -> Result<IterationTrace<F>> {
    if !(a1 > F::zero() && a1.is_finite()) {
        return Err(Error::InvalidParameter(format!("a1 must be positive, got {a1}")));
    }
    if !(k > F::zero() && k.is_finite()) {
        return Err(Error::InvalidParameter(format!("k must be positive, got {k}")));
    }
    if !(k * a1 * a1 < F::one()) {
        return Err(Error::InvalidParameter(format!(
            "k·a1² must be below 1 for the sequence to stay positive, got {}",
            k * a1 * a1
        )));
    }
    if steps == 0 {
        return Err(Error::InvalidParameter("trace length must be positive".into()));
    }
    let mut values = Vec::with_capacity(steps);
    let mut a = a1;
    values.push(a);
    for _ in 1..steps {
        a = a - k * a * a * a;
        values.push(a);
    }
    Ok(IterationTrace { k, values })
}

/// One row of the ratio table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PntRow<F> {
    pub x: F,
    pub pi: u64,
    pub theta: F,
    pub psi: F,
    pub pi_ratio: F,
    pub theta_ratio: F,
    pub psi_ratio: F,
    pub r_error: F,
}

/// π(x) ln x / x, θ(x)/x and ψ(x)/x at each sample point in `[2, limit]`.
pub fn pnt_ratio_table<F: Real>(tables: &ChebyshevTables<F>, xs: &[F]) -> Result<Vec<PntRow<F>>> {
    xs.iter()
        .map(|&x| {
            if x.is_nan() || x < F::lit(2.0) || x > F::of_u64(tables.limit()) {
                return Err(Error::OutOfDomain {
                    value: x.to_string(),
                    limit: tables.limit(),
                });
            }
            let prefix = tables.prefix_at(natfloor(x))?;
            Ok(PntRow {
                x,
                pi: prefix.pi,
                theta: prefix.theta,
                psi: prefix.psi,
                pi_ratio: F::of_u64(prefix.pi) * x.ln() / x,
                theta_ratio: prefix.theta / x,
                psi_ratio: prefix.psi / x,
                r_error: prefix.psi - x,
            })
        })
        .collect()
}

/// Powers of ten from `from` up to `limit`.
pub fn decade_points(from: u64, limit: u64) -> Vec<u64> {
    std::iter::successors(Some(from), |&x| x.checked_mul(10))
        .take_while(|&x| x <= limit)
        .collect()
}

/// Whether `π(x) ln x / x` strictly decreases across `points`; on failure the
/// point where it did not.
pub fn pi_ratio_trend<F: Real>(tables: &ChebyshevTables<F>, points: &[u64]) -> Result<Option<u64>> {
    let mut prev: Option<F> = None;
    for &x in points {
        let r = pi_ratio::<F>(tables.pi_at(x)?, x);
        if let Some(p) = prev {
            if !(r < p) {
                return Ok(Some(x));
            }
        }
        prev = Some(r);
    }
    Ok(None)
}
