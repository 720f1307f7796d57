//! Explicit-constant big-O claims and their numerical checks.
//!
//! A claim `f = g + O(h)` is read strictly: there is a constant `C` with
//! `|f(x) − g(x)| ≤ C·|h(x)|` for every `x` at or above a threshold `x0`.
//! Checking a claim means evaluating that inequality over a [`SampleGrid`] and
//! recording the worst ratio observed.

pub mod catalog;
pub mod floor;
pub mod inequalities;

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Real;

pub use catalog::{euler_gamma_estimate, identity_catalog, telescoped_log, EULER_GAMMA};
pub use floor::{floor_galois_check, natfloor, natfloor_shift_check};
pub use inequalities::{elementary_inequalities, InequalityCheck};

/// Whether a claim ranges over integers only or over all reals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimDomain {
    Integers,
    Reals,
}

type RealFn<F> = Box<dyn Fn(F) -> F + Send + Sync>;

/// `|lhs(x) − main(x)| ≤ constant · |bound(x)|` for all `x ≥ threshold` in the
/// domain.
pub struct BigOClaim<F> {
    pub name: String,
    lhs: RealFn<F>,
    main: RealFn<F>,
    bound: RealFn<F>,
    pub constant: F,
    pub threshold: F,
    pub domain: ClaimDomain,
    /// Largest point at which the functions may be evaluated, if any.
    pub upper: Option<F>,
}

impl<F: Real> fmt::Debug for BigOClaim<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BigOClaim")
            .field("name", &self.name)
            .field("constant", &self.constant)
            .field("threshold", &self.threshold)
            .field("domain", &self.domain)
            .field("upper", &self.upper)
            .finish_non_exhaustive()
    }
}

impl<F: Real> BigOClaim<F> {
    pub fn new(
        name: impl Into<String>,
        lhs: impl Fn(F) -> F + Send + Sync + 'static,
        main: impl Fn(F) -> F + Send + Sync + 'static,
        bound: impl Fn(F) -> F + Send + Sync + 'static,
        constant: F,
        threshold: F,
        domain: ClaimDomain,
    ) -> Result<Self> {
        if !(constant > F::zero()) || !constant.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "claim constant must be positive and finite, got {constant}"
            )));
        }
        if !threshold.is_finite() {
            return Err(Error::InvalidParameter("claim threshold must be finite".into()));
        }
        Ok(Self {
            name: name.into(),
            lhs: Box::new(lhs),
            main: Box::new(main),
            bound: Box::new(bound),
            constant,
            threshold,
            domain,
            upper: None,
        })
    }

    pub fn with_upper(mut self, upper: F) -> Self {
        self.upper = Some(upper);
        self
    }

    pub fn lhs(&self, x: F) -> F {
        (self.lhs)(x)
    }

    pub fn main(&self, x: F) -> F {
        (self.main)(x)
    }

    pub fn bound(&self, x: F) -> F {
        (self.bound)(x)
    }

    /// `|lhs − main|` at `x`.
    pub fn deviation(&self, x: F) -> F {
        (self.lhs(x) - self.main(x)).abs()
    }
}

/// Integers `lo..=hi`, optionally with every half-integer strictly between.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleGrid {
    lo: u64,
    hi: u64,
    include_midpoints: bool,
}

impl SampleGrid {
    /// `lo` may be 0 so that claims can be probed at the origin.
    pub fn new(lo: u64, hi: u64, include_midpoints: bool) -> Result<Self> {
        if hi < lo {
            return Err(Error::InvalidParameter(format!(
                "empty sample grid [{lo}, {hi}]"
            )));
        }
        Ok(Self {
            lo,
            hi,
            include_midpoints,
        })
    }

    pub fn integers(lo: u64, hi: u64) -> Result<Self> {
        Self::new(lo, hi, false)
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn include_midpoints(&self) -> bool {
        self.include_midpoints
    }

    /// Points in ascending order.
    pub fn points<F: Real>(&self, with_midpoints: bool) -> impl Iterator<Item = F> + '_ {
        let half = F::lit(0.5);
        let mids = with_midpoints && self.include_midpoints;
        (self.lo..=self.hi).flat_map(move |n| {
            let x = F::of_u64(n);
            let mid = (mids && n < self.hi).then_some(x + half);
            std::iter::once(x).chain(mid)
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// Outcome of checking a claim over a grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BigOReport<F> {
    pub verdict: Verdict,
    /// Largest observed ratio; infinite when a point could not be bounded.
    pub sup_ratio: F,
    /// First point at which `sup_ratio` was attained.
    pub witness_x: F,
    pub points_checked: u64,
}

/// Running maximum that keeps the first (lowest-x) argmax.
pub(crate) struct SupTracker<F> {
    sup: Option<(F, F)>,
    count: u64,
}

impl<F: Real> SupTracker<F> {
    pub(crate) fn new() -> Self {
        Self { sup: None, count: 0 }
    }

    pub(crate) fn observe(&mut self, x: F, ratio: F) {
        self.count += 1;
        match self.sup {
            Some((best, _)) if !(ratio > best) => {}
            _ => self.sup = Some((ratio, x)),
        }
    }

    pub(crate) fn finish(self, pass: impl FnOnce(F) -> bool) -> Result<BigOReport<F>> {
        let (sup_ratio, witness_x) = self.sup.ok_or(Error::EmptyGrid)?;
        Ok(BigOReport {
            verdict: Verdict::from_bool(sup_ratio.is_finite() && pass(sup_ratio)),
            sup_ratio,
            witness_x,
            points_checked: self.count,
        })
    }
}

/// Evaluates a claim at every grid point at or above its threshold.
///
/// Points where the bound vanishes count as ratio 0 if the two sides agree
/// exactly and as an infinite ratio otherwise. Non-finite values produce an
/// infinite ratio as well, so the report fails with that point as witness.
pub fn check_claim<F: Real>(claim: &BigOClaim<F>, grid: &SampleGrid) -> Result<BigOReport<F>> {
    if let Some(upper) = claim.upper {
        if F::of_u64(grid.hi()) > upper {
            return Err(Error::OutOfDomain {
                value: grid.hi().to_string(),
                limit: upper.to_u64().unwrap_or(0),
            });
        }
    }
    let with_mids = claim.domain == ClaimDomain::Reals;
    let mut sup = SupTracker::new();
    for x in grid.points::<F>(with_mids).filter(|&x| x >= claim.threshold) {
        let (lhs, main, bound) = (claim.lhs(x), claim.main(x), claim.bound(x));
        let ratio = if !(lhs.is_finite() && main.is_finite() && bound.is_finite()) {
            F::infinity()
        } else if bound == F::zero() {
            if lhs == main {
                F::zero()
            } else {
                F::infinity()
            }
        } else {
            (lhs - main).abs() / bound.abs()
        };
        // the first failing point is the reported witness
        if !ratio.is_finite() {
            sup.observe(x, F::infinity());
            return sup.finish(|_| false);
        }
        sup.observe(x, ratio);
    }
    sup.finish(|r| r <= claim.constant)
}

/// `max |f(x)| / |g(x)|` over the grid, with the first point attaining it.
///
/// Midpoints are used when the grid carries them.
pub fn estimate_constant<F: Real>(
    f: impl Fn(F) -> F,
    g: impl Fn(F) -> F,
    grid: &SampleGrid,
) -> Result<(F, F)> {
    let mut sup = SupTracker::new();
    for x in grid.points::<F>(true) {
        let denom = g(x);
        if denom == F::zero() {
            return Err(Error::ZeroBound(x.to_f64().unwrap_or(f64::NAN)));
        }
        sup.observe(x, f(x).abs() / denom.abs());
    }
    let report = sup.finish(|_| true)?;
    Ok((report.sup_ratio, report.witness_x))
}
