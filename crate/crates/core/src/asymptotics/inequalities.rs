//! Pointwise checks of the elementary bounds on `exp`, `ln` and two series
//! that stand in for calculus in the proof.

use crate::accum::CompensatedSum;
use crate::scalar::Real;

pub const EXP_LOWER: &str = "exp_lower";
pub const EXP_UPPER: &str = "exp_upper";
pub const LN1P_BOUNDS: &str = "ln1p_bounds";
pub const BASEL_PARTIAL: &str = "basel_partial";
pub const LOG_POWER_DECAY: &str = "log_power_decay";

/// Grid step on bounded intervals.
pub const STEP: f64 = 1e-3;
/// Largest `M` for the partial sums `Σ_{n ≤ M} 1/n²`.
pub const BASEL_TERMS: u64 = 1_000_000;
/// Exponents `a` tried for `ln x / x^a ≤ 2 / (a x^{a/2})`.
pub const DECAY_EXPONENTS: [f64; 6] = [0.1, 0.25, 0.5, 1.0, 1.5, 2.0];

/// Result of one inequality evaluated over its grid.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityCheck<F> {
    pub name: &'static str,
    pub points: u64,
    /// Smallest `larger side − smaller side` seen.
    pub min_slack: F,
    /// Where `min_slack` was first attained.
    pub witness: F,
}

impl<F: Real> InequalityCheck<F> {
    pub fn passed(&self) -> bool {
        self.min_slack >= F::zero()
    }
}

struct MinSlack<F> {
    name: &'static str,
    points: u64,
    min: Option<(F, F)>,
}

impl<F: Real> MinSlack<F> {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            points: 0,
            min: None,
        }
    }

    fn observe(&mut self, x: F, slack: F) {
        self.points += 1;
        let slack = if slack.is_nan() { F::neg_infinity() } else { slack };
        match self.min {
            Some((m, _)) if !(slack < m) => {}
            _ => self.min = Some((slack, x)),
        }
    }

    fn finish(self) -> InequalityCheck<F> {
        let (min_slack, witness) = self.min.expect("grids are non-empty");
        InequalityCheck {
            name: self.name,
            points: self.points,
            min_slack,
            witness,
        }
    }
}

/// `lo, lo + step, …` up to and including `hi` (within half a step).
fn grid<F: Real>(lo: f64, hi: f64) -> impl Iterator<Item = F> {
    let count = ((hi - lo) / STEP).round() as u64;
    (0..=count).map(move |i| F::lit(lo) + F::of_u64(i) * F::lit(STEP))
}

/// `e^x ≥ 1 + x` on `[0, 10]`.
pub fn exp_lower<F: Real>() -> InequalityCheck<F> {
    let mut m = MinSlack::new(EXP_LOWER);
    for x in grid::<F>(0.0, 10.0) {
        m.observe(x, x.exp() - (F::one() + x));
    }
    m.finish()
}

/// `e^x ≤ 1 + x + x²` on `[0, 1/2]`.
pub fn exp_upper<F: Real>() -> InequalityCheck<F> {
    let mut m = MinSlack::new(EXP_UPPER);
    for x in grid::<F>(0.0, 0.5) {
        m.observe(x, F::one() + x + x * x - x.exp());
    }
    m.finish()
}

/// `x − x² ≤ ln(1 + x) ≤ x` on `[0, 1/2]`; the slack is the smaller gap.
pub fn ln1p_bounds<F: Real>() -> InequalityCheck<F> {
    let mut m = MinSlack::new(LN1P_BOUNDS);
    for x in grid::<F>(0.0, 0.5) {
        let l = x.ln_1p();
        m.observe(x, (l - (x - x * x)).min(x - l));
    }
    m.finish()
}

/// `Σ_{n=1}^{M} 1/n² ≤ 2` for every `M ≤ BASEL_TERMS`.
pub fn basel_partial<F: Real>() -> InequalityCheck<F> {
    let mut m = MinSlack::new(BASEL_PARTIAL);
    let two = F::lit(2.0);
    let mut acc = CompensatedSum::new();
    for n in 1..=BASEL_TERMS {
        let nf = F::of_u64(n);
        acc.add((nf * nf).recip());
        m.observe(nf, two - acc.value());
    }
    m.finish()
}

/// `ln x / x^a ≤ 2 / (a x^{a/2})` on `(0, 1000]` for each exponent in
/// [`DECAY_EXPONENTS`]. The witness is the `x` coordinate only.
pub fn log_power_decay<F: Real>() -> InequalityCheck<F> {
    let mut m = MinSlack::new(LOG_POWER_DECAY);
    let two = F::lit(2.0);
    for a in DECAY_EXPONENTS.map(F::lit) {
        for x in grid::<F>(STEP, 1000.0) {
            let lhs = x.ln() / x.powf(a);
            let rhs = two / (a * x.powf(a / two));
            m.observe(x, rhs - lhs);
        }
    }
    m.finish()
}

/// All five checks, in a fixed order.
pub fn elementary_inequalities<F: Real>() -> Vec<InequalityCheck<F>> {
    vec![
        exp_lower(),
        exp_upper(),
        ln1p_bounds(),
        basel_partial(),
        log_power_decay(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_bounds_are_tight_at_zero() {
        let c = ln1p_bounds::<f64>();
        assert_eq!(c.min_slack, 0.0);
        assert_eq!(c.witness, 0.0);
        assert!(c.passed());
        assert_eq!(c.points, 501);
    }

    #[test]
    fn ln_at_half() {
        let l = 0.5f64.ln_1p();
        assert!((l - 0.405465).abs() < 1e-6);
        assert!((0.25..=0.5).contains(&l));
    }

    #[test]
    fn basel_stays_below_two() {
        let c = basel_partial::<f64>();
        assert!(c.passed());
        // the last partial sum is the smallest slack
        assert_eq!(c.witness, BASEL_TERMS as f64);
        assert!((2.0 - c.min_slack - 1.644933).abs() < 1e-6);
    }

    #[test]
    fn every_check_passes_in_both_precisions() {
        for c in elementary_inequalities::<f64>() {
            assert!(c.passed(), "{c:?}");
        }
        for c in [exp_upper::<f32>(), ln1p_bounds::<f32>(), log_power_decay::<f32>()] {
            assert!(c.passed(), "{c:?}");
        }
    }

    #[test]
    fn violated_inequality_is_reported() {
        // e^x ≤ 1 + x + x² fails past x ≈ 1.79
        let mut m = MinSlack::new("exp_upper_wide");
        for x in grid::<f64>(0.0, 3.0) {
            m.observe(x, 1.0 + x + x * x - x.exp());
        }
        let c = m.finish();
        assert!(!c.passed());
        assert_eq!(c.witness, 3.0);
    }
}
