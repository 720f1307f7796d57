//! The elementary asymptotic identities with pinned constants.
//!
//! | name               | claim                                         | C   | x0 |
//! |--------------------|-----------------------------------------------|-----|----|
//! | `ln1p_recip`       | ln(1 + 1/n) = 1/n + O(1/n²), integers         | 1   | 2  |
//! | `harmonic_log`     | Σ_{n≤x} 1/n = ln x + O(1)                     | 1   | 1  |
//! | `stirling_log_sum` | Σ_{n≤x} ln n = x ln x − x + O(ln x)           | 3   | 2  |
//! | `log_over_n`       | Σ_{n≤x} ln n / n = ln²x / 2 + O(1)            | 1   | 1  |
//! | `mertens`          | Σ_{n≤x} Λ(n)/n = ln x + O(1)                  | 1.5 | 1  |
//! | `euler_gamma`      | Σ_{n≤x} 1/n = ln x + γ + O(1/x)               | 1   | 1  |
//!
//! Observed suprema over `[x0, 10⁶]` with half-integer points included are
//! 0.5, 1.0 (at x = 1), 1.885 (at x = 2), 0.109, 0.664 and 0.5 respectively.

use std::sync::Arc;

use crate::accum::CompensatedSum;
use crate::asymptotics::floor::natfloor;
use crate::asymptotics::{BigOClaim, ClaimDomain};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::sieve::ChebyshevTables;

pub const LN1P_RECIP: &str = "ln1p_recip";
pub const HARMONIC_LOG: &str = "harmonic_log";
pub const STIRLING_LOG_SUM: &str = "stirling_log_sum";
pub const LOG_OVER_N: &str = "log_over_n";
pub const MERTENS: &str = "mertens";
pub const EULER_GAMMA_CLAIM: &str = "euler_gamma";

/// Stable catalog names, in catalog order.
pub const CATALOG_NAMES: [&str; 6] = [
    LN1P_RECIP,
    HARMONIC_LOG,
    STIRLING_LOG_SUM,
    LOG_OVER_N,
    MERTENS,
    EULER_GAMMA_CLAIM,
];

/// Euler's constant γ, from Richardson-style extrapolation of `H(N) − ln N`.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Builds `table[n] = Σ_{i ≤ n} term(i)` for `n = 0..=limit`.
fn prefix_table<F: Real>(limit: u64, mut term: impl FnMut(u64) -> F) -> Arc<Vec<F>> {
    let mut acc = CompensatedSum::new();
    let mut out = Vec::with_capacity(limit as usize + 1);
    out.push(F::zero());
    for n in 1..=limit {
        acc.add(term(n));
        out.push(acc.value());
    }
    Arc::new(out)
}

fn lookup<F: Real>(table: &Arc<Vec<F>>) -> impl Fn(F) -> F + Send + Sync + 'static {
    let table = Arc::clone(table);
    move |x| table[natfloor(x) as usize]
}

/// All six catalog claims, evaluable up to the table limit.
pub fn identity_catalog<F: Real>(tables: &ChebyshevTables<F>) -> Result<Vec<BigOClaim<F>>> {
    let limit = tables.limit();
    let harmonic = prefix_table(limit, |n| F::of_u64(n).recip());
    let log_sum = prefix_table(limit, |n| F::of_u64(n).ln());
    let log_over_n = prefix_table(limit, |n| F::of_u64(n).ln() / F::of_u64(n));
    let mut lambda_over_n = Vec::with_capacity(limit as usize);
    tables.scan(1..=limit, |e| lambda_over_n.push(e.lambda / F::of_u64(e.n)))?;
    let mertens = prefix_table(limit, |n| lambda_over_n[n as usize - 1]);

    let one = F::one();
    let gamma = F::lit(EULER_GAMMA);
    let upper = F::of_u64(limit);
    let claims = vec![
        BigOClaim::new(
            LN1P_RECIP,
            |n: F| n.recip().ln_1p(),
            |n: F| n.recip(),
            |n: F| (n * n).recip(),
            one,
            F::lit(2.0),
            ClaimDomain::Integers,
        )?,
        BigOClaim::new(
            HARMONIC_LOG,
            lookup(&harmonic),
            |x: F| x.ln(),
            move |_| one,
            one,
            one,
            ClaimDomain::Reals,
        )?,
        BigOClaim::new(
            STIRLING_LOG_SUM,
            lookup(&log_sum),
            |x: F| x * x.ln() - x,
            |x: F| x.ln(),
            F::lit(3.0),
            F::lit(2.0),
            ClaimDomain::Reals,
        )?,
        BigOClaim::new(
            LOG_OVER_N,
            lookup(&log_over_n),
            |x: F| x.ln() * x.ln() / F::lit(2.0),
            move |_| one,
            one,
            one,
            ClaimDomain::Reals,
        )?,
        BigOClaim::new(
            MERTENS,
            lookup(&mertens),
            |x: F| x.ln(),
            move |_| one,
            F::lit(1.5),
            one,
            ClaimDomain::Reals,
        )?,
        BigOClaim::new(
            EULER_GAMMA_CLAIM,
            lookup(&harmonic),
            move |x: F| x.ln() + gamma,
            |x: F| x.recip(),
            one,
            one,
            ClaimDomain::Reals,
        )?,
    ];
    Ok(claims.into_iter().map(|c| c.with_upper(upper)).collect())
}

/// Looks up a single catalog claim by its stable name.
pub fn catalog_claim<F: Real>(tables: &ChebyshevTables<F>, name: &str) -> Result<BigOClaim<F>> {
    identity_catalog(tables)?
        .into_iter()
        .find(|c| c.name == name)
        .ok_or_else(|| {
            Error::InvalidParameter(format!(
                "unknown identity {name:?}; expected one of {}",
                CATALOG_NAMES.join(", ")
            ))
        })
}

/// `H(N) − ln N`, which decreases to γ.
pub fn euler_gamma_estimate<F: Real>(n: u64) -> Result<F> {
    if n < 10 {
        return Err(Error::InvalidParameter(format!(
            "euler_gamma_estimate needs N >= 10, got {n}"
        )));
    }
    let mut h = CompensatedSum::new();
    // smallest terms first
    for k in (1..=n).rev() {
        h.add(F::of_u64(k).recip());
    }
    Ok(h.value() - F::of_u64(n).ln())
}

/// `Σ_{n ≤ x−1} ln(1 + 1/n)`, the telescoped form of `ln x`.
pub fn telescoped_log<F: Real>(x: u64) -> Result<F> {
    if x == 0 {
        return Err(Error::Zero);
    }
    let mut acc = CompensatedSum::new();
    for n in 1..x {
        acc.add(F::of_u64(n).recip().ln_1p());
    }
    Ok(acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::{check_claim, estimate_constant, SampleGrid};

    fn tables() -> ChebyshevTables<f64> {
        ChebyshevTables::build(20_000).unwrap()
    }

    #[test]
    fn names_are_stable() {
        let t = tables();
        let names: Vec<String> = identity_catalog(&t).unwrap().into_iter().map(|c| c.name).collect();
        assert_eq!(names, CATALOG_NAMES);
        assert!(catalog_claim(&t, "nosuch").is_err());
    }

    #[test]
    fn all_claims_pass_on_small_range() {
        let t = tables();
        for claim in identity_catalog(&t).unwrap() {
            let lo = claim.threshold as u64;
            let grid = SampleGrid::new(lo, 20_000, true).unwrap();
            let report = check_claim(&claim, &grid).unwrap();
            assert!(report.verdict.passed(), "{}: {report:?}", claim.name);
        }
    }

    #[test]
    fn harmonic_constant_is_attained_at_one() {
        let t = tables();
        let claim = catalog_claim(&t, HARMONIC_LOG).unwrap();
        let grid = SampleGrid::integers(1, 100).unwrap();
        let report = check_claim(&claim, &grid).unwrap();
        assert_eq!(report.sup_ratio, 1.0);
        assert_eq!(report.witness_x, 1.0);
        let (c, at) = estimate_constant(|n: f64| claim.lhs(n) - n.ln(), |_| 1.0, &grid).unwrap();
        assert_eq!((c, at), (1.0, 1.0));
    }

    #[test]
    fn claims_refuse_points_past_the_tables() {
        let t = tables();
        let claim = catalog_claim(&t, MERTENS).unwrap();
        let grid = SampleGrid::integers(1, 20_001).unwrap();
        assert!(check_claim(&claim, &grid).is_err());
    }

    #[test]
    fn gamma_estimates() {
        let e10 = euler_gamma_estimate::<f64>(10).unwrap();
        assert!((e10 - 0.626383).abs() < 1e-6);
        let h10: f64 = (1..=10).map(|n| 1.0 / n as f64).sum();
        assert!((e10 - (h10 - 10f64.ln())).abs() < 1e-14);
        for n in [10, 100, 1000] {
            assert!(
                euler_gamma_estimate::<f64>(2 * n).unwrap() < euler_gamma_estimate::<f64>(n).unwrap()
            );
        }
        assert!(euler_gamma_estimate::<f64>(9).is_err());
    }

    #[test]
    fn telescoping_recovers_log() {
        for x in (1..=20_000u64).step_by(97).chain([1, 2, 1_000_000]) {
            let t = telescoped_log::<f64>(x).unwrap();
            assert!((t - (x as f64).ln()).abs() < 1e-9, "x = {x}");
        }
        assert_eq!(telescoped_log::<f64>(1), Ok(0.0));
    }

    #[test]
    fn single_precision_catalog() {
        let t = ChebyshevTables::<f32>::build(5_000).unwrap();
        for claim in identity_catalog(&t).unwrap() {
            let grid = SampleGrid::new(claim.threshold as u64, 5_000, true).unwrap();
            assert!(check_claim(&claim, &grid).unwrap().verdict.passed(), "{}", claim.name);
        }
    }
}
