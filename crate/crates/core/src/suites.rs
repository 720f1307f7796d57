//! Named verification suites.
//!
//! Each suite runs a fixed list of checks and reports one [`CheckRow`] per
//! check. Randomized checks draw from ChaCha8 (`rand_chacha::ChaCha8Rng`)
//! seeded with `seed_from_u64(seed)` and switched to a per-check stream with
//! `set_stream`, so a check's samples depend only on the seed and the check,
//! never on which other suites ran.

use std::cell::OnceCell;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::asymptotics::catalog::{identity_catalog, telescoped_log, EULER_GAMMA};
use crate::asymptotics::floor::{floor_galois_check, natfloor_shift_check};
use crate::asymptotics::inequalities::elementary_inequalities;
use crate::asymptotics::{check_claim, SampleGrid, Verdict};
use crate::combinatorics::{
    divisor_pair_sum_lhs, divisor_pair_sum_rhs, divisor_sum, moebius_invert, partial_summation_lhs,
    partial_summation_rhs, reflected_divisor_sum, triangle_sum_lhs, triangle_sum_rhs,
    TabulatedFunction,
};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::selberg::{
    decade_points, iterate_bound, pi_ratio_trend, r_inequality_check, selberg_check,
    SELBERG_CONSTANT, SELBERG_RANGE,
};
use crate::sieve::{chebyshev_b, chebyshev_window_scan, SpfTable, WINDOW_SCAN_MIN_LIMIT};
use crate::{Rational, Tables};

pub const DEFAULT_MAX_N: u64 = 1_000_000;

/// Quantified ranges and sample counts.
pub mod ranges {
    pub const INVERSION_FUNCTIONS: usize = 100;
    pub const INVERSION_DOMAIN: u64 = 1_000;
    pub const INVERSION_VALUE: i64 = 1_000;
    pub const MANGOLDT_LOG_DOMAIN: u64 = 10_000;
    pub const REFLECTION_DOMAIN: u64 = 10_000;
    pub const PAIR_IDENTITY_DOMAIN: u64 = 500;
    pub const PAIR_IDENTITY_FUNCTIONS: usize = 100;
    pub const PARTIAL_SUMMATION_CASES: usize = 200;
    pub const PARTIAL_SUMMATION_MAX_B: u64 = 100;
    pub const SHIFT_SAMPLES: usize = 1_000;
    pub const SHIFT_MAX_Z: f64 = 1e6;
    pub const R_INEQUALITY_SAMPLES: usize = 200;
    pub const R_INEQUALITY_MAX_X: u64 = 10_000;
    pub const ITERATION_A1: f64 = 0.5;
    pub const ITERATION_K: f64 = 0.1;
    pub const ITERATION_STEPS: usize = 2_000;
    pub const ITERATION_FINAL_BOUND: f64 = 0.05;
}

use ranges::*;

// Stream ids for `ChaCha8Rng::set_stream`, one per randomized check.
const STREAM_INVERSION: u64 = 1;
const STREAM_REFLECTION: u64 = 2;
const STREAM_TRIANGLE: u64 = 3;
const STREAM_PARTIAL_SUMMATION: u64 = 4;
const STREAM_SHIFT: u64 = 5;
const STREAM_R_INEQUALITY: u64 = 6;

/// The generator for one randomized check.
pub fn check_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Moebius,
    Combinatorics,
    Chebyshev,
    Inequalities,
    Asymptotics,
    Selberg,
    Iteration,
    All,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Moebius,
        Suite::Combinatorics,
        Suite::Chebyshev,
        Suite::Inequalities,
        Suite::Asymptotics,
        Suite::Selberg,
        Suite::Iteration,
        Suite::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Moebius => "moebius",
            Suite::Combinatorics => "combinatorics",
            Suite::Chebyshev => "chebyshev",
            Suite::Inequalities => "inequalities",
            Suite::Asymptotics => "asymptotics",
            Suite::Selberg => "selberg",
            Suite::Iteration => "iteration",
            Suite::All => "all",
        }
    }

    /// Concrete suites this one expands to.
    pub fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::ALL[..7].to_vec(),
            s => vec![s],
        }
    }

    /// Smallest `max_n` the suite accepts.
    pub fn min_max_n(self) -> u64 {
        match self {
            Suite::Chebyshev | Suite::All => WINDOW_SCAN_MIN_LIMIT,
            _ => 10,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
            Error::InvalidParameter(format!(
                "unknown suite {s:?}; valid suites are {}",
                names.join(", ")
            ))
        })
    }
}

/// One verified property.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub suite: &'static str,
    pub check: String,
    pub verdict: Verdict,
    /// Number of points or cases evaluated.
    pub points: u64,
    /// First offending (or worst) point, where meaningful.
    pub witness_x: Option<f64>,
    /// The measured quantity; see each check for its meaning.
    pub observed: f64,
    /// The threshold `observed` is compared against.
    pub bound: f64,
}

struct RowBuilder {
    suite: &'static str,
    rows: Vec<CheckRow>,
}

impl RowBuilder {
    fn push(
        &mut self,
        check: &str,
        ok: bool,
        points: u64,
        witness_x: Option<f64>,
        observed: f64,
        bound: f64,
    ) {
        self.rows.push(CheckRow {
            suite: self.suite,
            check: check.to_string(),
            verdict: Verdict::from_bool(ok),
            points,
            witness_x,
            observed,
            bound,
        });
    }
}

/// Counts mismatches and remembers the first.
#[derive(Default)]
struct Mismatches {
    count: u64,
    first: Option<u64>,
    points: u64,
}

impl Mismatches {
    fn record(&mut self, at: u64, ok: bool) {
        self.points += 1;
        if !ok {
            self.count += 1;
            self.first.get_or_insert(at);
        }
    }

    fn emit(&self, rows: &mut RowBuilder, check: &str) {
        rows.push(
            check,
            self.count == 0,
            self.points,
            self.first.map(|x| x as f64),
            self.count as f64,
            0.0,
        );
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub max_n: u64,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            max_n: DEFAULT_MAX_N,
            seed: 0,
        }
    }
}

/// Runs suites against one shared set of tables, built on first use.
pub struct Verifier {
    config: SuiteConfig,
    tables: OnceCell<Tables>,
}

impl Verifier {
    pub fn new(config: SuiteConfig) -> Self {
        Self {
            config,
            tables: OnceCell::new(),
        }
    }

    fn tables(&self) -> Result<&Tables> {
        if let Some(t) = self.tables.get() {
            return Ok(t);
        }
        let t = Tables::build(self.config.max_n)?;
        Ok(self.tables.get_or_init(|| t))
    }

    pub fn run(&self, suite: Suite) -> Result<Vec<CheckRow>> {
        if self.config.max_n < suite.min_max_n() {
            return Err(Error::InvalidParameter(format!(
                "suite {suite} needs --max of at least {}, got {}",
                suite.min_max_n(),
                self.config.max_n
            )));
        }
        let mut out = Vec::new();
        for member in suite.members() {
            let mut rows = RowBuilder {
                suite: member.name(),
                rows: Vec::new(),
            };
            match member {
                Suite::Moebius => self.moebius(&mut rows)?,
                Suite::Combinatorics => self.combinatorics(&mut rows)?,
                Suite::Chebyshev => self.chebyshev(&mut rows)?,
                Suite::Inequalities => self.inequalities(&mut rows),
                Suite::Asymptotics => self.asymptotics(&mut rows)?,
                Suite::Selberg => self.selberg(&mut rows)?,
                Suite::Iteration => self.iteration(&mut rows)?,
                Suite::All => unreachable!("expanded by members()"),
            }
            out.extend(rows.rows);
        }
        Ok(out)
    }

    fn moebius(&self, rows: &mut RowBuilder) -> Result<()> {
        let max = self.config.max_n;
        let spf = SpfTable::new(max)?;
        let mut eq3 = Mismatches::default();
        for n in 1..=max {
            let mut s = 0i64;
            for d in spf.divisors(n)? {
                s += spf.moebius(d)? as i64;
            }
            eq3.record(n, s == (n == 1) as i64);
        }
        eq3.emit(rows, "moebius_divisor_sum");

        let domain = INVERSION_DOMAIN.min(max);
        let mut rng = check_rng(self.config.seed, STREAM_INVERSION);
        let mut inversion = Mismatches::default();
        for _ in 0..INVERSION_FUNCTIONS {
            let g = TabulatedFunction::from_fn(domain, |_| {
                rng.random_range(-INVERSION_VALUE..=INVERSION_VALUE)
            })?;
            let f = g.divisor_summatory();
            for n in 1..=domain {
                inversion.record(n, moebius_invert(&f, n)? == *g.get(n)?);
            }
        }
        inversion.emit(rows, "moebius_inversion_roundtrip");

        // ln n = Σ_{d|n} Λ(d), and inverting ln recovers Λ
        let domain = MANGOLDT_LOG_DOMAIN.min(max);
        let lambda = TabulatedFunction::from_fn(domain, |n| spf.mangoldt::<f64>(n).unwrap_or(0.0))?;
        let ln = TabulatedFunction::from_fn(domain, |n| (n as f64).ln())?;
        let mut worst = (0.0f64, None);
        let mut all_ok = true;
        for n in 1..=domain {
            let forward = divisor_sum(n, &lambda)?;
            let back = moebius_invert(&ln, n)?;
            let ok = forward.agrees_with(ln.get(n)?) && back.agrees_with(lambda.get(n)?);
            let err = (forward - ln.get(n)?).abs().max((back - lambda.get(n)?).abs());
            if err > worst.0 {
                worst = (err, Some(n as f64));
            }
            all_ok &= ok;
        }
        rows.push("mangoldt_log_inversion", all_ok, domain, worst.1, worst.0, <f64 as crate::scalar::Real>::TOLERANCE);
        Ok(())
    }

    fn combinatorics(&self, rows: &mut RowBuilder) -> Result<()> {
        let max = self.config.max_n;
        let seed = self.config.seed;
        let rational = |rng: &mut ChaCha8Rng| {
            Rational::new(
                BigInt::from(rng.random_range(-100i64..=100)),
                BigInt::from(rng.random_range(1i64..=50)),
            )
        };

        let domain = REFLECTION_DOMAIN.min(max);
        let mut rng = check_rng(seed, STREAM_REFLECTION);
        let f = TabulatedFunction::from_fn(domain, |_| rational(&mut rng))?;
        let mut reflection = Mismatches::default();
        for n in 1..=domain {
            reflection.record(n, divisor_sum(n, &f)? == reflected_divisor_sum(n, &f)?);
        }
        reflection.emit(rows, "divisor_sum_reflection");

        let domain = PAIR_IDENTITY_DOMAIN.min(max);
        let mut rng = check_rng(seed, STREAM_TRIANGLE);
        let mut triangle = Mismatches::default();
        let mut pairs = Mismatches::default();
        for _ in 0..PAIR_IDENTITY_FUNCTIONS {
            // values for every (d, e) with d·e ≤ domain
            let table: Vec<Vec<i64>> = (0..=domain)
                .map(|d| {
                    let len = if d == 0 { 0 } else { domain / d + 1 };
                    (0..len).map(|_| rng.random_range(-1_000i64..=1_000)).collect()
                })
                .collect();
            let f = |d: u64, e: u64| table[d as usize][e as usize];
            for n in 1..=domain {
                triangle.record(n, triangle_sum_lhs(n, f)? == triangle_sum_rhs(n, f)?);
                pairs.record(n, divisor_pair_sum_lhs(n, f)? == divisor_pair_sum_rhs(n, f)?);
            }
        }
        triangle.emit(rows, "pair_enumeration");
        pairs.emit(rows, "divisor_pair_enumeration");

        let mut rng = check_rng(seed, STREAM_PARTIAL_SUMMATION);
        let mut partial = Mismatches::default();
        for case in 0..PARTIAL_SUMMATION_CASES {
            let b = rng.random_range(1..=PARTIAL_SUMMATION_MAX_B);
            let a = rng.random_range(1..=b);
            let f = TabulatedFunction::from_fn(b + 2, |_| rational(&mut rng))?;
            let g = TabulatedFunction::from_fn(b + 2, |_| rational(&mut rng))?;
            let ok = partial_summation_lhs(&f, &g, a, b)? == partial_summation_rhs(&f, &g, a, b)?;
            partial.record(case as u64, ok);
        }
        partial.emit(rows, "partial_summation");
        Ok(())
    }

    fn chebyshev(&self, rows: &mut RowBuilder) -> Result<()> {
        let b = chebyshev_b::<f64>();
        rows.push("b_lower_bound", b > 0.92, 1, None, b, 0.92);
        rows.push("six_fifths_b_upper_bound", 1.2 * b < 1.11, 1, None, 1.2 * b, 1.11);

        let tables = self.tables()?;
        match chebyshev_window_scan(tables) {
            Ok(w) => {
                let ok = w.x0 <= WINDOW_SCAN_MIN_LIMIT;
                let points = tables.limit() - w.x0 + 1;
                rows.push("window_x0", ok, points, Some(w.x0 as f64), w.x0 as f64, WINDOW_SCAN_MIN_LIMIT as f64);
                rows.push("window_min_ratio", w.min_ratio > b, points, Some(w.min_at as f64), w.min_ratio, b);
                rows.push("window_max_ratio", w.max_ratio < 1.2 * b, points, Some(w.max_at as f64), w.max_ratio, 1.2 * b);
            }
            Err(Error::NoWindow { limit }) => {
                rows.push("window_x0", false, limit, Some(limit as f64), f64::NAN, WINDOW_SCAN_MIN_LIMIT as f64);
            }
            Err(e) => return Err(e),
        }

        let decades = decade_points(100, tables.limit());
        let witness = pi_ratio_trend(tables, &decades)?;
        let last = *decades.last().expect("max_n >= 100");
        // observed is the ratio at the witness, bound the ratio one decade earlier
        let at = witness.unwrap_or(last);
        let ratio = |x: u64| -> Result<f64> { Ok(crate::sieve::pi_ratio::<f64>(tables.pi_at(x)?, x)) };
        let before = if at >= 1000 { ratio(at / 10)? } else { f64::NAN };
        rows.push(
            "pi_ratio_decade_trend",
            witness.is_none(),
            decades.len() as u64,
            Some(at as f64),
            ratio(at)?,
            before,
        );
        Ok(())
    }

    fn inequalities(&self, rows: &mut RowBuilder) {
        for c in elementary_inequalities::<f64>() {
            rows.push(c.name, c.passed(), c.points, Some(c.witness), c.min_slack, 0.0);
        }
    }

    fn asymptotics(&self, rows: &mut RowBuilder) -> Result<()> {
        let tables = self.tables()?;
        let max = tables.limit();
        for claim in identity_catalog(tables)? {
            let grid = SampleGrid::new(claim.threshold as u64, max, true)?;
            let r = check_claim(&claim, &grid)?;
            rows.push(
                &claim.name,
                r.verdict.passed(),
                r.points_checked,
                Some(r.witness_x),
                r.sup_ratio,
                claim.constant,
            );
        }

        let est = crate::asymptotics::euler_gamma_estimate::<f64>(max)?;
        let err = (est - EULER_GAMMA).abs();
        let bound = 1.0 / max as f64;
        rows.push("euler_gamma_estimate", err < bound && est > EULER_GAMMA, 1, Some(max as f64), err, bound);

        let mut galois = Mismatches::default();
        for n in -100i64..=100 {
            for i in -100i32..=100 {
                let x = i as f64 * 0.1;
                galois.record(galois.points, floor_galois_check(n, x));
            }
        }
        galois.emit(rows, "floor_galois");

        let mut rng = check_rng(self.config.seed, STREAM_SHIFT);
        let mut worst_z = None;
        let mut shift_fail = 0u64;
        for _ in 0..SHIFT_SAMPLES {
            let z: f64 = rng.random_range(1.0..=SHIFT_MAX_Z);
            if !natfloor_shift_check(z)? {
                shift_fail += 1;
                worst_z.get_or_insert(z);
            }
        }
        rows.push("natfloor_shift", shift_fail == 0, SHIFT_SAMPLES as u64, worst_z, shift_fail as f64, 0.0);

        let mut worst = (0.0f64, 1u64);
        let points = decade_points(10, max);
        for &x in &points {
            let err = (telescoped_log::<f64>(x)? - (x as f64).ln()).abs();
            if err > worst.0 {
                worst = (err, x);
            }
        }
        rows.push(
            "telescoped_log",
            worst.0 <= 1e-9,
            points.len() as u64,
            Some(worst.1 as f64),
            worst.0,
            1e-9,
        );
        Ok(())
    }

    fn selberg(&self, rows: &mut RowBuilder) -> Result<()> {
        let tables = self.tables()?;
        let hi = SELBERG_RANGE.min(tables.limit());
        let r = selberg_check(tables, &SampleGrid::integers(2, hi)?)?;
        rows.push(
            "selberg_symmetry",
            r.verdict.passed(),
            r.points_checked,
            Some(r.witness_x),
            r.sup_ratio,
            SELBERG_CONSTANT,
        );

        let xs = r_inequality_samples(self.config.seed, R_INEQUALITY_MAX_X.min(tables.limit()));
        let r = r_inequality_check(tables, &xs)?;
        rows.push(
            "error_term_inequality",
            r.verdict.passed(),
            r.points_checked,
            Some(r.witness_x),
            r.sup_ratio,
            crate::selberg::R_INEQUALITY_CONSTANT,
        );
        Ok(())
    }

    fn iteration(&self, rows: &mut RowBuilder) -> Result<()> {
        let tr = iterate_bound(ITERATION_A1, ITERATION_K, ITERATION_STEPS)?;
        let n = tr.values.len() as u64;
        let lowest = tr.values.iter().copied().fold(f64::INFINITY, f64::min);
        rows.push("positive", tr.is_positive(), n, None, lowest, 0.0);
        let first_increase = tr.values.windows(2).position(|w| !(w[1] < w[0]));
        rows.push(
            "strictly_decreasing",
            first_increase.is_none(),
            n,
            first_increase.map(|i| (i + 2) as f64),
            first_increase.map_or(0.0, |_| 1.0),
            0.0,
        );
        let violation = tr.first_bound_violation();
        let last_bound = tr.closed_form_bound(tr.values.len());
        rows.push(
            "closed_form_bound",
            violation.is_none(),
            n,
            violation.map(|i| i as f64),
            tr.last(),
            last_bound,
        );
        rows.push(
            "final_term",
            tr.last() < ITERATION_FINAL_BOUND,
            1,
            Some(n as f64),
            tr.last(),
            ITERATION_FINAL_BOUND,
        );
        Ok(())
    }
}

/// The seed-determined sample points for the error-term inequality.
pub fn r_inequality_samples(seed: u64, max_x: u64) -> Vec<u64> {
    let mut rng = check_rng(seed, STREAM_R_INEQUALITY);
    let span = max_x.max(2) as usize - 1;
    let mut xs: Vec<u64> = rand::seq::index::sample(&mut rng, span, R_INEQUALITY_SAMPLES.min(span))
        .into_iter()
        .map(|i| i as u64 + 2)
        .collect();
    xs.sort_unstable();
    xs
}

/// Runs one suite with its own tables.
pub fn run_suite(suite: Suite, config: SuiteConfig) -> Result<Vec<CheckRow>> {
    Verifier::new(config).run(suite)
}
