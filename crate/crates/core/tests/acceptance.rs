//! Acceptance checks at the default scale N = 10^6.
//!
//! Runs every criterion, prints one line per criterion and exits non-zero if
//! any of them failed. Reference values are recomputed here by independent
//! brute force wherever that is cheap.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use pnt_core::asymptotics::catalog::{euler_gamma_estimate, identity_catalog, CATALOG_NAMES};
use pnt_core::asymptotics::inequalities::{elementary_inequalities, BASEL_TERMS};
use pnt_core::selberg::{
    decade_points, iterate_bound, pi_ratio_trend, r_inequality_check, r_inequality_excess,
    selberg_check, selberg_lhs, R_INEQUALITY_CONSTANT, SELBERG_CONSTANT,
};
use pnt_core::sieve::{chebyshev_window_scan, pi_ratio};
use pnt_core::suites::{r_inequality_samples, Suite, SuiteConfig, Verifier};
use pnt_core::{chebyshev_b, check_claim, SampleGrid, Tables};

const N: u64 = 1_000_000;
const RECORDED_X0: u64 = 96_098;

type Outcome = Result<String, String>;

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("error: {e:?}")
}

// Λ by trial division, for n small enough to factor directly.
fn mangoldt_oracle(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut m = n;
            while m.is_multiple_of(p) {
                m /= p;
            }
            return if m == 1 { (p as f64).ln() } else { 0.0 };
        }
        p += 1;
    }
    (n as f64).ln()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol.max(tol * a.abs().max(b.abs()))
}

fn chebyshev_constant() -> Outcome {
    let b: f64 = chebyshev_b();
    let oracle = 2f64.ln() / 2.0 + 3f64.ln() / 3.0 + 5f64.ln() / 5.0 - 30f64.ln() / 30.0;
    ensure(
        b > 0.92 && b < 0.9213 && 1.2 * b < 1.11 && close(b, oracle, 1e-15),
        format!("B = {b:.10}, 6B/5 = {:.10}", 1.2 * b),
    )
}

fn chebyshev_window() -> Outcome {
    let tables = Tables::build(N).map_err(err)?;
    let w = chebyshev_window_scan(&tables).map_err(err)?;
    let b: f64 = chebyshev_b();
    ensure(
        w.x0 <= 100_000 && w.x0 == RECORDED_X0 && w.min_ratio > b && w.max_ratio < 1.2 * b,
        format!(
            "x0 = {} (recorded {RECORDED_X0}), ratio in [{:.6}, {:.6}]",
            w.x0, w.min_ratio, w.max_ratio
        ),
    )
}

fn pnt_trend() -> Outcome {
    let tables = Tables::build(N).map_err(err)?;
    // plain sieve of Eratosthenes as the π(10^6) oracle
    let mut composite = vec![false; N as usize + 1];
    let mut pi_oracle = 0u64;
    for i in 2..=N as usize {
        if !composite[i] {
            pi_oracle += 1;
            for j in (i * i..=N as usize).step_by(i) {
                composite[j] = true;
            }
        }
    }
    let pi = tables.pi_at(N).map_err(err)?;
    let ratio: f64 = pi_ratio(pi, N);
    let level_ok = pi == 78_498 && pi == pi_oracle && (1.083..=1.086).contains(&ratio);
    let decades = decade_points(100, N);
    let ratios: Vec<String> = decades
        .iter()
        .map(|&x| Ok(format!("{:.5}", pi_ratio::<f64>(tables.pi_at(x)?, x))))
        .collect::<pnt_core::Result<_>>()
        .map_err(err)?;
    let broken = pi_ratio_trend(&tables, &decades).map_err(err)?;
    let trend = match broken {
        None => "strictly decreasing".to_string(),
        Some(x) => format!("rises at {x}"),
    };
    ensure(
        level_ok && broken.is_none(),
        format!(
            "pi(10^6) = {pi}, ratio {ratio:.6}; decades 10^2..10^6 [{}] {trend}",
            ratios.join(", ")
        ),
    )
}

fn moebius_suite() -> Outcome {
    let rows = Verifier::new(SuiteConfig { max_n: 100_000, seed: 0 })
        .run(Suite::Moebius)
        .map_err(err)?;
    let sum = rows.iter().find(|r| r.check == "moebius_divisor_sum").ok_or("missing row")?;
    let inv = rows
        .iter()
        .find(|r| r.check == "moebius_inversion_roundtrip")
        .ok_or("missing row")?;
    ensure(
        rows.iter().all(|r| r.verdict.passed()) && sum.points == 100_000 && inv.points == 100 * 1_000,
        format!("{} checks, divisor sum over {} n, round trip over {} values", rows.len(), sum.points, inv.points),
    )
}

fn combinatorics_suite() -> Outcome {
    let rows = Verifier::new(SuiteConfig { max_n: N, seed: 0 })
        .run(Suite::Combinatorics)
        .map_err(err)?;
    let expected = [
        ("divisor_sum_reflection", 10_000),
        ("pair_enumeration", 500 * 100),
        ("divisor_pair_enumeration", 500 * 100),
        ("partial_summation", 200),
    ];
    let mut detail = Vec::new();
    let mut ok = rows.len() == expected.len();
    for (name, points) in expected {
        match rows.iter().find(|r| r.check == name) {
            Some(r) => {
                ok &= r.verdict.passed() && r.points == points;
                detail.push(format!("{name} {} ({})", r.verdict, r.points));
            }
            None => {
                ok = false;
                detail.push(format!("{name} missing"));
            }
        }
    }
    ensure(ok, detail.join(", "))
}

fn identity_catalog_check() -> Outcome {
    let tables = Tables::build(N).map_err(err)?;
    let claims = identity_catalog(&tables).map_err(err)?;
    let mut ok = claims.len() == CATALOG_NAMES.len();
    let mut detail = Vec::new();
    for claim in &claims {
        let grid = SampleGrid::new(claim.threshold as u64, N, true).map_err(err)?;
        let r = check_claim(claim, &grid).map_err(err)?;
        ok &= r.verdict.passed();
        detail.push(format!("{} {:.4}/{}", claim.name, r.sup_ratio, claim.constant));
    }
    let ln1p = claims.iter().find(|c| c.name == "ln1p_recip").ok_or("missing ln1p_recip")?;
    ok &= ln1p.constant == 1.0 && ln1p.threshold == 2.0;
    ensure(ok, detail.join(", "))
}

fn inequalities_check() -> Outcome {
    let checks = elementary_inequalities::<f64>();
    let basel = checks.iter().find(|c| c.name == "basel_partial").ok_or("missing basel")?;
    // Σ 1/n² stays below 2 all the way to 10^6
    let mut s = 0.0;
    let mut below_two = true;
    for n in 1..=BASEL_TERMS {
        s += 1.0 / (n * n) as f64;
        below_two &= s <= 2.0;
    }
    let ok = checks.len() == 5 && checks.iter().all(|c| c.passed()) && basel.points == BASEL_TERMS && below_two;
    let detail: Vec<String> = checks
        .iter()
        .map(|c| format!("{} slack {:.3e}", c.name, c.min_slack))
        .collect();
    ensure(ok, detail.join(", "))
}

fn euler_gamma() -> Outcome {
    let g: f64 = euler_gamma_estimate(N).map_err(err)?;
    let diff = (g - 0.5772157f64).abs();
    ensure(diff < 1e-6, format!("estimate {g:.10}, |diff| = {diff:.3e}"))
}

fn selberg_symmetry() -> Outcome {
    let tables = Tables::build(100_000).map_err(err)?;
    let r = selberg_check(&tables, &SampleGrid::integers(2, 100_000).map_err(err)?).map_err(err)?;
    let sup_ok = close(r.sup_ratio, SELBERG_CONSTANT, 1e-9) && SELBERG_CONSTANT <= 5.0;

    // brute-force double sum for x ≤ 10^3, integers and half-integers
    let lambda: Vec<f64> = (0..=1000).map(mangoldt_oracle).collect();
    let mut s = vec![0.0f64; 1001];
    for n in 1..=1000usize {
        let mut conv = 0.0;
        for d in 1..=n {
            if n % d == 0 {
                conv += lambda[d] * lambda[n / d];
            }
        }
        s[n] = s[n - 1] + lambda[n] * (n as f64).ln() + conv;
    }
    let mut worst = 0.0f64;
    let mut oracle_ok = true;
    for k in 2..=2000u64 {
        let x = k as f64 / 2.0;
        let got = selberg_lhs(x, &tables).map_err(err)?;
        let want = s[x.floor() as usize];
        oracle_ok &= close(got, want, 1e-9);
        worst = worst.max((got - want).abs());
    }
    ensure(
        sup_ok && oracle_ok,
        format!(
            "C_S = {:.12} at x = {} (recorded {SELBERG_CONSTANT}), oracle |diff| <= {worst:.2e}",
            r.sup_ratio, r.witness_x
        ),
    )
}

fn error_inequality() -> Outcome {
    let tables = Tables::build(10_000).map_err(err)?;
    let xs = r_inequality_samples(0, 10_000);
    let r = r_inequality_check(&tables, &xs).map_err(err)?;
    // ψ from the trial-division Λ, then the excess recomputed directly
    let mut psi = vec![0.0f64; 10_001];
    for n in 1..=10_000usize {
        psi[n] = psi[n - 1] + mangoldt_oracle(n as u64);
    }
    let mut oracle_ok = true;
    for &x in &xs {
        let xf = x as f64;
        let mut sum = 0.0;
        for n in 1..=x {
            sum += (psi[(x / n) as usize] - xf / n as f64).abs() * (n as f64).ln();
        }
        let excess = (psi[x as usize] - xf).abs() * xf.ln().powi(2) - 2.0 * sum;
        let got: f64 = r_inequality_excess(&tables, x).map_err(err)?;
        oracle_ok &= close(got, excess, 1e-9);
        oracle_ok &= excess <= R_INEQUALITY_CONSTANT * xf * xf.ln();
    }
    let distinct = xs.windows(2).all(|w| w[0] < w[1]);
    let in_range = xs.iter().all(|&x| (2..=10_000).contains(&x));
    ensure(
        r.verdict.passed() && oracle_ok && xs.len() == 200 && distinct && in_range,
        format!(
            "{} points, sup excess/(x ln x) = {:.6} at {} with C_R = {R_INEQUALITY_CONSTANT}",
            r.points_checked, r.sup_ratio, r.witness_x
        ),
    )
}

fn iteration() -> Outcome {
    let (a1, k) = (0.5f64, 0.1f64);
    let tr = iterate_bound(a1, k, 2000).map_err(err)?;
    let mut a = a1;
    let mut ok = tr.values.len() == 2000;
    for (i, &v) in tr.values.iter().enumerate() {
        let n = (i + 1) as f64;
        ok &= v == a && v > 0.0;
        ok &= v <= 1.0 / (1.0 / (a1 * a1) + 2.0 * k * (n - 1.0)).sqrt();
        a -= k * a * a * a;
    }
    ok &= tr.values.windows(2).all(|w| w[1] < w[0]);
    let last = tr.term(2000).ok_or("no a_2000")?;
    ensure(ok && last < 0.05, format!("a_2000 = {last:.8}"))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, u64, fn() -> Outcome);
    let criteria: [Criterion; 11] = [
        ("chebyshev constant", 1, chebyshev_constant),
        ("chebyshev window", 10, chebyshev_window),
        ("pnt ratio trend", 10, pnt_trend),
        ("moebius suite", 5, moebius_suite),
        ("combinatorics suite", 5, combinatorics_suite),
        ("identity catalog", 30, identity_catalog_check),
        ("elementary inequalities", 10, inequalities_check),
        ("euler constant", 1, euler_gamma),
        ("selberg symmetry", 60, selberg_symmetry),
        ("error term inequality", 30, error_inequality),
        ("iteration", 1, iteration),
    ];
    let mut failed = Vec::new();
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(*budget);
        let (ok, detail) = match outcome {
            Ok(d) => (in_time, d),
            Err(d) => (false, d),
        };
        println!(
            "{:>2} {} {name}: {detail} [{:.2}s / {budget}s{}]",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            if in_time { "" } else { " over budget" }
        );
        if !ok {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
