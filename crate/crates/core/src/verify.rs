//! Property suite run against freshly built tables.
//!
//! Output is a list of lines with no timings, so two runs with the same
//! configuration produce identical text.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analytics::{self, envelope_grid, fit_envelope, zeta_k_with, ZetaOptions};
use crate::arith::gcd;
use crate::bertrand::{scan_gaps, verify_interval, Witness};
use crate::bounds::sunley_log_envelope;
use crate::error::Result;
use crate::field::NumberField;
use crate::sieve::{build_table_with, BuildOptions, CoefficientTable};
use crate::splitting::{kronecker, DEFAULT_SEED};

pub const DEFAULT_LIMIT: u64 = 100_000;
const HYPERBOLA_POINTS: usize = 100;
const MULTIPLICATIVE_PAIRS: usize = 200;
const LATTICE_LIMIT: u64 = 10_000;
const WEIGHTED_MANGOLDT_CONSTANT: f64 = 4.0;
const WEIGHTED_MANGOLDT_ALPHAS: [f64; 3] = [0.3, 0.5, 0.7];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// A calibration surrogate was exceeded; not a failure.
    Warn,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Warn => "WARN",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub status: Status,
    pub field: String,
    pub name: &'static str,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}: {}", self.status, self.field, self.name, self.detail)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub limit: u64,
    pub fields: Vec<NumberField>,
    pub seed: u64,
    pub workers: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            limit: DEFAULT_LIMIT,
            fields: [-4, 5, -23].iter().map(|&d| NumberField::quadratic(d).expect("fundamental")).collect(),
            seed: DEFAULT_SEED,
            workers: None,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&c.to_string());
            out.push('\n');
        }
        let count = |s| self.checks.iter().filter(|c| c.status == s).count();
        out.push_str(&format!(
            "summary: {} passed, {} failed, {} warnings, {} skipped\n",
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Warn),
            count(Status::Skip)
        ));
        out
    }
}

fn pass_if(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

pub fn run(config: &VerifyConfig) -> Result<VerifyReport> {
    let opts = BuildOptions { workers: config.workers, seed: config.seed, ..Default::default() };
    let mut report = VerifyReport::default();
    for field in &config.fields {
        let table = build_table_with(field, config.limit, &opts)?;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut push = |status, name, detail: String| {
            report.checks.push(Check { status, field: field.label.clone(), name, detail });
        };
        for (status, name, detail) in field_checks(field, &table, &mut rng, config.seed)? {
            push(status, name, detail);
        }
    }
    Ok(report)
}

type Line = (Status, &'static str, String);

fn field_checks(field: &NumberField, t: &CoefficientTable, rng: &mut ChaCha8Rng, seed: u64) -> Result<Vec<Line>> {
    let x_max = t.limit();
    let mut out = Vec::new();

    out.push(match field.quadratic_discriminant() {
        Some(d) => {
            let oracle = divisor_character_sums(d, x_max);
            let bad = (1..=x_max as usize).filter(|&n| oracle[n] != t.coefficient(n as u64) as i64).count();
            (pass_if(bad == 0), "divisor-character oracle", format!("n<={x_max} matches={} mismatches={bad}", x_max as usize - bad))
        }
        None => (Status::Skip, "divisor-character oracle", "not quadratic".into()),
    });

    if field.quadratic_discriminant() == Some(-4) {
        let top = x_max.min(LATTICE_LIMIT);
        let lattice = gaussian_lattice_counts(top);
        let bad = (1..=top).filter(|&x| lattice[x as usize] != t.prefix_count(x)).count();
        out.push((pass_if(bad == 0), "lattice oracle", format!("x<={top} mismatches={bad}")));
    }

    let mut bad = 0;
    for _ in 0..MULTIPLICATIVE_PAIRS {
        let m = rng.gen_range(1..=x_max.min(1000));
        let n = rng.gen_range(1..=(x_max / m).max(1));
        if gcd(m, n) == 1 && m * n <= x_max && t.coefficient(m * n) != t.coefficient(m) * t.coefficient(n) {
            bad += 1;
        }
    }
    out.push((pass_if(bad == 0), "multiplicativity", format!("pairs={MULTIPLICATIVE_PAIRS} violations={bad}")));

    let mut worst = 0.0f64;
    for _ in 0..HYPERBOLA_POINTS {
        let x = rng.gen_range(1.0..=x_max as f64);
        let (l, r) = analytics::hyperbola_sides(t, x)?;
        worst = worst.max((l - r).abs() / l.abs().max(1.0));
    }
    out.push((pass_if(worst <= 1e-9), "hyperbola identity", format!("points={HYPERBOLA_POINTS} max_rel={worst:.3e}")));

    let mut bad = 0;
    let d = field.degree as f64;
    let mut bound = 0.0;
    let mut primes = crate::primes::primes_up_to(x_max).into_iter().peekable();
    for x in 1..=x_max {
        while let Some(&p) = primes.peek() {
            if p > x {
                break;
            }
            let pf = p as f64;
            bound += pf.ln() / (pf * pf - pf);
            primes.next();
        }
        if analytics::phi_defect(t, x as f64)?.abs() > d * bound {
            bad += 1;
        }
    }
    out.push((pass_if(bad == 0), "phi defect bound", format!("x<={x_max} violations={bad}")));

    for alpha in WEIGHTED_MANGOLDT_ALPHAS {
        let mut acc = 0.0;
        let mut measured = 0.0f64;
        for &(n, v) in t.mangoldt_entries() {
            acc += v / (n as f64).powf(alpha);
            let shape = d * ((n as f64).powf(1.0 - alpha) - alpha) / (1.0 - alpha);
            measured = measured.max(acc / shape);
        }
        let status = if measured <= WEIGHTED_MANGOLDT_CONSTANT { Status::Pass } else { Status::Warn };
        out.push((status, "weighted mangoldt shape", format!("alpha={alpha} constant={measured:.4} surrogate={WEIGHTED_MANGOLDT_CONSTANT}")));
    }

    let mut drift = 0.0f64;
    for x in 100..=x_max {
        drift = drift.max((analytics::mertens_sum(t, x as f64)? - (x as f64).ln()).abs());
    }
    let surrogate = 3.0 + d;
    let status = if drift <= surrogate { Status::Pass } else { Status::Warn };
    out.push((status, "mertens drift", format!("max={drift:.4} surrogate={surrogate}")));

    out.push(gap_check(t)?);

    if x_max >= 100 && field.degree > 1 {
        let fit = fit_envelope(t, field, Some(0.5))?;
        let bad = fit.grid.iter().filter(|p| p.f1.abs() > fit.envelope(p.x) * (1.0 + 1e-12)).count();
        out.push((pass_if(bad == 0 && fit.c_k.is_finite()), "error envelope", format!("alpha=0.5 C_K={:.6} violations={bad}", fit.c_k)));

        let bad = fit.grid.iter().filter(|p| !(p.f1.abs().ln() < sunley_log_envelope(field, p.x))).count();
        out.push((pass_if(bad == 0), "effective envelope domination", format!("grid={} violations={bad}", envelope_grid(x_max).len())));
    }

    let opts = ZetaOptions { seed, ..Default::default() };
    let values: Vec<_> = [2.0, 2.5, 3.0].iter().map(|&s| zeta_k_with(field, s, 1e-8, &opts)).collect::<Result<_>>()?;
    let partial: f64 = (1..=x_max).map(|n| t.coefficient(n) as f64 / (n as f64).powi(2)).sum();
    let ok = values.windows(2).all(|w| w[0].value > w[1].value) && partial <= values[0].upper;
    out.push((pass_if(ok), "zeta monotone and bracketed", format!("zeta(2)={:.10} partial={partial:.10}", values[0].value)));
    Ok(out)
}

fn gap_check(t: &CoefficientTable) -> Result<Line> {
    let x = t.limit() as f64;
    let report = match scan_gaps(t, x, 1) {
        Ok(r) => r,
        Err(_) => return Ok((Status::Skip, "bertrand gaps", "no prime norms".into())),
    };
    let b = report.b_lower;
    let mut norms = t.prime_norms().to_vec();
    norms.dedup();
    let mut bad = 0;
    for w in norms.windows(2) {
        let start = w[0] as f64 + 0.5;
        if b * start <= x && verify_interval(t, start, b)?.is_none() {
            bad += 1;
        }
    }
    let (qa, _) = report.witness.pair();
    let start = qa as f64 * (1.0 + 1e-7 / b);
    let tight = verify_interval(t, start, b - 1e-6)?.is_none();
    let witness = match report.witness {
        Witness::Leading(q) => format!("[1,{q}]"),
        Witness::Gap(a, c) => format!("[{a},{c}]"),
    };
    Ok((pass_if(bad == 0 && tight), "bertrand gaps", format!("b_lower={b:.6} witness={witness} uncovered={bad} tight={tight}")))
}

/// sum_{m | n} (D/m) for n <= limit.
pub fn divisor_character_sums(d: i64, limit: u64) -> Vec<i64> {
    let n = limit as usize;
    let mut out = vec![0i64; n + 1];
    for m in 1..=n {
        let chi = kronecker(d, m as u64) as i64;
        if chi != 0 {
            for k in (m..=n).step_by(m) {
                out[k] += chi;
            }
        }
    }
    out
}

/// #{(a, b) : a >= 1, b >= 0, a^2 + b^2 <= x} for x <= limit.
pub fn gaussian_lattice_counts(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut hits = vec![0u64; n + 1];
    let mut a = 1usize;
    while a * a <= n {
        let mut b = 0usize;
        while a * a + b * b <= n {
            hits[a * a + b * b] += 1;
            b += 1;
        }
        a += 1;
    }
    let mut acc = 0;
    for h in hits.iter_mut() {
        acc += *h;
        *h = acc;
    }
    hits
}
