use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Serialize;

use nfbertrand::analytics::{self, fit_envelope};
use nfbertrand::bertrand::scan_gaps;
use nfbertrand::bounds::{self, BoundCase, EffectiveConstants};
use nfbertrand::cache::{read_table, write_table};
use nfbertrand::sieve::{build_table_with, BuildOptions, CoefficientTable};
use nfbertrand::verify::{self, VerifyConfig};
use nfbertrand::{load_field, Error, NumberField};

use crate::format::{csv_field, sig15};
use crate::{Cli, Command};

const TOP_RATIOS: usize = 10;
const DEFAULT_GENERAL_ALPHA: f64 = 0.5;

/// The property suite reported failures.
#[derive(Debug)]
pub struct Failed;

impl std::fmt::Display for Failed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("verification failed")
    }
}

impl std::error::Error for Failed {}

pub fn run(cli: &Cli) -> Result<()> {
    if cli.limit == 0 {
        return Err(Error::Parameter("--limit must be at least 1".into()).into());
    }
    if cli.workers == Some(0) {
        return Err(Error::Parameter("--workers must be at least 1".into()).into());
    }
    match cli.command {
        Command::FieldInfo => field_info(cli),
        Command::Count => count(cli),
        Command::Gaps => gaps(cli),
        Command::Bounds => bounds_cmd(cli),
        Command::Verify => verify_cmd(cli),
    }
}

fn load_fields(cli: &Cli) -> Result<Vec<NumberField>> {
    if cli.fields.is_empty() {
        return Err(Error::Parameter("no field definitions given (use --fields PATH...)".into()).into());
    }
    cli.fields
        .iter()
        .map(|path| {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            load_field(&text).with_context(|| format!("loading {}", path.display()))
        })
        .collect()
}

fn emit(cli: &Cli, file_name: &str, content: &str) -> Result<()> {
    match &cli.out {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let path = dir.join(file_name);
            fs::write(&path, content).with_context(|| format!("writing {}", path.display()))?;
        }
        None => print!("{content}"),
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(Error::from)?;
    s.push('\n');
    Ok(s)
}

fn cache_path(dir: &Path, label: &str, limit: u64) -> PathBuf {
    let name: String = label.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect();
    dir.join(format!("{name}_{limit}.nftab"))
}

fn table_for(cli: &Cli, field: &NumberField) -> Result<CoefficientTable> {
    let opts = BuildOptions { workers: cli.workers, seed: cli.seed, ..Default::default() };
    let Some(dir) = &cli.cache else {
        return Ok(build_table_with(field, cli.limit, &opts)?);
    };
    let path = cache_path(dir, &field.label, cli.limit);
    if path.exists() {
        match read_table(&path, &field.label, cli.limit) {
            Ok(t) => return Ok(t),
            Err(Error::CacheMismatch(why)) => eprintln!("warning: ignoring cache {}: {why}", path.display()),
            Err(e) => return Err(e).with_context(|| format!("reading cache {}", path.display())),
        }
    }
    let table = build_table_with(field, cli.limit, &opts)?;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    write_table(&path, &table).with_context(|| format!("writing cache {}", path.display()))?;
    Ok(table)
}

#[derive(Serialize)]
struct MinkowskiInfo {
    holds: bool,
    lhs: f64,
    rhs: f64,
    margin: f64,
}

#[derive(Serialize)]
struct FieldInfo {
    schema: &'static str,
    label: String,
    degree: u32,
    discriminant: i64,
    signature: (u32, u32),
    class_number: u64,
    regulator: f64,
    roots_of_unity: u32,
    residue: f64,
    minkowski: Option<MinkowskiInfo>,
    friedman_ratio: f64,
}

fn field_info(cli: &Cli) -> Result<()> {
    let mut out = Vec::new();
    for field in load_fields(cli)? {
        let minkowski = field
            .minkowski_check()
            .ok()
            .map(|m| MinkowskiInfo { holds: m.holds, lhs: m.lhs, rhs: m.rhs, margin: m.margin });
        out.push(FieldInfo {
            schema: "1",
            residue: field.residue()?,
            friedman_ratio: field.friedman_ratio(),
            signature: (field.r1, field.r2),
            degree: field.degree,
            discriminant: field.discriminant,
            class_number: field.class_number,
            regulator: field.regulator,
            roots_of_unity: field.roots_of_unity,
            minkowski,
            label: field.label,
        });
    }
    emit(cli, "field-info.json", &to_json(&out)?)
}

fn default_grid(limit: u64) -> Vec<f64> {
    let mut grid = Vec::new();
    let mut x = 10u64;
    while x <= limit {
        grid.push(x as f64);
        x = match x.checked_mul(10) {
            Some(v) => v,
            None => break,
        };
    }
    if grid.last() != Some(&(limit as f64)) {
        grid.push(limit as f64);
    }
    grid
}

fn count(cli: &Cli) -> Result<()> {
    let fields = load_fields(cli)?;
    let grid = if cli.grid.is_empty() { default_grid(cli.limit) } else { cli.grid.clone() };
    let mut csv = String::from("label,x,count,rho_x,f1,f2,pi_k,psi_k,mertens\n");
    for field in &fields {
        let table = table_for(cli, field)?;
        let rho = field.residue()?;
        for &x in &grid {
            if !(x >= 1.0 && x <= cli.limit as f64) {
                eprintln!("warning: grid point {x} outside [1, {}], row omitted", cli.limit);
                continue;
            }
            let row = [
                csv_field(&field.label),
                sig15(x),
                table.count_ideals(x)?.to_string(),
                sig15(rho * x),
                sig15(analytics::f1(&table, field, x)?),
                sig15(analytics::f2(&table, field, x)?),
                analytics::pi_k(&table, x)?.to_string(),
                sig15(analytics::psi_k(&table, x)?),
                sig15(analytics::mertens_sum(&table, x)?),
            ];
            csv.push_str(&row.join(","));
            csv.push('\n');
        }
    }
    emit(cli, "count.csv", &csv)
}

fn gaps(cli: &Cli) -> Result<()> {
    let mut reports = Vec::new();
    for field in load_fields(cli)? {
        let table = table_for(cli, &field)?;
        reports.push(scan_gaps(&table, cli.limit as f64, TOP_RATIOS)?);
    }
    emit(cli, "gaps.json", &to_json(&reports)?)
}

fn constants(cli: &Cli) -> Result<EffectiveConstants> {
    let mut c: EffectiveConstants = match &cli.constants {
        Some(text) => serde_json::from_str(text).map_err(Error::from).context("parsing --constants")?,
        None => EffectiveConstants::default(),
    };
    if cli.delta.is_some() {
        c.delta = cli.delta;
    }
    c.validate()?;
    Ok(c)
}

fn bounds_cmd(cli: &Cli) -> Result<()> {
    let fields = load_fields(cli)?;
    let c = constants(cli)?;
    for field in &fields {
        c.delta_for(field.degree).with_context(|| format!("field {}", field.label))?;
    }
    let general = BoundCase::General { alpha: cli.alpha.unwrap_or(DEFAULT_GENERAL_ALPHA) };
    let mut reports = Vec::new();
    for field in &fields {
        for case in [BoundCase::Normal, BoundCase::Tower, general, BoundCase::Grh] {
            reports.push(bounds::lo_threshold(field, &c, case)?);
        }
        reports.push(bounds::stark_report(field, &c, BoundCase::Normal)?);
        reports.push(bounds::sunley_report(field, cli.limit as f64, &c)?);
        reports.push(bounds::sun_corollary(field, &c)?);
        let table = table_for(cli, field)?;
        let fit = fit_envelope(&table, field, cli.alpha)?;
        reports.push(bounds::bigt_report(&fit, field, &c)?);
        reports.push(bounds::maint_corollary(field, &c)?);
    }
    emit(cli, "bounds.json", &to_json(&reports)?)
}

fn verify_cmd(cli: &Cli) -> Result<()> {
    let mut config = VerifyConfig { limit: cli.limit, seed: cli.seed, workers: cli.workers, ..Default::default() };
    if !cli.fields.is_empty() {
        config.fields = load_fields(cli)?;
    }
    let report = verify::run(&config)?;
    emit(cli, "verify.txt", &report.render())?;
    if !report.passed() {
        bail!(Failed);
    }
    Ok(())
}
