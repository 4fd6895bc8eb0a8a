//! Command-line driver.
//!
//! Settings are resolved as flags, then the TOML config file (from
//! `--config` or `HELSTROM_RING_CONFIG`), then built-in defaults.

use std::f64::consts::{FRAC_PI_4, PI};
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::discrimination::{post_insertion_cost_with, BarrierModel};
use crate::error::{invalid, Error, Result};
use crate::evolution::{snapshots, DEFAULT_GRID_POINTS};
use crate::exec::Exec;
use crate::expansion::{
    check_coefficients, discrepancies, energy_transfer, expand_candidate, sum_rule, Chamber,
    ChamberGeometry, CoefficientKind, EnergyVariant, DEFAULT_TRUNCATION,
};
use crate::output::{Cell, Format, Table};
use crate::ring::{Candidate, PhysicalConstants};

/// Printed coefficients are compared with quadrature at this tolerance.
pub const DISCREPANCY_TOLERANCE: f64 = 1e-10;

pub const CONFIG_ENV: &str = "HELSTROM_RING_CONFIG";

#[derive(Debug, Parser)]
#[command(name = "helstrom-ring", version, about = "Binary state discrimination on a ring with instantaneous barrier insertion")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bayes cost before and after inserting barriers at 0 and alpha.
    Cost(CommonArgs),
    /// Chamber coefficients a, b, c, d against their quadrature values.
    Coeffs(CoeffsArgs),
    /// Energy transferred into each chamber mode pair (n, m).
    Energy(CommonArgs),
    /// Density snapshots of one chamber at fractions of its revival period.
    Evolve(EvolveArgs),
    /// Parseval deficit and overlap sum rule against truncation.
    Parseval(CommonArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Barrier position in radians; accepts forms like `0.7`, `pi/4`, `0.25*pi`.
    #[arg(long, value_parser = parse_angle, conflicts_with = "alpha_sweep")]
    pub alpha: Option<f64>,
    /// Inclusive linear sweep `START:STOP:COUNT`.
    #[arg(long)]
    pub alpha_sweep: Option<String>,
    /// Modes kept per chamber.
    #[arg(long)]
    pub n_trunc: Option<usize>,
    /// Overlap between ground and energy-transfer barrier states.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Energy-transfer convention: `paper-literal` or `conserving`.
    #[arg(long)]
    pub variant: Option<String>,
    /// `csv` or `json`.
    #[arg(long)]
    pub format: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// TOML config file.
    #[arg(long, env = CONFIG_ENV)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CoeffsArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Where to write the discrepancy log; stderr when absent.
    #[arg(long)]
    pub discrepancy_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// `phi` or `psi`.
    #[arg(long, default_value = "phi")]
    pub candidate: String,
    /// `1` for (0, alpha), `2` for (alpha, 2pi).
    #[arg(long, default_value_t = 1)]
    pub chamber: u8,
    /// Comma-separated fractions of the revival period.
    #[arg(long, default_value = "0,0.25,0.5,1")]
    pub times: String,
    /// Sampling points per chamber.
    #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
    pub grid: usize,
}

/// Keys accepted in the config file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub alpha: Option<f64>,
    pub alpha_sweep: Option<String>,
    pub n_trunc: Option<usize>,
    pub epsilon: Option<f64>,
    pub variant: Option<String>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("reading config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| invalid(format!("config {}: {e}", path.display())))
    }
}

/// Fully resolved settings for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub alphas: Vec<f64>,
    pub truncation: usize,
    pub epsilon: f64,
    pub variant: EnergyVariant,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            alphas: vec![FRAC_PI_4],
            truncation: DEFAULT_TRUNCATION,
            epsilon: 0.0,
            variant: EnergyVariant::PaperLiteral,
            format: Format::Csv,
            out: None,
            jobs: None,
        }
    }
}

impl RunConfig {
    pub fn resolve(args: &CommonArgs) -> Result<Self> {
        let file = match &args.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        Self::merge(args, &file)
    }

    pub fn merge(args: &CommonArgs, file: &FileConfig) -> Result<Self> {
        let defaults = RunConfig::default();
        let alphas = if let Some(a) = args.alpha {
            vec![a]
        } else if let Some(s) = &args.alpha_sweep {
            parse_sweep(s)?
        } else if let Some(a) = file.alpha {
            vec![a]
        } else if let Some(s) = &file.alpha_sweep {
            parse_sweep(s)?
        } else {
            defaults.alphas
        };
        let truncation = args.n_trunc.or(file.n_trunc).unwrap_or(defaults.truncation);
        let epsilon = args.epsilon.or(file.epsilon).unwrap_or(defaults.epsilon);
        let variant = match args.variant.as_ref().or(file.variant.as_ref()) {
            Some(v) => v.parse()?,
            None => defaults.variant,
        };
        let format = match args.format.as_ref().or(file.format.as_ref()) {
            Some(f) => f.parse()?,
            None => defaults.format,
        };
        let config = RunConfig {
            alphas,
            truncation,
            epsilon,
            variant,
            format,
            out: args.out.clone().or_else(|| file.out.clone()),
            jobs: args.jobs.or(file.jobs),
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        if self.alphas.is_empty() {
            return Err(invalid("sweep must contain at least one point"));
        }
        for &a in &self.alphas {
            ChamberGeometry::new(a)?;
        }
        if self.truncation < 1 {
            return Err(invalid("--n-trunc must be at least 1"));
        }
        BarrierModel::new(self.epsilon)?;
        if self.jobs == Some(0) {
            return Err(invalid("--jobs must be at least 1"));
        }
        Ok(())
    }
}

/// Parses radians, allowing `pi` with an optional factor and divisor
/// (`pi`, `pi/4`, `0.25*pi`, `3*pi/8`).
pub fn parse_angle(s: &str) -> std::result::Result<f64, String> {
    let s = s.trim();
    let bad = || format!("cannot parse angle '{s}'");
    let Some(idx) = s.find("pi") else {
        return s.parse::<f64>().map_err(|_| bad());
    };
    let (head, tail) = (&s[..idx], &s[idx + 2..]);
    let factor = match head.trim_end_matches('*').trim() {
        "" => 1.0,
        "-" => -1.0,
        h => h.parse::<f64>().map_err(|_| bad())?,
    };
    let divisor = match tail.trim() {
        "" => 1.0,
        t => t.strip_prefix('/').ok_or_else(bad)?.trim().parse::<f64>().map_err(|_| bad())?,
    };
    Ok(factor * PI / divisor)
}

/// `START:STOP:COUNT`, inclusive of both ends; `COUNT = 1` yields `START`.
pub fn parse_sweep(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err(invalid(format!("sweep '{s}' is not START:STOP:COUNT")));
    };
    let start = parse_angle(start).map_err(invalid)?;
    let stop = parse_angle(stop).map_err(invalid)?;
    let count: usize = count
        .trim()
        .parse()
        .map_err(|_| invalid(format!("sweep count '{count}' is not an integer")))?;
    if count < 1 {
        return Err(invalid("sweep count must be at least 1"));
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    let step = (stop - start) / (count - 1) as f64;
    Ok((0..count)
        .map(|i| if i + 1 == count { stop } else { start + step * i as f64 })
        .collect())
}

fn parse_candidate(s: &str) -> Result<Candidate> {
    match s {
        "phi" => Ok(Candidate::Phi),
        "psi" => Ok(Candidate::Psi),
        other => Err(invalid(format!("candidate must be phi or psi, got '{other}'"))),
    }
}

fn parse_fractions(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|x| {
            let v: f64 = x.trim().parse().map_err(|_| invalid(format!("bad time fraction '{x}'")))?;
            if !(v.is_finite() && v >= 0.0) {
                return Err(invalid(format!("time fraction must be non-negative, got {v}")));
            }
            Ok(v)
        })
        .collect()
}

pub fn cost_table(config: &RunConfig, exec: Exec) -> Result<Table> {
    let model = BarrierModel::new(config.epsilon)?;
    let reports = exec.map_slice(&config.alphas, |&alpha| {
        post_insertion_cost_with(alpha, config.truncation, &model, exec)
    });
    let mut table = Table::new(vec![
        "alpha",
        "epsilon",
        "prior",
        "overlap_before",
        "cost_before",
        "overlap_after",
        "cost_after",
        "truncation",
        "deficit_phi",
        "deficit_psi",
    ]);
    for r in reports {
        let r = r?;
        table.push(vec![
            r.alpha.into(),
            r.epsilon.into(),
            r.prior.into(),
            r.overlap_before.into(),
            r.cost_before.into(),
            r.overlap_after.into(),
            r.cost_after.into(),
            r.truncation.into(),
            r.deficit_phi.into(),
            r.deficit_psi.into(),
        ]);
    }
    Ok(table)
}

/// Coefficient table and the discrepancy log of printed formulas.
pub fn coeffs_tables(config: &RunConfig, exec: Exec) -> Result<(Table, Table)> {
    let truncation = u32::try_from(config.truncation).map_err(|_| invalid("truncation too large"))?;
    let mut table = Table::new(vec![
        "alpha",
        "n",
        "a",
        "b",
        "c",
        "d",
        "oracle_a",
        "oracle_b",
        "oracle_c",
        "oracle_d",
        "max_abs_error",
        "deficit_phi",
        "deficit_psi",
    ]);
    let mut log = Table::new(vec!["alpha", "coefficient", "n", "printed", "oracle", "class"]);
    for &alpha in &config.alphas {
        let geometry = ChamberGeometry::new(alpha)?;
        let checks = check_coefficients(&geometry, truncation, exec)?;
        let deficit = |c| expand_candidate(c, &geometry, config.truncation, exec).map(|e| e.deficit());
        let (deficit_phi, deficit_psi) = (deficit(Candidate::Phi)?, deficit(Candidate::Psi)?);
        for row in checks.chunks(4) {
            let by_kind = |k: CoefficientKind| row.iter().find(|c| c.kind == k).expect("four kinds per n");
            let max_err = row.iter().map(|c| c.resolved_error()).fold(0.0, f64::max);
            let mut cells: Vec<Cell> = vec![alpha.into(), row[0].n.into()];
            cells.extend(CoefficientKind::ALL.iter().map(|&k| Cell::from(by_kind(k).resolved)));
            cells.extend(CoefficientKind::ALL.iter().map(|&k| Cell::from(by_kind(k).oracle)));
            cells.extend([max_err.into(), deficit_phi.into(), deficit_psi.into()]);
            table.push(cells);
        }
        log.extend(discrepancies(&checks, DISCREPANCY_TOLERANCE).into_iter().map(|d| {
            vec![
                d.alpha.into(),
                d.kind.name().into(),
                d.n.into(),
                d.printed.into(),
                d.oracle.into(),
                d.class.name().into(),
            ]
        }));
    }
    Ok((table, log))
}

pub fn energy_table(config: &RunConfig, exec: Exec) -> Result<Table> {
    let k = PhysicalConstants::default();
    let n_max = u32::try_from(config.truncation).map_err(|_| invalid("truncation too large"))?;
    let mut table = Table::new(vec![
        "alpha",
        "n",
        "m",
        "delta_e",
        "delta_e_paper",
        "delta_e_conserving",
        "variant_difference",
    ]);
    for &alpha in &config.alphas {
        let geometry = ChamberGeometry::new(alpha)?;
        let rows = exec.map_indexed(config.truncation, |i| {
            let n = i as u32 + 1;
            (1..=n_max)
                .map(|m| {
                    let t = energy_transfer(n, m, &geometry, &k)?;
                    let chosen = match config.variant {
                        EnergyVariant::PaperLiteral => t.delta_e_paper,
                        EnergyVariant::Conserving => t.delta_e_conserving,
                    };
                    Ok(vec![
                        alpha.into(),
                        n.into(),
                        m.into(),
                        chosen.into(),
                        t.delta_e_paper.into(),
                        t.delta_e_conserving.into(),
                        (t.delta_e_paper - t.delta_e_conserving).into(),
                    ])
                })
                .collect::<Result<Vec<Vec<Cell>>>>()
        });
        for r in rows {
            table.extend(r?);
        }
    }
    Ok(table)
}

pub fn evolve_table(config: &RunConfig, args: &EvolveArgs, exec: Exec) -> Result<Table> {
    let [alpha] = config.alphas.as_slice() else {
        return Err(invalid("evolve takes a single alpha, not a sweep"));
    };
    let geometry = ChamberGeometry::new(*alpha)?;
    let chamber = Chamber::from_index(args.chamber)?;
    let candidate = parse_candidate(&args.candidate)?;
    let fractions = parse_fractions(&args.times)?;
    if args.grid < 2 {
        return Err(invalid("--grid must be at least 2"));
    }
    let k = PhysicalConstants::default();
    let expansion = expand_candidate(candidate, &geometry, config.truncation, exec)?;
    let samples = snapshots(&expansion, chamber, &fractions, args.grid, &k, exec)?;
    let mut table = Table::new(vec!["theta", "density", "t", "chamber"]);
    table.extend(
        samples
            .into_iter()
            .map(|s| vec![s.theta.into(), s.density.into(), s.t.into(), s.chamber.into()]),
    );
    Ok(table)
}

/// Truncations reported by `parseval`: powers of ten below `n_max`, then
/// `n_max` itself.
pub fn parseval_levels(n_max: usize) -> Vec<usize> {
    let mut levels: Vec<usize> = std::iter::successors(Some(10usize), |&n| n.checked_mul(10))
        .take_while(|&n| n < n_max)
        .collect();
    levels.push(n_max);
    levels
}

pub fn parseval_table(config: &RunConfig, exec: Exec) -> Result<Table> {
    let mut table = Table::new(vec![
        "alpha",
        "n_trunc",
        "deficit_phi",
        "deficit_psi",
        "sum_rule",
        "cos_alpha",
        "sum_rule_error",
    ]);
    for &alpha in &config.alphas {
        let geometry = ChamberGeometry::new(alpha)?;
        for n in parseval_levels(config.truncation) {
            let phi = expand_candidate(Candidate::Phi, &geometry, n, exec)?;
            let psi = expand_candidate(Candidate::Psi, &geometry, n, exec)?;
            let s = sum_rule(&phi, &psi)?;
            table.push(vec![
                alpha.into(),
                n.into(),
                phi.deficit().into(),
                psi.deficit().into(),
                s.into(),
                alpha.cos().into(),
                (s - alpha.cos()).abs().into(),
            ]);
        }
    }
    Ok(table)
}

fn write_table(table: &Table, format: Format, out: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => {
            let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
            table.write(format, &mut file)?;
            file.flush()?;
            Ok(())
        }
        None => table.write(format, stdout),
    }
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    #[cfg(feature = "parallel")]
    if let Some(n) = jobs {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| invalid(format!("cannot build worker pool: {e}")))?;
        return Ok(pool.install(f));
    }
    #[cfg(not(feature = "parallel"))]
    let _ = jobs;
    Ok(f())
}

/// Runs one parsed command, writing tables to `stdout` (or `--out`) and
/// diagnostics to `stderr`.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let exec = Exec::Parallel;
    match &cli.command {
        Command::Cost(args) => {
            let config = RunConfig::resolve(args)?;
            let table = with_pool(config.jobs, || cost_table(&config, exec))??;
            write_table(&table, config.format, config.out.as_deref(), stdout)
        }
        Command::Coeffs(args) => {
            let config = RunConfig::resolve(&args.common)?;
            let (table, log) = with_pool(config.jobs, || coeffs_tables(&config, exec))??;
            write_table(&table, config.format, config.out.as_deref(), stdout)?;
            match &args.discrepancy_out {
                Some(path) => write_table(&log, Format::Csv, Some(path), stdout),
                None if log.rows().is_empty() => Ok(()),
                None => log.write_csv(stderr),
            }
        }
        Command::Energy(args) => {
            let config = RunConfig::resolve(args)?;
            let table = with_pool(config.jobs, || energy_table(&config, exec))??;
            write_table(&table, config.format, config.out.as_deref(), stdout)
        }
        Command::Evolve(args) => {
            let config = RunConfig::resolve(&args.common)?;
            let table = with_pool(config.jobs, || evolve_table(&config, args, exec))??;
            write_table(&table, config.format, config.out.as_deref(), stdout)
        }
        Command::Parseval(args) => {
            let config = RunConfig::resolve(args)?;
            let table = with_pool(config.jobs, || parseval_table(&config, exec))??;
            write_table(&table, config.format, config.out.as_deref(), stdout)
        }
    }
}
