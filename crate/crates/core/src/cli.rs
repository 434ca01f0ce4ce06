//! The `crie` command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification or audit fails, 2 on
//! usage or input errors. A `--config` file holds `key=value` lines named
//! like the long flags; explicit flags win over the file.

use std::collections::HashMap;
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::bounds::{audit_case, format_table, BoundReport, Verdict};
use crate::dist::{parse_distribution, Dist};
use crate::entropy::{crie, crie_all, CrieMethod};
use crate::error::{Error, Result};
use crate::estimation::{bootstrap_gof, SampleData};
use crate::quadrature::QuadratureConfig;
use crate::reference_table::{self, Agreement};
use crate::shape::{
    certify_icrie_dcrie, classify_aging, default_tau1_grid, linspace, DEFAULT_TAU1_POINTS,
};
use crate::truncation::{TruncatedView, Window};

/// Representations must agree to this for `verify` to succeed.
pub const VERIFY_SPREAD: f64 = 1e-6;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Table,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        <Self as ValueEnum>::from_str(s, true).map_err(|_| Error::Parse(format!("unknown format {s:?}")))
    }
}

#[derive(Debug, Parser)]
#[command(name = "crie", version, about = "Interval entropy of truncated lifetimes")]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Default)]
struct CommonArgs {
    /// Absolute quadrature tolerance.
    #[arg(long, global = true)]
    abs_tol: Option<f64>,
    /// Relative quadrature tolerance.
    #[arg(long, global = true)]
    rel_tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// File of key=value defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Recompute the published reference table.
    Table,
    /// Scan m1 and H over a grid of left endpoints.
    Scan {
        #[arg(long)]
        dist: Option<String>,
        #[arg(long)]
        tau2: Option<String>,
        /// `lo:hi:n` or a comma-separated list.
        #[arg(long)]
        grid: Option<String>,
        /// Also emit the variance and two-sided bounds.
        #[arg(long)]
        bounds: bool,
    },
    /// Audit every bound on one or more windows.
    Bounds {
        #[arg(long)]
        dist: Option<String>,
        /// Repeatable; defaults to the reference table windows.
        #[arg(long)]
        window: Vec<String>,
    },
    /// Compare the four entropy representations.
    Verify {
        #[arg(long)]
        dist: Option<String>,
        #[arg(long)]
        window: Option<String>,
    },
    /// Aging classes, plus the entropy class when `--tau2` is given.
    Classify {
        #[arg(long)]
        dist: Option<String>,
        #[arg(long)]
        tau2: Option<String>,
    },
    /// Bootstrap goodness-of-fit test of a data file.
    Gof {
        /// Newline-delimited sample.
        data: PathBuf,
        #[arg(long)]
        dist: Option<String>,
        #[arg(long)]
        window: Option<String>,
        #[arg(long)]
        replicates: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        alpha: Option<f64>,
    },
}

/// Resolved settings after merging flags over the config file.
#[derive(Debug, Clone)]
pub struct CliConfig {
    pub dist: Option<String>,
    pub window: Vec<String>,
    pub grid: Option<String>,
    pub tau2: Option<String>,
    pub quadrature: QuadratureConfig,
    pub format: Format,
    pub seed: u64,
    pub replicates: usize,
    pub alpha: f64,
    pub out: Option<PathBuf>,
}

pub fn parse_config_file(text: &str) -> Result<HashMap<String, String>> {
    let mut map = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::DataLine {
            line: i + 1,
            message: format!("expected key=value, got {line:?}"),
        })?;
        map.insert(k.trim().replace('_', "-"), v.trim().to_string());
    }
    Ok(map)
}

fn from_file<T: FromStr>(map: &HashMap<String, String>, key: &str) -> Result<Option<T>> {
    map.get(key)
        .map(|v| v.parse::<T>().map_err(|_| Error::Parse(format!("config {key}: bad value {v:?}"))))
        .transpose()
}

fn pick<T: FromStr>(flag: Option<T>, map: &HashMap<String, String>, key: &str) -> Result<Option<T>> {
    match flag {
        Some(v) => Ok(Some(v)),
        None => from_file(map, key),
    }
}

fn resolve(common: &CommonArgs, command: &Command) -> Result<CliConfig> {
    let map = match &common.config {
        Some(p) => parse_config_file(&std::fs::read_to_string(p).map_err(|e| io_error(p, e))?)?,
        None => HashMap::new(),
    };
    let none_s = || None::<String>;
    let (dist, window, grid, tau2, replicates, seed, alpha) = match command {
        Command::Table => (none_s(), vec![], none_s(), none_s(), None, None, None),
        Command::Scan { dist, tau2, grid, .. } => {
            (dist.clone(), vec![], grid.clone(), tau2.clone(), None, None, None)
        }
        Command::Bounds { dist, window } => (dist.clone(), window.clone(), none_s(), none_s(), None, None, None),
        Command::Verify { dist, window } => {
            (dist.clone(), window.iter().cloned().collect(), none_s(), none_s(), None, None, None)
        }
        Command::Classify { dist, tau2 } => (dist.clone(), vec![], none_s(), tau2.clone(), None, None, None),
        Command::Gof { dist, window, replicates, seed, alpha, .. } => (
            dist.clone(),
            window.iter().cloned().collect(),
            none_s(),
            none_s(),
            *replicates,
            *seed,
            *alpha,
        ),
    };
    let window = if window.is_empty() {
        map.get("window").map(|w| vec![w.clone()]).unwrap_or_default()
    } else {
        window
    };
    let defaults = QuadratureConfig::default();
    let quadrature = QuadratureConfig::new(
        pick(common.abs_tol, &map, "abs-tol")?.unwrap_or(defaults.abs_tol),
        pick(common.rel_tol, &map, "rel-tol")?.unwrap_or(defaults.rel_tol),
        defaults.max_subdivisions,
    )?;
    let alpha = pick(alpha, &map, "alpha")?.unwrap_or(0.05);
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!("alpha must be in (0, 1), got {alpha}")));
    }
    Ok(CliConfig {
        dist: pick(dist, &map, "dist")?,
        window,
        grid: pick(grid, &map, "grid")?,
        tau2: pick(tau2, &map, "tau2")?,
        quadrature,
        format: pick(common.format, &map, "format")?.unwrap_or(Format::Table),
        seed: pick(seed, &map, "seed")?.unwrap_or(0),
        replicates: pick(replicates, &map, "replicates")?.unwrap_or(999),
        alpha,
        out: pick(common.out.clone(), &map, "out")?,
    })
}

fn io_error(path: &Path, e: io::Error) -> Error {
    Error::Parse(format!("{}: {e}", path.display()))
}

/// `lo:hi:n` (inclusive linspace) or comma-separated values; empty is empty.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(vec![]);
    }
    let num = |t: &str| -> Result<f64> {
        t.trim().parse::<f64>().map_err(|_| Error::Parse(format!("grid value {t:?}")))
    };
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [lo, hi, n] => {
            let n: usize = n.trim().parse().map_err(|_| Error::Parse(format!("grid size {n:?}")))?;
            Ok(linspace(num(lo)?, num(hi)?, n))
        }
        [_] => s.split(',').map(num).collect(),
        _ => Err(Error::Parse(format!("grid must be lo:hi:n or a list, got {s:?}"))),
    }
}

fn parse_tau2(s: &str) -> Result<f64> {
    match s.trim().to_ascii_lowercase().as_str() {
        "inf" | "+inf" | "infinity" => Ok(f64::INFINITY),
        t => t.parse().map_err(|_| Error::Parse(format!("tau2 {s:?}"))),
    }
}

fn require<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str> {
    v.as_deref()
        .ok_or_else(|| Error::InvalidParameter(format!("--{flag} is required")))
}

/// Shortest representation that parses back to the same `f64`.
pub fn num(x: f64) -> String {
    format!("{x}")
}

fn write_csv(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| Error::Parse(format!("csv output: {e}"));
    w.write_record(header).map_err(csv_err)?;
    for r in rows {
        w.write_record(r).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::Parse(format!("csv output: {e}")))?;
    Ok(())
}

fn write_json_lines<T: Serialize>(out: &mut dyn Write, items: &[T]) -> Result<()> {
    for it in items {
        let line = serde_json::to_string(it).map_err(|e| Error::Parse(e.to_string()))?;
        writeln!(out, "{line}").map_err(|e| Error::Parse(e.to_string()))?;
    }
    Ok(())
}

fn write_text(out: &mut dyn Write, s: &str) -> Result<()> {
    out.write_all(s.as_bytes()).map_err(|e| Error::Parse(e.to_string()))
}

fn cmd_table(cfg: &CliConfig, out: &mut dyn Write) -> Result<i32> {
    let rows = reference_table::reproduce()?;
    let agreement = Agreement::of(&rows);
    match cfg.format {
        Format::Csv => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.distribution.to_string(),
                        num(r.tau1),
                        num(r.tau2),
                        num(r.computed),
                        num(r.published),
                        num(r.deviation),
                    ]
                })
                .collect();
            write_csv(out, &["distribution", "tau1", "tau2", "computed", "published", "deviation"], &body)?;
        }
        Format::Json => write_json_lines(out, &rows)?,
        Format::Table => {
            let mut s = format!(
                "{:<16} {:>5} {:>5} {:>12} {:>10} {:>10}\n",
                "distribution", "tau1", "tau2", "computed", "published", "deviation"
            );
            for r in &rows {
                s += &format!(
                    "{:<16} {:>5} {:>5} {:>12.7} {:>10.5} {:>10.2e}\n",
                    r.distribution, r.tau1, r.tau2, r.computed, r.published, r.deviation
                );
            }
            s += &format!(
                "max deviation {:.2e}; {} of {} cells within {:.0e}\n",
                agreement.max_deviation,
                agreement.within_tight,
                agreement.cells,
                reference_table::TIGHT_DEVIATION
            );
            write_text(out, &s)?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanRow {
    pub tau1: f64,
    pub m1: f64,
    pub entropy: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variance_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub survival_product_bound: Option<f64>,
}

/// Rows for each `τ1` in the grid; windows that cannot be formed are skipped
/// with a warning.
pub fn scan_rows(
    dist: &Dist,
    tau2: f64,
    grid: &[f64],
    with_bounds: bool,
    qcfg: QuadratureConfig,
    warn: &mut dyn Write,
) -> Result<Vec<ScanRow>> {
    let results: Vec<(f64, Result<ScanRow>)> = grid
        .par_iter()
        .map(|&t1| {
            let row = (|| {
                let v = TruncatedView::with_config(dist.clone(), Window::new(t1, tau2)?, qcfg)?;
                let (variance_bound, survival_product_bound) = if with_bounds {
                    let prod = v.integrate(|x| {
                        let u = v.u(x);
                        u * (1.0 - u)
                    })?;
                    (Some(v.cond_var()?.sqrt()), Some(prod))
                } else {
                    (None, None)
                };
                Ok(ScanRow {
                    tau1: t1,
                    m1: v.m1()?,
                    entropy: crie(&v, CrieMethod::Definition)?,
                    variance_bound,
                    survival_product_bound,
                })
            })();
            (t1, row)
        })
        .collect();
    let mut rows = Vec::with_capacity(results.len());
    for (t1, r) in results {
        match r {
            Ok(row) => rows.push(row),
            Err(e @ (Error::InvalidWindow(_) | Error::DegenerateWindow { .. })) => {
                let _ = writeln!(warn, "warning: skipping tau1 = {t1}: {e}");
            }
            Err(e) => return Err(e),
        }
    }
    Ok(rows)
}

fn cmd_scan(cfg: &CliConfig, with_bounds: bool, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let dist = parse_distribution(require(&cfg.dist, "dist")?)?;
    let tau2 = parse_tau2(require(&cfg.tau2, "tau2")?)?;
    let grid = match &cfg.grid {
        Some(g) => parse_grid(g)?,
        None => default_tau1_grid(&dist, tau2, DEFAULT_TAU1_POINTS),
    };
    let rows = scan_rows(&dist, tau2, &grid, with_bounds, cfg.quadrature, err)?;
    match cfg.format {
        Format::Json => write_json_lines(out, &rows)?,
        // plot-ready csv is the contract for scans, so "table" means csv here
        Format::Csv | Format::Table => {
            let mut header = vec!["tau1", "m1", "entropy"];
            if with_bounds {
                header.extend(["variance_bound", "survival_product_bound"]);
            }
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let mut v = vec![num(r.tau1), num(r.m1), num(r.entropy)];
                    v.extend(r.variance_bound.map(num));
                    v.extend(r.survival_product_bound.map(num));
                    v
                })
                .collect();
            write_csv(out, &header, &body)?;
        }
    }
    Ok(EXIT_OK)
}

fn reference_windows(dist: &Dist) -> Vec<Window> {
    let (lo, hi) = dist.support();
    let unit = hi.is_finite() && hi <= 1.0 && lo >= 0.0;
    reference_table::cells()
        .into_iter()
        .map(|c| c.window)
        .filter(|&(a, _)| (a < 1.0) == unit)
        .map(|(a, b)| Window::new(a, b).expect("reference windows are valid"))
        .fold(Vec::new(), |mut acc, w| {
            if !acc.contains(&w) {
                acc.push(w);
            }
            acc
        })
}

fn cmd_bounds(cfg: &CliConfig, out: &mut dyn Write) -> Result<i32> {
    let spec = require(&cfg.dist, "dist")?;
    let dist = parse_distribution(spec)?;
    let windows: Vec<Window> = if cfg.window.is_empty() {
        reference_windows(&dist)
    } else {
        cfg.window.iter().map(|w| w.parse()).collect::<Result<_>>()?
    };
    let results: Vec<Result<Vec<BoundReport>>> = windows.par_iter().map(|w| audit_case(&dist, *w)).collect();
    let mut failed = false;
    let mut text = String::new();
    let mut json_rows = Vec::new();
    let mut csv_rows = Vec::new();
    for (w, r) in windows.iter().zip(results) {
        match r {
            Ok(reports) => {
                failed |= reports.iter().any(|r| r.verdict == Verdict::Violated);
                text += &format!("window {w}\n{}\n", format_table(&reports));
                for r in reports {
                    csv_rows.push(vec![
                        w.to_string(),
                        r.bound_id.clone(),
                        format!("{:?}", r.kind).to_lowercase(),
                        num(r.lhs),
                        num(r.rhs),
                        num(r.slack),
                        r.verdict.as_str().to_string(),
                        r.discrepancy.clone().unwrap_or_default(),
                    ]);
                    json_rows.push(json!({ "dist": spec, "window": w.to_string(), "report": r }));
                }
            }
            Err(e) => {
                failed = true;
                text += &format!("window {w}\nerror: {e}\n\n");
                csv_rows.push(vec![w.to_string(), "error".into(), String::new(), String::new(), String::new(), String::new(), "error".into(), e.to_string()]);
                json_rows.push(json!({ "dist": spec, "window": w.to_string(), "error": e.to_string() }));
            }
        }
    }
    match cfg.format {
        Format::Table => write_text(out, &text)?,
        Format::Json => write_json_lines(out, &json_rows)?,
        Format::Csv => write_csv(
            out,
            &["window", "bound", "kind", "lhs", "rhs", "slack", "verdict", "note"],
            &csv_rows,
        )?,
    }
    Ok(if failed { EXIT_FAILED } else { EXIT_OK })
}

fn single_window(cfg: &CliConfig) -> Result<Window> {
    match cfg.window.as_slice() {
        [w] => w.parse(),
        [] => Err(Error::InvalidParameter("--window is required".into())),
        _ => Err(Error::InvalidParameter("exactly one --window is allowed".into())),
    }
}

fn cmd_verify(cfg: &CliConfig, out: &mut dyn Write) -> Result<i32> {
    let dist = parse_distribution(require(&cfg.dist, "dist")?)?;
    let window = single_window(cfg)?;
    let v = TruncatedView::with_config(dist, window, cfg.quadrature)?;
    let values = crie_all(&v)?;
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let spread = hi - lo;
    let ok = spread <= VERIFY_SPREAD;
    match cfg.format {
        Format::Json => {
            let mut obj = serde_json::Map::new();
            for (m, x) in CrieMethod::ALL.iter().zip(values) {
                obj.insert(m.as_str().into(), json!(x));
            }
            obj.insert("spread".into(), json!(spread));
            obj.insert("agrees".into(), json!(ok));
            write_json_lines(out, &[serde_json::Value::Object(obj)])?;
        }
        Format::Csv => {
            let mut body: Vec<Vec<String>> = CrieMethod::ALL
                .iter()
                .zip(values)
                .map(|(m, x)| vec![m.as_str().to_string(), num(x)])
                .collect();
            body.push(vec!["spread".into(), num(spread)]);
            write_csv(out, &["method", "value"], &body)?;
        }
        Format::Table => {
            let mut s = String::new();
            for (m, x) in CrieMethod::ALL.iter().zip(values) {
                s += &format!("{:<16} {:.12}\n", m.as_str(), x);
            }
            s += &format!("{:<16} {:.3e} ({})\n", "spread", spread, if ok { "agree" } else { "DISAGREE" });
            write_text(out, &s)?;
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_classify(cfg: &CliConfig, out: &mut dyn Write) -> Result<i32> {
    let dist = parse_distribution(require(&cfg.dist, "dist")?)?;
    let aging = classify_aging(&dist)?;
    let shape = match &cfg.tau2 {
        Some(t) => {
            let tau2 = parse_tau2(t)?;
            let grid = default_tau1_grid(&dist, tau2, DEFAULT_TAU1_POINTS);
            Some(certify_icrie_dcrie(&dist, tau2, &grid, cfg.quadrature)?)
        }
        None => None,
    };
    let name = |v: &dyn erased::Named| v.name();
    match cfg.format {
        Format::Json => {
            let obj = json!({
                "hazard": aging.hazard,
                "mrl": aging.mrl,
                "expectation": aging.expectation,
                "entropy_class": shape.as_ref().map(|s| s.verdict),
            });
            write_json_lines(out, &[obj])?;
        }
        Format::Csv => {
            let mut body = vec![
                vec!["hazard".to_string(), name(&aging.hazard)],
                vec!["mrl".to_string(), name(&aging.mrl)],
                vec!["expectation".to_string(), name(&aging.expectation)],
            ];
            if let Some(s) = &shape {
                body.push(vec!["entropy_class".to_string(), name(&s.verdict)]);
            }
            write_csv(out, &["property", "class"], &body)?;
        }
        Format::Table => {
            let mut s = format!(
                "hazard       {}\nmrl          {}\nexpectation  {}\n",
                name(&aging.hazard),
                name(&aging.mrl),
                name(&aging.expectation)
            );
            if let Some(c) = &shape {
                s += &format!("entropy      {} (tau2 = {})\n", name(&c.verdict), c.tau2);
            }
            write_text(out, &s)?;
        }
    }
    Ok(EXIT_OK)
}

mod erased {
    use serde::Serialize;

    /// Lower-case serde name of a unit enum variant.
    pub trait Named {
        fn name(&self) -> String;
    }

    impl<T: Serialize> Named for T {
        fn name(&self) -> String {
            serde_json::to_value(self)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default()
        }
    }
}

fn cmd_gof(cfg: &CliConfig, data: &Path, out: &mut dyn Write) -> Result<i32> {
    let dist = parse_distribution(require(&cfg.dist, "dist")?)?;
    let window = single_window(cfg)?;
    let sample = SampleData::from_path(data)?;
    let r = bootstrap_gof(&sample, &dist, window, cfg.replicates, cfg.seed)?;
    let reject = r.rejects(cfg.alpha);
    match cfg.format {
        Format::Json => write_json_lines(out, &[json!({
            "statistic": r.statistic,
            "p_value": r.p_value,
            "replicates": r.replicates,
            "seed": r.seed,
            "alpha": cfg.alpha,
            "reject": reject,
        })])?,
        Format::Csv => write_csv(
            out,
            &["statistic", "p_value", "replicates", "seed", "alpha", "reject"],
            &[vec![
                num(r.statistic),
                num(r.p_value),
                r.replicates.to_string(),
                r.seed.to_string(),
                num(cfg.alpha),
                reject.to_string(),
            ]],
        )?,
        Format::Table => write_text(
            out,
            &format!(
                "statistic   {:.10}\np-value     {:.6} ({} replicates, seed {})\ndecision    {} at alpha = {}\n",
                r.statistic,
                r.p_value,
                r.replicates,
                r.seed,
                if reject { "reject" } else { "do not reject" },
                cfg.alpha
            ),
        )?,
    }
    Ok(EXIT_OK)
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let cfg = resolve(&cli.common, &cli.command)?;
    let mut file;
    let mut stdout_sink;
    let sink: &mut dyn Write = match &cfg.out {
        Some(p) => {
            file = BufWriter::new(File::create(p).map_err(|e| io_error(p, e))?);
            &mut file
        }
        None => {
            stdout_sink = out;
            &mut stdout_sink
        }
    };
    let code = match &cli.command {
        Command::Table => cmd_table(&cfg, sink),
        Command::Scan { bounds, .. } => cmd_scan(&cfg, *bounds, sink, err),
        Command::Bounds { .. } => cmd_bounds(&cfg, sink),
        Command::Verify { .. } => cmd_verify(&cfg, sink),
        Command::Classify { .. } => cmd_classify(&cfg, sink),
        Command::Gof { data, .. } => cmd_gof(&cfg, data, sink),
    }?;
    sink.flush().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(code)
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("crie").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn grid_forms() {
        assert_eq!(parse_grid("").unwrap(), Vec::<f64>::new());
        assert_eq!(parse_grid("1,2.5").unwrap(), vec![1.0, 2.5]);
        assert_eq!(parse_grid("0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("a,b").is_err());
    }

    #[test]
    fn config_file_lines() {
        let m = parse_config_file("# c\ndist = exp:1\nabs_tol=1e-9\n\n").unwrap();
        assert_eq!(m["dist"], "exp:1");
        assert_eq!(m["abs-tol"], "1e-9");
        assert!(matches!(parse_config_file("oops"), Err(Error::DataLine { line: 1, .. })));
    }

    #[test]
    fn verify_exponential() {
        let (code, out, _) = run_str(&["verify", "--dist", "exp:0.5", "--window", "3:10", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert!((v["definition"].as_f64().unwrap() - 1.52470).abs() < 1e-4);
        assert!(v["spread"].as_f64().unwrap() < 1e-6);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_str(&["verify", "--dist", "exp:1", "--window", "5:2"]).0, 2);
        assert_eq!(run_str(&["bounds", "--dist", "exp:1", "--window", "nope"]).0, 2);
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        assert_eq!(run_str(&["verify", "--dist", "exp:1", "--window", "100:101"]).0, 2);
        assert_eq!(run_str(&["gof", "/nonexistent/file", "--dist", "exp:1", "--window", "0:1"]).0, 2);
    }

    #[test]
    fn empty_scan_has_header() {
        let (code, out, _) = run_str(&["scan", "--dist", "exp:1", "--tau2", "10", "--grid", "", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "tau1,m1,entropy");
    }

    #[test]
    fn scan_skips_bad_rows() {
        let (code, out, err) = run_str(&["scan", "--dist", "exp:1", "--tau2", "2", "--grid", "1,3"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 2);
        assert!(err.contains("skipping tau1 = 3"));
    }

    #[test]
    fn classify_exponential() {
        let (code, out, _) = run_str(&["classify", "--dist", "exp:1", "--format", "csv"]);
        assert_eq!(code, 0);
        assert!(out.contains("hazard,constant"), "{out}");
    }
}
