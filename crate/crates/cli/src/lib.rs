//! Command implementations behind the `bt-wonder` binary. Every command
//! returns its output as text so that it can be tested without a process.

pub mod formats;
pub mod plot;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use bt_wonder_core::valued::parse_rational;
use bt_wonder_core::verify::{self, CheckReport, SampleField, SuiteConfig};
use bt_wonder_core::wonder::{closure_poset, stratum_membership, tau_label, StratumDescriptor};
use bt_wonder_core::{ApartmentPoint, PAdic, RootSystem, Seminorm, TAdic, Val, Q};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{file}:{line}: {msg}")]
    Parse { file: String, line: usize, msg: String },
    #[error("{0}")]
    Math(#[from] bt_wonder_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// Machine-readable class used in the `error[...]` prefix.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "parse",
            CliError::Math(_) => "math",
            CliError::Io { .. } => "io",
            CliError::Input(_) => "input",
            CliError::Usage(_) => "usage",
        }
    }

    /// The single line printed on stderr.
    pub fn render(&self) -> String {
        let msg = self.to_string().replace(['\n', '\r'], " ");
        format!("error[{}]: {}", self.kind(), msg.trim())
    }
}

/// Coefficient field of a session.
#[derive(Debug, Clone)]
pub enum FieldModel {
    PAdic(PAdic),
    TAdic,
}

#[derive(Debug, Clone)]
pub struct SessionConfig {
    pub system: RootSystem,
    pub field: FieldModel,
    /// Presentation base `b > 1` for `|f| = b^(-val)`.
    pub base: Q,
    pub seed: u64,
    /// Digits for decimal output; `None` keeps output exact.
    pub decimals: Option<usize>,
    pub out: Option<PathBuf>,
}

impl SessionConfig {
    pub fn new(system: &str, prime: u64, tadic: bool, base: &str) -> Result<SessionConfig, CliError> {
        let usage = |e: bt_wonder_core::Error| CliError::Usage(e.to_string());
        let system: RootSystem = system.parse().map_err(usage)?;
        let field = if tadic { FieldModel::TAdic } else { FieldModel::PAdic(PAdic::new(prime).map_err(usage)?) };
        let base = parse_rational(base).map_err(usage)?;
        if base <= Q::from_integer(1.into()) {
            return Err(CliError::Usage(format!("base must be a rational > 1, got {base}")));
        }
        Ok(SessionConfig { system, field, base, seed: 0, decimals: None, out: None })
    }
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

pub(crate) fn q_to_f64(q: &Q) -> f64 {
    let n: f64 = q.numer().to_string().parse().unwrap_or(f64::NAN);
    let d: f64 = q.denom().to_string().parse().unwrap_or(f64::NAN);
    n / d
}

/// `b^(-val)` rounded to `digits`.
pub fn abs_value(base: &Q, v: &Val, digits: usize) -> String {
    match v {
        Val::Inf => format!("{:.digits$}", 0.0),
        Val::Fin(q) => format!("{:.digits$}", q_to_f64(base).powf(-q_to_f64(q))),
    }
}

/// `val |f|` at the point `(x, y)` of a point file.
pub fn cmd_eval(cfg: &SessionConfig, points: &Path, poly: &Path) -> Result<String, CliError> {
    match &cfg.field {
        FieldModel::PAdic(p) => eval_with(cfg, p, points, poly),
        FieldModel::TAdic => eval_with(cfg, &TAdic, points, poly),
    }
}

fn eval_with<F: SampleField>(cfg: &SessionConfig, field: &F, points: &Path, poly: &Path) -> Result<String, CliError> {
    let rs = &cfg.system;
    let pname = points.display().to_string();
    let pf = formats::parse_points(rs, &pname, &read_file(points)?)?;
    let f = formats::parse_polynomial(rs, field, &poly.display().to_string(), &read_file(poly)?)?;
    let x = single(pf.xs().cloned(), "x", &pname)?.unwrap_or_else(|| ApartmentPoint::origin(rs.rank()));
    let y = single(pf.ys().map(|(_, y)| y.clone()), "y", &pname)?
        .ok_or_else(|| CliError::Input(format!("{pname}: no y record")))?;
    let v = Seminorm::new(rs, x, y)?.eval(field, &f)?;
    let mut out = format!("val = {v}\n");
    if let Some(d) = cfg.decimals {
        let _ = writeln!(out, "abs = {}", abs_value(&cfg.base, &v, d));
    }
    Ok(out)
}

fn single<T>(mut it: impl Iterator<Item = T>, label: &str, file: &str) -> Result<Option<T>, CliError> {
    let first = it.next();
    if it.next().is_some() {
        return Err(CliError::Input(format!("{file}: more than one {label} record")));
    }
    Ok(first)
}

/// Stratum report for every `y` record of a point file.
pub fn cmd_classify(cfg: &SessionConfig, points: &Path) -> Result<String, CliError> {
    let rs = &cfg.system;
    let pname = points.display().to_string();
    let pf = formats::parse_points(rs, &pname, &read_file(points)?)?;
    let x = single(pf.xs().cloned(), "x", &pname)?.unwrap_or_else(|| ApartmentPoint::origin(rs.rank()));
    let mut out = String::new();
    for (line, y) in pf.ys() {
        let tau = y.classify_stratum();
        let desc = stratum_membership(rs, &x, y)?;
        debug_assert_eq!(desc, StratumDescriptor::new(rs, y.chart(), tau));
        let _ = writeln!(out, "line {line}: {} label={} membership=ok", desc.report(rs), tau_label(tau));
    }
    if out.is_empty() {
        return Err(CliError::Input(format!("{pname}: no y record")));
    }
    Ok(out)
}

/// The closure order of strata as a DOT digraph of covering relations,
/// drawn bottom-up from the closed orbit.
pub fn cmd_poset(cfg: &SessionConfig) -> Result<String, CliError> {
    let rs = &cfg.system;
    let n = rs.rank();
    let cp = closure_poset(rs);
    if !cp.certified() {
        return Err(CliError::Input("closure order characterizations disagree".to_string()));
    }
    let mut out = String::new();
    let _ = writeln!(out, "digraph closure_poset {{");
    let _ = writeln!(out, "  label=\"{}\";", rs.spec_string());
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=box];");
    for &t in &cp.types {
        let note = if t.is_empty() && n > 0 {
            " (closed)"
        } else if t.len() == n {
            " (open)"
        } else {
            ""
        };
        let _ = writeln!(out, "  \"{}\" [label=\"{}{}\"];", t.bitstring(n), tau_label(t), note);
    }
    for (a, b) in &cp.covers {
        let _ = writeln!(out, "  \"{}\" -> \"{}\";", a.bitstring(n), b.bitstring(n));
    }
    let _ = writeln!(out, "}}");
    Ok(out)
}

/// Options of a verification run.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub suite: String,
    pub samples: usize,
    pub horizon: usize,
    pub timing: bool,
}

/// Runs a suite, one thread per check, and renders one JSON line per report
/// in check-name order. The flag is true when every check passed.
pub fn cmd_verify(cfg: &SessionConfig, opts: &VerifyOptions) -> Result<(String, bool), CliError> {
    let reports = match &cfg.field {
        FieldModel::PAdic(p) => verify_with(cfg, p, opts)?,
        FieldModel::TAdic => verify_with(cfg, &TAdic, opts)?,
    };
    let mut out = String::new();
    for r in &reports {
        let line = serde_json::to_string(r).map_err(|e| CliError::Input(e.to_string()))?;
        out.push_str(&line);
        out.push('\n');
    }
    Ok((out, reports.iter().all(|r| r.passed)))
}

fn verify_with<F: SampleField + Sync>(
    cfg: &SessionConfig,
    field: &F,
    opts: &VerifyOptions,
) -> Result<Vec<CheckReport>, CliError> {
    let names: Vec<&str> = match opts.suite.as_str() {
        "all" => verify::SUITES.iter().copied().filter(|&s| s != "all").collect(),
        s if verify::SUITES.contains(&s) => vec![s],
        other => {
            return Err(CliError::Usage(format!(
                "unknown suite {other:?}, expected one of {}",
                verify::SUITES.join(", ")
            )))
        }
    };
    let sc = SuiteConfig { samples: opts.samples, horizon: opts.horizon, seed: cfg.seed };
    let rs = &cfg.system;
    let mut reports: Vec<CheckReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = names
            .iter()
            .map(|&name| {
                scope.spawn(move || {
                    let start = std::time::Instant::now();
                    let mut r = verify::run_check(rs, field, name, &sc);
                    if opts.timing {
                        r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
                    }
                    r
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("check thread panicked")).collect()
    });
    reports.sort_by(|a, b| a.check.cmp(&b.check));
    Ok(reports)
}

/// Rank-2 apartment picture: `(svg, csv)`.
pub fn cmd_plot(cfg: &SessionConfig, overlay: bool) -> Result<(String, String), CliError> {
    let geo = plot::Geometry::new(&cfg.system, overlay)?;
    Ok((geo.svg(), geo.csv()))
}

/// Table of roots with the indices used in polynomial files.
pub fn cmd_roots(cfg: &SessionConfig) -> Result<String, CliError> {
    let rs = &cfg.system;
    let mut out = String::from("index\tsign\troot\n");
    for k in 0..rs.num_roots() {
        let v: Vec<String> = rs.root(k).iter().map(i64::to_string).collect();
        let sign = if rs.is_positive(k) { "+" } else { "-" };
        let _ = writeln!(out, "{k}\t{sign}\t({})", v.join(", "));
    }
    Ok(out)
}
