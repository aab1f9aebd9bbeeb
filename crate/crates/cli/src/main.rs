use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use bt_wonder::{
    cmd_classify, cmd_eval, cmd_plot, cmd_poset, cmd_roots, cmd_verify, write_file, CliError, SessionConfig,
    VerifyOptions,
};

/// Seminorms on compactified apartments and the boundary strata of the
/// wonderful compactification.
#[derive(Parser, Debug)]
#[command(name = "bt-wonder", version)]
struct Cli {
    /// Root system, e.g. A2, B2xA1.
    #[arg(long, global = true, default_value = "A2")]
    system: String,
    /// Prime for the p-adic coefficient field.
    #[arg(long, global = true, default_value_t = 2)]
    prime: u64,
    /// Use Q(t) with the t-adic valuation instead of Q with the p-adic one.
    #[arg(long, global = true)]
    tadic: bool,
    /// Base b > 1 for absolute values b^(-val).
    #[arg(long, global = true, default_value = "2")]
    base: String,
    /// Seed for the verification harness.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Also print absolute values with this many decimals.
    #[arg(long, global = true)]
    decimals: Option<usize>,
    /// Output file (plot: path prefix for .svg and .csv).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate val|f| at the point (x, y) of a point file.
    Eval { points: PathBuf, polynomial: PathBuf },
    /// Report the stratum of every y record of a point file.
    Classify { points: PathBuf },
    /// Closure order of the strata as DOT.
    Poset,
    /// Run a verification suite; one JSON report per line.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 50)]
        horizon: usize,
        /// Record wall-clock time in the reports (breaks byte-identity).
        #[arg(long)]
        timing: bool,
    },
    /// SVG and CSV picture of a rank-2 apartment.
    Plot {
        /// Mark the base points e_τ.
        #[arg(long)]
        overlay: bool,
    },
    /// List roots with their indices.
    Roots,
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => write_file(p, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".to_string(), source })
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let mut cfg = SessionConfig::new(&cli.system, cli.prime, cli.tadic, &cli.base)?;
    cfg.seed = cli.seed;
    cfg.decimals = cli.decimals;
    cfg.out = cli.out.clone();
    let out = cfg.out.as_ref();
    match cli.command {
        Command::Eval { points, polynomial } => emit(out, &cmd_eval(&cfg, &points, &polynomial)?)?,
        Command::Classify { points } => emit(out, &cmd_classify(&cfg, &points)?)?,
        Command::Poset => emit(out, &cmd_poset(&cfg)?)?,
        Command::Roots => emit(out, &cmd_roots(&cfg)?)?,
        Command::Verify { suite, samples, horizon, timing } => {
            let (text, passed) = cmd_verify(&cfg, &VerifyOptions { suite, samples, horizon, timing })?;
            emit(out, &text)?;
            return Ok(passed);
        }
        Command::Plot { overlay } => {
            let (svg, csv) = cmd_plot(&cfg, overlay)?;
            let prefix = cfg.out.clone().unwrap_or_else(|| PathBuf::from("apartment"));
            let (svg_path, csv_path) = (prefix.with_extension("svg"), prefix.with_extension("csv"));
            write_file(&svg_path, &svg)?;
            write_file(&csv_path, &csv)?;
            println!("{}\n{}", svg_path.display(), csv_path.display());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let first = e.to_string().lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            eprintln!("{}", CliError::Usage(first).render());
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{}", e.render());
            ExitCode::from(if matches!(e, CliError::Usage(_)) { 2 } else { 1 })
        }
    }
}
