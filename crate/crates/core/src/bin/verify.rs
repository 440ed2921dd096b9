use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use isodeform::suite::{parse_group, run_suite, Report, SuiteConfig, SuiteName, ThetaArg};
use isodeform::Error;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Run a verification suite and report per-check results.
#[derive(Parser, Debug)]
#[command(name = "verify", version)]
struct Cli {
    /// cocycle | torus | sphere | hopf | homog | spin | chern
    suite: Option<String>,
    /// Scalar `p/q` or matrix `[[0,1/3],[-1/3,0]]`.
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON config file; flags given on the command line override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    l: Option<usize>,
    /// Lattice cutoff for the spin suite.
    #[arg(long = "N")]
    n: Option<i64>,
    #[arg(long)]
    max_degree: Option<u32>,
    #[arg(long)]
    samples: Option<usize>,
    /// t2 | u2 | so5-entries
    #[arg(long)]
    group: Option<String>,
    /// s4 | s2l | u2-flag
    #[arg(long)]
    space: Option<String>,
    /// Comma-separated Schatten exponents, e.g. `1,2,inf`.
    #[arg(long, value_delimiter = ',')]
    schatten: Option<Vec<String>>,
    /// Comma-separated lattice offsets.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    offsets: Option<Vec<String>>,
    #[arg(long)]
    k: Option<u8>,
    /// Run the Chern checks on the phase-perturbed matrix.
    #[arg(long)]
    negative_control: bool,
    /// Write the singular-value table (spin suite) as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn config(cli: &Cli) -> Result<SuiteConfig, Error> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            SuiteConfig::from_json(&text)?
        }
        None => SuiteConfig::default(),
    };
    match (&cli.suite, &cli.config) {
        (Some(s), _) => cfg.suite = s.parse::<SuiteName>()?,
        (None, Some(_)) => {}
        (None, None) => return Err(Error::Config("no suite given".into())),
    }
    if let Some(t) = &cli.theta {
        cfg.theta = Some(ThetaArg::Text(t.clone()));
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(g) = &cli.group {
        cfg.group = Some(parse_group(g)?);
    }
    if let Some(s) = &cli.space {
        cfg.space = Some(s.parse()?);
    }
    cfg.l = cli.l.or(cfg.l);
    cfg.n = cli.n.or(cfg.n);
    cfg.max_degree = cli.max_degree.or(cfg.max_degree);
    cfg.samples = cli.samples.or(cfg.samples);
    cfg.schatten = cli.schatten.clone().or(cfg.schatten);
    cfg.offsets = cli.offsets.clone().or(cfg.offsets);
    cfg.k = cli.k.or(cfg.k);
    cfg.negative_control |= cli.negative_control;
    Ok(cfg)
}

fn emit(cli: &Cli, report: &Report) -> std::io::Result<()> {
    let body = match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    match &cli.out {
        Some(path) => fs::write(path, body)?,
        None => print!("{body}"),
    }
    if let (Some(path), Some(csv)) = (&cli.csv, &report.csv) {
        fs::write(path, csv)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match config(&cli).and_then(|c| run_suite(&c)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("verify: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&cli, &report) {
        eprintln!("verify: {e}");
        return ExitCode::from(2);
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
