use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use weilrep::certify::{self, RunConfig};

#[derive(Parser)]
#[command(
    name = "weilrep",
    version,
    about = "Exact certificates for oscillator representations over odd finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run claims and write one JSON certificate per claim plus summary.csv.
    Run(RunArgs),
    /// Print the claim registry.
    ListClaims,
    /// List isotropic subspaces of the standard form U (one per line, basis rows joined by ';').
    Isotropic(ListArgs),
    /// Print the CSS code C_N of every isotropic N in U as JSON lines.
    Codes(ListArgs),
}

#[derive(clap::Args)]
struct ListArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Only subspaces of this dimension (default: every k >= 1).
    #[arg(long)]
    k: Option<usize>,
}

#[derive(clap::Args)]
struct RunArgs {
    /// key=value config file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    /// square or nonsquare
    #[arg(long)]
    disc: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    mass: Option<i64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated claim ids, or "all".
    #[arg(long)]
    claims: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    guard_dim: Option<usize>,
    #[arg(long)]
    guard_orbits: Option<usize>,
}

fn build_config(a: &RunArgs) -> weilrep::error::Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &a.config {
        cfg.apply_config_text(&std::fs::read_to_string(path)?)?;
    }
    if let Some(v) = a.q {
        cfg.q = v;
    }
    if let Some(v) = a.n {
        cfg.n = v;
    }
    if let Some(v) = a.t {
        cfg.t = v;
    }
    if let Some(v) = &a.disc {
        cfg.disc = certify::parse_disc(v)?;
    }
    if let Some(v) = a.mass {
        cfg.mass = v;
    }
    if let Some(v) = a.seed {
        cfg.seed = v;
    }
    if let Some(v) = &a.claims {
        cfg.claims = certify::split_claims(v);
    }
    if let Some(v) = &a.out {
        cfg.out = v.clone();
    }
    if let Some(v) = a.guard_dim {
        cfg.guard_dim = v;
    }
    if let Some(v) = a.guard_orbits {
        cfg.guard_orbits = v;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn list(args: &ListArgs, codes: bool) -> weilrep::error::Result<()> {
    let cfg = build_config(&args.run)?;
    let u = cfg.space()?;
    let ks: Vec<usize> = match args.k {
        Some(k) => vec![k],
        None => (1..=u.witt_index()).collect(),
    };
    let ctx = if codes { Some(cfg.context()?) } else { None };
    let mut out = std::io::stdout().lock();
    for k in ks {
        for iso in u.enumerate_isotropic(k) {
            let line = match &ctx {
                Some(ctx) => serde_json::to_string(&weilrep::css::build_code(ctx, &iso)?.listing()).expect("json"),
                None => iso.to_string(),
            };
            if writeln!(out, "{line}").is_err() {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::ListClaims => {
            for (id, anchor) in certify::list_claims() {
                println!("{id:<28} {anchor}");
            }
            ExitCode::SUCCESS
        }
        Command::Isotropic(ref args) | Command::Codes(ref args) => {
            match list(args, matches!(cli.command, Command::Codes(_))) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Command::Run(args) => {
            let cfg = match build_config(&args) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let records = match certify::run(&cfg) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            println!("{:<28} {:<24} {:>10}  dims", "claim", "verdict", "ms");
            for r in &records {
                let c = &r.certificate;
                println!("{:<28} {:<24} {:>10}  {:?}", c.claim_id, c.verdict, r.runtime_ms, c.dims);
            }
            println!("certificates in {}", cfg.out.display());
            if certify::all_passed(&records) {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
