use std::fs::File;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use lcvanish::cli::{parse_instance, run_instance, sweep, write_sweep_csv, RunOptions};
use lcvanish::vanish::{BoundSpec, Mode};
use lcvanish::Result;

#[derive(Parser)]
#[command(name = "lcvanish", version, about = "Decide vanishing of local cohomology over F_p")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Cohomological degree i.
    #[arg(long)]
    degree: usize,
    #[arg(long, default_value = "streaming", value_parser = parse_mode)]
    mode: Mode,
    /// user:<u>, finite-length or empirical.
    #[arg(long, default_value = "finite-length", value_parser = parse_bound)]
    bound: BoundSpec,
    #[arg(long, default_value_t = 4)]
    max_steps: u32,
    /// Drop cohomology generators already spanned by earlier ones.
    #[arg(long)]
    prune: bool,
    /// Leave wall-clock timings out of the report.
    #[arg(long)]
    deterministic: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide one instance at one prime.
    Run {
        path: PathBuf,
        #[arg(long)]
        prime: u64,
        #[command(flatten)]
        common: Common,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Decide one instance at several primes and tabulate the counters.
    Sweep {
        path: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[command(flatten)]
        common: Common,
        /// Write the CSV table here instead of standard output.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn parse_mode(s: &str) -> std::result::Result<Mode, String> {
    s.parse().map_err(|e: lcvanish::Error| e.to_string())
}

fn parse_bound(s: &str) -> std::result::Result<BoundSpec, String> {
    s.parse().map_err(|e: lcvanish::Error| e.to_string())
}

fn options(prime: u64, c: &Common) -> RunOptions {
    RunOptions {
        prime,
        degree: c.degree,
        mode: c.mode,
        bound: c.bound,
        max_steps: c.max_steps,
        prune: c.prune,
        deterministic: c.deterministic,
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Command::Run { path, prime, common, json } => {
            let file = parse_instance(&path)?;
            let report = run_instance(&file, &options(prime, &common))?;
            print!("{}", report.summary());
            if let Some(out) = json {
                std::fs::write(out, report.to_json()? + "\n")?;
            }
            Ok(report.exit_code())
        }
        Command::Sweep { path, primes, common, csv } => {
            let file = parse_instance(&path)?;
            let rows = sweep(&file, &primes, &options(primes[0], &common));
            for row in &rows {
                match &row.outcome {
                    Ok(r) => eprintln!("p = {}: {}", row.p, r.verdict.result),
                    Err(e) => eprintln!("p = {}: error: {e}", row.p),
                }
            }
            match csv {
                Some(out) => write_sweep_csv(&rows, File::create(out)?)?,
                None => write_sweep_csv(&rows, std::io::stdout().lock())?,
            }
            Ok(if rows.iter().all(|r| r.outcome.is_ok()) { 0 } else { 2 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
