use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fedvr_bench::config::{RawConfig, RunConfig};
use fedvr_bench::report::Report;
use fedvr_bench::scan::{self, CommandError, Comparison};

#[derive(Parser)]
#[command(
    name = "fedvr-bench",
    version,
    about = "FE-DVR and Numerov phase-shift benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Single phase-shift solve.
    Phase(Flags),
    /// Scan over Lobatto points per partition (FE-DVR).
    ScanN(Flags),
    /// Scan over partition length at fixed N (FE-DVR).
    ScanPartition(Flags),
    /// Scan over Numerov step count.
    ScanH(Flags),
    /// FE-DVR vs Numerov: errors and points needed for 1e-6 and 1e-8.
    Compare(Flags),
}

#[derive(Args)]
struct Flags {
    /// fedvr or numerov
    #[arg(long)]
    method: Option<String>,
    /// morse, woods_saxon, free or table:<path>
    #[arg(long)]
    potential: Option<String>,
    /// wave number in fm^-1
    #[arg(long)]
    k: Option<String>,
    /// outer radius in fm
    #[arg(long)]
    rmax: Option<String>,
    /// partition length(s) in fm, comma separated
    #[arg(long)]
    plen: Option<String>,
    /// Lobatto points per partition: list or start:end[:step]
    #[arg(long)]
    n: Option<String>,
    /// Numerov step counts: list or start:end[:step]
    #[arg(long)]
    points: Option<String>,
    /// gaussian or none
    #[arg(long)]
    kernel: Option<String>,
    /// Gaussian kernel width in fm
    #[arg(long)]
    beta: Option<String>,
    /// CSV output path; an aligned table goes to stdout otherwise
    #[arg(long)]
    out: Option<String>,
    /// key=value file, overridden by flags
    #[arg(long)]
    config: Option<String>,
    /// reference tan(delta) for the error column
    #[arg(long)]
    reference: Option<String>,
    /// seconds per floating-point operation for the time estimate
    #[arg(long)]
    flop_time: Option<String>,
}

impl Flags {
    fn resolve(self) -> Result<RunConfig, CommandError> {
        let base = match &self.config {
            Some(path) => RawConfig::from_path(path)?,
            None => RawConfig::default(),
        };
        let flags = RawConfig {
            method: self.method,
            potential: self.potential,
            k: self.k,
            rmax: self.rmax,
            plen: self.plen,
            n: self.n,
            points: self.points,
            kernel: self.kernel,
            beta: self.beta,
            out: self.out,
            reference: self.reference,
            flop_time: self.flop_time,
        };
        Ok(RunConfig::from_raw(&base.overridden_by(flags))?)
    }
}

fn emit(report: &Report, cfg: &RunConfig) -> Result<(), CommandError> {
    let io_err = |e: io::Error| CommandError::Io(e.to_string());
    match &cfg.out {
        Some(path) => {
            let file = File::create(path).map_err(io_err)?;
            let mut w = BufWriter::new(file);
            report
                .write_csv(&mut w)
                .map_err(|e| CommandError::Io(e.to_string()))?;
            w.flush().map_err(io_err)?;
        }
        None => {
            print!("{}", report.to_table());
        }
    }
    for row in report.rows.iter().filter(|r| !r.is_ok()) {
        eprintln!(
            "warning: {} = {}: {}",
            report.variable, row.variable, row.status
        );
    }
    Ok(())
}

fn print_ratios(cmp: &Comparison) {
    for r in &cmp.ratios {
        let show = |p: Option<f64>| p.map_or("not reached".to_string(), |p| format!("{p:.0}"));
        let ratio = r.ratio().map_or("n/a".to_string(), |x| format!("{x:.3}"));
        println!(
            "target {:.0e}: fedvr points {}, numerov points {}, numerov/fedvr {}",
            r.target,
            show(r.fedvr_points),
            show(r.numerov_points),
            ratio
        );
    }
}

fn run(cli: Cli) -> Result<(), CommandError> {
    match cli.command {
        Command::Phase(flags) => {
            let cfg = flags.resolve()?;
            let (report, solve) = scan::cmd_phase(&cfg)?;
            emit(&report, &cfg)?;
            for w in &solve.result.warnings {
                eprintln!("warning: {w}");
            }
        }
        Command::ScanN(flags) => {
            let cfg = flags.resolve()?;
            emit(&scan::cmd_scan_n(&cfg)?, &cfg)?;
        }
        Command::ScanPartition(flags) => {
            let cfg = flags.resolve()?;
            emit(&scan::cmd_scan_partition(&cfg)?, &cfg)?;
        }
        Command::ScanH(flags) => {
            let cfg = flags.resolve()?;
            emit(&scan::cmd_scan_h(&cfg)?, &cfg)?;
        }
        Command::Compare(flags) => {
            let cfg = flags.resolve()?;
            let cmp = scan::cmd_compare(&cfg)?;
            emit(&cmp.report, &cfg)?;
            print_ratios(&cmp);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
