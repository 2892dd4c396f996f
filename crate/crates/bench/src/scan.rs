use std::time::Instant;

use fedvr::errormodel::{flop_estimate, roundoff_bound_local, roundoff_bound_nonlocal, EPS_DOUBLE};
use fedvr::{
    fedvr_phase_shift, nonlocal_phase_shift, numerov_phase_shift, numerov_with_intervals,
    solve_nonlocal, AffineMap, FedvrError, LobattoGrid, Mesh, PhaseShiftResult, Potential,
};
use thiserror::Error;

use crate::config::{ConfigError, KernelChoice, Method, RunConfig};
use crate::report::{Report, ScanRow};

#[derive(Debug, Error)]
pub enum CommandError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("solver failed: {0}")]
    Solver(#[from] FedvrError),
    #[error("all {0} scan rows failed")]
    AllRowsFailed(usize),
    #[error("cannot write output: {0}")]
    Io(String),
}

impl CommandError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CommandError::Config(_) => 2,
            CommandError::Solver(_) | CommandError::AllRowsFailed(_) => 1,
            CommandError::Io(_) => 1,
        }
    }
}

/// One solve with its cost figures.
#[derive(Debug, Clone)]
pub struct Solve {
    pub result: PhaseShiftResult,
    pub points: usize,
    pub seconds: f64,
    pub flops: Option<f64>,
    pub roundoff_bound: Option<f64>,
}

enum RowError {
    Config(ConfigError),
    Solver(FedvrError),
}

impl RowError {
    fn message(&self) -> String {
        match self {
            RowError::Config(e) => format!("config error: {e}"),
            RowError::Solver(e) => format!("solver error: {e}"),
        }
    }
}

impl From<RowError> for CommandError {
    fn from(e: RowError) -> Self {
        match e {
            RowError::Config(e) => CommandError::Config(e),
            RowError::Solver(e) => CommandError::Solver(e),
        }
    }
}

struct Problem {
    potential: Potential,
    kernel: Option<fedvr::KernelSpec>,
}

fn problem(cfg: &RunConfig) -> Result<Problem, ConfigError> {
    let potential = cfg.potential.build()?;
    let kernel = match cfg.kernel {
        Some(choice @ KernelChoice::Gaussian { .. }) => Some(choice.build(potential.clone())?),
        None => None,
    };
    Ok(Problem { potential, kernel })
}

fn fedvr_solve(
    cfg: &RunConfig,
    prob: &Problem,
    order: usize,
    plen: f64,
) -> Result<Solve, RowError> {
    if let Some(kernel) = &prob.kernel {
        // nonlocal problems use one partition spanning [0, R_max]
        let grid = LobattoGrid::new(order).map_err(RowError::Solver)?;
        let map = AffineMap::new(0.0, cfg.r_max).map_err(RowError::Solver)?;
        let start = Instant::now();
        let sol = solve_nonlocal(&grid, map, kernel, cfg.k, 1.0).map_err(RowError::Solver)?;
        let (_, result) = nonlocal_phase_shift(&sol, kernel, None).map_err(RowError::Solver)?;
        return Ok(Solve {
            result,
            points: order,
            seconds: start.elapsed().as_secs_f64(),
            flops: Some(flop_estimate(order, 1)),
            roundoff_bound: Some(roundoff_bound_nonlocal(order, cfg.r_max, EPS_DOUBLE, false)),
        });
    }
    let mesh = Mesh::uniform(cfg.r_max, plen, order)
        .map_err(|e| RowError::Config(ConfigError::Invalid(format!("plen = {plen}: {e}"))))?;
    let start = Instant::now();
    let (_, result) = fedvr_phase_shift(&mesh, &prob.potential, cfg.k).map_err(RowError::Solver)?;
    Ok(Solve {
        result,
        points: mesh.total_points(),
        seconds: start.elapsed().as_secs_f64(),
        flops: Some(flop_estimate(order, mesh.len())),
        roundoff_bound: Some(roundoff_bound_local(order, mesh.len(), EPS_DOUBLE)),
    })
}

fn numerov_solve(cfg: &RunConfig, prob: &Problem, points: usize) -> Result<Solve, RowError> {
    if prob.kernel.is_some() {
        return Err(RowError::Config(ConfigError::Invalid(
            "the Numerov comparator handles local potentials only".into(),
        )));
    }
    let start = Instant::now();
    let run = numerov_with_intervals(&prob.potential, cfg.k, points, cfg.r_max)
        .map_err(RowError::Solver)?;
    let result = numerov_phase_shift(&run, &prob.potential).map_err(RowError::Solver)?;
    Ok(Solve {
        result,
        points,
        seconds: start.elapsed().as_secs_f64(),
        flops: None,
        roundoff_bound: None,
    })
}

fn row(cfg: &RunConfig, variable: f64, solve: &Solve) -> ScanRow {
    let r = &solve.result;
    ScanRow {
        method: None,
        variable,
        points: solve.points as f64,
        tan_delta_match: Some(r.tan_delta_match),
        tan_delta_integral: Some(r.tan_delta_integral),
        error: cfg.reference.map(|t| r.tan_delta_integral - t),
        time_s: Some(solve.seconds),
        flops: solve.flops,
        est_time_s: solve.flops.map(|f| f * cfg.flop_time),
        roundoff_bound: solve.roundoff_bound,
        status: "ok".into(),
    }
}

fn report(cfg: &RunConfig, variable: &str, with_roundoff: bool, rows: Vec<ScanRow>) -> Report {
    Report {
        variable: variable.into(),
        with_method: false,
        with_error: cfg.reference.is_some(),
        with_roundoff,
        rows,
    }
}

fn finish(report: Report) -> Result<Report, CommandError> {
    if !report.rows.is_empty() && report.rows.iter().all(|r| !r.is_ok()) {
        return Err(CommandError::AllRowsFailed(report.rows.len()));
    }
    Ok(report)
}

/// One solve with the first N, partition length or point count of the config.
pub fn cmd_phase(cfg: &RunConfig) -> Result<(Report, Solve), CommandError> {
    let prob = problem(cfg)?;
    let (variable, solve) = match cfg.require_method()? {
        Method::Fedvr => {
            let n = cfg.require_n()?[0];
            (n as f64, fedvr_solve(cfg, &prob, n, cfg.plen[0])?)
        }
        Method::Numerov => {
            let p = cfg.require_points()?[0];
            (cfg.r_max / p as f64, numerov_solve(cfg, &prob, p)?)
        }
    };
    let name = match cfg.method {
        Some(Method::Numerov) => "h",
        _ => "n",
    };
    let rows = vec![row(cfg, variable, &solve)];
    Ok((report(cfg, name, false, rows), solve))
}

/// FE-DVR accuracy against the number of Lobatto points per partition.
pub fn cmd_scan_n(cfg: &RunConfig) -> Result<Report, CommandError> {
    if cfg.method == Some(Method::Numerov) {
        return Err(ConfigError::Invalid("scan-n needs --method fedvr".into()).into());
    }
    let prob = problem(cfg)?;
    let plen = cfg.plen[0];
    let partitions = (cfg.r_max / plen).round().max(1.0);
    let rows = cfg
        .require_n()?
        .iter()
        .map(|&n| match fedvr_solve(cfg, &prob, n, plen) {
            Ok(s) => row(cfg, n as f64, &s),
            Err(e) => ScanRow::failed(n as f64, n as f64 * partitions, e.message()),
        })
        .collect();
    finish(report(cfg, "n", true, rows))
}

/// FE-DVR accuracy against the partition length at fixed N.
pub fn cmd_scan_partition(cfg: &RunConfig) -> Result<Report, CommandError> {
    if cfg.method == Some(Method::Numerov) {
        return Err(ConfigError::Invalid("scan-partition needs --method fedvr".into()).into());
    }
    if cfg.kernel.is_some() {
        return Err(ConfigError::Invalid("nonlocal runs use a single partition".into()).into());
    }
    let prob = problem(cfg)?;
    let n = cfg.require_n()?[0];
    let rows = cfg
        .plen
        .iter()
        .map(|&plen| match fedvr_solve(cfg, &prob, n, plen) {
            Ok(s) => row(cfg, plen, &s),
            Err(e) => ScanRow::failed(plen, (cfg.r_max / plen).round() * n as f64, e.message()),
        })
        .collect();
    finish(report(cfg, "plen", true, rows))
}

/// Numerov accuracy against the step `h = R_max / points`.
pub fn cmd_scan_h(cfg: &RunConfig) -> Result<Report, CommandError> {
    if cfg.method == Some(Method::Fedvr) {
        return Err(ConfigError::Invalid("scan-h needs --method numerov".into()).into());
    }
    let prob = problem(cfg)?;
    let rows = cfg
        .require_points()?
        .iter()
        .map(|&p| match numerov_solve(cfg, &prob, p) {
            Ok(s) => row(cfg, cfg.r_max / p as f64, &s),
            Err(e) => ScanRow::failed(cfg.r_max / p as f64, p as f64, e.message()),
        })
        .collect();
    finish(report(cfg, "h", false, rows))
}

/// Total points each method needs to reach an accuracy target.
#[derive(Debug, Clone, PartialEq)]
pub struct PointRatio {
    pub target: f64,
    pub fedvr_points: Option<f64>,
    pub numerov_points: Option<f64>,
}

impl PointRatio {
    /// Numerov points over FE-DVR points.
    pub fn ratio(&self) -> Option<f64> {
        Some(self.numerov_points? / self.fedvr_points?)
    }
}

pub const COMPARE_TARGETS: [f64; 2] = [1e-6, 1e-8];

/// Points where `|error|` first drops to `target`, interpolating log(error) against log(points).
pub fn points_at_accuracy(samples: &[(f64, f64)], target: f64) -> Option<f64> {
    let mut sorted: Vec<(f64, f64)> = samples
        .iter()
        .filter(|(p, e)| *p > 0.0 && e.is_finite())
        .map(|&(p, e)| (p, e.abs()))
        .collect();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let first = sorted.first()?;
    if first.1 <= target {
        return Some(first.0);
    }
    for pair in sorted.windows(2) {
        let ((p0, e0), (p1, e1)) = (pair[0], pair[1]);
        if e1 <= target {
            if e1 == 0.0 || e0 == e1 {
                return Some(p1);
            }
            let t = (target.ln() - e0.ln()) / (e1.ln() - e0.ln());
            return Some((p0.ln() + t * (p1.ln() - p0.ln())).exp());
        }
    }
    None
}

#[derive(Debug, Clone)]
pub struct Comparison {
    pub report: Report,
    pub ratios: Vec<PointRatio>,
}

/// FE-DVR (over `--n`) and Numerov (over `--points`) errors on one problem.
pub fn cmd_compare(cfg: &RunConfig) -> Result<Comparison, CommandError> {
    cfg.require_n()?;
    cfg.require_points()?;
    if cfg.reference.is_none() {
        return Err(ConfigError::Missing("--reference").into());
    }
    if cfg.kernel.is_some() {
        return Err(ConfigError::Invalid("compare handles local potentials only".into()).into());
    }
    let fedvr_cfg = RunConfig {
        method: Some(Method::Fedvr),
        ..cfg.clone()
    };
    let numerov_cfg = RunConfig {
        method: Some(Method::Numerov),
        ..cfg.clone()
    };
    let with_method = |label: &str, mut r: ScanRow| {
        r.method = Some(label.to_string());
        r
    };
    let fedvr_rows: Vec<ScanRow> = cmd_scan_n(&fedvr_cfg)?
        .rows
        .into_iter()
        .map(|r| with_method("fedvr", r))
        .collect();
    let numerov_rows: Vec<ScanRow> = cmd_scan_h(&numerov_cfg)?
        .rows
        .into_iter()
        .map(|r| with_method("numerov", r))
        .collect();
    let samples = |rows: &[ScanRow]| -> Vec<(f64, f64)> {
        rows.iter()
            .filter_map(|r| Some((r.points, r.error?)))
            .collect()
    };
    let (fs, ns) = (samples(&fedvr_rows), samples(&numerov_rows));
    let ratios = COMPARE_TARGETS
        .iter()
        .map(|&target| PointRatio {
            target,
            fedvr_points: points_at_accuracy(&fs, target),
            numerov_points: points_at_accuracy(&ns, target),
        })
        .collect();
    let mut rows = fedvr_rows;
    rows.extend(numerov_rows);
    Ok(Comparison {
        report: Report {
            variable: "param".into(),
            with_method: true,
            with_error: true,
            with_roundoff: true,
            rows,
        },
        ratios,
    })
}
