//! Command-line front end.
//!
//! Exit codes: 0 success (or equilibrium confirmed), 1 verification failed,
//! 2 usage error, 3 input error, 4 solver did not converge.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::batch::{self, BatchError, BatchSystem};
use crate::game::{Game, GameError};
use crate::io::{self, IoError};
use crate::oracle::{self, OracleError};
use crate::solver::{self, CostMode, SolverError, SolverParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_EQUILIBRIUM: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_NO_CONVERGENCE: i32 = 4;

const DEFAULT_SWEEP: &str = "1,2,4,8,16,32,64,128,256,512,1024";

#[derive(Debug, Parser)]
#[command(name = "vardelay", version, about = "Equilibria, optima and batch systems for non-atomic congestion games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Original,
    Marginal,
}

impl From<ModeArg> for CostMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Original => CostMode::Original,
            ModeArg::Marginal => CostMode::Marginal,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VerifyMode {
    /// Wardrop equilibrium under the original latencies
    Wardrop,
    /// Wardrop equilibrium under the marginal-cost latencies
    Marginal,
    /// Equilibrium with respect to a batch system
    Batch,
}

#[derive(Debug, clap::Args)]
struct SolverArgs {
    /// Relative gap tolerance
    #[arg(long)]
    tol: Option<f64>,
    /// Iteration limit
    #[arg(long = "max-iter")]
    max_iter: Option<usize>,
}

impl SolverArgs {
    fn params(&self) -> SolverParams {
        let mut p = SolverParams::default();
        if let Some(tol) = self.tol {
            p.relative_gap_tol = tol;
        }
        if let Some(k) = self.max_iter {
            p.max_iterations = k;
        }
        p
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve for the Wardrop equilibrium of the chosen latencies
    Solve {
        game: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[command(flatten)]
        solver: SolverArgs,
        /// Write the flow (with solver metadata) to this JSON file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve for the social optimum
    Optimum {
        game: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Price of anarchy: equilibrium cost over optimal cost
    Poa {
        game: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Pick a batch system whose batch cost at the optimum is within epsilon of it
    Batch {
        game: PathBuf,
        #[arg(long)]
        epsilon: f64,
        /// Write the batch report as CSV
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write the batch report as JSON
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Batch cost of the optimum for uniform batch counts (CSV on stdout)
    Sweep {
        game: PathBuf,
        #[arg(long = "n-list", value_delimiter = ',', default_value = DEFAULT_SWEEP)]
        n_list: Vec<u64>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Check whether a flow is an equilibrium
    Verify {
        game: PathBuf,
        flow: PathBuf,
        #[arg(long, value_enum)]
        mode: VerifyMode,
        #[arg(long, default_value_t = solver::WARDROP_TOL)]
        tol: f64,
        /// Uniform batch count for `--mode batch`
        #[arg(long, default_value_t = 1)]
        batches: u64,
    },
    /// Brute-force grid search for the potential minimizer
    Oracle {
        game: PathBuf,
        #[arg(long, default_value_t = 1e-3)]
        resolution: f64,
        #[arg(long, value_enum)]
        mode: ModeArg,
    },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }
}

impl From<GameError> for Failure {
    fn from(e: GameError) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }
}

impl From<SolverError> for Failure {
    fn from(e: SolverError) -> Self {
        let code = match e {
            SolverError::NotConverged { .. } => EXIT_NO_CONVERGENCE,
            SolverError::InvalidParams(_) => EXIT_USAGE,
            SolverError::Game(_) | SolverError::ZeroOptimalCost => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<BatchError> for Failure {
    fn from(e: BatchError) -> Self {
        match e {
            BatchError::Solver(inner) => inner.into(),
            BatchError::NonPositiveEpsilon(_) | BatchError::ZeroBatches(_) => Failure::usage(e.to_string()),
            BatchError::GuaranteeViolated(_) => Failure {
                code: EXIT_NOT_EQUILIBRIUM,
                message: e.to_string(),
            },
            _ => Failure {
                code: EXIT_INPUT,
                message: e.to_string(),
            },
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let code = match e {
            OracleError::BadResolution(_) => EXIT_USAGE,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }
}

/// Runs the CLI with the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI, writing data to `out` and diagnostics to `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return e.exit_code();
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

fn load(path: &Path) -> Result<Game, Failure> {
    Ok(io::load_game(path)?)
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Solve { game, mode, solver, out: file } => {
            let game = load(&game)?;
            let result = solver::solve(&game, mode.into(), &solver.params())?;
            writeln!(out, "social cost: {:.6}", result.social_cost_original)?;
            writeln!(out, "potential: {:.6}", result.potential_value)?;
            writeln!(out, "relative gap: {:.6e}", result.relative_gap)?;
            writeln!(out, "wardrop gap: {:.6e}", result.equilibrium_violation)?;
            writeln!(out, "iterations: {}", result.iterations)?;
            write_flow_lines(&game, &result.flow, out)?;
            if let Some(path) = file {
                io::save_solve_result(&game, &result, &path)?;
            }
            Ok(EXIT_OK)
        }
        Command::Optimum { game, solver, out: file } => {
            let game = load(&game)?;
            let result = solver::solve(&game, CostMode::Marginal, &solver.params())?;
            writeln!(out, "optimal social cost: {:.6}", result.social_cost_original)?;
            writeln!(out, "relative gap: {:.6e}", result.relative_gap)?;
            writeln!(out, "iterations: {}", result.iterations)?;
            write_flow_lines(&game, &result.flow, out)?;
            if let Some(path) = file {
                io::save_solve_result(&game, &result, &path)?;
            }
            Ok(EXIT_OK)
        }
        Command::Poa { game, solver } => {
            let game = load(&game)?;
            let poa = solver::price_of_anarchy(&game, &solver.params())?;
            writeln!(out, "C_eq: {:.6}", poa.equilibrium_cost)?;
            writeln!(out, "C_opt: {:.6}", poa.optimal_cost)?;
            writeln!(out, "ratio: {:.6}", poa.ratio)?;
            Ok(EXIT_OK)
        }
        Command::Batch {
            game,
            epsilon,
            report,
            json,
            solver,
        } => {
            let game = load(&game)?;
            let r = batch::mechanism_pipeline(&game, epsilon, &solver.params())?;
            for entry in &r.report.per_edge {
                writeln!(
                    out,
                    "edge {}: N_e={} x_e={:.6} c_e={:.6} batch_c_e={:.6} gap={:.6}",
                    entry.edge_id, entry.batches, entry.load, entry.cost, entry.batch_cost, entry.gap
                )?;
            }
            let counts: Vec<String> = game
                .edges()
                .iter()
                .zip(r.batch_system.counts())
                .map(|(e, n)| format!("{}:{}", e.id, n))
                .collect();
            writeln!(out, "batch system: {}", counts.join(" "))?;
            writeln!(out, "optimal social cost: {:.6}", r.report.total_original_cost)?;
            writeln!(out, "batch social cost: {:.6}", r.report.total_batch_cost)?;
            writeln!(out, "gap: {:.6} (epsilon {})", r.report.total_gap, epsilon)?;
            writeln!(
                out,
                "batch equilibrium: {} (max violation {:.6e})",
                r.equilibrium.is_equilibrium, r.equilibrium.max_violation
            )?;
            match &r.price_of_anarchy {
                Some(poa) => writeln!(
                    out,
                    "selfish cost without batches: {:.6} (price of anarchy {:.6})",
                    poa.equilibrium_cost, poa.ratio
                )?,
                None => writeln!(out, "price of anarchy: undefined (zero optimal cost)")?,
            }
            if let Some(path) = report {
                io::save_batch_report_csv(&r.report, &path)?;
            }
            if let Some(path) = json {
                io::save_batch_report_json(&r.report, &path)?;
            }
            Ok(EXIT_OK)
        }
        Command::Sweep { game, n_list, solver } => {
            if n_list.contains(&0) {
                return Err(Failure::usage("batch counts in --n-list must be positive"));
            }
            let game = load(&game)?;
            let optimum = solver::solve(&game, CostMode::Marginal, &solver.params())?;
            let rows = batch::uniform_sweep(&game, &optimum.flow, &n_list)?;
            io::write_sweep_csv(&rows, &mut *out)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            game,
            flow,
            mode,
            tol,
            batches,
        } => {
            let game = load(&game)?;
            let flow = io::load_flow(&flow, &game)?;
            let (is_equilibrium, violation) = match mode {
                VerifyMode::Wardrop | VerifyMode::Marginal => {
                    let cost_mode = match mode {
                        VerifyMode::Wardrop => CostMode::Original,
                        _ => CostMode::Marginal,
                    };
                    let gap = solver::wardrop_gap(&game, &flow, cost_mode)?;
                    (gap <= tol, gap)
                }
                VerifyMode::Batch => {
                    let bs = BatchSystem::uniform(&game, batches)?;
                    let r = batch::verify_batch_equilibrium(&game, &flow, &bs, tol)?;
                    (r.is_equilibrium, r.max_violation)
                }
            };
            writeln!(out, "max violation: {violation:.6e}")?;
            writeln!(out, "equilibrium: {is_equilibrium}")?;
            Ok(if is_equilibrium { EXIT_OK } else { EXIT_NOT_EQUILIBRIUM })
        }
        Command::Oracle { game, resolution, mode } => {
            let game = load(&game)?;
            let flow = oracle::grid_search_equilibrium(&game, resolution, mode.into())?;
            let cost = crate::game::social_cost(&game, &flow)?;
            writeln!(out, "grid resolution: {resolution}")?;
            writeln!(out, "social cost: {cost:.6}")?;
            write_flow_lines(&game, &flow, out)?;
            Ok(EXIT_OK)
        }
    }
}

fn write_flow_lines(game: &Game, flow: &crate::game::Flow, out: &mut dyn Write) -> std::io::Result<()> {
    for (ty, row) in game.player_types().iter().zip(flow.amounts()) {
        for (s, x) in ty.strategies().iter().zip(row) {
            let edges: Vec<&str> = s.edges().iter().map(|&e| game.edges()[e].id.as_str()).collect();
            writeln!(out, "flow {} S{} {{{}}}: {:.6}", ty.id, s.declared_index(), edges.join(","), x)?;
        }
    }
    Ok(())
}
