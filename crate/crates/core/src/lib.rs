//! Non-atomic congestion games: Wardrop equilibria, social optima and the
//! variable-delay batch mechanism.
//!
//! - [`latency`]: polynomial latencies and their marginal-cost transform.
//! - [`game`]: games, flows, edge loads and social/player costs.
//! - [`solver`]: Frank-Wolfe equilibrium solver, Wardrop gap, price of anarchy.
//! - [`batch`]: batch systems, batch costs, batch equilibria and ε-sufficient batch counts.
//! - [`oracle`]: brute-force cross-checks independent of the modules above.
//! - [`io`], [`cli`]: file formats and the command-line front end.

pub mod batch;
pub mod cli;
pub mod fixtures;
pub mod game;
pub mod io;
pub mod latency;
pub mod oracle;
pub mod sample;
pub mod solver;

pub use batch::{BatchReport, BatchSystem};
pub use game::{EdgeLoads, Flow, Game, GameSpec};
pub use latency::LatencyFunction;
pub use solver::{CostMode, SolveResult, SolverParams};
