//! Wardrop equilibria by Frank-Wolfe minimization of the Beckmann potential.
//!
//! In [`CostMode::Original`] the edge latencies are `l_e` and the minimizer is
//! the selfish (Wardrop) equilibrium. In [`CostMode::Marginal`] they are the
//! marginal-cost latencies `l_e + l'_e x_e`; the potential is then exactly the
//! social cost, so its minimizer is a social optimum.
//!
//! Steps use the pairwise variant of Frank-Wolfe: for each player type in turn,
//! mass moves from its costliest used strategy to its best response, with an
//! exact line search on the segment. The iterate stays feasible throughout and
//! the classic Frank-Wolfe duality gap is the stopping certificate.

use serde::Serialize;
use thiserror::Error;

use crate::game::{self, EdgeLoads, Flow, Game, GameError, FEASIBILITY_TOL};
use crate::latency::LatencyFunction;

/// Minimum amount for a strategy to count as used.
pub const EPS_USE: f64 = 1e-9;
/// Floor of the relative gap denominator.
pub const EPS_DENOM: f64 = 1e-12;
/// Largest Wardrop violation a converged solve may leave.
pub const WARDROP_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CostMode {
    /// Edge latencies `l_e`.
    Original,
    /// Marginal-cost latencies `l_e + l'_e x_e`.
    Marginal,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("invalid solver parameters: {0}")]
    InvalidParams(&'static str),
    #[error(
        "no convergence after {iterations} iterations \
         (relative gap {relative_gap:e}, Wardrop violation {equilibrium_violation:e})"
    )]
    NotConverged {
        iterations: usize,
        relative_gap: f64,
        equilibrium_violation: f64,
    },
    #[error("optimal social cost is zero, price of anarchy is undefined")]
    ZeroOptimalCost,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverParams {
    pub max_iterations: usize,
    pub relative_gap_tol: f64,
    pub line_search_tol: f64,
}

impl Default for SolverParams {
    fn default() -> Self {
        SolverParams {
            max_iterations: 10_000,
            relative_gap_tol: 1e-9,
            line_search_tol: 1e-12,
        }
    }
}

impl SolverParams {
    pub fn validate(&self) -> Result<(), SolverError> {
        if self.max_iterations == 0 {
            return Err(SolverError::InvalidParams("max_iterations must be positive"));
        }
        if !(self.relative_gap_tol > 0.0) {
            return Err(SolverError::InvalidParams("relative_gap_tol must be positive"));
        }
        if !(self.line_search_tol > 0.0) {
            return Err(SolverError::InvalidParams("line_search_tol must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub mode: CostMode,
    pub flow: Flow,
    /// Completed Frank-Wolfe sweeps.
    pub iterations: usize,
    pub relative_gap: f64,
    pub potential_value: f64,
    /// `C(x)` under the original latencies, whatever the mode.
    pub social_cost_original: f64,
    /// [`wardrop_gap`] of the returned flow in `mode`.
    pub equilibrium_violation: f64,
    /// Potential at the start of every sweep, ending with the returned flow.
    pub potential_history: Vec<f64>,
}

/// The latencies a mode assigns to each edge.
pub(crate) fn mode_latencies(game: &Game, mode: CostMode) -> Vec<LatencyFunction> {
    game.edges()
        .iter()
        .map(|e| match mode {
            CostMode::Original => e.latency.clone(),
            CostMode::Marginal => e.latency.marginal(),
        })
        .collect()
}

fn check_loads(game: &Game, loads: &EdgeLoads) -> Result<(), GameError> {
    if loads.total.len() == game.edges().len() && loads.total.iter().all(|&x| x >= 0.0) {
        Ok(())
    } else {
        Err(GameError::FlowShape)
    }
}

fn edge_latencies(active: &[LatencyFunction], total: &[f64]) -> Vec<f64> {
    active.iter().zip(total).map(|(f, &x)| f.value(x)).collect()
}

fn strategy_latencies(game: &Game, type_idx: usize, edge_lat: &[f64]) -> Vec<f64> {
    game.player_types()[type_idx]
        .strategies()
        .iter()
        .map(|s| s.edges().iter().map(|&e| edge_lat[e]).sum())
        .collect()
}

/// Index of the smallest value, lowest index on ties.
fn argmin(values: &[f64]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (k, &v) in values.iter().enumerate() {
        if best.is_none_or(|b| v < values[b]) {
            best = Some(k);
        }
    }
    best
}

fn potential_of_loads(active: &[LatencyFunction], total: &[f64]) -> f64 {
    active.iter().zip(total).map(|(f, &x)| f.area(x)).sum()
}

/// `Σ_{e∈S} l_e(x_e)`, or the marginal-cost latencies in marginal mode.
pub fn strategy_latency(
    game: &Game,
    loads: &EdgeLoads,
    type_id: &str,
    strategy_index: usize,
    mode: CostMode,
) -> Result<f64, GameError> {
    check_loads(game, loads)?;
    let i = game.type_index(type_id)?;
    let strategy = game.strategy(i, strategy_index)?;
    Ok(strategy
        .edges()
        .iter()
        .map(|&e| {
            let f = &game.edges()[e].latency;
            let x = loads.total[e];
            match mode {
                CostMode::Original => f.value(x),
                CostMode::Marginal => f.value(x) + f.slope(x) * x,
            }
        })
        .sum())
}

/// All-or-nothing assignment: every type puts its whole demand on its
/// cheapest strategy under `loads`, lowest index on ties.
pub fn best_response(game: &Game, loads: &EdgeLoads, mode: CostMode) -> Result<Flow, GameError> {
    check_loads(game, loads)?;
    let lat = edge_latencies(&mode_latencies(game, mode), &loads.total);
    let choice: Vec<usize> = (0..game.player_types().len())
        .map(|i| argmin(&strategy_latencies(game, i, &lat)).unwrap_or(0))
        .collect();
    Flow::all_or_nothing(game, &choice)
}

/// Beckmann potential `Σ_e ∫_0^{x_e} latency_e(z) dz` of a flow.
pub fn potential(game: &Game, flow: &Flow, mode: CostMode) -> Result<f64, GameError> {
    flow.check_shape(game)?;
    let total = game::total_loads(game, flow);
    Ok(potential_of_loads(&mode_latencies(game, mode), &total))
}

/// Minimizes the potential on the segment between two load vectors by
/// bisection on its derivative; endpoints are returned exactly.
fn segment_step(active: &[LatencyFunction], from: &[f64], to: &[f64], tol: f64) -> f64 {
    let slope = |gamma: f64| -> f64 {
        active
            .iter()
            .zip(from.iter().zip(to))
            .filter(|(_, (a, b))| a != b)
            .map(|(f, (&a, &b))| f.value((1.0 - gamma) * a + gamma * b) * (b - a))
            .sum()
    };
    if slope(0.0) >= 0.0 {
        return 0.0;
    }
    if slope(1.0) <= 0.0 {
        return 1.0;
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if slope(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Step `γ ∈ [0, 1]` minimizing the potential of `(1 − γ)·current + γ·target`.
/// Returns 0 when both flows induce the same loads.
pub fn line_search(
    game: &Game,
    current: &Flow,
    target: &Flow,
    mode: CostMode,
    tol: f64,
) -> Result<f64, GameError> {
    current.check_shape(game)?;
    target.check_shape(game)?;
    let from = game::total_loads(game, current);
    let to = game::total_loads(game, target);
    Ok(segment_step(&mode_latencies(game, mode), &from, &to, tol))
}

/// Largest amount by which a used strategy (`x_i^S > EPS_USE`) exceeds the
/// cheapest alternative of the same type; zero exactly at a Wardrop
/// equilibrium of the chosen latencies.
pub fn wardrop_gap(game: &Game, flow: &Flow, mode: CostMode) -> Result<f64, GameError> {
    flow.check_feasible(game, FEASIBILITY_TOL)?;
    let total = game::total_loads(game, flow);
    let lat = edge_latencies(&mode_latencies(game, mode), &total);
    Ok(violation_and_gap(game, flow, &lat).0)
}

/// `(Wardrop violation, Frank-Wolfe gap Σ_i Σ_S x_i^S (lat_S − min_i))`.
fn violation_and_gap(game: &Game, flow: &Flow, edge_lat: &[f64]) -> (f64, f64) {
    let mut violation: f64 = 0.0;
    let mut gap = 0.0;
    for i in 0..game.player_types().len() {
        let lat = strategy_latencies(game, i, edge_lat);
        let Some(b) = argmin(&lat) else { continue };
        for (s, &x) in flow.amounts()[i].iter().enumerate() {
            let excess = lat[s] - lat[b];
            gap += x * excess;
            if x > EPS_USE {
                violation = violation.max(excess);
            }
        }
    }
    (violation.max(0.0), gap.max(0.0))
}

pub fn solve(game: &Game, mode: CostMode, params: &SolverParams) -> Result<SolveResult, SolverError> {
    let initial = best_response(game, &EdgeLoads::zeros(game), mode)?;
    solve_from(game, mode, params, initial)
}

/// Runs the solver from a given feasible starting flow.
pub fn solve_from(
    game: &Game,
    mode: CostMode,
    params: &SolverParams,
    initial: Flow,
) -> Result<SolveResult, SolverError> {
    params.validate()?;
    initial.check_feasible(game, FEASIBILITY_TOL)?;
    let active = mode_latencies(game, mode);
    let mut flow = initial;
    let mut history = Vec::new();

    for iteration in 0..=params.max_iterations {
        let total = game::total_loads(game, &flow);
        let edge_lat = edge_latencies(&active, &total);
        let phi = potential_of_loads(&active, &total);
        history.push(phi);
        let (violation, gap) = violation_and_gap(game, &flow, &edge_lat);
        let relative_gap = gap / phi.abs().max(EPS_DENOM);

        if relative_gap <= params.relative_gap_tol && violation <= WARDROP_TOL {
            let social_cost_original = game::social_cost_of_loads(game, &total);
            return Ok(SolveResult {
                mode,
                flow,
                iterations: iteration,
                relative_gap,
                potential_value: phi,
                social_cost_original,
                equilibrium_violation: violation,
                potential_history: history,
            });
        }
        if iteration == params.max_iterations {
            return Err(SolverError::NotConverged {
                iterations: iteration,
                relative_gap,
                equilibrium_violation: violation,
            });
        }

        for i in 0..game.player_types().len() {
            pairwise_step(game, &active, &mut flow, i, params.line_search_tol);
        }
    }
    unreachable!("loop returns on its last iteration")
}

/// Moves mass of type `i` from its costliest used strategy towards its best response.
fn pairwise_step(game: &Game, active: &[LatencyFunction], flow: &mut Flow, i: usize, tol: f64) {
    let ty = &game.player_types()[i];
    if ty.strategies().len() < 2 {
        return;
    }
    let total = game::total_loads(game, flow);
    let lat = strategy_latencies(game, i, &edge_latencies(active, &total));
    let Some(best) = argmin(&lat) else { return };
    let row = &flow.amounts()[i];
    let mut away: Option<usize> = None;
    for (s, &x) in row.iter().enumerate() {
        if x > 0.0 && away.is_none_or(|a| lat[s] > lat[a]) {
            away = Some(s);
        }
    }
    let Some(away) = away else { return };
    if lat[away] <= lat[best] {
        return;
    }

    let mass = row[away];
    let mut target = total.clone();
    for &e in ty.strategies()[away].edges() {
        target[e] = (target[e] - mass).max(0.0);
    }
    for &e in ty.strategies()[best].edges() {
        target[e] += mass;
    }
    let gamma = segment_step(active, &total, &target, tol);
    if gamma == 0.0 {
        return;
    }
    let row = &mut flow.amounts_mut()[i];
    let moved = gamma * mass;
    row[away] = if gamma == 1.0 { 0.0 } else { mass - moved };
    row[best] += moved;
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoaReport {
    pub equilibrium_cost: f64,
    pub optimal_cost: f64,
    pub ratio: f64,
}

/// `C(Wardrop equilibrium) / C(optimum)`.
pub fn price_of_anarchy(game: &Game, params: &SolverParams) -> Result<PoaReport, SolverError> {
    let eq = solve(game, CostMode::Original, params)?;
    let opt = solve(game, CostMode::Marginal, params)?;
    poa_from_costs(eq.social_cost_original, opt.social_cost_original)
}

pub(crate) fn poa_from_costs(equilibrium_cost: f64, optimal_cost: f64) -> Result<PoaReport, SolverError> {
    if !(optimal_cost > 0.0) {
        return Err(SolverError::ZeroOptimalCost);
    }
    Ok(PoaReport {
        equilibrium_cost,
        optimal_cost,
        ratio: equilibrium_cost / optimal_cost,
    })
}
