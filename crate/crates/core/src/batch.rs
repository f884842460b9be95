//! The variable-delay batch mechanism.
//!
//! At every edge the load `x_e` is cut into `N_e` equal batches; batch `b`
//! pays the marginal-cost latency at `(b / N_e) x_e` per unit. The batch cost
//! of an edge is therefore a right Riemann sum of `l̂_e` over `[0, x_e]`,
//! which never undercuts `∫ l̂_e = l_e(x_e) x_e` and converges to it as
//! `N_e` grows. A flow is in batch equilibrium exactly when it is a Wardrop
//! equilibrium of the marginal-cost latencies, so the social optimum is the
//! equilibrium of every batch system.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::game::{self, EdgeLoads, Flow, Game, GameError, FEASIBILITY_TOL};
use crate::latency::{LatencyFunction, MAX_DEGREE};
use crate::solver::{self, CostMode, PoaReport, SolveResult, SolverError, SolverParams, EPS_USE};

/// Largest batch count; beyond it `N_e` is no longer exact in `f64`.
pub const MAX_BATCHES: u64 = 1 << 53;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BatchError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("edge `{0}` has no batch count")]
    MissingEdge(String),
    #[error("batch count for edge `{0}` must be at least 1")]
    ZeroBatches(String),
    #[error("batch index {index} outside 1..={batches}")]
    BatchIndexOutOfRange { index: u64, batches: u64 },
    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(f64),
    #[error("edge `{edge}` would need {required:e} batches")]
    TooManyBatches { edge: String, required: f64 },
    #[error("batch guarantee violated: {0}")]
    GuaranteeViolated(String),
}

/// Batch counts `N_e >= 1`, one per edge of a game, in edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchSystem {
    counts: Vec<u64>,
}

impl BatchSystem {
    /// Same number of batches on every edge.
    pub fn uniform(game: &Game, batches: u64) -> Result<BatchSystem, BatchError> {
        BatchSystem::from_counts(game, vec![batches; game.edges().len()])
    }

    /// Counts listed in edge order.
    pub fn from_counts(game: &Game, counts: Vec<u64>) -> Result<BatchSystem, BatchError> {
        if counts.len() != game.edges().len() {
            let missing = game.edges().get(counts.len()).map(|e| e.id.clone());
            return Err(match missing {
                Some(id) => BatchError::MissingEdge(id),
                None => BatchError::Game(GameError::FlowShape),
            });
        }
        if let Some(e) = counts.iter().position(|&n| n == 0) {
            return Err(BatchError::ZeroBatches(game.edges()[e].id.clone()));
        }
        Ok(BatchSystem { counts })
    }

    /// Counts keyed by edge id; every edge must be present.
    pub fn from_map(game: &Game, map: &BTreeMap<String, u64>) -> Result<BatchSystem, BatchError> {
        for id in map.keys() {
            game.edge_index(id)?;
        }
        let counts = game
            .edges()
            .iter()
            .map(|e| map.get(&e.id).copied().ok_or_else(|| BatchError::MissingEdge(e.id.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        BatchSystem::from_counts(game, counts)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn to_map(&self, game: &Game) -> BTreeMap<String, u64> {
        game.edges()
            .iter()
            .zip(&self.counts)
            .map(|(e, &n)| (e.id.clone(), n))
            .collect()
    }

    fn check(&self, game: &Game) -> Result<(), BatchError> {
        BatchSystem::from_counts(game, self.counts.clone()).map(|_| ())
    }
}

fn check_batches(edge: &str, batches: u64) -> Result<(), BatchError> {
    if batches == 0 {
        Err(BatchError::ZeroBatches(edge.to_string()))
    } else {
        Ok(())
    }
}

fn load_of(game: &Game, loads: &EdgeLoads, edge_id: &str) -> Result<(usize, f64), BatchError> {
    let e = game.edge_index(edge_id)?;
    let x = *loads.total.get(e).ok_or(GameError::FlowShape)?;
    if !(x >= 0.0) {
        return Err(GameError::FlowShape.into());
    }
    Ok((e, x))
}

fn batch_point(index: u64, batches: u64, load: f64) -> f64 {
    (index as f64 / batches as f64) * load
}

/// Per-unit latency of batch `index` at an edge cut into `batches` batches: `l̂_e((b/N_e) x_e)`.
pub fn batch_latency(
    game: &Game,
    loads: &EdgeLoads,
    edge_id: &str,
    index: u64,
    batches: u64,
) -> Result<f64, BatchError> {
    check_batches(edge_id, batches)?;
    if index == 0 || index > batches {
        return Err(BatchError::BatchIndexOutOfRange { index, batches });
    }
    let (e, x) = load_of(game, loads, edge_id)?;
    Ok(game.edges()[e].latency.marginal().value(batch_point(index, batches, x)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BatchSlot {
    pub index: u64,
    pub latency: f64,
    pub mass: f64,
}

/// All batches of an edge in order, with their per-unit latency and mass `x_e / N_e`.
pub fn batch_schedule(
    game: &Game,
    loads: &EdgeLoads,
    edge_id: &str,
    batches: u64,
) -> Result<Vec<BatchSlot>, BatchError> {
    check_batches(edge_id, batches)?;
    let (e, x) = load_of(game, loads, edge_id)?;
    let marginal = game.edges()[e].latency.marginal();
    let mass = x / batches as f64;
    Ok((1..=batches)
        .map(|index| BatchSlot {
            index,
            latency: marginal.value(batch_point(index, batches, x)),
            mass,
        })
        .collect())
}

/// Bernoulli numbers `B_0..=B_{MAX_DEGREE}` with the `B_1 = +1/2` convention.
const BERNOULLI: [f64; MAX_DEGREE + 1] = [
    1.0,
    0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
    0.0,
    7.0 / 6.0,
    0.0,
    -3617.0 / 510.0,
];

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, t| acc * (n - t) as f64 / (t + 1) as f64)
}

/// `Σ_{b=1}^N (b/N)^j / N − 1/(j+1)`: how far the right Riemann sum of `z^j`
/// over `[0, 1]` overshoots its integral. By Faulhaber's formula this is
/// `(1/(j+1)) Σ_{k=1}^{j} C(j+1, k) B_k N^{-k}`.
fn riemann_excess(power: usize, batches: u64) -> f64 {
    let inv = 1.0 / batches as f64;
    let sum: f64 = (1..=power)
        .map(|k| binomial(power + 1, k) * BERNOULLI[k] * inv.powi(k as i32))
        .fold(0.0, |acc, t| acc + t);
    sum / (power + 1) as f64
}

/// `ĉ_e − l_e(x_e) x_e` for a latency at load `x` cut into `batches` batches.
fn batch_excess(latency: &LatencyFunction, x: f64, batches: u64) -> f64 {
    latency
        .marginal()
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &m)| m != 0.0)
        .map(|(j, &m)| m * x.powi(j as i32 + 1) * riemann_excess(j, batches))
        .fold(0.0, |acc, t| acc + t)
}

/// Batch cost `ĉ_e = (x_e/N_e) Σ_{b=1}^{N_e} l̂_e((b/N_e) x_e)`.
///
/// Evaluated in closed form as `l_e(x_e) x_e` plus the power-sum excess, so
/// the cost is O(degree²) regardless of `N_e`.
pub fn batch_edge_cost(game: &Game, loads: &EdgeLoads, edge_id: &str, batches: u64) -> Result<f64, BatchError> {
    check_batches(edge_id, batches)?;
    let (e, x) = load_of(game, loads, edge_id)?;
    let latency = &game.edges()[e].latency;
    Ok(latency.value(x) * x + batch_excess(latency, x, batches))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeBatchEntry {
    pub edge_id: String,
    pub batches: u64,
    pub load: f64,
    /// `l_e(x_e) x_e`, which equals `∫_0^{x_e} l̂_e`.
    pub cost: f64,
    pub batch_cost: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatchReport {
    pub per_edge: Vec<EdgeBatchEntry>,
    pub total_batch_cost: f64,
    pub total_original_cost: f64,
    pub total_gap: f64,
}

/// `Ĉ(x) = Σ_e ĉ_e(x_e)` with the per-edge breakdown.
pub fn batch_social_cost(game: &Game, flow: &Flow, bs: &BatchSystem) -> Result<BatchReport, BatchError> {
    flow.check_feasible(game, FEASIBILITY_TOL)?;
    bs.check(game)?;
    let total = game::total_loads(game, flow);
    let per_edge: Vec<EdgeBatchEntry> = game
        .edges()
        .iter()
        .zip(total.iter().zip(bs.counts()))
        .map(|(edge, (&x, &n))| {
            let cost = edge.latency.value(x) * x;
            let gap = batch_excess(&edge.latency, x, n);
            EdgeBatchEntry {
                edge_id: edge.id.clone(),
                batches: n,
                load: x,
                cost,
                batch_cost: cost + gap,
                gap,
            }
        })
        .collect();
    Ok(BatchReport {
        total_batch_cost: per_edge.iter().map(|r| r.batch_cost).sum(),
        total_original_cost: per_edge.iter().map(|r| r.cost).sum(),
        total_gap: per_edge.iter().map(|r| r.gap).sum(),
        per_edge,
    })
}

/// Batch counts whose total batch-cost overshoot at `flow` is at most `epsilon`.
///
/// The budget is split evenly over loaded edges. For non-decreasing `l̂_e`
/// the right Riemann sum exceeds the integral by at most
/// `(x_e / N_e)(l̂_e(x_e) − l̂_e(0))`, which fixes `N_e`.
pub fn select_batch_system(game: &Game, flow: &Flow, epsilon: f64) -> Result<BatchSystem, BatchError> {
    if !(epsilon > 0.0) {
        return Err(BatchError::NonPositiveEpsilon(epsilon));
    }
    flow.check_feasible(game, FEASIBILITY_TOL)?;
    let total = game::total_loads(game, flow);
    let loaded = total.iter().filter(|&&x| x > EPS_USE).count();
    let budget = epsilon / loaded.max(1) as f64;

    let counts = game
        .edges()
        .iter()
        .zip(&total)
        .map(|(edge, &x)| {
            if x <= EPS_USE {
                return Ok(1);
            }
            let marginal = edge.latency.marginal();
            let spread = marginal.value(x) - marginal.value(0.0);
            let required = (x * spread / budget).ceil();
            if required > MAX_BATCHES as f64 {
                return Err(BatchError::TooManyBatches {
                    edge: edge.id.clone(),
                    required,
                });
            }
            Ok((required as u64).max(1))
        })
        .collect::<Result<Vec<_>, _>>()?;
    BatchSystem::from_counts(game, counts)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BatchEquilibriumReport {
    pub is_equilibrium: bool,
    pub max_violation: f64,
}

/// Checks the batch-equilibrium condition in its worst case: a type's used
/// strategy is charged at the batch index `b_e` maximizing its latency, which
/// for non-decreasing `l̂_e` is the last batch `b_e = N_e`, while the deviation
/// pays `l̂_e(x_e)` on every edge.
pub fn verify_batch_equilibrium(
    game: &Game,
    flow: &Flow,
    bs: &BatchSystem,
    tol: f64,
) -> Result<BatchEquilibriumReport, BatchError> {
    flow.check_feasible(game, FEASIBILITY_TOL)?;
    bs.check(game)?;
    let total = game::total_loads(game, flow);
    let marginal: Vec<LatencyFunction> = game.edges().iter().map(|e| e.latency.marginal()).collect();
    let last_batch: Vec<f64> = marginal
        .iter()
        .zip(total.iter().zip(bs.counts()))
        .map(|(f, (&x, &n))| f.value(batch_point(n, n, x)))
        .collect();
    let full_load: Vec<f64> = marginal.iter().zip(&total).map(|(f, &x)| f.value(x)).collect();

    let mut max_violation: f64 = 0.0;
    for (i, ty) in game.player_types().iter().enumerate() {
        let Some(cheapest) = ty
            .strategies()
            .iter()
            .map(|s| s.edges().iter().map(|&e| full_load[e]).sum::<f64>())
            .reduce(f64::min)
        else {
            continue;
        };
        for (s, strategy) in ty.strategies().iter().enumerate() {
            if flow.amount(i, s) <= EPS_USE {
                continue;
            }
            let worst: f64 = strategy.edges().iter().map(|&e| last_batch[e]).sum();
            max_violation = max_violation.max(worst - cheapest);
        }
    }
    Ok(BatchEquilibriumReport {
        is_equilibrium: max_violation <= tol,
        max_violation,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MechanismReport {
    pub epsilon: f64,
    pub optimum: SolveResult,
    pub batch_system: BatchSystem,
    pub report: BatchReport,
    pub equilibrium: BatchEquilibriumReport,
    /// `None` when the optimal cost is zero.
    pub price_of_anarchy: Option<PoaReport>,
}

/// Tolerance on the batch-equilibrium check of the computed optimum.
pub const PIPELINE_EQUILIBRIUM_TOL: f64 = 1e-6;

/// Solves for the social optimum, picks an ε-sufficient batch system for it,
/// and confirms that the optimum is a batch equilibrium whose batch cost is
/// within `epsilon` of the optimal cost.
pub fn mechanism_pipeline(game: &Game, epsilon: f64, params: &SolverParams) -> Result<MechanismReport, BatchError> {
    if !(epsilon > 0.0) {
        return Err(BatchError::NonPositiveEpsilon(epsilon));
    }
    let optimum = solver::solve(game, CostMode::Marginal, params)?;
    let batch_system = select_batch_system(game, &optimum.flow, epsilon)?;
    let report = batch_social_cost(game, &optimum.flow, &batch_system)?;
    let equilibrium = verify_batch_equilibrium(game, &optimum.flow, &batch_system, PIPELINE_EQUILIBRIUM_TOL)?;

    if !equilibrium.is_equilibrium {
        return Err(BatchError::GuaranteeViolated(format!(
            "optimum is not a batch equilibrium (violation {:e})",
            equilibrium.max_violation
        )));
    }
    if report.total_gap > epsilon {
        return Err(BatchError::GuaranteeViolated(format!(
            "batch cost exceeds the optimum by {:e} > {epsilon:e}",
            report.total_gap
        )));
    }

    let selfish = solver::solve(game, CostMode::Original, params)?;
    let price_of_anarchy = solver::poa_from_costs(selfish.social_cost_original, optimum.social_cost_original).ok();
    Ok(MechanismReport {
        epsilon,
        optimum,
        batch_system,
        report,
        equilibrium,
        price_of_anarchy,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub batches: u64,
    pub batch_cost: f64,
    pub gap: f64,
}

/// Batch cost of `flow` with the same `N` on every edge, for each `N` in `batch_counts`.
pub fn uniform_sweep(game: &Game, flow: &Flow, batch_counts: &[u64]) -> Result<Vec<SweepRow>, BatchError> {
    batch_counts
        .iter()
        .map(|&n| {
            let report = batch_social_cost(game, flow, &BatchSystem::uniform(game, n)?)?;
            Ok(SweepRow {
                batches: n,
                batch_cost: report.total_batch_cost,
                gap: report.total_gap,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::game::edge_loads;

    fn pigou_opt() -> (Game, Flow) {
        let game = fixtures::pigou();
        let flow = Flow::from_entries(&game, [("t1", 0, 0.5), ("t1", 1, 0.5)]).unwrap();
        (game, flow)
    }

    fn mono_forced() -> (Game, Flow) {
        let game = fixtures::mono();
        let flow = Flow::from_entries(&game, [("t1", 0, 1.0)]).unwrap();
        (game, flow)
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * b.abs().max(1.0)
    }

    #[test]
    fn riemann_excess_matches_power_sums() {
        for n in [1u64, 2, 3, 7, 10, 64] {
            for j in 0..=MAX_DEGREE {
                let direct: f64 = (1..=n).map(|b| (b as f64 / n as f64).powi(j as i32)).sum::<f64>() / n as f64;
                let expected = direct - 1.0 / (j + 1) as f64;
                let got = riemann_excess(j, n);
                assert!((got - expected).abs() < 1e-12, "j={j} n={n}: {got} vs {expected}");
            }
        }
        assert_eq!(riemann_excess(1, 10), 0.05);
    }

    #[test]
    fn batch_latency_examples() {
        let (game, flow) = pigou_opt();
        let loads = edge_loads(&game, &flow).unwrap();
        assert!(close(batch_latency(&game, &loads, "e2", 4, 10).unwrap(), 0.4));
        assert_eq!(batch_latency(&game, &loads, "e2", 10, 10).unwrap(), 1.0);
        let zero = EdgeLoads::zeros(&game);
        assert_eq!(batch_latency(&game, &zero, "e1", 3, 5).unwrap(), 1.0);
        assert_eq!(batch_latency(&game, &zero, "e2", 3, 5).unwrap(), 0.0);
        assert!(matches!(
            batch_latency(&game, &loads, "e2", 0, 10),
            Err(BatchError::BatchIndexOutOfRange { index: 0, batches: 10 })
        ));
        assert!(matches!(
            batch_latency(&game, &loads, "e2", 11, 10),
            Err(BatchError::BatchIndexOutOfRange { .. })
        ));
        assert!(matches!(batch_latency(&game, &loads, "e2", 1, 0), Err(BatchError::ZeroBatches(_))));
        assert!(batch_latency(&game, &loads, "zz", 1, 1).is_err());
    }

    #[test]
    fn batch_schedule_examples() {
        let (game, flow) = pigou_opt();
        let loads = edge_loads(&game, &flow).unwrap();
        let s = batch_schedule(&game, &loads, "e2", 2).unwrap();
        assert_eq!(
            s,
            vec![
                BatchSlot { index: 1, latency: 0.5, mass: 0.25 },
                BatchSlot { index: 2, latency: 1.0, mass: 0.25 },
            ]
        );
        let s = batch_schedule(&game, &loads, "e2", 1).unwrap();
        assert_eq!(s, vec![BatchSlot { index: 1, latency: 1.0, mass: 0.5 }]);
        let s = batch_schedule(&game, &loads, "e1", 3).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.iter().all(|slot| slot.latency == 1.0 && close(slot.mass, 1.0 / 6.0)));
        assert!(batch_schedule(&game, &loads, "nope", 3).is_err());
    }

    #[test]
    fn batch_edge_cost_examples() {
        let (game, flow) = pigou_opt();
        let loads = edge_loads(&game, &flow).unwrap();
        assert!(close(batch_edge_cost(&game, &loads, "e2", 1).unwrap(), 0.5));
        assert!(close(batch_edge_cost(&game, &loads, "e2", 10).unwrap(), 11.0 / 40.0));
        let (game, flow) = mono_forced();
        let loads = edge_loads(&game, &flow).unwrap();
        // (N + 1)(2N + 1) / (2 N^2) at N = 10
        assert!(close(batch_edge_cost(&game, &loads, "m1", 10).unwrap(), 1.155));
    }

    #[test]
    fn batch_social_cost_examples() {
        let (game, flow) = pigou_opt();
        let r = batch_social_cost(&game, &flow, &BatchSystem::uniform(&game, 1).unwrap()).unwrap();
        assert!(close(r.total_batch_cost, 1.0));
        let r = batch_social_cost(&game, &flow, &BatchSystem::uniform(&game, 10).unwrap()).unwrap();
        assert!(close(r.total_batch_cost, 0.775));
        assert!(close(r.total_original_cost, 0.75));
        assert!(close(r.total_gap, 0.025));
        assert_eq!(r.per_edge[0].gap, 0.0);

        let mut spec = game.to_spec();
        spec.player_types[0].demand = 0.0;
        let idle = Game::from_spec(&spec).unwrap();
        let r = batch_social_cost(&idle, &Flow::zeros(&idle), &BatchSystem::uniform(&idle, 7).unwrap()).unwrap();
        assert_eq!(r.total_batch_cost, 0.0);
    }

    #[test]
    fn batch_system_construction() {
        let game = fixtures::pigou();
        assert!(matches!(BatchSystem::uniform(&game, 0), Err(BatchError::ZeroBatches(_))));
        assert!(matches!(
            BatchSystem::from_counts(&game, vec![1]),
            Err(BatchError::MissingEdge(id)) if id == "e2"
        ));
        let mut map = BTreeMap::new();
        map.insert("e1".to_string(), 2);
        assert!(matches!(BatchSystem::from_map(&game, &map), Err(BatchError::MissingEdge(_))));
        map.insert("e2".to_string(), 5);
        let bs = BatchSystem::from_map(&game, &map).unwrap();
        assert_eq!(bs.counts(), &[2, 5]);
        assert_eq!(bs.to_map(&game), map);
        map.insert("e3".to_string(), 5);
        assert!(BatchSystem::from_map(&game, &map).is_err());
    }

    #[test]
    fn select_batch_system_examples() {
        let (game, flow) = pigou_opt();
        let bs = select_batch_system(&game, &flow, 0.1).unwrap();
        assert_eq!(bs.counts(), &[1, 10]);
        let r = batch_social_cost(&game, &flow, &bs).unwrap();
        assert!(close(r.total_gap, 0.025));

        let (game, flow) = mono_forced();
        let bs = select_batch_system(&game, &flow, 0.2).unwrap();
        assert_eq!(bs.counts(), &[15]);
        let r = batch_social_cost(&game, &flow, &bs).unwrap();
        assert!(close(r.total_gap, 16.0 * 31.0 / 450.0 - 1.0));

        let game = fixtures::pigou();
        let mut spec = game.to_spec();
        spec.player_types[0].demand = 0.0;
        let idle = Game::from_spec(&spec).unwrap();
        let bs = select_batch_system(&idle, &Flow::zeros(&idle), 0.01).unwrap();
        assert_eq!(bs.counts(), &[1, 1]);

        assert!(matches!(
            select_batch_system(&game, &flow_for(&game), 0.0),
            Err(BatchError::NonPositiveEpsilon(_))
        ));
        assert!(matches!(
            select_batch_system(&game, &flow_for(&game), 1e-300),
            Err(BatchError::TooManyBatches { .. })
        ));
    }

    fn flow_for(game: &Game) -> Flow {
        Flow::from_entries(game, [("t1", 1, 1.0)]).unwrap()
    }

    #[test]
    fn verify_batch_equilibrium_examples() {
        let (game, opt) = pigou_opt();
        for n in [1, 3, 10] {
            let bs = BatchSystem::uniform(&game, n).unwrap();
            let r = verify_batch_equilibrium(&game, &opt, &bs, 1e-9).unwrap();
            assert!(r.is_equilibrium);
            assert_eq!(r.max_violation, 0.0);
            let r = verify_batch_equilibrium(&game, &flow_for(&game), &bs, 1e-9).unwrap();
            assert!(!r.is_equilibrium);
            assert_eq!(r.max_violation, 1.0);
        }
        let (game, forced) = mono_forced();
        let bs = BatchSystem::uniform(&game, 4).unwrap();
        assert!(verify_batch_equilibrium(&game, &forced, &bs, 0.0).unwrap().is_equilibrium);
    }

    #[test]
    fn pipeline_examples() {
        let params = SolverParams::default();
        let r = mechanism_pipeline(&fixtures::pigou(), 0.1, &params).unwrap();
        assert_eq!(r.batch_system.counts(), &[1, 10]);
        assert!((r.report.total_original_cost - 0.75).abs() < 1e-9);
        assert!((r.report.total_batch_cost - 0.775).abs() < 1e-9);
        assert!(r.equilibrium.is_equilibrium);
        let poa = r.price_of_anarchy.unwrap();
        assert!((poa.ratio - 4.0 / 3.0).abs() < 1e-9);

        let r = mechanism_pipeline(&fixtures::pigou(), 0.01, &params).unwrap();
        assert_eq!(r.batch_system.counts()[1], 100);
        assert!((r.report.total_gap - 0.0025).abs() < 1e-9);

        let r = mechanism_pipeline(&fixtures::mono(), 1.0, &params).unwrap();
        assert_eq!(r.batch_system.counts(), &[3]);
        assert!((r.report.total_gap - 5.0 / 9.0).abs() < 1e-12);

        assert!(matches!(
            mechanism_pipeline(&fixtures::mono(), -1.0, &params),
            Err(BatchError::NonPositiveEpsilon(_))
        ));
    }

    #[test]
    fn uniform_sweep_pigou() {
        let (game, flow) = pigou_opt();
        let rows = uniform_sweep(&game, &flow, &[1, 2, 4, 1024]).unwrap();
        for row in rows {
            assert!(close(row.gap, 0.25 / row.batches as f64), "{row:?}");
        }
    }
}
