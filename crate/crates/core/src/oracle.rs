//! Brute-force cross-checks for the solver, the batch mechanism and the
//! latency calculus.
//!
//! Nothing here calls into `latency`, `solver` or `batch`: polynomials are
//! evaluated term by term from raw coefficients, loads are summed afresh and
//! every batch-index assignment is enumerated explicitly. Agreement with the
//! main code paths is therefore evidence rather than a tautology.

use thiserror::Error;

use crate::batch::BatchSystem;
use crate::game::{Flow, Game, GameError};
use crate::latency::LatencyFunction;
use crate::solver::CostMode;

/// Largest number of grid points [`grid_search_equilibrium`] will visit.
pub const MAX_GRID_POINTS: u128 = 10_000_000;
/// Largest strategy count per type accepted by [`grid_search_equilibrium`].
pub const MAX_GRID_STRATEGIES: usize = 4;
/// Largest number of batch-index assignments per used strategy in [`exhaustive_batch_verify`].
pub const MAX_BATCH_ASSIGNMENTS: u128 = 1_000_000;
/// Amount above which a strategy counts as used.
const USED: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("grid resolution must lie in (0, 1], got {0}")]
    BadResolution(f64),
    #[error("type `{type_id}` has {count} strategies, the grid oracle handles at most {MAX_GRID_STRATEGIES}")]
    TooManyStrategies { type_id: String, count: usize },
    #[error("grid has {0} points, more than {MAX_GRID_POINTS}")]
    GridTooLarge(u128),
    #[error("{0} batch-index assignments on one strategy, more than {MAX_BATCH_ASSIGNMENTS}")]
    TooManyAssignments(u128),
}

fn poly(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().enumerate().map(|(j, &a)| a * x.powi(j as i32)).sum()
}

/// `l(x) + l'(x) x`, summed term by term.
fn poly_marginal(coeffs: &[f64], x: f64) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .map(|(j, &a)| a * x.powi(j as i32) + j as f64 * a * x.powi(j as i32))
        .sum()
}

fn poly_antiderivative(coeffs: &[f64], x: f64) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .map(|(j, &a)| a * x.powi(j as i32 + 1) / (j + 1) as f64)
        .sum()
}

fn loads(game: &Game, amounts: &[Vec<f64>]) -> Vec<f64> {
    let mut x = vec![0.0; game.edges().len()];
    for (ty, row) in game.player_types().iter().zip(amounts) {
        for (s, &amount) in ty.strategies().iter().zip(row) {
            for &e in s.edges() {
                x[e] += amount;
            }
        }
    }
    x
}

fn potential(game: &Game, x: &[f64], mode: CostMode) -> f64 {
    game.edges()
        .iter()
        .zip(x)
        .map(|(edge, &load)| {
            let c = edge.latency.coeffs();
            match mode {
                CostMode::Original => poly_antiderivative(c, load),
                CostMode::Marginal => poly(c, load) * load,
            }
        })
        .sum()
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, t| acc.saturating_mul(n - t) / (t + 1))
}

/// All ways to split `units` into `parts` non-negative counts, in ascending
/// lexicographic order.
fn compositions(units: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return vec![vec![]];
    }
    if parts == 1 {
        return vec![vec![units]];
    }
    let mut out = Vec::new();
    for first in 0..=units {
        for mut rest in compositions(units - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Minimizes the potential of `mode` over the grid on each type's demand
/// simplex with step `resolution · d_i`. Ties go to the lexicographically
/// smallest grid point.
pub fn grid_search_equilibrium(game: &Game, resolution: f64, mode: CostMode) -> Result<Flow, OracleError> {
    if !(resolution > 0.0 && resolution <= 1.0) {
        return Err(OracleError::BadResolution(resolution));
    }
    let units = (1.0 / resolution).round().max(1.0) as usize;

    let mut points: u128 = 1;
    for ty in game.player_types() {
        let count = ty.strategies().len();
        if count > MAX_GRID_STRATEGIES {
            return Err(OracleError::TooManyStrategies {
                type_id: ty.id.clone(),
                count,
            });
        }
        if ty.demand > 0.0 && count > 0 {
            points = points.saturating_mul(binomial((units + count - 1) as u128, (count - 1) as u128));
        }
    }
    if points > MAX_GRID_POINTS {
        return Err(OracleError::GridTooLarge(points));
    }

    let per_type: Vec<Vec<Vec<f64>>> = game
        .player_types()
        .iter()
        .map(|ty| {
            let count = ty.strategies().len();
            if ty.demand > 0.0 && count > 0 {
                compositions(units, count)
                    .into_iter()
                    .map(|c| c.iter().map(|&k| k as f64 * ty.demand / units as f64).collect())
                    .collect()
            } else {
                vec![vec![0.0; count]]
            }
        })
        .collect();

    let mut index = vec![0usize; per_type.len()];
    let mut best: Option<(f64, Vec<Vec<f64>>)> = None;
    loop {
        let amounts: Vec<Vec<f64>> = index.iter().zip(&per_type).map(|(&k, opts)| opts[k].clone()).collect();
        let value = potential(game, &loads(game, &amounts), mode);
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, amounts));
        }
        // odometer, last type fastest so the scan stays lexicographic
        let mut t = per_type.len();
        loop {
            if t == 0 {
                let (_, amounts) = best.expect("at least one grid point");
                return Ok(Flow::from_amounts(game, amounts)?);
            }
            t -= 1;
            index[t] += 1;
            if index[t] < per_type[t].len() {
                break;
            }
            index[t] = 0;
        }
    }
}

/// Checks the batch-equilibrium inequality for every used strategy, every
/// alternative and every assignment of batch indices on the used strategy.
pub fn exhaustive_batch_verify(game: &Game, flow: &Flow, bs: &BatchSystem, tol: f64) -> Result<bool, OracleError> {
    let counts = bs.counts();
    if flow.amounts().len() != game.player_types().len() || counts.len() != game.edges().len() {
        return Err(GameError::FlowShape.into());
    }
    let x = loads(game, flow.amounts());
    let full: Vec<f64> = game
        .edges()
        .iter()
        .zip(&x)
        .map(|(edge, &load)| poly_marginal(edge.latency.coeffs(), load))
        .collect();

    for (i, ty) in game.player_types().iter().enumerate() {
        let alternatives: Vec<f64> = ty
            .strategies()
            .iter()
            .map(|s| s.edges().iter().map(|&e| full[e]).sum())
            .collect();
        for (s, used) in ty.strategies().iter().enumerate() {
            if flow.amount(i, s) <= USED {
                continue;
            }
            let edges = used.edges();
            let assignments = edges
                .iter()
                .fold(1u128, |acc, &e| acc.saturating_mul(counts[e] as u128));
            if assignments > MAX_BATCH_ASSIGNMENTS {
                return Err(OracleError::TooManyAssignments(assignments));
            }
            let mut batch = vec![1u64; edges.len()];
            loop {
                let lhs: f64 = edges
                    .iter()
                    .zip(&batch)
                    .map(|(&e, &b)| {
                        let z = (b as f64 / counts[e] as f64) * x[e];
                        poly_marginal(game.edges()[e].latency.coeffs(), z)
                    })
                    .sum();
                if alternatives.iter().any(|&rhs| lhs > rhs + tol) {
                    return Ok(false);
                }
                let mut k = 0;
                loop {
                    if k == edges.len() {
                        break;
                    }
                    batch[k] += 1;
                    if batch[k] <= counts[edges[k]] {
                        break;
                    }
                    batch[k] = 1;
                    k += 1;
                }
                if k == edges.len() {
                    break;
                }
            }
        }
    }
    Ok(true)
}

/// Central difference of `f` at `x`, one-sided where `x < h`.
pub fn finite_difference(f: &LatencyFunction, x: f64, h: f64) -> f64 {
    let lo = (x - h).max(0.0);
    let hi = x + h;
    (poly(f.coeffs(), hi) - poly(f.coeffs(), lo)) / (hi - lo)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannCheck {
    pub sum: f64,
    pub integral: f64,
    pub gap: f64,
}

/// Right Riemann sum of `f` on `[0, x]` with `n` cells against the exact integral.
pub fn riemann_check(f: &LatencyFunction, x: f64, n: u64) -> RiemannCheck {
    let width = x / n as f64;
    let sum = width
        * (1..=n)
            .map(|b| poly(f.coeffs(), (b as f64 / n as f64) * x))
            .sum::<f64>();
    let integral = poly_antiderivative(f.coeffs(), x);
    RiemannCheck {
        sum,
        integral,
        gap: sum - integral,
    }
}
