//! Seeded random games, flows and batch systems for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::batch::BatchSystem;
use crate::game::{EdgeSpec, Flow, Game, GameSpec, LatencySpec, PlayerTypeSpec};

#[derive(Debug, Clone, Copy)]
pub struct GameShape {
    pub max_edges: usize,
    pub max_types: usize,
    pub max_degree: usize,
    pub max_strategies: usize,
    pub max_demand: f64,
}

impl Default for GameShape {
    fn default() -> Self {
        GameShape {
            max_edges: 6,
            max_types: 3,
            max_degree: 3,
            max_strategies: 4,
            max_demand: 2.0,
        }
    }
}

/// Coefficients in `[0, 1]`, each zero with probability 1/3. At least one
/// non-constant coefficient is positive, so the latency is strictly increasing.
pub fn random_coeffs<R: Rng>(rng: &mut R, max_degree: usize) -> Vec<f64> {
    let degree = rng.gen_range(1..=max_degree.max(1));
    let mut coeffs: Vec<f64> = (0..=degree)
        .map(|_| if rng.gen_bool(1.0 / 3.0) { 0.0 } else { rng.gen_range(0.0..=1.0) })
        .collect();
    if coeffs[1..].iter().all(|&a| a == 0.0) {
        let j = rng.gen_range(1..=degree);
        coeffs[j] = rng.gen_range(0.05..=1.0);
    }
    coeffs
}

pub fn random_game<R: Rng>(rng: &mut R, shape: &GameShape) -> Game {
    let n_edges = rng.gen_range(1..=shape.max_edges);
    let edges: Vec<EdgeSpec> = (0..n_edges)
        .map(|k| EdgeSpec {
            id: format!("e{}", k + 1),
            latency: LatencySpec {
                coeffs: random_coeffs(rng, shape.max_degree),
            },
        })
        .collect();
    let ids: Vec<String> = edges.iter().map(|e| e.id.clone()).collect();

    let n_types = rng.gen_range(1..=shape.max_types);
    let player_types = (0..n_types)
        .map(|k| {
            let n_strategies = rng.gen_range(1..=shape.max_strategies);
            let strategies = (0..n_strategies)
                .map(|_| {
                    let size = rng.gen_range(1..=n_edges);
                    let mut pick: Vec<String> = ids.choose_multiple(rng, size).cloned().collect();
                    pick.sort();
                    pick
                })
                .collect();
            let demand = if rng.gen_bool(0.1) {
                0.0
            } else {
                rng.gen_range(0.1..=shape.max_demand)
            };
            PlayerTypeSpec {
                id: format!("t{}", k + 1),
                demand,
                strategies,
            }
        })
        .collect();

    Game::from_spec(&GameSpec { edges, player_types }).expect("generated game is valid")
}

/// A feasible flow: each type's demand split by random weights, sometimes
/// concentrated on one strategy.
pub fn random_flow<R: Rng>(rng: &mut R, game: &Game) -> Flow {
    let amounts = game
        .player_types()
        .iter()
        .map(|ty| {
            let n = ty.strategies().len();
            if n == 0 {
                return vec![];
            }
            let mut weights: Vec<f64> = if rng.gen_bool(0.2) {
                let mut w = vec![0.0; n];
                w[rng.gen_range(0..n)] = 1.0;
                w
            } else {
                (0..n).map(|_| -rng.gen_range(f64::EPSILON..1.0).ln()).collect()
            };
            let sum: f64 = weights.iter().sum();
            for w in &mut weights {
                *w *= ty.demand / sum;
            }
            weights
        })
        .collect();
    Flow::from_amounts(game, amounts).expect("generated flow has the game's shape")
}

pub fn random_batch_system<R: Rng>(rng: &mut R, game: &Game, max_batches: u64) -> BatchSystem {
    let counts = game.edges().iter().map(|_| rng.gen_range(1..=max_batches)).collect();
    BatchSystem::from_counts(game, counts).expect("counts are positive")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{is_feasible, FEASIBILITY_TOL};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_instances_are_well_formed() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let shape = GameShape::default();
        for _ in 0..200 {
            let game = random_game(&mut rng, &shape);
            assert!(game.edges().len() <= 6 && game.player_types().len() <= 3);
            assert!(game.edges().iter().all(|e| e.latency.degree() <= 3 && !e.latency.is_constant()));
            for _ in 0..5 {
                let flow = random_flow(&mut rng, &game);
                assert!(is_feasible(&game, &flow, FEASIBILITY_TOL));
            }
            let bs = random_batch_system(&mut rng, &game, 9);
            assert!(bs.counts().iter().all(|&n| (1..=9).contains(&n)));
        }
    }
}
