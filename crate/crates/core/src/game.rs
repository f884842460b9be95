//! Congestion games, flows, edge loads and the two cost functionals.
//!
//! A [`GameSpec`] is the untrusted, serializable description of a game. It is
//! checked by [`validate_game`] and turned into a [`Game`], whose strategies
//! are resolved to edge indices and de-duplicated. Everything downstream
//! (solver, batch mechanism, oracle) works on a [`Game`].

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::latency::{LatencyFunction, MAX_DEGREE};

/// Default absolute tolerance on `Σ_S x_i^S = d_i`.
pub const FEASIBILITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GameError {
    #[error("invalid game:\n{0}")]
    Invalid(ValidationReport),
    #[error("unknown player type `{0}`")]
    UnknownType(String),
    #[error("player type `{type_id}` has no strategy {index}")]
    UnknownStrategy { type_id: String, index: usize },
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("flow does not match the game's strategy layout")]
    FlowShape,
    #[error("flow amount for type `{type_id}`, strategy {index} is negative or not finite: {value}")]
    NegativeAmount { type_id: String, index: usize, value: f64 },
    #[error("flow is infeasible: type `{type_id}` routes {routed} but demands {demand}")]
    Infeasible { type_id: String, routed: f64, demand: f64 },
}

// ---------------------------------------------------------------------------
// Serializable description

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatencySpec {
    pub coeffs: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub id: String,
    pub latency: LatencySpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlayerTypeSpec {
    pub id: String,
    pub demand: f64,
    pub strategies: Vec<Vec<String>>,
}

/// Game as read from (or written to) the JSON game format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameSpec {
    pub edges: Vec<EdgeSpec>,
    pub player_types: Vec<PlayerTypeSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    /// Location of the offending field, e.g. `player_types[0].strategies[1][0]`.
    pub path: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, path: String, message: impl Into<String>) {
        self.violations.push(Violation {
            path,
            message: message.into(),
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// Collects every structural problem of `spec`. An empty report means the
/// spec can be turned into a [`Game`].
pub fn validate_game(spec: &GameSpec) -> ValidationReport {
    let mut report = ValidationReport::default();

    let mut edge_ids = HashSet::new();
    for (k, edge) in spec.edges.iter().enumerate() {
        if !edge_ids.insert(edge.id.as_str()) {
            report.push(format!("edges[{k}].id"), format!("duplicate edge id `{}`", edge.id));
        }
        let coeffs = &edge.latency.coeffs;
        if coeffs.is_empty() {
            report.push(format!("edges[{k}].latency.coeffs"), "empty coefficient list");
        }
        if coeffs.len() > MAX_DEGREE + 1 {
            report.push(
                format!("edges[{k}].latency.coeffs"),
                format!("degree {} exceeds maximum {MAX_DEGREE}", coeffs.len() - 1),
            );
        }
        for (j, &a) in coeffs.iter().enumerate() {
            let path = format!("edges[{k}].latency.coeffs[{j}]");
            if !a.is_finite() {
                report.push(path, "non-finite coefficient");
            } else if a < 0.0 {
                report.push(path, format!("negative coefficient {a}"));
            }
        }
    }

    let mut type_ids = HashSet::new();
    for (k, ty) in spec.player_types.iter().enumerate() {
        if !type_ids.insert(ty.id.as_str()) {
            report.push(
                format!("player_types[{k}].id"),
                format!("duplicate player type id `{}`", ty.id),
            );
        }
        let demand_path = format!("player_types[{k}].demand");
        if !ty.demand.is_finite() {
            report.push(demand_path, "non-finite demand");
        } else if ty.demand < 0.0 {
            report.push(demand_path, format!("negative demand {}", ty.demand));
        } else if ty.demand > 0.0 && ty.strategies.is_empty() {
            report.push(
                format!("player_types[{k}].strategies"),
                "positive demand but no strategies",
            );
        }
        for (s, strategy) in ty.strategies.iter().enumerate() {
            if strategy.is_empty() {
                report.push(format!("player_types[{k}].strategies[{s}]"), "empty strategy");
            }
            for (m, edge) in strategy.iter().enumerate() {
                if !edge_ids.contains(edge.as_str()) {
                    report.push(
                        format!("player_types[{k}].strategies[{s}][{m}]"),
                        format!("unknown edge id `{edge}`"),
                    );
                }
            }
        }
    }

    report
}

// ---------------------------------------------------------------------------
// Validated game

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub id: String,
    pub latency: LatencyFunction,
}

/// One canonical strategy: a set of edge indices, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Strategy {
    edges: Vec<usize>,
    multiplicity: usize,
    declared_index: usize,
}

impl Strategy {
    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    /// How many declared strategies collapsed into this one.
    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    /// Position of the first declaration of this strategy in the input.
    pub fn declared_index(&self) -> usize {
        self.declared_index
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.edges.binary_search(&edge).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlayerType {
    pub id: String,
    pub demand: f64,
    strategies: Vec<Strategy>,
    declared: Vec<usize>,
}

impl PlayerType {
    pub fn strategies(&self) -> &[Strategy] {
        &self.strategies
    }

    /// Canonical strategy index for a declared (input) strategy index.
    pub fn canonical_index(&self, declared: usize) -> Option<usize> {
        self.declared.get(declared).copied()
    }

    pub fn declared_count(&self) -> usize {
        self.declared.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Game {
    edges: Vec<Edge>,
    player_types: Vec<PlayerType>,
    edge_index: HashMap<String, usize>,
    type_index: HashMap<String, usize>,
}

impl Game {
    pub fn from_spec(spec: &GameSpec) -> Result<Game, GameError> {
        let report = validate_game(spec);
        if !report.is_valid() {
            return Err(GameError::Invalid(report));
        }

        let edges = spec
            .edges
            .iter()
            .map(|e| {
                let latency = LatencyFunction::new(e.latency.coeffs.clone())
                    .expect("coefficients checked by validate_game");
                Edge {
                    id: e.id.clone(),
                    latency,
                }
            })
            .collect::<Vec<_>>();
        let edge_index: HashMap<String, usize> =
            edges.iter().enumerate().map(|(k, e)| (e.id.clone(), k)).collect();

        let mut player_types = Vec::with_capacity(spec.player_types.len());
        for ty in &spec.player_types {
            let mut strategies: Vec<Strategy> = Vec::new();
            let mut declared = Vec::with_capacity(ty.strategies.len());
            for (s, names) in ty.strategies.iter().enumerate() {
                let set: BTreeSet<usize> = names.iter().map(|n| edge_index[n.as_str()]).collect();
                let edges: Vec<usize> = set.into_iter().collect();
                match strategies.iter().position(|c| c.edges == edges) {
                    Some(c) => {
                        strategies[c].multiplicity += 1;
                        declared.push(c);
                    }
                    None => {
                        declared.push(strategies.len());
                        strategies.push(Strategy {
                            edges,
                            multiplicity: 1,
                            declared_index: s,
                        });
                    }
                }
            }
            player_types.push(PlayerType {
                id: ty.id.clone(),
                demand: ty.demand,
                strategies,
                declared,
            });
        }
        let type_index = player_types
            .iter()
            .enumerate()
            .map(|(k, t)| (t.id.clone(), k))
            .collect();

        Ok(Game {
            edges,
            player_types,
            edge_index,
            type_index,
        })
    }

    /// Writes the game back out with canonical (collapsed) strategies.
    pub fn to_spec(&self) -> GameSpec {
        GameSpec {
            edges: self
                .edges
                .iter()
                .map(|e| EdgeSpec {
                    id: e.id.clone(),
                    latency: LatencySpec {
                        coeffs: e.latency.coeffs().to_vec(),
                    },
                })
                .collect(),
            player_types: self
                .player_types
                .iter()
                .map(|t| PlayerTypeSpec {
                    id: t.id.clone(),
                    demand: t.demand,
                    strategies: t
                        .strategies
                        .iter()
                        .map(|s| s.edges.iter().map(|&e| self.edges[e].id.clone()).collect())
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn player_types(&self) -> &[PlayerType] {
        &self.player_types
    }

    pub fn edge_index(&self, id: &str) -> Result<usize, GameError> {
        self.edge_index
            .get(id)
            .copied()
            .ok_or_else(|| GameError::UnknownEdge(id.to_string()))
    }

    pub fn type_index(&self, id: &str) -> Result<usize, GameError> {
        self.type_index
            .get(id)
            .copied()
            .ok_or_else(|| GameError::UnknownType(id.to_string()))
    }

    pub fn strategy(&self, type_idx: usize, strategy_idx: usize) -> Result<&Strategy, GameError> {
        let ty = &self.player_types[type_idx];
        ty.strategies
            .get(strategy_idx)
            .ok_or_else(|| GameError::UnknownStrategy {
                type_id: ty.id.clone(),
                index: strategy_idx,
            })
    }

    pub fn total_demand(&self) -> f64 {
        self.player_types.iter().map(|t| t.demand).sum()
    }
}

impl TryFrom<GameSpec> for Game {
    type Error = GameError;

    fn try_from(spec: GameSpec) -> Result<Self, Self::Error> {
        Game::from_spec(&spec)
    }
}

// ---------------------------------------------------------------------------
// Flows and loads

/// Amount of each player type on each canonical strategy, `amounts[i][s] = x_i^S`.
#[derive(Debug, Clone, PartialEq)]
pub struct Flow {
    amounts: Vec<Vec<f64>>,
}

impl Flow {
    pub fn zeros(game: &Game) -> Flow {
        Flow {
            amounts: game
                .player_types
                .iter()
                .map(|t| vec![0.0; t.strategies.len()])
                .collect(),
        }
    }

    /// Builds a flow from a full amount table, checking its shape and sign.
    pub fn from_amounts(game: &Game, amounts: Vec<Vec<f64>>) -> Result<Flow, GameError> {
        let flow = Flow { amounts };
        flow.check_shape(game)?;
        for (i, row) in flow.amounts.iter().enumerate() {
            for (s, &x) in row.iter().enumerate() {
                if !(x >= 0.0 && x.is_finite()) {
                    return Err(GameError::NegativeAmount {
                        type_id: game.player_types[i].id.clone(),
                        index: s,
                        value: x,
                    });
                }
            }
        }
        Ok(flow)
    }

    /// Builds a flow from `(type id, canonical strategy index, amount)` entries;
    /// entries not mentioned are zero.
    pub fn from_entries<'a>(
        game: &Game,
        entries: impl IntoIterator<Item = (&'a str, usize, f64)>,
    ) -> Result<Flow, GameError> {
        let mut amounts = Flow::zeros(game).amounts;
        for (type_id, s, x) in entries {
            let i = game.type_index(type_id)?;
            game.strategy(i, s)?;
            amounts[i][s] = x;
        }
        Flow::from_amounts(game, amounts)
    }

    /// Places each type's whole demand on one strategy.
    pub fn all_or_nothing(game: &Game, choice: &[usize]) -> Result<Flow, GameError> {
        if choice.len() != game.player_types.len() {
            return Err(GameError::FlowShape);
        }
        let mut flow = Flow::zeros(game);
        for (i, ty) in game.player_types.iter().enumerate() {
            if ty.strategies.is_empty() {
                continue;
            }
            game.strategy(i, choice[i])?;
            flow.amounts[i][choice[i]] = ty.demand;
        }
        Ok(flow)
    }

    pub fn amounts(&self) -> &[Vec<f64>] {
        &self.amounts
    }

    pub fn amount(&self, type_idx: usize, strategy_idx: usize) -> f64 {
        self.amounts[type_idx][strategy_idx]
    }

    pub(crate) fn amounts_mut(&mut self) -> &mut [Vec<f64>] {
        &mut self.amounts
    }

    pub(crate) fn check_shape(&self, game: &Game) -> Result<(), GameError> {
        let ok = self.amounts.len() == game.player_types.len()
            && self
                .amounts
                .iter()
                .zip(&game.player_types)
                .all(|(row, ty)| row.len() == ty.strategies.len());
        if ok {
            Ok(())
        } else {
            Err(GameError::FlowShape)
        }
    }

    /// Same as [`is_feasible`] but names the first violating type.
    pub fn check_feasible(&self, game: &Game, tol: f64) -> Result<(), GameError> {
        self.check_shape(game)?;
        for (i, (row, ty)) in self.amounts.iter().zip(&game.player_types).enumerate() {
            if let Some(s) = row.iter().position(|&x| !(x >= 0.0 && x.is_finite())) {
                return Err(GameError::NegativeAmount {
                    type_id: game.player_types[i].id.clone(),
                    index: s,
                    value: row[s],
                });
            }
            let routed: f64 = row.iter().sum();
            if !((routed - ty.demand).abs() <= tol) {
                return Err(GameError::Infeasible {
                    type_id: ty.id.clone(),
                    routed,
                    demand: ty.demand,
                });
            }
        }
        Ok(())
    }
}

/// Per-edge loads `x_e^i` and totals `x_e`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeLoads {
    /// `per_type[e][i]`
    pub per_type: Vec<Vec<f64>>,
    pub total: Vec<f64>,
}

impl EdgeLoads {
    pub fn zeros(game: &Game) -> EdgeLoads {
        EdgeLoads {
            per_type: vec![vec![0.0; game.player_types.len()]; game.edges.len()],
            total: vec![0.0; game.edges.len()],
        }
    }
}

pub fn edge_loads(game: &Game, flow: &Flow) -> Result<EdgeLoads, GameError> {
    flow.check_shape(game)?;
    let mut loads = EdgeLoads::zeros(game);
    for (i, ty) in game.player_types.iter().enumerate() {
        for (strategy, &x) in ty.strategies.iter().zip(&flow.amounts[i]) {
            for &e in &strategy.edges {
                loads.per_type[e][i] += x;
            }
        }
    }
    for (total, row) in loads.total.iter_mut().zip(&loads.per_type) {
        *total = row.iter().sum();
    }
    Ok(loads)
}

/// Total loads only; the hot path of the solver.
pub(crate) fn total_loads(game: &Game, flow: &Flow) -> Vec<f64> {
    let mut total = vec![0.0; game.edges.len()];
    for (ty, row) in game.player_types.iter().zip(&flow.amounts) {
        for (strategy, &x) in ty.strategies.iter().zip(row) {
            for &e in &strategy.edges {
                total[e] += x;
            }
        }
    }
    total
}

pub fn is_feasible(game: &Game, flow: &Flow, tol: f64) -> bool {
    flow.check_feasible(game, tol).is_ok()
}

/// `C(x) = Σ_e l_e(x_e) x_e`.
pub fn social_cost(game: &Game, flow: &Flow) -> Result<f64, GameError> {
    flow.check_feasible(game, FEASIBILITY_TOL)?;
    Ok(social_cost_of_loads(game, &total_loads(game, flow)))
}

pub(crate) fn social_cost_of_loads(game: &Game, total: &[f64]) -> f64 {
    game.edges
        .iter()
        .zip(total)
        .map(|(e, &x)| e.latency.value(x) * x)
        .sum()
}

/// `c_i(x) = Σ_e l_e(x_e) x_e^i`.
pub fn player_cost(game: &Game, flow: &Flow, type_id: &str) -> Result<f64, GameError> {
    let i = game.type_index(type_id)?;
    flow.check_feasible(game, FEASIBILITY_TOL)?;
    let loads = edge_loads(game, flow)?;
    Ok(game
        .edges
        .iter()
        .enumerate()
        .map(|(e, edge)| edge.latency.value(loads.total[e]) * loads.per_type[e][i])
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn pigou_spec() -> GameSpec {
        fixtures::pigou().to_spec()
    }

    #[test]
    fn fixtures_validate() {
        for g in [fixtures::pigou(), fixtures::mono(), fixtures::twotype()] {
            assert!(validate_game(&g.to_spec()).is_valid());
        }
    }

    #[test]
    fn negative_coefficient_reported() {
        let mut spec = pigou_spec();
        spec.edges[0].latency.coeffs = vec![1.0, -0.5];
        let report = validate_game(&spec);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].path, "edges[0].latency.coeffs[1]");
        assert!(report.violations[0].message.contains("negative coefficient"));
        assert!(matches!(Game::from_spec(&spec), Err(GameError::Invalid(_))));
    }

    #[test]
    fn unknown_edge_reported() {
        let mut spec = pigou_spec();
        spec.player_types[0].strategies[1] = vec!["e9".into()];
        let report = validate_game(&spec);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].path, "player_types[0].strategies[1][0]");
        assert!(report.violations[0].message.contains("unknown edge id"));
    }

    #[test]
    fn every_problem_is_listed() {
        let spec = GameSpec {
            edges: vec![
                EdgeSpec {
                    id: "a".into(),
                    latency: LatencySpec { coeffs: vec![] },
                },
                EdgeSpec {
                    id: "a".into(),
                    latency: LatencySpec {
                        coeffs: vec![-1.0, f64::NAN],
                    },
                },
            ],
            player_types: vec![
                PlayerTypeSpec {
                    id: "t".into(),
                    demand: -1.0,
                    strategies: vec![vec![]],
                },
                PlayerTypeSpec {
                    id: "t".into(),
                    demand: 1.0,
                    strategies: vec![],
                },
            ],
        };
        let report = validate_game(&spec);
        let messages: Vec<_> = report.violations.iter().map(|v| v.message.as_str()).collect();
        assert_eq!(report.violations.len(), 8, "{messages:?}");
        assert!(messages.iter().any(|m| m.contains("duplicate edge id")));
        assert!(messages.iter().any(|m| m.contains("empty coefficient list")));
        assert!(messages.iter().any(|m| m.contains("negative coefficient")));
        assert!(messages.iter().any(|m| m.contains("non-finite coefficient")));
        assert!(messages.iter().any(|m| m.contains("negative demand")));
        assert!(messages.iter().any(|m| m.contains("empty strategy")));
        assert!(messages.iter().any(|m| m.contains("duplicate player type id")));
        assert!(messages.iter().any(|m| m.contains("no strategies")));
    }

    #[test]
    fn zero_demand_type_may_have_no_strategies() {
        let mut spec = pigou_spec();
        spec.player_types.push(PlayerTypeSpec {
            id: "idle".into(),
            demand: 0.0,
            strategies: vec![],
        });
        let game = Game::from_spec(&spec).unwrap();
        let flow = Flow::from_entries(&game, [("t1", 1, 1.0)]).unwrap();
        assert_eq!(player_cost(&game, &flow, "idle").unwrap(), 0.0);
        assert_eq!(social_cost(&game, &flow).unwrap(), 1.0);
    }

    #[test]
    fn duplicate_strategies_collapse() {
        let mut spec = pigou_spec();
        spec.player_types[0].strategies = vec![
            vec!["e1".into()],
            vec!["e2".into()],
            vec!["e1".into(), "e1".into()],
            vec!["e2".into()],
        ];
        let game = Game::from_spec(&spec).unwrap();
        let ty = &game.player_types()[0];
        assert_eq!(ty.strategies().len(), 2);
        assert_eq!(ty.strategies()[0].multiplicity(), 2);
        assert_eq!(ty.strategies()[1].multiplicity(), 2);
        assert_eq!(ty.canonical_index(2), Some(0));
        assert_eq!(ty.canonical_index(3), Some(1));
        assert_eq!(ty.strategies()[1].declared_index(), 1);
        assert_eq!(game.to_spec(), pigou_spec());
    }

    #[test]
    fn edge_loads_examples() {
        let game = fixtures::pigou();
        let flow = Flow::from_entries(&game, [("t1", 0, 0.25), ("t1", 1, 0.75)]).unwrap();
        let loads = edge_loads(&game, &flow).unwrap();
        assert_eq!(loads.total, vec![0.25, 0.75]);

        let flow = Flow::from_entries(&game, [("t1", 0, 0.0), ("t1", 1, 1.0)]).unwrap();
        assert_eq!(edge_loads(&game, &flow).unwrap().total, vec![0.0, 1.0]);

        let game = fixtures::twotype();
        let flow = Flow::from_entries(&game, [("t1", 0, 0.5), ("t2", 0, 0.5)]).unwrap();
        let loads = edge_loads(&game, &flow).unwrap();
        assert_eq!(loads.total[0], 1.0);
        assert_eq!(loads.per_type[0], vec![0.5, 0.5]);
    }

    #[test]
    fn bad_references() {
        let game = fixtures::pigou();
        assert_eq!(
            Flow::from_entries(&game, [("t9", 0, 1.0)]),
            Err(GameError::UnknownType("t9".into()))
        );
        assert!(matches!(
            Flow::from_entries(&game, [("t1", 5, 1.0)]),
            Err(GameError::UnknownStrategy { index: 5, .. })
        ));
        assert!(matches!(
            Flow::from_entries(&game, [("t1", 0, -1.0)]),
            Err(GameError::NegativeAmount { .. })
        ));
        let other = fixtures::twotype();
        let flow = Flow::zeros(&other);
        assert_eq!(edge_loads(&game, &flow), Err(GameError::FlowShape));
        assert!(player_cost(&game, &Flow::zeros(&game), "nope").is_err());
    }

    #[test]
    fn feasibility_examples() {
        let game = fixtures::pigou();
        let f = |a: f64, b: f64| Flow::from_entries(&game, [("t1", 0, a), ("t1", 1, b)]).unwrap();
        assert!(is_feasible(&game, &f(0.5, 0.5), 1e-9));
        assert!(!is_feasible(&game, &f(0.5, 0.4), 1e-9));
        assert!(is_feasible(&game, &f(1.0, 0.0), 1e-9));
        assert!(matches!(
            social_cost(&game, &f(0.5, 0.4)),
            Err(GameError::Infeasible { .. })
        ));
    }

    #[test]
    fn cost_examples() {
        let game = fixtures::pigou();
        let eq = Flow::from_entries(&game, [("t1", 1, 1.0)]).unwrap();
        assert_eq!(social_cost(&game, &eq).unwrap(), 1.0);
        assert_eq!(player_cost(&game, &eq, "t1").unwrap(), 1.0);
        let split = Flow::from_entries(&game, [("t1", 0, 0.5), ("t1", 1, 0.5)]).unwrap();
        assert_eq!(social_cost(&game, &split).unwrap(), 0.75);

        let game = fixtures::mono();
        let forced = Flow::from_entries(&game, [("t1", 0, 1.0)]).unwrap();
        assert_eq!(social_cost(&game, &forced).unwrap(), 1.0);

        let game = fixtures::twotype();
        let flow = Flow::from_entries(&game, [("t1", 0, 0.5), ("t2", 0, 0.5)]).unwrap();
        assert_eq!(player_cost(&game, &flow, "t1").unwrap(), 0.5);
        assert_eq!(player_cost(&game, &flow, "t2").unwrap(), 0.5);
    }
}
