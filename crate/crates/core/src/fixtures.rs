//! The reference games shipped under `fixtures/`.

use crate::game::{Game, GameSpec};

pub const PIGOU_JSON: &str = include_str!("../../../fixtures/pigou.json");
pub const MONO_JSON: &str = include_str!("../../../fixtures/mono.json");
pub const TWOTYPE_JSON: &str = include_str!("../../../fixtures/twotype.json");

fn parse(json: &str) -> Game {
    let spec: GameSpec = serde_json::from_str(json).expect("fixture parses");
    Game::from_spec(&spec).expect("fixture is valid")
}

/// Constant edge `e1` (l = 1) against identity edge `e2` (l = x), demand 1.
pub fn pigou() -> Game {
    parse(PIGOU_JSON)
}

/// A single edge with `l(x) = x^2` and one forced strategy.
pub fn mono() -> Game {
    parse(MONO_JSON)
}

/// Two types sharing the identity edge `e1`; only `t1` may use the constant edge `e2`.
pub fn twotype() -> Game {
    parse(TWOTYPE_JSON)
}

pub fn all() -> Vec<(&'static str, Game)> {
    vec![("pigou", pigou()), ("mono", mono()), ("twotype", twotype())]
}
