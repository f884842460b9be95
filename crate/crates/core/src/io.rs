//! Game and flow JSON files, batch-report and sweep CSV.
//!
//! Flow files refer to strategies by their position in the game file, so a
//! game with duplicate strategies still round-trips: on load, amounts of
//! duplicates are merged onto the canonical strategy, and on save each
//! canonical strategy is written under its first declared position.

use std::collections::HashSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::batch::{BatchReport, SweepRow};
use crate::game::{Flow, Game, GameError, GameSpec};
use crate::solver::SolveResult;

pub const BATCH_REPORT_HEADER: [&str; 6] = ["edge_id", "N_e", "x_e", "c_e", "batch_c_e", "gap"];
pub const SWEEP_HEADER: [&str; 3] = ["N", "batch_cost", "gap"];

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{origin}: parse error at line {line}, column {column}: {message}")]
    Parse {
        origin: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{origin}: {source}")]
    Game {
        origin: String,
        #[source]
        source: GameError,
    },
    #[error("{origin}: duplicate flow entry for type `{type_id}`, strategy {index}")]
    DuplicateEntry {
        origin: String,
        type_id: String,
        index: usize,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Write(#[from] std::io::Error),
}

fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), IoError> {
    fs::write(path, contents).map_err(|source| IoError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str, origin: &str) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Parse {
        origin: origin.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn parse_game(text: &str, origin: &str) -> Result<Game, IoError> {
    let spec: GameSpec = parse_json(text, origin)?;
    Game::from_spec(&spec).map_err(|source| IoError::Game {
        origin: origin.to_string(),
        source,
    })
}

pub fn load_game(path: &Path) -> Result<Game, IoError> {
    parse_game(&read(path)?, &path.display().to_string())
}

pub fn save_game(game: &Game, path: &Path) -> Result<(), IoError> {
    let mut text = serde_json::to_string_pretty(&game.to_spec())?;
    text.push('\n');
    write_file(path, text.as_bytes())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlowEntry {
    #[serde(rename = "type")]
    pub type_id: String,
    pub strategy: usize,
    pub x: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveMetadata {
    pub iterations: usize,
    pub relative_gap: f64,
    pub social_cost_original: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlowDocument {
    pub amounts: Vec<FlowEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<SolveMetadata>,
}

impl FlowDocument {
    pub fn from_flow(game: &Game, flow: &Flow) -> FlowDocument {
        let amounts = game
            .player_types()
            .iter()
            .zip(flow.amounts())
            .flat_map(|(ty, row)| {
                ty.strategies().iter().zip(row).map(|(s, &x)| FlowEntry {
                    type_id: ty.id.clone(),
                    strategy: s.declared_index(),
                    x,
                })
            })
            .collect();
        FlowDocument {
            amounts,
            metadata: None,
        }
    }

    pub fn from_solve(game: &Game, result: &SolveResult) -> FlowDocument {
        FlowDocument {
            metadata: Some(SolveMetadata {
                iterations: result.iterations,
                relative_gap: result.relative_gap,
                social_cost_original: result.social_cost_original,
            }),
            ..FlowDocument::from_flow(game, &result.flow)
        }
    }

    /// Resolves the entries against `game`. Missing entries are zero.
    pub fn to_flow(&self, game: &Game, origin: &str) -> Result<Flow, IoError> {
        let game_err = |source| IoError::Game {
            origin: origin.to_string(),
            source,
        };
        let mut amounts: Vec<Vec<f64>> = Flow::zeros(game).amounts().to_vec();
        let mut seen = HashSet::new();
        for entry in &self.amounts {
            let i = game.type_index(&entry.type_id).map_err(game_err)?;
            let ty = &game.player_types()[i];
            let s = ty.canonical_index(entry.strategy).ok_or_else(|| {
                game_err(GameError::UnknownStrategy {
                    type_id: entry.type_id.clone(),
                    index: entry.strategy,
                })
            })?;
            if !(entry.x >= 0.0 && entry.x.is_finite()) {
                return Err(game_err(GameError::NegativeAmount {
                    type_id: entry.type_id.clone(),
                    index: entry.strategy,
                    value: entry.x,
                }));
            }
            if !seen.insert((i, entry.strategy)) {
                return Err(IoError::DuplicateEntry {
                    origin: origin.to_string(),
                    type_id: entry.type_id.clone(),
                    index: entry.strategy,
                });
            }
            amounts[i][s] += entry.x;
        }
        Flow::from_amounts(game, amounts).map_err(game_err)
    }
}

pub fn parse_flow(text: &str, game: &Game, origin: &str) -> Result<Flow, IoError> {
    let doc: FlowDocument = parse_json(text, origin)?;
    doc.to_flow(game, origin)
}

pub fn load_flow(path: &Path, game: &Game) -> Result<Flow, IoError> {
    parse_flow(&read(path)?, game, &path.display().to_string())
}

fn write_document(doc: &FlowDocument, path: &Path) -> Result<(), IoError> {
    let mut text = serde_json::to_string_pretty(doc)?;
    text.push('\n');
    write_file(path, text.as_bytes())
}

pub fn save_flow(game: &Game, flow: &Flow, path: &Path) -> Result<(), IoError> {
    write_document(&FlowDocument::from_flow(game, flow), path)
}

/// Writes the solved flow together with its convergence metadata.
pub fn save_solve_result(game: &Game, result: &SolveResult, path: &Path) -> Result<(), IoError> {
    write_document(&FlowDocument::from_solve(game, result), path)
}

/// Shortest decimal that reads back as the same `f64`.
pub fn format_exact(v: f64) -> String {
    format!("{v:?}")
}

/// Batch report as CSV: one row per edge, then a `total` row.
pub fn write_batch_report_csv<W: Write>(report: &BatchReport, out: W) -> Result<(), IoError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(BATCH_REPORT_HEADER)?;
    for row in &report.per_edge {
        w.write_record([
            row.edge_id.clone(),
            row.batches.to_string(),
            format_exact(row.load),
            format_exact(row.cost),
            format_exact(row.batch_cost),
            format_exact(row.gap),
        ])?;
    }
    w.write_record([
        "total".to_string(),
        String::new(),
        String::new(),
        format_exact(report.total_original_cost),
        format_exact(report.total_batch_cost),
        format_exact(report.total_gap),
    ])?;
    w.flush()?;
    Ok(())
}

pub fn write_batch_report_json<W: Write>(report: &BatchReport, mut out: W) -> Result<(), IoError> {
    serde_json::to_writer_pretty(&mut out, report)?;
    writeln!(out)?;
    Ok(())
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<(), IoError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_HEADER)?;
    for row in rows {
        w.write_record([row.batches.to_string(), format_exact(row.batch_cost), format_exact(row.gap)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn save_batch_report_csv(report: &BatchReport, path: &Path) -> Result<(), IoError> {
    let mut buf = Vec::new();
    write_batch_report_csv(report, &mut buf)?;
    write_file(path, &buf)
}

pub fn save_batch_report_json(report: &BatchReport, path: &Path) -> Result<(), IoError> {
    let mut buf = Vec::new();
    write_batch_report_json(report, &mut buf)?;
    write_file(path, &buf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixture_files_load() {
        let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
        let game = load_game(&root.join("pigou.json")).unwrap();
        assert_eq!(game, fixtures::pigou());
        assert_eq!(game.edges().len(), 2);
        assert_eq!(game.player_types().len(), 1);
    }

    #[test]
    fn negative_coefficient_is_a_validation_error() {
        let text = r#"{"edges":[{"id":"e1","latency":{"coeffs":[-1]}}],"player_types":[]}"#;
        let err = parse_game(text, "bad.json").unwrap_err();
        assert!(matches!(err, IoError::Game { source: GameError::Invalid(_), .. }));
        assert!(err.to_string().contains("negative coefficient"));
    }

    #[test]
    fn truncated_file_reports_position() {
        let text = "{\n  \"edges\": [\n    {\"id\": \"e1\",";
        match parse_game(text, "cut.json").unwrap_err() {
            IoError::Parse { line, column, .. } => {
                assert_eq!(line, 3);
                assert!(column > 0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_file() {
        assert!(matches!(load_game(Path::new("/no/such/game.json")), Err(IoError::Io { .. })));
    }

    #[test]
    fn flow_references_are_checked() {
        let game = fixtures::pigou();
        let err = parse_flow(r#"{"amounts":[{"type":"t1","strategy":5,"x":1}]}"#, &game, "f").unwrap_err();
        assert!(matches!(err, IoError::Game { source: GameError::UnknownStrategy { index: 5, .. }, .. }));
        let err = parse_flow(r#"{"amounts":[{"type":"t7","strategy":0,"x":1}]}"#, &game, "f").unwrap_err();
        assert!(matches!(err, IoError::Game { source: GameError::UnknownType(_), .. }));
        let err = parse_flow(r#"{"amounts":[{"type":"t1","strategy":0,"x":-1}]}"#, &game, "f").unwrap_err();
        assert!(matches!(err, IoError::Game { source: GameError::NegativeAmount { .. }, .. }));
        let err = parse_flow(
            r#"{"amounts":[{"type":"t1","strategy":0,"x":1},{"type":"t1","strategy":0,"x":1}]}"#,
            &game,
            "f",
        )
        .unwrap_err();
        assert!(matches!(err, IoError::DuplicateEntry { .. }));
    }

    #[test]
    fn empty_flow_is_zero() {
        let game = fixtures::pigou();
        let flow = parse_flow(r#"{"amounts":[]}"#, &game, "f").unwrap();
        assert_eq!(flow, Flow::zeros(&game));
        assert!(!crate::game::is_feasible(&game, &flow, 1e-9));
    }

    #[test]
    fn flow_round_trip_through_file() {
        let game = fixtures::pigou();
        let flow = Flow::from_entries(&game, [("t1", 0, 0.1 + 0.2), ("t1", 1, 1.0 - (0.1 + 0.2))]).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("flow.json");
        save_flow(&game, &flow, &path).unwrap();
        assert_eq!(load_flow(&path, &game).unwrap(), flow);
    }

    #[test]
    fn duplicate_strategies_use_declared_positions() {
        let text = r#"{"edges":[{"id":"a","latency":{"coeffs":[0,1]}},{"id":"b","latency":{"coeffs":[1]}}],
            "player_types":[{"id":"t","demand":1,"strategies":[["b"],["a"],["b"]]}]}"#;
        let game = parse_game(text, "dup").unwrap();
        let flow = parse_flow(
            r#"{"amounts":[{"type":"t","strategy":0,"x":0.25},{"type":"t","strategy":2,"x":0.25},
                           {"type":"t","strategy":1,"x":0.5}]}"#,
            &game,
            "f",
        )
        .unwrap();
        assert_eq!(flow.amounts(), &[vec![0.5, 0.5]]);
        let doc = FlowDocument::from_flow(&game, &flow);
        let declared: Vec<usize> = doc.amounts.iter().map(|e| e.strategy).collect();
        assert_eq!(declared, vec![0, 1]);
        assert_eq!(doc.to_flow(&game, "again").unwrap(), flow);
    }

    #[test]
    fn batch_report_csv_layout() {
        use crate::batch::{batch_social_cost, BatchSystem};
        let game = fixtures::pigou();
        let flow = Flow::from_entries(&game, [("t1", 0, 0.5), ("t1", 1, 0.5)]).unwrap();
        let report = batch_social_cost(&game, &flow, &BatchSystem::from_counts(&game, vec![1, 10]).unwrap()).unwrap();
        let mut buf = Vec::new();
        write_batch_report_csv(&report, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "edge_id,N_e,x_e,c_e,batch_c_e,gap");
        assert_eq!(lines[1], "e1,1,0.5,0.5,0.5,0.0");
        assert!(lines[2].starts_with("e2,10,0.5,0.25,"));
        assert!(lines[3].starts_with("total,,,0.75,"));
        assert_eq!(lines.len(), 4);

        let mut json = Vec::new();
        write_batch_report_json(&report, &mut json).unwrap();
        let value: serde_json::Value = serde_json::from_slice(&json).unwrap();
        assert_eq!(value["per_edge"][1]["batches"], 10);
    }
}
