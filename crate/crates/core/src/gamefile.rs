//! JSON game files.
//!
//! ```json
//! {"players": 2,
//!  "actions": [["c","d"],["c","d"]],
//!  "utilities": [[3,3],[0,4],[4,0],[1,1]]}
//! ```
//!
//! Utilities are listed row-major over action indices with the last player's
//! index varying fastest. Numbers are JSON integers or `"p/q"` strings.

use crate::game::{Game, GameError};
use crate::rational::{parse_rational, Rational};
use num_traits::ToPrimitive;
use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;
use serde_json::{json, Value};
use std::fmt;

#[derive(Debug, thiserror::Error)]
pub enum GameFileError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("\"players\" is {declared} but {found} action lists are given")]
    PlayerCount { declared: usize, found: usize },
    #[error(transparent)]
    Game(#[from] GameError),
}

impl From<serde_json::Error> for GameFileError {
    fn from(e: serde_json::Error) -> Self {
        GameFileError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

/// A rational read from either a JSON integer or a `"p/q"` string.
#[derive(Debug, Clone)]
pub(crate) struct FileRational(pub Rational);

impl<'de> Deserialize<'de> for FileRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = FileRational;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a \"p/q\" string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<FileRational, E> {
                Ok(FileRational(crate::rational::int(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<FileRational, E> {
                Ok(FileRational(Rational::from_integer(v.into())))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<FileRational, E> {
                parse_rational(v).map(FileRational).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGame {
    players: usize,
    actions: Vec<Vec<String>>,
    utilities: Vec<Vec<FileRational>>,
}

pub fn load_game(text: &str) -> Result<Game, GameFileError> {
    let raw: RawGame = serde_json::from_str(text)?;
    if raw.players != raw.actions.len() {
        return Err(GameFileError::PlayerCount {
            declared: raw.players,
            found: raw.actions.len(),
        });
    }
    let utilities = raw
        .utilities
        .into_iter()
        .map(|row| row.into_iter().map(|r| r.0).collect())
        .collect();
    Ok(Game::new(raw.actions, utilities)?)
}

/// Integers become JSON numbers when they fit in an `i64`; everything else is a string.
pub(crate) fn rational_to_file(r: &Rational) -> Value {
    if r.is_integer() {
        if let Some(v) = r.to_integer().to_i64() {
            return json!(v);
        }
    }
    Value::String(r.to_string())
}

pub fn game_to_json(g: &Game) -> Value {
    let actions: Vec<&[String]> = (0..g.players()).map(|i| g.labels(i)).collect();
    let utilities: Vec<Value> = g
        .profiles()
        .iter()
        .map(|p| {
            Value::Array(
                (0..g.players())
                    .map(|i| rational_to_file(g.payoff(p, i)))
                    .collect(),
            )
        })
        .collect();
    json!({"players": g.players(), "actions": actions, "utilities": utilities})
}

/// Serializes with one profile per line so files diff cleanly.
pub fn save_game(g: &Game) -> String {
    let v = game_to_json(g);
    let mut out = String::from("{\n");
    out += &format!("  \"players\": {},\n", v["players"]);
    out += &format!("  \"actions\": {},\n", v["actions"]);
    out += "  \"utilities\": [\n";
    let rows = v["utilities"].as_array().unwrap();
    for (k, row) in rows.iter().enumerate() {
        out += "    ";
        out += &row.to_string();
        if k + 1 < rows.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out += "  ]\n}\n";
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    const PD: &str = r#"{"players": 2, "actions": [["c","d"],["c","d"]],
        "utilities": [[3,3],[0,4],[4,0],[1,1]]}"#;

    #[test]
    fn loads_a_prisoners_dilemma() {
        let g = load_game(PD).unwrap();
        assert_eq!(g.num_profiles(), 4);
        assert_eq!(g.utility_by_label(&["d", "c"]).unwrap(), vec![int(4), int(0)]);
    }

    #[test]
    fn keeps_fractions_exact() {
        let g = load_game(r#"{"players":1,"actions":[["x"]],"utilities":[["101/2"]]}"#).unwrap();
        assert_eq!(g.utility(&[0]).unwrap(), vec![ratio(101, 2)]);
    }

    #[test]
    fn names_the_missing_profile() {
        let text = r#"{"players": 2, "actions": [["c","d"],["d","c"]],
            "utilities": [[0,4],[3,3],[1,1]]}"#;
        match load_game(text) {
            Err(GameFileError::Game(GameError::MissingProfile { profile })) => {
                assert_eq!(profile, vec!["d".to_string(), "c".to_string()])
            }
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn reports_position_of_bad_rationals_and_unknown_keys() {
        let bad = "{\"players\":1,\n\"actions\":[[\"x\"]],\n\"utilities\":[[\"1/0\"]]}";
        match load_game(bad) {
            Err(GameFileError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{:?}", other),
        }
        let extra = r#"{"players":1,"actions":[["x"]],"utilities":[[1]],"comment":"no"}"#;
        assert!(matches!(load_game(extra), Err(GameFileError::Parse { .. })));
    }

    #[test]
    fn rejects_duplicate_labels() {
        let text = r#"{"players":1,"actions":[["x","x"]],"utilities":[[1],[2]]}"#;
        assert!(matches!(
            load_game(text),
            Err(GameFileError::Game(GameError::DuplicateLabel { .. }))
        ));
    }

    #[test]
    fn save_then_load_is_identity() {
        let g = load_game(PD).unwrap().affine_transform(1, &ratio(1, 3), &int(-7));
        assert_eq!(load_game(&save_game(&g)).unwrap(), g);
    }
}
