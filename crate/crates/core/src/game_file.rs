//! Line-oriented game description format.
//!
//! ```text
//! rules=strict
//! p=1
//! q=2
//! first=avoider
//! boxes=2,2
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Every key is
//! required exactly once; unknown keys are errors.

use std::fmt;

use thiserror::Error;

use crate::engine::{new_game, Bias, EngineError, Position, Rules, Side};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameDescription {
    pub rules: Rules,
    pub bias: Bias,
    pub first: Side,
    pub sizes: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameFileError {
    #[error("line {line}: expected `key=value`, got `{text}`")]
    Malformed { line: usize, text: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: key `{key}` given twice")]
    DuplicateKey { line: usize, key: String },
    #[error("missing key `{0}`")]
    MissingKey(&'static str),
    #[error("line {line}: bad value for `{key}`: {reason}")]
    BadValue {
        line: usize,
        key: String,
        reason: String,
    },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

impl GameDescription {
    pub fn parse(text: &str) -> Result<GameDescription, GameFileError> {
        let mut rules = None;
        let mut p = None;
        let mut q = None;
        let mut first = None;
        let mut sizes = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (key, value) = trimmed.split_once('=').ok_or_else(|| GameFileError::Malformed {
                line,
                text: trimmed.to_string(),
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |reason: String| GameFileError::BadValue {
                line,
                key: key.to_string(),
                reason,
            };
            let dup = || GameFileError::DuplicateKey {
                line,
                key: key.to_string(),
            };
            match key {
                "rules" => {
                    let r = value.parse::<Rules>().map_err(bad)?;
                    if rules.replace(r).is_some() {
                        return Err(dup());
                    }
                }
                "p" | "q" => {
                    let v = value
                        .parse::<u32>()
                        .map_err(|e| bad(e.to_string()))?;
                    let slot = if key == "p" { &mut p } else { &mut q };
                    if slot.replace(v).is_some() {
                        return Err(dup());
                    }
                }
                "first" => {
                    let side = match value {
                        "avoider" => Side::Avoider,
                        "enforcer" => Side::Enforcer,
                        other => return Err(bad(format!("unknown player `{other}`"))),
                    };
                    if first.replace(side).is_some() {
                        return Err(dup());
                    }
                }
                "boxes" => {
                    let parsed = parse_sizes(value).map_err(bad)?;
                    if sizes.replace(parsed).is_some() {
                        return Err(dup());
                    }
                }
                other => {
                    return Err(GameFileError::UnknownKey {
                        line,
                        key: other.to_string(),
                    })
                }
            }
        }
        let bias = Bias::new(
            p.ok_or(GameFileError::MissingKey("p"))?,
            q.ok_or(GameFileError::MissingKey("q"))?,
        )?;
        Ok(GameDescription {
            rules: rules.ok_or(GameFileError::MissingKey("rules"))?,
            bias,
            first: first.ok_or(GameFileError::MissingKey("first"))?,
            sizes: sizes.ok_or(GameFileError::MissingKey("boxes"))?,
        })
    }

    pub fn to_position(&self) -> Result<Position, EngineError> {
        new_game(&self.sizes, self.bias, self.rules, self.first)
    }
}

/// Accepts `2,2,3` and the `size x count` shorthand `4x15`.
fn parse_sizes(value: &str) -> Result<Vec<u32>, String> {
    let mut out = Vec::new();
    for part in value.split(',') {
        let part = part.trim();
        if let Some((size, count)) = part.split_once('x') {
            let size: u32 = size.trim().parse().map_err(|e| format!("`{part}`: {e}"))?;
            let count: usize = count.trim().parse().map_err(|e| format!("`{part}`: {e}"))?;
            out.extend(std::iter::repeat_n(size, count));
        } else {
            out.push(part.parse().map_err(|e| format!("`{part}`: {e}"))?);
        }
    }
    Ok(out)
}

impl fmt::Display for GameDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let first = match self.first {
            Side::Avoider => "avoider",
            Side::Enforcer => "enforcer",
        };
        let sizes: Vec<String> = self.sizes.iter().map(u32::to_string).collect();
        writeln!(f, "rules={}", self.rules)?;
        writeln!(f, "p={}", self.bias.p())?;
        writeln!(f, "q={}", self.bias.q())?;
        writeln!(f, "first={first}")?;
        writeln!(f, "boxes={}", sizes.join(","))
    }
}
