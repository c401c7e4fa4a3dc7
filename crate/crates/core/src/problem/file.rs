use thiserror::Error;

use super::ProblemFamily;
use crate::exprparse::{parse, Expr, ParseError};
use crate::number::parse_real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProblemFileError {
    #[error("line {line}: expected `key = value`")]
    MalformedLine { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: key `{key}` given twice")]
    DuplicateKey { line: usize, key: String },
    #[error("missing required key `{0}`")]
    MissingKey(&'static str),
    #[error("line {line}: invalid number for `{key}`: `{value}`")]
    InvalidNumber { line: usize, key: String, value: String },
    #[error("line {line}: in `{key}`: {source}")]
    Expression {
        line: usize,
        key: String,
        source: ParseError,
    },
}

const KEYS: [&str; 8] = ["eps", "a", "b", "ya", "yb", "p", "f", "exact"];

pub(super) fn parse_problem_file(name: &str, text: &str) -> Result<ProblemFamily, ProblemFileError> {
    let mut seen: Vec<(&str, usize, String)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or(ProblemFileError::MalformedLine { line })?;
        let key = key.trim();
        let value = value.trim();
        let known = KEYS
            .iter()
            .find(|k| **k == key)
            .ok_or_else(|| ProblemFileError::UnknownKey {
                line,
                key: key.to_string(),
            })?;
        if seen.iter().any(|(k, _, _)| k == known) {
            return Err(ProblemFileError::DuplicateKey {
                line,
                key: key.to_string(),
            });
        }
        if value.is_empty() {
            return Err(ProblemFileError::MalformedLine { line });
        }
        seen.push((known, line, value.to_string()));
    }

    let lookup = |key: &str| seen.iter().find(|(k, _, _)| *k == key);
    let real = |key: &str| -> Result<Option<f64>, ProblemFileError> {
        match lookup(key) {
            None => Ok(None),
            Some((_, line, value)) => parse_real(value)
                .map(Some)
                .map_err(|_| ProblemFileError::InvalidNumber {
                    line: *line,
                    key: key.to_string(),
                    value: value.clone(),
                }),
        }
    };
    let expr = |key: &'static str| -> Result<Option<Expr>, ProblemFileError> {
        match lookup(key) {
            None => Ok(None),
            Some((_, line, value)) => parse(value).map(Some).map_err(|source| ProblemFileError::Expression {
                line: *line,
                key: key.to_string(),
                source,
            }),
        }
    };

    let p = expr("p")?.ok_or(ProblemFileError::MissingKey("p"))?;
    let f = expr("f")?.ok_or(ProblemFileError::MissingKey("f"))?;
    Ok(ProblemFamily {
        name: name.to_string(),
        p,
        f,
        exact: expr("exact")?,
        a: real("a")?.unwrap_or(0.0),
        b: real("b")?.unwrap_or(1.0),
        ya: real("ya")?.unwrap_or(0.0),
        yb: real("yb")?.unwrap_or(0.0),
        default_eps: real("eps")?,
    })
}
