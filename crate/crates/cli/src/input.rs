//! Reading spaces, maps and command inputs from JSON files.

use std::fmt;
use std::path::Path;

use protoexact::instances::PointedMap;
use protoexact::scalars::{Elem, ValuedField};
use protoexact::weighted::{map_from_text, BoundedMap, WeightedError, WeightedSpace};
use serde::de::DeserializeOwned;
use serde::Deserialize;

/// Failures that end the run, with their exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Malformed input: unreadable file, bad JSON, wrong shapes or entries.
    Parse(String),
    /// Well-formed input whose values break an invariant of the library.
    Invariant(String),
    /// A fuel or enumeration budget ran out.
    Limit(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Invariant(_) => 2,
            CliError::Limit(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Invariant(m) => write!(f, "invariant violation: {m}"),
            CliError::Limit(m) => write!(f, "limit reached: {m}"),
        }
    }
}

/// Reads `path` as `T`, reporting the JSON path of the offending field and
/// the line and column where parsing stopped.
pub fn read<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    parse_text(&text).map_err(|m| CliError::Parse(format!("{}: {m}", path.display())))
}

pub fn parse_text<T: DeserializeOwned>(text: &str) -> Result<T, String> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        if field == "." {
            inner.to_string()
        } else {
            format!("field `{field}`: {inner}")
        }
    })
}

/// A matrix or vector entry: a JSON integer or a string such as `"-3/4"`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    fn text(&self) -> String {
        match self {
            Entry::Int(n) => n.to_string(),
            Entry::Text(t) => t.clone(),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMap {
    pub domain: WeightedSpace,
    pub codomain: WeightedSpace,
    pub matrix: Vec<Vec<Entry>>,
}

/// Validates a raw map found at JSON field `prefix` (empty for a whole
/// file). Shape and entry problems are parse errors naming the field; a null
/// basis vector with a live image is an invariant violation.
pub fn build_map(raw: RawMap, prefix: &str) -> Result<BoundedMap, CliError> {
    let rows: Vec<Vec<String>> = raw
        .matrix
        .iter()
        .map(|r| r.iter().map(Entry::text).collect())
        .collect();
    map_from_text(raw.domain, raw.codomain, &rows).map_err(|e| match e {
        WeightedError::Unbounded { index } => CliError::Invariant(format!(
            "field `{prefix}matrix`: basis vector {index} of the domain has weight 0 but a non-null image"
        )),
        WeightedError::FieldMismatch => CliError::Invariant(format!(
            "fields `{prefix}domain` and `{prefix}codomain` live over different fields"
        )),
        WeightedError::Shape { what, expected, found } => {
            let (name, unit) = what.split_once(' ').unwrap_or((&what, "entries"));
            CliError::Parse(format!("field `{prefix}{name}`: expected {expected} {unit}, found {found}"))
        }
        other => CliError::Parse(format!("field `{prefix}matrix`: {other}")),
    })
}

pub fn parse_vector(
    field: ValuedField,
    space: &WeightedSpace,
    v: &[Entry],
    name: &str,
) -> Result<Vec<Elem>, CliError> {
    if v.len() != space.dim() {
        return Err(CliError::Parse(format!(
            "field `{name}`: expected {} entries, found {}",
            space.dim(),
            v.len()
        )));
    }
    v.iter()
        .enumerate()
        .map(|(i, x)| {
            field
                .parse_elem(&x.text())
                .map_err(|e| CliError::Parse(format!("field `{name}[{i}]`: {e}")))
        })
        .collect()
}

/// A morphism file: weighted maps carry a `matrix`, pointed maps a `map`.
#[derive(Clone, Debug)]
pub enum AnyMap {
    Weighted(BoundedMap),
    Pointed(PointedMap),
}

pub fn read_map(path: &Path) -> Result<AnyMap, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let pointed = value.get("map").is_some() && value.get("matrix").is_none();
    let located = |m: String| CliError::Parse(format!("{}: {m}", path.display()));
    if pointed {
        let f: PointedMap = parse_text(&text).map_err(located)?;
        return Ok(AnyMap::Pointed(f));
    }
    let raw: RawMap = parse_text(&text).map_err(located)?;
    build_map(raw, "")
        .map(AnyMap::Weighted)
        .map_err(|e| in_file(path, e))
}

pub fn read_weighted_map(path: &Path) -> Result<BoundedMap, CliError> {
    match read_map(path)? {
        AnyMap::Weighted(f) => Ok(f),
        AnyMap::Pointed(_) => Err(CliError::Parse(format!(
            "{}: expected a weighted map",
            path.display()
        ))),
    }
}

/// An object file: a weighted space, or a JSON integer `n` for `{0, 1, …, n}`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum AnyObject {
    Pointed(usize),
    Weighted(WeightedSpace),
}

/// Prefixes the message with the file it came from.
pub fn in_file(path: &Path, e: CliError) -> CliError {
    let at = |m: String| format!("{}: {m}", path.display());
    match e {
        CliError::Parse(m) => CliError::Parse(at(m)),
        CliError::Invariant(m) => CliError::Invariant(at(m)),
        CliError::Limit(m) => CliError::Limit(m),
    }
}
