//! Schema-versioned JSON artifacts and CSV tables.
//!
//! JSON documents are self-describing (a `schema` field plus the game
//! shape) and deterministic: struct field order is fixed and no maps are
//! involved, so identical inputs serialize byte-identically. Probabilities
//! and values appear either as JSON numbers (float mode) or as `"n/d"`
//! fraction strings (exact mode).

use hatgame::{AdequateSet, GameShape, Pattern, Rational, Scalar};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum ArtifactError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: parse error: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error("{path}: field `{field}`: {detail}")]
    Field {
        path: String,
        field: String,
        detail: String,
    },
}

/// A probability or probability-like value in either scalar mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueDoc {
    Float(f64),
    Exact(String),
}

impl ValueDoc {
    pub fn from_rational(value: &Rational) -> Self {
        ValueDoc::Exact(value.to_string())
    }

    pub fn to_rational(&self) -> Option<Rational> {
        match self {
            ValueDoc::Exact(s) => s.parse().ok(),
            ValueDoc::Float(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ValueDoc::Float(f) => *f,
            ValueDoc::Exact(s) => s
                .parse::<Rational>()
                .map(|r| Scalar::to_f64(&r))
                .unwrap_or(f64::NAN),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeDoc {
    pub players: usize,
    pub colors: usize,
}

impl ShapeDoc {
    pub fn of(shape: &GameShape) -> Self {
        ShapeDoc {
            players: shape.players(),
            colors: shape.colors(),
        }
    }

    pub fn to_shape(&self, path: &str) -> Result<GameShape, ArtifactError> {
        GameShape::new(self.players, self.colors).map_err(|e| ArtifactError::Field {
            path: path.to_string(),
            field: "shape".into(),
            detail: e.to_string(),
        })
    }
}

/// One enumerated set, with its probability mass when a distribution was
/// supplied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetRecord {
    pub codes: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<ValueDoc>,
}

/// Output of `enumerate`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetsDoc {
    pub schema: String,
    pub shape: ShapeDoc,
    pub das: usize,
    pub count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probs: Option<Vec<ValueDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weak_only_count: Option<usize>,
    pub sets: Vec<SetRecord>,
}

pub const SETS_SCHEMA: &str = "hatgame/sets@1";
pub const SOLUTION_SCHEMA: &str = "hatgame/solution@1";
pub const MATRIX_SCHEMA: &str = "hatgame/matrix@1";
pub const DOMINANCE_SCHEMA: &str = "hatgame/dominance@1";
pub const MIN_DAS_SCHEMA: &str = "hatgame/min-das@1";
pub const COMPLEXITY_SCHEMA: &str = "hatgame/complexity@1";

impl SetsDoc {
    /// Reconstructs the domain sets, validating codes against the shape.
    pub fn to_sets(&self, path: &str) -> Result<Vec<AdequateSet>, ArtifactError> {
        let shape = self.shape.to_shape(path)?;
        if self.count != self.sets.len() {
            return Err(ArtifactError::Field {
                path: path.to_string(),
                field: "count".into(),
                detail: format!("count {} but {} set records", self.count, self.sets.len()),
            });
        }
        self.sets
            .iter()
            .enumerate()
            .map(|(i, record)| {
                if !record.codes.windows(2).all(|w| w[0] < w[1]) {
                    return Err(ArtifactError::Field {
                        path: path.to_string(),
                        field: format!("sets[{i}].codes"),
                        detail: "codes must be strictly increasing".into(),
                    });
                }
                AdequateSet::new(shape, record.codes.clone()).map_err(|e| ArtifactError::Field {
                    path: path.to_string(),
                    field: format!("sets[{i}].codes"),
                    detail: e.to_string(),
                })
            })
            .collect()
    }
}

/// One optimal strategy inside a solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimalDoc {
    pub codes: Vec<u32>,
    pub phi: ValueDoc,
    pub cells: Vec<Vec<i8>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionDoc {
    pub label: String,
    pub formula_index: usize,
    pub tied: Vec<usize>,
    pub sorted: Vec<ValueDoc>,
    pub permutation: Vec<usize>,
    pub alpha: f64,
}

/// Output of `solve`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionDoc {
    pub schema: String,
    pub shape: ShapeDoc,
    pub mode: String,
    pub probs: Vec<ValueDoc>,
    pub value: ValueDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub region: Option<RegionDoc>,
    pub optimal: Vec<OptimalDoc>,
}

/// Output of `strategy`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub schema: String,
    pub shape: ShapeDoc,
    pub codes: Vec<u32>,
    pub cells: Vec<Vec<i8>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub win_probability: Option<ValueDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternRecord {
    pub index: usize,
    pub coeffs: Vec<u32>,
    pub multiplicity: usize,
    /// Index (into `minimal`) of a certified minimal dominator.
    pub dominator: usize,
}

/// Output of `dominance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominanceDoc {
    pub schema: String,
    pub shape: ShapeDoc,
    pub das: usize,
    pub set_count: usize,
    pub minimal: Vec<Vec<u32>>,
    pub patterns: Vec<PatternRecord>,
}

/// Output of `min-das`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinDasDoc {
    pub schema: String,
    pub shape: ShapeDoc,
    pub das: usize,
    pub witness: Vec<u32>,
    pub uniform_win_probability: ValueDoc,
}

/// Output of `complexity`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexityDoc {
    pub schema: String,
    pub players: u64,
    pub colors: u64,
    pub das: u64,
    pub brute_force: String,
    pub brute_force_scientific: String,
    pub reduced: String,
    pub reduced_scientific: String,
    pub adequate: String,
    pub adequate_scientific: String,
}

pub fn write_json<T: Serialize>(path: &Path, doc: &T) -> Result<(), ArtifactError> {
    let body = serde_json::to_string_pretty(doc).map_err(|source| ArtifactError::Json {
        path: path.display().to_string(),
        source,
    })?;
    std::fs::write(path, body + "\n").map_err(|source| ArtifactError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, ArtifactError> {
    let body = std::fs::read_to_string(path).map_err(|source| ArtifactError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&body).map_err(|source| ArtifactError::Json {
        path: path.display().to_string(),
        source,
    })
}

/// CSV of the pattern census: one row per pattern in slot order, index
/// column last.
pub fn patterns_csv(players: usize, colors: usize, census: &[(Pattern, usize)]) -> String {
    let slots = hatgame::signature_slots(players, colors);
    let mut header: Vec<String> = slots
        .iter()
        .map(|s| s.iter().map(|e| e.to_string()).collect())
        .collect();
    header.push("index".into());
    let mut out = header.join(",");
    out.push('\n');
    for (i, (pattern, _)) in census.iter().enumerate() {
        let mut row: Vec<String> = pattern.coeffs().iter().map(|c| c.to_string()).collect();
        row.push((i + 1).to_string());
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Parses a pattern CSV back into coefficient vectors.
pub fn parse_patterns_csv(path: &str, body: &str) -> Result<Vec<Vec<u32>>, ArtifactError> {
    let mut rows = Vec::new();
    for (lineno, line) in body.lines().enumerate().skip(1) {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() < 2 {
            return Err(ArtifactError::Field {
                path: path.to_string(),
                field: format!("line {}", lineno + 1),
                detail: "expected coefficients plus an index column".into(),
            });
        }
        let coeffs = fields[..fields.len() - 1]
            .iter()
            .map(|f| f.parse::<u32>())
            .collect::<Result<Vec<u32>, _>>()
            .map_err(|e| ArtifactError::Field {
                path: path.to_string(),
                field: format!("line {}", lineno + 1),
                detail: e.to_string(),
            })?;
        rows.push(coeffs);
    }
    Ok(rows)
}

/// 15-significant-digit decimal rendering, trailing zeros trimmed.
pub fn fmt_sig15(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (14 - exponent).clamp(0, 30) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}
