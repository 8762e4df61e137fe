use std::fs;
use std::path::Path;

use nilcoh::{catalog, parse_scalar, ComplexStructure, Error, LieAlgebra, Scalar, Subspace};
use serde::{Deserialize, Serialize};

use crate::args::Input;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Engine(#[from] Error),
    #[error("the input has no complex structure")]
    MissingComplexStructure,
    #[error("bad ideal {text:?}: {message}")]
    BadIdeal { text: String, message: String },
    #[error("cannot read filtration file {path}: {message}")]
    FiltrationFile { path: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Engine(Error::Io(_) | Error::Schema(_) | Error::Parse { .. })
            | CliError::Engine(Error::UnknownCatalogEntry(_) | Error::UnknownComplexStructure { .. })
            | CliError::FiltrationFile { .. } => 66,
            CliError::Engine(Error::Internal(_)) => 70,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Engine(e) => match e {
                Error::DivisionByZero => "division-by-zero",
                Error::Parse { .. } => "parse",
                Error::NonReal(_) => "non-real",
                Error::DimensionMismatch(_) => "dimension-mismatch",
                Error::Jacobi { .. } => "jacobi",
                Error::NotNilpotent => "not-nilpotent",
                Error::NotIdeal => "not-ideal",
                Error::NotSubalgebra => "not-subalgebra",
                Error::NotComplexStructure(_) => "not-complex-structure",
                Error::NonIntegrable => "non-integrable",
                Error::InvalidDelta(_) => "invalid-delta",
                Error::MalformedFiltration(_) => "malformed-filtration",
                Error::IncompatibleFiltration(_) => "incompatible-filtration",
                Error::UnknownCatalogEntry(_) => "unknown-catalog-entry",
                Error::UnknownComplexStructure { .. } => "unknown-complex-structure",
                Error::Schema(_) => "schema",
                Error::Io(_) => "io",
                Error::Internal(_) => "internal",
            },
            CliError::MissingComplexStructure => "missing-complex-structure",
            CliError::BadIdeal { .. } => "bad-ideal",
            CliError::FiltrationFile { .. } => "filtration-file",
        }
    }

    /// The failing Jacobi triple, 1-based.
    pub fn triple(&self) -> Option<[usize; 3]> {
        match self {
            CliError::Engine(Error::Jacobi { i, j, k }) => Some([*i, *j, *k]),
            _ => None,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Debug, Serialize)]
pub struct Source {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub catalog: Option<String>,
    #[serde(rename = "J", skip_serializing_if = "Option::is_none")]
    pub structure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
}

impl Source {
    pub fn label(&self) -> String {
        match (&self.catalog, &self.structure, &self.file) {
            (Some(c), Some(s), _) => format!("{c} (J = {s})"),
            (Some(c), None, _) => c.clone(),
            (None, _, Some(f)) => f.clone(),
            _ => String::new(),
        }
    }
}

pub struct Resolved {
    pub source: Source,
    pub algebra: LieAlgebra,
    pub j: Option<ComplexStructure>,
    pub warnings: Vec<String>,
}

impl Resolved {
    pub fn structure(&self) -> CliResult<&ComplexStructure> {
        self.j.as_ref().ok_or(CliError::MissingComplexStructure)
    }
}

pub fn resolve(input: &Input, allow_non_integrable: bool) -> CliResult<Resolved> {
    match input {
        Input::Catalog { name, structure } => {
            let entry = catalog::get(name)?;
            let named = entry.structure(structure.as_deref())?;
            Ok(Resolved {
                source: Source {
                    catalog: Some(entry.name.clone()),
                    structure: named.map(|s| s.name.clone()),
                    file: None,
                },
                j: named.map(|s| s.j.clone()),
                algebra: entry.algebra,
                warnings: Vec::new(),
            })
        }
        Input::File(path) => {
            let loaded = catalog::load(path, allow_non_integrable)?;
            Ok(Resolved {
                source: Source {
                    catalog: None,
                    structure: None,
                    file: Some(path.display().to_string()),
                },
                algebra: loaded.algebra,
                j: loaded.j,
                warnings: loaded.warnings,
            })
        }
    }
}

fn unit(n: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[k] = Scalar::one();
    v
}

/// `center`, `derived`, `e4,e5,...` (1-based) or `(a,b,...),(c,d,...)`.
pub fn parse_ideal(l: &LieAlgebra, text: &str) -> CliResult<Subspace> {
    let n = l.dim();
    let bad = |message: String| CliError::BadIdeal {
        text: text.to_string(),
        message,
    };
    let trimmed = text.trim();
    match trimmed {
        "center" | "centre" => return Ok(l.center()),
        "derived" => {
            let full = Subspace::full(n);
            return Ok(l.bracket_subspaces(&full, &full)?);
        }
        _ => {}
    }
    let vectors: Vec<Vec<Scalar>> = if trimmed.starts_with('(') {
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| bad("unbalanced parentheses".into()))?;
        inner
            .split("),")
            .map(|v| {
                let v = v.trim().trim_start_matches('(');
                let entries = v
                    .split(',')
                    .map(|x| parse_scalar(x.trim()))
                    .collect::<nilcoh::Result<Vec<_>>>()
                    .map_err(|e| bad(e.to_string()))?;
                if entries.len() != n {
                    return Err(bad(format!("vectors need {n} entries")));
                }
                Ok(entries)
            })
            .collect::<CliResult<_>>()?
    } else {
        trimmed
            .split(',')
            .map(|x| {
                let k: usize = x
                    .trim()
                    .strip_prefix('e')
                    .and_then(|k| k.parse().ok())
                    .ok_or_else(|| bad(format!("expected e1..e{n}, got {x:?}")))?;
                if k == 0 || k > n {
                    return Err(bad(format!("index {k} outside 1..={n}")));
                }
                Ok(unit(n, k - 1))
            })
            .collect::<CliResult<_>>()?
    };
    Ok(Subspace::span(n, vectors)?)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Text(String),
    Int(i64),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FiltrationFile {
    #[serde(default)]
    name: Option<String>,
    /// Ascending steps from `0` to `g`, each given by spanning vectors.
    steps: Vec<Vec<Vec<Entry>>>,
}

/// Reads a named ascending filtration.
pub fn load_filtration(path: &Path, n: usize) -> CliResult<(String, Vec<Subspace>)> {
    let err = |message: String| CliError::FiltrationFile {
        path: path.display().to_string(),
        message,
    };
    let text = fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
    let file: FiltrationFile = serde_json::from_str(&text).map_err(|e| err(e.to_string()))?;
    let mut steps = Vec::with_capacity(file.steps.len());
    for generators in file.steps {
        let vectors = generators
            .into_iter()
            .map(|v| {
                if v.len() != n {
                    return Err(err(format!("vectors need {n} entries")));
                }
                v.into_iter()
                    .map(|x| match x {
                        Entry::Text(s) => parse_scalar(&s).map_err(|e| err(e.to_string())),
                        Entry::Int(k) => Ok(Scalar::from_int(k)),
                    })
                    .collect()
            })
            .collect::<CliResult<Vec<Vec<Scalar>>>>()?;
        steps.push(Subspace::span(n, vectors)?);
    }
    let name = file
        .name
        .unwrap_or_else(|| path.display().to_string());
    Ok((name, steps))
}
