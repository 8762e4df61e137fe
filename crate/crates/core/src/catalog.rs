//! Built-in example algebras and the JSON input format.
//!
//! ```json
//! {"dim": 4,
//!  "brackets": [{"i": 1, "j": 2, "k": 4, "c": "-2"}],
//!  "J": [["0","-1","0","0"], ["1","0","0","0"], ["0","0","0","-1"], ["0","0","1","0"]]}
//! ```
//!
//! Indices are 1-based, only `i < j` is listed and unlisted constants are
//! zero. A complex structure is given either as the real matrix `"J"` or as
//! a basis of `g^{1,0}` in `"J_onezero"` (`n/2` rows of Gaussian scalars),
//! never both. Scalars are strings in the grammar of [`crate::parse_scalar`].

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arith::{parse_scalar, Scalar};
use crate::cstruct::ComplexStructure;
use crate::error::{Error, Result};
use crate::fibration::{Criterion, Verdict};
use crate::lie::{from_delta, Bracket, DeltaTerm, FormType, LieAlgebra};
use crate::linalg::Matrix;

pub const NAMES: [&str; 6] = ["torus2", "torus6", "heisenberg3", "kodaira", "iwasawa", "h7"];

#[derive(Clone, Debug)]
pub struct NamedStructure {
    pub name: String,
    pub provenance: String,
    pub j: ComplexStructure,
}

/// Frozen reference values for one complex structure of an entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedStructure {
    pub name: &'static str,
    /// `h[p][q]`
    pub hodge: Vec<Vec<usize>>,
    pub abelian: bool,
    pub parallelisable: bool,
    pub rational: bool,
    pub verdict: Verdict,
    pub criterion: Option<Criterion>,
    pub froelicher_stable_page: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub betti: Vec<usize>,
    pub center_dim: usize,
    pub nu: usize,
    pub structures: Vec<ExpectedStructure>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub algebra: LieAlgebra,
    /// The first structure is the default one.
    pub structures: Vec<NamedStructure>,
    pub expected: Expected,
}

impl CatalogEntry {
    pub fn structure(&self, name: Option<&str>) -> Result<Option<&NamedStructure>> {
        match name {
            None => Ok(self.structures.first()),
            Some(n) => self
                .structures
                .iter()
                .find(|s| s.name == n)
                .map(Some)
                .ok_or_else(|| Error::UnknownComplexStructure {
                    entry: self.name.clone(),
                    name: n.to_string(),
                }),
        }
    }
}

fn s(x: &str) -> Scalar {
    parse_scalar(x).expect("catalog scalar")
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn torus(n: usize) -> CatalogEntry {
    let m = n / 2;
    let hodge = (0..=m)
        .map(|p| (0..=m).map(|q| binomial(m, p) * binomial(m, q)).collect())
        .collect();
    CatalogEntry {
        name: format!("torus{n}"),
        description: format!("abelian Lie algebra of dimension {n}"),
        algebra: LieAlgebra::abelian(n),
        structures: vec![NamedStructure {
            name: "standard".into(),
            provenance: "rotation e_{2a-1} -> e_{2a} in each coordinate plane".into(),
            j: ComplexStructure::standard(n).expect("even"),
        }],
        expected: Expected {
            betti: (0..=n).map(|k| binomial(n, k)).collect(),
            center_dim: n,
            nu: 1,
            structures: vec![ExpectedStructure {
                name: "standard",
                hodge,
                abelian: true,
                parallelisable: true,
                rational: true,
                verdict: Verdict::Certified,
                criterion: Some(Criterion::AbelianJ),
                froelicher_stable_page: 1,
            }],
        },
    }
}

fn heisenberg3() -> CatalogEntry {
    CatalogEntry {
        name: "heisenberg3".into(),
        description: "three-dimensional Heisenberg algebra [e1,e2] = e3".into(),
        algebra: LieAlgebra::new(3, &[Bracket::new(0, 1, 2, Scalar::one())]).expect("valid"),
        structures: Vec::new(),
        expected: Expected {
            betti: vec![1, 2, 2, 1],
            center_dim: 1,
            nu: 2,
            structures: Vec::new(),
        },
    }
}

fn kodaira() -> CatalogEntry {
    let (algebra, j) = from_delta(
        1,
        1,
        &[DeltaTerm::new(0, FormType::Mixed, 0, 0, Scalar::from_int(-1))],
    )
    .expect("valid delta");
    CatalogEntry {
        name: "kodaira".into(),
        description: "Kodaira-Thurston surface algebra, [e1,e2] = -2 e4".into(),
        algebra,
        structures: vec![NamedStructure {
            name: "standard".into(),
            provenance: "d(w2) = -w1 ^ conj(w1) with w1 = e^1 + i e^2, w2 = e^3 + i e^4".into(),
            j,
        }],
        expected: Expected {
            betti: vec![1, 3, 4, 3, 1],
            center_dim: 2,
            nu: 2,
            structures: vec![ExpectedStructure {
                name: "standard",
                hodge: vec![vec![1, 2, 1], vec![1, 2, 1], vec![1, 2, 1]],
                abelian: true,
                parallelisable: false,
                rational: true,
                verdict: Verdict::Certified,
                criterion: Some(Criterion::AbelianJ),
                froelicher_stable_page: 1,
            }],
        },
    }
}

fn iwasawa() -> CatalogEntry {
    let (algebra, j) = from_delta(
        2,
        1,
        &[DeltaTerm::new(0, FormType::Holomorphic, 0, 1, Scalar::from_int(-1))],
    )
    .expect("valid delta");
    CatalogEntry {
        name: "iwasawa".into(),
        description: "real form of the complex three-dimensional Heisenberg algebra".into(),
        algebra,
        structures: vec![NamedStructure {
            name: "standard".into(),
            provenance: "d(w3) = -w1 ^ w2 with w_a = e^{2a-1} + i e^{2a}".into(),
            j,
        }],
        expected: Expected {
            betti: vec![1, 4, 8, 10, 8, 4, 1],
            center_dim: 2,
            nu: 2,
            structures: vec![ExpectedStructure {
                name: "standard",
                hodge: vec![
                    vec![1, 2, 2, 1],
                    vec![3, 6, 6, 3],
                    vec![3, 6, 6, 3],
                    vec![1, 2, 2, 1],
                ],
                abelian: false,
                parallelisable: true,
                rational: true,
                verdict: Verdict::Certified,
                criterion: Some(Criterion::Parallelisable),
                froelicher_stable_page: 2,
            }],
        },
    }
}

/// Rows `e1 - i e2`, `λi e1 + e3 - i e4`, `λ e4 - e5 + i e6` spanning `g^{1,0}`.
pub fn h7_onezero(lambda: &Scalar) -> Matrix {
    let (zero, one, i) = (Scalar::zero(), Scalar::one(), Scalar::i());
    let rows = vec![
        vec![one.clone(), -&i, zero.clone(), zero.clone(), zero.clone(), zero.clone()],
        vec![lambda * &i, zero.clone(), one.clone(), -&i, zero.clone(), zero.clone()],
        vec![zero.clone(), zero.clone(), zero.clone(), lambda.clone(), -&one, i],
    ];
    Matrix::from_rows(6, rows).expect("six columns")
}

fn h7() -> CatalogEntry {
    let m1 = Scalar::from_int(-1);
    let algebra = LieAlgebra::new(
        6,
        &[
            Bracket::new(0, 1, 3, m1.clone()),
            Bracket::new(0, 2, 4, m1.clone()),
            Bracket::new(1, 2, 5, m1),
        ],
    )
    .expect("valid");
    let structure = |name: &str, lambda: &str| NamedStructure {
        name: name.into(),
        provenance: format!("(1,0)-basis e1 - i e2, l i e1 + e3 - i e4, l e4 - e5 + i e6 with l = {lambda}"),
        j: ComplexStructure::from_onezero_basis(&h7_onezero(&s(lambda))).expect("complex structure"),
    };
    let hodge = vec![
        vec![1, 2, 2, 1],
        vec![1, 4, 5, 2],
        vec![2, 5, 4, 1],
        vec![1, 2, 2, 1],
    ];
    let expected = |name: &'static str, rational: bool| ExpectedStructure {
        name,
        hodge: hodge.clone(),
        abelian: false,
        parallelisable: false,
        rational,
        verdict: if rational { Verdict::Certified } else { Verdict::Unknown },
        criterion: rational.then_some(Criterion::RationalJ),
        froelicher_stable_page: 1,
    };
    CatalogEntry {
        name: "h7".into(),
        description: "[e1,e2] = -e4, [e1,e3] = -e5, [e2,e3] = -e6 with the family J_l".into(),
        algebra,
        structures: vec![
            structure("0", "0"),
            structure("1/2", "1/2"),
            structure("symbolic", "t"),
        ],
        expected: Expected {
            betti: vec![1, 3, 8, 12, 8, 3, 1],
            center_dim: 3,
            nu: 2,
            structures: vec![
                expected("0", true),
                expected("1/2", true),
                expected("symbolic", false),
            ],
        },
    }
}

pub fn get(name: &str) -> Result<CatalogEntry> {
    match name {
        "torus2" => Ok(torus(2)),
        "torus6" => Ok(torus(6)),
        "heisenberg3" => Ok(heisenberg3()),
        "kodaira" => Ok(kodaira()),
        "iwasawa" => Ok(iwasawa()),
        "h7" => Ok(h7()),
        _ => Err(Error::UnknownCatalogEntry(name.to_string())),
    }
}

pub fn all() -> Vec<CatalogEntry> {
    NAMES.iter().map(|n| get(n).expect("listed")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketRecord {
    i: usize,
    j: usize,
    k: usize,
    c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    dim: usize,
    brackets: Vec<BracketRecord>,
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    j: Option<Vec<Vec<String>>>,
    #[serde(rename = "J_onezero", default, skip_serializing_if = "Option::is_none")]
    j_onezero: Option<Vec<Vec<String>>>,
}

/// Result of reading an input file.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub algebra: LieAlgebra,
    pub j: Option<ComplexStructure>,
    pub warnings: Vec<String>,
}

fn parse_matrix(rows: &[Vec<String>], cols: usize, what: &str) -> Result<Matrix> {
    let parsed = rows
        .iter()
        .map(|r| {
            if r.len() != cols {
                return Err(Error::Schema(format!(
                    "every row of {what} needs {cols} entries, got {}",
                    r.len()
                )));
            }
            r.iter().map(|x| parse_scalar(x)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(cols, parsed)
}

/// Parses and validates: Jacobi identity, nilpotency, `J² = -I` and
/// integrability. A non-integrable `J` is an error unless
/// `allow_non_integrable`, in which case it is reported as a warning.
pub fn load_str(text: &str, allow_non_integrable: bool) -> Result<Loaded> {
    let file: AlgebraFile =
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    let n = file.dim;
    let mut brackets = Vec::with_capacity(file.brackets.len());
    for b in &file.brackets {
        if b.i == 0 || b.j == 0 || b.k == 0 || b.i > n || b.j > n || b.k > n {
            return Err(Error::Schema(format!(
                "bracket ({}, {}, {}) outside 1..={n}",
                b.i, b.j, b.k
            )));
        }
        brackets.push(Bracket::new(b.i - 1, b.j - 1, b.k - 1, parse_scalar(&b.c)?));
    }
    let algebra = LieAlgebra::new(n, &brackets)?;
    let report = algebra.validate();
    if let Some((i, j, k)) = report.jacobi_failure {
        return Err(Error::Jacobi {
            i: i + 1,
            j: j + 1,
            k: k + 1,
        });
    }
    if !report.nilpotent {
        return Err(Error::NotNilpotent);
    }
    let j = match (&file.j, &file.j_onezero) {
        (Some(_), Some(_)) => {
            return Err(Error::Schema(
                "give either \"J\" or \"J_onezero\", not both".into(),
            ))
        }
        (Some(rows), None) => {
            if rows.len() != n {
                return Err(Error::Schema(format!("\"J\" needs {n} rows")));
            }
            Some(ComplexStructure::new(parse_matrix(rows, n, "\"J\"")?)?)
        }
        (None, Some(rows)) => {
            if rows.len() * 2 != n {
                return Err(Error::Schema(format!("\"J_onezero\" needs {} rows", n / 2)));
            }
            Some(ComplexStructure::from_onezero_basis(&parse_matrix(
                rows,
                n,
                "\"J_onezero\"",
            )?)?)
        }
        (None, None) => None,
    };
    let mut warnings = Vec::new();
    if let Some(j) = &j {
        if !j.is_integrable(&algebra)? {
            if !allow_non_integrable {
                return Err(Error::NonIntegrable);
            }
            warnings.push("complex structure is not integrable".to_string());
        }
    }
    Ok(Loaded {
        algebra,
        j,
        warnings,
    })
}

pub fn load(path: impl AsRef<Path>, allow_non_integrable: bool) -> Result<Loaded> {
    let text = fs::read_to_string(path)?;
    load_str(&text, allow_non_integrable)
}

/// Canonical JSON: brackets in lexicographic `(i, j, k)` order and `J` as a
/// real matrix.
pub fn to_json(algebra: &LieAlgebra, j: Option<&ComplexStructure>) -> String {
    let file = AlgebraFile {
        dim: algebra.dim(),
        brackets: algebra
            .brackets()
            .into_iter()
            .map(|b| BracketRecord {
                i: b.i + 1,
                j: b.j + 1,
                k: b.k + 1,
                c: b.c.to_string(),
            })
            .collect(),
        j: j.map(|j| {
            j.matrix()
                .row_vectors()
                .map(|r| r.iter().map(Scalar::to_string).collect())
                .collect()
        }),
        j_onezero: None,
    };
    let mut out = serde_json::to_string_pretty(&file).expect("serialisable");
    out.push('\n');
    out
}

pub fn save(
    algebra: &LieAlgebra,
    j: Option<&ComplexStructure>,
    path: impl AsRef<Path>,
) -> Result<()> {
    fs::write(path, to_json(algebra, j))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_validate() {
        for entry in all() {
            let report = entry.algebra.validate();
            assert!(report.jacobi_ok && report.nilpotent, "{}", entry.name);
            for s in &entry.structures {
                assert!(s.j.is_integrable(&entry.algebra).unwrap(), "{} {}", entry.name, s.name);
            }
        }
        assert!(matches!(get("nope"), Err(Error::UnknownCatalogEntry(_))));
    }

    #[test]
    fn h7_brackets() {
        let h7 = get("h7").unwrap();
        let b = h7.algebra.brackets();
        assert_eq!(b.len(), 3);
        assert_eq!(b[0], Bracket::new(0, 1, 3, Scalar::from_int(-1)));
        assert!(h7.structure(Some("symbolic")).unwrap().is_some());
        assert!(h7.structure(Some("2")).is_err());
    }

    #[test]
    fn minimal_file() {
        let loaded = load_str(r#"{"dim":2,"brackets":[]}"#, false).unwrap();
        assert!(loaded.algebra.is_abelian());
        assert!(loaded.j.is_none());
    }

    #[test]
    fn jacobi_failure_names_triple() {
        let text = r#"{"dim":4,"brackets":[{"i":1,"j":2,"k":3,"c":"1"},{"i":3,"j":4,"k":1,"c":"1"}]}"#;
        match load_str(text, false) {
            Err(Error::Jacobi { i, j, k }) => assert_eq!((i, j, k), (1, 2, 4)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn schema_errors() {
        for text in [
            r#"{"dim":2}"#,
            r#"{"dim":2,"brackets":[],"extra":1}"#,
            r#"{"dim":2,"brackets":[{"i":2,"j":1,"k":1,"c":"1"}]}"#,
            r#"{"dim":3,"brackets":[{"i":1,"j":2,"k":3,"c":"1"},{"i":1,"j":2,"k":3,"c":"2"}]}"#,
            r#"{"dim":2,"brackets":[],"J":[["0","-1"],["1","0"]],"J_onezero":[["1","-i"]]}"#,
        ] {
            assert!(load_str(text, false).is_err(), "{text}");
        }
        let bad_j = r#"{"dim":2,"brackets":[],"J":[["1","0"],["0","1"]]}"#;
        assert!(matches!(load_str(bad_j, false), Err(Error::NotComplexStructure(_))));
    }

    #[test]
    fn non_integrable_needs_flag() {
        let text = r#"{"dim":4,"brackets":[{"i":1,"j":3,"k":2,"c":"1"}],
            "J":[["0","-1","0","0"],["1","0","0","0"],["0","0","0","-1"],["0","0","1","0"]]}"#;
        assert!(matches!(load_str(text, false), Err(Error::NonIntegrable)));
        let loaded = load_str(text, true).unwrap();
        assert_eq!(loaded.warnings.len(), 1);
    }

    #[test]
    fn symbolic_onezero_file() {
        let text = r#"{"dim":6,
            "brackets":[{"i":1,"j":2,"k":4,"c":"-1"},{"i":1,"j":3,"k":5,"c":"-1"},{"i":2,"j":3,"k":6,"c":"-1"}],
            "J_onezero":[["1","-i","0","0","0","0"],["t*i","0","1","-i","0","0"],["0","0","0","t","-1","i"]]}"#;
        let loaded = load_str(text, false).unwrap();
        let j = loaded.j.unwrap();
        assert!(!j.is_rational());
        let h7 = get("h7").unwrap();
        assert_eq!(&j, &h7.structure(Some("symbolic")).unwrap().unwrap().j);
    }

    #[test]
    fn save_load_round_trip() {
        for entry in all() {
            let j = entry.structures.first().map(|s| &s.j);
            let text = to_json(&entry.algebra, j);
            let loaded = load_str(&text, false).unwrap();
            assert_eq!(loaded.algebra, entry.algebra);
            assert_eq!(loaded.j.as_ref(), j);
            assert_eq!(to_json(&loaded.algebra, loaded.j.as_ref()), text);
        }
    }
}
