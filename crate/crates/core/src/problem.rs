//! JSON problem files.
//!
//! ```json
//! {
//!   "field": "rational",
//!   "variables": [{"name": "x", "weight": ["4"]}, ...],
//!   "equations": [{"expr": "y^2 - x^3 - u", "kind": "Fi", "trailing_var": "u"}, ...],
//!   "base_indices": [0, 1],
//!   "queries": {"elements": ["y^2 - x^3"], "up_to": "16"}
//! }
//! ```
//!
//! A file may give `"branch"` instead of variables and equations. A field
//! may also be `{"prime": p}`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::approximation::BranchData;
use crate::deformation::{DeformationSystem, DeformedEquation, EquationKind};
use crate::error::{Error, Result};
use crate::parser::parse_poly;
use crate::poly::Polynomial;
use crate::ring::{Field, Variable, WeightedRing};
use crate::value::{parse_rational, Value};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub field: Field,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub variables: Vec<VariableSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub equations: Vec<EquationSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub base_indices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<BranchSpec>,
    #[serde(default, skip_serializing_if = "Queries::is_empty")]
    pub queries: Queries,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableSpec {
    pub name: String,
    pub weight: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KindSpec {
    Fi,
    Fq,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquationSpec {
    pub expr: String,
    pub kind: KindSpec,
    /// For `Fi`: the trailing variable, or absent when it lies outside the ring.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trailing_var: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchSpec {
    pub gammas: Vec<String>,
    pub n: Vec<u32>,
    pub digits: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tails: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Queries {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub up_to: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<u32>,
}

impl Queries {
    pub fn is_empty(&self) -> bool {
        *self == Queries::default()
    }
}

/// A loaded problem. The system is not yet certified.
#[derive(Clone, Debug)]
pub struct Problem {
    pub file: ProblemFile,
    pub system: DeformationSystem,
    pub base: Vec<usize>,
    pub branch: Option<BranchData>,
    pub elements: Vec<Polynomial>,
    pub up_to: Option<Value>,
}

impl Problem {
    pub fn ring(&self) -> &std::sync::Arc<WeightedRing> {
        self.system.ring()
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars
        .next()
        .is_some_and(|c| c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::Load {
            path: if path == "." { "$".into() } else { path },
            msg: e.into_inner().to_string(),
        }
    })
}

pub fn load_str(text: &str) -> Result<Problem> {
    build(parse_problem(text)?)
}

pub fn load_path(path: impl AsRef<Path>) -> Result<Problem> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Load {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    load_str(&text)
}

fn branch_data(field: &Field, spec: &BranchSpec) -> Result<BranchData> {
    let gammas = spec
        .gammas
        .iter()
        .enumerate()
        .map(|(i, g)| parse_rational(g).map_err(|e| e.at(format!("branch.gammas[{i}]"))))
        .collect::<Result<Vec<_>>>()?;
    let data = BranchData {
        field: field.clone(),
        gammas,
        n: spec.n.clone(),
        digits: spec.digits.clone(),
        tails: spec.tails.clone(),
    };
    data.validate().map_err(|e| e.at("branch"))?;
    Ok(data)
}

/// Validates a parsed file and builds its system.
pub fn build(file: ProblemFile) -> Result<Problem> {
    if let Field::Prime(p) = file.field {
        if !is_prime(p) {
            return Err(Error::Load {
                path: "field.prime".into(),
                msg: format!("{p} is not prime"),
            });
        }
    }
    let (system, branch) = match &file.branch {
        Some(spec) => {
            if !file.variables.is_empty() || !file.equations.is_empty() {
                return Err(Error::Load {
                    path: "branch".into(),
                    msg: "a branch file generates its own variables and equations".into(),
                });
            }
            let data = branch_data(&file.field, spec)?;
            let system = data.system().map_err(|e| e.at("branch"))?;
            (system, Some(data))
        }
        None => (build_system(&file)?, None),
    };
    let ring = system.ring().clone();
    for (k, &i) in file.base_indices.iter().enumerate() {
        if i >= ring.nvars() {
            return Err(Error::Load {
                path: format!("base_indices[{k}]"),
                msg: format!("index {i} out of range for {} variables", ring.nvars()),
            });
        }
    }
    let base = if !file.base_indices.is_empty() {
        let mut b = file.base_indices.clone();
        b.sort_unstable();
        b.dedup();
        b
    } else if branch.is_some() {
        vec![0, 1]
    } else {
        (0..ring.nvars()).collect()
    };
    let elements = file
        .queries
        .elements
        .iter()
        .enumerate()
        .map(|(k, e)| parse_poly(e, &ring).map_err(|err| err.at(format!("queries.elements[{k}]"))))
        .collect::<Result<Vec<_>>>()?;
    let up_to = file
        .queries
        .up_to
        .as_ref()
        .map(|s| {
            let parts: Vec<&str> = s.split(',').map(str::trim).collect();
            let v = Value::parse_coords(&parts).map_err(|e| e.at("queries.up_to"))?;
            if v.rank() != ring.rank() {
                return Err(Error::RankMismatch {
                    left: ring.rank(),
                    right: v.rank(),
                }
                .at("queries.up_to"));
            }
            Ok(v)
        })
        .transpose()?;
    Ok(Problem {
        file,
        system,
        base,
        branch,
        elements,
        up_to,
    })
}

fn build_system(file: &ProblemFile) -> Result<DeformationSystem> {
    if file.variables.is_empty() {
        return Err(Error::EmptyRing.at("variables"));
    }
    let mut vars = Vec::with_capacity(file.variables.len());
    for (i, v) in file.variables.iter().enumerate() {
        if !is_identifier(&v.name) {
            return Err(Error::Load {
                path: format!("variables[{i}].name"),
                msg: format!("{:?} is not an identifier", v.name),
            });
        }
        let coords = v
            .weight
            .iter()
            .enumerate()
            .map(|(j, w)| parse_rational(w).map_err(|e| e.at(format!("variables[{i}].weight[{j}]"))))
            .collect::<Result<Vec<_>>>()?;
        let weight = Value::new(coords).map_err(|e| e.at(format!("variables[{i}].weight")))?;
        if !weight.is_positive() {
            return Err(Error::NonPositiveWeight {
                name: v.name.clone(),
                weight: weight.to_string(),
            }
            .at(format!("variables[{i}].weight")));
        }
        if let Some(first) = vars.first().map(|v: &Variable| v.weight.rank()) {
            if first != weight.rank() {
                return Err(Error::RankMismatch {
                    left: first,
                    right: weight.rank(),
                }
                .at(format!("variables[{i}].weight")));
            }
        }
        if let Some(k) = vars.iter().position(|w: &Variable| w.name == v.name) {
            return Err(Error::DuplicateVariable(v.name.clone()).at(format!("variables[{i}].name (also variables[{k}])")));
        }
        vars.push(Variable {
            name: v.name.clone(),
            weight,
        });
    }
    let ring = WeightedRing::new(file.field.clone(), vars).map_err(|e| e.at("variables"))?;
    let mut eqs = Vec::with_capacity(file.equations.len());
    for (i, e) in file.equations.iter().enumerate() {
        let poly = parse_poly(&e.expr, &ring).map_err(|err| err.at(format!("equations[{i}].expr")))?;
        let kind = match (e.kind, &e.trailing_var) {
            (KindSpec::Fq, None) => EquationKind::Fq,
            (KindSpec::Fq, Some(_)) => {
                return Err(Error::Load {
                    path: format!("equations[{i}].trailing_var"),
                    msg: "only Fi equations have a trailing variable".into(),
                })
            }
            (KindSpec::Fi, None) => EquationKind::Fi { trailing: None },
            (KindSpec::Fi, Some(t)) => EquationKind::Fi {
                trailing: Some(
                    ring.var_index(t)
                        .map_err(|err| err.at(format!("equations[{i}].trailing_var")))?,
                ),
            },
        };
        eqs.push(DeformedEquation::new(poly, kind).map_err(|err| err.at(format!("equations[{i}]")))?);
    }
    DeformationSystem::new(&ring, eqs).map_err(|e| e.at("equations"))
}

/// A problem file describing `system`.
pub fn dump(system: &DeformationSystem, base: &[usize]) -> ProblemFile {
    let ring = system.ring();
    ProblemFile {
        field: ring.field().clone(),
        variables: ring
            .variables()
            .iter()
            .map(|v| VariableSpec {
                name: v.name.clone(),
                weight: v.weight.to_strings(),
            })
            .collect(),
        equations: system
            .equations()
            .iter()
            .map(|e| EquationSpec {
                expr: e.poly().to_string(),
                kind: match e.kind() {
                    EquationKind::Fq => KindSpec::Fq,
                    EquationKind::Fi { .. } => KindSpec::Fi,
                },
                trailing_var: e.trailing().map(|t| ring.name(t).to_string()),
            })
            .collect(),
        base_indices: base.to_vec(),
        branch: None,
        queries: Queries::default(),
    }
}

/// A problem file describing a branch.
pub fn dump_branch(data: &BranchData) -> ProblemFile {
    ProblemFile {
        field: data.field.clone(),
        variables: Vec::new(),
        equations: Vec::new(),
        base_indices: Vec::new(),
        branch: Some(BranchSpec {
            gammas: data.gammas.iter().map(ToString::to_string).collect(),
            n: data.n.clone(),
            digits: data.digits.clone(),
            tails: data.tails.clone(),
        }),
        queries: Queries::default(),
    }
}

/// Pretty JSON with sorted keys.
pub fn to_json(file: &ProblemFile) -> String {
    let value = serde_json::to_value(file).expect("problem files serialize");
    serde_json::to_string_pretty(&value).expect("json values serialize")
}

/// The cusp family `y^2 = x^3 + u`, `u^2 = x^(s-1) y` with weights
/// `4, 6, 2s + 1`.
pub fn cusp_family(s: u32) -> Result<ProblemFile> {
    if s < 6 {
        return Err(Error::Equation(format!("the cusp family needs s >= 6, got {s}")));
    }
    let var = |name: &str, w: u32| VariableSpec {
        name: name.into(),
        weight: vec![w.to_string()],
    };
    Ok(ProblemFile {
        field: Field::Rational,
        variables: vec![var("x", 4), var("y", 6), var("u", 2 * s + 1)],
        equations: vec![
            EquationSpec {
                expr: "y^2 - x^3 - u".into(),
                kind: KindSpec::Fi,
                trailing_var: Some("u".into()),
            },
            EquationSpec {
                expr: format!("u^2 - x^{}*y", s - 1),
                kind: KindSpec::Fq,
                trailing_var: None,
            },
        ],
        base_indices: vec![0, 1, 2],
        branch: None,
        queries: Queries::default(),
    })
}
