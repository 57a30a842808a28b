//! JSON documents for spaces, terms, formulas and universe configurations.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formulas::{parse, Formula, FormulaError, ParamEnv};
use crate::ground::{canonicalize, HfLiteral};
use crate::terms::{hat, Term, UniverseConfig};
use crate::topology::{validate_space, FiniteSpace, OpenSet, TopologyError};

use super::pools::pool_seeds;
use super::UniverseSpec;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("{0}")]
    Invalid(String),
}

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T, DocError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| DocError::Io { path: path.display().to_string(), source })?;
    Ok(serde_json::from_str(&text)?)
}

/// `{"points": ["r","s"], "opens": [[],["s"],["r","s"]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
}

impl SpaceDoc {
    pub fn to_space(&self) -> Result<FiniteSpace, DocError> {
        Ok(validate_space(&self.points, &self.opens)?)
    }

    /// Canonical form: sorted labels, each open as a sorted label list, opens in lexicographic order.
    pub fn from_space(space: &FiniteSpace) -> SpaceDoc {
        let mut opens: Vec<Vec<String>> = space.opens().iter().map(|o| space.names(*o)).collect();
        opens.sort();
        SpaceDoc { points: space.labels().to_vec(), opens }
    }
}

/// A term: `{"open": [[t, ["s"]], ...], "point": [[t, "r"], ...]}`, or a
/// ground shorthand `{"hf": <literal>}` / `{"nat": n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TermDoc {
    Hf {
        hf: HfLiteral,
    },
    Nat {
        nat: u64,
    },
    Entries {
        #[serde(default)]
        open: Vec<(TermDoc, Vec<String>)>,
        #[serde(default)]
        point: Vec<(TermDoc, String)>,
    },
}

impl TermDoc {
    pub fn to_term(&self, space: &FiniteSpace) -> Result<Term, DocError> {
        match self {
            TermDoc::Hf { hf } => Ok(hat(space, &canonicalize(hf))),
            TermDoc::Nat { nat } => Ok(hat(space, &crate::ground::HFSet::nat(*nat))),
            TermDoc::Entries { open, point } => {
                let mut opens = Vec::with_capacity(open.len());
                for (t, labels) in open {
                    opens.push((t.to_term(space)?, space.open(labels)?));
                }
                let mut points = Vec::with_capacity(point.len());
                for (t, label) in point {
                    points.push((t.to_term(space)?, space.point(label)?));
                }
                Ok(Term::new(opens, points))
            }
        }
    }

    /// Ground terms use the shorthand; everything else is spelled out.
    pub fn from_term(space: &FiniteSpace, t: &Term) -> TermDoc {
        if let Ok(x) = t.check(space) {
            return match x.as_nat() {
                Some(nat) => TermDoc::Nat { nat },
                None => TermDoc::Hf { hf: x.to_literal() },
            };
        }
        TermDoc::Entries {
            open: t.open_entries().iter().map(|(s, o)| (TermDoc::from_term(space, s), space.names(*o))).collect(),
            point: t.point_entries().iter().map(|(s, p)| (TermDoc::from_term(space, s), space.label(*p).to_string())).collect(),
        }
    }
}

/// `{"text": "...", "params": {"sigma": <term>, ...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormulaDoc {
    pub text: String,
    #[serde(default)]
    pub params: BTreeMap<String, TermDoc>,
}

impl FormulaDoc {
    pub fn env(&self, space: &FiniteSpace) -> Result<ParamEnv, DocError> {
        self.params.iter().map(|(k, v)| Ok((k.clone(), v.to_term(space)?))).collect()
    }

    pub fn to_formula(&self, space: &FiniteSpace) -> Result<(Formula, ParamEnv), DocError> {
        let env = self.env(space)?;
        Ok((parse(&self.text, &env)?, env))
    }
}

/// A universe configuration with optional extra seeds. The pool terms of the
/// space are added as seeds unless `pool_seeds` is false.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniverseDoc {
    #[serde(flatten)]
    pub config: UniverseConfig,
    #[serde(default)]
    pub seeds: Vec<TermDoc>,
    #[serde(default = "yes")]
    pub pool_seeds: bool,
}

fn yes() -> bool {
    true
}

impl Default for UniverseDoc {
    fn default() -> Self {
        UniverseDoc { config: UniverseConfig::default(), seeds: Vec::new(), pool_seeds: true }
    }
}

impl UniverseDoc {
    pub fn to_spec(&self, space: &FiniteSpace) -> Result<UniverseSpec, DocError> {
        let mut seeds = if self.pool_seeds { pool_seeds(space) } else { Vec::new() };
        for s in &self.seeds {
            seeds.push(s.to_term(space)?);
        }
        Ok(UniverseSpec { config: self.config.clone(), seeds })
    }
}

/// Reads an open given as labels: `s`, `r,s`, `{r, s}`, `[]`.
pub fn parse_open(space: &FiniteSpace, text: &str) -> Result<OpenSet, DocError> {
    let inner = text.trim().trim_start_matches(['{', '[']).trim_end_matches(['}', ']']);
    let labels: Vec<&str> = inner.split([',', ' ']).map(|s| s.trim().trim_matches('"')).filter(|s| !s.is_empty()).collect();
    Ok(space.open(&labels)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::HFSet;

    #[test]
    fn space_round_trip_is_canonical() {
        let doc: SpaceDoc = serde_json::from_str(r#"{"points": ["s","r"], "opens": [["r","s"],[],["s"]]}"#).unwrap();
        let space = doc.to_space().unwrap();
        assert_eq!(space, FiniteSpace::sierpinski());
        let out = serde_json::to_string(&SpaceDoc::from_space(&space)).unwrap();
        assert_eq!(out, r#"{"points":["r","s"],"opens":[[],["r","s"],["s"]]}"#);
    }

    #[test]
    fn invalid_space_is_rejected() {
        let doc: SpaceDoc = serde_json::from_str(r#"{"points": ["a","b"], "opens": [[],["a"]]}"#).unwrap();
        assert!(matches!(doc.to_space(), Err(DocError::Topology(TopologyError::MissingFull))));
    }

    #[test]
    fn term_docs() {
        let t = FiniteSpace::sierpinski();
        let doc: TermDoc = serde_json::from_str(r#"{"point": [[{"nat": 0}, "r"]]}"#).unwrap();
        let sigma = doc.to_term(&t).unwrap();
        assert_eq!(sigma, Term::new([], [(Term::empty(), t.point("r").unwrap())]));
        assert_eq!(TermDoc::from_term(&t, &sigma), doc);
        let hf: TermDoc = serde_json::from_str(r#"{"hf": [[], [[]]]}"#).unwrap();
        assert_eq!(hf.to_term(&t).unwrap(), hat(&t, &HFSet::nat(2)));
        let mixed: TermDoc = serde_json::from_str(r#"{"open": [[{"nat": 1}, ["s"]]], "point": [[{"hf": []}, "r"]]}"#).unwrap();
        let m = mixed.to_term(&t).unwrap();
        assert_eq!(TermDoc::from_term(&t, &m).to_term(&t).unwrap(), m);
        let bad: TermDoc = serde_json::from_str(r#"{"point": [[{"nat": 0}, "q"]]}"#).unwrap();
        assert!(bad.to_term(&t).is_err());
    }

    #[test]
    fn formula_doc() {
        let t = FiniteSpace::sierpinski();
        let doc: FormulaDoc = serde_json::from_str(
            r#"{"text": "~(sigma = one) \\/ ~~(sigma = one)", "params": {"sigma": {"point": [[{"nat": 0}, "r"]]}, "one": {"nat": 1}}}"#,
        )
        .unwrap();
        let (f, env) = doc.to_formula(&t).unwrap();
        assert!(f.is_closed());
        assert_eq!(env.len(), 2);
        let unknown: FormulaDoc = serde_json::from_str(r#"{"text": "x = nope"}"#).unwrap();
        assert!(unknown.to_formula(&t).is_err());
    }

    #[test]
    fn universe_doc_defaults() {
        let t = FiniteSpace::sierpinski();
        let doc: UniverseDoc = serde_json::from_str(r#"{"cap": 12}"#).unwrap();
        assert_eq!(doc.config.cap, 12);
        assert_eq!(doc.config.hat_rank, UniverseConfig::default().hat_rank);
        assert!(doc.pool_seeds);
        let spec = doc.to_spec(&t).unwrap();
        assert_eq!(spec.seeds.len(), 3);
        let bare: UniverseDoc = serde_json::from_str(r#"{"pool_seeds": false, "seeds": [{"nat": 3}], "close_under": ["settle"]}"#).unwrap();
        assert_eq!(bare.to_spec(&t).unwrap().seeds.len(), 1);
    }

    #[test]
    fn open_arguments() {
        let t = FiniteSpace::sierpinski();
        assert_eq!(parse_open(&t, "s").unwrap(), t.open(&["s"]).unwrap());
        assert_eq!(parse_open(&t, "{r, s}").unwrap(), t.full());
        assert_eq!(parse_open(&t, "[]").unwrap(), OpenSet::EMPTY);
        assert!(parse_open(&t, "r").is_err());
    }
}
