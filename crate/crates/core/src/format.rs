//! TOML object files describing a quadruple.
//!
//! ```toml
//! word = [1, 2, 3, 1, 2, 3, 1, 2, 1]
//! face = [1, 2, 3]
//! # pi = [1, 2]          # optional; derived from the face when omitted
//!
//! [coxeter]
//! preset = "A3"
//! # matrix = [[1, 3], [3, 1]]       # 0 or "inf" for an infinite bond
//! # cartan = [[2, -1], [-1, 2]]     # optional override of the default lift
//! ```
//!
//! Generators and positions are 1-based in files.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::coxeter::{Bond, CoxeterSystem};
use crate::error::{Error, Result};
use crate::subword::Quadruple;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectFile {
    pub word: Vec<usize>,
    pub face: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<Vec<usize>>,
    pub coxeter: CoxeterBlock,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct CoxeterBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<Entry>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cartan: Option<Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Order(u32),
    Named(String),
}

impl Entry {
    fn bond(&self) -> Result<Bond> {
        match self {
            Entry::Order(0) => Ok(Bond::Infinite),
            Entry::Order(m) => Ok(Bond::Finite(*m)),
            Entry::Named(s) if s.eq_ignore_ascii_case("inf") => Ok(Bond::Infinite),
            Entry::Named(s) => Err(Error::Parse(format!("bad matrix entry `{s}`"))),
        }
    }

    fn from_bond(b: Bond) -> Entry {
        match b {
            Bond::Finite(m) => Entry::Order(m),
            Bond::Infinite => Entry::Named("inf".into()),
        }
    }
}

fn to_zero_based(list: &[usize], what: &str) -> Result<Vec<usize>> {
    list.iter()
        .map(|&g| {
            g.checked_sub(1)
                .ok_or_else(|| Error::Parse(format!("{what} entries are 1-based, found 0")))
        })
        .collect()
}

impl ObjectFile {
    pub fn system(&self) -> Result<CoxeterSystem> {
        let block = &self.coxeter;
        match (&block.preset, &block.matrix) {
            (Some(_), Some(_)) => Err(Error::Parse(
                "[coxeter] takes either `preset` or `matrix`, not both".into(),
            )),
            (None, None) => Err(Error::Parse("[coxeter] needs `preset` or `matrix`".into())),
            (Some(name), None) => {
                let sys = CoxeterSystem::preset(name)?;
                match &block.cartan {
                    Some(c) => CoxeterSystem::new(sys.coxeter_matrix().to_vec(), Some(c.clone())),
                    None => Ok(sys),
                }
            }
            (None, Some(m)) => {
                let bonds = m
                    .iter()
                    .map(|row| row.iter().map(Entry::bond).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                CoxeterSystem::new(bonds, block.cartan.clone())
            }
        }
    }

    pub fn to_quadruple(&self) -> Result<Quadruple> {
        let sys = self.system()?;
        let word = to_zero_based(&self.word, "word")?;
        let pi = match &self.pi {
            Some(p) => Some(sys.element(&to_zero_based(p, "pi")?)?),
            None => None,
        };
        Quadruple::new(sys, word, self.face.clone(), pi)
    }

    /// Explicit matrix and Cartan form, so parsing gives back the same system.
    pub fn from_quadruple(x: &Quadruple) -> ObjectFile {
        let sys = x.system();
        ObjectFile {
            word: x.word().iter().map(|g| g + 1).collect(),
            face: x.face().to_vec(),
            pi: Some(x.pi().reduced_word(sys).iter().map(|g| g + 1).collect()),
            coxeter: CoxeterBlock {
                preset: None,
                matrix: Some(
                    sys.coxeter_matrix()
                        .iter()
                        .map(|row| row.iter().map(|&b| Entry::from_bond(b)).collect())
                        .collect(),
                ),
                cartan: Some(sys.cartan().to_vec()),
            },
        }
    }
}

pub fn parse_object_str(text: &str) -> Result<Quadruple> {
    let file: ObjectFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_quadruple()
}

pub fn parse_object_file(path: &Path) -> Result<Quadruple> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_object_str(&text)
}

pub fn emit_object(x: &Quadruple) -> String {
    toml::to_string(&ObjectFile::from_quadruple(x)).expect("object files always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    const A3: &str = "word = [1, 2, 3, 1, 2, 3, 1, 2, 1]\nface = [1, 2, 3]\n[coxeter]\npreset = \"A3\"\n";

    #[test]
    fn parses_a3_standard() {
        let x = parse_object_str(A3).unwrap();
        assert_eq!(x.face(), &[1, 2, 3]);
        assert_eq!(x.word()[0], 0);
    }

    #[test]
    fn rejects_non_facet() {
        let text = A3.replace("face = [1, 2, 3]", "face = [1, 2]");
        assert!(matches!(parse_object_str(&text), Err(Error::NotAFacet(_))));
    }

    #[test]
    fn trivial_object() {
        let x = parse_object_str("word = []\nface = []\n[coxeter]\npreset = \"trivial\"\n").unwrap();
        assert_eq!(x, Quadruple::zero());
    }

    #[test]
    fn round_trip() {
        let x = parse_object_str(A3).unwrap();
        let again = parse_object_str(&emit_object(&x)).unwrap();
        assert_eq!(again, x);
    }

    #[test]
    fn infinite_entries() {
        let text = "word = [1, 2, 1]\nface = [1]\n[coxeter]\nmatrix = [[1, \"inf\"], [0, 1]]\n";
        let x = parse_object_str(text).unwrap();
        assert_eq!(x.system().bond(0, 1), Bond::Infinite);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_object_str("word = ["), Err(Error::Parse(_))));
        assert!(matches!(
            parse_object_str("word = [0]\nface = []\n[coxeter]\npreset = \"A1\"\n"),
            Err(Error::Parse(_))
        ));
    }
}
