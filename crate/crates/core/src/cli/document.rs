//! JSON interchange for algebras.
//!
//! ```json
//! {"p": 3, "dim": 3, "name": "heis(1)",
//!  "brackets": [{"i": 0, "j": 1, "v": {"2": 1}}]}
//! ```
//!
//! `[e_i, e_j] = sum_k v[k] e_k` with `i < j`; unlisted pairs bracket to zero.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfp::PrimeField;
use crate::liecore::LieAlgebra;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub p: i64,
    pub dim: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub brackets: Vec<BracketDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketDoc {
    pub i: i64,
    pub j: i64,
    pub v: BTreeMap<String, i64>,
}

fn doc_err(msg: String) -> Error {
    Error::Document(msg)
}

impl AlgebraDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| doc_err(format!("malformed JSON: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    /// Nonzero brackets with `i < j`.
    pub fn from_algebra(l: &LieAlgebra) -> Self {
        let n = l.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v: BTreeMap<String, i64> = l
                    .basis_bracket(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k.to_string(), c.value() as i64))
                    .collect();
                if !v.is_empty() {
                    brackets.push(BracketDoc {
                        i: i as i64,
                        j: j as i64,
                        v,
                    });
                }
            }
        }
        AlgebraDocument {
            p: l.field().modulus() as i64,
            dim: n as i64,
            name: l.name().map(str::to_string),
            brackets,
        }
    }

    /// Checks the document and builds the tensor. The Lie axioms are not
    /// checked here; see [`LieAlgebra::validate`].
    pub fn to_algebra(&self) -> Result<LieAlgebra> {
        let field = u64::try_from(self.p)
            .ok()
            .and_then(|p| PrimeField::new(p).ok())
            .ok_or_else(|| doc_err(format!("p: {} is not an odd prime in [3, 2^31]", self.p)))?;
        if self.dim < 1 {
            return Err(doc_err(format!("dim: {} must be at least 1", self.dim)));
        }
        let dim = self.dim as usize;
        let p = field.modulus() as i64;
        let mut seen = HashSet::new();
        let mut table = Vec::with_capacity(self.brackets.len());
        for (idx, b) in self.brackets.iter().enumerate() {
            let at = format!("brackets[{idx}]");
            for (field_name, v) in [("i", b.i), ("j", b.j)] {
                if v < 0 || v >= self.dim {
                    return Err(doc_err(format!(
                        "{at}.{field_name}: index {v} out of range for dim {dim}"
                    )));
                }
            }
            if b.i == b.j {
                return Err(doc_err(format!(
                    "{at}: i = j = {}; [e_i, e_i] = 0 by antisymmetry, list only pairs with i < j",
                    b.i
                )));
            }
            if b.i > b.j {
                return Err(doc_err(format!(
                    "{at}: i = {} > j = {}; list each pair once with i < j (antisymmetry fills in the rest)",
                    b.i, b.j
                )));
            }
            if !seen.insert((b.i, b.j)) {
                return Err(doc_err(format!("{at}: duplicate pair ({}, {})", b.i, b.j)));
            }
            let mut terms = Vec::with_capacity(b.v.len());
            for (key, &c) in &b.v {
                let k: usize = key
                    .parse()
                    .map_err(|_| doc_err(format!("{at}.v: key {key:?} is not a basis index")))?;
                if k >= dim {
                    return Err(doc_err(format!(
                        "{at}.v: basis index {k} out of range for dim {dim}"
                    )));
                }
                if !(0..p).contains(&c) {
                    return Err(doc_err(format!(
                        "{at}.v[{key:?}]: coefficient {c} outside [0, {p})"
                    )));
                }
                terms.push((k, c));
            }
            table.push((b.i as usize, b.j as usize, terms));
        }
        let l = LieAlgebra::from_brackets_raw(field, dim, &table)?;
        Ok(match &self.name {
            Some(n) => l.with_name(n.clone()),
            None => l,
        })
    }
}
