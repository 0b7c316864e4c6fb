//! Model-spec files (YAML).
//!
//! ```yaml
//! name: semion            # optional
//! group: [2]              # invariant factors
//! q:                      # every element listed once
//!   - {elem: [0], value: "0"}
//!   - {elem: [1], value: "1/4"}
//! cocycle:                # optional; unlisted triples are 0
//!   - {args: [[1], [1], [1]], value: "0"}
//! ```
//!
//! or one of
//!
//! ```yaml
//! builtin: {kind: cyclic, N: 4, p: 1}     # q(x) = p·x²/(2N)
//! builtin: {kind: named, name: toric}
//! ```
//!
//! Values are `Q/Z` rationals written `"p/q"` or as integers.

use std::collections::HashMap;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::model::{AbelianAnyonModel, CocycleData, QuadraticForm};
use crate::phase::RationalPhase;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    name: Option<String>,
    group: Option<Vec<u32>>,
    q: Option<Vec<RawEntry>>,
    builtin: Option<RawBuiltin>,
    cocycle: Option<Vec<RawCocycleEntry>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    elem: Vec<i64>,
    value: RationalPhase,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCocycleEntry {
    args: [Vec<i64>; 3],
    value: RationalPhase,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawBuiltin {
    Cyclic {
        #[serde(rename = "N")]
        n: u32,
        p: i64,
    },
    Named {
        name: String,
    },
}

/// Parsed but not yet validated model description.
#[derive(Clone, Debug)]
pub enum ModelSource {
    Table { name: Option<String>, spec: GroupSpec, q: QuadraticForm, cocycle: Option<CocycleData> },
    Cyclic { name: Option<String>, n: u32, p: i64 },
    Named(String),
}

fn coords_in_range(spec: &GroupSpec, coords: &[i64], what: &str) -> Result<GroupElement> {
    if coords.len() != spec.num_factors() {
        return Err(Error::InvalidArgument(format!(
            "{what}: expected {} coordinate(s), got {}",
            spec.num_factors(),
            coords.len()
        )));
    }
    for (&c, &m) in coords.iter().zip(spec.factors()) {
        if c < 0 || c >= m as i64 {
            return Err(Error::InvalidArgument(format!("{what}: coordinate {c} out of range 0..{m}")));
        }
    }
    spec.element(coords)
}

pub fn parse_model_source(text: &str) -> Result<ModelSource> {
    let raw: RawModel = serde_yaml::from_str(text).map_err(|e| Error::Parse {
        line: e.location().map(|l| l.line()).unwrap_or(0),
        message: e.to_string(),
    })?;
    match (raw.builtin, raw.group) {
        (Some(_), Some(_)) => Err(Error::InvalidArgument("`builtin` and `group` are mutually exclusive".into())),
        (Some(b), None) => {
            if raw.q.is_some() || raw.cocycle.is_some() {
                return Err(Error::InvalidArgument("`q` and `cocycle` require `group`".into()));
            }
            Ok(match b {
                RawBuiltin::Cyclic { n, p } => ModelSource::Cyclic { name: raw.name, n, p },
                RawBuiltin::Named { name } => ModelSource::Named(name),
            })
        }
        (None, None) => Err(Error::InvalidArgument("model file needs `group` or `builtin`".into())),
        (None, Some(factors)) => {
            let spec = GroupSpec::new(factors)?;
            let entries = raw.q.ok_or_else(|| Error::InvalidArgument("`group` requires a `q` table".into()))?;
            let mut seen = HashMap::new();
            let mut table = Vec::with_capacity(entries.len());
            for (i, e) in entries.into_iter().enumerate() {
                let x = coords_in_range(&spec, &e.elem, &format!("q entry {}", i + 1))?;
                if let Some(prev) = seen.insert(x.index(), i) {
                    return Err(Error::InvalidArgument(format!("q entries {} and {} both set {x}", prev + 1, i + 1)));
                }
                table.push((x, e.value));
            }
            let q = QuadraticForm::from_table(&spec, table)?;
            let cocycle = match raw.cocycle {
                None => None,
                Some(entries) => {
                    let mut map = HashMap::new();
                    for (i, e) in entries.into_iter().enumerate() {
                        let what = format!("cocycle entry {}", i + 1);
                        let [a, b, c] = &e.args;
                        let key = (
                            coords_in_range(&spec, a, &what)?.index(),
                            coords_in_range(&spec, b, &what)?.index(),
                            coords_in_range(&spec, c, &what)?.index(),
                        );
                        map.insert(key, e.value);
                    }
                    Some(CocycleData::from_fn(&spec, |a, b, c| {
                        map.get(&(a.index(), b.index(), c.index())).copied().unwrap_or(RationalPhase::ZERO)
                    })?)
                }
            };
            Ok(ModelSource::Table { name: raw.name, spec, q, cocycle })
        }
    }
}

impl ModelSource {
    /// Builds the model. A `q` violating the quadratic-form axioms is an
    /// error here; use [`crate::model::validate_quadratic`] on the table
    /// first to itemize the violations.
    pub fn build(self) -> Result<AbelianAnyonModel> {
        match self {
            ModelSource::Table { name, q, cocycle, .. } => {
                let m = AbelianAnyonModel::new(name.unwrap_or_else(|| "custom".into()), q)?;
                match cocycle {
                    Some(f) => m.with_cocycle(f),
                    None => Ok(m),
                }
            }
            ModelSource::Cyclic { name, n, p } => {
                let m = AbelianAnyonModel::cyclic(n, p)?;
                Ok(match name {
                    Some(name) => m.renamed(name),
                    None => m,
                })
            }
            ModelSource::Named(name) => AbelianAnyonModel::builtin(&name),
        }
    }
}

pub fn parse_model(text: &str) -> Result<AbelianAnyonModel> {
    parse_model_source(text)?.build()
}

pub fn load_model_file(path: &Path) -> Result<AbelianAnyonModel> {
    parse_model(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SEMION: &str = "name: semion\ngroup: [2]\nq:\n  - {elem: [0], value: \"0\"}\n  - {elem: [1], value: \"1/4\"}\n";

    #[test]
    fn table_form() {
        let m = parse_model(SEMION).unwrap();
        assert_eq!(m.name(), "semion");
        assert!(m.is_modular());
        let z2 = m.group().clone();
        assert_eq!(m.q(&z2.element(&[1]).unwrap()), RationalPhase::new(1, 4));
    }

    #[test]
    fn builtin_forms() {
        let m = parse_model("builtin: {kind: cyclic, N: 4, p: 1}\n").unwrap();
        assert_eq!(m.order(), 4);
        assert!(m.is_modular());
        let t = parse_model("builtin:\n  kind: named\n  name: toric\n").unwrap();
        assert_eq!(t.name(), "toric");
        assert!(parse_model("builtin: {kind: named, name: fib}\n").is_err());
    }

    #[test]
    fn zero_form_is_valid_but_not_modular() {
        let m = parse_model("group: [2]\nq:\n  - {elem: [0], value: 0}\n  - {elem: [1], value: 0}\n").unwrap();
        assert!(!m.is_modular());
    }

    #[test]
    fn errors() {
        let bad = "group: [2]\nq:\n  - {elem: [0], value: \"0\"}\n  - {elem: [1], value: \"1/0\"}\n";
        match parse_model(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(parse_model("group: [2]\nq:\n  - {elem: [0], value: \"0\"}\n"), Err(Error::MissingEntry(_))));
        assert!(matches!(parse_model("group: [2]\nq:\n  - {elem: [2], value: \"0\"}\n"), Err(Error::InvalidArgument(_))));
        assert!(matches!(parse_model("group: [2]\nq:\n  - {elem: [0], value: \"0\"}\n  - {elem: [1], value: \"1/3\"}\n"), Err(Error::InvalidQuadraticForm(_))));
        assert!(matches!(parse_model("colour: red\n"), Err(Error::Parse { line: 1, .. })));
        assert!(parse_model("group: [2, 3]\nq: []\n").is_err());
    }

    #[test]
    fn cocycle_entries() {
        let text = format!("{SEMION}cocycle:\n  - {{args: [[1], [1], [1]], value: \"1/2\"}}\n");
        let m = parse_model(&text).unwrap();
        assert!(m.cocycle().is_some());
        let broken = format!("{SEMION}cocycle:\n  - {{args: [[1], [0], [1]], value: \"1/2\"}}\n");
        assert!(matches!(parse_model(&broken), Err(Error::InvalidCocycle(_))));
    }
}
