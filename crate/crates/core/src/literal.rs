//! JSON forms of groups, sets, spectra, Bohr sets, systems and metric dumps.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bohr::BohrSet;
use crate::bourgain::{BirkhoffMetric, SystemFamily};
use crate::error::{Error, Result};
use crate::group::{FinAbGroup, GroupRef};
use crate::set::GroupSet;
use crate::spectrum::Spectrum;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupSpec {
    pub cycles: Vec<usize>,
}

impl GroupSpec {
    pub fn build(&self, cap: usize) -> Result<GroupRef> {
        FinAbGroup::with_cap(&self.cycles, cap)
    }
}

/// An element as a coordinate tuple, or a bare (possibly negative) integer in a cyclic group.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Scalar(i64),
    Tuple(Vec<i64>),
}

impl ElementSpec {
    pub fn index(&self, group: &GroupRef) -> Result<usize> {
        match self {
            ElementSpec::Scalar(x) => {
                if group.rank() != 1 {
                    return Err(Error::InvalidParameter(format!(
                        "bare integer element {x} needs a cyclic group, got rank {}",
                        group.rank()
                    )));
                }
                group.encode_signed(&[*x])
            }
            ElementSpec::Tuple(t) => group.encode_signed(t),
        }
    }
}

/// A set file: explicit elements, or a centred interval/cube of radius `r`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SetSpec {
    pub group: GroupSpec,
    #[serde(default)]
    pub elements: Option<Vec<ElementSpec>>,
    #[serde(default)]
    pub interval: Option<usize>,
}

impl SetSpec {
    pub fn build(&self, cap: usize) -> Result<GroupSet> {
        let g = self.group.build(cap)?;
        self.build_in(&g)
    }

    pub fn build_in(&self, g: &GroupRef) -> Result<GroupSet> {
        match (&self.elements, self.interval) {
            (Some(els), None) => {
                let idx = els.iter().map(|e| e.index(g)).collect::<Result<Vec<_>>>()?;
                GroupSet::from_indices(g, idx)
            }
            (None, Some(r)) => Ok(GroupSet::cube(g, r)),
            _ => Err(Error::InvalidParameter("a set needs exactly one of `elements` or `interval`".into())),
        }
    }
}

pub fn parse_set(text: &str, cap: usize) -> Result<GroupSet> {
    serde_json::from_str::<SetSpec>(text)?.build(cap)
}

pub fn group_json(g: &GroupRef) -> Value {
    json!({ "cycles": g.cycles() })
}

pub fn set_json(s: &GroupSet) -> Value {
    json!({ "group": group_json(s.group()), "size": s.len(), "elements": s.elements() })
}

pub fn spectrum_json(s: &Spectrum) -> Value {
    json!({
        "group": group_json(s.members().group()),
        "source_size": s.source().len(),
        "delta": s.delta(),
        "threshold": s.threshold(),
        "size": s.members().len(),
        "members": s.members().elements(),
    })
}

pub fn bohr_json(b: &BohrSet) -> Value {
    json!({
        "group": group_json(b.members().group()),
        "frequencies": b.frequencies().elements(),
        "radius": b.radius(),
        "size": b.members().len(),
        "members": b.members().elements(),
    })
}

/// `[[tuple, rho_star, rho], ...]` with `null` for infinity.
pub fn metric_dump(m: &BirkhoffMetric) -> Value {
    let g = m.system().group();
    Value::Array(
        (0..g.order())
            .map(|x| json!([g.decode(x), m.rho_star()[x], m.rho()[x]]))
            .collect(),
    )
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LevelSpec {
    pub radius: f64,
    pub elements: Vec<ElementSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilySpec {
    Interval { scale: f64 },
    Subgroup { generators: Vec<ElementSpec> },
    Levels(Vec<LevelSpec>),
}

/// A Bourgain system file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SystemSpec {
    pub group: GroupSpec,
    pub d: f64,
    #[serde(default)]
    pub depth: Option<usize>,
    pub family: FamilySpec,
}

impl SystemSpec {
    pub fn family(&self, g: &GroupRef) -> Result<SystemFamily> {
        Ok(match &self.family {
            FamilySpec::Interval { scale } => SystemFamily::Interval { scale: *scale },
            FamilySpec::Subgroup { generators } => SystemFamily::Subgroup {
                generators: generators.iter().map(|e| e.index(g)).collect::<Result<_>>()?,
            },
            FamilySpec::Levels(levels) => SystemFamily::Levels(
                levels
                    .iter()
                    .map(|l| {
                        let idx = l.elements.iter().map(|e| e.index(g)).collect::<Result<Vec<_>>>()?;
                        Ok((l.radius, GroupSet::from_indices(g, idx)?))
                    })
                    .collect::<Result<_>>()?,
            ),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bourgain::{birkhoff_metric, system_from_family};

    #[test]
    fn set_files_round_trip() {
        let s = parse_set(r#"{"group": {"cycles": [16]}, "elements": [-1, 0, 1, 17]}"#, 1 << 20).unwrap();
        assert_eq!(s.indices(), vec![0, 1, 15]);
        let v = set_json(&s);
        assert_eq!(v["elements"], json!([[0], [1], [15]]));
        let back = parse_set(&serde_json::to_string(&v).unwrap(), 1 << 20).unwrap();
        assert_eq!(back, s);

        let s = parse_set(r#"{"group": {"cycles": [5, 5]}, "interval": 1}"#, 1 << 20).unwrap();
        assert_eq!(s.len(), 9);
        let s = parse_set(r#"{"group": {"cycles": [4, 6]}, "elements": [[1, -1], [0, 0]]}"#, 1 << 20).unwrap();
        assert_eq!(s.elements(), vec![vec![0, 0], vec![1, 5]]);
    }

    #[test]
    fn set_file_errors() {
        assert!(parse_set(r#"{"group": {"cycles": [4, 6]}, "elements": [3]}"#, 1 << 20).is_err());
        assert!(parse_set(r#"{"group": {"cycles": [16]}}"#, 1 << 20).is_err());
        assert!(parse_set(r#"{"group": {"cycles": [1024, 1024]}, "interval": 1}"#, 1000).is_err());
        assert!(matches!(parse_set("{", 1 << 20), Err(Error::Json(_))));
    }

    #[test]
    fn system_files() {
        let text = r#"{"group": {"cycles": [16]}, "d": 2.0,
            "family": {"levels": [{"radius": 2.0, "elements": [-2,-1,0,1,2]}, {"radius": 0.5, "elements": [0]}]}}"#;
        let spec: SystemSpec = serde_json::from_str(text).unwrap();
        let g = spec.group.build(1 << 20).unwrap();
        let system = system_from_family(&g, &spec.family(&g).unwrap(), spec.d, spec.depth).unwrap();
        let dump = metric_dump(&birkhoff_metric(&system));
        assert_eq!(dump[0], json!([[0], 0.0, 0.0]));
        assert_eq!(dump[1], json!([[1], 1.0, 1.0]));
        // outside S_1, yet reachable by four steps of 2
        assert_eq!(dump[8], json!([[8], null, 4.0]));

        let text = r#"{"group": {"cycles": [12]}, "d": 0.0, "family": {"subgroup": {"generators": [4]}}}"#;
        let spec: SystemSpec = serde_json::from_str(text).unwrap();
        assert!(matches!(spec.family(&spec.group.build(64).unwrap()).unwrap(), SystemFamily::Subgroup { .. }));
    }
}
