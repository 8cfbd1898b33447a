//! JSON instance files.
//!
//! ```json
//! {
//!   "kind": "dcas",
//!   "catalog": "standard",
//!   "budgets": { "blue-long": 12 },
//!   "points": [[0.0, 0.0], [5.2, 0.0], [5.2, 5.2]],
//!   "delta": 0.5
//! }
//! ```
//!
//! `kind` is `dpc`, `dpas` or `dcas`. Point connectivity instances give a
//! lifted `target` `[α₁, β₁, α₂, β₂]` instead of points. `catalog` is either
//! `"standard"` or `{"custom": [{"label", "columns", "budget"}]}` with lifted
//! columns. Budgets missing from both the catalog and `budgets` are
//! unlimited. Unknown fields are rejected.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::golden::{StrutCatalog, StrutType, ZomePoint};
use crate::hardness::{PartitionInstance, ReducedInstance, ReductionKind, ThreePartitionInstance};
use crate::model::{build_dpc_feasibility, build_dpc_shortest, build_path_model, MipModel, ModelError, PathOptions};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown strut type {0:?} in budgets")]
    UnknownStrut(String),
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
#[derive(Default)]
pub enum CatalogSpec {
    #[default]
    Standard,
    Custom(Vec<TypeSpec>),
}


#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeSpec {
    pub label: String,
    pub columns: Vec<[i64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

/// The number problem an instance was reduced from, with its answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, tag = "problem", rename_all = "kebab-case")]
pub enum Source {
    Partition { numbers: Vec<u64>, answer: bool },
    ThreePartition { numbers: Vec<u64>, target: u64, answer: bool },
}

impl Source {
    pub fn answer(&self) -> bool {
        match self {
            Source::Partition { answer, .. } | Source::ThreePartition { answer, .. } => *answer,
        }
    }

    pub fn partition(p: &PartitionInstance, answer: bool) -> Self {
        Source::Partition { numbers: p.a.clone(), answer }
    }

    pub fn three_partition(p: &ThreePartitionInstance, answer: bool) -> Self {
        Source::ThreePartition { numbers: p.a.clone(), target: p.target, answer }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub kind: ReductionKind,
    #[serde(default)]
    pub catalog: CatalogSpec,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub budgets: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<[i64; 4]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    /// Open paths only: pin the first and last node onto their points.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub exact_endpoints: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<Source>,
}

impl Instance {
    pub fn from_json(s: &str) -> Result<Self, InstanceError> {
        let inst: Instance = serde_json::from_str(s)?;
        inst.validate()?;
        Ok(inst)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instances always serialize")
    }

    pub fn validate(&self) -> Result<(), InstanceError> {
        let schema = |m: &str| Err(InstanceError::Schema(m.to_string()));
        match self.kind {
            ReductionKind::Dpc => {
                if self.target.is_none() {
                    return schema("dpc instances need a target");
                }
                if !self.points.is_empty() || self.delta.is_some() {
                    return schema("dpc instances take no points or delta");
                }
            }
            ReductionKind::Dpas | ReductionKind::Dcas => {
                if self.target.is_some() {
                    return schema("path and cycle instances take points, not a target");
                }
                match self.delta {
                    Some(d) if d.is_finite() && d >= 0.0 => {}
                    _ => return schema("delta must be given, finite and non-negative"),
                }
                if self.points.iter().flatten().any(|v| !v.is_finite()) {
                    return schema("points must be finite");
                }
                if self.exact_endpoints && self.kind == ReductionKind::Dcas {
                    return schema("exact endpoints apply to open paths only");
                }
            }
        }
        if let CatalogSpec::Custom(types) = &self.catalog {
            if types.is_empty() {
                return schema("custom catalog is empty");
            }
            if types.iter().any(|t| t.columns.is_empty()) {
                return schema("every custom type needs a column");
            }
        }
        self.catalog()?;
        Ok(())
    }

    /// The catalog with `budgets` applied.
    pub fn catalog(&self) -> Result<StrutCatalog, InstanceError> {
        let cat = match &self.catalog {
            CatalogSpec::Standard => StrutCatalog::standard(),
            CatalogSpec::Custom(types) => StrutCatalog::custom(
                types
                    .iter()
                    .map(|t| StrutType::custom(t.label.clone(), t.columns.iter().map(|c| ZomePoint { lifted: *c }).collect(), t.budget))
                    .collect(),
            ),
        };
        apply_budgets(cat, &self.budgets)
    }

    /// The feasibility model (point connectivity, path or cycle).
    pub fn build_model(&self, use_sos1: bool) -> Result<MipModel, InstanceError> {
        let cat = self.catalog()?;
        Ok(match self.kind {
            ReductionKind::Dpc => build_dpc_feasibility(&cat, &self.target_point()?, use_sos1),
            ReductionKind::Dpas | ReductionKind::Dcas => build_path_model(
                &cat,
                &self.points,
                self.delta.unwrap_or(0.0),
                PathOptions {
                    use_sos1,
                    cyclic: self.kind == ReductionKind::Dcas,
                    exact_endpoints: self.exact_endpoints,
                    ..PathOptions::default()
                },
            )?,
        })
    }

    /// Fewest-struts model for a point connectivity instance.
    pub fn build_shortest_model(&self) -> Result<MipModel, InstanceError> {
        if self.kind != ReductionKind::Dpc {
            return Err(InstanceError::Schema("shortest path needs a dpc instance".into()));
        }
        Ok(build_dpc_shortest(&self.catalog()?, &self.target_point()?))
    }

    fn target_point(&self) -> Result<ZomePoint, InstanceError> {
        self.target
            .map(|t| ZomePoint { lifted: t })
            .ok_or_else(|| InstanceError::Schema("missing target".into()))
    }

    pub fn from_reduced(r: &ReducedInstance, source: Option<Source>) -> Self {
        let types = r
            .catalog
            .types
            .iter()
            .map(|t| TypeSpec { label: t.label(), columns: t.lifted.iter().map(|c| c.lifted).collect(), budget: t.budget })
            .collect();
        let (target, points, delta) = match r.kind {
            ReductionKind::Dpc => {
                let [s, t] = [r.points[0], r.points[1]];
                (Some([t[0] - s[0], 0, t[1] - s[1], 0]), Vec::new(), None)
            }
            _ => (None, r.sample_points(), Some(r.delta)),
        };
        Instance {
            kind: r.kind,
            catalog: CatalogSpec::Custom(types),
            budgets: BTreeMap::new(),
            target,
            points,
            delta,
            exact_endpoints: r.kind == ReductionKind::Dpas,
            source,
        }
    }
}

/// Sets budgets by strut label, e.g. `"blue-long"` or a custom label.
pub fn apply_budgets(cat: StrutCatalog, budgets: &BTreeMap<String, u64>) -> Result<StrutCatalog, InstanceError> {
    let mut pairs = Vec::with_capacity(budgets.len());
    for (label, &b) in budgets {
        let i = cat.find_label(label).ok_or_else(|| InstanceError::UnknownStrut(label.clone()))?;
        pairs.push((i, b));
    }
    Ok(cat.with_budgets(pairs))
}

/// Parses a budgets file: a JSON object from strut label to count.
pub fn parse_budgets(s: &str) -> Result<BTreeMap<String, u64>, InstanceError> {
    Ok(serde_json::from_str(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_field_is_rejected() {
        let err = Instance::from_json(r#"{"kind":"dpc","target":[2,0,0,0],"colour":1}"#).unwrap_err();
        assert!(matches!(err, InstanceError::Json(_)), "{err}");
    }

    #[test]
    fn budgets_default_to_unlimited() {
        let inst = Instance::from_json(r#"{"kind":"dpc","target":[2,0,0,0]}"#).unwrap();
        assert!(!inst.catalog().unwrap().has_budgets());
        let inst = Instance::from_json(r#"{"kind":"dpc","target":[2,0,0,0],"budgets":{"red-short":3}}"#).unwrap();
        let cat = inst.catalog().unwrap();
        assert_eq!(cat.types[cat.find_label("red-short").unwrap()].budget, Some(3));
        let err = Instance::from_json(r#"{"kind":"dpc","target":[2,0,0,0],"budgets":{"green":3}}"#).unwrap_err();
        assert!(matches!(err, InstanceError::UnknownStrut(_)));
    }

    #[test]
    fn schema_checks() {
        assert!(Instance::from_json(r#"{"kind":"dcas","points":[[0,0],[1,0],[0,1]]}"#).is_err());
        assert!(Instance::from_json(r#"{"kind":"dpc"}"#).is_err());
        assert!(Instance::from_json(r#"{"kind":"dcas","points":[[0,0],[1,0],[0,1]],"delta":1,"exact_endpoints":true}"#).is_err());
        assert!(Instance::from_json(r#"{"kind":"dcas","points":[[0,0],[1,0],[0,1]],"delta":1}"#).is_ok());
    }

    #[test]
    fn reduced_instance_round_trips() {
        use crate::hardness::reduce_partition_to_dpc;
        let p = PartitionInstance { a: vec![1, 1, 2, 2] };
        let r = reduce_partition_to_dpc(&p).unwrap();
        let inst = Instance::from_reduced(&r, Some(Source::partition(&p, true)));
        let back = Instance::from_json(&inst.to_json()).unwrap();
        assert_eq!(back, inst);
        assert_eq!(back.catalog().unwrap(), r.catalog);
    }
}
