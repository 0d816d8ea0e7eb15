//! Label inventories and the subtype → valid-roles table.
//!
//! Label layouts used by score bundles:
//!
//! * entity labels: `O`, then `B-t`, `I-t` for every entity type `t` in order;
//! * trigger labels: `O`, then every event subtype in order;
//! * argument labels: `O`, then `B-r`, `I-r` for every argument role `r` in order.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DurationCategory, EventType, RelationLabelSet};

const DEFAULT_ACE: &str = include_str!("../data/ace_ontology.json");
const DEFAULT_GENIA: &str = include_str!("../data/genia_ontology.json");

/// On-disk form of an [`Ontology`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OntologyConfig {
    pub entity_types: Vec<String>,
    pub event_subtypes: Vec<String>,
    pub argument_roles: Vec<String>,
    #[serde(default)]
    pub valid_roles: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub relation_label_set: RelationLabelSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ontology {
    entity_types: Vec<String>,
    event_subtypes: Vec<String>,
    argument_roles: Vec<String>,
    valid_roles: BTreeMap<String, BTreeSet<String>>,
    relation_label_set: RelationLabelSet,
    entity_index: HashMap<String, usize>,
    subtype_index: HashMap<String, usize>,
    role_index: HashMap<String, usize>,
}

fn index_unique(kind: &str, names: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if n.trim().is_empty() {
            return Err(Error::Ontology(format!("empty {kind} name")));
        }
        if index.insert(n.clone(), i).is_some() {
            return Err(Error::Ontology(format!("duplicate {kind} `{n}`")));
        }
    }
    Ok(index)
}

/// Parse and validate an ontology configuration document (JSON).
pub fn load_ontology(source: &str) -> Result<Ontology> {
    let config: OntologyConfig =
        serde_json::from_str(source).map_err(|e| Error::Ontology(format!("parse error: {e}")))?;
    Ontology::from_config(config)
}

/// Rank distance between two duration categories.
pub fn duration_distance(a: DurationCategory, b: DurationCategory) -> usize {
    a.rank().abs_diff(b.rank())
}

impl Ontology {
    pub fn from_config(config: OntologyConfig) -> Result<Self> {
        let entity_index = index_unique("entity type", &config.entity_types)?;
        let subtype_index = index_unique("event subtype", &config.event_subtypes)?;
        let role_index = index_unique("argument role", &config.argument_roles)?;
        if subtype_index.contains_key(EventType::GENERIC) {
            return Err(Error::Ontology(format!(
                "`{}` is reserved for trigger-only events",
                EventType::GENERIC
            )));
        }

        let mut valid_roles = BTreeMap::new();
        for (subtype, roles) in &config.valid_roles {
            if !subtype_index.contains_key(subtype) {
                return Err(Error::Ontology(format!(
                    "valid_roles references unknown subtype `{subtype}`"
                )));
            }
            let mut set = BTreeSet::new();
            for r in roles {
                if !role_index.contains_key(r) {
                    return Err(Error::Ontology(format!(
                        "valid_roles for `{subtype}` references unknown role `{r}`"
                    )));
                }
                if !set.insert(r.clone()) {
                    return Err(Error::Ontology(format!(
                        "duplicate role `{r}` in valid_roles for `{subtype}`"
                    )));
                }
            }
            valid_roles.insert(subtype.clone(), set);
        }
        for s in &config.event_subtypes {
            valid_roles.entry(s.clone()).or_default();
        }

        Ok(Self {
            entity_types: config.entity_types,
            event_subtypes: config.event_subtypes,
            argument_roles: config.argument_roles,
            valid_roles,
            relation_label_set: config.relation_label_set,
            entity_index,
            subtype_index,
            role_index,
        })
    }

    /// ACE 2005 inventory: 7 entity types, 33 subtypes, 22 roles.
    pub fn ace() -> Self {
        load_ontology(DEFAULT_ACE).expect("bundled ACE ontology is valid")
    }

    /// Biomedical (GENIA-style) inventory used by the biomedical domain.
    pub fn genia() -> Self {
        load_ontology(DEFAULT_GENIA).expect("bundled biomedical ontology is valid")
    }

    pub fn to_config(&self) -> OntologyConfig {
        OntologyConfig {
            entity_types: self.entity_types.clone(),
            event_subtypes: self.event_subtypes.clone(),
            argument_roles: self.argument_roles.clone(),
            valid_roles: self
                .valid_roles
                .iter()
                .filter(|(_, v)| !v.is_empty())
                .map(|(k, v)| (k.clone(), v.iter().cloned().collect()))
                .collect(),
            relation_label_set: self.relation_label_set,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_config()).expect("ontology config serializes")
    }

    pub fn entity_types(&self) -> &[String] {
        &self.entity_types
    }

    pub fn event_subtypes(&self) -> &[String] {
        &self.event_subtypes
    }

    pub fn argument_roles(&self) -> &[String] {
        &self.argument_roles
    }

    pub fn relation_label_set(&self) -> RelationLabelSet {
        self.relation_label_set
    }

    pub fn valid_roles(&self, subtype: &str) -> Result<&BTreeSet<String>> {
        self.valid_roles
            .get(subtype)
            .ok_or_else(|| Error::UnknownSubtype(subtype.to_string()))
    }

    pub fn entity_type_index(&self, name: &str) -> Option<usize> {
        self.entity_index.get(name).copied()
    }

    pub fn subtype_index(&self, name: &str) -> Option<usize> {
        self.subtype_index.get(name).copied()
    }

    pub fn role_index(&self, name: &str) -> Option<usize> {
        self.role_index.get(name).copied()
    }

    pub fn entity_label_count(&self) -> usize {
        1 + 2 * self.entity_types.len()
    }

    pub fn trigger_label_count(&self) -> usize {
        1 + self.event_subtypes.len()
    }

    pub fn argument_label_count(&self) -> usize {
        1 + 2 * self.argument_roles.len()
    }

    pub fn entity_labels(&self) -> Vec<String> {
        bio_labels(&self.entity_types)
    }

    pub fn trigger_labels(&self) -> Vec<String> {
        std::iter::once("O".to_string())
            .chain(self.event_subtypes.iter().cloned())
            .collect()
    }

    pub fn argument_labels(&self) -> Vec<String> {
        bio_labels(&self.argument_roles)
    }
}

fn bio_labels(names: &[String]) -> Vec<String> {
    let mut out = Vec::with_capacity(1 + 2 * names.len());
    out.push("O".to_string());
    for n in names {
        out.push(format!("B-{n}"));
        out.push(format!("I-{n}"));
    }
    out
}
