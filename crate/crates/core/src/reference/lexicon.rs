use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{DurationCategory, RelationLabel};

/// Everything the reference backends of one domain read.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainLexicon {
    /// Words that trigger a GENERIC event, matched case-insensitively.
    #[serde(default)]
    pub triggers: Vec<String>,
    #[serde(default)]
    pub relations: RelationLexicon,
    #[serde(default)]
    pub ace: AceLexicon,
    #[serde(default)]
    pub duration: DurationLexicon,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationLexicon {
    /// Trigger pairs with a fixed label; checked before cues.
    #[serde(default)]
    pub pairs: Vec<PairRule>,
    /// Cue words between two triggers; the last cue before the later trigger wins.
    #[serde(default)]
    pub cues: BTreeMap<RelationLabel, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairRule {
    pub first: String,
    pub second: String,
    pub label: RelationLabel,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AceLexicon {
    #[serde(default)]
    pub entities: Vec<EntityEntry>,
    /// Trigger word → event subtype.
    #[serde(default)]
    pub triggers: BTreeMap<String, String>,
    #[serde(default)]
    pub roles: Vec<RoleRule>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntityEntry {
    /// Tokenized with the default tokenizer and matched case-insensitively.
    pub phrase: String,
    #[serde(rename = "type")]
    pub entity_type: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Before,
    After,
}

/// An entity of `entity_type` on the `direction` side of a `subtype` trigger
/// fills `role`; the nearest such entity wins.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoleRule {
    pub subtype: String,
    pub direction: Direction,
    pub entity_type: String,
    pub role: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DurationLexicon {
    /// Used when neither the trigger nor its context is listed.
    pub default: DurationCategory,
    #[serde(default)]
    pub triggers: BTreeMap<String, DurationCategory>,
    /// Context words that override the trigger's own category; nearest wins.
    #[serde(default)]
    pub context: BTreeMap<String, DurationCategory>,
}

impl Default for DurationLexicon {
    fn default() -> Self {
        Self {
            default: DurationCategory::Days,
            triggers: BTreeMap::new(),
            context: BTreeMap::new(),
        }
    }
}

impl DomainLexicon {
    pub fn from_json(source: &str) -> Result<Self> {
        Ok(serde_json::from_str(source)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("lexicon serializes")
    }

    pub fn news() -> Self {
        Self::from_json(include_str!("../../data/news_lexicon.json")).expect("bundled news lexicon is valid")
    }

    pub fn biomedical() -> Self {
        Self::from_json(include_str!("../../data/biomedical_lexicon.json"))
            .expect("bundled biomedical lexicon is valid")
    }
}
