use serde::{Deserialize, Serialize};

use crate::backend::check_distribution;
use crate::error::{Error, Result};
use crate::ontology::Ontology;

/// Per-token label distributions for one sentence.
///
/// This is the fixture format as well: a JSON object with `entity_scores`,
/// `trigger_scores` and `argument_scores`, each row indexed by the label layout
/// documented in [`crate::ontology`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreBundle {
    pub entity_scores: Vec<Vec<f64>>,
    pub trigger_scores: Vec<Vec<f64>>,
    #[serde(default)]
    pub argument_scores: Vec<ArgumentScores>,
}

/// Argument label distributions for a trigger starting at `trigger_start`
/// and typed as `subtype`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArgumentScores {
    pub trigger_start: usize,
    pub subtype: String,
    pub scores: Vec<Vec<f64>>,
}

impl ScoreBundle {
    pub fn len(&self) -> usize {
        self.trigger_scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trigger_scores.is_empty()
    }

    pub fn arguments_for(&self, trigger_start: usize, subtype: &str) -> Option<&[Vec<f64>]> {
        self.argument_scores
            .iter()
            .find(|a| a.trigger_start == trigger_start && a.subtype == subtype)
            .map(|a| a.scores.as_slice())
    }

    pub fn arguments_for_mut(&mut self, trigger_start: usize, subtype: &str) -> Option<&mut Vec<Vec<f64>>> {
        self.argument_scores
            .iter_mut()
            .find(|a| a.trigger_start == trigger_start && a.subtype == subtype)
            .map(|a| &mut a.scores)
    }

    /// Shape check against the ontology's label inventories.
    pub fn check_inventory(&self, ontology: &Ontology) -> Result<()> {
        let n = self.trigger_scores.len();
        check_rows("entity", &self.entity_scores, n, ontology.entity_label_count())?;
        check_rows("trigger", &self.trigger_scores, n, ontology.trigger_label_count())?;
        for a in &self.argument_scores {
            if ontology.subtype_index(&a.subtype).is_none() {
                return Err(Error::Inventory(format!(
                    "argument scores keyed by unknown subtype `{}`",
                    a.subtype
                )));
            }
            if a.trigger_start >= n {
                return Err(Error::Inventory(format!(
                    "argument scores keyed by token {} of a {n}-token sentence",
                    a.trigger_start
                )));
            }
            check_rows("argument", &a.scores, n, ontology.argument_label_count())?;
        }
        Ok(())
    }

    /// Shape check plus: every row is a distribution within 1e-6.
    pub fn validate(&self, ontology: &Ontology, sentence_len: usize) -> Result<()> {
        if self.len() != sentence_len {
            return Err(Error::Inventory(format!(
                "bundle covers {} tokens, sentence has {sentence_len}",
                self.len()
            )));
        }
        self.check_inventory(ontology)?;
        let rows = self
            .entity_scores
            .iter()
            .chain(&self.trigger_scores)
            .chain(self.argument_scores.iter().flat_map(|a| &a.scores));
        for row in rows {
            check_distribution(row, 1e-6).map_err(Error::Contract)?;
        }
        Ok(())
    }
}

fn check_rows(kind: &str, rows: &[Vec<f64>], n: usize, width: usize) -> Result<()> {
    if rows.len() != n {
        return Err(Error::Inventory(format!(
            "{kind} scores cover {} tokens, expected {n}",
            rows.len()
        )));
    }
    if let Some(r) = rows.iter().find(|r| r.len() != width) {
        return Err(Error::Inventory(format!(
            "{kind} row has {} labels, ontology defines {width}",
            r.len()
        )));
    }
    Ok(())
}
