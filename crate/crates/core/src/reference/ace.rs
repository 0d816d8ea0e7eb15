use std::collections::HashMap;

use crate::ace::{AceBackend, ArgumentScores, ScoreBundle};
use crate::backend::peaked;
use crate::error::BackendError;
use crate::model::Document;
use crate::ontology::Ontology;
use crate::reference::lexicon::{DomainLexicon, RoleRule};
use crate::tokenize::tokenize;

const P: f64 = 0.9;
const NAME: &str = "reference-ace";

/// Gazetteer entities, lexicon triggers, and nearest-entity role rules,
/// rendered as peaked score rows.
#[derive(Debug, Clone)]
pub struct ReferenceAceBackend {
    /// Lowercased token sequences, longest first.
    entities: Vec<(Vec<String>, String)>,
    triggers: HashMap<String, String>,
    roles: Vec<RoleRule>,
}

struct Found<'a> {
    start: usize,
    end: usize,
    entity_type: &'a str,
}

impl ReferenceAceBackend {
    pub fn new(lexicon: &DomainLexicon) -> Self {
        let mut entities: Vec<(Vec<String>, String)> = lexicon
            .ace
            .entities
            .iter()
            .map(|e| {
                let words = tokenize(&e.phrase).tokens().iter().map(|t| t.surface.to_lowercase()).collect();
                (words, e.entity_type.clone())
            })
            .filter(|(w, _): &(Vec<String>, String)| !w.is_empty())
            .collect();
        entities.sort_by_key(|e| std::cmp::Reverse(e.0.len()));
        Self {
            entities,
            triggers: lexicon.ace.triggers.iter().map(|(k, v)| (k.to_lowercase(), v.clone())).collect(),
            roles: lexicon.ace.roles.clone(),
        }
    }

    /// Leftmost-longest, non-overlapping gazetteer matches.
    fn match_entities(&self, words: &[String]) -> Vec<Found<'_>> {
        let mut out = Vec::new();
        let mut k = 0;
        while k < words.len() {
            let hit = self
                .entities
                .iter()
                .find(|(phrase, _)| words[k..].starts_with(phrase));
            match hit {
                Some((phrase, ty)) => {
                    out.push(Found {
                        start: k,
                        end: k + phrase.len(),
                        entity_type: ty,
                    });
                    k += phrase.len();
                }
                None => k += 1,
            }
        }
        out
    }

    /// Role → entity for a trigger at `k`: per role the nearest matching
    /// entity, each entity used at most once (earlier rules first).
    fn assign_roles<'f>(&self, subtype: &str, k: usize, found: &'f [Found<'_>]) -> Vec<(&str, &'f Found<'f>)> {
        use crate::reference::lexicon::Direction;
        let mut out: Vec<(&str, &Found)> = Vec::new();
        for rule in self.roles.iter().filter(|r| r.subtype == subtype) {
            if out.iter().any(|(r, _)| *r == rule.role) {
                continue;
            }
            let best = found
                .iter()
                .filter(|e| e.entity_type == rule.entity_type)
                .filter(|e| !out.iter().any(|(_, taken)| taken.start == e.start))
                .filter_map(|e| {
                    if e.end <= k && rule.direction == Direction::Before {
                        Some((k - e.end, e))
                    } else if e.start > k && rule.direction == Direction::After {
                        Some((e.start - k, e))
                    } else {
                        None
                    }
                })
                .min_by_key(|(d, e)| (*d, e.start));
            if let Some((_, e)) = best {
                out.push((rule.role.as_str(), e));
            }
        }
        out
    }
}

impl AceBackend for ReferenceAceBackend {
    fn score_sentence(
        &self,
        document: &Document,
        sentence_index: usize,
        ontology: &Ontology,
    ) -> Result<ScoreBundle, BackendError> {
        let words: Vec<String> = document
            .sentence_tokens(sentence_index)
            .iter()
            .map(|t| t.surface.to_lowercase())
            .collect();
        let (el, tl, al) = (
            ontology.entity_label_count(),
            ontology.trigger_label_count(),
            ontology.argument_label_count(),
        );

        let found = self.match_entities(&words);
        let mut entity_scores = vec![peaked(el, 0, P); words.len()];
        for e in &found {
            let t = ontology
                .entity_type_index(e.entity_type)
                .ok_or_else(|| BackendError::new(NAME, format!("entity type `{}` not in ontology", e.entity_type)))?;
            entity_scores[e.start] = peaked(el, 1 + 2 * t, P);
            for row in &mut entity_scores[e.start + 1..e.end] {
                *row = peaked(el, 2 + 2 * t, P);
            }
        }

        let mut trigger_scores = vec![peaked(tl, 0, P); words.len()];
        let mut argument_scores = Vec::new();
        for (k, w) in words.iter().enumerate() {
            let Some(subtype) = self.triggers.get(w) else { continue };
            let idx = ontology
                .subtype_index(subtype)
                .ok_or_else(|| BackendError::new(NAME, format!("subtype `{subtype}` not in ontology")))?;
            trigger_scores[k] = peaked(tl, 1 + idx, P);
            let mut rows = vec![peaked(al, 0, P); words.len()];
            for (role, e) in self.assign_roles(subtype, k, &found) {
                let r = ontology
                    .role_index(role)
                    .ok_or_else(|| BackendError::new(NAME, format!("role `{role}` not in ontology")))?;
                rows[e.start] = peaked(al, 1 + 2 * r, P);
                for row in &mut rows[e.start + 1..e.end] {
                    *row = peaked(al, 2 + 2 * r, P);
                }
            }
            argument_scores.push(ArgumentScores {
                trigger_start: k,
                subtype: subtype.clone(),
                scores: rows,
            });
        }

        Ok(ScoreBundle {
            entity_scores,
            trigger_scores,
            argument_scores,
        })
    }
}
