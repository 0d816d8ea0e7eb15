//! Decoding constraints over predicted entities and the ontology.
//!
//! * Entity-Argument: outside every entity, argument labels other than `O` get 0.
//! * Entity-Trigger: inside an entity, every subtype label gets 0.
//! * Valid Trigger-Argument: for a trigger of subtype `t`, `B-r`/`I-r` get 0
//!   whenever `r` is not a valid role of `t`.
//!
//! Remaining mass is left as is; argmax decoding does not need renormalization.

use std::fmt;

use crate::ace::bundle::ScoreBundle;
use crate::error::Result;
use crate::model::{EntityMention, EventMention};
use crate::ontology::Ontology;

/// Token membership in any entity span, for a sentence of `len` tokens.
pub(crate) fn entity_mask(entities: &[EntityMention], len: usize) -> Vec<bool> {
    let mut inside = vec![false; len];
    for e in entities {
        for k in e.span.tokens() {
            if k < len {
                inside[k] = true;
            }
        }
    }
    inside
}

pub fn apply_decoding_constraints(
    bundle: &ScoreBundle,
    entities: &[EntityMention],
    ontology: &Ontology,
) -> Result<ScoreBundle> {
    bundle.check_inventory(ontology)?;
    let inside = entity_mask(entities, bundle.len());
    let mut masked = bundle.clone();

    for (k, row) in masked.trigger_scores.iter_mut().enumerate() {
        if inside[k] {
            row[1..].iter_mut().for_each(|p| *p = 0.0);
        }
    }

    for args in masked.argument_scores.iter_mut() {
        let valid = ontology.valid_roles(&args.subtype)?;
        let role_ok: Vec<bool> = ontology
            .argument_roles()
            .iter()
            .map(|r| valid.contains(r))
            .collect();
        for (k, row) in args.scores.iter_mut().enumerate() {
            for (label, p) in row.iter_mut().enumerate().skip(1) {
                let role = (label - 1) / 2;
                if !inside[k] || !role_ok[role] {
                    *p = 0.0;
                }
            }
        }
    }
    Ok(masked)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintKind {
    EntityArgument,
    EntityTrigger,
    ValidTriggerArgument,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintViolation {
    pub kind: ConstraintKind,
    pub detail: String,
}

impl fmt::Display for ConstraintViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.kind, self.detail)
    }
}

/// Post-hoc check of the three constraints on decoded output.
pub fn verify_constraints(
    entities: &[EntityMention],
    events: &[EventMention],
    ontology: &Ontology,
) -> Vec<ConstraintViolation> {
    let in_entity = |s: usize, k: usize| entities.iter().any(|e| e.span.contains(s, k));
    let mut out = Vec::new();
    for ev in events {
        let t = &ev.trigger;
        if let Some(k) = t.tokens().find(|&k| in_entity(t.sentence_index, k)) {
            out.push(ConstraintViolation {
                kind: ConstraintKind::EntityTrigger,
                detail: format!("trigger of {} covers entity token {k}", ev.id),
            });
        }
        let valid = ev
            .subtype
            .subtype()
            .and_then(|s| ontology.valid_roles(s).ok());
        for a in &ev.arguments {
            let s = a.span.sentence_index;
            if let Some(k) = a.span.tokens().find(|&k| !in_entity(s, k)) {
                out.push(ConstraintViolation {
                    kind: ConstraintKind::EntityArgument,
                    detail: format!("argument `{}` of {} covers non-entity token {k}", a.role, ev.id),
                });
            }
            if !valid.is_some_and(|v| v.contains(&a.role)) {
                out.push(ConstraintViolation {
                    kind: ConstraintKind::ValidTriggerArgument,
                    detail: format!("role `{}` is not valid for {} ({})", a.role, ev.id, ev.subtype),
                });
            }
        }
    }
    out
}
