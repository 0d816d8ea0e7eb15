//! Extraction scoring: micro precision/recall/F1 with exact span matching.
//!
//! | criterion | a prediction is correct when it matches gold on |
//! |-----------|--------------------------------------------------|
//! | entity    | span and entity type                             |
//! | Trig-I    | trigger span                                     |
//! | Trig-C    | trigger span and event subtype                   |
//! | Arg-I     | argument span and the event's subtype            |
//! | Arg-C     | argument span, event subtype and role            |
//!
//! Mentions are compared as multisets, so order never matters and duplicates
//! count once per occurrence.

use std::collections::HashMap;
use std::hash::Hash;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::AnnotationResult;
use crate::par::{self, Execution};

/// Match counts for one criterion.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub correct: usize,
    pub predicted: usize,
    pub gold: usize,
}

impl Add for Counts {
    type Output = Counts;

    fn add(self, o: Counts) -> Counts {
        Counts {
            correct: self.correct + o.correct,
            predicted: self.predicted + o.predicted,
            gold: self.gold + o.gold,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prf {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl Counts {
    fn of<K: Eq + Hash>(predicted: impl IntoIterator<Item = K>, gold: impl IntoIterator<Item = K>) -> Self {
        let mut bag: HashMap<K, isize> = HashMap::new();
        let mut p = 0;
        for k in predicted {
            *bag.entry(k).or_default() += 1;
            p += 1;
        }
        let (mut g, mut correct) = (0, 0);
        for k in gold {
            g += 1;
            if let Some(n) = bag.get_mut(&k) {
                if *n > 0 {
                    *n -= 1;
                    correct += 1;
                }
            }
        }
        Counts {
            correct,
            predicted: p,
            gold: g,
        }
    }

    /// Nothing predicted and nothing to find scores 1.0 throughout; otherwise
    /// an empty denominator gives 0.
    pub fn prf(&self) -> Prf {
        if self.predicted == 0 && self.gold == 0 {
            return Prf {
                precision: 1.0,
                recall: 1.0,
                f1: 1.0,
            };
        }
        let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
        let precision = ratio(self.correct, self.predicted);
        let recall = ratio(self.correct, self.gold);
        let f1 = ratio(2 * self.correct, self.predicted + self.gold);
        Prf { precision, recall, f1 }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionCounts {
    pub entity: Counts,
    pub trig_i: Counts,
    pub trig_c: Counts,
    pub arg_i: Counts,
    pub arg_c: Counts,
}

impl Add for ExtractionCounts {
    type Output = ExtractionCounts;

    fn add(self, o: Self) -> Self {
        Self {
            entity: self.entity + o.entity,
            trig_i: self.trig_i + o.trig_i,
            trig_c: self.trig_c + o.trig_c,
            arg_i: self.arg_i + o.arg_i,
            arg_c: self.arg_c + o.arg_c,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtractionScores {
    pub entity: Prf,
    pub trig_i: Prf,
    pub trig_c: Prf,
    pub arg_i: Prf,
    pub arg_c: Prf,
}

impl ExtractionCounts {
    pub fn scores(&self) -> ExtractionScores {
        ExtractionScores {
            entity: self.entity.prf(),
            trig_i: self.trig_i.prf(),
            trig_c: self.trig_c.prf(),
            arg_i: self.arg_i.prf(),
            arg_c: self.arg_c.prf(),
        }
    }
}

pub fn count_extraction(predicted: &AnnotationResult, gold: &AnnotationResult) -> Result<ExtractionCounts> {
    if predicted.document != gold.document {
        return Err(Error::DocumentMismatch);
    }
    let entities = |a: &AnnotationResult| {
        a.entities
            .iter()
            .map(|e| (e.span, e.entity_type.clone()))
            .collect::<Vec<_>>()
    };
    let trig_c = |a: &AnnotationResult| {
        a.events
            .iter()
            .map(|e| (e.trigger, e.subtype.as_str().to_string()))
            .collect::<Vec<_>>()
    };
    let args = |a: &AnnotationResult| {
        a.events
            .iter()
            .flat_map(|e| {
                e.arguments
                    .iter()
                    .map(move |x| (e.subtype.as_str().to_string(), x.span, x.role.clone()))
            })
            .collect::<Vec<_>>()
    };
    let (pa, ga) = (args(predicted), args(gold));
    Ok(ExtractionCounts {
        entity: Counts::of(entities(predicted), entities(gold)),
        trig_i: Counts::of(
            predicted.events.iter().map(|e| e.trigger),
            gold.events.iter().map(|e| e.trigger),
        ),
        trig_c: Counts::of(trig_c(predicted), trig_c(gold)),
        arg_i: Counts::of(
            pa.iter().map(|(s, span, _)| (s, span)),
            ga.iter().map(|(s, span, _)| (s, span)),
        ),
        arg_c: Counts::of(pa.iter(), ga.iter()),
    })
}

pub fn score_extraction(predicted: &AnnotationResult, gold: &AnnotationResult) -> Result<ExtractionScores> {
    Ok(count_extraction(predicted, gold)?.scores())
}

/// Micro-averaged over all documents: counts are pooled before dividing.
pub fn score_corpus(pairs: &[(AnnotationResult, AnnotationResult)], execution: Execution) -> Result<ExtractionScores> {
    let counts = par::try_map(execution, pairs, |(p, g)| count_extraction(p, g))?;
    Ok(counts
        .into_iter()
        .fold(ExtractionCounts::default(), |a, b| a + b)
        .scores())
}
