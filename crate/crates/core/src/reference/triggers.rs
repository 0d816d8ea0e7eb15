use std::collections::{HashMap, HashSet};

use crate::backend::peaked;
use crate::error::BackendError;
use crate::model::{Document, RelationLabel, RelationLabelSet, Span};
use crate::reference::lexicon::{DomainLexicon, PairRule};
use crate::reference::CONFIDENCE;
use crate::triggers::TriggerRelationBackend;

const TRIGGER_SCORE: f64 = 0.9;
const OTHER_SCORE: f64 = 0.05;

/// Lexicon trigger detection plus cue-word relation labeling.
#[derive(Debug, Clone)]
pub struct ReferenceTriggerBackend {
    label_set: RelationLabelSet,
    triggers: HashSet<String>,
    pairs: Vec<PairRule>,
    cues: HashMap<String, RelationLabel>,
}

impl ReferenceTriggerBackend {
    pub fn new(lexicon: &DomainLexicon, label_set: RelationLabelSet) -> Self {
        let mut cues = HashMap::new();
        for (label, words) in &lexicon.relations.cues {
            for w in words {
                cues.insert(w.to_lowercase(), *label);
            }
        }
        let pairs = lexicon
            .relations
            .pairs
            .iter()
            .map(|p| PairRule {
                first: p.first.to_lowercase(),
                second: p.second.to_lowercase(),
                label: p.label,
            })
            .collect();
        Self {
            label_set,
            triggers: lexicon.triggers.iter().map(|w| w.to_lowercase()).collect(),
            pairs,
            cues,
        }
    }

    fn label_for(&self, document: &Document, source: &Span, target: &Span) -> RelationLabel {
        let first = document.span_text(source).to_lowercase();
        let second = document.span_text(target).to_lowercase();
        if let Some(rule) = self.pairs.iter().find(|p| p.first == first && p.second == second) {
            return rule.label;
        }
        let from = document.global_index(source.sentence_index, source.token_end);
        let to = document.global_index(target.sentence_index, target.token_start);
        document.tokens()[from.min(to)..to]
            .iter()
            .rev()
            .find_map(|t| self.cues.get(&t.surface.to_lowercase()).copied())
            .unwrap_or(RelationLabel::Vague)
    }
}

impl TriggerRelationBackend for ReferenceTriggerBackend {
    fn label_set(&self) -> RelationLabelSet {
        self.label_set
    }

    fn event_scores(&self, document: &Document) -> Result<Vec<f64>, BackendError> {
        Ok(document
            .tokens()
            .iter()
            .map(|t| {
                if self.triggers.contains(&t.surface.to_lowercase()) {
                    TRIGGER_SCORE
                } else {
                    OTHER_SCORE
                }
            })
            .collect())
    }

    fn relation_scores(
        &self,
        document: &Document,
        source: &Span,
        target: &Span,
    ) -> Result<Vec<f64>, BackendError> {
        let labels = self.label_set.labels();
        let label = self.label_for(document, source, target);
        let idx = labels
            .iter()
            .position(|l| *l == label)
            .or_else(|| labels.iter().position(|l| *l == RelationLabel::Vague))
            .ok_or_else(|| BackendError::new("reference-relations", "label set lacks VAGUE"))?;
        Ok(peaked(labels.len(), idx, CONFIDENCE))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tokenize::tokenize;

    fn backend() -> ReferenceTriggerBackend {
        ReferenceTriggerBackend::new(&DomainLexicon::news(), RelationLabelSet::Matres)
    }

    fn label(text: &str, a: &str, b: &str) -> RelationLabel {
        let doc = tokenize(text);
        let find = |w: &str| {
            let g = doc.tokens().iter().position(|t| t.surface == w).unwrap();
            let (s, k) = doc.locate(g).unwrap();
            Span::single(s, k)
        };
        backend().label_for(&doc, &find(a), &find(b))
    }

    #[test]
    fn cue_words_pick_the_label() {
        assert_eq!(label("They met before he left.", "met", "left"), RelationLabel::Before);
        assert_eq!(label("He resigned after they sued.", "resigned", "sued"), RelationLabel::After);
        assert_eq!(label("They sold it while prices fell.", "sold", "fell"), RelationLabel::Simultaneous);
        assert_eq!(label("They sold it and prices fell.", "sold", "fell"), RelationLabel::Vague);
    }

    #[test]
    fn last_cue_wins_and_crosses_sentences() {
        assert_eq!(label("They met. Then, after that, he left.", "met", "left"), RelationLabel::After);
    }

    #[test]
    fn pair_rule_beats_cues() {
        let mut lex = DomainLexicon::news();
        lex.relations.pairs.push(PairRule {
            first: "Met".into(),
            second: "left".into(),
            label: RelationLabel::Simultaneous,
        });
        let b = ReferenceTriggerBackend::new(&lex, RelationLabelSet::Matres);
        let doc = tokenize("They met before he left.");
        let d = b.relation_scores(&doc, &Span::single(0, 1), &Span::single(0, 4)).unwrap();
        assert_eq!(crate::backend::argmax(&d), 2);
    }

    #[test]
    fn event_scores_follow_lexicon() {
        let doc = tokenize("The governor toured counties.");
        let s = backend().event_scores(&doc).unwrap();
        assert_eq!(s, [OTHER_SCORE, OTHER_SCORE, TRIGGER_SCORE, OTHER_SCORE, OTHER_SCORE]);
    }
}
