use std::collections::HashMap;

use crate::backend::peaked;
use crate::duration::DurationBackend;
use crate::error::BackendError;
use crate::model::{Document, DurationCategory, DurationScale, Span};
use crate::reference::lexicon::DomainLexicon;
use crate::reference::CONFIDENCE;

/// Trigger-word category, overridden by the nearest context word in the
/// sentence, clamped to the requested scale.
#[derive(Debug, Clone)]
pub struct ReferenceDurationBackend {
    default: DurationCategory,
    triggers: HashMap<String, DurationCategory>,
    context: HashMap<String, DurationCategory>,
}

impl ReferenceDurationBackend {
    pub fn new(lexicon: &DomainLexicon) -> Self {
        let d = &lexicon.duration;
        let lower = |m: &std::collections::BTreeMap<String, DurationCategory>| {
            m.iter().map(|(k, v)| (k.to_lowercase(), *v)).collect()
        };
        Self {
            default: d.default,
            triggers: lower(&d.triggers),
            context: lower(&d.context),
        }
    }

    pub fn category(&self, document: &Document, trigger: &Span) -> DurationCategory {
        let words = document.sentence_tokens(trigger.sentence_index);
        let cue = words
            .iter()
            .enumerate()
            .filter(|(k, _)| !trigger.tokens().contains(k))
            .filter_map(|(k, t)| {
                let dist = if k < trigger.token_start { trigger.token_start - k } else { k + 1 - trigger.token_end };
                self.context.get(&t.surface.to_lowercase()).map(|c| (dist, k, *c))
            })
            .min_by_key(|(d, k, _)| (*d, *k));
        if let Some((_, _, c)) = cue {
            return c;
        }
        let word = document.span_text(trigger).to_lowercase();
        self.triggers.get(&word).copied().unwrap_or(self.default)
    }
}

impl DurationBackend for ReferenceDurationBackend {
    fn duration_scores(
        &self,
        document: &Document,
        trigger: &Span,
        scale: DurationScale,
    ) -> Result<Vec<f64>, BackendError> {
        let cats = scale.categories();
        let c = scale.clamp(self.category(document, trigger));
        let idx = cats.iter().position(|x| *x == c).expect("clamped category is on the scale");
        Ok(peaked(cats.len(), idx, CONFIDENCE))
    }
}
