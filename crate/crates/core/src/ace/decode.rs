use serde::{Deserialize, Serialize};

use crate::ace::bio::{decode_bio, Bio};
use crate::ace::bundle::ScoreBundle;
use crate::ace::constraints::apply_decoding_constraints;
use crate::backend::argmax;
use crate::error::{Error, Result};
use crate::model::{Argument, Document, EntityMention, EventId, EventMention, Span};
use crate::ontology::Ontology;

/// How entity label sequences are searched.
///
/// Triggers are always per-token argmax after masking. Arguments are always
/// decoded per candidate entity, so every argument coincides with an entity.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecodingStrategy {
    /// Per-token argmax, then BIO repair.
    #[default]
    Greedy,
    /// Best BIO-valid entity sequence (no `I-x` without a preceding `B-x`/`I-x`).
    Viterbi,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SentenceExtraction {
    pub entities: Vec<EntityMention>,
    pub events: Vec<EventMention>,
}

/// Decode entities, triggers and arguments for one sentence.
pub fn extract_ace_events(
    document: &Document,
    sentence_index: usize,
    bundle: &ScoreBundle,
    ontology: &Ontology,
    strategy: DecodingStrategy,
) -> Result<SentenceExtraction> {
    if sentence_index >= document.sentence_count() {
        return Err(Error::SpanOutOfBounds {
            span: format!("sentence {sentence_index}"),
            reason: format!("document has {} sentences", document.sentence_count()),
        });
    }
    bundle.validate(ontology, document.sentence_len(sentence_index))?;

    let entity_tags: Vec<Bio<usize>> = match strategy {
        DecodingStrategy::Greedy => bundle
            .entity_scores
            .iter()
            .map(|row| Bio::from_index(argmax(row)))
            .collect(),
        DecodingStrategy::Viterbi => viterbi_bio(&bundle.entity_scores)
            .into_iter()
            .map(Bio::from_index)
            .collect(),
    };
    let entities: Vec<EntityMention> = decode_bio(&entity_tags)
        .into_iter()
        .map(|(t, r)| EntityMention {
            span: Span::new(sentence_index, r.start, r.end),
            entity_type: ontology.entity_types()[t].clone(),
        })
        .collect();

    let masked = apply_decoding_constraints(bundle, &entities, ontology)?;

    let trigger_labels: Vec<usize> = masked.trigger_scores.iter().map(|r| argmax(r)).collect();
    let mut triggers: Vec<(usize, usize, usize)> = Vec::new();
    for (k, &label) in trigger_labels.iter().enumerate() {
        if label == 0 {
            continue;
        }
        match triggers.last_mut() {
            Some((_, end, l)) if *end == k && *l == label => *end = k + 1,
            _ => triggers.push((k, k + 1, label)),
        }
    }

    let mut events = Vec::with_capacity(triggers.len());
    for (n, (start, end, label)) in triggers.into_iter().enumerate() {
        let subtype = &ontology.event_subtypes()[label - 1];
        let scores = masked.arguments_for(start, subtype).ok_or_else(|| {
            Error::MissingArgumentScores {
                trigger_start: start,
                subtype: subtype.clone(),
            }
        })?;
        let arguments = decode_arguments(scores, &entities, ontology)
            .into_iter()
            .map(|(role, e)| Argument {
                role: ontology.argument_roles()[role].clone(),
                span: e.span,
            })
            .collect();
        events.push(EventMention::ace(
            EventId(format!("s{sentence_index}t{n}")),
            Span::new(sentence_index, start, end),
            subtype.clone(),
            arguments,
        ));
    }

    Ok(SentenceExtraction { entities, events })
}

/// Each entity either takes one role (B-r then I-r across its tokens) or stays
/// O; the choice with the largest masked score product wins, O first on ties.
fn decode_arguments<'e>(
    scores: &[Vec<f64>],
    entities: &'e [EntityMention],
    ontology: &Ontology,
) -> Vec<(usize, &'e EntityMention)> {
    let roles = ontology.argument_roles().len();
    let mut out = Vec::new();
    for e in entities {
        let r = e.span.tokens();
        let mut best = r.clone().map(|k| scores[k][0]).product::<f64>();
        let mut choice = None;
        for role in 0..roles {
            let (b, i) = (1 + 2 * role, 2 + 2 * role);
            let p = scores[r.start][b] * r.clone().skip(1).map(|k| scores[k][i]).product::<f64>();
            if p > best {
                best = p;
                choice = Some(role);
            }
        }
        if let Some(role) = choice {
            out.push((role, e));
        }
    }
    out
}

/// Highest-product label sequence under BIO transitions for an
/// `O, B-0, I-0, ...` layout. Zero-probability labels are unreachable.
pub(crate) fn viterbi_bio(rows: &[Vec<f64>]) -> Vec<usize> {
    let n = rows.len();
    if n == 0 {
        return Vec::new();
    }
    let width = rows[0].len();
    let allowed = |prev: Option<usize>, cur: usize| match Bio::from_index(cur) {
        Bio::I(t) => matches!(prev.map(Bio::from_index), Some(Bio::B(p) | Bio::I(p)) if p == t),
        _ => true,
    };
    let ln = |p: f64| if p > 0.0 { p.ln() } else { f64::NEG_INFINITY };

    let mut score: Vec<f64> = (0..width)
        .map(|c| if allowed(None, c) { ln(rows[0][c]) } else { f64::NEG_INFINITY })
        .collect();
    let mut back = vec![vec![0usize; width]; n];
    for k in 1..n {
        let mut next = vec![f64::NEG_INFINITY; width];
        for c in 0..width {
            let emit = ln(rows[k][c]);
            let mut best: Option<(f64, usize)> = None;
            for (p, &prev) in score.iter().enumerate() {
                if !allowed(Some(p), c) {
                    continue;
                }
                let s = prev + emit;
                if best.is_none_or(|(b, _)| s > b) {
                    best = Some((s, p));
                }
            }
            if let Some((s, p)) = best {
                next[c] = s;
                back[k][c] = p;
            }
        }
        score = next;
    }
    let mut last = 0;
    for c in 1..width {
        if score[c] > score[last] {
            last = c;
        }
    }
    let mut path = vec![0; n];
    path[n - 1] = last;
    for k in (1..n).rev() {
        path[k - 1] = back[k][path[k]];
    }
    path
}
