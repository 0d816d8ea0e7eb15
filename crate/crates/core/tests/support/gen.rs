use rand::rngs::StdRng;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use tempevent_core::ace::{ArgumentScores, ScoreBundle};
use tempevent_core::ontology::OntologyConfig;
use tempevent_core::tokenize::tokenize;
use tempevent_core::{
    AnnotationResult, Argument, Document, EntityMention, EventId, EventMention, EventSource, EventType, Ontology,
    Span, TemporalGraph,
};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// 1–2 entity types, 1–3 subtypes, 1–4 roles, random valid-role table.
pub fn ontology(rng: &mut StdRng) -> Ontology {
    let entity_types: Vec<String> = (0..rng.random_range(1..=2)).map(|i| format!("ent{i}")).collect();
    let event_subtypes: Vec<String> = (0..rng.random_range(1..=3)).map(|i| format!("Ev{i}")).collect();
    let argument_roles: Vec<String> = (0..rng.random_range(1..=4)).map(|i| format!("role{i}")).collect();
    let valid_roles = event_subtypes
        .iter()
        .map(|s| {
            let roles = argument_roles.iter().filter(|_| rng.random_bool(0.6)).cloned().collect();
            (s.clone(), roles)
        })
        .collect();
    let config = OntologyConfig {
        entity_types,
        event_subtypes,
        argument_roles,
        valid_roles,
        relation_label_set: Default::default(),
    };
    Ontology::from_config(config).unwrap()
}

/// Random strictly positive distribution. Skewed rows make confident labels
/// (and so multi-token entities and triggers) common.
pub fn distribution(rng: &mut StdRng, width: usize) -> Vec<f64> {
    let mut row: Vec<f64> = (0..width).map(|_| rng.random_range(0.01..1.0)).collect();
    if rng.random_bool(0.5) {
        let k = rng.random_range(0..width);
        row[k] += rng.random_range(1.0..4.0);
    }
    let sum: f64 = row.iter().sum();
    row.iter().map(|p| p / sum).collect()
}

/// A single-sentence document `w0 w1 ...` of `n` tokens.
pub fn words(n: usize) -> Document {
    let text: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
    tokenize(&text.join(" "))
}

/// Bundle for an `n`-token sentence with argument rows for every
/// (token, subtype) pair.
pub fn bundle(rng: &mut StdRng, ontology: &Ontology, n: usize) -> ScoreBundle {
    let (el, tl, al) = (
        ontology.entity_label_count(),
        ontology.trigger_label_count(),
        ontology.argument_label_count(),
    );
    let entity_scores = (0..n).map(|_| distribution(rng, el)).collect();
    let trigger_scores = (0..n).map(|_| distribution(rng, tl)).collect();
    let mut argument_scores = Vec::new();
    for k in 0..n {
        for s in ontology.event_subtypes() {
            argument_scores.push(ArgumentScores {
                trigger_start: k,
                subtype: s.clone(),
                scores: (0..n).map(|_| distribution(rng, al)).collect(),
            });
        }
    }
    ScoreBundle {
        entity_scores,
        trigger_scores,
        argument_scores,
    }
}

/// Document with `sentences` sentences of `len` tokens each.
pub fn document(sentences: usize, len: usize) -> Document {
    let text: Vec<String> = (0..sentences)
        .map(|s| {
            let ws: Vec<String> = (0..len - 1).map(|k| format!("s{s}w{k}")).collect();
            format!("{} .", ws.join(" "))
        })
        .collect();
    tokenize(&text.join(" "))
}

pub fn span(rng: &mut StdRng, doc: &Document, max_len: usize) -> Span {
    let s = rng.random_range(0..doc.sentence_count());
    let n = doc.sentence_len(s);
    let start = rng.random_range(0..n);
    let end = (start + rng.random_range(1..=max_len)).min(n);
    Span::new(s, start, end)
}

const SUBTYPES: &[&str] = &["Movement:Transport", "Conflict:Attack", "Contact:Meet", "Life:Die"];
const ROLES: &[&str] = &["artifact", "destination", "attacker", "target", "entity", "place", "victim"];

/// Typed events with multi-token triggers, possibly overlapping each other.
pub fn ace_events(rng: &mut StdRng, doc: &Document, count: usize) -> Vec<EventMention> {
    (0..count)
        .map(|i| {
            let args = (0..rng.random_range(0..3))
                .map(|_| Argument {
                    role: ROLES.choose(rng).unwrap().to_string(),
                    span: span(rng, doc, 2),
                })
                .collect();
            EventMention::ace(
                EventId(format!("a{i}")),
                span(rng, doc, 2),
                *SUBTYPES.choose(rng).unwrap(),
                args,
            )
        })
        .collect()
}

pub fn generic_events(rng: &mut StdRng, doc: &Document, count: usize) -> Vec<EventMention> {
    (0..count)
        .map(|i| {
            let mut e = EventMention::generic(EventId(format!("g{i}")), span(rng, doc, 1));
            e.negated = rng.random_bool(0.2);
            e
        })
        .collect()
}

const ENTITY_TYPES: &[&str] = &["person", "geo-political-entity", "organization"];

/// A random annotation over `doc` with unique event ids and no relations.
pub fn annotation(rng: &mut StdRng, doc: &Document) -> AnnotationResult {
    let entities = (0..rng.random_range(0..6))
        .map(|_| EntityMention {
            span: span(rng, doc, 3),
            entity_type: ENTITY_TYPES.choose(rng).unwrap().to_string(),
        })
        .collect();
    let (typed, generic) = (rng.random_range(0..5), rng.random_range(0..3));
    let mut events = ace_events(rng, doc, typed);
    events.extend(generic_events(rng, doc, generic));
    for (i, e) in events.iter_mut().enumerate() {
        e.id = EventId::ordinal(i);
    }
    AnnotationResult::new(doc.clone(), entities, events, Vec::new(), TemporalGraph::default()).unwrap()
}

/// Derive a prediction from `gold` by dropping, retyping, moving and adding
/// mentions, so that pairs range from identical to disjoint.
pub fn perturb(rng: &mut StdRng, gold: &AnnotationResult) -> AnnotationResult {
    let doc = &gold.document;
    let mut entities: Vec<EntityMention> = gold.entities.iter().filter(|_| rng.random_bool(0.8)).cloned().collect();
    for e in &mut entities {
        if rng.random_bool(0.2) {
            e.entity_type = ENTITY_TYPES.choose(rng).unwrap().to_string();
        }
        if rng.random_bool(0.1) {
            e.span = span(rng, doc, 3);
        }
    }
    let mut events: Vec<EventMention> = gold.events.iter().filter(|_| rng.random_bool(0.8)).cloned().collect();
    for e in &mut events {
        if rng.random_bool(0.2) {
            e.subtype = EventType::Subtype(SUBTYPES.choose(rng).unwrap().to_string());
            e.source = EventSource::Ace;
        }
        if rng.random_bool(0.1) {
            e.trigger = span(rng, doc, 2);
        }
        if e.subtype != EventType::Generic {
            e.arguments.retain(|_| rng.random_bool(0.8));
            for a in &mut e.arguments {
                if rng.random_bool(0.25) {
                    a.role = ROLES.choose(rng).unwrap().to_string();
                }
            }
        }
    }
    let extra = rng.random_range(0..2);
    events.extend(ace_events(rng, doc, extra));
    for (i, e) in events.iter_mut().enumerate() {
        e.id = EventId::ordinal(i);
    }
    AnnotationResult::new(doc.clone(), entities, events, Vec::new(), TemporalGraph::default()).unwrap()
}

const VOCAB: &[&str] = &[
    "toured", "declared", "continues", "maintain", "sending", "considering", "met", "attacked", "resigned",
    "sued", "arrived", "said", "George", "Pataki", "governor", "troops", "Mozambique", "counties", "New", "York",
    "police", "the", "a", "of", "to", "and", "after", "before", "while", "as", "been", "then", "not", "would",
    "never", "may", "soon", "Christmas", "week", "officials", "areas", ",",
];

/// Random news-like text of 1–3 sentences.
pub fn text(rng: &mut StdRng) -> String {
    let mut out = Vec::new();
    for _ in 0..rng.random_range(1..=3) {
        let words: Vec<&str> = (0..rng.random_range(1..12)).map(|_| *VOCAB.choose(rng).unwrap()).collect();
        out.push(format!("{}.", words.join(" ")));
    }
    out.join(" ")
}
