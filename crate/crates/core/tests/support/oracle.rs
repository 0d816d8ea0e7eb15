//! Exhaustive reference implementations. These deliberately share no code with
//! the library beyond the data types.

use tempevent_core::ace::{DecodingStrategy, ScoreBundle, SentenceExtraction};
use tempevent_core::{DurationCategory, Ontology};

/// Decoded sentence in plain tuples: entities `(type, start, end)` and events
/// `(start, end, subtype, [(role, start, end)])`, both sorted.
pub type DecodedEvent = (usize, usize, String, Vec<(String, usize, usize)>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    pub entities: Vec<(String, usize, usize)>,
    pub events: Vec<DecodedEvent>,
}

pub fn normalize(out: &SentenceExtraction) -> Decoded {
    let mut entities: Vec<_> = out
        .entities
        .iter()
        .map(|e| (e.entity_type.clone(), e.span.token_start, e.span.token_end))
        .collect();
    entities.sort();
    let mut events: Vec<_> = out
        .events
        .iter()
        .map(|e| {
            let mut args: Vec<_> = e
                .arguments
                .iter()
                .map(|a| (a.role.clone(), a.span.token_start, a.span.token_end))
                .collect();
            args.sort();
            (e.trigger.token_start, e.trigger.token_end, e.subtype.as_str().to_string(), args)
        })
        .collect();
    events.sort();
    Decoded { entities, events }
}

/// Every label sequence of length `n` over `width` labels, in lexicographic order.
fn sequences(n: usize, width: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = width.pow(n as u32);
    (0..total).map(move |mut code| {
        let mut seq = vec![0; n];
        for k in (0..n).rev() {
            seq[k] = code % width;
            code /= width;
        }
        seq
    })
}

fn product(rows: &[Vec<f64>], seq: &[usize]) -> f64 {
    seq.iter().enumerate().map(|(k, &l)| rows[k][l]).product()
}

/// Highest product among sequences passing `keep`; first one wins ties.
fn best(rows: &[Vec<f64>], width: usize, keep: impl Fn(&[usize]) -> bool) -> Vec<usize> {
    let mut top: Option<(f64, Vec<usize>)> = None;
    for seq in sequences(rows.len(), width) {
        if !keep(&seq) {
            continue;
        }
        let p = product(rows, &seq);
        if top.as_ref().is_none_or(|(b, _)| p > *b) {
            top = Some((p, seq));
        }
    }
    top.map(|(_, s)| s).unwrap_or_default()
}

/// In an `O, B-0, I-0, ...` layout: 0 = O, odd = B, even = I.
fn kind(label: usize) -> (char, usize) {
    match label {
        0 => ('O', 0),
        l if l % 2 == 1 => ('B', (l - 1) / 2),
        l => ('I', (l - 2) / 2),
    }
}

fn bio_valid(seq: &[usize]) -> bool {
    seq.iter().enumerate().all(|(k, &l)| match kind(l) {
        ('I', t) => k > 0 && matches!(kind(seq[k - 1]), ('B', p) | ('I', p) if p == t),
        _ => true,
    })
}

/// Spans where a token starts a span unless it is `I-t` right after a `t` token.
fn spans(seq: &[usize]) -> Vec<(usize, usize, usize)> {
    let mut out: Vec<(usize, usize, usize)> = Vec::new();
    for (k, &l) in seq.iter().enumerate() {
        let (c, t) = kind(l);
        let continues = c == 'I'
            && k > 0
            && out.last().is_some_and(|&(pt, _, end)| pt == t && end == k);
        match c {
            'O' => {}
            _ if continues => out.last_mut().unwrap().2 = k + 1,
            _ => out.push((t, k, k + 1)),
        }
    }
    out
}

/// Exhaustive decoding: best entity sequence (all sequences for greedy,
/// BIO-valid ones for Viterbi); then the best trigger sequence that puts no
/// subtype inside an entity; then, per trigger, the best joint assignment of
/// one valid role or none to every entity, all other tokens `O`.
pub fn decode(bundle: &ScoreBundle, ontology: &Ontology, strategy: DecodingStrategy) -> Decoded {
    let n = bundle.entity_scores.len();
    let el = ontology.entity_label_count();
    let ent_seq = match strategy {
        DecodingStrategy::Greedy => best(&bundle.entity_scores, el, |_| true),
        DecodingStrategy::Viterbi => best(&bundle.entity_scores, el, bio_valid),
    };
    let ents = spans(&ent_seq);
    let inside = |k: usize| ents.iter().any(|&(_, s, e)| s <= k && k < e);

    let tl = ontology.trigger_label_count();
    let trig_seq = best(&bundle.trigger_scores, tl, |seq| {
        seq.iter().enumerate().all(|(k, &l)| l == 0 || !inside(k))
    });
    let mut triggers: Vec<(usize, usize, usize)> = Vec::new();
    for (k, &l) in trig_seq.iter().enumerate() {
        if l == 0 {
            continue;
        }
        match triggers.last_mut() {
            Some((lab, _, end)) if *lab == l && *end == k => *end = k + 1,
            _ => triggers.push((l, k, k + 1)),
        }
    }

    let roles = ontology.argument_roles();
    let mut events = Vec::new();
    for (label, start, end) in triggers {
        let subtype = ontology.event_subtypes()[label - 1].clone();
        let valid = ontology.valid_roles(&subtype).unwrap();
        let rows = &bundle
            .argument_scores
            .iter()
            .find(|a| a.trigger_start == start && a.subtype == subtype)
            .expect("generator covers every trigger")
            .scores;
        // choice per entity: 0 = none, r+1 = role r
        let options: Vec<usize> = std::iter::once(0)
            .chain((0..roles.len()).filter(|&r| valid.contains(&roles[r])).map(|r| r + 1))
            .collect();
        let mut top: Option<(f64, Vec<usize>)> = None;
        for code in 0..options.len().pow(ents.len() as u32) {
            let mut c = code;
            let mut choice = vec![0; ents.len()];
            for slot in choice.iter_mut().rev() {
                *slot = options[c % options.len()];
                c /= options.len();
            }
            let mut seq = vec![0; n];
            for (&(_, s, e), &ch) in ents.iter().zip(&choice) {
                if ch > 0 {
                    seq[s] = 2 * (ch - 1) + 1;
                    for l in &mut seq[s + 1..e] {
                        *l = 2 * (ch - 1) + 2;
                    }
                }
            }
            let p = product(rows, &seq);
            if top.as_ref().is_none_or(|(b, _)| p > *b) {
                top = Some((p, choice));
            }
        }
        let choice = top.map(|(_, c)| c).unwrap_or_default();
        let mut args: Vec<(String, usize, usize)> = ents
            .iter()
            .zip(&choice)
            .filter(|(_, &c)| c > 0)
            .map(|(&(_, s, e), &c)| (roles[c - 1].clone(), s, e))
            .collect();
        args.sort();
        events.push((start, end, subtype, args));
    }
    events.sort();

    let mut entities: Vec<_> = ents
        .into_iter()
        .map(|(t, s, e)| (ontology.entity_types()[t].clone(), s, e))
        .collect();
    entities.sort();
    Decoded { entities, events }
}

/// Exact accuracy, within-one accuracy and Spearman, straight from definitions:
/// average ranks by counting, then Pearson on the ranks.
pub fn duration_metrics(pred: &[DurationCategory], gold: &[DurationCategory]) -> (f64, f64, f64) {
    let n = pred.len() as f64;
    let rank = |c: &DurationCategory| DurationCategory::ALL.iter().position(|x| x == c).unwrap() as f64;
    let p: Vec<f64> = pred.iter().map(rank).collect();
    let g: Vec<f64> = gold.iter().map(rank).collect();
    let acc = p.iter().zip(&g).filter(|(a, b)| a == b).count() as f64 / n;
    let acc_c = p.iter().zip(&g).filter(|(a, b)| (*a - *b).abs() <= 1.0).count() as f64 / n;
    (acc, acc_c, spearman(&p, &g))
}

pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    let ranks = |v: &[f64]| -> Vec<f64> {
        v.iter()
            .map(|a| {
                let below = v.iter().filter(|b| *b < a).count() as f64;
                let equal = v.iter().filter(|b| *b == a).count() as f64;
                below + (equal + 1.0) / 2.0
            })
            .collect()
    };
    let (rx, ry) = (ranks(x), ranks(y));
    let n = x.len() as f64;
    let mx = rx.iter().sum::<f64>() / n;
    let my = ry.iter().sum::<f64>() / n;
    let cov: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = rx.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = ry.iter().map(|b| (b - my).powi(2)).sum();
    if vx == 0.0 || vy == 0.0 {
        return if x == y { 1.0 } else { 0.0 };
    }
    cov / (vx * vy).sqrt()
}
