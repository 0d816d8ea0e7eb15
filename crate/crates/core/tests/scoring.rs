mod support;

use rand::Rng;
use support::{gen, oracle};
use tempevent_core::duration::{duration_metrics, spearman};
use tempevent_core::eval::{score_corpus, score_extraction};
use tempevent_core::model::{Argument, EventId, EventMention, EventType, Span};
use tempevent_core::{annotate, AnnotateOptions, AnnotationResult, BackendRegistry, DurationCategory, Error, Execution};

#[test]
fn metrics_match_reference_formulas() {
    for seed in 0..300 {
        let mut rng = gen::rng(seed);
        let n = rng.random_range(2..=50);
        let top = if rng.random_bool(0.5) { 7 } else { 11 };
        let pick = |rng: &mut rand::rngs::StdRng| DurationCategory::ALL[rng.random_range(0..top)];
        let pred: Vec<_> = (0..n).map(|_| pick(&mut rng)).collect();
        let gold: Vec<_> = (0..n).map(|_| pick(&mut rng)).collect();
        let m = duration_metrics(&pred, &gold).unwrap();
        let (acc, acc_c, rho) = oracle::duration_metrics(&pred, &gold);
        assert!((m.acc - acc).abs() < 1e-9, "seed {seed}");
        assert!((m.acc_c - acc_c).abs() < 1e-9, "seed {seed}");
        assert!((m.spearman - rho).abs() < 1e-9, "seed {seed}: {} vs {rho}", m.spearman);
    }
}

#[test]
fn spearman_extremes_are_exact() {
    for n in 2..=50 {
        let x: Vec<f64> = (0..n).map(|i| (i * i) as f64 * 0.1).collect();
        let rev: Vec<f64> = x.iter().rev().cloned().collect();
        assert_eq!(spearman(&x, &x), 1.0);
        assert_eq!(spearman(&x, &rev), -1.0);
    }
}

#[test]
fn classification_never_beats_identification() {
    for seed in 0..300 {
        let mut rng = gen::rng(seed);
        let doc = gen::document(rng.random_range(1..4), rng.random_range(3..10));
        let gold = gen::annotation(&mut rng, &doc);
        let pred = gen::perturb(&mut rng, &gold);
        let s = score_extraction(&pred, &gold).unwrap();
        assert!(s.trig_c.f1 <= s.trig_i.f1, "seed {seed}");
        assert!(s.arg_c.f1 <= s.arg_i.f1, "seed {seed}");
        let same = score_extraction(&gold, &gold).unwrap();
        for prf in [same.entity, same.trig_i, same.trig_c, same.arg_i, same.arg_c] {
            assert_eq!(prf.f1, 1.0);
        }
    }
}

#[test]
fn scores_ignore_mention_order() {
    for seed in 0..100 {
        let mut rng = gen::rng(seed);
        let doc = gen::document(2, 6);
        let gold = gen::annotation(&mut rng, &doc);
        let pred = gen::perturb(&mut rng, &gold);
        let mut shuffled = pred.clone();
        shuffled.entities.reverse();
        shuffled.events.reverse();
        for e in &mut shuffled.events {
            e.arguments.reverse();
        }
        assert_eq!(score_extraction(&pred, &gold).unwrap(), score_extraction(&shuffled, &gold).unwrap());
    }
}

fn with_event(base: &AnnotationResult, subtype: &str, args: Vec<Argument>) -> AnnotationResult {
    let mut r = base.clone();
    r.events = vec![EventMention::ace(EventId::ordinal(0), Span::single(0, 1), subtype, args)];
    r
}

#[test]
fn wrong_role_counts_for_identification_only() {
    let base = AnnotationResult {
        document: gen::document(1, 5),
        ..AnnotationResult::empty()
    };
    let arg = |role: &str| vec![Argument { role: role.into(), span: Span::new(0, 2, 4) }];
    let gold = with_event(&base, "Movement:Transport", arg("destination"));
    let pred = with_event(&base, "Movement:Transport", arg("artifact"));
    let s = score_extraction(&pred, &gold).unwrap();
    assert_eq!((s.arg_i.f1, s.arg_c.f1), (1.0, 0.0));

    let retyped = with_event(&base, "Contact:Meet", arg("destination"));
    let s = score_extraction(&retyped, &gold).unwrap();
    assert_eq!((s.trig_i.f1, s.trig_c.f1, s.arg_i.f1), (1.0, 0.0, 0.0));
    assert_ne!(retyped.events[0].subtype, EventType::Generic);
}

#[test]
fn mismatched_documents_are_rejected() {
    let a = AnnotationResult {
        document: gen::document(1, 5),
        ..AnnotationResult::empty()
    };
    let b = AnnotationResult {
        document: gen::document(2, 5),
        ..AnnotationResult::empty()
    };
    assert!(matches!(score_extraction(&a, &b), Err(Error::DocumentMismatch)));
}

#[test]
fn corpus_scores_are_micro_averaged_and_mode_independent() {
    let registry = BackendRegistry::default();
    let mut pairs = Vec::new();
    for seed in 0..40 {
        let mut rng = gen::rng(seed);
        let gold = annotate(&gen::text(&mut rng), "news", &registry, &AnnotateOptions::default()).unwrap();
        let pred = gen::perturb(&mut rng, &gold);
        pairs.push((pred, gold));
    }
    let seq = score_corpus(&pairs, Execution::Sequential).unwrap();
    let par = score_corpus(&pairs, Execution::Parallel).unwrap();
    assert_eq!(seq, par);
    let total: usize = pairs.iter().map(|(_, g)| g.events.len()).sum();
    assert!(total > 0);
}
