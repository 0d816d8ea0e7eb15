mod support;

use support::{gen, oracle};
use tempevent_core::ace::{extract_ace_events, verify_constraints, DecodingStrategy};

fn check(seed: u64, strategy: DecodingStrategy) {
    let mut rng = gen::rng(seed);
    let onto = gen::ontology(&mut rng);
    let n = rand::Rng::random_range(&mut rng, 1..=6);
    let doc = gen::words(n);
    let bundle = gen::bundle(&mut rng, &onto, n);
    let got = extract_ace_events(&doc, 0, &bundle, &onto, strategy).unwrap();
    assert_eq!(
        oracle::normalize(&got),
        oracle::decode(&bundle, &onto, strategy),
        "seed {seed}, {strategy:?}"
    );
    let violations = verify_constraints(&got.entities, &got.events, &onto);
    assert!(violations.is_empty(), "seed {seed}: {violations:?}");
}

#[test]
fn greedy_matches_exhaustive_search() {
    for seed in 0..300 {
        check(seed, DecodingStrategy::Greedy);
    }
}

#[test]
fn viterbi_matches_exhaustive_search() {
    for seed in 1000..1300 {
        check(seed, DecodingStrategy::Viterbi);
    }
}

#[test]
fn generator_exercises_interesting_cases() {
    // The suite is only meaningful if decoded outputs regularly contain
    // multi-token entities, events and arguments.
    let (mut multi, mut events, mut args) = (0, 0, 0);
    for seed in 0..300 {
        let mut rng = gen::rng(seed);
        let onto = gen::ontology(&mut rng);
        let n = rand::Rng::random_range(&mut rng, 1..=6);
        let bundle = gen::bundle(&mut rng, &onto, n);
        let d = oracle::decode(&bundle, &onto, DecodingStrategy::Greedy);
        multi += d.entities.iter().filter(|e| e.2 - e.1 > 1).count();
        events += d.events.len();
        args += d.events.iter().map(|e| e.3.len()).sum::<usize>();
    }
    assert!(multi > 20 && events > 100 && args > 50, "{multi} {events} {args}");
}
