use rllab_core::budget::Budget;
use rllab_core::families::{fixture_corpus, replay, FamilySpec, Origin};

#[test]
fn every_record_replays() {
    let mut failures = Vec::new();
    for r in fixture_corpus() {
        let out = replay(&r, 1e-9, &mut Budget::default()).unwrap();
        if !out.pass {
            failures.push(format!("{} {:?}: expected {:?}, got {:?} ({})", r.family, r.quantity, r.expected, out.got, r.citation));
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn corpus_is_labeled_and_nonempty() {
    let corpus = fixture_corpus();
    assert!(corpus.len() > 50);
    assert!(corpus.iter().all(|r| !r.citation.is_empty()));
    assert!(corpus.iter().any(|r| r.origin == Origin::Elementary));
    assert!(corpus.iter().filter(|r| r.family == FamilySpec::Seth).count() >= 4);
}

#[test]
fn a_wrong_record_fails() {
    let mut r = fixture_corpus().into_iter().find(|r| r.family == FamilySpec::Whirl).unwrap();
    r.expected = rllab_core::families::Expected::Int(99);
    assert!(!replay(&r, 1e-9, &mut Budget::default()).unwrap().pass);
}
