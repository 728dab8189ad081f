use numeral_mg::config::RunConfig;
use numeral_mg::learner::{round_trip, train, trace, EventKind, Learner, LearnerConfig};
use numeral_mg::lexicon::entry_line;
use numeral_mg::teacher::{Orthography, Teacher};

#[test]
fn training_is_deterministic() {
    let a = train(24, &Teacher::default(), LearnerConfig::default()).unwrap();
    let b = train(24, &Teacher::default(), LearnerConfig::default()).unwrap();
    assert_eq!(trace::to_jsonl(&a.trace), trace::to_jsonl(&b.trace));
    assert_eq!(a.lexicon.to_text(), b.lexicon.to_text());
}

#[test]
fn every_prefix_of_the_count_round_trips() {
    let teacher = Teacher::default();
    let mut learner = Learner::new(LearnerConfig::default());
    for n in 1..=23 {
        learner.step(&teacher.ump_for(n).unwrap()).unwrap();
        let rt = round_trip(learner.lexicon(), &teacher, n, Default::default()).unwrap();
        assert!(rt.failures.is_empty(), "after {n}: {:?}", rt.failures);
    }
}

#[test]
fn teen_history_follows_segmentation_then_licensing() {
    let tr = train(14, &Teacher::default(), LearnerConfig::default()).unwrap();
    let at14: Vec<_> = tr.trace.iter().filter(|e| e.t == 14 && e.changes_lexicon()).collect();
    assert_eq!(at14[0].kind, EventKind::SegmentationRevision);
    assert_eq!(at14[0].removed, vec!["thirteen :: num ; (add (mul 10^1 1) 3)"]);
    assert!(at14.iter().any(|e| e.kind == EventKind::LicensingReorg));
    assert!(at14.iter().any(|e| e.kind == EventKind::SemanticReorg));
    let punished: Vec<_> = tr.trace.iter().filter(|e| e.kind == EventKind::Punish).collect();
    assert_eq!(punished[0].offending.as_deref(), Some("threeteen"));
    let lines: Vec<String> = tr.lexicon.iter().map(entry_line).collect();
    assert!(lines.contains(&"@eps :: =num =num +k num ; (lam y (lam x (add y x)))".to_string()));
    assert!(lines.contains(&"teen :: num ; (mul 10^1 1)".to_string()));
}

#[test]
fn standard_orthography_learns_forty() {
    let cfg: RunConfig = "max_number = 45\northography = standard\n".parse().unwrap();
    let tr = train(cfg.max_number, &cfg.teacher(), cfg.learner()).unwrap();
    let rt = round_trip(&tr.lexicon, &Teacher::new(Orthography::Standard), 45, cfg.enumerate()).unwrap();
    assert_eq!(rt.accuracy(), 1.0, "failures {:?}", rt.failures);
    assert_eq!(trace::replay(&tr.trace).unwrap(), tr.lexicon);
}
