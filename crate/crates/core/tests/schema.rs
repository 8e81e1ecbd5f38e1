mod common;

use common::{load_corpus, q};
use ddecide_core::{decide, parse_sentence, DecideOptions, Delta, EvalConfig, Mode, Outcome};

fn validator() -> jsonschema::Validator {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/schema/verdict.schema.json");
    let schema: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

#[test]
fn corpus_verdicts_validate() {
    let v = validator();
    let d = Delta::new(q(1, 10)).unwrap();
    for e in load_corpus().iter().take(12) {
        for mode in [Mode::Strengthen, Mode::Weaken, Mode::Robust] {
            let json = decide(&e.sentence, &d, mode, &DecideOptions::default(), None).unwrap().to_json();
            let errors: Vec<String> = v.iter_errors(&json).map(|e| e.to_string()).collect();
            assert!(errors.is_empty(), "{}: {json} {errors:?}", e.name);
        }
    }
}

#[test]
fn unknown_verdict_validates() {
    let phi = parse_sentence("(forall (x 0 1) (exists (y 0 1) (> (- (* x y) (sin (* 3 x))) 0)))").unwrap();
    let opts = DecideOptions { tolerance_bits: Some(30), config: EvalConfig { max_splits: 1, ..EvalConfig::default() } };
    let verdict = decide(&phi, &Delta::new(q(1, 3)).unwrap(), Mode::Strengthen, &opts, None).unwrap();
    let json = verdict.to_json();
    assert_eq!(verdict.outcome, Outcome::Unknown);
    assert!(json.get("note").is_some());
    assert!(validator().is_valid(&json), "{json}");
}

#[test]
fn schema_rejects_malformed_verdicts() {
    let v = validator();
    let e = &load_corpus()[0];
    let good = decide(&e.sentence, &Delta::new(q(1, 4)).unwrap(), Mode::Strengthen, &DecideOptions::default(), None)
        .unwrap()
        .to_json();
    let mut bad = good.clone();
    bad["outcome"] = "Maybe".into();
    assert!(!v.is_valid(&bad));
    let mut bad = good.clone();
    bad["delta"] = 0.25.into();
    assert!(!v.is_valid(&bad));
    let mut bad = good;
    bad.as_object_mut().unwrap().remove("k");
    assert!(!v.is_valid(&bad));
}
