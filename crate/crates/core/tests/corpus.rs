mod common;

use common::{grid_step, grid_value, load_corpus, q};
use ddecide_core::{alpha_of_sentence, decide_strengthen, decide_weaken, parse_sentence, Delta, Outcome};

#[test]
fn corpus_is_large_enough() {
    assert!(load_corpus().len() >= 30);
}

#[test]
fn recorded_alpha_matches_grid() {
    for e in load_corpus() {
        let t = alpha_of_sentence(&e.sentence);
        let g = grid_value(t.term(), &mut Vec::new(), grid_step(t.term()));
        // Grid optima approach the true optimum from the inside, so allow
        // one Lipschitz step of slack.
        assert!((g - e.alpha).abs() < 0.05, "{}: grid {g}, recorded {}", e.name, e.alpha);
    }
}

#[test]
fn recorded_truth_agrees_with_alpha_sign() {
    // α > 0 forces φ true and α < 0 forces it false; within δ of α the
    // strengthened variants follow the same rule shifted by δ.
    for e in load_corpus() {
        if e.alpha > 0.0 {
            assert!(e.truth, "{}", e.name);
        }
        if e.alpha < 0.0 {
            assert!(!e.truth, "{}", e.name);
        }
        for (d, plus) in [(0.25, e.plus_quarter), (0.1, e.plus_tenth)] {
            if e.alpha > d + 1e-9 {
                assert!(plus, "{} at {d}", e.name);
            }
            if e.alpha < d - 1e-9 {
                assert!(!plus, "{} at {d}", e.name);
            }
        }
    }
}

#[test]
fn verdicts_are_sound_and_dual() {
    for e in load_corpus() {
        for delta in [q(1, 4), q(1, 10)] {
            let d = Delta::new(delta.clone()).unwrap();
            let s = decide_strengthen(&e.sentence, &d).unwrap();
            match s.outcome {
                Outcome::True => assert!(e.truth, "{}: True but false", e.name),
                Outcome::DeltaFalse => assert!(!e.plus(&delta), "{}: DeltaFalse but strengthened holds", e.name),
                other => panic!("{}: {other}", e.name),
            }
            let w = decide_weaken(&e.sentence, &d).unwrap();
            let n = decide_strengthen(&e.sentence.negate(), &d).unwrap();
            let mapped = match n.outcome {
                Outcome::True => Outcome::False,
                Outcome::DeltaFalse => Outcome::DeltaTrue,
                o => o,
            };
            assert_eq!(w.outcome, mapped, "{}", e.name);
            assert_eq!((&w.k, &w.delta_prime, &w.approx), (&n.k, &n.delta_prime, &n.approx), "{}", e.name);
        }
    }
}

#[test]
fn printing_round_trips() {
    for e in load_corpus() {
        let again = parse_sentence(&e.sentence.to_string()).unwrap();
        assert_eq!(again, e.sentence, "{}", e.name);
    }
}

#[test]
fn alpha_size_is_linear() {
    for e in load_corpus() {
        let a = alpha_of_sentence(&e.sentence);
        assert!(a.term().node_count() <= 2 * e.sentence.formula().node_count(), "{}", e.name);
    }
}
