mod common;

use common::{q, qbf_truth, random_qbf};
use ddecide_core::{decide_strengthen, parse_sentence, qbf_encode, Delta, Outcome, QbfInstance};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn qdimacs_text_round_trips() {
    for seed in 0..64 {
        let inst = random_qbf(&mut ChaCha8Rng::seed_from_u64(seed), 3, 4);
        assert_eq!(QbfInstance::parse_qdimacs(&inst.to_string()).unwrap(), inst);
    }
}

#[test]
fn encodings_reparse() {
    for seed in 0..64 {
        let s = qbf_encode(&random_qbf(&mut ChaCha8Rng::seed_from_u64(seed), 3, 4));
        assert_eq!(parse_sentence(&s.to_string()).unwrap(), s);
    }
}

#[test]
fn encoding_size_is_linear() {
    for seed in 0..64 {
        let inst = random_qbf(&mut ChaCha8Rng::seed_from_u64(seed), 3, 4);
        let lits: usize = inst.clauses.iter().map(Vec::len).sum();
        let n = inst.num_vars as usize;
        let nodes = qbf_encode(&inst).formula().node_count();
        assert!(nodes <= 5 * lits + inst.clauses.len() + 13 * n + 1, "seed {seed}: {nodes}");
    }
}

#[test]
fn larger_instance_from_text() {
    // ∀a ∃b ∀c ∃d. (a ∨ b) ∧ (¬a ∨ ¬b) ∧ (c ∨ d) ∧ (¬c ∨ ¬d): b = ¬a, d = ¬c.
    let text = "c alternation\np cnf 4 4\na 1 0\ne 2 0\na 3 0\ne 4 0\n1 2 0\n-1 -2 0\n3 4 0\n-3 -4 0\n";
    let inst = QbfInstance::parse_qdimacs(text).unwrap();
    assert!(qbf_truth(&inst));
    let d = Delta::new(q(1, 4)).unwrap();
    assert_eq!(decide_strengthen(&qbf_encode(&inst), &d).unwrap().outcome, Outcome::True);

    // Swapping the last two quantifiers lets the universal player pick c = d.
    let flipped = text.replace("a 3 0\ne 4 0", "e 4 0\na 3 0");
    let inst = QbfInstance::parse_qdimacs(&flipped).unwrap();
    assert!(!qbf_truth(&inst));
    assert_eq!(decide_strengthen(&qbf_encode(&inst), &d).unwrap().outcome, Outcome::DeltaFalse);
}
