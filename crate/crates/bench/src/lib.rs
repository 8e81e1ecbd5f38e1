//! Workloads shared by the solver benchmarks.

use ddecide_core::qbf::Quantifier;
use ddecide_core::{parse_sentence, QbfInstance, Sentence};

/// Named sentences of increasing quantifier depth.
pub fn sentences() -> Vec<(&'static str, Sentence)> {
    [
        ("exists-linear", "(exists (x 0 1) (> x 0))"),
        ("cos-window", "(exists (x 0 3) (and (> (cos x) 1/2) (> x 1/2)))"),
        ("nested-example", "(forall (x 0 1) (exists (y 0 x) (and (> (exp x) 0) (>= y 0))))"),
        ("sine-product", "(forall (x 0 1) (exists (y 0 1) (> (- (* x y) (sin (* 3 x))) -1)))"),
        ("three-levels", "(forall (x -1 1) (exists (y -1 1) (forall (z 0 1) (>= (+ (* x y) (* z z) 1) 0))))"),
    ]
    .into_iter()
    .map(|(name, text)| (name, parse_sentence(text).expect("benchmark sentence parses")))
    .collect()
}

/// `∀a1 ∃b1 ... ∀an ∃bn. ∧ (ai ∨ bi) ∧ (¬ai ∨ ¬bi)`: true, with `bi = ¬ai`.
pub fn alternating_qbf(pairs: u32) -> QbfInstance {
    let mut prefix = Vec::new();
    let mut clauses = Vec::new();
    for i in 0..pairs {
        let (a, b) = (2 * i + 1, 2 * i + 2);
        prefix.push((Quantifier::Forall, a));
        prefix.push((Quantifier::Exists, b));
        clauses.push(vec![a as i32, b as i32]);
        clauses.push(vec![-(a as i32), -(b as i32)]);
    }
    QbfInstance::new(2 * pairs, prefix, clauses).expect("valid instance")
}
