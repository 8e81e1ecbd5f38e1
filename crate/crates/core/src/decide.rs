//! The δ-decision driver.
//!
//! For a sentence `φ` and `δ > 0`, [`decide_strengthen`] answers either
//! `True` (φ holds) or `DeltaFalse` (φ strengthened by δ fails); both may be
//! correct at once. [`decide_weaken`] is the dual, and [`decide_robust`]
//! turns the weakened answer into an exact one for sentences the caller
//! promises are δ-robust.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::alpha::alpha_of_sentence;
use crate::dyadic::Dyadic;
use crate::interval::Interval;
use crate::optimizer::{eval_closed, EvalConfig, EvalError, Status, TraceSink};
use crate::sentence::Sentence;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("delta must be positive, got {0}")]
    NonPositiveDelta(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// A positive rational accuracy parameter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Delta(Rational);

impl Delta {
    pub fn new(value: Rational) -> Result<Delta, DecideError> {
        if value.is_positive() {
            Ok(Delta(value))
        } else {
            Err(DecideError::NonPositiveDelta(rational_string(&value)))
        }
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }
}

pub(crate) fn rational_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Dyadic `δ'` with `|δ' - δ| < δ/8`: `δ` rounded down to the grid
/// `2^-e`, where `e` is the least integer with `2^e ≥ 8/δ`.
pub fn choose_delta_prime(delta: &Delta) -> Dyadic {
    let d = delta.value();
    let eight = Rational::from_integer(BigInt::from(8));
    let scaled = |e: i64| {
        if e >= 0 {
            d * Rational::from_integer(BigInt::one() << e as usize)
        } else {
            d / Rational::from_integer(BigInt::one() << (-e) as usize)
        }
    };
    let mut e = d.denom().bits() as i64 - d.numer().bits() as i64 + 3;
    while scaled(e) < eight {
        e += 1;
    }
    while scaled(e - 1) >= eight {
        e -= 1;
    }
    Dyadic::new(scaled(e).floor().to_integer(), -e)
}

/// Least `k ≥ 0` with `2^-k < δ'/4`.
pub fn choose_k(delta_prime: &Dyadic) -> u32 {
    assert!(delta_prime.is_positive(), "delta' must be positive");
    let quarter = delta_prime.shl(-2);
    let mut k = (-quarter.magnitude_bits()).max(0) as u32;
    while Dyadic::pow2(-(k as i64)) >= quarter {
        k += 1;
    }
    while k > 0 && Dyadic::pow2(-(k as i64 - 1)) < quarter {
        k -= 1;
    }
    k
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Strengthen,
    Weaken,
    Robust,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Mode, String> {
        match s {
            "strengthen" => Ok(Mode::Strengthen),
            "weaken" => Ok(Mode::Weaken),
            "robust" => Ok(Mode::Robust),
            _ => Err(format!("unknown mode '{s}' (expected strengthen, weaken or robust)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Outcome {
    True,
    DeltaFalse,
    DeltaTrue,
    False,
    RobustTrue,
    RobustFalse,
    /// The evaluation budget ran out before the approximation converged.
    Unknown,
}

impl Outcome {
    pub fn is_true(self) -> bool {
        matches!(self, Outcome::True | Outcome::DeltaTrue | Outcome::RobustTrue)
    }

    pub fn is_false(self) -> bool {
        matches!(self, Outcome::False | Outcome::DeltaFalse | Outcome::RobustFalse)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub mode: Mode,
    pub delta: Rational,
    pub delta_prime: Dyadic,
    pub k: u32,
    /// Approximation of the α-term that was compared with `threshold`; for
    /// weaken and robust modes this is the term of the negated sentence.
    pub approx: Dyadic,
    pub threshold: Dyadic,
    pub status: Status,
    pub enclosure: Interval,
    pub wall_time_ms: u64,
}

#[derive(Serialize)]
struct VerdictJson<'a> {
    outcome: Outcome,
    mode: Mode,
    delta: String,
    delta_prime: String,
    k: u32,
    approx: String,
    threshold: String,
    status: Status,
    enclosure: [String; 2],
    wall_time_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'a str>,
}

impl Verdict {
    pub fn to_json(&self) -> serde_json::Value {
        let note = (self.outcome == Outcome::Unknown)
            .then_some("evaluation did not reach 2^-k; retry with a larger --budget or a smaller --tolerance-bits");
        serde_json::to_value(VerdictJson {
            outcome: self.outcome,
            mode: self.mode,
            delta: rational_string(&self.delta),
            delta_prime: self.delta_prime.to_string(),
            k: self.k,
            approx: self.approx.to_string(),
            threshold: self.threshold.to_string(),
            status: self.status,
            enclosure: [self.enclosure.lo().to_string(), self.enclosure.hi().to_string()],
            wall_time_ms: self.wall_time_ms,
            note,
        })
        .expect("verdict serializes")
    }

    /// Equality ignoring wall time.
    pub fn same_decision(&self, other: &Verdict) -> bool {
        Verdict { wall_time_ms: 0, ..self.clone() } == Verdict { wall_time_ms: 0, ..other.clone() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecideOptions {
    /// Lower bound on `k`; the computed `k` is used when it is larger.
    pub tolerance_bits: Option<u32>,
    pub config: EvalConfig,
}

fn run_strengthen(phi: &Sentence, delta: &Delta, opts: &DecideOptions, trace: Option<TraceSink<'_>>) -> Result<Verdict, DecideError> {
    let start = Instant::now();
    let delta_prime = choose_delta_prime(delta);
    let k = choose_k(&delta_prime).max(opts.tolerance_bits.unwrap_or(0));
    let threshold = delta_prime.shl(-1);
    let r = eval_closed(&alpha_of_sentence(phi), k, &opts.config, trace)?;
    // With |approx - α| ≤ 2^-k < δ'/4: approx ≥ δ'/2 gives α > 0, otherwise
    // α < 3δ'/4 < δ.
    let outcome = match r.status {
        Status::Converged if r.value >= threshold => Outcome::True,
        Status::Converged => Outcome::DeltaFalse,
        _ => Outcome::Unknown,
    };
    Ok(Verdict {
        outcome,
        mode: Mode::Strengthen,
        delta: delta.value().clone(),
        delta_prime,
        k,
        approx: r.value,
        threshold,
        status: r.status,
        enclosure: r.enclosure,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

/// Dispatch on `mode`, optionally streaming optimizer trace records.
pub fn decide(phi: &Sentence, delta: &Delta, mode: Mode, opts: &DecideOptions, trace: Option<TraceSink<'_>>) -> Result<Verdict, DecideError> {
    match mode {
        Mode::Strengthen => run_strengthen(phi, delta, opts, trace),
        Mode::Weaken | Mode::Robust => {
            let mut v = run_strengthen(&phi.negate(), delta, opts, trace)?;
            v.outcome = match (mode, v.outcome) {
                (Mode::Weaken, Outcome::True) => Outcome::False,
                (Mode::Weaken, Outcome::DeltaFalse) => Outcome::DeltaTrue,
                (Mode::Robust, Outcome::True) => Outcome::RobustFalse,
                (Mode::Robust, Outcome::DeltaFalse) => Outcome::RobustTrue,
                (_, o) => o,
            };
            v.mode = mode;
            Ok(v)
        }
    }
}

pub fn decide_strengthen(phi: &Sentence, delta: &Delta) -> Result<Verdict, DecideError> {
    decide(phi, delta, Mode::Strengthen, &DecideOptions::default(), None)
}

pub fn decide_weaken(phi: &Sentence, delta: &Delta) -> Result<Verdict, DecideError> {
    decide(phi, delta, Mode::Weaken, &DecideOptions::default(), None)
}

/// Exact answer under the caller's promise that `φ` is δ-robust, i.e. that
/// φ weakened by δ implies φ. Without the promise `RobustTrue` may be wrong.
pub fn decide_robust(phi: &Sentence, delta: &Delta) -> Result<Verdict, DecideError> {
    decide(phi, delta, Mode::Robust, &DecideOptions::default(), None)
}
