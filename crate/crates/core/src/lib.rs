//! δ-decision procedure for bounded first-order sentences over the reals
//! with elementary functions.
//!
//! A sentence is translated into a closed term built from the signature and
//! bounded `min`/`max` ([`alpha`]); that term is evaluated to a requested
//! dyadic accuracy by interval branch-and-bound ([`optimizer`]), and the
//! approximation is compared with a threshold ([`decide`]).

pub mod alpha;
pub mod decide;
pub mod dyadic;
pub mod elementary;
pub mod formula;
pub mod interval;
pub mod optimizer;
pub mod qbf;
pub mod sentence;
pub mod syntax;

pub type Rational = num_rational::BigRational;

pub use alpha::{alpha, alpha_of_sentence, AlphaTerm, ClosedAlphaTerm, Optimum};
pub use decide::{
    choose_delta_prime, choose_k, decide, decide_robust, decide_strengthen, decide_weaken, DecideError, DecideOptions,
    Delta, Mode, Outcome, Verdict,
};
pub use dyadic::Dyadic;
pub use formula::{Atom, AtomKind, Formula, FuncSym, Relation, Term};
pub use interval::{DomainError, Interval, Precision};
pub use optimizer::{enclose, eval_closed, ClosedEval, Enclosure, Env, EvalBudget, EvalConfig, EvalError, Status, TraceRecord};
pub use qbf::{qbf_encode, QbfInstance};
pub use sentence::{check_well_formed, lint_bounds, Diagnostic, Sentence};
pub use syntax::{parse_rational, parse_sentence, ParseError};
