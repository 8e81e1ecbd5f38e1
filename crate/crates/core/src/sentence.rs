//! Well-formedness checking and the closed [`Sentence`] wrapper.

use std::fmt;

use thiserror::Error;

use crate::formula::{Bounded, Formula, Term};
use crate::Rational;

/// First well-formedness violation found in a formula.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{message} at {location}: {subterm}")]
pub struct Diagnostic {
    pub message: String,
    /// Path from the root, e.g. `forall x0 / exists x1 / and.1 / atom`.
    pub location: String,
    pub subterm: String,
}

/// A closed, well-formed, bounded formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sentence(Formula);

impl Sentence {
    pub fn new(formula: Formula) -> Result<Sentence, Diagnostic> {
        check_well_formed(&formula)?;
        Ok(Sentence(formula))
    }

    pub fn formula(&self) -> &Formula {
        &self.0
    }

    pub fn into_formula(self) -> Formula {
        self.0
    }

    // The syntactic transformations never introduce free variables, so the
    // results are sentences again.

    pub fn negate(&self) -> Sentence {
        Sentence(self.0.negate())
    }

    pub fn strengthen(&self, delta: &Rational) -> Sentence {
        Sentence(self.0.strengthen(delta))
    }

    pub fn weaken(&self, delta: &Rational) -> Sentence {
        Sentence(self.0.weaken(delta))
    }

    pub fn strictify(&self) -> Sentence {
        Sentence(self.0.strictify())
    }

    pub fn destrictify(&self) -> Sentence {
        Sentence(self.0.destrictify())
    }

    pub fn rescale_unit(&self) -> Sentence {
        Sentence(self.0.rescale_unit())
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn check_term(t: &Term, depth: usize, path: &str) -> Result<(), Diagnostic> {
    match t {
        Term::Var(i) if *i >= depth => Err(Diagnostic {
            message: format!("not a sentence: free variable x{i}"),
            location: path.to_string(),
            subterm: t.to_string(),
        }),
        Term::Var(_) => Ok(()),
        Term::Apply(f, args) => {
            if f.arity() != args.len() {
                return Err(Diagnostic {
                    message: format!("{} expects {} argument(s), got {}", f.name(), f.arity(), args.len()),
                    location: path.to_string(),
                    subterm: t.to_string(),
                });
            }
            args.iter().try_for_each(|a| check_term(a, depth, path))
        }
    }
}

fn check_bounded(q: &Bounded, kind: &str, depth: usize, path: &str) -> Result<(), Diagnostic> {
    let here = format!("{path}{kind} x{}", q.var);
    if q.var != depth {
        return Err(Diagnostic {
            message: format!("quantifier at depth {depth} binds x{} (expected x{depth})", q.var),
            location: here,
            subterm: format!("x{}", q.var),
        });
    }
    for (bound, which) in [(&q.lower, "lower"), (&q.upper, "upper")] {
        if bound.mentions(q.var) {
            return Err(Diagnostic {
                message: format!("bound mentions bound variable x{}", q.var),
                location: format!("{here} / {which} bound"),
                subterm: bound.to_string(),
            });
        }
        check_term(bound, depth, &format!("{here} / {which} bound"))?;
    }
    check(&q.body, depth + 1, &format!("{here} / "))
}

fn check(f: &Formula, depth: usize, path: &str) -> Result<(), Diagnostic> {
    match f {
        Formula::Atomic(a) => check_term(&a.term, depth, &format!("{path}atom")),
        Formula::And(a, b) => {
            check(a, depth, &format!("{path}and.0 / "))?;
            check(b, depth, &format!("{path}and.1 / "))
        }
        Formula::Or(a, b) => {
            check(a, depth, &format!("{path}or.0 / "))?;
            check(b, depth, &format!("{path}or.1 / "))
        }
        Formula::Exists(q) => check_bounded(q, "exists", depth, path),
        Formula::Forall(q) => check_bounded(q, "forall", depth, path),
    }
}

/// Check closedness, quantifier scoping and arities.
pub fn check_well_formed(f: &Formula) -> Result<(), Diagnostic> {
    check(f, 0, "")
}

/// Advisory notes about quantifier bounds that may be reversed at runtime.
///
/// Reversed bounds `[u, v]` with `v < u` are evaluated as `[v, u]`; when that
/// is not intended, add `u <= v` to the body explicitly.
pub fn lint_bounds(f: &Formula) -> Vec<String> {
    let mut notes = Vec::new();
    fn walk(f: &Formula, notes: &mut Vec<String>) {
        match f {
            Formula::Atomic(_) => {}
            Formula::And(a, b) | Formula::Or(a, b) => {
                walk(a, notes);
                walk(b, notes);
            }
            Formula::Exists(q) | Formula::Forall(q) => {
                match (q.lower.as_const(), q.upper.as_const()) {
                    (Some(u), Some(v)) if v < u => notes.push(format!(
                        "x{}: upper bound {} is below lower bound {}; the range is read as [{}, {}]",
                        q.var, q.upper, q.lower, q.upper, q.lower
                    )),
                    (Some(_), Some(_)) => {}
                    _ => notes.push(format!(
                        "x{}: bounds [{}, {}] depend on outer variables; where they cross, the \
                         range is read as their hull (add (<= {} {}) to rule this out)",
                        q.var, q.lower, q.upper, q.lower, q.upper
                    )),
                }
                walk(&q.body, notes);
            }
        }
    }
    walk(f, &mut notes);
    notes
}
