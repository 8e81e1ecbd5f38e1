//! Translation of bounded sentences into a single term over the signature
//! extended with binary and bounded `min`/`max`.
//!
//! For the translated term `α(φ)`:
//!
//! * `de(φ)` holds iff `α(φ) >= 0`, and `st(φ)` holds iff `α(φ) > 0`;
//! * `de(φ^{+δ})` holds iff `α(φ) >= δ`, and `st(φ^{+δ})` iff `α(φ) > δ`.

use std::fmt;

use crate::formula::{write_rational, Formula, FuncSym, Term};
use crate::sentence::Sentence;

/// `min`/`max` of `body` over `var ∈ [lower, upper]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Optimum {
    pub var: usize,
    pub lower: AlphaTerm,
    pub upper: AlphaTerm,
    pub body: AlphaTerm,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlphaTerm {
    Var(usize),
    Apply(FuncSym, Vec<AlphaTerm>),
    MinOver(Box<Optimum>),
    MaxOver(Box<Optimum>),
}

impl AlphaTerm {
    pub fn from_term(t: &Term) -> AlphaTerm {
        match t {
            Term::Var(i) => AlphaTerm::Var(*i),
            Term::Apply(f, args) => AlphaTerm::Apply(f.clone(), args.iter().map(AlphaTerm::from_term).collect()),
        }
    }

    pub fn min2(a: AlphaTerm, b: AlphaTerm) -> AlphaTerm {
        AlphaTerm::Apply(FuncSym::Min2, vec![a, b])
    }

    pub fn max2(a: AlphaTerm, b: AlphaTerm) -> AlphaTerm {
        AlphaTerm::Apply(FuncSym::Max2, vec![a, b])
    }

    pub fn node_count(&self) -> usize {
        match self {
            AlphaTerm::Var(_) => 1,
            AlphaTerm::Apply(_, args) => 1 + args.iter().map(AlphaTerm::node_count).sum::<usize>(),
            AlphaTerm::MinOver(o) | AlphaTerm::MaxOver(o) => {
                1 + o.lower.node_count() + o.upper.node_count() + o.body.node_count()
            }
        }
    }

    /// Whether every variable is bound by an enclosing `MinOver`/`MaxOver`,
    /// given `depth` binders already in scope.
    pub fn is_closed_at(&self, depth: usize) -> bool {
        match self {
            AlphaTerm::Var(i) => *i < depth,
            AlphaTerm::Apply(_, args) => args.iter().all(|a| a.is_closed_at(depth)),
            AlphaTerm::MinOver(o) | AlphaTerm::MaxOver(o) => {
                o.var == depth
                    && o.lower.is_closed_at(depth)
                    && o.upper.is_closed_at(depth)
                    && o.body.is_closed_at(depth + 1)
            }
        }
    }

    /// Maximum nesting of bounded optimizers.
    pub fn optimizer_depth(&self) -> usize {
        match self {
            AlphaTerm::Var(_) => 0,
            AlphaTerm::Apply(_, args) => args.iter().map(AlphaTerm::optimizer_depth).max().unwrap_or(0),
            AlphaTerm::MinOver(o) | AlphaTerm::MaxOver(o) => {
                let bounds = o.lower.optimizer_depth().max(o.upper.optimizer_depth());
                bounds.max(1 + o.body.optimizer_depth())
            }
        }
    }
}

/// Structural translation: atoms to their term, `∧` to `min`, `∨` to `max`,
/// `∃` to bounded `max`, `∀` to bounded `min`.
pub fn alpha(phi: &Formula) -> AlphaTerm {
    match phi {
        Formula::Atomic(a) => AlphaTerm::from_term(&a.term),
        Formula::And(a, b) => AlphaTerm::min2(alpha(a), alpha(b)),
        Formula::Or(a, b) => AlphaTerm::max2(alpha(a), alpha(b)),
        Formula::Exists(q) => AlphaTerm::MaxOver(Box::new(Optimum {
            var: q.var,
            lower: AlphaTerm::from_term(&q.lower),
            upper: AlphaTerm::from_term(&q.upper),
            body: alpha(&q.body),
        })),
        Formula::Forall(q) => AlphaTerm::MinOver(Box::new(Optimum {
            var: q.var,
            lower: AlphaTerm::from_term(&q.lower),
            upper: AlphaTerm::from_term(&q.upper),
            body: alpha(&q.body),
        })),
    }
}

/// A closed α-term: denotes a single real number.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosedAlphaTerm(AlphaTerm);

impl ClosedAlphaTerm {
    pub fn new(t: AlphaTerm) -> Option<ClosedAlphaTerm> {
        t.is_closed_at(0).then_some(ClosedAlphaTerm(t))
    }

    pub fn term(&self) -> &AlphaTerm {
        &self.0
    }
}

impl fmt::Display for ClosedAlphaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn alpha_of_sentence(phi: &Sentence) -> ClosedAlphaTerm {
    ClosedAlphaTerm::new(alpha(phi.formula())).expect("translation of a sentence is closed")
}

impl fmt::Display for AlphaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaTerm::Var(i) => write!(f, "x{i}"),
            AlphaTerm::Apply(FuncSym::ConstRat(q), _) => write_rational(f, q),
            AlphaTerm::Apply(FuncSym::ConstPi, _) => write!(f, "pi"),
            AlphaTerm::Apply(sym, args) => {
                write!(f, "({}", sym.name())?;
                for a in args {
                    write!(f, " {a}")?;
                }
                if let FuncSym::PowInt(n) = sym {
                    write!(f, " {n}")?;
                }
                write!(f, ")")
            }
            AlphaTerm::MinOver(o) => write!(f, "(min_over (x{} {} {}) {})", o.var, o.lower, o.upper, o.body),
            AlphaTerm::MaxOver(o) => write!(f, "(max_over (x{} {} {}) {})", o.var, o.lower, o.upper, o.body),
        }
    }
}
