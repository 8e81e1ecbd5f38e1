//! Terms, atoms and bounded formulas, with the syntactic transformations
//! defined on them.
//!
//! Variables are de Bruijn levels: the quantifier at nesting depth `d` binds
//! `Var(d)`, so substitution never needs renaming. Names exist only at the
//! parser/printer boundary.
//!
//! Terms are built through folding constructors ([`Term::neg`],
//! [`Term::add`], [`Term::sub`], [`Term::mul`]) which keep them in a small
//! normal form:
//!
//! * `-(-t) = t`, `-(a + b) = -a - b`, `-(a - b) = -a + b`, `-(q) = (-q)`
//! * `t + 0 = 0 + t = t - 0 = t`, `0 - t = -t`
//! * `1 * t = t * 1 = t`
//! * constant-constant arithmetic is evaluated exactly.
//!
//! With this normal form negation of formulas is an involution, and
//! `negate(strengthen(φ, δ)) == weaken(negate(φ), δ)` holds syntactically.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed};

use crate::Rational;

/// Function symbols of the signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FuncSym {
    Neg,
    Add,
    Sub,
    Mul,
    Div,
    Abs,
    Min2,
    Max2,
    Exp,
    Sin,
    Cos,
    Atan,
    Sqrt,
    PowInt(u32),
    ConstRat(Rational),
    ConstPi,
}

impl FuncSym {
    pub fn arity(&self) -> usize {
        use FuncSym::*;
        match self {
            ConstRat(_) | ConstPi => 0,
            Neg | Abs | Exp | Sin | Cos | Atan | Sqrt | PowInt(_) => 1,
            Add | Sub | Mul | Div | Min2 | Max2 => 2,
        }
    }

    /// Partial symbols can fail with a domain violation at evaluation time.
    pub fn is_partial(&self) -> bool {
        matches!(self, FuncSym::Div | FuncSym::Sqrt)
    }

    /// Surface-syntax operator name.
    pub fn name(&self) -> &'static str {
        use FuncSym::*;
        match self {
            Neg | Sub => "-",
            Add => "+",
            Mul => "*",
            Div => "/",
            Abs => "abs",
            Min2 => "min",
            Max2 => "max",
            Exp => "exp",
            Sin => "sin",
            Cos => "cos",
            Atan => "atan",
            Sqrt => "sqrt",
            PowInt(_) => "pow",
            ConstRat(_) => "const",
            ConstPi => "pi",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Apply(FuncSym, Arc<[Term]>),
}

// Smart constructors that fold constants, not operator impls.
#[allow(clippy::should_implement_trait)]
impl Term {
    pub fn var(level: usize) -> Term {
        Term::Var(level)
    }

    pub fn constant(q: Rational) -> Term {
        Term::Apply(FuncSym::ConstRat(q), Arc::from(Vec::new()))
    }

    pub fn int(v: i64) -> Term {
        Term::constant(Rational::from_integer(v.into()))
    }

    pub fn pi() -> Term {
        Term::Apply(FuncSym::ConstPi, Arc::from(Vec::new()))
    }

    /// Raw application with no folding. Panics on arity mismatch.
    pub fn apply(f: FuncSym, args: Vec<Term>) -> Term {
        assert_eq!(f.arity(), args.len(), "arity mismatch for {}", f.name());
        Term::Apply(f, Arc::from(args))
    }

    pub fn as_const(&self) -> Option<&Rational> {
        match self {
            Term::Apply(FuncSym::ConstRat(q), _) => Some(q),
            _ => None,
        }
    }

    fn is_const_value(&self, v: i64) -> bool {
        self.as_const().is_some_and(|q| *q == Rational::from_integer(v.into()))
    }

    fn unary(&self, f: &FuncSym) -> Option<&Term> {
        match self {
            Term::Apply(g, args) if g == f && args.len() == 1 => Some(&args[0]),
            _ => None,
        }
    }

    fn binary(&self, f: &FuncSym) -> Option<(&Term, &Term)> {
        match self {
            Term::Apply(g, args) if g == f && args.len() == 2 => Some((&args[0], &args[1])),
            _ => None,
        }
    }

    pub fn neg(t: Term) -> Term {
        if let Some(q) = t.as_const() {
            return Term::constant(-q);
        }
        if let Some(inner) = t.unary(&FuncSym::Neg) {
            return inner.clone();
        }
        if let Some((a, b)) = t.binary(&FuncSym::Add) {
            return Term::sub(Term::neg(a.clone()), b.clone());
        }
        if let Some((a, b)) = t.binary(&FuncSym::Sub) {
            return Term::add(Term::neg(a.clone()), b.clone());
        }
        Term::apply(FuncSym::Neg, vec![t])
    }

    pub fn add(a: Term, b: Term) -> Term {
        if let (Some(x), Some(y)) = (a.as_const(), b.as_const()) {
            return Term::constant(x + y);
        }
        if a.is_const_value(0) {
            return b;
        }
        if b.is_const_value(0) {
            return a;
        }
        Term::apply(FuncSym::Add, vec![a, b])
    }

    pub fn sub(a: Term, b: Term) -> Term {
        if let (Some(x), Some(y)) = (a.as_const(), b.as_const()) {
            return Term::constant(x - y);
        }
        if b.is_const_value(0) {
            return a;
        }
        if a.is_const_value(0) {
            return Term::neg(b);
        }
        Term::apply(FuncSym::Sub, vec![a, b])
    }

    pub fn mul(a: Term, b: Term) -> Term {
        if let (Some(x), Some(y)) = (a.as_const(), b.as_const()) {
            return Term::constant(x * y);
        }
        if a.is_const_value(1) {
            return b;
        }
        if b.is_const_value(1) {
            return a;
        }
        Term::apply(FuncSym::Mul, vec![a, b])
    }

    /// Application through the folding constructors where one exists.
    pub fn build(f: FuncSym, mut args: Vec<Term>) -> Term {
        match f {
            FuncSym::Neg if args.len() == 1 => Term::neg(args.remove(0)),
            FuncSym::Add if args.len() == 2 => {
                let b = args.remove(1);
                Term::add(args.remove(0), b)
            }
            FuncSym::Sub if args.len() == 2 => {
                let b = args.remove(1);
                Term::sub(args.remove(0), b)
            }
            FuncSym::Mul if args.len() == 2 => {
                let b = args.remove(1);
                Term::mul(args.remove(0), b)
            }
            f => Term::apply(f, args),
        }
    }

    pub fn abs(t: Term) -> Term {
        Term::apply(FuncSym::Abs, vec![t])
    }

    /// Replace `Var(i)` by `subst[i]` for every `i < subst.len()`.
    pub fn substitute(&self, subst: &[Term]) -> Term {
        match self {
            Term::Var(i) => subst.get(*i).cloned().unwrap_or(Term::Var(*i)),
            Term::Apply(f, args) => {
                let args = args.iter().map(|a| a.substitute(subst)).collect();
                Term::build(f.clone(), args)
            }
        }
    }

    /// Largest variable level mentioned, if any.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Term::Var(i) => Some(*i),
            Term::Apply(_, args) => args.iter().filter_map(Term::max_var).max(),
        }
    }

    pub fn mentions(&self, level: usize) -> bool {
        match self {
            Term::Var(i) => *i == level,
            Term::Apply(_, args) => args.iter().any(|a| a.mentions(level)),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Apply(_, args) => 1 + args.iter().map(Term::node_count).sum::<usize>(),
        }
    }
}

pub(crate) fn write_rational(f: &mut fmt::Formatter<'_>, q: &Rational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// Writes `(op arg...)` in the surface syntax; variables print as `x<level>`.
pub(crate) fn write_term(f: &mut fmt::Formatter<'_>, t: &Term) -> fmt::Result {
    match t {
        Term::Var(i) => write!(f, "x{i}"),
        Term::Apply(FuncSym::ConstRat(q), _) => write_rational(f, q),
        Term::Apply(FuncSym::ConstPi, _) => write!(f, "pi"),
        Term::Apply(sym, args) => {
            write!(f, "({}", sym.name())?;
            for a in args.iter() {
                write!(f, " ")?;
                write_term(f, a)?;
            }
            if let FuncSym::PowInt(n) = sym {
                write!(f, " {n}")?;
            }
            write!(f, ")")
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self)
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AtomKind {
    /// `t > 0`
    Strict,
    /// `t >= 0`
    NonStrict,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Atom {
    pub term: Term,
    pub kind: AtomKind,
}

impl Atom {
    pub fn strict(term: Term) -> Atom {
        Atom { term, kind: AtomKind::Strict }
    }

    pub fn non_strict(term: Term) -> Atom {
        Atom { term, kind: AtomKind::NonStrict }
    }
}

/// Relations accepted on the surface before normalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Lt,
    Le,
    Gt,
    Ge,
    NotGt,
    NotGe,
}

/// Rewrite `t rel 0` into one of the two canonical atom kinds.
pub fn normalize_atom(relation: Relation, t: Term) -> Atom {
    match relation {
        Relation::Eq => Atom::non_strict(Term::neg(Term::abs(t))),
        Relation::Lt | Relation::NotGe => Atom::strict(Term::neg(t)),
        Relation::Le | Relation::NotGt => Atom::non_strict(Term::neg(t)),
        Relation::Gt => Atom::strict(t),
        Relation::Ge => Atom::non_strict(t),
    }
}

/// A bounded quantifier `Q x ∈ [lower, upper]. body`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bounded {
    pub var: usize,
    pub lower: Term,
    pub upper: Term,
    pub body: Box<Formula>,
}

/// Negation-free formula over canonical atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atomic(Atom),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Exists(Bounded),
    Forall(Bounded),
}

impl Formula {
    pub fn atom(a: Atom) -> Formula {
        Formula::Atomic(a)
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn exists(var: usize, lower: Term, upper: Term, body: Formula) -> Formula {
        Formula::Exists(Bounded { var, lower, upper, body: Box::new(body) })
    }

    pub fn forall(var: usize, lower: Term, upper: Term, body: Formula) -> Formula {
        Formula::Forall(Bounded { var, lower, upper, body: Box::new(body) })
    }

    /// Right-folded conjunction; `None` for an empty list.
    pub fn conjunction(parts: Vec<Formula>) -> Option<Formula> {
        parts.into_iter().rev().reduce(|acc, f| Formula::and(f, acc))
    }

    pub fn disjunction(parts: Vec<Formula>) -> Option<Formula> {
        parts.into_iter().rev().reduce(|acc, f| Formula::or(f, acc))
    }

    /// Map every atom, keeping the quantifier structure and bounds.
    pub fn map_atoms(&self, f: &mut impl FnMut(&Atom) -> Atom) -> Formula {
        match self {
            Formula::Atomic(a) => Formula::Atomic(f(a)),
            Formula::And(a, b) => Formula::and(a.map_atoms(f), b.map_atoms(f)),
            Formula::Or(a, b) => Formula::or(a.map_atoms(f), b.map_atoms(f)),
            Formula::Exists(q) => Formula::Exists(q.map_body(|b| b.map_atoms(f))),
            Formula::Forall(q) => Formula::Forall(q.map_body(|b| b.map_atoms(f))),
        }
    }

    /// Defined negation: flips atoms, swaps connectives and quantifiers.
    pub fn negate(&self) -> Formula {
        match self {
            Formula::Atomic(a) => Formula::Atomic(match a.kind {
                AtomKind::Strict => Atom::non_strict(Term::neg(a.term.clone())),
                AtomKind::NonStrict => Atom::strict(Term::neg(a.term.clone())),
            }),
            Formula::And(a, b) => Formula::or(a.negate(), b.negate()),
            Formula::Or(a, b) => Formula::and(a.negate(), b.negate()),
            Formula::Exists(q) => Formula::Forall(q.map_body(|b| b.negate())),
            Formula::Forall(q) => Formula::Exists(q.map_body(|b| b.negate())),
        }
    }

    /// `t > 0` becomes `t - δ > 0` (and likewise for `>=`).
    pub fn strengthen(&self, delta: &Rational) -> Formula {
        debug_assert!(!delta.is_negative());
        let d = Term::constant(delta.clone());
        self.map_atoms(&mut |a| Atom { term: Term::sub(a.term.clone(), d.clone()), kind: a.kind })
    }

    /// `t > 0` becomes `t + δ > 0` (and likewise for `>=`).
    pub fn weaken(&self, delta: &Rational) -> Formula {
        debug_assert!(!delta.is_negative());
        let d = Term::constant(delta.clone());
        self.map_atoms(&mut |a| Atom { term: Term::add(a.term.clone(), d.clone()), kind: a.kind })
    }

    pub fn strictify(&self) -> Formula {
        self.map_atoms(&mut |a| Atom::strict(a.term.clone()))
    }

    pub fn destrictify(&self) -> Formula {
        self.map_atoms(&mut |a| Atom::non_strict(a.term.clone()))
    }

    /// Rescale every quantifier to range over `[0, 1]`: `x ∈ [u, v]` becomes
    /// `x ∈ [0, 1]` with `x` replaced by `u + (v - u)·x` in the body.
    pub fn rescale_unit(&self) -> Formula {
        fn go(f: &Formula, subst: &mut Vec<Term>) -> Formula {
            match f {
                Formula::Atomic(a) => Formula::Atomic(Atom { term: a.term.substitute(subst), kind: a.kind }),
                Formula::And(a, b) => Formula::and(go(a, subst), go(b, subst)),
                Formula::Or(a, b) => Formula::or(go(a, subst), go(b, subst)),
                Formula::Exists(q) | Formula::Forall(q) => {
                    let lower = q.lower.substitute(subst);
                    let upper = q.upper.substitute(subst);
                    let image =
                        Term::add(lower.clone(), Term::mul(Term::sub(upper, lower), Term::var(q.var)));
                    subst.truncate(q.var);
                    subst.push(image);
                    let body = go(&q.body, subst);
                    subst.truncate(q.var);
                    let rescaled = Bounded { var: q.var, lower: Term::int(0), upper: Term::int(1), body: Box::new(body) };
                    match f {
                        Formula::Exists(_) => Formula::Exists(rescaled),
                        _ => Formula::Forall(rescaled),
                    }
                }
            }
        }
        go(self, &mut Vec::new())
    }

    /// Nodes in the formula tree, counting atom terms and quantifier bounds.
    pub fn node_count(&self) -> usize {
        match self {
            Formula::Atomic(a) => 1 + a.term.node_count(),
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.node_count() + b.node_count(),
            Formula::Exists(q) | Formula::Forall(q) => {
                1 + q.lower.node_count() + q.upper.node_count() + q.body.node_count()
            }
        }
    }

    /// Maximum quantifier nesting depth.
    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::Atomic(_) => 0,
            Formula::And(a, b) | Formula::Or(a, b) => a.quantifier_depth().max(b.quantifier_depth()),
            Formula::Exists(q) | Formula::Forall(q) => 1 + q.body.quantifier_depth(),
        }
    }

    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        fn walk<'a>(f: &'a Formula, out: &mut Vec<&'a Atom>) {
            match f {
                Formula::Atomic(a) => out.push(a),
                Formula::And(a, b) | Formula::Or(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                Formula::Exists(q) | Formula::Forall(q) => walk(&q.body, out),
            }
        }
        walk(self, &mut out);
        out
    }
}

impl Bounded {
    fn map_body(&self, f: impl FnOnce(&Formula) -> Formula) -> Bounded {
        Bounded { var: self.var, lower: self.lower.clone(), upper: self.upper.clone(), body: Box::new(f(&self.body)) }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atomic(a) => {
                let rel = match a.kind {
                    AtomKind::Strict => ">",
                    AtomKind::NonStrict => ">=",
                };
                write!(f, "({rel} {} 0)", a.term)
            }
            Formula::And(a, b) => write!(f, "(and {a} {b})"),
            Formula::Or(a, b) => write!(f, "(or {a} {b})"),
            Formula::Exists(q) => write!(f, "(exists (x{} {} {}) {})", q.var, q.lower, q.upper, q.body),
            Formula::Forall(q) => write!(f, "(forall (x{} {} {}) {})", q.var, q.lower, q.upper, q.body),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn x(i: usize) -> Term {
        Term::var(i)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn unit(var: usize, body: Formula) -> (usize, Term, Term, Formula) {
        (var, Term::int(0), Term::int(1), body)
    }

    #[test]
    fn atom_normalization() {
        assert_eq!(normalize_atom(Relation::Eq, x(0)), Atom::non_strict(Term::neg(Term::abs(x(0)))));
        assert_eq!(normalize_atom(Relation::Gt, x(0)), Atom::strict(x(0)));
        let t = Term::sub(x(0), Term::int(1));
        assert_eq!(normalize_atom(Relation::NotGe, t.clone()), Atom::strict(Term::neg(t.clone())));
        assert_eq!(normalize_atom(Relation::Lt, x(0)), Atom::strict(Term::neg(x(0))));
        assert_eq!(normalize_atom(Relation::Le, x(0)), Atom::non_strict(Term::neg(x(0))));
        assert_eq!(normalize_atom(Relation::NotGt, x(0)), Atom::non_strict(Term::neg(x(0))));
        // -(x - 1) folds to -x + 1
        assert_eq!(Term::neg(t).to_string(), "(+ (- x0) 1)");
    }

    #[test]
    fn negation_examples() {
        let phi = Formula::and(Formula::atom(Atom::strict(x(0))), Formula::atom(Atom::non_strict(x(1))));
        let expected = Formula::or(
            Formula::atom(Atom::non_strict(Term::neg(x(0)))),
            Formula::atom(Atom::strict(Term::neg(x(1)))),
        );
        assert_eq!(phi.negate(), expected);

        let (v, l, u, b) = unit(0, Formula::atom(Atom::strict(x(0))));
        let ex = Formula::exists(v, l.clone(), u.clone(), b);
        assert_eq!(ex.negate(), Formula::forall(0, l, u, Formula::atom(Atom::non_strict(Term::neg(x(0))))));

        let all = Formula::forall(0, Term::int(0), Term::int(1), Formula::atom(Atom::non_strict(x(0))));
        assert_eq!(all.negate().negate(), all);
    }

    #[test]
    fn strengthen_weaken_examples() {
        let d = q(1, 10);
        let ex = Formula::exists(0, Term::int(0), Term::int(1), Formula::atom(Atom::strict(x(0))));
        assert_eq!(ex.strengthen(&d).to_string(), "(exists (x0 0 1) (> (- x0 1/10) 0))");
        let ge = Formula::atom(Atom::non_strict(x(0)));
        assert_eq!(ge.weaken(&d).to_string(), "(>= (+ x0 1/10) 0)");
        assert_eq!(ex.strengthen(&Rational::zero()), ex);
        assert_eq!(ex.weaken(&Rational::zero()), ex);
    }

    #[test]
    fn strictification() {
        let phi = Formula::and(Formula::atom(Atom::non_strict(x(0))), Formula::atom(Atom::strict(x(1))));
        assert_eq!(
            phi.strictify(),
            Formula::and(Formula::atom(Atom::strict(x(0))), Formula::atom(Atom::strict(x(1))))
        );
        let gt = Formula::atom(Atom::strict(x(0)));
        assert_eq!(gt.destrictify(), Formula::atom(Atom::non_strict(x(0))));
        let ge = Formula::atom(Atom::non_strict(x(0)));
        assert_eq!(ge.negate().strictify(), ge.destrictify().negate());
    }

    #[test]
    fn rescale_examples() {
        let ex = Formula::exists(0, Term::int(2), Term::constant(q(251, 100)), Formula::atom(Atom::strict(x(0))));
        assert_eq!(ex.rescale_unit().to_string(), "(exists (x0 0 1) (> (+ 2 (* 51/100 x0)) 0))");

        let unit_ex = Formula::exists(0, Term::int(0), Term::int(1), Formula::atom(Atom::strict(x(0))));
        assert_eq!(unit_ex.rescale_unit(), unit_ex);

        let nested = Formula::forall(
            0,
            Term::int(0),
            Term::int(1),
            Formula::exists(1, Term::int(0), x(0), Formula::atom(Atom::non_strict(x(1)))),
        );
        let expected = Formula::forall(
            0,
            Term::int(0),
            Term::int(1),
            Formula::exists(1, Term::int(0), Term::int(1), Formula::atom(Atom::non_strict(Term::mul(x(0), x(1))))),
        );
        assert_eq!(nested.rescale_unit(), expected);
    }

    #[test]
    fn folding_rules() {
        assert_eq!(Term::neg(Term::neg(x(0))), x(0));
        assert_eq!(Term::add(x(0), Term::int(0)), x(0));
        assert_eq!(Term::sub(x(0), Term::int(0)), x(0));
        assert_eq!(Term::sub(Term::int(0), x(0)), Term::neg(x(0)));
        assert_eq!(Term::mul(Term::int(1), x(2)), x(2));
        assert_eq!(Term::sub(Term::constant(q(251, 100)), Term::int(2)), Term::constant(q(51, 100)));
    }

    pub(crate) fn arb_term(depth: u32) -> impl Strategy<Value = Term> {
        let leaf = prop_oneof![
            (0usize..3).prop_map(Term::var),
            (-4i64..5, 1i64..4).prop_map(|(n, d)| Term::constant(q(n, d))),
        ];
        leaf.prop_recursive(depth, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Term::neg),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::add(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::sub(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::mul(a, b)),
                inner.clone().prop_map(Term::abs),
                inner.prop_map(|a| Term::apply(FuncSym::Exp, vec![a])),
            ]
        })
    }

    pub(crate) fn arb_formula() -> impl Strategy<Value = Formula> {
        let atom = (arb_term(3), any::<bool>()).prop_map(|(t, strict)| {
            Formula::atom(if strict { Atom::strict(t) } else { Atom::non_strict(t) })
        });
        atom.prop_recursive(3, 16, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                inner.clone().prop_map(|b| Formula::exists(0, Term::int(-1), Term::int(1), b)),
                inner.prop_map(|b| Formula::forall(0, Term::int(0), Term::int(2), b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn negation_is_an_involution(phi in arb_formula()) {
            prop_assert_eq!(phi.negate().negate(), phi);
        }

        #[test]
        fn strengthening_dualizes_to_weakening(phi in arb_formula(), n in 0i64..20, d in 1i64..12) {
            let delta = q(n, d);
            prop_assert_eq!(phi.strengthen(&delta).negate(), phi.negate().weaken(&delta));
        }

        #[test]
        fn strictify_dualizes_destrictify(phi in arb_formula()) {
            prop_assert_eq!(phi.negate().strictify(), phi.destrictify().negate());
        }
    }
}
