//! S-expression surface syntax.
//!
//! ```text
//! sentence := "(" ("exists" | "forall") "(" name lower upper ")" sentence ")" | body
//! body     := "(" ("and" | "or") sentence sentence+ ")" | "(" "not" sentence ")" | atom
//! atom     := "(" (">" | ">=" | "<" | "<=" | "=") term [term] ")"
//! term     := name | number | "pi" | "(" op term* ")"
//! ```
//!
//! `(rel a b)` means `a - b rel 0`. Numbers are integers, decimals (`2.51`)
//! or fractions (`-3/4`), all read exactly. `;` starts a line comment.
//! Printing a [`Sentence`] with `Display` gives text this parser reads back
//! to the same sentence.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::formula::{normalize_atom, Formula, FuncSym, Relation, Term};
use crate::sentence::Sentence;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

impl Pos {
    fn error(self, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, col: self.col, message: message.into() }
    }
}

#[derive(Debug)]
enum Sexp {
    Atom(String, Pos),
    List(Vec<Sexp>, Pos),
}

impl Sexp {
    fn pos(&self) -> Pos {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Atom(s, _) => f.write_str(s),
            Sexp::List(items, _) => {
                f.write_str("(")?;
                for (i, it) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    it.fmt(f)?;
                }
                f.write_str(")")
            }
        }
    }
}

fn read_all(text: &str) -> Result<Vec<Sexp>, ParseError> {
    let mut stack: Vec<(Vec<Sexp>, Pos)> = Vec::new();
    let mut top = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let here = Pos { line, col };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            ';' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    chars.next();
                }
            }
            '(' => {
                chars.next();
                col += 1;
                stack.push((Vec::new(), here));
            }
            ')' => {
                chars.next();
                col += 1;
                let (items, start) = stack.pop().ok_or_else(|| here.error("unexpected ')'"))?;
                let list = Sexp::List(items, start);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(list),
                    None => top.push(list),
                }
            }
            _ => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    word.push(c);
                    chars.next();
                    col += 1;
                }
                let atom = Sexp::Atom(word, here);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(atom),
                    None => top.push(atom),
                }
            }
        }
    }
    if let Some((_, start)) = stack.pop() {
        return Err(start.error("unclosed '('"));
    }
    Ok(top)
}

/// Read an exact rational: `12`, `-3/4`, `2.51`, `-.5`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let bad = || format!("invalid number '{s}'");
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let value = if let Some((n, d)) = body.split_once('/') {
        if !digits(n) || !digits(d) {
            return Err(bad());
        }
        let den: BigInt = d.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(format!("zero denominator in '{s}'"));
        }
        Rational::new(n.parse().map_err(|_| bad())?, den)
    } else if let Some((i, f)) = body.split_once('.') {
        if !(i.is_empty() || digits(i)) || !digits(f) {
            return Err(bad());
        }
        let scale = BigInt::from(10).pow(f.len() as u32);
        let whole: BigInt = if i.is_empty() { BigInt::zero() } else { i.parse().map_err(|_| bad())? };
        let frac: BigInt = f.parse().map_err(|_| bad())?;
        Rational::new(whole * &scale + frac, scale)
    } else {
        if !digits(body) {
            return Err(bad());
        }
        Rational::from_integer(body.parse().map_err(|_| bad())?)
    };
    Ok(if negative { -value } else { value })
}

fn looks_numeric(s: &str) -> bool {
    let t = s.strip_prefix('-').unwrap_or(s);
    t.starts_with(|c: char| c.is_ascii_digit() || c == '.')
}

const KEYWORDS: &[&str] = &["exists", "forall", "and", "or", "not", "pi"];

struct Parser {
    scope: Vec<String>,
}

impl Parser {
    fn head<'s>(&self, items: &'s [Sexp], pos: Pos) -> Result<(&'s str, Pos), ParseError> {
        match items.first() {
            Some(Sexp::Atom(h, p)) => Ok((h.as_str(), *p)),
            Some(other) => Err(other.pos().error("expected an operator name")),
            None => Err(pos.error("empty list")),
        }
    }

    fn formula(&mut self, s: &Sexp) -> Result<Formula, ParseError> {
        let (items, pos) = match s {
            Sexp::List(items, pos) => (items, *pos),
            Sexp::Atom(a, pos) => return Err(pos.error(format!("expected a formula, found '{a}'"))),
        };
        let (head, hpos) = self.head(items, pos)?;
        let args = &items[1..];
        match head {
            "exists" | "forall" => {
                let [binder, body] = args else {
                    return Err(pos.error(format!("{head} takes a binder and a body")));
                };
                let Sexp::List(b, bpos) = binder else {
                    return Err(binder.pos().error("expected binder (name lower upper)"));
                };
                let [Sexp::Atom(name, npos), lower, upper] = b.as_slice() else {
                    return Err(bpos.error("expected binder (name lower upper)"));
                };
                self.check_name(name, *npos)?;
                let lower = self.term(lower)?;
                let upper = self.term(upper)?;
                let var = self.scope.len();
                self.scope.push(name.clone());
                let body = self.formula(body);
                self.scope.pop();
                let body = body?;
                Ok(if head == "exists" {
                    Formula::exists(var, lower, upper, body)
                } else {
                    Formula::forall(var, lower, upper, body)
                })
            }
            "and" | "or" => {
                if args.len() < 2 {
                    return Err(pos.error(format!("{head} needs at least two operands")));
                }
                let parts = args.iter().map(|a| self.formula(a)).collect::<Result<Vec<_>, _>>()?;
                let f = if head == "and" { Formula::conjunction(parts) } else { Formula::disjunction(parts) };
                Ok(f.expect("nonempty"))
            }
            "not" => {
                let [inner] = args else {
                    return Err(pos.error("not takes exactly one operand"));
                };
                Ok(self.formula(inner)?.negate())
            }
            ">" | ">=" | "<" | "<=" | "=" => {
                let rel = match head {
                    ">" => Relation::Gt,
                    ">=" => Relation::Ge,
                    "<" => Relation::Lt,
                    "<=" => Relation::Le,
                    _ => Relation::Eq,
                };
                let t = match args {
                    [a] => self.term(a)?,
                    [a, b] => Term::sub(self.term(a)?, self.term(b)?),
                    _ => return Err(pos.error(format!("{head} takes one or two terms"))),
                };
                Ok(Formula::atom(normalize_atom(rel, t)))
            }
            other => Err(hpos.error(format!("unknown connective '{other}'"))),
        }
    }

    fn check_name(&self, name: &str, pos: Pos) -> Result<(), ParseError> {
        if KEYWORDS.contains(&name) || looks_numeric(name) {
            return Err(pos.error(format!("'{name}' cannot be used as a variable name")));
        }
        Ok(())
    }

    fn term(&mut self, s: &Sexp) -> Result<Term, ParseError> {
        let (items, pos) = match s {
            Sexp::Atom(a, pos) => {
                if a == "pi" {
                    return Ok(Term::pi());
                }
                if looks_numeric(a) {
                    return parse_rational(a).map(Term::constant).map_err(|m| pos.error(m));
                }
                return match self.scope.iter().rposition(|n| n == a) {
                    Some(level) => Ok(Term::var(level)),
                    None => Err(pos.error(format!("unbound variable '{a}'"))),
                };
            }
            Sexp::List(items, pos) => (items, *pos),
        };
        let (head, hpos) = self.head(items, pos)?;
        let rest = &items[1..];
        let arity_error = |what: &str| pos.error(format!("{head} takes {what}"));
        let unary = |f: FuncSym, this: &mut Self| -> Result<Term, ParseError> {
            match rest {
                [a] => Ok(Term::build(f, vec![this.term(a)?])),
                _ => Err(arity_error("exactly one argument")),
            }
        };
        match head {
            "abs" => unary(FuncSym::Abs, self),
            "exp" => unary(FuncSym::Exp, self),
            "sin" => unary(FuncSym::Sin, self),
            "cos" => unary(FuncSym::Cos, self),
            "atan" => unary(FuncSym::Atan, self),
            "sqrt" => unary(FuncSym::Sqrt, self),
            "pow" => match rest {
                [base, Sexp::Atom(n, npos)] => {
                    let n: u32 = n.parse().map_err(|_| npos.error(format!("pow exponent must be a nonnegative integer, found '{n}'")))?;
                    Ok(Term::build(FuncSym::PowInt(n), vec![self.term(base)?]))
                }
                _ => Err(arity_error("a term and a nonnegative integer exponent")),
            },
            "-" if rest.len() == 1 => Ok(Term::neg(self.term(&rest[0])?)),
            "+" | "-" | "*" | "/" | "min" | "max" => {
                let f = match head {
                    "+" => FuncSym::Add,
                    "-" => FuncSym::Sub,
                    "*" => FuncSym::Mul,
                    "/" => FuncSym::Div,
                    "min" => FuncSym::Min2,
                    _ => FuncSym::Max2,
                };
                if rest.len() < 2 {
                    return Err(arity_error("at least two arguments"));
                }
                let mut acc = self.term(&rest[0])?;
                for a in &rest[1..] {
                    acc = Term::build(f.clone(), vec![acc, self.term(a)?]);
                }
                Ok(acc)
            }
            other => Err(hpos.error(format!("unknown function '{other}'"))),
        }
    }
}

/// Parse one sentence; trailing text other than comments is an error.
pub fn parse_sentence(text: &str) -> Result<Sentence, ParseError> {
    let forms = read_all(text)?;
    let first = match forms.as_slice() {
        [] => return Err(Pos { line: 1, col: 1 }.error("empty input")),
        [one] => one,
        [_, extra, ..] => return Err(extra.pos().error(format!("unexpected trailing form {extra}"))),
    };
    let formula = Parser { scope: Vec::new() }.formula(first)?;
    Sentence::new(formula).map_err(|d| first.pos().error(d.to_string()))
}
