//! Quantified Boolean formulas in QDIMACS form and their encoding as
//! bounded real sentences.
//!
//! Each propositional variable `p` becomes a real `x ∈ [-2, 2]`, with `p`
//! read as `x > 0` and `¬p` as `-x - 1 > 0`. Values in the gap `[-1, 0]`
//! make neither literal true: an existential variable gets the extra clause
//! `x > 0 ∨ -x - 1 > 0` in the matrix, and a universal one is relativized,
//! `∀x. ((1/2 - x > 0 ∧ x + 3/2 > 0) ∨ ...)`, so that the universal player
//! gains nothing near the gap. A true QBF then encodes to a sentence whose
//! α-value is at least 1/4 and a false one to at most -1/2.

use std::fmt;

use thiserror::Error;

use crate::formula::{Atom, Formula, Term};
use crate::sentence::Sentence;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Exists,
    Forall,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QbfInstance {
    /// Variables are numbered `1..=num_vars`.
    pub num_vars: u32,
    /// Outermost first. Variables missing from the prefix are free and read
    /// as existential, outside the prefix.
    pub prefix: Vec<(Quantifier, u32)>,
    /// CNF clauses of nonzero literals; `-v` is the negation of `v`.
    pub clauses: Vec<Vec<i32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct QbfError {
    pub line: usize,
    pub message: String,
}

impl QbfInstance {
    pub fn new(num_vars: u32, prefix: Vec<(Quantifier, u32)>, clauses: Vec<Vec<i32>>) -> Result<QbfInstance, QbfError> {
        let q = QbfInstance { num_vars, prefix, clauses };
        q.validate(0)?;
        Ok(q)
    }

    fn validate(&self, line: usize) -> Result<(), QbfError> {
        let err = |message: String| QbfError { line, message };
        let mut seen = vec![false; self.num_vars as usize + 1];
        for &(_, v) in &self.prefix {
            if v == 0 || v > self.num_vars {
                return Err(err(format!("quantified variable {v} out of range 1..={}", self.num_vars)));
            }
            if std::mem::replace(&mut seen[v as usize], true) {
                return Err(err(format!("variable {v} quantified twice")));
            }
        }
        for c in &self.clauses {
            for &l in c {
                if l == 0 || l.unsigned_abs() > self.num_vars {
                    return Err(err(format!("literal {l} out of range")));
                }
            }
        }
        Ok(())
    }

    /// Full quantifier order: free variables first, then the prefix.
    pub fn order(&self) -> Vec<(Quantifier, u32)> {
        let mut bound = vec![false; self.num_vars as usize + 1];
        for &(_, v) in &self.prefix {
            bound[v as usize] = true;
        }
        let mut out: Vec<_> = (1..=self.num_vars).filter(|&v| !bound[v as usize]).map(|v| (Quantifier::Exists, v)).collect();
        out.extend(self.prefix.iter().copied());
        out
    }

    pub fn parse_qdimacs(text: &str) -> Result<QbfInstance, QbfError> {
        let mut header: Option<(u32, usize)> = None;
        let mut prefix = Vec::new();
        let mut clauses = Vec::new();
        let mut last = 0;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            last = line;
            let err = |message: String| QbfError { line, message };
            let toks: Vec<&str> = raw.split_whitespace().collect();
            match toks.first().copied() {
                None | Some("c") => continue,
                Some("p") => {
                    if header.is_some() {
                        return Err(err("duplicate problem line".into()));
                    }
                    let [_, "cnf", v, c] = toks.as_slice() else {
                        return Err(err("expected 'p cnf <vars> <clauses>'".into()));
                    };
                    let v = v.parse().map_err(|_| err(format!("bad variable count '{v}'")))?;
                    let c = c.parse().map_err(|_| err(format!("bad clause count '{c}'")))?;
                    header = Some((v, c));
                }
                Some(head) => {
                    if header.is_none() {
                        return Err(err("expected problem line before content".into()));
                    }
                    let quant = match head {
                        "e" => Some(Quantifier::Exists),
                        "a" => Some(Quantifier::Forall),
                        _ => None,
                    };
                    if quant.is_some() && !clauses.is_empty() {
                        return Err(err("quantifier line after clauses".into()));
                    }
                    let nums = &toks[quant.is_some() as usize..];
                    let mut lits = Vec::new();
                    for t in nums {
                        let l: i32 = t.parse().map_err(|_| err(format!("bad literal '{t}'")))?;
                        lits.push(l);
                    }
                    if lits.pop() != Some(0) || lits.contains(&0) {
                        return Err(err("line must end with a single 0".into()));
                    }
                    match quant {
                        Some(q) => {
                            for l in lits {
                                if l < 0 {
                                    return Err(err(format!("negative variable {l} in prefix")));
                                }
                                prefix.push((q, l as u32));
                            }
                        }
                        None => clauses.push(lits),
                    }
                }
            }
        }
        let (num_vars, num_clauses) = header.ok_or(QbfError { line: last, message: "missing problem line".into() })?;
        if clauses.len() != num_clauses {
            return Err(QbfError {
                line: last,
                message: format!("header declares {num_clauses} clauses, found {}", clauses.len()),
            });
        }
        let q = QbfInstance { num_vars, prefix, clauses };
        q.validate(last)?;
        Ok(q)
    }
}

impl fmt::Display for QbfInstance {
    /// QDIMACS text.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.num_vars, self.clauses.len())?;
        let mut i = 0;
        while i < self.prefix.len() {
            let q = self.prefix[i].0;
            f.write_str(if q == Quantifier::Exists { "e" } else { "a" })?;
            while i < self.prefix.len() && self.prefix[i].0 == q {
                write!(f, " {}", self.prefix[i].1)?;
                i += 1;
            }
            writeln!(f, " 0")?;
        }
        for c in &self.clauses {
            for l in c {
                write!(f, "{l} ")?;
            }
            writeln!(f, "0")?;
        }
        Ok(())
    }
}

fn positive(x: Term) -> Formula {
    Formula::atom(Atom::strict(x))
}

fn negative(x: Term) -> Formula {
    Formula::atom(Atom::strict(Term::sub(Term::neg(x), Term::int(1))))
}

/// Encode as a sentence over `[-2, 2]^n`, equivalent to the QBF and robust
/// for every `δ < 1/4`.
pub fn qbf_encode(q: &QbfInstance) -> Sentence {
    let order = q.order();
    let mut level = vec![0usize; q.num_vars as usize + 1];
    for (i, &(_, v)) in order.iter().enumerate() {
        level[v as usize] = i;
    }
    let lit = |l: i32| {
        let x = Term::var(level[l.unsigned_abs() as usize]);
        if l > 0 {
            positive(x)
        } else {
            negative(x)
        }
    };
    let mut parts: Vec<Formula> = q
        .clauses
        .iter()
        .map(|c| Formula::disjunction(c.iter().map(|&l| lit(l)).collect()).unwrap_or_else(|| positive(Term::int(-1))))
        .collect();
    for (i, &(quant, _)) in order.iter().enumerate() {
        if quant == Quantifier::Exists {
            let x = Term::var(i);
            parts.push(Formula::or(positive(x.clone()), negative(x)));
        }
    }
    let mut body = Formula::conjunction(parts).unwrap_or_else(|| positive(Term::int(1)));
    for (i, &(quant, _)) in order.iter().enumerate().rev() {
        body = match quant {
            Quantifier::Exists => Formula::exists(i, Term::int(-2), Term::int(2), body),
            Quantifier::Forall => {
                let x = Term::var(i);
                let half = |n: i64| Term::constant(Rational::new(n.into(), 2.into()));
                let in_gap = Formula::and(positive(Term::sub(half(1), x.clone())), positive(Term::add(x, half(3))));
                Formula::forall(i, Term::int(-2), Term::int(2), Formula::or(in_gap, body))
            }
        };
    }
    Sentence::new(body).expect("encoding is closed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tautology_encoding() {
        let q = QbfInstance::new(1, vec![(Quantifier::Exists, 1)], vec![vec![1, -1]]).unwrap();
        assert_eq!(
            qbf_encode(&q).to_string(),
            "(exists (x0 -2 2) (and (or (> x0 0) (> (- (- x0) 1) 0)) (or (> x0 0) (> (- (- x0) 1) 0))))"
        );
    }

    #[test]
    fn forall_unit_clause() {
        let q = QbfInstance::new(1, vec![(Quantifier::Forall, 1)], vec![vec![1]]).unwrap();
        assert_eq!(
            qbf_encode(&q).to_string(),
            "(forall (x0 -2 2) (or (and (> (- 1/2 x0) 0) (> (+ x0 3/2) 0)) (> x0 0)))"
        );
    }

    #[test]
    fn universal_tautology_is_not_lost_in_the_gap() {
        let q = QbfInstance::new(1, vec![(Quantifier::Forall, 1)], vec![vec![1, -1]]).unwrap();
        let s = qbf_encode(&q).to_string();
        assert_eq!(s, "(forall (x0 -2 2) (or (and (> (- 1/2 x0) 0) (> (+ x0 3/2) 0)) (or (> x0 0) (> (- (- x0) 1) 0))))");
    }

    #[test]
    fn alpha_margins() {
        use crate::{alpha_of_sentence, eval_closed, Dyadic, EvalConfig};
        let value = |q: &QbfInstance| {
            eval_closed(&alpha_of_sentence(&qbf_encode(q)), 12, &EvalConfig::default(), None).unwrap().value
        };
        let tol = Dyadic::pow2(-12);
        let taut = QbfInstance::new(1, vec![(Quantifier::Forall, 1)], vec![vec![1, -1]]).unwrap();
        assert!(value(&taut) >= &Dyadic::pow2(-2) - &tol);
        let unit = QbfInstance::new(1, vec![(Quantifier::Forall, 1)], vec![vec![1]]).unwrap();
        assert!(value(&unit) <= &(-Dyadic::pow2(-1)) + &tol);
        let contra = QbfInstance::new(1, vec![(Quantifier::Exists, 1)], vec![vec![1], vec![-1]]).unwrap();
        assert!(value(&contra) <= &(-Dyadic::pow2(-1)) + &tol);
    }

    #[test]
    fn free_variables_go_outside() {
        let q = QbfInstance::new(2, vec![(Quantifier::Forall, 2)], vec![vec![1, 2]]).unwrap();
        let s = qbf_encode(&q).to_string();
        assert!(s.starts_with("(exists (x0 -2 2) (forall (x1 -2 2)"), "{s}");
    }

    #[test]
    fn empty_pieces() {
        let q = QbfInstance::new(0, vec![], vec![]).unwrap();
        assert_eq!(qbf_encode(&q).to_string(), "(> 1 0)");
        let q = QbfInstance::new(0, vec![], vec![vec![]]).unwrap();
        assert_eq!(qbf_encode(&q).to_string(), "(> -1 0)");
    }

    #[test]
    fn qdimacs_round_trip() {
        let text = "c sample\np cnf 3 2\na 1 0\ne 2 3 0\n1 -2 0\n2 3 -1 0\n";
        let q = QbfInstance::parse_qdimacs(text).unwrap();
        assert_eq!(q.prefix, vec![(Quantifier::Forall, 1), (Quantifier::Exists, 2), (Quantifier::Exists, 3)]);
        assert_eq!(q.clauses, vec![vec![1, -2], vec![2, 3, -1]]);
        assert_eq!(QbfInstance::parse_qdimacs(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn qdimacs_errors() {
        assert!(QbfInstance::parse_qdimacs("1 2 0\n").is_err());
        assert!(QbfInstance::parse_qdimacs("p cnf 1 1\n2 0\n").is_err());
        assert!(QbfInstance::parse_qdimacs("p cnf 1 2\n1 0\n").is_err());
        assert!(QbfInstance::parse_qdimacs("p cnf 2 1\ne 1 1 0\n1 0\n").is_err());
        let e = QbfInstance::parse_qdimacs("p cnf 2 1\n1 x 0\n").unwrap_err();
        assert_eq!(e.line, 2);
    }
}
