#![allow(dead_code)]

use std::path::{Path, PathBuf};

use ddecide_core::qbf::Quantifier;
use ddecide_core::{parse_sentence, AlphaTerm, FuncSym, QbfInstance, Rational, Sentence};
use num_traits::ToPrimitive;
use rand::Rng;

pub struct CorpusEntry {
    pub name: String,
    pub sentence: Sentence,
    /// Exact value of the α-term, to double precision.
    pub alpha: f64,
    pub truth: bool,
    pub plus_quarter: bool,
    pub plus_tenth: bool,
}

impl CorpusEntry {
    pub fn plus(&self, delta: &Rational) -> bool {
        if *delta == q(1, 4) {
            self.plus_quarter
        } else if *delta == q(1, 10) {
            self.plus_tenth
        } else {
            panic!("no reference truth for delta {delta}")
        }
    }
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus")
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("; {key}:")))
        .unwrap_or_else(|| panic!("missing '{key}'"))
        .trim()
}

fn flag(text: &str, key: &str) -> bool {
    match field(text, key) {
        "true" => true,
        "false" => false,
        other => panic!("bad {key}: {other}"),
    }
}

pub fn load_corpus() -> Vec<CorpusEntry> {
    let mut paths: Vec<_> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "dd"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let sentence = parse_sentence(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
            CorpusEntry {
                alpha: field(&text, "alpha").parse().unwrap(),
                truth: flag(&text, "truth"),
                plus_quarter: flag(&text, "plus-1/4"),
                plus_tenth: flag(&text, "plus-1/10"),
                name,
                sentence,
            }
        })
        .collect()
}

fn apply_f64(f: &FuncSym, a: &[f64]) -> f64 {
    use FuncSym::*;
    match f {
        Neg => -a[0],
        Add => a[0] + a[1],
        Sub => a[0] - a[1],
        Mul => a[0] * a[1],
        Div => a[0] / a[1],
        Abs => a[0].abs(),
        Min2 => a[0].min(a[1]),
        Max2 => a[0].max(a[1]),
        Exp => a[0].exp(),
        Sin => a[0].sin(),
        Cos => a[0].cos(),
        Atan => a[0].atan(),
        Sqrt => a[0].sqrt(),
        PowInt(n) => a[0].powi(*n as i32),
        ConstRat(r) => r.to_f64().unwrap(),
        ConstPi => std::f64::consts::PI,
    }
}

/// Brute-force value of an α-term: bounded optima are taken over a uniform
/// grid (endpoints included) with spacing at most `step`.
pub fn grid_value(t: &AlphaTerm, env: &mut Vec<f64>, step: f64) -> f64 {
    match t {
        AlphaTerm::Var(i) => env[*i],
        AlphaTerm::Apply(f, args) => {
            let vals: Vec<f64> = args.iter().map(|a| grid_value(a, env, step)).collect();
            apply_f64(f, &vals)
        }
        AlphaTerm::MaxOver(o) | AlphaTerm::MinOver(o) => {
            let is_max = matches!(t, AlphaTerm::MaxOver(_));
            let u = grid_value(&o.lower, env, step);
            let v = grid_value(&o.upper, env, step);
            let (lo, hi) = (u.min(v), u.max(v));
            let n = ((hi - lo) / step).ceil().max(1.0) as usize;
            let mut best = if is_max { f64::NEG_INFINITY } else { f64::INFINITY };
            for i in 0..=n {
                env.push(lo + (hi - lo) * i as f64 / n as f64);
                let b = grid_value(&o.body, env, step);
                env.pop();
                best = if is_max { best.max(b) } else { best.min(b) };
            }
            best
        }
    }
}

/// Grid step giving a few hundred thousand evaluations at most.
pub fn grid_step(t: &AlphaTerm) -> f64 {
    match t.optimizer_depth() {
        0 | 1 => 2f64.powi(-12),
        2 => 2f64.powi(-10),
        _ => 2f64.powi(-6),
    }
}

/// Truth-table evaluation of a QBF.
pub fn qbf_truth(q: &QbfInstance) -> bool {
    fn go(order: &[(Quantifier, u32)], assign: &mut Vec<bool>, clauses: &[Vec<i32>]) -> bool {
        match order.split_first() {
            None => clauses.iter().all(|c| {
                c.iter().any(|&l| {
                    let v = assign[l.unsigned_abs() as usize];
                    if l > 0 {
                        v
                    } else {
                        !v
                    }
                })
            }),
            Some((&(quant, var), rest)) => {
                let mut branch = |b: bool| {
                    assign[var as usize] = b;
                    go(rest, assign, clauses)
                };
                match quant {
                    Quantifier::Exists => branch(false) || branch(true),
                    Quantifier::Forall => branch(false) && branch(true),
                }
            }
        }
    }
    let mut assign = vec![false; q.num_vars as usize + 1];
    go(&q.order(), &mut assign, &q.clauses)
}

/// Random closed QBF with `1..=max_vars` variables and `1..=max_clauses`
/// clauses of width 1 to 3; some variables may be left free.
pub fn random_qbf(rng: &mut impl Rng, max_vars: u32, max_clauses: usize) -> QbfInstance {
    let n = rng.gen_range(1..=max_vars);
    let mut vars: Vec<u32> = (1..=n).collect();
    for i in (1..vars.len()).rev() {
        vars.swap(i, rng.gen_range(0..=i));
    }
    let free = if rng.gen_bool(0.2) { 1 } else { 0 };
    let prefix = vars[free.min(vars.len() - 1)..]
        .iter()
        .map(|&v| (if rng.gen_bool(0.5) { Quantifier::Exists } else { Quantifier::Forall }, v))
        .collect();
    let m = rng.gen_range(1..=max_clauses);
    let clauses = (0..m)
        .map(|_| {
            let w = rng.gen_range(1..=3.min(n as usize));
            (0..w)
                .map(|_| {
                    let v = rng.gen_range(1..=n) as i32;
                    if rng.gen_bool(0.5) {
                        v
                    } else {
                        -v
                    }
                })
                .collect()
        })
        .collect();
    QbfInstance::new(n, prefix, clauses).expect("generated instance is valid")
}

/// Every QBF over one variable with at most four clauses drawn from
/// `{p}`, `{¬p}`, `{p, ¬p}`, under both quantifiers.
pub fn one_variable_qbfs() -> Vec<QbfInstance> {
    let pool: [Vec<i32>; 3] = [vec![1], vec![-1], vec![1, -1]];
    let mut out = Vec::new();
    for quant in [Quantifier::Exists, Quantifier::Forall] {
        for m in 0..=4u32 {
            for code in 0..3u32.pow(m) {
                let clauses = (0..m).map(|i| pool[(code / 3u32.pow(i) % 3) as usize].clone()).collect();
                out.push(QbfInstance::new(1, vec![(quant, 1)], clauses).unwrap());
            }
        }
    }
    out
}
