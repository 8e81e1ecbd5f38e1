//! Enclosure of α-terms by nested interval branch-and-bound.
//!
//! `enclose` returns an interval guaranteed to contain every value the term
//! takes over the environment box. A bounded `max` over `y ∈ [u, v]` keeps a
//! list of `y`-cells: the upper bound is the largest cell enclosure, the
//! lower bound comes from evaluating the body at sample points that lie in
//! `[u(x), v(x)]` for every `x` in the environment. Cells are bisected until
//! the gap closes to the tolerance, or until they are no finer than the
//! environment itself (narrower cells cannot tighten an enclosure that is
//! already as wide as the outer box). `min` is handled as `-max(-body)`.
//!
//! [`eval_closed`] drives this for closed terms in global refinement rounds,
//! halving the tolerance and doubling the working precision each round
//! until the enclosure is no wider than `2^-k`.

use serde::Serialize;
use thiserror::Error;

use crate::alpha::{AlphaTerm, ClosedAlphaTerm, Optimum};
use crate::dyadic::Dyadic;
use crate::elementary;
use crate::formula::FuncSym;
use crate::interval::{DomainError, Interval, Precision};

pub const DEFAULT_MAX_SPLITS: u64 = 1_000_000;
pub const DEFAULT_MAX_DEPTH: usize = 64;
pub const DEFAULT_MAX_ROUNDS: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("domain violation in {location}: {detail}")]
    DomainViolation { location: String, detail: String },
    #[error("variable x{0} is not bound in the environment")]
    UnboundVariable(usize),
}

/// Interval assignment for the free variables of a term, by level.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Env(Vec<Interval>);

impl Env {
    pub fn new() -> Env {
        Env(Vec::new())
    }

    pub fn with(mut self, value: Interval) -> Env {
        self.0.push(value);
        self
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<Interval>> for Env {
    fn from(v: Vec<Interval>) -> Env {
        Env(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalBudget {
    /// Target enclosure width; must be positive.
    pub tolerance: Dyadic,
    pub precision: Precision,
    pub max_splits: u64,
    pub max_depth: usize,
}

impl EvalBudget {
    pub fn new(tolerance: Dyadic, precision: Precision) -> EvalBudget {
        assert!(tolerance.is_positive(), "tolerance must be positive");
        EvalBudget { tolerance, precision, max_splits: DEFAULT_MAX_SPLITS, max_depth: DEFAULT_MAX_DEPTH }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// Width is within the requested tolerance.
    Converged,
    /// Sound, but wider than requested because the environment box is too
    /// wide for the term to be resolved further.
    Partial,
    /// The split or depth budget ran out first.
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub interval: Interval,
    pub status: Status,
}

/// One refinement step of one optimizer level.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceRecord {
    pub round: u32,
    pub level: usize,
    pub iteration: u32,
    pub boxes: usize,
    pub lo: Option<String>,
    pub hi: Option<String>,
}

pub type TraceSink<'a> = &'a mut dyn FnMut(&TraceRecord);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sense {
    Max,
    Min,
}

impl Sense {
    fn orient(self, iv: Interval) -> Interval {
        match self {
            Sense::Max => iv,
            Sense::Min => iv.neg(),
        }
    }
}

/// A `y`-cell with oriented bounds of the body over it; `None` when the
/// body could not be evaluated on the whole cell.
struct Cell {
    y: Interval,
    lower: Option<Dyadic>,
    upper: Option<Dyadic>,
}

pub(crate) fn apply_primitive(f: &FuncSym, args: &[Interval], p: Precision) -> Result<Interval, DomainError> {
    use FuncSym::*;
    Ok(match f {
        Neg => args[0].neg(),
        Add => args[0].add(&args[1], p),
        Sub => args[0].sub(&args[1], p),
        Mul => args[0].mul(&args[1], p),
        Div => args[0].div(&args[1], p)?,
        Abs => args[0].abs(),
        Min2 => args[0].min(&args[1]),
        Max2 => args[0].max(&args[1]),
        Exp => elementary::exp(&args[0], p),
        Sin => elementary::sin(&args[0], p),
        Cos => elementary::cos(&args[0], p),
        Atan => elementary::atan(&args[0], p),
        Sqrt => elementary::sqrt(&args[0], p)?,
        PowInt(n) => args[0].powi(*n, p),
        ConstRat(q) => Interval::from_rational(q, p),
        ConstPi => elementary::pi(p),
    })
}

/// `tol / 3`, rounded down but kept positive.
fn third(tol: &Dyadic) -> Dyadic {
    Dyadic::div_floor(tol, &Dyadic::from_i64(3), tol.fractional_bits() as i64 + 4)
}

fn clamp(x: Dyadic, range: &Interval) -> Dyadic {
    if &x < range.lo() {
        range.lo().clone()
    } else if &x > range.hi() {
        range.hi().clone()
    } else {
        x
    }
}

struct Search<'t> {
    precision: Precision,
    min_width: Dyadic,
    max_splits: u64,
    max_depth: usize,
    splits: u64,
    exhausted: bool,
    round: u32,
    trace: Option<TraceSink<'t>>,
}

impl Search<'_> {
    fn eval(&mut self, t: &AlphaTerm, env: &mut Vec<Interval>, tol: &Dyadic, depth: usize) -> Result<Interval, EvalError> {
        match t {
            AlphaTerm::Var(i) => env.get(*i).cloned().ok_or(EvalError::UnboundVariable(*i)),
            AlphaTerm::Apply(f, args) => {
                let vals = args.iter().map(|a| self.eval(a, env, tol, depth)).collect::<Result<Vec<_>, _>>()?;
                apply_primitive(f, &vals, self.precision)
                    .map_err(|e| EvalError::DomainViolation { location: t.to_string(), detail: e.detail })
            }
            AlphaTerm::MaxOver(o) => self.optimize(o, Sense::Max, env, tol, depth),
            AlphaTerm::MinOver(o) => self.optimize(o, Sense::Min, env, tol, depth),
        }
    }

    /// Oriented enclosure of the body with the bound variable set to `y`.
    fn body(&mut self, o: &Optimum, sense: Sense, env: &mut Vec<Interval>, y: &Interval, tol: &Dyadic, depth: usize) -> Result<Interval, EvalError> {
        env.push(y.clone());
        let res = self.eval(&o.body, env, tol, depth + 1);
        env.pop();
        res.map(|iv| sense.orient(iv))
    }

    /// Evaluate a cell; a domain violation on a non-degenerate box is kept
    /// as an unknown cell so that splitting can separate it from the
    /// offending region.
    #[allow(clippy::too_many_arguments)]
    fn cell(
        &mut self,
        o: &Optimum,
        sense: Sense,
        env: &mut Vec<Interval>,
        y: Interval,
        parent: Option<&Cell>,
        tol: &Dyadic,
        depth: usize,
        fault: &mut Option<EvalError>,
    ) -> Result<Cell, EvalError> {
        match self.body(o, sense, env, &y, tol, depth) {
            Ok(iv) => {
                let (mut lo, mut hi) = iv.into_bounds();
                if let Some(p) = parent {
                    if let Some(pl) = &p.lower {
                        if pl > &lo {
                            lo = pl.clone();
                        }
                    }
                    if let Some(pu) = &p.upper {
                        if pu < &hi {
                            hi = pu.clone();
                        }
                    }
                }
                Ok(Cell { y, lower: Some(lo), upper: Some(hi) })
            }
            Err(e @ EvalError::DomainViolation { .. }) => {
                if y.is_point() && env.iter().all(Interval::is_point) {
                    return Err(e);
                }
                *fault = Some(e);
                Ok(Cell { y, lower: None, upper: None })
            }
            Err(e) => Err(e),
        }
    }

    fn emit(&mut self, level: usize, iteration: u32, boxes: usize, lo: Option<&Dyadic>, hi: Option<&Dyadic>) {
        if let Some(sink) = self.trace.as_mut() {
            let rec = TraceRecord {
                round: self.round,
                level,
                iteration,
                boxes,
                lo: lo.map(|d| d.to_string()),
                hi: hi.map(|d| d.to_string()),
            };
            sink(&rec);
        }
    }

    fn optimize(&mut self, o: &Optimum, sense: Sense, env: &mut Vec<Interval>, tol: &Dyadic, depth: usize) -> Result<Interval, EvalError> {
        let share = third(tol);
        let u = self.eval(&o.lower, env, &share, depth)?;
        let v = self.eval(&o.upper, env, &share, depth)?;
        let range = u.hull(&v);
        let common = if u.hi() <= v.lo() {
            Some(Interval::new(u.hi().clone(), v.lo().clone()))
        } else if v.hi() <= u.lo() {
            Some(Interval::new(v.hi().clone(), u.lo().clone()))
        } else {
            None
        };
        let env_points = env.iter().all(Interval::is_point);
        let mut resolution = self.min_width.clone();
        for w in env.iter().map(Interval::width).chain([u.width(), v.width()]) {
            if w > resolution {
                resolution = w;
            }
        }

        if depth >= self.max_depth {
            self.exhausted = true;
            let whole = self.body(o, sense, env, &range, &share, depth)?;
            return Ok(sense.orient(whole));
        }

        let mut fault = None;
        let mut cells = vec![self.cell(o, sense, env, range.clone(), None, &share, depth, &mut fault)?];

        // Best verified lower bound and the width of the sample that gave it.
        let mut best: Option<Dyadic> = None;
        let mut slack = Dyadic::zero();
        let take_sample = |this: &mut Self, env: &mut Vec<Interval>, y: &Interval, best: &mut Option<Dyadic>, slack: &mut Dyadic| -> Result<(), EvalError> {
            let Some(common) = &common else { return Ok(()) };
            let point = Interval::point(clamp(y.midpoint(), common));
            match this.body(o, sense, env, &point, &share, depth) {
                Ok(iv) => {
                    if best.as_ref().is_none_or(|b| iv.lo() > b) {
                        *slack = iv.width();
                        *best = Some(iv.lo().clone());
                    }
                    Ok(())
                }
                Err(e @ EvalError::DomainViolation { .. }) if env_points => Err(e),
                Err(EvalError::DomainViolation { .. }) => Ok(()),
                Err(e) => Err(e),
            }
        };
        if let Some(c) = common.clone() {
            for y in [Interval::point(c.lo().clone()), Interval::point(c.hi().clone()), c] {
                take_sample(self, env, &y, &mut best, &mut slack)?;
            }
        }

        let half_tol = tol.shl(-1);
        let mut iteration = 0u32;
        loop {
            let lower = if common.is_some() {
                best.clone()
            } else {
                // No point lies in every [u(x), v(x)]: fall back to the
                // smallest cell lower bound, valid since each range is a
                // nonempty subset of the cells' union.
                cells.iter().map(|c| c.lower.clone()).collect::<Option<Vec<_>>>().and_then(|v| v.into_iter().min())
            };
            let upper = cells.iter().map(|c| c.upper.clone()).collect::<Option<Vec<_>>>().and_then(|v| v.into_iter().max());
            self.emit(depth, iteration, cells.len(), lower.as_ref(), upper.as_ref());

            if let (Some(lo), Some(hi)) = (&lower, &upper) {
                if &(hi - lo) <= tol {
                    break;
                }
            }
            if self.exhausted {
                break;
            }
            let threshold = lower.as_ref().map(|lo| &(lo + &slack) + &half_tol);
            let (active, mut next): (Vec<Cell>, Vec<Cell>) = cells.into_iter().partition(|c| {
                c.y.width() > resolution
                    && match (&c.upper, &threshold) {
                        (Some(up), Some(th)) => up > th,
                        _ => true,
                    }
            });
            if active.is_empty() {
                cells = next;
                break;
            }

            let mut pick: Option<(Option<Dyadic>, Interval)> = None;
            for parent in &active {
                self.splits += 1;
                if self.splits >= self.max_splits {
                    self.exhausted = true;
                }
                let (a, b) = parent.y.split();
                for half in [a, b] {
                    let child = self.cell(o, sense, env, half, Some(parent), &share, depth, &mut fault)?;
                    let better = match (&pick, &child.upper) {
                        (None, _) => true,
                        (Some((None, _)), Some(_)) => true,
                        (Some((Some(p), _)), Some(u)) => u > p,
                        _ => false,
                    };
                    if better {
                        pick = Some((child.upper.clone(), child.y.clone()));
                    }
                    next.push(child);
                }
            }
            if let Some((_, y)) = pick {
                take_sample(self, env, &y, &mut best, &mut slack)?;
            }

            let lower = if common.is_some() { best.clone() } else { None };
            if let Some(lo) = &lower {
                next.retain(|c| c.upper.as_ref().is_none_or(|up| up >= lo));
            }
            next.sort_by(|a, b| a.y.lo().cmp(b.y.lo()));
            cells = next;
            iteration += 1;
        }

        let lower = if common.is_some() {
            best
        } else {
            cells.iter().map(|c| c.lower.clone()).collect::<Option<Vec<_>>>().and_then(|v| v.into_iter().min())
        };
        let upper = cells.iter().map(|c| c.upper.clone()).collect::<Option<Vec<_>>>().and_then(|v| v.into_iter().max());
        match (lower, upper) {
            (Some(lo), Some(hi)) => {
                debug_assert!(lo <= hi, "inconsistent bounds {lo} > {hi}");
                Ok(sense.orient(Interval::spanning(lo, hi)))
            }
            _ => Err(fault.unwrap_or_else(|| EvalError::DomainViolation {
                location: format!("x{}", o.var),
                detail: "no evaluable point in the quantifier range".into(),
            })),
        }
    }
}

/// Enclose `t` over the box `env` at the budget's precision.
pub fn enclose(t: &AlphaTerm, env: &Env, budget: &EvalBudget) -> Result<Enclosure, EvalError> {
    enclose_traced(t, env, budget, None)
}

pub fn enclose_traced(t: &AlphaTerm, env: &Env, budget: &EvalBudget, trace: Option<TraceSink<'_>>) -> Result<Enclosure, EvalError> {
    if !t.is_closed_at(env.len()) {
        return Err(EvalError::UnboundVariable(env.len()));
    }
    let mut search = Search {
        precision: budget.precision,
        min_width: budget.precision.ulp(),
        max_splits: budget.max_splits,
        max_depth: budget.max_depth,
        splits: 0,
        exhausted: false,
        round: 0,
        trace,
    };
    let mut scratch = env.0.clone();
    let base = scratch.len();
    let interval = search.eval(t, &mut scratch, &budget.tolerance, base)?;
    let status = if search.exhausted {
        Status::BudgetExhausted
    } else if interval.width() <= budget.tolerance {
        Status::Converged
    } else {
        Status::Partial
    };
    Ok(Enclosure { interval, status })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalConfig {
    pub max_splits: u64,
    pub max_depth: usize,
    pub max_rounds: u32,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { max_splits: DEFAULT_MAX_SPLITS, max_depth: DEFAULT_MAX_DEPTH, max_rounds: DEFAULT_MAX_ROUNDS }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedEval {
    /// Midpoint of `enclosure`; within `2^-k` of the exact value when
    /// converged.
    pub value: Dyadic,
    pub enclosure: Interval,
    pub status: Status,
    /// Enclosure width after each global round.
    pub widths: Vec<Dyadic>,
    pub splits: u64,
}

/// Starting working precision for output tolerance `2^-k`.
pub fn initial_precision(k: u32) -> Precision {
    Precision::new(32.max(k + 8))
}

/// Approximate a closed α-term to within `2^-k`.
pub fn eval_closed(t: &ClosedAlphaTerm, k: u32, config: &EvalConfig, mut trace: Option<TraceSink<'_>>) -> Result<ClosedEval, EvalError> {
    let target = Dyadic::pow2(-(k as i64));
    let p0 = initial_precision(k);
    let mut current: Option<Interval> = None;
    let mut widths = Vec::new();
    let mut splits = 0u64;
    // Rounds can run out before the budget does.
    let mut status = Status::Partial;

    for round in 0..config.max_rounds.max(1) {
        let precision = Precision::new(p0.bits().saturating_mul(1 << round.min(16)));
        let tol = target.shl(-(round as i64));
        let mut search = Search {
            precision,
            min_width: precision.ulp(),
            max_splits: config.max_splits.saturating_sub(splits),
            max_depth: config.max_depth,
            splits: 0,
            exhausted: false,
            round,
            trace: trace.as_mut().map(|t| &mut **t as TraceSink<'_>),
        };
        let iv = search.eval(t.term(), &mut Vec::new(), &tol, 0)?;
        splits += search.splits;
        let merged = match &current {
            Some(prev) => prev.intersect(&iv).unwrap_or(iv),
            None => iv,
        };
        widths.push(merged.width());
        current = Some(merged);
        let width_ok = widths.last().is_some_and(|w| w <= &target);
        if width_ok {
            status = Status::Converged;
            break;
        }
        if search.exhausted {
            status = Status::BudgetExhausted;
            break;
        }
    }
    let enclosure = current.expect("at least one round runs");
    Ok(ClosedEval { value: enclosure.midpoint(), enclosure, status, widths, splits })
}
