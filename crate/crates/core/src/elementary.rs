//! Validated enclosures of the elementary functions.
//!
//! Point values are computed with argument reduction followed by a Taylor
//! series whose truncation error is bounded explicitly; interval versions
//! use monotonic pieces and, for `sin`/`cos`, widen to `±1` when an extremum
//! may lie inside the argument.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::dyadic::Dyadic;
use crate::interval::{DomainError, Interval, Precision};
use crate::Rational;

/// Extra working bits: absorbs accumulated rounding of the series loops.
fn guard_bits(p: Precision) -> u32 {
    24 + (32 - p.bits().leading_zeros())
}

/// Series cutoff: a few ulps at `wp`, since outward rounding keeps every
/// term at least one ulp wide.
fn tiny(wp: Precision) -> Dyadic {
    Dyadic::pow2(-(wp.bits() as i64) + 3)
}

fn plus_minus(t: &Dyadic) -> Interval {
    Interval::new(-t, t.clone())
}

fn halve(x: &Interval) -> Interval {
    Interval::new(x.lo().shl(-1), x.hi().shl(-1))
}

/// `exp(r)` for `|r| <= 1/2`.
fn exp_series(r: &Interval, wp: Precision) -> Interval {
    let mut term = Interval::point(Dyadic::one());
    let mut sum = term.clone();
    let eps = tiny(wp);
    for i in 1.. {
        term = term.mul(r, wp).div_int(i, wp);
        sum = sum.add(&term, wp);
        let t = term.mag();
        if t <= eps {
            // Remaining terms shrink at least geometrically by 1/2.
            return sum.add(&plus_minus(&t), wp);
        }
    }
    unreachable!()
}

/// `sin(r)` and `cos(r)` for `|r| <= 1`.
fn sin_cos_series(r: &Interval, wp: Precision) -> (Interval, Interval) {
    let r2 = r.powi(2, wp);
    let eps = tiny(wp);

    let mut term = r.clone();
    let mut sin = term.clone();
    let mut k = 1u64;
    loop {
        term = term.mul(&r2, wp).div_int((k + 1) * (k + 2), wp).neg();
        k += 2;
        sin = sin.add(&term, wp);
        let t = term.mag();
        if t <= eps {
            sin = sin.add(&plus_minus(&t), wp);
            break;
        }
    }

    let mut term = Interval::point(Dyadic::one());
    let mut cos = term.clone();
    let mut k = 0u64;
    loop {
        term = term.mul(&r2, wp).div_int((k + 1) * (k + 2), wp).neg();
        k += 2;
        cos = cos.add(&term, wp);
        let t = term.mag();
        if t <= eps {
            cos = cos.add(&plus_minus(&t), wp);
            break;
        }
    }
    (sin, cos)
}

/// `atan(z)` for `|z| <= 1/2`.
fn atan_series(z: &Interval, wp: Precision) -> Interval {
    let z2 = z.powi(2, wp);
    let eps = tiny(wp);
    let mut power = z.clone();
    let mut sum = z.clone();
    let mut k = 1u64;
    loop {
        power = power.mul(&z2, wp).neg();
        k += 2;
        let term = power.div_int(k, wp);
        sum = sum.add(&term, wp);
        let t = power.mag();
        if t <= eps {
            return sum.add(&plus_minus(&t), wp);
        }
    }
}

static PI_CACHE: RwLock<Option<(u32, Interval)>> = RwLock::new(None);

fn compute_pi(p: Precision) -> Interval {
    let wp = p.plus(guard_bits(p) + 8);
    let fifth = Interval::from_rational(&Rational::new(1.into(), 5.into()), wp);
    let inv239 = Interval::from_rational(&Rational::new(1.into(), 239.into()), wp);
    let a = atan_series(&fifth, wp).scale(&Dyadic::from_i64(16), wp);
    let b = atan_series(&inv239, wp).scale(&Dyadic::from_i64(4), wp);
    a.sub(&b, wp)
}

/// Validated enclosure of π with width below `2^-(p-1)`.
///
/// Backed by a process-wide cache that only ever gets tighter; concurrent
/// callers may both compute, and either result is a valid enclosure.
pub fn pi(p: Precision) -> Interval {
    if let Ok(guard) = PI_CACHE.read() {
        if let Some((bits, iv)) = guard.as_ref() {
            if *bits >= p.bits() {
                return iv.round_out(p);
            }
        }
    }
    let target = {
        let cached = PI_CACHE.read().ok().and_then(|g| g.as_ref().map(|(b, _)| *b)).unwrap_or(0);
        p.bits().max(cached.saturating_mul(2)).max(256)
    };
    let fresh = compute_pi(Precision::new(target));
    if let Ok(mut guard) = PI_CACHE.write() {
        let better = guard.as_ref().is_none_or(|(b, _)| *b < target);
        if better {
            *guard = Some((target, fresh.clone()));
        }
    }
    fresh.round_out(p)
}

fn exp_point(x: &Dyadic, p: Precision) -> Interval {
    if x.is_zero() {
        return Interval::point(Dyadic::one());
    }
    let mag = x.magnitude_bits();
    let s = (mag + 1).max(0) as u32;
    let r = Interval::point(x.shl(-(s as i64)));
    let growth = if x.is_positive() { (x.to_f64() * std::f64::consts::LOG2_E).ceil() as u32 + 1 } else { 0 };
    let wp = p.plus(guard_bits(p) + s + growth);
    let mut y = exp_series(&r, wp);
    for _ in 0..s {
        y = y.mul(&y, wp);
    }
    y.round_out(p)
}

/// `sin(x)` and `cos(x)` at a point.
fn sin_cos_point(x: &Dyadic, p: Precision) -> (Interval, Interval) {
    if x.is_zero() {
        return (Interval::point(Dyadic::zero()), Interval::point(Dyadic::one()));
    }
    let mag = x.magnitude_bits().max(0) as u32;
    let wp = p.plus(guard_bits(p) + mag);
    let half_pi = halve(&pi(wp.plus(mag + 4)));
    let quarter = Dyadic::div_floor(x, &half_pi.midpoint(), 2).round_int();
    let turns = Dyadic::from(quarter.clone());
    let r = Interval::point(x.clone()).sub(&half_pi.scale(&turns, wp), wp);
    let (s, c) = sin_cos_series(&r, wp);
    let unit = Interval::from_i64(-1, 1);
    let clamp = |v: Interval| v.intersect(&unit).unwrap_or(unit.clone()).round_out(p);
    let (sin, cos) = match quarter.mod_floor(&BigInt::from(4)).to_u8() {
        Some(0) => (s, c),
        Some(1) => (c, s.neg()),
        Some(2) => (s.neg(), c.neg()),
        _ => (c.neg(), s),
    };
    (clamp(sin), clamp(cos))
}

/// `atan(y)` for `|y| <= 1`.
fn atan_unit(y: &Interval, wp: Precision) -> Interval {
    let half = Dyadic::pow2(-1);
    if y.mag() <= half {
        return atan_series(y, wp);
    }
    if y.hi().is_negative() {
        return atan_unit(&y.neg(), wp).neg();
    }
    // atan(y) = π/4 + atan((y - 1) / (y + 1)), argument in (-1/3, 0].
    let one = Interval::point(Dyadic::one());
    let z = y
        .sub(&one, wp)
        .div(&y.add(&one, wp), wp)
        .expect("y + 1 is positive here");
    let quarter_pi = halve(&halve(&pi(wp)));
    quarter_pi.add(&atan_series(&z, wp), wp)
}

fn atan_point(x: &Dyadic, p: Precision) -> Interval {
    if x.is_zero() {
        return Interval::point(Dyadic::zero());
    }
    let wp = p.plus(guard_bits(p));
    let res = if x.abs() > Dyadic::one() {
        let inv = Interval::point(Dyadic::one())
            .div(&Interval::point(x.clone()), wp)
            .expect("nonzero point");
        let half_pi = halve(&pi(wp));
        let a = atan_unit(&inv, wp);
        if x.is_positive() {
            half_pi.sub(&a, wp)
        } else {
            half_pi.neg().sub(&a, wp)
        }
    } else {
        atan_unit(&Interval::point(x.clone()), wp)
    };
    res.round_out(p)
}

fn sqrt_point(x: &Dyadic, p: Precision) -> Interval {
    let shift = 2 * p.frac();
    let lo_int = x.floor_to(shift).shl(shift).floor_int();
    let hi_int = x.ceil_to(shift).shl(shift).ceil_int();
    let lo = lo_int.sqrt();
    let mut hi = hi_int.sqrt();
    if &hi * &hi < hi_int {
        hi += BigInt::one();
    }
    Interval::new(Dyadic::new(lo, -p.frac()), Dyadic::new(hi, -p.frac()))
}

fn monotone(x: &Interval, p: Precision, f: fn(&Dyadic, Precision) -> Interval) -> Interval {
    if x.is_point() {
        return f(x.lo(), p);
    }
    let lo = f(x.lo(), p).into_bounds().0;
    let hi = f(x.hi(), p).into_bounds().1;
    Interval::new(lo, hi)
}

pub fn exp(x: &Interval, p: Precision) -> Interval {
    monotone(x, p, exp_point)
}

pub fn atan(x: &Interval, p: Precision) -> Interval {
    monotone(x, p, atan_point)
}

pub fn sqrt(x: &Interval, p: Precision) -> Result<Interval, DomainError> {
    if x.lo().is_negative() {
        return Err(DomainError { op: "sqrt", detail: format!("argument {x} has negative part") });
    }
    Ok(monotone(x, p, sqrt_point))
}

/// Whether `[lo, hi]` may contain a point `quarter·π/2 + 2πn`.
fn may_contain_phase(x: &Interval, quarter: i64, p: Precision) -> bool {
    let mag = x.mag().magnitude_bits().max(0) as u32;
    let wp = p.plus(mag + 8);
    let pi = pi(wp);
    let two_pi = pi.scale(&Dyadic::from_i64(2), wp);
    let offset = pi.scale(&Dyadic::new(quarter.into(), -1), wp);
    let a = Interval::point(x.lo().clone()).sub(&offset, wp).div(&two_pi, wp).expect("2π > 0");
    let b = Interval::point(x.hi().clone()).sub(&offset, wp).div(&two_pi, wp).expect("2π > 0");
    a.lo().ceil_int() <= b.hi().floor_int()
}

fn periodic(x: &Interval, p: Precision, use_cos: bool) -> Interval {
    let unit = Interval::from_i64(-1, 1);
    if x.width() >= Dyadic::from_i64(7) {
        return unit;
    }
    let pick = |d: &Dyadic| {
        let (s, c) = sin_cos_point(d, p);
        if use_cos {
            c
        } else {
            s
        }
    };
    if x.is_point() {
        return pick(x.lo());
    }
    let (max_phase, min_phase) = if use_cos { (0, 2) } else { (1, 3) };
    let (mut lo, mut hi) = pick(x.lo()).hull(&pick(x.hi())).into_bounds();
    if may_contain_phase(x, max_phase, p) {
        hi = Dyadic::one();
    }
    if may_contain_phase(x, min_phase, p) {
        lo = -Dyadic::one();
    }
    Interval::new(lo, hi)
}

pub fn sin(x: &Interval, p: Precision) -> Interval {
    periodic(x, p, false)
}

pub fn cos(x: &Interval, p: Precision) -> Interval {
    periodic(x, p, true)
}
