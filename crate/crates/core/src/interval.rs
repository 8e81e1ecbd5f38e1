//! Outward-rounded intervals over [`Dyadic`] endpoints.
//!
//! Every operation is sound (the result encloses the exact image) and
//! inclusion-isotone. Operations that can grow the endpoint mantissas take a
//! [`Precision`] and round the result outward to that many fractional bits.

use std::fmt;

use thiserror::Error;

use crate::dyadic::Dyadic;
use crate::Rational;

/// Number of fractional bits kept on interval endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(u32);

impl Precision {
    pub fn new(bits: u32) -> Self {
        assert!(bits > 0, "precision must be positive");
        Precision(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub(crate) fn frac(self) -> i64 {
        self.0 as i64
    }

    /// Precision raised by `extra` bits.
    pub fn plus(self, extra: u32) -> Self {
        Precision(self.0 + extra)
    }

    /// `2^-bits`.
    pub fn ulp(self) -> Dyadic {
        Dyadic::pow2(-(self.0 as i64))
    }
}

/// A partial function was applied outside its domain.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("domain violation in {op}: {detail}")]
pub struct DomainError {
    pub op: &'static str,
    pub detail: String,
}

/// Closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Interval {
    /// Panics if `lo > hi`.
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: {lo} > {hi}");
        Interval { lo, hi }
    }

    /// Interval spanning both endpoints in whichever order they come.
    pub fn spanning(a: Dyadic, b: Dyadic) -> Self {
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn point(x: Dyadic) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn from_i64(lo: i64, hi: i64) -> Self {
        Interval::new(Dyadic::from_i64(lo), Dyadic::from_i64(hi))
    }

    /// Tightest enclosure of `q` on the `2^-p` grid (exact if `q` is dyadic).
    pub fn from_rational(q: &Rational, p: Precision) -> Self {
        if let Some(d) = Dyadic::from_rational_exact(q) {
            return Interval::point(d);
        }
        Interval {
            lo: Dyadic::from_rational_floor(q, p.frac()),
            hi: Dyadic::from_rational_ceil(q, p.frac()),
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn into_bounds(self) -> (Dyadic, Dyadic) {
        (self.lo, self.hi)
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Dyadic {
        Dyadic::midpoint(&self.lo, &self.hi)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Largest absolute value in the interval.
    pub fn mag(&self) -> Dyadic {
        Dyadic::max(&self.lo.abs(), &self.hi.abs())
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval { lo: Dyadic::min(&self.lo, &other.lo), hi: Dyadic::max(&self.hi, &other.hi) }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = Dyadic::max(&self.lo, &other.lo);
        let hi = Dyadic::min(&self.hi, &other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// Split at the exact midpoint.
    pub fn split(&self) -> (Interval, Interval) {
        let m = self.midpoint();
        (Interval { lo: self.lo.clone(), hi: m.clone() }, Interval { lo: m, hi: self.hi.clone() })
    }

    /// Round both endpoints outward onto the `2^-p` grid.
    pub fn round_out(&self, p: Precision) -> Interval {
        Interval { lo: self.lo.floor_to(p.frac()), hi: self.hi.ceil_to(p.frac()) }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn add(&self, other: &Interval, p: Precision) -> Interval {
        Interval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }.round_out(p)
    }

    pub fn sub(&self, other: &Interval, p: Precision) -> Interval {
        Interval { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo }.round_out(p)
    }

    pub fn mul(&self, other: &Interval, p: Precision) -> Interval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().cloned().unwrap_or_default();
        let hi = products.iter().max().cloned().unwrap_or_default();
        Interval { lo, hi }.round_out(p)
    }

    /// Multiply by an exact dyadic scalar.
    pub fn scale(&self, k: &Dyadic, p: Precision) -> Interval {
        let a = &self.lo * k;
        let b = &self.hi * k;
        Interval::spanning(a, b).round_out(p)
    }

    pub fn abs(&self) -> Interval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            Interval { lo: Dyadic::zero(), hi: self.mag() }
        }
    }

    pub fn min(&self, other: &Interval) -> Interval {
        Interval { lo: Dyadic::min(&self.lo, &other.lo), hi: Dyadic::min(&self.hi, &other.hi) }
    }

    pub fn max(&self, other: &Interval) -> Interval {
        Interval { lo: Dyadic::max(&self.lo, &other.lo), hi: Dyadic::max(&self.hi, &other.hi) }
    }

    pub fn div(&self, other: &Interval, p: Precision) -> Result<Interval, DomainError> {
        if other.contains_zero() {
            return Err(DomainError { op: "/", detail: format!("divisor {other} contains 0") });
        }
        let pairs = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let lo = pairs.iter().map(|(n, d)| Dyadic::div_floor(n, d, p.frac())).min().unwrap_or_default();
        let hi = pairs.iter().map(|(n, d)| Dyadic::div_ceil(n, d, p.frac())).max().unwrap_or_default();
        Ok(Interval { lo, hi })
    }

    /// Divide by a positive integer.
    pub fn div_int(&self, n: u64, p: Precision) -> Interval {
        let d = Dyadic::from_i64(n as i64);
        Interval { lo: Dyadic::div_floor(&self.lo, &d, p.frac()), hi: Dyadic::div_ceil(&self.hi, &d, p.frac()) }
    }

    pub fn powi(&self, n: u32, p: Precision) -> Interval {
        fn pow(d: &Dyadic, n: u32) -> Dyadic {
            Dyadic::new(d.mantissa().pow(n), d.exponent() * n as i64)
        }
        if n == 0 {
            return Interval::point(Dyadic::one());
        }
        let res = if n % 2 == 1 || !self.lo.is_negative() {
            Interval { lo: pow(&self.lo, n), hi: pow(&self.hi, n) }
        } else if !self.hi.is_positive() {
            Interval { lo: pow(&self.hi, n), hi: pow(&self.lo, n) }
        } else {
            Interval { lo: Dyadic::zero(), hi: pow(&self.mag(), n) }
        };
        res.round_out(p)
    }
}
