//! Exact dyadic rationals `m · 2^e` with arbitrary-precision mantissa.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

/// A dyadic rational `mantissa · 2^exponent`.
///
/// Always kept canonical: the mantissa is odd, or the value is zero with
/// exponent zero. Structural equality is therefore numeric equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        let mut d = Dyadic { mantissa, exponent };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic::default()
    }

    pub fn one() -> Self {
        Dyadic::from_i64(1)
    }

    pub fn from_i64(v: i64) -> Self {
        Dyadic::new(BigInt::from(v), 0)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        Dyadic { mantissa: BigInt::one(), exponent: e }
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exponent = 0;
            return;
        }
        if let Some(tz) = self.mantissa.trailing_zeros() {
            if tz > 0 {
                self.mantissa >>= tz;
                self.exponent += tz as i64;
            }
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn signum(&self) -> i32 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic { mantissa: self.mantissa.abs(), exponent: self.exponent }
    }

    /// Multiply by `2^k` exactly.
    pub fn shl(&self, k: i64) -> Self {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { mantissa: self.mantissa.clone(), exponent: self.exponent + k }
    }

    /// Smallest `b` with `|self| < 2^b`; `i64::MIN` for zero.
    pub fn magnitude_bits(&self) -> i64 {
        if self.is_zero() {
            return i64::MIN;
        }
        self.mantissa.bits() as i64 + self.exponent
    }

    /// Number of fractional bits needed to represent the value exactly.
    pub fn fractional_bits(&self) -> u64 {
        if self.exponent >= 0 {
            0
        } else {
            (-self.exponent) as u64
        }
    }

    /// Largest multiple of `2^-p` not above `self`.
    pub fn floor_to(&self, p: i64) -> Self {
        if self.exponent >= -p {
            return self.clone();
        }
        let shift = (-p - self.exponent) as u64;
        let (q, _) = self.mantissa.div_mod_floor(&(BigInt::one() << shift));
        Dyadic::new(q, -p)
    }

    /// Smallest multiple of `2^-p` not below `self`.
    pub fn ceil_to(&self, p: i64) -> Self {
        -(-self).floor_to(p)
    }

    /// Floor to an integer.
    pub fn floor_int(&self) -> BigInt {
        let f = self.floor_to(0);
        f.mantissa << f.exponent as u64
    }

    pub fn ceil_int(&self) -> BigInt {
        -((-self).floor_int())
    }

    /// Integer nearest to `self`, ties rounded up.
    pub fn round_int(&self) -> BigInt {
        (self + &Dyadic::pow2(-1)).floor_int()
    }

    /// `floor(num / den · 2^p) · 2^-p`. Panics on zero divisor.
    pub fn div_floor(num: &Dyadic, den: &Dyadic, p: i64) -> Dyadic {
        assert!(!den.is_zero(), "dyadic division by zero");
        // num / den = (mn / md) · 2^(en - ed); scale so the integer quotient
        // carries p fractional bits.
        let shift = num.exponent - den.exponent + p;
        let (n, d) = if shift >= 0 {
            (&num.mantissa << shift as u64, den.mantissa.clone())
        } else {
            (num.mantissa.clone(), &den.mantissa << (-shift) as u64)
        };
        Dyadic::new(n.div_floor(&d), -p)
    }

    pub fn div_ceil(num: &Dyadic, den: &Dyadic, p: i64) -> Dyadic {
        -Dyadic::div_floor(&-num, den, p)
    }

    /// `floor(q · 2^p) · 2^-p`.
    pub fn from_rational_floor(q: &Rational, p: i64) -> Dyadic {
        let num = Dyadic::new(q.numer().clone(), 0);
        let den = Dyadic::new(q.denom().clone(), 0);
        Dyadic::div_floor(&num, &den, p)
    }

    pub fn from_rational_ceil(q: &Rational, p: i64) -> Dyadic {
        -Dyadic::from_rational_floor(&-q, p)
    }

    /// Exact conversion when the rational has a power-of-two denominator.
    pub fn from_rational_exact(q: &Rational) -> Option<Dyadic> {
        let den = q.denom();
        let tz = den.trailing_zeros().unwrap_or(0);
        if (den >> tz as usize).is_one() {
            Some(Dyadic::new(q.numer().clone(), -(tz as i64)))
        } else {
            None
        }
    }

    pub fn to_rational(&self) -> Rational {
        if self.exponent >= 0 {
            Rational::from_integer(&self.mantissa << self.exponent as u64)
        } else {
            Rational::new(self.mantissa.clone(), BigInt::one() << (-self.exponent) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        // Keep 64 significant bits before converting to avoid overflow in
        // the intermediate integer.
        let bits = self.mantissa.bits() as i64;
        let drop = (bits - 64).max(0);
        let m = (&self.mantissa >> drop as u64).to_f64().unwrap_or(f64::NAN);
        let e = self.exponent + drop;
        m * 2f64.powi(e.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }

    pub fn min(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn max(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    /// Midpoint `(a + b) / 2`, exact.
    pub fn midpoint(a: &Dyadic, b: &Dyadic) -> Dyadic {
        (a + b).shl(-1)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Exact rendering: integer, or `n/2^k` written as a reduced fraction.
impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent >= 0 {
            write!(f, "{}", &self.mantissa << self.exponent as u64)
        } else {
            write!(f, "{}/{}", self.mantissa, BigInt::one() << (-self.exponent) as u64)
        }
    }
}

impl From<i64> for Dyadic {
    fn from(v: i64) -> Self {
        Dyadic::from_i64(v)
    }
}

impl From<BigInt> for Dyadic {
    fn from(v: BigInt) -> Self {
        Dyadic::new(v, 0)
    }
}

fn aligned(a: &Dyadic, b: &Dyadic) -> (BigInt, BigInt, i64) {
    let e = a.exponent.min(b.exponent);
    let ma = if a.exponent > e { &a.mantissa << (a.exponent - e) as u64 } else { a.mantissa.clone() };
    let mb = if b.exponent > e { &b.mantissa << (b.exponent - e) as u64 } else { b.mantissa.clone() };
    (ma, mb, e)
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        // Same sign: compare magnitudes first when they differ decisively.
        let (ba, bb) = (self.magnitude_bits(), other.magnitude_bits());
        if ba != bb {
            let ord = ba.cmp(&bb);
            return if sa > 0 { ord } else { ord.reverse() };
        }
        let (ma, mb, _) = aligned(self, other);
        ma.cmp(&mb)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (ma, mb, e) = aligned(self, rhs);
        Dyadic::new(ma + mb, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        if rhs.is_zero() {
            return self.clone();
        }
        let (ma, mb, e) = aligned(self, rhs);
        Dyadic::new(ma - mb, e)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() || rhs.is_zero() {
            return Dyadic::zero();
        }
        // Product of odd mantissas is odd: already canonical.
        Dyadic { mantissa: &self.mantissa * &rhs.mantissa, exponent: self.exponent + rhs.exponent }
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { mantissa: -&self.mantissa, exponent: self.exponent }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { mantissa: -self.mantissa, exponent: self.exponent }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: &Dyadic) -> Dyadic {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
