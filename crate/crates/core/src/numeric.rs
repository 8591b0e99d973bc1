//! Scalars used throughout the crate.
//!
//! Lattice data lives in quadratic number fields `Q(sqrt d)`, so exact
//! arithmetic is carried out on [`QuadraticNumber`]s with `i128` rational
//! parts. [`Real`] wraps either an exact value or an `f64`; mixing the two
//! degrades to floating point.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    let (n, d) = (*r.numer(), *r.denom());
    if n.unsigned_abs() < (1u128 << 100) && d < (1i128 << 100) {
        n as f64 / d as f64
    } else {
        r.to_f64().unwrap_or(f64::NAN)
    }
}

/// Parses `"n"`, `"n/d"` or a finite decimal such as `"-0.125"` exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if let Some((n, d)) = t.split_once('/') {
        let n: i128 = n.trim().parse().map_err(|_| bad())?;
        let d: i128 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 30 {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_part: i128 = match int.trim_start_matches(['-', '+']) {
            "" => 0,
            s => s.parse().map_err(|_| bad())?,
        };
        let scale = 10i128.checked_pow(frac.len() as u32).ok_or_else(bad)?;
        let frac_part: i128 = frac.parse().map_err(|_| bad())?;
        let magnitude = int_part
            .checked_mul(scale)
            .and_then(|v| v.checked_add(frac_part))
            .ok_or_else(bad)?;
        let n = if negative { -magnitude } else { magnitude };
        return Ok(Rational::new(n, scale));
    }
    let n: i128 = t.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

fn is_squarefree(d: u32) -> bool {
    if d < 2 {
        return false;
    }
    let mut k = 2u32;
    while k.saturating_mul(k) <= d {
        if d.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

/// `rational + surd * sqrt(radicand)` with `radicand` squarefree.
///
/// Canonical form: `radicand == 0` exactly when `surd == 0`, so structural
/// equality is numeric equality.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct QuadraticNumber {
    rational: Rational,
    surd: Rational,
    radicand: u32,
}

impl QuadraticNumber {
    pub fn new(rational: Rational, surd: Rational, radicand: u32) -> Result<Self> {
        if surd.is_zero() {
            return Ok(Self::from_rational(rational));
        }
        if !is_squarefree(radicand) {
            return Err(Error::InvalidInput(format!(
                "radicand {radicand} is not a squarefree integer >= 2"
            )));
        }
        Ok(Self { rational, surd, radicand })
    }

    pub fn from_rational(rational: Rational) -> Self {
        Self { rational, surd: Rational::zero(), radicand: 0 }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n as i128))
    }

    pub fn sqrt(radicand: u32) -> Result<Self> {
        Self::new(Rational::zero(), Rational::from_integer(1), radicand)
    }

    /// `(1 + sqrt 5) / 2`.
    pub fn golden_ratio() -> Self {
        let half = Rational::new(1, 2);
        Self { rational: half, surd: half, radicand: 5 }
    }

    pub fn rational_part(&self) -> Rational {
        self.rational
    }

    pub fn surd_part(&self) -> Rational {
        self.surd
    }

    /// Zero for rational numbers.
    pub fn radicand(&self) -> u32 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.radicand == 0
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.is_rational()
    }

    pub fn conjugate(&self) -> Self {
        Self { surd: -self.surd, ..*self }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_rational() {
            rational_to_f64(&self.rational)
        } else {
            rational_to_f64(&self.rational) + rational_to_f64(&self.surd) * (self.radicand as f64).sqrt()
        }
    }

    fn common_radicand(&self, other: &Self) -> Option<u32> {
        match (self.radicand, other.radicand) {
            (0, d) | (d, 0) => Some(d),
            (a, b) if a == b => Some(a),
            _ => None,
        }
    }

    fn build(rational: Rational, surd: Rational, radicand: u32) -> Self {
        if surd.is_zero() {
            Self::from_rational(rational)
        } else {
            Self { rational, surd, radicand }
        }
    }

    /// `None` when the operands live in different quadratic fields.
    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        let d = self.common_radicand(other)?;
        Some(Self::build(self.rational + other.rational, self.surd + other.surd, d))
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.checked_add(&-*other)
    }

    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let d = self.common_radicand(other)?;
        let dd = Rational::from_integer(d as i128);
        let rational = self.rational * other.rational + self.surd * other.surd * dd;
        let surd = self.rational * other.surd + self.surd * other.rational;
        Some(Self::build(rational, surd, d))
    }

    /// Field norm `r^2 - s^2 d`.
    pub fn norm(&self) -> Rational {
        self.rational * self.rational - self.surd * self.surd * Rational::from_integer(self.radicand as i128)
    }

    /// `None` for incompatible fields; panics on division by zero.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        self.common_radicand(other)?;
        assert!(!other.is_zero(), "division by zero");
        let norm = other.norm();
        let num = self.checked_mul(&other.conjugate())?;
        Some(Self::build(num.rational / norm, num.surd / norm, num.radicand.max(other.radicand)))
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        let sr = self.rational.numer().cmp(&0);
        let ss = self.surd.numer().cmp(&0);
        if ss == Ordering::Equal {
            return sr;
        }
        if sr == Ordering::Equal || sr == ss {
            return ss;
        }
        // Signs differ: compare r^2 against s^2 d.
        let (a, b) = (*self.rational.numer(), *self.rational.denom());
        let (c, e) = (*self.surd.numer(), *self.surd.denom());
        let d = self.radicand as i128;
        let lhs = a.checked_mul(a).and_then(|v| v.checked_mul(e)).and_then(|v| v.checked_mul(e));
        let rhs = c
            .checked_mul(c)
            .and_then(|v| v.checked_mul(d))
            .and_then(|v| v.checked_mul(b))
            .and_then(|v| v.checked_mul(b));
        let rational_dominates = match (lhs, rhs) {
            (Some(l), Some(r)) => l.cmp(&r),
            _ => {
                let (a, b, c, e, d) =
                    (BigInt::from(a), BigInt::from(b), BigInt::from(c), BigInt::from(e), BigInt::from(d));
                (&a * &a * &e * &e).cmp(&(&c * &c * d * &b * &b))
            }
        };
        match rational_dominates {
            Ordering::Greater => sr,
            Ordering::Less => ss,
            Ordering::Equal => unreachable!("sqrt of a squarefree radicand is irrational"),
        }
    }

    /// Exact comparison inside one field.
    pub fn checked_cmp(&self, other: &Self) -> Option<Ordering> {
        // Floating point settles comparisons of well-separated values; the
        // error bound covers cancellation between the two parts.
        let (x, ex) = self.approximate();
        let (y, ey) = other.approximate();
        if (x - y).abs() > ex + ey {
            return Some(x.total_cmp(&y));
        }
        self.checked_sub(other).map(|d| d.signum())
    }

    /// Value in floating point and a bound on its absolute error.
    fn approximate(&self) -> (f64, f64) {
        let r = rational_to_f64(&self.rational);
        let s = rational_to_f64(&self.surd) * (self.radicand as f64).sqrt();
        (r + s, 1e-12 * (r.abs() + s.abs()) + f64::MIN_POSITIVE)
    }
}

impl Neg for QuadraticNumber {
    type Output = Self;
    fn neg(self) -> Self {
        Self::build(-self.rational, -self.surd, self.radicand)
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "{}/{}", r.numer(), r.denom())
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return fmt_rational(&self.rational, f);
        }
        if !self.rational.is_zero() {
            fmt_rational(&self.rational, f)?;
            if self.surd.is_positive() {
                write!(f, "+")?;
            }
        }
        fmt_rational(&self.surd, f)?;
        write!(f, "*sqrt({})", self.radicand)
    }
}

impl FromStr for QuadraticNumber {
    type Err = Error;

    /// Accepts `"r"`, `"s*sqrt(d)"` and `"r+s*sqrt(d)"` (or `-`), where `r`
    /// and `s` are rationals in any form accepted by [`parse_rational`].
    fn from_str(text: &str) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(root_at) = t.find("sqrt(") else {
            return Ok(Self::from_rational(parse_rational(&t)?));
        };
        let bad = || Error::Parse(format!("not a quadratic number: {text:?}"));
        let radicand: u32 = t[root_at + 5..]
            .strip_suffix(')')
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?;
        let head = &t[..root_at];
        let head = head.strip_suffix('*').unwrap_or(head);
        // Split head into rational part and surd coefficient at the last
        // sign that is not at position 0 and not part of an exponent.
        let split = head
            .char_indices()
            .rev()
            .find(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i);
        let (rational, coeff) = match split {
            Some(i) => (parse_rational(&head[..i])?, &head[i..]),
            None => (Rational::zero(), head),
        };
        let surd = match coeff.trim_start_matches('+') {
            "" => Rational::from_integer(1),
            "-" => Rational::from_integer(-1),
            c => parse_rational(c)?,
        };
        Self::new(rational, surd, radicand)
    }
}

/// An exact quadratic number or an `f64`.
#[derive(Clone, Copy, Debug)]
pub enum Real {
    Exact(QuadraticNumber),
    Float(f64),
}

impl Real {
    pub fn zero() -> Self {
        Real::Exact(QuadraticNumber::from_integer(0))
    }

    pub fn one() -> Self {
        Real::Exact(QuadraticNumber::from_integer(1))
    }

    pub fn integer(n: i64) -> Self {
        Real::Exact(QuadraticNumber::from_integer(n))
    }

    pub fn ratio(numer: i128, denom: i128) -> Self {
        Real::Exact(QuadraticNumber::from_rational(Rational::new(numer, denom)))
    }

    pub fn rational(r: Rational) -> Self {
        Real::Exact(QuadraticNumber::from_rational(r))
    }

    /// Normalizes `-0.0` so that hashing agrees with equality.
    pub fn float(x: f64) -> Self {
        Real::Float(if x == 0.0 { 0.0 } else { x })
    }

    pub fn infinity() -> Self {
        Real::Float(f64::INFINITY)
    }

    pub fn neg_infinity() -> Self {
        Real::Float(f64::NEG_INFINITY)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Real::Exact(_))
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Real::Exact(_) => true,
            Real::Float(x) => x.is_finite(),
        }
    }

    pub fn as_exact(&self) -> Option<&QuadraticNumber> {
        match self {
            Real::Exact(q) => Some(q),
            Real::Float(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Real::Exact(q) if q.is_rational() => Some(q.rational_part()),
            _ => None,
        }
    }

    /// `Some(n)` when the value is exactly the integer `n`.
    pub fn as_integer(&self) -> Option<i64> {
        let r = self.as_rational()?;
        if r.is_integer() {
            r.to_integer().to_i64()
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(q) => q.to_f64(),
            Real::Float(x) => *x,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Real::Exact(q) => q.is_zero(),
            Real::Float(x) => *x == 0.0,
        }
    }

    pub fn signum(&self) -> Ordering {
        match self {
            Real::Exact(q) => q.signum(),
            Real::Float(x) => x.partial_cmp(&0.0).unwrap_or(Ordering::Equal),
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -*self
        } else {
            *self
        }
    }

    /// Largest integer `<= self`, exact for exact values.
    pub fn floor(&self) -> i64 {
        let guess = self.to_f64().floor() as i64;
        match self {
            Real::Float(_) => guess,
            Real::Exact(_) => {
                let mut n = guess;
                while Real::integer(n) > *self {
                    n -= 1;
                }
                while Real::integer(n + 1) <= *self {
                    n += 1;
                }
                n
            }
        }
    }

    /// Smallest integer `>= self`.
    pub fn ceil(&self) -> i64 {
        -(-*self).floor()
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Numeric comparison; `Equal` for an exact value and a float that
    /// rounds to the same `f64`.
    pub fn value_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => match a.checked_cmp(b) {
                Some(o) => o,
                None => a.to_f64().total_cmp(&b.to_f64()),
            },
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }

    /// Approximates a float by the simplest rational within relative
    /// tolerance, falling back to the exact binary value.
    pub fn rationalize(&self) -> Option<Rational> {
        match self {
            Real::Exact(q) if q.is_rational() => Some(q.rational_part()),
            Real::Exact(_) => None,
            Real::Float(x) => {
                let approx = Ratio::<i64>::approximate_float(*x)?;
                Some(Rational::new(*approx.numer() as i128, *approx.denom() as i128))
            }
        }
    }

    fn combine(
        self,
        other: Self,
        exact: impl Fn(&QuadraticNumber, &QuadraticNumber) -> Option<QuadraticNumber>,
        float: impl Fn(f64, f64) -> f64,
    ) -> Self {
        if let (Real::Exact(a), Real::Exact(b)) = (&self, &other) {
            if let Some(v) = exact(a, b) {
                return Real::Exact(v);
            }
        }
        Real::float(float(self.to_f64(), other.to_f64()))
    }
}

impl From<i64> for Real {
    fn from(n: i64) -> Self {
        Real::integer(n)
    }
}

impl From<Rational> for Real {
    fn from(r: Rational) -> Self {
        Real::rational(r)
    }
}

impl From<QuadraticNumber> for Real {
    fn from(q: QuadraticNumber) -> Self {
        Real::Exact(q)
    }
}

impl From<f64> for Real {
    fn from(x: f64) -> Self {
        Real::float(x)
    }
}

impl Add for Real {
    type Output = Real;
    fn add(self, rhs: Real) -> Real {
        self.combine(rhs, |a, b| a.checked_add(b), |a, b| a + b)
    }
}

impl Sub for Real {
    type Output = Real;
    fn sub(self, rhs: Real) -> Real {
        self.combine(rhs, |a, b| a.checked_sub(b), |a, b| a - b)
    }
}

impl Mul for Real {
    type Output = Real;
    fn mul(self, rhs: Real) -> Real {
        self.combine(rhs, |a, b| a.checked_mul(b), |a, b| a * b)
    }
}

impl Div for Real {
    type Output = Real;
    fn div(self, rhs: Real) -> Real {
        self.combine(rhs, |a, b| a.checked_div(b), |a, b| a / b)
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        match self {
            Real::Exact(q) => Real::Exact(-q),
            Real::Float(x) => Real::float(-x),
        }
    }
}

impl Sum for Real {
    fn sum<I: Iterator<Item = Real>>(iter: I) -> Real {
        iter.fold(Real::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Real> for Real {
    fn sum<I: Iterator<Item = &'a Real>>(iter: I) -> Real {
        iter.fold(Real::zero(), |acc, x| acc + *x)
    }
}

/// Total order: numeric, with ties between an exact value and a float
/// broken in favour of the exact one so that `Eq` and `Hash` stay
/// structural.
impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.value_cmp(other) {
            Ordering::Equal => match (self, other) {
                (Real::Exact(a), Real::Exact(b)) => {
                    (a.radicand, a.rational, a.surd).cmp(&(b.radicand, b.rational, b.surd))
                }
                (Real::Exact(_), Real::Float(_)) => Ordering::Less,
                (Real::Float(_), Real::Exact(_)) => Ordering::Greater,
                (Real::Float(_), Real::Float(_)) => Ordering::Equal,
            },
            o => o,
        }
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Real {}

impl Hash for Real {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Real::Exact(q) => {
                0u8.hash(state);
                q.hash(state);
            }
            Real::Float(x) => {
                1u8.hash(state);
                x.to_bits().hash(state);
            }
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Exact(q) => q.fmt(f),
            Real::Float(x) => write!(f, "{x}"),
        }
    }
}

impl FromStr for Real {
    type Err = Error;

    /// Exact syntax first; anything else that parses as `f64` (exponents,
    /// `inf`) becomes a float.
    fn from_str(text: &str) -> Result<Self> {
        match text.parse::<QuadraticNumber>() {
            Ok(q) => Ok(Real::Exact(q)),
            Err(e) => text.trim().parse::<f64>().map(Real::float).map_err(|_| e),
        }
    }
}

/// Exact values serialize as strings (`"num/den"` for rationals), floats as
/// JSON numbers.
impl Serialize for Real {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Real::Exact(q) => serializer.collect_str(q),
            Real::Float(x) if x.is_finite() => serializer.serialize_f64(*x),
            Real::Float(x) => serializer.serialize_str(if *x > 0.0 { "inf" } else { "-inf" }),
        }
    }
}

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct RealVisitor;

        impl Visitor<'_> for RealVisitor {
            type Value = Real;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number or a string such as \"1/2\" or \"1/2+1/2*sqrt(5)\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Real, E> {
                Ok(Real::integer(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Real, E> {
                i64::try_from(v).map(Real::integer).map_err(E::custom)
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Real, E> {
                Ok(Real::float(v))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Real, E> {
                v.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(RealVisitor)
    }
}

/// Complex point mass with exact-capable parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weight {
    pub re: Real,
    pub im: Real,
}

impl Weight {
    pub fn zero() -> Self {
        Self { re: Real::zero(), im: Real::zero() }
    }

    pub fn real(re: Real) -> Self {
        Self { re, im: Real::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.is_real() && self.re.signum() != Ordering::Less
    }

    pub fn modulus(&self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }

    pub fn scale(&self, factor: Real) -> Self {
        Self { re: self.re * factor, im: self.im * factor }
    }

    /// Pointwise order on real weights; `None` when either is not real.
    pub fn partial_le(&self, other: &Self) -> Option<bool> {
        (self.is_real() && other.is_real()).then(|| self.re.value_cmp(&other.re).is_le())
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        Weight { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        Weight { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Mul for Weight {
    type Output = Weight;
    fn mul(self, rhs: Weight) -> Weight {
        Weight { re: self.re * rhs.re - self.im * rhs.im, im: self.re * rhs.im + self.im * rhs.re }
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight { re: -self.re, im: -self.im }
    }
}

impl Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::zero(), |acc, w| acc + w)
    }
}

impl From<Real> for Weight {
    fn from(re: Real) -> Self {
        Weight::real(re)
    }
}
