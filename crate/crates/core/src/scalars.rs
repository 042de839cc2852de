//! Exact norm values and valued base fields.
//!
//! Norm values live in `{0} ∪ γ^ℚ` for a formal base `γ > 1`, so comparisons,
//! products and attained infima are all decided exactly.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("invalid magnitude `{0}`: expected `0` or `g^<rational>`")]
    InvalidMagnitude(String),
    #[error("invalid element `{text}` for field {field}")]
    InvalidElement { text: String, field: String },
    #[error("invalid field description: {0}")]
    InvalidField(String),
}

/// A norm value: either zero or `γ^exponent`.
///
/// The derived order puts `Zero` below every power, and powers compare by
/// exponent, which is the order of the values they denote.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Magnitude {
    #[default]
    Zero,
    Exp(Rational64),
}

impl Magnitude {
    pub const ONE: Magnitude = Magnitude::Exp(Rational64::new_raw(0, 1));

    pub fn exp(numer: i64, denom: i64) -> Magnitude {
        Magnitude::Exp(Rational64::new(numer, denom))
    }

    pub fn pow(k: i64) -> Magnitude {
        Magnitude::Exp(Rational64::from_integer(k))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Magnitude::Zero)
    }

    pub fn exponent(&self) -> Option<Rational64> {
        match self {
            Magnitude::Zero => None,
            Magnitude::Exp(q) => Some(*q),
        }
    }

    /// `None` when dividing by `Zero`.
    pub fn checked_div(self, rhs: Magnitude) -> Option<Magnitude> {
        match (self, rhs) {
            (_, Magnitude::Zero) => None,
            (Magnitude::Zero, _) => Some(Magnitude::Zero),
            (Magnitude::Exp(a), Magnitude::Exp(b)) => Some(Magnitude::Exp(a - b)),
        }
    }

    pub fn recip(self) -> Option<Magnitude> {
        Magnitude::ONE.checked_div(self)
    }

    pub fn compare(&self, other: &Magnitude) -> Ordering {
        self.cmp(other)
    }
}

// Magnitudes are powers of one base, so multiplying adds exponents.
#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for Magnitude {
    type Output = Magnitude;

    fn mul(self, rhs: Magnitude) -> Magnitude {
        match (self, rhs) {
            (Magnitude::Exp(a), Magnitude::Exp(b)) => Magnitude::Exp(a + b),
            _ => Magnitude::Zero,
        }
    }
}

impl Div for Magnitude {
    type Output = Magnitude;

    /// Panics on division by `Zero`; use [`Magnitude::checked_div`] otherwise.
    fn div(self, rhs: Magnitude) -> Magnitude {
        self.checked_div(rhs).expect("division by a zero magnitude")
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Magnitude::Zero => write!(f, "0"),
            Magnitude::Exp(q) => write!(f, "g^{}", q),
        }
    }
}

impl FromStr for Magnitude {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ScalarError::InvalidMagnitude(s.to_string());
        let t = s.trim();
        if t == "0" {
            return Ok(Magnitude::Zero);
        }
        let body = t.strip_prefix("g^").ok_or_else(err)?;
        let q = parse_ratio_i64(body).ok_or_else(err)?;
        Ok(Magnitude::Exp(q))
    }
}

fn parse_ratio_i64(s: &str) -> Option<Rational64> {
    match s.split_once('/') {
        None => s.parse::<i64>().ok().map(Rational64::from_integer),
        Some((n, d)) => {
            let n = n.parse::<i64>().ok()?;
            let d = d.parse::<i64>().ok()?;
            if d == 0 {
                return None;
            }
            Some(Rational64::new(n, d))
        }
    }
}

impl Serialize for Magnitude {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Magnitude {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of one of the supported base fields.
///
/// Arithmetic between elements of different fields is a logic error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Rat(BigRational),
    /// `(value, modulus)` with `value < modulus`.
    Mod(u32, u32),
}

impl Elem {
    pub fn is_zero(&self) -> bool {
        match self {
            Elem::Rat(r) => r.is_zero(),
            Elem::Mod(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Elem::Rat(r) => r.is_one(),
            Elem::Mod(v, _) => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<Elem> {
        match self {
            Elem::Rat(r) if r.is_zero() => None,
            Elem::Rat(r) => Some(Elem::Rat(r.recip())),
            Elem::Mod(0, _) => None,
            Elem::Mod(v, p) => Some(Elem::Mod(pow_mod(*v, p - 2, *p), *p)),
        }
    }

    pub fn zero_like(&self) -> Elem {
        match self {
            Elem::Rat(_) => Elem::Rat(BigRational::zero()),
            Elem::Mod(_, p) => Elem::Mod(0, *p),
        }
    }
}

fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc = 1u64;
    let mut b = base as u64 % p64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p64;
        }
        b = b * b % p64;
        exp >>= 1;
    }
    acc as u32
}

fn mixed() -> ! {
    panic!("arithmetic between elements of different fields")
}

impl<'a> Add<&'a Elem> for &'a Elem {
    type Output = Elem;

    fn add(self, rhs: &Elem) -> Elem {
        match (self, rhs) {
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a + b),
            (Elem::Mod(a, p), Elem::Mod(b, q)) if p == q => {
                Elem::Mod(((*a as u64 + *b as u64) % *p as u64) as u32, *p)
            }
            _ => mixed(),
        }
    }
}

impl<'a> Sub<&'a Elem> for &'a Elem {
    type Output = Elem;

    fn sub(self, rhs: &Elem) -> Elem {
        match (self, rhs) {
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a - b),
            (Elem::Mod(a, p), Elem::Mod(b, q)) if p == q => {
                Elem::Mod(((*a as u64 + (*p - *b) as u64) % *p as u64) as u32, *p)
            }
            _ => mixed(),
        }
    }
}

impl<'a> Mul<&'a Elem> for &'a Elem {
    type Output = Elem;

    fn mul(self, rhs: &Elem) -> Elem {
        match (self, rhs) {
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a * b),
            (Elem::Mod(a, p), Elem::Mod(b, q)) if p == q => {
                Elem::Mod(((*a as u64 * *b as u64) % *p as u64) as u32, *p)
            }
            _ => mixed(),
        }
    }
}

impl Neg for &Elem {
    type Output = Elem;

    fn neg(self) -> Elem {
        match self {
            Elem::Rat(a) => Elem::Rat(-a),
            Elem::Mod(0, p) => Elem::Mod(0, *p),
            Elem::Mod(a, p) => Elem::Mod(p - a, *p),
        }
    }
}

/// A base field together with its absolute value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ValuedField {
    /// ℚ with the p-adic absolute value `|x| = γ^{-v_p(x)}`, `γ = p`.
    PAdic(u32),
    /// ℚ with the trivial absolute value.
    Rationals,
    /// 𝔽_p with the trivial absolute value.
    PrimeField(u32),
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl ValuedField {
    pub fn padic(p: u32) -> Result<ValuedField, ScalarError> {
        if is_prime(p) {
            Ok(ValuedField::PAdic(p))
        } else {
            Err(ScalarError::InvalidField(format!("{p} is not prime")))
        }
    }

    pub fn prime_field(p: u32) -> Result<ValuedField, ScalarError> {
        if is_prime(p) && p < 1 << 16 {
            Ok(ValuedField::PrimeField(p))
        } else {
            Err(ScalarError::InvalidField(format!(
                "F{p} is not a supported prime field"
            )))
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            ValuedField::PrimeField(p) => Elem::Mod(0, *p),
            _ => Elem::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        match self {
            ValuedField::PrimeField(p) => Elem::Mod(n.rem_euclid(*p as i64) as u32, *p),
            _ => Elem::Rat(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn from_ratio(&self, numer: i64, denom: i64) -> Elem {
        assert!(denom != 0, "zero denominator");
        match self {
            ValuedField::PrimeField(_) => {
                let d = self
                    .from_i64(denom)
                    .inv()
                    .expect("denominator divisible by p");
                &self.from_i64(numer) * &d
            }
            _ => Elem::Rat(BigRational::new(BigInt::from(numer), BigInt::from(denom))),
        }
    }

    pub fn contains(&self, x: &Elem) -> bool {
        match (self, x) {
            (ValuedField::PrimeField(p), Elem::Mod(v, q)) => p == q && v < q,
            (ValuedField::PrimeField(_), _) => false,
            (_, Elem::Rat(_)) => true,
            _ => false,
        }
    }

    /// Number of elements, for finite fields.
    pub fn order(&self) -> Option<u32> {
        match self {
            ValuedField::PrimeField(p) => Some(*p),
            _ => None,
        }
    }

    /// All field elements in ascending digit order; `None` for infinite fields.
    pub fn elements(&self) -> Option<Vec<Elem>> {
        self.order()
            .map(|p| (0..p).map(|v| Elem::Mod(v, p)).collect())
    }

    pub fn abs(&self, x: &Elem) -> Magnitude {
        if x.is_zero() {
            return Magnitude::Zero;
        }
        match (self, x) {
            (ValuedField::PAdic(p), Elem::Rat(r)) => {
                let v = p_valuation(r.numer(), *p) - p_valuation(r.denom(), *p);
                Magnitude::pow(-v)
            }
            _ => Magnitude::ONE,
        }
    }

    /// A scalar of absolute value exactly `γ^{-k}`, when the value group allows it.
    pub fn scalar_of_valuation(&self, k: i64) -> Option<Elem> {
        match self {
            ValuedField::PAdic(p) => {
                let pk = BigInt::from(*p).pow(k.unsigned_abs() as u32);
                let r = if k >= 0 {
                    BigRational::from_integer(pk)
                } else {
                    BigRational::new(BigInt::one(), pk)
                };
                Some(Elem::Rat(r))
            }
            _ if k == 0 => Some(self.one()),
            _ => None,
        }
    }

    pub fn parse_elem(&self, text: &str) -> Result<Elem, ScalarError> {
        let err = || ScalarError::InvalidElement {
            text: text.to_string(),
            field: self.to_string(),
        };
        let t = text.trim();
        match self {
            ValuedField::PrimeField(p) => {
                let v: u32 = t.parse().map_err(|_| err())?;
                if v >= *p {
                    return Err(err());
                }
                Ok(Elem::Mod(v, *p))
            }
            _ => {
                let r = match t.split_once('/') {
                    None => BigRational::from_integer(t.parse::<BigInt>().map_err(|_| err())?),
                    Some((n, d)) => {
                        let n = n.parse::<BigInt>().map_err(|_| err())?;
                        let d = d.parse::<BigInt>().map_err(|_| err())?;
                        if d.is_zero() {
                            return Err(err());
                        }
                        BigRational::new(n, d)
                    }
                };
                Ok(Elem::Rat(r))
            }
        }
    }

    pub fn format_elem(&self, x: &Elem) -> String {
        match x {
            Elem::Rat(r) => r.to_string(),
            Elem::Mod(v, _) => v.to_string(),
        }
    }
}

fn p_valuation(n: &BigInt, p: u32) -> i64 {
    if n.is_zero() {
        return 0;
    }
    let p = BigInt::from(p);
    let mut m = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

impl fmt::Display for ValuedField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValuedField::PAdic(p) => write!(f, "Q_({p}-adic)"),
            ValuedField::Rationals => write!(f, "Q"),
            ValuedField::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum FieldRepr {
    Padic(u32),
    Trivial(String),
}

impl Serialize for ValuedField {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = match self {
            ValuedField::PAdic(p) => FieldRepr::Padic(*p),
            ValuedField::Rationals => FieldRepr::Trivial("Q".into()),
            ValuedField::PrimeField(p) => FieldRepr::Trivial(format!("F{p}")),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ValuedField {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        match FieldRepr::deserialize(deserializer)? {
            FieldRepr::Padic(p) => ValuedField::padic(p).map_err(D::Error::custom),
            FieldRepr::Trivial(name) if name == "Q" => Ok(ValuedField::Rationals),
            FieldRepr::Trivial(name) => {
                let p = name
                    .strip_prefix('F')
                    .and_then(|s| s.parse::<u32>().ok())
                    .ok_or_else(|| D::Error::custom(format!("unknown trivial field `{name}`")))?;
                ValuedField::prime_field(p).map_err(D::Error::custom)
            }
        }
    }
}

/// Integer exponent `k` with `|p^k| ≤ m`, i.e. the smallest `k ≥ ceil(exponent)`.
pub(crate) fn ceil_exponent(m: Magnitude) -> Option<i64> {
    m.exponent().map(|q| {
        let c = q.ceil();
        c.to_integer().max(0)
    })
}
