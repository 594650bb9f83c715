//! The three coefficient rings: ℤ, ℚ and prime fields 𝔽p.
//!
//! Algorithms are generic over [`Ring`]; a runtime [`RingSpec`] picks the
//! concrete ring at the edges (CLI, reports) through [`with_ring!`].

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingSpec {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl RingSpec {
    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Ring(format!("{p} is not prime")));
        }
        Ok(RingSpec::PrimeField(p))
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, RingSpec::Integers)
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => f.write_str("Z"),
            RingSpec::Rationals => f.write_str("Q"),
            RingSpec::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    /// Accepts `Z`, `Q`, `Fp:P`, and the shorthand `FP` (e.g. `F2`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "Z" | "ZZ" => return Ok(RingSpec::Integers),
            "Q" | "QQ" => return Ok(RingSpec::Rationals),
            _ => {}
        }
        let digits = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix("GF:"))
            .or_else(|| s.strip_prefix('F'))
            .ok_or_else(|| Error::Parse(format!("unknown ring {s:?} (expected Z, Q or Fp:P)")))?;
        let p: u64 = digits.parse().map_err(|_| Error::Parse(format!("bad prime in ring {s:?}")))?;
        RingSpec::prime_field(p)
    }
}

impl Serialize for RingSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RingSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k.saturating_mul(k) <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// A commutative ring with exactly representable elements.
///
/// The ring value carries whatever runtime data the arithmetic needs (the
/// modulus of a prime field); elements are plain values.
// constructors need the ring value for the modulus
#[allow(clippy::wrong_self_convention)]
pub trait Ring: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn spec(&self) -> RingSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Image of an integer under the canonical map ℤ → R.
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `a / b` if `b` divides `a` in the ring.
    fn divide(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    /// Canonical echelon form of the row space (RREF over a field, row HNF
    /// over ℤ), optionally with the invertible transform that produced it.
    fn echelon(&self, m: Matrix<Self>, track_transform: bool) -> Echelon<Self>;

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    /// `a -= c * b`
    fn sub_mul_assign(&self, a: &mut Self::Elem, c: &Self::Elem, b: &Self::Elem) {
        *a = self.sub(a, &self.mul(c, b));
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Integers;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        RingSpec::prime_field(p).map(|_| PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.p as i128) as u64
    }
}

impl Ring for Integers {
    type Elem = BigInt;

    fn spec(&self) -> RingSpec {
        RingSpec::Integers
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn from_bigint(&self, v: &BigInt) -> BigInt {
        v.clone()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn divide(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<BigInt> {
        s.trim().parse().map_err(|_| Error::Parse(format!("bad integer {s:?}")))
    }
    fn echelon(&self, m: Matrix<Self>, track_transform: bool) -> Echelon<Self> {
        linalg::hnf_with_transform(m, track_transform)
    }
    fn add_assign(&self, a: &mut BigInt, b: &BigInt) {
        *a += b;
    }
    fn sub_mul_assign(&self, a: &mut BigInt, c: &BigInt, b: &BigInt) {
        *a -= c * b;
    }
}

impl Ring for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> RingSpec {
        RingSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn divide(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        (!b.is_zero()).then(|| a / b)
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad rational {s:?}"));
        match s.split_once('/') {
            None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
        }
    }
    fn echelon(&self, m: Matrix<Self>, track_transform: bool) -> Echelon<Self> {
        linalg::rref_with_transform(m, track_transform)
    }
    fn add_assign(&self, a: &mut BigRational, b: &BigRational) {
        *a += b;
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn spec(&self) -> RingSpec {
        RingSpec::PrimeField(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i128(v as i128)
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        v.mod_floor(&p).to_u64().expect("residue fits in u64")
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn divide(&self, a: &u64, b: &u64) -> Option<u64> {
        (*b != 0).then(|| self.mul(a, &self.inv(b)))
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let v: BigInt = s.trim().parse().map_err(|_| Error::Parse(format!("bad residue {s:?}")))?;
        Ok(self.from_bigint(&v))
    }
    fn echelon(&self, m: Matrix<Self>, track_transform: bool) -> Echelon<Self> {
        linalg::rref_with_transform(m, track_transform)
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in F_{}", self.p);
        // Fermat: a^(p-2)
        let mut base = *a;
        let mut exp = self.p - 2;
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
}

/// Runs `$body` with `$r` bound to the concrete ring named by a [`RingSpec`].
#[macro_export]
macro_rules! with_ring {
    ($spec:expr, |$r:ident| $body:expr) => {
        match $spec {
            $crate::ring::RingSpec::Integers => {
                let $r = $crate::ring::Integers;
                $body
            }
            $crate::ring::RingSpec::Rationals => {
                let $r = $crate::ring::Rationals;
                $body
            }
            $crate::ring::RingSpec::PrimeField(p) => {
                let $r = $crate::ring::PrimeField::new(p).expect("RingSpec holds a prime");
                $body
            }
        }
    };
}

/// Like [`with_ring!`] but only for fields; ℤ yields an error.
#[macro_export]
macro_rules! with_field {
    ($spec:expr, |$r:ident| $body:expr) => {
        match $spec {
            $crate::ring::RingSpec::Integers => {
                Err($crate::error::Error::Ring("this operation needs a field (Q or Fp:P), not Z".into()))
            }
            $crate::ring::RingSpec::Rationals => {
                let $r = $crate::ring::Rationals;
                $body
            }
            $crate::ring::RingSpec::PrimeField(p) => {
                let $r = $crate::ring::PrimeField::new(p).expect("RingSpec holds a prime");
                $body
            }
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_parse_and_display() {
        assert_eq!("Z".parse::<RingSpec>().unwrap(), RingSpec::Integers);
        assert_eq!("Q".parse::<RingSpec>().unwrap(), RingSpec::Rationals);
        assert_eq!("Fp:3".parse::<RingSpec>().unwrap(), RingSpec::PrimeField(3));
        assert_eq!("F5".parse::<RingSpec>().unwrap(), RingSpec::PrimeField(5));
        assert!("Fp:4".parse::<RingSpec>().is_err());
        assert!("R".parse::<RingSpec>().is_err());
        assert_eq!(RingSpec::PrimeField(7).to_string(), "Fp:7");
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), 5);
        assert_eq!(f.sub(&2, &5), 4);
        assert_eq!(f.neg(&0), 0);
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert_eq!(f.from_bigint(&BigInt::from(-15)), 6);
    }

    #[test]
    fn rational_formatting() {
        let q = Rationals;
        let x = q.parse("6/-4").unwrap();
        assert_eq!(q.format(&x), "-3/2");
        assert_eq!(q.format(&q.from_i64(5)), "5");
        assert!(q.parse("1/0").is_err());
    }

    #[test]
    fn integer_division() {
        let z = Integers;
        assert_eq!(z.divide(&BigInt::from(6), &BigInt::from(3)), Some(BigInt::from(2)));
        assert_eq!(z.divide(&BigInt::from(7), &BigInt::from(3)), None);
        assert_eq!(z.divide(&BigInt::from(7), &BigInt::from(0)), None);
    }
}
