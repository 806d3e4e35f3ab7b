//! Ground fields and exact scalar arithmetic.
//!
//! Two ground fields are supported: the rationals (arbitrary-precision, kept
//! fully reduced with positive denominator by `num`) and prime fields F_p
//! (residues stored in `[0, p)`). No floating point anywhere. Every scalar
//! knows its field, and mixing fields is a reported error rather than a
//! panic, so the mistake surfaces cleanly through the CLI.

use std::fmt;

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// A ground field: ℚ or F_p with p prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum FieldSpec {
    /// The rational numbers.
    Rationals,
    /// The prime field with `p` elements.
    Prime(u64),
}

impl FieldSpec {
    /// Builds `F_p`, checking primality.
    pub fn prime(p: u64) -> Result<FieldSpec> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::NonPrimeField { q: p })
        }
    }

    /// 0 for ℚ, p for F_p.
    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }

    /// Number of elements for finite fields, `None` for ℚ.
    pub fn order(self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(p),
        }
    }

    /// The additive identity.
    pub fn zero(self) -> Scalar {
        self.integer(0)
    }

    /// The multiplicative identity.
    pub fn one(self) -> Scalar {
        self.integer(1)
    }

    /// The image of a machine integer in this field.
    pub fn integer(self, k: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(k))),
            FieldSpec::Prime(p) => Scalar::Residue { p, value: reduce_i64(k, p) },
        }
    }

    /// The image of an arbitrary-precision integer in this field.
    pub fn from_bigint(self, k: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(k.clone())),
            FieldSpec::Prime(p) => Scalar::Residue { p, value: reduce_bigint(k, p) },
        }
    }

    /// The image of the fraction `num/den`; over F_p a denominator divisible
    /// by p has no meaning and is rejected.
    pub fn fraction(self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero { op: "scalar literal" });
        }
        match self {
            FieldSpec::Rationals => Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone()))),
            FieldSpec::Prime(_) => self.from_bigint(num).div(&self.from_bigint(den)),
        }
    }

    /// The residue `value mod p` (finite fields only; used by enumeration).
    pub(crate) fn residue(self, value: u64) -> Scalar {
        match self {
            FieldSpec::Rationals => self.from_bigint(&BigInt::from(value)),
            FieldSpec::Prime(p) => Scalar::Residue { p, value: value % p },
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// An exact element of ℚ or F_p in canonical form: rationals fully reduced
/// with positive denominator, residues in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Residue { p: u64, value: u64 },
}

impl Scalar {
    /// The field this scalar lives in.
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Residue { p, value: a }, Scalar::Residue { p: q, value: b }) if p == q => {
                Ok(Scalar::Residue { p: *p, value: addmod(*a, *b, *p) })
            }
            _ => Err(Error::FieldMismatch { op: "add" }),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { p, value } => {
                Scalar::Residue { p: *p, value: if *value == 0 { 0 } else { p - value } }
            }
        }
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Residue { p, value: a }, Scalar::Residue { p: q, value: b }) if p == q => {
                Ok(Scalar::Residue { p: *p, value: mulmod(*a, *b, *p) })
            }
            _ => Err(Error::FieldMismatch { op: "mul" }),
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        self.mul(&other.inv()?)
    }

    /// Multiplicative inverse; zero has none.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero { op: "inv" });
        }
        match self {
            Scalar::Rational(a) => Ok(Scalar::Rational(a.recip())),
            Scalar::Residue { p, value } => {
                Ok(Scalar::Residue { p: *p, value: invmod(*value, *p) })
            }
        }
    }

    /// `self^k` by repeated squaring (k = 0 gives 1, including for 0).
    pub fn pow(&self, k: usize) -> Scalar {
        let mut acc = self.field().one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            base = base.mul(&base).expect("same field");
            k >>= 1;
        }
        acc
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            // BigRational prints "a/b", or just "a" when the denominator is 1.
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Does the scalar render with a leading minus sign? (Residues never do.)
pub(crate) fn renders_negative(s: &Scalar) -> bool {
    match s {
        Scalar::Rational(r) => r.is_negative(),
        Scalar::Residue { .. } => false,
    }
}

/// |s| for rendering purposes; identity on residues.
pub(crate) fn render_abs(s: &Scalar) -> Scalar {
    match s {
        Scalar::Rational(r) => Scalar::Rational(r.abs()),
        other => other.clone(),
    }
}

fn reduce_i64(k: i64, p: u64) -> u64 {
    let p_i = p as i128;
    let r = (k as i128).rem_euclid(p_i);
    r as u64
}

fn reduce_bigint(k: &BigInt, p: u64) -> u64 {
    let modulus = BigInt::from(p);
    let r = k % &modulus;
    let r = if r.sign() == Sign::Minus { r + &modulus } else { r };
    let digits = r.to_u64_digits().1;
    digits.first().copied().unwrap_or(0)
}

fn addmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Inverse mod p by the extended Euclidean algorithm; requires a != 0 mod p.
fn invmod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "inverse of a nonzero residue mod a prime");
    t0.rem_euclid(p as i128) as u64
}

/// Deterministic trial-division primality check (fields stay desk-scale).
pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= n) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        FieldSpec::Rationals
            .fraction(&BigInt::from(n), &BigInt::from(d))
            .unwrap()
    }

    #[test]
    fn rational_sum_is_reduced() {
        // 1/3 + 1/6 = 1/2
        let sum = q(1, 3).add(&q(1, 6)).unwrap();
        assert_eq!(sum, q(1, 2));
        assert_eq!(sum.to_string(), "1/2");
    }

    #[test]
    fn rational_canonical_sign() {
        // 2/-4 normalizes to -1/2 with positive denominator.
        assert_eq!(q(2, -4).to_string(), "-1/2");
    }

    #[test]
    fn f5_inverse_of_two_is_three() {
        let f5 = FieldSpec::prime(5).unwrap();
        let two = f5.integer(2);
        let inv = two.inv().unwrap();
        assert_eq!(inv, f5.integer(3));
        assert!(two.mul(&inv).unwrap().is_one());
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(
            f5.zero().inv().unwrap_err(),
            Error::DivisionByZero { op: "inv" }
        );
    }

    #[test]
    fn residues_reduce_into_range() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(f5.integer(7), f5.integer(2));
        assert_eq!(f5.integer(-1), f5.integer(4));
        assert_eq!(f5.from_bigint(&BigInt::from(-12)), f5.integer(3));
    }

    #[test]
    fn fp_fraction_uses_inverse() {
        let f5 = FieldSpec::prime(5).unwrap();
        // 1/2 = 3 in F_5.
        let half = f5.fraction(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(half, f5.integer(3));
        // Denominator divisible by p is rejected upstream by the parser; the
        // raw constructor reports the zero division.
        assert!(f5.fraction(&BigInt::from(1), &BigInt::from(5)).is_err());
    }

    #[test]
    fn field_mismatch_is_reported() {
        let f5 = FieldSpec::prime(5).unwrap();
        let err = f5.one().add(&FieldSpec::Rationals.one()).unwrap_err();
        assert_eq!(err, Error::FieldMismatch { op: "add" });
    }

    #[test]
    fn primality_check() {
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(3).is_ok());
        assert!(FieldSpec::prime(101).is_ok());
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(4).is_err());
        assert!(FieldSpec::prime(91).is_err()); // 7 * 13
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let f7 = FieldSpec::prime(7).unwrap();
        let three = f7.integer(3);
        let mut acc = f7.one();
        for k in 0..10 {
            assert_eq!(three.pow(k), acc);
            acc = acc.mul(&three).unwrap();
        }
        assert!(f7.zero().pow(0).is_one());
    }
}
