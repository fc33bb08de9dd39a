//! Coefficient fields: the rationals and prime fields `F_p`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AlgebraError;

/// The coefficient field `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    /// `F_p` for a prime `p`. Construct through [`FieldSpec::prime`].
    Prime(u64),
}

impl FieldSpec {
    /// `F_p`, validating that `p` is prime and small enough for `u128` products.
    pub fn prime(p: u64) -> Result<Self, AlgebraError> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(AlgebraError::InvalidField(format!("{p} is not a supported prime")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    /// Builds the field of the given characteristic (0 means `Q`).
    pub fn from_characteristic(c: u64) -> Result<Self, AlgebraError> {
        if c == 0 {
            Ok(FieldSpec::Rationals)
        } else {
            Self::prime(c)
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: v.rem_euclid(*p as i64) as u64,
                modulus: *p,
            },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Scalar::Residue {
                    value: r.to_u64().expect("residue fits in u64"),
                    modulus: *p,
                }
            }
        }
    }

    /// Maps a rational into the field; fails when the denominator vanishes mod `p`.
    pub fn from_rational(&self, v: &BigRational) -> Result<Scalar, AlgebraError> {
        let num = self.from_bigint(v.numer());
        let den = self.from_bigint(v.denom());
        Ok(&num * &den.inverse()?)
    }

    /// Every element of the field, in increasing representative order. Prime fields only.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(
                (0..*p)
                    .map(|value| Scalar::Residue { value, modulus: *p })
                    .collect(),
            ),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of a [`FieldSpec`].
///
/// Rationals are kept in lowest terms by `BigRational`; residues are kept in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
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

    /// Multiplicative inverse.
    pub fn inverse(&self) -> Result<Scalar, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroInversion);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => {
                let e = BigInt::from(*value).extended_gcd(&BigInt::from(*modulus));
                let inv = e.x.mod_floor(&BigInt::from(*modulus));
                Scalar::Residue {
                    value: inv.to_u64().expect("residue fits in u64"),
                    modulus: *modulus,
                }
            }
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// True for a negative rational; residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Residue { .. } => false,
        }
    }

    /// The rational value, if this is a rational scalar.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Residue { .. } => None,
        }
    }

    /// The canonical representative in `[0, p)`, if this is a residue.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Residue { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }
}

fn same_modulus(a: u64, b: u64) -> u64 {
    assert_eq!(a, b, "scalar field mismatch");
    a
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus: m }, Scalar::Residue { value: b, modulus: n }) => {
                let m = same_modulus(*m, *n);
                Scalar::Residue { value: ((*a as u128 + *b as u128) % m as u128) as u64, modulus: m }
            }
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus: m }, Scalar::Residue { value: b, modulus: n }) => {
                let m = same_modulus(*m, *n);
                Scalar::Residue { value: ((*a as u128 * *b as u128) % m as u128) as u64, modulus: m }
            }
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_in_f7() {
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(f7.from_i64(3).inverse().unwrap(), f7.from_i64(5));
    }

    #[test]
    fn inverse_of_one() {
        for field in [FieldSpec::Rationals, FieldSpec::Prime(2), FieldSpec::Prime(13)] {
            assert_eq!(field.one().inverse().unwrap(), field.one());
        }
    }

    #[test]
    fn zero_has_no_inverse() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(f5.zero().inverse(), Err(AlgebraError::ZeroInversion));
    }

    #[test]
    fn inverse_round_trip() {
        let f = FieldSpec::prime(101).unwrap();
        for v in 1..101 {
            let x = f.from_i64(v);
            assert!((&x * &x.inverse().unwrap()).is_one());
        }
        let q = FieldSpec::Rationals;
        let x = q.from_rational(&BigRational::new(BigInt::from(-3), BigInt::from(7))).unwrap();
        assert!((&x * &x.inverse().unwrap()).is_one());
    }

    #[test]
    fn rejects_composites() {
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(9).is_err());
        assert!(FieldSpec::prime(2).is_ok());
    }

    #[test]
    fn rational_into_prime_field() {
        let f5 = FieldSpec::prime(5).unwrap();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(f5.from_rational(&half).unwrap(), f5.from_i64(3));
        let fifth = BigRational::new(BigInt::from(1), BigInt::from(5));
        assert!(f5.from_rational(&fifth).is_err());
    }
}
