//! Exact scalars over the rationals or a prime field GF(p), p < 2^16.
//!
//! Every scalar knows which field it lives in; mixing scalars from different
//! fields in arithmetic is a programming error and panics. All arithmetic is
//! exact: rationals are kept in lowest terms with positive denominator,
//! residues are kept canonical in [0, p).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime modulus {0} out of range (need 2 <= p < 2^16)")]
    ModulusOutOfRange(u64),
    #[error("cannot parse {input:?} as a scalar over {field}")]
    ParseScalar { input: String, field: FieldSpec },
}

/// The base field: the rationals or GF(p) for a prime p with 2 <= p < 2^16.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u16),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// GF(p) after validating that `p` is prime and below 2^16.
    pub fn prime(p: u64) -> Result<FieldSpec, FieldError> {
        if p < 2 || p >= (1 << 16) {
            return Err(FieldError::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField(p as u16))
    }

    pub fn modulus(&self) -> Option<u16> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from(BigInt::from(n))),
            FieldSpec::PrimeField(p) => {
                let p = *p as i64;
                Scalar::Residue {
                    value: n.rem_euclid(p) as u16,
                    modulus: p as u16,
                }
            }
        }
    }

    /// Parses "3", "-2/7" (rationals) or an integer (residue, reduced mod p).
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar, FieldError> {
        let err = || FieldError::ParseScalar {
            input: s.to_string(),
            field: *self,
        };
        let s = s.trim();
        match self {
            FieldSpec::Rationals => {
                let value = match s.split_once('/') {
                    Some((num, den)) => {
                        let num = BigInt::from_str(num.trim()).map_err(|_| err())?;
                        let den = BigInt::from_str(den.trim()).map_err(|_| err())?;
                        if den.is_zero() {
                            return Err(err());
                        }
                        BigRational::new(num, den)
                    }
                    None => BigRational::from(BigInt::from_str(s).map_err(|_| err())?),
                };
                Ok(Scalar::Rational(value))
            }
            FieldSpec::PrimeField(p) => {
                let n = BigInt::from_str(s).map_err(|_| err())?;
                let p_big = BigInt::from(*p);
                let r = ((&n % &p_big) + &p_big) % &p_big;
                let (_, digits) = r.to_u32_digits();
                let value = digits.first().copied().unwrap_or(0) as u16;
                Ok(Scalar::Residue {
                    value,
                    modulus: *p,
                })
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        match self {
            FieldSpec::Rationals => serializer.serialize_str("Q"),
            FieldSpec::PrimeField(p) => {
                let mut map = serializer.serialize_map(Some(1))?;
                map.serialize_entry("GF", p)?;
                map.end()
            }
        }
    }
}

impl<'de> serde::Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;

        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Name(String),
            Prime {
                #[serde(rename = "GF")]
                gf: u64,
            },
        }

        match Repr::deserialize(deserializer)? {
            Repr::Name(s) if s == "Q" => Ok(FieldSpec::Rationals),
            Repr::Name(s) => Err(D::Error::custom(format!(
                "unknown field {s:?}; expected \"Q\" or {{\"GF\": p}}"
            ))),
            Repr::Prime { gf } => FieldSpec::prime(gf).map_err(D::Error::custom),
        }
    }
}

/// An exact field element: a reduced fraction or a canonical residue in [0, p).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u16, modulus: u16 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::PrimeField(*modulus),
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

    /// Multiplicative inverse, or None for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Residue { value, modulus } => {
                if *value == 0 {
                    None
                } else {
                    Some(Scalar::Residue {
                        value: mod_pow(*value as u64, *modulus as u64 - 2, *modulus as u64) as u16,
                        modulus: *modulus,
                    })
                }
            }
        }
    }

    fn assert_same_field(&self, other: &Scalar) {
        assert!(
            self.field() == other.field(),
            "scalar field mismatch: {} vs {}",
            self.field(),
            other.field()
        );
    }
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: ((*a as u32 + *b as u32) % *modulus as u32) as u16,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
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
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: (*a as u64 * *b as u64 % *modulus as u64) as u16,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    // division over a field is multiplication by the inverse
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inv().expect("scalar division by zero");
        self * &inv
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
