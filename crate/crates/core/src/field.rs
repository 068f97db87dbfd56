//! Exact scalar fields: prime fields F_p and the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is neither 0 nor a prime")]
    NotPrime(u64),
    #[error("characteristic {0} is too large (must be below 2^31)")]
    TooLarge(u64),
    #[error("cannot parse '{0}' as a field element")]
    BadLiteral(String),
    #[error("division by zero")]
    DivisionByZero,
}

/// A prime field F_p (p < 2^31) or the rationals Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u64", try_from = "u64")]
pub enum Field {
    Prime(u32),
    Rationals,
}

/// An element of a [`Field`]. Elements do not carry their field; every
/// arithmetic operation goes through the field that owns them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Mod(u32),
    Rat(BigRational),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Default for Field {
    fn default() -> Self {
        Field::Prime(2)
    }
}

impl From<Field> for u64 {
    fn from(f: Field) -> u64 {
        f.characteristic()
    }
}

impl TryFrom<u64> for Field {
    type Error = FieldError;
    fn try_from(c: u64) -> Result<Self, FieldError> {
        Field::new(c)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F_{p}"),
            Field::Rationals => write!(f, "Q"),
        }
    }
}

impl Field {
    /// Characteristic 0 gives Q; anything else must be a prime.
    pub fn new(characteristic: u64) -> Result<Field, FieldError> {
        if characteristic == 0 {
            return Ok(Field::Rationals);
        }
        if characteristic >= 1 << 31 {
            return Err(FieldError::TooLarge(characteristic));
        }
        if !is_prime(characteristic) {
            return Err(FieldError::NotPrime(characteristic));
        }
        Ok(Field::Prime(characteristic as u32))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p as u64,
            Field::Rationals => 0,
        }
    }

    /// Number of elements, `None` for Q.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Prime(p) => Some(*p as u64),
            Field::Rationals => None,
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            Field::Prime(_) => Elem::Mod(0),
            Field::Rationals => Elem::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Elem {
        match self {
            Field::Prime(_) => Elem::Mod(1),
            Field::Rationals => Elem::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        match self {
            Field::Prime(p) => Elem::Mod(v.rem_euclid(*p as i64) as u32),
            Field::Rationals => Elem::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Mod(v) => *v == 0,
            Elem::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        match a {
            Elem::Mod(v) => *v == 1,
            Elem::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Field::Prime(p), Elem::Mod(x), Elem::Mod(y)) => {
                Elem::Mod(((*x as u64 + *y as u64) % *p as u64) as u32)
            }
            (Field::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (self, a) {
            (Field::Prime(p), Elem::Mod(x)) => Elem::Mod(if *x == 0 { 0 } else { p - x }),
            (Field::Rationals, Elem::Rat(x)) => Elem::Rat(-x),
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Field::Prime(p), Elem::Mod(x), Elem::Mod(y)) => {
                Elem::Mod(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            (Field::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            _ => panic!("element does not belong to {self}"),
        }
    }

    /// `a - c * b`, the elimination step.
    pub fn sub_mul(&self, a: &Elem, c: &Elem, b: &Elem) -> Elem {
        match (self, a, c, b) {
            (Field::Prime(p), Elem::Mod(x), Elem::Mod(y), Elem::Mod(z)) => {
                let p = *p as u64;
                let prod = (*y as u64 * *z as u64) % p;
                Elem::Mod(((*x as u64 + p - prod) % p) as u32)
            }
            _ => self.sub(a, &self.mul(c, b)),
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match (self, a) {
            (Field::Prime(p), Elem::Mod(x)) => {
                // Fermat: x^(p-2)
                let p = *p as u64;
                let mut base = *x as u64;
                let mut e = p - 2;
                let mut acc = 1u64;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    e >>= 1;
                }
                Elem::Mod(acc as u32)
            }
            (Field::Rationals, Elem::Rat(x)) => Elem::Rat(x.recip()),
            _ => panic!("element does not belong to {self}"),
        })
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Uniform over F_p; small integers in [-3, 3] over Q.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        match self {
            Field::Prime(p) => Elem::Mod(rng.gen_range(0..*p)),
            Field::Rationals => self.from_i64(rng.gen_range(-3..=3)),
        }
    }

    /// Least non-negative residue for F_p, `num/den` (or `num`) for Q.
    pub fn format(&self, a: &Elem) -> String {
        match a {
            Elem::Mod(v) => v.to_string(),
            Elem::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
        }
    }

    /// Parses an integer (reduced mod p) or, over Q, a fraction `num/den`.
    pub fn parse(&self, s: &str) -> Result<Elem, FieldError> {
        let bad = || FieldError::BadLiteral(s.to_string());
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = match den {
            Some(d) => d.parse().map_err(|_| bad())?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(bad());
        }
        match self {
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                let reduce = |v: &BigInt| -> u32 {
                    let r = ((v % &p) + &p) % &p;
                    u32::try_from(r.abs()).expect("residue below p")
                };
                let n = Elem::Mod(reduce(&num));
                let d = Elem::Mod(reduce(&den));
                self.div(&n, &d).map_err(|_| bad())
            }
            Field::Rationals => Ok(Elem::Rat(BigRational::new(num, den))),
        }
    }

    /// (-1)^k in this field.
    pub fn sign(&self, k: i64) -> Elem {
        if k.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.neg(&self.one())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_characteristic() {
        assert_eq!(Field::new(4), Err(FieldError::NotPrime(4)));
        assert_eq!(Field::new(1), Err(FieldError::NotPrime(1)));
        assert_eq!(Field::new(5), Ok(Field::Prime(5)));
        assert_eq!(Field::new(0), Ok(Field::Rationals));
    }

    #[test]
    fn prime_field_inverses() {
        let f = Field::Prime(7);
        for v in 1..7 {
            let a = f.from_i64(v);
            let b = f.inv(&a).unwrap();
            assert!(f.is_one(&f.mul(&a, &b)));
        }
        assert_eq!(f.inv(&f.zero()), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn sign_is_one_in_characteristic_two() {
        let f = Field::Prime(2);
        assert_eq!(f.sign(3), f.one());
        let q = Field::Rationals;
        assert_eq!(q.sign(3), q.from_i64(-1));
    }

    #[test]
    fn parse_and_format() {
        let q = Field::Rationals;
        let half = q.parse("-3/6").unwrap();
        assert_eq!(q.format(&half), "-1/2");
        let f5 = Field::Prime(5);
        assert_eq!(f5.parse("-1").unwrap(), Elem::Mod(4));
        assert_eq!(f5.parse("1/2").unwrap(), Elem::Mod(3));
        assert!(f5.parse("x").is_err());
    }
}
