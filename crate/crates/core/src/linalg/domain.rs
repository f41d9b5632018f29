//! Coefficient domains: prime fields, the rationals and the integers.
//!
//! Every scalar is carried as a [`BigRational`] in canonical form for its
//! domain: residues in `[0, p)` for 𝔽ₚ, lowest terms with positive
//! denominator for ℚ, and denominator one for ℤ.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Domain {
    Prime { p: u64 },
    Rational,
    Integer,
}

impl Domain {
    pub fn prime(p: u64) -> Result<Self> {
        if p < 2 || !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        Ok(Domain::Prime { p })
    }

    pub fn is_field(self) -> bool {
        !matches!(self, Domain::Integer)
    }

    /// Number of elements when finite.
    pub fn order(self) -> Option<u64> {
        match self {
            Domain::Prime { p } => Some(p),
            _ => None,
        }
    }

    pub fn zero(self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(self) -> Scalar {
        Scalar::one()
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        self.normalize(Scalar::from_integer(BigInt::from(v)))
    }

    pub fn from_int(self, v: BigInt) -> Scalar {
        self.normalize(Scalar::from_integer(v))
    }

    /// Brings an arbitrary rational into canonical form. Panics for
    /// non-integral values in ℤ and for denominators divisible by p.
    pub fn normalize(self, a: Scalar) -> Scalar {
        match self {
            Domain::Rational => a,
            Domain::Integer => {
                assert!(a.is_integer(), "non-integral value {a} in ℤ");
                a
            }
            Domain::Prime { p } => {
                let p = BigInt::from(p);
                let num = a.numer().mod_floor(&p);
                let den = a.denom().mod_floor(&p);
                assert!(!den.is_zero(), "denominator divisible by {p}");
                let inv = mod_inverse(&den, &p);
                Scalar::from_integer((num * inv).mod_floor(&p))
            }
        }
    }

    pub fn add(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a + b)
    }

    pub fn sub(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a - b)
    }

    pub fn mul(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a * b)
    }

    pub fn neg(self, a: &Scalar) -> Scalar {
        self.reduce(-a)
    }

    // cheap reduction for values already integral in 𝔽ₚ
    fn reduce(self, a: Scalar) -> Scalar {
        match self {
            Domain::Prime { p } => {
                if a.is_integer() {
                    Scalar::from_integer(a.numer().mod_floor(&BigInt::from(p)))
                } else {
                    self.normalize(a)
                }
            }
            _ => a,
        }
    }

    pub fn is_unit(self, a: &Scalar) -> bool {
        match self {
            Domain::Integer => a.abs().is_one(),
            _ => !a.is_zero(),
        }
    }

    pub fn inv(self, a: &Scalar) -> Option<Scalar> {
        if !self.is_unit(a) {
            return None;
        }
        match self {
            Domain::Integer => Some(a.clone()),
            Domain::Rational => Some(a.recip()),
            Domain::Prime { p } => {
                let p = BigInt::from(p);
                Some(Scalar::from_integer(mod_inverse(a.numer(), &p)))
            }
        }
    }

    /// Euclidean size used for pivot selection; zero for every nonzero field element.
    pub fn norm(self, a: &Scalar) -> BigInt {
        match self {
            Domain::Integer => a.numer().abs(),
            _ => {
                if a.is_zero() {
                    BigInt::zero()
                } else {
                    BigInt::one()
                }
            }
        }
    }

    /// Quotient `q` with `a - q*b` of smaller norm than `b` (zero over a field).
    pub fn div_floor(self, a: &Scalar, b: &Scalar) -> Scalar {
        assert!(!b.is_zero(), "division by zero");
        match self {
            Domain::Integer => Scalar::from_integer(a.numer().div_floor(b.numer())),
            _ => self.mul(a, &self.inv(b).expect("nonzero field element")),
        }
    }

    /// Whether `b` divides `a`.
    pub fn divides(self, b: &Scalar, a: &Scalar) -> bool {
        if b.is_zero() {
            return a.is_zero();
        }
        match self {
            Domain::Integer => a.numer().is_multiple_of(b.numer()),
            _ => true,
        }
    }

    /// Associate representative: nonnegative over ℤ, one over a field.
    pub fn canonical_associate(self, a: &Scalar) -> Scalar {
        match self {
            Domain::Integer => a.abs(),
            _ => {
                if a.is_zero() {
                    a.clone()
                } else {
                    Scalar::one()
                }
            }
        }
    }

    pub fn parse(self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let value = if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
            let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Scalar::new(n, d)
        } else {
            let n: BigInt = s.parse().map_err(|_| Error::Parse(format!("bad scalar {s:?}")))?;
            Scalar::from_integer(n)
        };
        match self {
            Domain::Integer if !value.is_integer() => {
                Err(Error::Parse(format!("{s:?} is not an integer")))
            }
            Domain::Prime { p } if !value.is_integer() && value.denom().is_multiple_of(&BigInt::from(p)) => {
                Err(Error::Parse(format!("{s:?} has denominator divisible by {p}")))
            }
            _ => Ok(self.normalize(value)),
        }
    }

    pub fn format(self, a: &Scalar) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Prime { p } => write!(f, "F{p}"),
            Domain::Rational => write!(f, "Q"),
            Domain::Integer => write!(f, "Z"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    assert!(e.gcd.is_one(), "{a} not invertible mod {p}");
    e.x.mod_floor(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_canonical_forms() {
        let f5 = Domain::prime(5).unwrap();
        assert_eq!(f5.from_i64(-1), f5.from_i64(4));
        assert_eq!(f5.parse("1/2").unwrap(), f5.from_i64(3));
        assert_eq!(f5.inv(&f5.from_i64(2)).unwrap(), f5.from_i64(3));
        assert!(Domain::prime(6).is_err());
    }

    #[test]
    fn rationals_stay_in_lowest_terms() {
        let q = Domain::Rational;
        let a = q.parse("2/-4").unwrap();
        assert_eq!(q.format(&a), "-1/2");
        assert!(q.parse("1/0").is_err());
        assert!(Domain::Integer.parse("1/2").is_err());
    }

    #[test]
    fn integer_division_is_euclidean() {
        let z = Domain::Integer;
        let q = z.div_floor(&z.from_i64(7), &z.from_i64(2));
        assert_eq!(q, z.from_i64(3));
        assert!(z.divides(&z.from_i64(2), &z.from_i64(6)));
        assert!(!z.divides(&z.from_i64(2), &z.from_i64(3)));
    }
}
