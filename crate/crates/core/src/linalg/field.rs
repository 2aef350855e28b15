//! Exact scalar fields: ℚ, prime fields 𝔽_p, and ℚ carrying a p-adic valuation.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::LinalgError;

/// The base field every matrix in a computation lives over.
///
/// `PAdic(p)` does ℚ arithmetic; the prime only matters for valuations and norms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
    PAdic(u64),
}

impl Field {
    /// The attached prime, if any.
    pub fn prime(&self) -> Option<u64> {
        match *self {
            Field::Rational => None,
            Field::Prime(p) | Field::PAdic(p) => Some(p),
        }
    }

    pub fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    pub fn one(&self) -> BigRational {
        BigRational::one()
    }

    /// Brings an arbitrary rational into canonical form for this field.
    ///
    /// For 𝔽_p the result is an integer in `[0, p)`; a denominator divisible by
    /// `p` has no image and is rejected.
    pub fn normalize(&self, x: BigRational) -> Result<BigRational, LinalgError> {
        match *self {
            Field::Rational | Field::PAdic(_) => Ok(x),
            Field::Prime(p) => {
                let p = BigInt::from(p);
                let num = x.numer().mod_floor(&p);
                let den = x.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(LinalgError::NotInField {
                        value: x.to_string(),
                        field: *self,
                    });
                }
                let inv = mod_inverse(&den, &p);
                Ok(BigRational::from_integer((num * inv).mod_floor(&p)))
            }
        }
    }

    fn reduce(&self, x: BigRational) -> BigRational {
        match *self {
            Field::Prime(p) => {
                // Only integers ever reach here for 𝔽_p.
                debug_assert!(x.is_integer());
                BigRational::from_integer(x.to_integer().mod_floor(&BigInt::from(p)))
            }
            _ => x,
        }
    }

    pub fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &BigRational) -> BigRational {
        self.reduce(-a)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            return None;
        }
        match *self {
            Field::Prime(p) => {
                let p = BigInt::from(p);
                Some(BigRational::from_integer(mod_inverse(&a.to_integer(), &p)))
            }
            _ => Some(a.recip()),
        }
    }

    pub fn div(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    /// Parses `"3/4"`, `"-2"`, `"0"` into a normalized element.
    pub fn parse_scalar(&self, s: &str) -> Result<BigRational, LinalgError> {
        let s = s.trim();
        let bad = || LinalgError::ScalarParse(s.to_string());
        let value = match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
        };
        self.normalize(value)
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    debug_assert!(e.gcd.is_one() || e.gcd == -BigInt::one());
    (e.x * e.gcd.signum()).mod_floor(p)
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
            Field::PAdic(p) => write!(f, "padic:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LinalgError::FieldParse(s.to_string());
        let parse_prime = |t: &str| -> Result<u64, LinalgError> {
            let p: u64 = t.trim().parse().map_err(|_| bad())?;
            if is_prime(p) {
                Ok(p)
            } else {
                Err(bad())
            }
        };
        match s.trim() {
            "q" | "Q" | "rational" => Ok(Field::Rational),
            t => match t.split_once(':') {
                Some(("fp", p)) => Ok(Field::Prime(parse_prime(p)?)),
                Some(("padic", p)) => Ok(Field::PAdic(parse_prime(p)?)),
                _ => Err(bad()),
            },
        }
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
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

/// A single field element tagged with its field.
///
/// Operators panic when the two operands live over different fields; use the
/// matrix-level API for fallible mixing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: Field,
    value: BigRational,
}

impl Scalar {
    pub fn new(field: Field, value: BigRational) -> Result<Self, LinalgError> {
        Ok(Scalar {
            value: field.normalize(value)?,
            field,
        })
    }

    pub fn from_int(field: Field, n: i64) -> Self {
        Scalar::new(field, BigRational::from_integer(n.into())).expect("integers embed in every field")
    }

    pub fn parse(field: Field, s: &str) -> Result<Self, LinalgError> {
        Ok(Scalar {
            value: field.parse_scalar(s)?,
            field,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn inv(&self) -> Option<Scalar> {
        self.field.inv(&self.value).map(|value| Scalar {
            field: self.field,
            value,
        })
    }

    fn same_field(&self, other: &Scalar) -> Field {
        assert_eq!(
            self.field, other.field,
            "scalar arithmetic across fields {} and {}",
            self.field, other.field
        );
        self.field
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.value))
    }
}

/// `"3/4"`, `"-2"`: the serialized form used in spec files and reports.
pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $tr::$method(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                let field = self.same_field(rhs);
                Scalar {
                    value: field.$method(&self.value, &rhs.value),
                    field,
                }
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        let field = self.same_field(&rhs);
        Scalar {
            value: field.div(&self.value, &rhs.value).expect("division by zero"),
            field,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            value: self.field.neg(&self.value),
            field: self.field,
        }
    }
}
