//! Exact field arithmetic over the rationals and their extension by `i`.
//!
//! A [`Scalar`] is kept in canonical form: a value with zero imaginary part
//! is always stored with the `Rational` tag, so structural equality agrees
//! with field equality and rationals embed losslessly.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// An exact element of the rationals or of their extension by `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Gaussian(BigRational, BigRational),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `p/q` in lowest terms; `q` must be nonzero.
    pub fn rational(p: i64, q: i64) -> Result<Self, Error> {
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::Rational(BigRational::new(
            BigInt::from(p),
            BigInt::from(q),
        )))
    }

    /// `re + im*i`, normalized.
    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        if im.is_zero() {
            Scalar::Rational(re)
        } else {
            Scalar::Gaussian(re, im)
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar::Gaussian(BigRational::zero(), BigRational::one())
    }

    pub fn from_sign(s: i32) -> Self {
        debug_assert!(s == 1 || s == -1);
        Scalar::from_int(s as i64)
    }

    pub fn re(&self) -> BigRational {
        match self {
            Scalar::Rational(r) => r.clone(),
            Scalar::Gaussian(re, _) => re.clone(),
        }
    }

    pub fn im(&self) -> BigRational {
        match self {
            Scalar::Rational(_) => BigRational::zero(),
            Scalar::Gaussian(_, im) => im.clone(),
        }
    }

    pub fn is_gaussian(&self) -> bool {
        matches!(self, Scalar::Gaussian(..))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Gaussian(..) => false,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Gaussian(..) => false,
        }
    }

    pub fn try_div(&self, rhs: &Scalar) -> Result<Scalar, Error> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.clone() * rhs.inv()?)
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Scalar, Error> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Gaussian(re, im) => {
                // (re - im i) / (re^2 + im^2)
                let n = re * re + im * im;
                Ok(Scalar::gaussian(re / &n, -(im / &n)))
            }
        }
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Scalar, Error> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc * base.clone();
        }
        Ok(acc)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar::gaussian(self.re() + rhs.re(), self.im() + rhs.im())
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar::gaussian(self.re() - rhs.re(), self.im() - rhs.im())
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        match (&self, &rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            _ => {
                let (a, b) = (self.re(), self.im());
                let (c, d) = (rhs.re(), rhs.im());
                Scalar::gaussian(&a * &c - &b * &d, &a * &d + &b * &c)
            }
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Gaussian(re, im) => Scalar::Gaussian(-re, -im),
        }
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = self.clone() + rhs;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self = self.clone() - rhs;
    }
}

impl MulAssign for Scalar {
    fn mul_assign(&mut self, rhs: Scalar) {
        *self = self.clone() * rhs;
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", fmt_rational(r)),
            Scalar::Gaussian(re, im) => {
                write!(
                    f,
                    "{}{}{}i",
                    fmt_rational(re),
                    if im.is_negative() { "" } else { "+" },
                    fmt_rational(im)
                )
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::Parse(format!("invalid rational: {s:?}"));
    match s.split_once('/') {
        None => {
            let n = BigInt::from_str(s.trim()).map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(p, q))
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Parses the `"p/q"` interchange form (or a plain integer).
    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(Scalar::Rational(parse_rational(s)?))
    }
}

/// Parses the `{"re","im"}` parts of the extension-field interchange form.
pub fn gaussian_from_parts(re: &str, im: &str) -> Result<Scalar, Error> {
    Ok(Scalar::gaussian(parse_rational(re)?, parse_rational(im)?))
}

/// A field operation selector for the dispatch form of the arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Dispatched exact field arithmetic; division by zero is the only error.
pub fn field_arith(a: &Scalar, b: &Scalar, op: FieldOp) -> Result<Scalar, Error> {
    match op {
        FieldOp::Add => Ok(a.clone() + b.clone()),
        FieldOp::Sub => Ok(a.clone() - b.clone()),
        FieldOp::Mul => Ok(a.clone() * b.clone()),
        FieldOp::Div => a.try_div(b),
    }
}

/// The `"p/q"` form of a rational scalar (no `/1` suffix on integers).
pub fn rational_string(s: &Scalar) -> Option<String> {
    match s {
        Scalar::Rational(r) => Some(fmt_rational(r)),
        Scalar::Gaussian(..) => None,
    }
}

/// Both parts of a scalar in `"p/q"` form.
pub fn gaussian_strings(s: &Scalar) -> (String, String) {
    (fmt_rational(&s.re()), fmt_rational(&s.im()))
}
