//! Exact scalars in the tower ℚ ⊆ ℚ(t), optionally extended by `i`.
//!
//! A [`Scalar`] is `re + im·i` with `re, im` reduced rational functions in a
//! single transcendental `t`. All values are kept in canonical form (lowest
//! terms, monic denominator) so structural equality is mathematical
//! equality.

mod parse;
mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use parse::parse_scalar;
pub use poly::Poly;

/// The smallest field of the tower that contains a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Level {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Q(t)")]
    RationalFunction,
    #[serde(rename = "Q(i)")]
    Gaussian,
    #[serde(rename = "Q(t)(i)")]
    GaussianRationalFunction,
}

impl Level {
    fn from_flags(parametric: bool, gaussian: bool) -> Level {
        match (parametric, gaussian) {
            (false, false) => Level::Rational,
            (true, false) => Level::RationalFunction,
            (false, true) => Level::Gaussian,
            (true, true) => Level::GaussianRationalFunction,
        }
    }

    pub fn is_parametric(self) -> bool {
        matches!(self, Level::RationalFunction | Level::GaussianRationalFunction)
    }

    pub fn is_gaussian(self) -> bool {
        matches!(self, Level::Gaussian | Level::GaussianRationalFunction)
    }

    pub fn join(self, other: Level) -> Level {
        Level::from_flags(
            self.is_parametric() || other.is_parametric(),
            self.is_gaussian() || other.is_gaussian(),
        )
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Rational => "Q",
            Level::RationalFunction => "Q(t)",
            Level::Gaussian => "Q(i)",
            Level::GaussianRationalFunction => "Q(t)(i)",
        })
    }
}

/// Element of ℚ(t) in lowest terms.
///
/// Constants are kept unboxed; `Frac` always has a genuinely non-constant
/// numerator or denominator, a monic denominator and coprime parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RatFunc {
    Const(BigRational),
    Frac(Box<(Poly, Poly)>),
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc::Const(BigRational::zero())
    }

    pub fn one() -> Self {
        RatFunc::Const(BigRational::one())
    }

    pub fn t() -> Self {
        RatFunc::Frac(Box::new((Poly::monomial(BigRational::one(), 1), Poly::one())))
    }

    /// Reduces `num/den` to canonical form.
    pub fn from_parts(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        if num.is_constant() && den.is_constant() {
            return Ok(RatFunc::Const(num.constant_term() / den.constant_term()));
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_rem(&g).0, den.div_rem(&g).0)
            }
        };
        let lead = den.leading().expect("nonzero denominator").clone();
        let (num, den) = if lead.is_one() {
            (num, den)
        } else {
            let inv = lead.recip();
            (num.scale(&inv), den.scale(&inv))
        };
        if num.is_constant() && den.is_constant() {
            Ok(RatFunc::Const(num.constant_term()))
        } else {
            Ok(RatFunc::Frac(Box::new((num, den))))
        }
    }

    pub fn numer(&self) -> Poly {
        match self {
            RatFunc::Const(c) => Poly::constant(c.clone()),
            RatFunc::Frac(nd) => nd.0.clone(),
        }
    }

    pub fn denom(&self) -> Poly {
        match self {
            RatFunc::Const(_) => Poly::one(),
            RatFunc::Frac(nd) => nd.1.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, RatFunc::Const(c) if c.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, RatFunc::Const(_))
    }

    pub fn as_constant(&self) -> Option<&BigRational> {
        match self {
            RatFunc::Const(c) => Some(c),
            RatFunc::Frac(_) => None,
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        match (self, other) {
            (RatFunc::Const(a), RatFunc::Const(b)) => RatFunc::Const(a + b),
            _ if self.is_zero() => other.clone(),
            _ if other.is_zero() => self.clone(),
            _ => {
                let (a, b) = (self.numer(), self.denom());
                let (c, d) = (other.numer(), other.denom());
                let (num, den) = if b == d {
                    (a.add(&c), b)
                } else {
                    (a.mul(&d).add(&c.mul(&b)), b.mul(&d))
                };
                RatFunc::from_parts(num, den).expect("nonzero denominator")
            }
        }
    }

    pub fn neg(&self) -> RatFunc {
        match self {
            RatFunc::Const(a) => RatFunc::Const(-a),
            RatFunc::Frac(nd) => RatFunc::Frac(Box::new((nd.0.neg(), nd.1.clone()))),
        }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        match (self, other) {
            (RatFunc::Const(a), RatFunc::Const(b)) => RatFunc::Const(a * b),
            _ if self.is_zero() || other.is_zero() => RatFunc::zero(),
            (RatFunc::Const(a), RatFunc::Frac(nd)) | (RatFunc::Frac(nd), RatFunc::Const(a)) => {
                RatFunc::Frac(Box::new((nd.0.scale(a), nd.1.clone())))
            }
            _ => {
                let num = self.numer().mul(&other.numer());
                let den = self.denom().mul(&other.denom());
                RatFunc::from_parts(num, den).expect("nonzero denominator")
            }
        }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        match self {
            RatFunc::Const(a) if a.is_zero() => Err(Error::DivisionByZero),
            RatFunc::Const(a) => Ok(RatFunc::Const(a.recip())),
            RatFunc::Frac(nd) => RatFunc::from_parts(nd.1.clone(), nd.0.clone()),
        }
    }

    /// Substitutes a rational value for `t`; `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        match self {
            RatFunc::Const(c) => Some(c.clone()),
            RatFunc::Frac(nd) => {
                let den = nd.1.eval(x);
                (!den.is_zero()).then(|| nd.0.eval(x) / den)
            }
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatFunc::Const(c) if c.is_integer() => write!(f, "{}", c.numer()),
            RatFunc::Const(c) => write!(f, "{}/{}", c.numer(), c.denom()),
            RatFunc::Frac(nd) if nd.1.is_one() => write!(f, "{}", nd.0),
            RatFunc::Frac(nd) => write!(f, "({})/({})", nd.0, nd.1),
        }
    }
}

/// An exact scalar `re + im·i` with `re, im ∈ ℚ(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    re: RatFunc,
    im: RatFunc,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn new(re: RatFunc, im: RatFunc) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::new(RatFunc::zero(), RatFunc::zero())
    }

    pub fn one() -> Self {
        Scalar::new(RatFunc::one(), RatFunc::zero())
    }

    pub fn i() -> Self {
        Scalar::new(RatFunc::zero(), RatFunc::one())
    }

    pub fn t() -> Self {
        Scalar::new(RatFunc::t(), RatFunc::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::from_rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar::new(RatFunc::Const(q), RatFunc::zero())
    }

    pub fn from_real(re: RatFunc) -> Self {
        Scalar::new(re, RatFunc::zero())
    }

    pub fn re(&self) -> &RatFunc {
        &self.re
    }

    pub fn im(&self) -> &RatFunc {
        &self.im
    }

    pub fn real_part(&self) -> Scalar {
        Scalar::from_real(self.re.clone())
    }

    pub fn imag_part(&self) -> Scalar {
        Scalar::from_real(self.im.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.im.is_zero() && matches!(&self.re, RatFunc::Const(c) if c.is_one())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// True when the value carries no genuine dependence on `t`.
    pub fn is_constant(&self) -> bool {
        self.re.is_constant() && self.im.is_constant()
    }

    /// True when the value lies in ℚ.
    pub fn is_rational(&self) -> bool {
        self.is_real() && self.re.is_constant()
    }

    pub fn level(&self) -> Level {
        Level::from_flags(!self.is_constant(), !self.is_real())
    }

    pub fn conj(&self) -> Scalar {
        Scalar::new(self.re.clone(), self.im.neg())
    }

    pub fn add_ref(&self, other: &Scalar) -> Scalar {
        Scalar::new(self.re.add(&other.re), self.im.add(&other.im))
    }

    pub fn sub_ref(&self, other: &Scalar) -> Scalar {
        Scalar::new(self.re.sub(&other.re), self.im.sub(&other.im))
    }

    pub fn neg_ref(&self) -> Scalar {
        Scalar::new(self.re.neg(), self.im.neg())
    }

    pub fn mul_ref(&self, other: &Scalar) -> Scalar {
        match (self.im.is_zero(), other.im.is_zero()) {
            (true, true) => Scalar::from_real(self.re.mul(&other.re)),
            (true, false) => Scalar::new(self.re.mul(&other.re), self.re.mul(&other.im)),
            (false, true) => Scalar::new(self.re.mul(&other.re), self.im.mul(&other.re)),
            (false, false) => Scalar::new(
                self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
                self.re.mul(&other.im).add(&self.im.mul(&other.re)),
            ),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.im.is_zero() {
            return Ok(Scalar::from_real(self.re.inv()?));
        }
        let norm = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let inv = norm.inv()?;
        Ok(Scalar::new(self.re.mul(&inv), self.im.neg().mul(&inv)))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul_ref(&other.inv()?))
    }

    /// `self + a·b` without an intermediate clone of `self` on the fast path.
    pub fn add_mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        if a.is_zero() || b.is_zero() {
            return self.clone();
        }
        self.add_ref(&a.mul_ref(b))
    }

    /// Substitutes a rational value for `t`; `None` at a pole.
    pub fn eval_t(&self, x: &BigRational) -> Option<Scalar> {
        Some(Scalar::new(
            RatFunc::Const(self.re.eval(x)?),
            RatFunc::Const(self.im.eval(x)?),
        ))
    }
}

impl fmt::Display for Scalar {
    /// Renders a string that [`parse_scalar`] maps back to the same value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if !self.re.is_zero() {
            write!(f, "{}", self.re)?;
        }
        match &self.im {
            RatFunc::Const(c) => {
                let neg = c.is_negative();
                let abs = c.abs();
                if self.re.is_zero() {
                    if neg {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, "{}", if neg { " - " } else { " + " })?;
                }
                if !abs.is_one() {
                    write!(f, "{}*", RatFunc::Const(abs))?;
                }
                write!(f, "i")
            }
            frac => {
                if !self.re.is_zero() {
                    write!(f, " + ")?;
                }
                write!(f, "({frac})*i")
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_scalar(&text).map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$inner(rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$inner(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$inner(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$inner(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}
