//! Exact elements x + y√−3 of K = Q(√−3).

use crate::eisenstein::EisensteinInt;
use crate::error::{Error, Result};
use crate::mp::{Complex, Real};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KElement {
    pub x: BigRational,
    pub y: BigRational,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl KElement {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        KElement { x, y }
    }

    pub fn rational(x: BigRational) -> Self {
        KElement { x, y: BigRational::zero() }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        KElement { x: q(x), y: q(y) }
    }

    pub fn from_ratios(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        KElement {
            x: BigRational::new(xn.into(), xd.into()),
            y: BigRational::new(yn.into(), yd.into()),
        }
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn conj(&self) -> Self {
        KElement::new(self.x.clone(), -self.y.clone())
    }

    /// x² + 3y²
    pub fn norm(&self) -> BigRational {
        &self.x * &self.x + q(3) * &self.y * &self.y
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroValuation);
        }
        let n = self.norm();
        Ok(KElement::new(&self.x / &n, -&self.y / &n))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// The lcm of the denominators of x and y.
    pub fn denominator(&self) -> BigInt {
        self.x.denom().lcm(self.y.denom())
    }

    pub fn to_complex(&self, p: usize) -> Complex {
        let re = Real::from_bigrational(&self.x, p);
        let im = Real::from_bigrational(&self.y, p) * Real::from_i64(3, p).sqrt();
        Complex::new(re, im)
    }

    /// Coordinates in the basis {1, ω} when integral.
    pub fn to_eisenstein(&self) -> Option<EisensteinInt> {
        // x + y√−3 = (x + y) + 2yω
        let b = q(2) * &self.y;
        let a = &self.x + &self.y;
        if a.is_integer() && b.is_integer() {
            Some(EisensteinInt::new(a.to_integer().to_i64()?, b.to_integer().to_i64()?))
        } else {
            None
        }
    }

    /// Valuation normalized by ord_p(p) = 1, for p ∈ {2, 3}.
    pub fn ord_p(&self, p: u64) -> Result<Rational64> {
        if self.is_zero() {
            return Err(Error::ZeroValuation);
        }
        if p != 2 && p != 3 {
            return Err(Error::BadPrime(p.to_string()));
        }
        Ok(Rational64::new(ord_rational(&self.norm(), p), 2))
    }
}

/// p-adic valuation of a nonzero rational.
pub fn ord_rational(v: &BigRational, p: u64) -> i64 {
    ord_int(v.numer(), p) - ord_int(v.denom(), p)
}

pub fn ord_int(n: &BigInt, p: u64) -> i64 {
    let mut n = n.abs();
    let p = BigInt::from(p);
    let mut k = 0;
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        k += 1;
    }
    k
}

/// Valuation of a rational or K-element, exact.
pub fn ord_p_k(v: &KElement, p: u64) -> Result<Rational64> {
    v.ord_p(p)
}

impl From<EisensteinInt> for KElement {
    fn from(z: EisensteinInt) -> Self {
        // a + bω = (a − b/2) + (b/2)√−3
        KElement::from_ratios(2 * z.a - z.b, 2, z.b, 2)
    }
}

impl From<BigRational> for KElement {
    fn from(x: BigRational) -> Self {
        KElement::rational(x)
    }
}

impl Add for &KElement {
    type Output = KElement;
    fn add(self, o: &KElement) -> KElement {
        KElement::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl Sub for &KElement {
    type Output = KElement;
    fn sub(self, o: &KElement) -> KElement {
        KElement::new(&self.x - &o.x, &self.y - &o.y)
    }
}

impl Mul for &KElement {
    type Output = KElement;
    fn mul(self, o: &KElement) -> KElement {
        KElement::new(
            &self.x * &o.x - q(3) * &self.y * &o.y,
            &self.x * &o.y + &self.y * &o.x,
        )
    }
}

impl Div for &KElement {
    type Output = KElement;
    fn div(self, o: &KElement) -> KElement {
        self * &o.inv().expect("division by zero in K")
    }
}

impl Neg for &KElement {
    type Output = KElement;
    fn neg(self) -> KElement {
        KElement::new(-&self.x, -&self.y)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for KElement {
            type Output = KElement;
            fn $m(self, o: KElement) -> KElement { (&self).$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl fmt::Display for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            return write!(f, "{}", self.x);
        }
        let ys = if self.y.is_one() {
            String::new()
        } else if (-&self.y).is_one() {
            "-".to_string()
        } else {
            format!("{}*", self.y)
        };
        if self.x.is_zero() {
            write!(f, "{ys}sqrt(-3)")
        } else if self.y.is_negative() {
            let ys = if (-&self.y).is_one() { String::new() } else { format!("{}*", -&self.y) };
            write!(f, "{}-{ys}sqrt(-3)", self.x)
        } else {
            write!(f, "{}+{ys}sqrt(-3)", self.x)
        }
    }
}

impl Serialize for KElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        let r = |n, d| Rational64::new(n, d);
        assert_eq!(KElement::from_ints(12, 0).ord_p(2).unwrap(), r(2, 1));
        assert_eq!(KElement::from_ints(0, 1).ord_p(3).unwrap(), r(1, 2));
        // (3 − 3√−3)/16 has norm 36/256
        let v = KElement::from_ratios(3, 16, -3, 16);
        assert_eq!(v.ord_p(3).unwrap(), r(1, 1));
        assert_eq!(v.ord_p(2).unwrap(), r(-3, 1));
        assert_eq!(KElement::zero().ord_p(2), Err(Error::ZeroValuation));
    }

    #[test]
    fn field_ops() {
        let w: KElement = EisensteinInt::OMEGA.into();
        assert_eq!(&(&w * &w) + &(&w + &KElement::one()), KElement::zero());
        let z: KElement = EisensteinInt::new(13, 12).into();
        assert_eq!(z.norm(), q(157));
        assert_eq!((&z / &z), KElement::one());
        assert_eq!(z.to_eisenstein(), Some(EisensteinInt::new(13, 12)));
        assert_eq!(KElement::from_ratios(3, 16, -3, 16).to_string(), "3/16-3/16*sqrt(-3)");
    }
}
