//! Multiprecision real and complex numbers on top of astro-float.

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign, Word};
use num_bigint::{BigInt, Sign as BSign};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

fn with_cc<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Working precision and absolute error target.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrecisionContext {
    pub working_bits: usize,
    pub target_abs_error: f64,
}

impl PrecisionContext {
    pub fn new(working_bits: usize, target_abs_error: f64) -> crate::Result<Self> {
        let floor = 2f64.powi(16 - working_bits as i32);
        if working_bits < 64 || !(target_abs_error > 0.0) || target_abs_error < floor {
            return Err(crate::Error::PrecisionUnachievable {
                target: target_abs_error,
                achieved: floor,
            });
        }
        Ok(Self { working_bits, target_abs_error })
    }

    /// Context with the smallest admissible target for the given bits.
    pub fn bits(working_bits: usize) -> Self {
        let b = working_bits.max(64);
        Self { working_bits: b, target_abs_error: 2f64.powi(-(3 * b as i32) / 4).max(1e-300) }
    }

    /// Relative size of one unit in the last place.
    pub fn ulp(&self) -> f64 {
        2f64.powi(-(self.working_bits as i32))
    }

    /// Decimal digits implied by the target error.
    pub fn digits(&self) -> u32 {
        (-self.target_abs_error.log10()).ceil().max(1.0) as u32
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self { working_bits: 128, target_abs_error: 1e-25 }
    }
}

#[derive(Clone)]
pub struct Real {
    v: BigFloat,
    p: usize,
}

impl Real {
    fn wrap(v: BigFloat, p: usize) -> Self {
        Real { v, p }
    }

    pub fn prec(&self) -> usize {
        self.p
    }

    pub fn zero(p: usize) -> Self {
        Self::wrap(BigFloat::from_word(0, p), p)
    }

    pub fn one(p: usize) -> Self {
        Self::from_i64(1, p)
    }

    pub fn from_i64(i: i64, p: usize) -> Self {
        Self::wrap(BigFloat::from_i64(i, p), p)
    }

    pub fn from_f64(f: f64, p: usize) -> Self {
        Self::wrap(BigFloat::from_f64(f, p), p)
    }

    pub fn from_bigint(n: &BigInt, p: usize) -> Self {
        if let Some(i) = n.to_i64() {
            return Self::from_i64(i, p);
        }
        let (s, words) = n.to_u64_digits();
        let sign = if s == BSign::Minus { Sign::Neg } else { Sign::Pos };
        let words: Vec<Word> = words.into_iter().map(|w| w as Word).collect();
        let e = (words.len() * 64) as i32;
        let v = BigFloat::from_words(&words, sign, e);
        Self::wrap(v.add(&BigFloat::from_word(0, p), p, RM), p)
    }

    pub fn from_ratio(n: i64, d: i64, p: usize) -> Self {
        Self::from_i64(n, p) / Self::from_i64(d, p)
    }

    pub fn from_bigrational(q: &BigRational, p: usize) -> Self {
        Self::from_bigint(q.numer(), p) / Self::from_bigint(q.denom(), p)
    }

    pub fn pi(p: usize) -> Self {
        Self::wrap(with_cc(|cc| cc.pi(p, RM)), p)
    }

    pub fn with_prec(&self, p: usize) -> Self {
        let mut v = self.v.clone();
        let _ = v.set_precision(p, RM);
        Self::wrap(v, p)
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.v.sqrt(self.p, RM), self.p)
    }

    pub fn cbrt(&self) -> Self {
        Self::wrap(self.v.cbrt(self.p, RM), self.p)
    }

    pub fn exp(&self) -> Self {
        let p = self.p;
        Self::wrap(with_cc(|cc| self.v.exp(p, RM, cc)), p)
    }

    pub fn ln(&self) -> Self {
        let p = self.p;
        Self::wrap(with_cc(|cc| self.v.ln(p, RM, cc)), p)
    }

    pub fn sin(&self) -> Self {
        let p = self.p;
        Self::wrap(with_cc(|cc| self.v.sin(p, RM, cc)), p)
    }

    pub fn cos(&self) -> Self {
        let p = self.p;
        Self::wrap(with_cc(|cc| self.v.cos(p, RM, cc)), p)
    }

    pub fn atan(&self) -> Self {
        let p = self.p;
        Self::wrap(with_cc(|cc| self.v.atan(p, RM, cc)), p)
    }

    /// Angle of the point (x, y) in (−π, π].
    pub fn atan2(y: &Real, x: &Real) -> Real {
        let p = y.p.max(x.p);
        if x.is_zero() {
            let h = Real::pi(p) / 2i64;
            return if y.is_negative() { -h } else if y.is_zero() { Real::zero(p) } else { h };
        }
        let base = (y / x).atan();
        if !x.is_negative() {
            base
        } else if y.is_negative() {
            base - Real::pi(p)
        } else {
            base + Real::pi(p)
        }
    }

    pub fn powi(&self, n: i64) -> Self {
        if n >= 0 {
            Self::wrap(self.v.powi(n as usize, self.p, RM), self.p)
        } else {
            Self::one(self.p) / Self::wrap(self.v.powi((-n) as usize, self.p, RM), self.p)
        }
    }

    pub fn powf(&self, e: &Real) -> Self {
        let p = self.p;
        Self::wrap(with_cc(|cc| self.v.pow(&e.v, p, RM, cc)), p)
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.v.abs(), self.p)
    }

    pub fn recip(&self) -> Self {
        Self::one(self.p) / self
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative() && !self.v.is_zero()
    }

    pub fn floor(&self) -> Self {
        Self::wrap(self.v.floor(), self.p)
    }

    pub fn round(&self) -> Self {
        (self + &Real::from_ratio(1, 2, self.p)).floor()
    }

    /// Binary exponent e with |x| in [2^(e−1), 2^e); None for zero.
    pub fn exponent(&self) -> Option<i32> {
        if self.is_zero() {
            None
        } else {
            self.v.exponent()
        }
    }

    pub fn to_f64(&self) -> f64 {
        let Some((words, nbits, sign, e, _)) = self.v.as_raw_parts() else {
            return f64::NAN;
        };
        if self.v.is_zero() {
            return 0.0;
        }
        let top = words[words.len() - 1] as f64;
        let next = if words.len() > 1 { words[words.len() - 2] as f64 } else { 0.0 };
        let m = (top + next / 18446744073709551616.0) / 18446744073709551616.0;
        let _ = nbits;
        let v = m * 2f64.powi(e);
        if sign == Sign::Neg {
            -v
        } else {
            v
        }
    }

    /// Truncation toward zero as an exact integer.
    pub fn trunc_bigint(&self) -> BigInt {
        let Some((words, nbits, sign, e, _)) = self.v.as_raw_parts() else {
            return BigInt::zero();
        };
        if self.v.is_zero() || e <= 0 {
            return BigInt::zero();
        }
        let digits: Vec<u64> = words.iter().map(|w| *w as u64).collect();
        let m = BigInt::from_slice_native(&digits);
        let _ = nbits;
        let shift = e as i64 - 64 * words.len() as i64;
        let mag = if shift >= 0 { m << shift as usize } else { m >> (-shift) as usize };
        if sign == Sign::Neg {
            -mag
        } else {
            mag
        }
    }

    pub fn floor_bigint(&self) -> BigInt {
        self.floor().trunc_bigint()
    }

    pub fn round_bigint(&self) -> BigInt {
        self.round().trunc_bigint()
    }

    pub fn max_abs(a: &Real, b: &Real) -> Real {
        if a.abs() >= b.abs() {
            a.abs()
        } else {
            b.abs()
        }
    }

    pub fn to_string_digits(&self, digits: usize) -> String {
        let p = self.p;
        let s = with_cc(|cc| self.v.format(Radix::Dec, RM, cc)).unwrap_or_default();
        let _ = p;
        shorten(&s, digits)
    }
}

trait FromSliceNative {
    fn from_slice_native(d: &[u64]) -> BigInt;
}

impl FromSliceNative for BigInt {
    fn from_slice_native(d: &[u64]) -> BigInt {
        let mut bytes = Vec::with_capacity(d.len() * 8);
        for w in d {
            bytes.extend_from_slice(&w.to_le_bytes());
        }
        BigInt::from_bytes_le(BSign::Plus, &bytes)
    }
}

fn shorten(s: &str, digits: usize) -> String {
    // "d.ddddde+x" style from astro-float
    let (mant, exp) = match s.find('e') {
        Some(i) => (&s[..i], &s[i..]),
        None => (s, ""),
    };
    let keep = mant
        .char_indices()
        .filter(|(_, c)| c.is_ascii_digit())
        .nth(digits)
        .map(|(i, _)| i)
        .unwrap_or(mant.len());
    format!("{}{}", &mant[..keep], exp)
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_digits(40))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_digits(f.precision().unwrap_or(30)))
    }
}

impl PartialEq for Real {
    fn eq(&self, o: &Self) -> bool {
        self.v.cmp(&o.v) == Some(0)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        self.v.cmp(&o.v).map(|c| c.cmp(&0))
    }
}

macro_rules! real_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $m(self, o: &Real) -> Real {
                let p = self.p.max(o.p);
                Real::wrap(self.v.$m(&o.v, p, RM), p)
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, o: Real) -> Real {
                (&self).$m(&o)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, o: &Real) -> Real {
                (&self).$m(o)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $m(self, o: Real) -> Real {
                self.$m(&o)
            }
        }
        impl $tr<i64> for &Real {
            type Output = Real;
            fn $m(self, o: i64) -> Real {
                Real::wrap(self.v.$m(&BigFloat::from_i64(o, 64), self.p, RM), self.p)
            }
        }
        impl $tr<i64> for Real {
            type Output = Real;
            fn $m(self, o: i64) -> Real {
                (&self).$m(o)
            }
        }
    };
}

real_binop!(Add, add);
real_binop!(Sub, sub);
real_binop!(Mul, mul);
real_binop!(Div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(self.v.clone().neg(), self.p)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(self.v.clone().neg(), self.p)
    }
}

#[derive(Clone, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn zero(p: usize) -> Self {
        Complex::new(Real::zero(p), Real::zero(p))
    }

    pub fn from_real(re: Real) -> Self {
        let p = re.prec();
        Complex::new(re, Real::zero(p))
    }

    pub fn from_i64(re: i64, p: usize) -> Self {
        Complex::from_real(Real::from_i64(re, p))
    }

    /// The Eisenstein integer a + bω.
    pub fn from_eisenstein(a: i64, b: i64, p: usize) -> Self {
        let re = Real::from_i64(2 * a - b, p) / 2i64;
        let im = Real::from_i64(3, p).sqrt() * b / 2i64;
        Complex::new(re, im)
    }

    pub fn prec(&self) -> usize {
        self.re.prec().max(self.im.prec())
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn arg(&self) -> Real {
        Real::atan2(&self.im, &self.re)
    }

    pub fn scale(&self, r: &Real) -> Self {
        Complex::new(&self.re * r, &self.im * r)
    }

    pub fn scale_i(&self, k: i64) -> Self {
        Complex::new(&self.re * k, &self.im * k)
    }

    pub fn div_i(&self, k: i64) -> Self {
        Complex::new(&self.re / k, &self.im / k)
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        Complex::new(&self.re / &n, -(&self.im / &n))
    }

    pub fn from_polar(r: &Real, theta: &Real) -> Self {
        Complex::new(r * theta.cos(), r * theta.sin())
    }

    pub fn exp(&self) -> Self {
        Complex::from_polar(&self.re.exp(), &self.im)
    }

    /// Principal n-th root.
    pub fn root(&self, n: i64) -> Self {
        let p = self.prec();
        if self.re.is_zero() && self.im.is_zero() {
            return Complex::zero(p);
        }
        let r = self.abs();
        let rn = if n == 2 {
            r.sqrt()
        } else if n == 3 {
            r.cbrt()
        } else {
            (r.ln() / n).exp()
        };
        Complex::from_polar(&rn, &(self.arg() / n))
    }

    pub fn powi(&self, n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Complex::from_i64(1, self.prec());
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn abs_f64(&self) -> f64 {
        let (a, b) = self.to_f64();
        a.hypot(b)
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}i)", self.re, self.im)
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = f.precision().unwrap_or(30);
        if self.im.is_negative() {
            write!(f, "{} - {}i", self.re.to_string_digits(d), (-&self.im).to_string_digits(d))
        } else {
            write!(f, "{} + {}i", self.re.to_string_digits(d), self.im.to_string_digits(d))
        }
    }
}

impl Add<&Complex> for &Complex {
    type Output = Complex;
    fn add(self, o: &Complex) -> Complex {
        Complex::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub<&Complex> for &Complex {
    type Output = Complex;
    fn sub(self, o: &Complex) -> Complex {
        Complex::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul<&Complex> for &Complex {
    type Output = Complex;
    fn mul(self, o: &Complex) -> Complex {
        Complex::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Div<&Complex> for &Complex {
    type Output = Complex;
    fn div(self, o: &Complex) -> Complex {
        self * &o.recip()
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-&self.re, -&self.im)
    }
}

macro_rules! complex_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Complex> for Complex {
            type Output = Complex;
            fn $m(self, o: Complex) -> Complex {
                (&self).$m(&o)
            }
        }
        impl $tr<&Complex> for Complex {
            type Output = Complex;
            fn $m(self, o: &Complex) -> Complex {
                (&self).$m(o)
            }
        }
        impl $tr<Complex> for &Complex {
            type Output = Complex;
            fn $m(self, o: Complex) -> Complex {
                self.$m(&o)
            }
        }
    };
}

complex_owned!(Add, add);
complex_owned!(Sub, sub);
complex_owned!(Mul, mul);
complex_owned!(Div, div);

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        -&self
    }
}
