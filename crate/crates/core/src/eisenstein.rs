//! Exact arithmetic in Z[ω], ω² + ω + 1 = 0.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// a + bω
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct EisensteinInt {
    pub a: i64,
    pub b: i64,
}

fn narrow(x: i128) -> i64 {
    i64::try_from(x).expect("Eisenstein integer coordinate overflow")
}

impl EisensteinInt {
    pub const ZERO: Self = Self { a: 0, b: 0 };
    pub const ONE: Self = Self { a: 1, b: 0 };
    pub const OMEGA: Self = Self { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub const fn rational(n: i64) -> Self {
        Self { a: n, b: 0 }
    }

    /// 1 − ω, the prime above 3.
    pub const fn lambda3() -> Self {
        Self { a: 1, b: -1 }
    }

    pub fn norm(&self) -> i128 {
        let (a, b) = (self.a as i128, self.b as i128);
        a * a - a * b + b * b
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_rational(&self) -> bool {
        self.b == 0
    }

    /// Complex conjugate: a + bω̄ = (a − b) − bω.
    pub fn conj(&self) -> Self {
        Self::new(self.a - self.b, -self.b)
    }

    /// ζ^k where ζ = 1 + ω = e^{iπ/3}.
    pub fn unit(k: i64) -> Self {
        const U: [EisensteinInt; 6] = [
            EisensteinInt::new(1, 0),
            EisensteinInt::new(1, 1),
            EisensteinInt::new(0, 1),
            EisensteinInt::new(-1, 0),
            EisensteinInt::new(-1, -1),
            EisensteinInt::new(0, -1),
        ];
        U[k.rem_euclid(6) as usize]
    }

    pub fn units() -> [Self; 6] {
        [0, 1, 2, 3, 4, 5].map(Self::unit)
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == 1
    }

    /// Index k with self = ζ^k, for units.
    pub fn unit_index(&self) -> Option<i64> {
        (0..6).find(|&k| Self::unit(k) == *self)
    }

    pub fn mul_i(&self, k: i64) -> Self {
        Self::new(narrow(self.a as i128 * k as i128), narrow(self.b as i128 * k as i128))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::ONE;
        for _ in 0..e {
            acc = acc * *self;
        }
        acc
    }

    /// Congruence modulo a rational integer n.
    pub fn congruent_mod(&self, other: &Self, n: i64) -> bool {
        (self.a - other.a).rem_euclid(n) == 0 && (self.b - other.b).rem_euclid(n) == 0
    }

    /// self·conj(d) as i128 coordinates.
    fn mul_conj_wide(&self, d: &Self) -> (i128, i128) {
        let c = d.conj();
        let (a, b, x, y) = (self.a as i128, self.b as i128, c.a as i128, c.b as i128);
        (a * x - b * y, a * y + b * x - b * y)
    }

    /// Exact quotient self / d, if d divides self.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let n = d.norm();
        let (u, v) = self.mul_conj_wide(d);
        if u % n == 0 && v % n == 0 {
            Some(Self::new(narrow(u / n), narrow(v / n)))
        } else {
            None
        }
    }

    pub fn divides(&self, z: &Self) -> bool {
        if self.is_zero() {
            return z.is_zero();
        }
        z.div_exact(self).is_some()
    }

    /// Nearest-point quotient for Euclidean division.
    pub fn div_round(&self, d: &Self) -> Self {
        let n = d.norm();
        let (u, v) = self.mul_conj_wide(d);
        let (fu, fv) = (u.div_euclid(n), v.div_euclid(n));
        let mut best = Self::ZERO;
        let mut best_n = i128::MAX;
        for du in 0..2 {
            for dv in 0..2 {
                let q = Self::new(narrow(fu + du), narrow(fv + dv));
                let r = *self - q * *d;
                let rn = r.norm();
                if rn < best_n {
                    best_n = rn;
                    best = q;
                }
            }
        }
        best
    }

    pub fn rem_round(&self, d: &Self) -> Self {
        *self - self.div_round(d) * *d
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut x, mut y) = (*self, *other);
        while !y.is_zero() {
            let r = x.rem_round(&y);
            x = y;
            y = r;
        }
        x
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.gcd(other).is_unit()
    }

    /// The associate ≡ 1 mod 3, when one exists.
    pub fn primary_mod3(&self) -> Option<Self> {
        Self::units()
            .into_iter()
            .map(|u| u * *self)
            .find(|z| z.a.rem_euclid(3) == 1 && z.b.rem_euclid(3) == 0)
    }

    /// True when self ≡ ±1 mod 3.
    pub fn is_primary_pm(&self) -> bool {
        self.b.rem_euclid(3) == 0 && self.a.rem_euclid(3) != 0
    }
}

impl Add for EisensteinInt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for EisensteinInt {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for EisensteinInt {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl Mul for EisensteinInt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        // (a + bω)(c + dω) = ac − bd + (ad + bc − bd)ω
        let (a, b, c, d) = (self.a as i128, self.b as i128, o.a as i128, o.b as i128);
        Self::new(narrow(a * c - b * d), narrow(a * d + b * c - b * d))
    }
}

impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}*w"),
            (a, b) if b < 0 => write!(f, "{a}-{}*w", -(b as i128)),
            (a, b) => write!(f, "{a}+{b}*w"),
        }
    }
}

impl FromStr for EisensteinInt {
    type Err = Error;

    /// Accepts forms like `157`, `13+12*w`, `54*w-107`, `-w`, `28+27w`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse("empty".into()));
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in t.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.is_empty() {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let (mut a, mut b) = (0i64, 0i64);
        for term in terms {
            let bad = || Error::Parse(format!("cannot parse {s:?}"));
            if let Some(coef) = term.strip_suffix('w') {
                let coef = coef.strip_suffix('*').unwrap_or(coef);
                let v = match coef {
                    "" | "+" => 1,
                    "-" => -1,
                    c => c.parse::<i64>().map_err(|_| bad())?,
                };
                b += v;
            } else {
                a += term.parse::<i64>().map_err(|_| bad())?;
            }
        }
        Ok(Self::new(a, b))
    }
}

pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

pub fn is_prime_u64(n: u64) -> bool {
    num_prime::nt_funcs::is_prime64(n)
}

/// Square root of a quadratic residue modulo an odd prime (Tonelli–Shanks).
pub fn sqrt_mod(n: u64, p: u64) -> Option<u64> {
    let n = n % p;
    if n == 0 {
        return Some(0);
    }
    if powmod(n, (p - 1) / 2, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| powmod(z, (p - 1) / 2, p) == p - 1)?;
    let (mut m, mut c, mut t, mut r) = (s, powmod(z, q, p), powmod(n, q, p), powmod(n, (q + 1) / 2, p));
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mulmod(tt, tt, p);
            i += 1;
        }
        let b = powmod(c, 1 << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    Some(r)
}

/// A root of x² + x + 1 modulo a prime p ≡ 1 mod 3.
pub fn cube_root_of_unity_mod(p: u64) -> u64 {
    let s = sqrt_mod(p - 3, p).expect("p ≡ 1 mod 3");
    let inv2 = (p + 1) / 2;
    mulmod((s + p - 1) % p, inv2, p)
}

/// The primary (≡ 1 mod 3) prime of norm p, for a rational prime p ≡ 1 mod 3.
pub fn prime_above(p: u64) -> EisensteinInt {
    prime_above_with_root(p).0
}

/// The primary prime π of norm p together with r such that ω ≡ r mod π.
pub fn prime_above_with_root(p: u64) -> (EisensteinInt, u64) {
    let r = cube_root_of_unity_mod(p);
    let g = EisensteinInt::rational(p as i64).gcd(&EisensteinInt::new(-(r as i64), 1));
    (g.primary_mod3().expect("norm coprime to 3"), r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Convention {
    Mod3,
    Mod4Sign,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimaryPrime {
    pub value: EisensteinInt,
    pub convention: Convention,
    pub rational_norm: i128,
}

impl PrimaryPrime {
    /// Wrap an element already known to be prime and normalized.
    pub fn from_primary(value: EisensteinInt) -> Self {
        PrimaryPrime { value, convention: Convention::Mod3, rational_norm: value.norm() }
    }
}

/// Whether z is prime in Z[ω].
pub fn is_prime(z: &EisensteinInt) -> bool {
    let n = z.norm();
    if n <= 1 {
        return false;
    }
    if n == 3 {
        return true;
    }
    if let Ok(n64) = u64::try_from(n) {
        if is_prime_u64(n64) {
            return true;
        }
        // a rational prime q ≡ 2 mod 3 times a unit
        let r = (n as f64).sqrt().round() as i128;
        for q in [r - 1, r, r + 1] {
            if q > 1 && q * q == n && q % 3 == 2 && is_prime_u64(q as u64) {
                return true;
            }
        }
    }
    false
}

pub fn primary_associate(z: &EisensteinInt, conv: Convention) -> Result<PrimaryPrime> {
    let pi = z
        .primary_mod3()
        .ok_or_else(|| Error::NoPrimaryAssociate(format!("{z} is divisible by 1-w")))?;
    let value = match conv {
        Convention::Mod3 => pi,
        Convention::Mod4Sign => {
            if pi.congruent_mod(&EisensteinInt::ONE, 4) {
                pi
            } else if pi.congruent_mod(&-EisensteinInt::ONE, 4) {
                -pi
            } else {
                return Err(Error::NoPrimaryAssociate(format!("{z} is not ±1 mod 4")));
            }
        }
    };
    Ok(PrimaryPrime { value, convention: conv, rational_norm: value.norm() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub unit: EisensteinInt,
    pub primes: Vec<(PrimaryPrime, u32)>,
}

impl Factorization {
    pub fn product(&self) -> EisensteinInt {
        self.primes
            .iter()
            .fold(self.unit, |acc, (p, e)| acc * p.value.pow(*e))
    }

    pub fn prime_values(&self) -> Vec<EisensteinInt> {
        self.primes.iter().map(|(p, _)| p.value).collect()
    }
}

/// Factor a nonzero element into mod-3 primaries (1 − ω for the prime above 3).
pub fn factor(z: &EisensteinInt) -> Result<Factorization> {
    if z.is_zero() {
        return Err(Error::NotPrime("0".into()));
    }
    let n = u64::try_from(z.norm()).map_err(|_| Error::TooLarge(format!("norm of {z}")))?;
    let mut rest = *z;
    let mut primes: Vec<(PrimaryPrime, u32)> = Vec::new();
    let mut take = |rest: &mut EisensteinInt, pi: EisensteinInt| {
        let mut e = 0;
        while let Some(q) = rest.div_exact(&pi) {
            *rest = q;
            e += 1;
        }
        if e > 0 {
            primes.push((PrimaryPrime::from_primary(pi), e));
        }
    };
    let fac = num_prime::nt_funcs::factorize64(n);
    for (&p, _) in fac.iter() {
        if p == 3 {
            take(&mut rest, EisensteinInt::lambda3());
        } else if p % 3 == 2 {
            take(&mut rest, EisensteinInt::rational(p as i64).primary_mod3().unwrap());
        } else {
            let pi = prime_above(p);
            take(&mut rest, pi);
            take(&mut rest, pi.conj().primary_mod3().unwrap());
        }
    }
    debug_assert!(rest.is_unit());
    primes.sort_by_key(|(p, _)| (p.rational_norm, p.value));
    Ok(Factorization { unit: rest, primes })
}

/// Canonical residues modulo a nonzero b: representatives u + vω with
/// 0 ≤ u < A, 0 ≤ v < C, A·C = N(b).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidueRing {
    pub modulus: EisensteinInt,
    pub big_a: i64,
    pub big_c: i64,
    /// The lattice vector (t, C).
    t: i64,
}

impl ResidueRing {
    pub fn new(b: &EisensteinInt) -> Self {
        assert!(!b.is_zero(), "zero modulus");
        let (x, y) = (b.a as i128, b.b as i128);
        // basis: b = (x, y), bω = (−y, x − y)
        let (g, s, t) = ext_gcd(y, x - y);
        let (g, s, t) = if g < 0 { (-g, -s, -t) } else { (g, s, t) };
        let wu = s * x + t * (-y);
        let n = b.norm();
        let big_a = n / g;
        Self {
            modulus: *b,
            big_a: narrow(big_a),
            big_c: narrow(g),
            t: narrow(wu.rem_euclid(big_a)),
        }
    }

    pub fn order(&self) -> i128 {
        self.big_a as i128 * self.big_c as i128
    }

    pub fn reduce(&self, z: &EisensteinInt) -> EisensteinInt {
        let k = (z.b as i128).div_euclid(self.big_c as i128);
        let u = z.a as i128 - k * self.t as i128;
        let v = z.b as i128 - k * self.big_c as i128;
        EisensteinInt::new(narrow(u.rem_euclid(self.big_a as i128)), narrow(v))
    }

    pub fn mul(&self, x: &EisensteinInt, y: &EisensteinInt) -> EisensteinInt {
        self.reduce(&(*x * *y))
    }

    pub fn pow(&self, x: &EisensteinInt, mut e: u128) -> EisensteinInt {
        let mut base = self.reduce(x);
        let mut acc = self.reduce(&EisensteinInt::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// All residues in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = EisensteinInt> + '_ {
        (0..self.big_c).flat_map(move |v| (0..self.big_a).map(move |u| EisensteinInt::new(u, v)))
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// An m-th root of unity ζ_m^exponent, ζ₂ = −1, ζ₃ = ω, ζ₆ = 1 + ω.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidueSymbolValue {
    pub exponent: u32,
    pub m: u32,
}

impl ResidueSymbolValue {
    pub fn trivial(m: u32) -> Self {
        Self { exponent: 0, m }
    }

    /// Exponent of the same root of unity as a power of ζ₆.
    pub fn as_sextic(&self) -> u32 {
        self.exponent * (6 / self.m) % 6
    }

    pub fn as_unit(&self) -> EisensteinInt {
        EisensteinInt::unit(self.as_sextic() as i64)
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.m, o.m);
        Self { exponent: (self.exponent + o.exponent) % self.m, m: self.m }
    }
}

fn check_m(m: u32) -> Result<()> {
    if matches!(m, 2 | 3 | 6) {
        Ok(())
    } else {
        Err(Error::BadModulus { norm: 0, m })
    }
}

/// (a/π)_m for a prime π, by Euler's criterion.
pub fn residue_symbol_prime(a: &EisensteinInt, pi: &EisensteinInt, m: u32) -> Result<ResidueSymbolValue> {
    check_m(m)?;
    let n = pi.norm();
    if (n - 1) % m as i128 != 0 {
        return Err(Error::BadModulus { norm: n, m });
    }
    let ring = ResidueRing::new(pi);
    let x = ring.pow(a, ((n - 1) / m as i128) as u128);
    if x == ring.reduce(&EisensteinInt::ZERO) {
        return Err(Error::NotCoprime);
    }
    for k in 0..m {
        let root = ResidueSymbolValue { exponent: k, m }.as_unit();
        if ring.reduce(&root) == x {
            return Ok(ResidueSymbolValue { exponent: k, m });
        }
    }
    Err(Error::BadModulus { norm: n, m })
}

/// (a/b)_m, multiplicative in b.
pub fn residue_symbol(a: &EisensteinInt, b: &EisensteinInt, m: u32) -> Result<ResidueSymbolValue> {
    check_m(m)?;
    if !a.is_coprime(b) {
        return Err(Error::NotCoprime);
    }
    let needs_odd = m % 2 == 0;
    let needs_prime_to_3 = m % 3 == 0;
    if (needs_odd && EisensteinInt::rational(2).gcd(b).norm() > 1)
        || (needs_prime_to_3 && EisensteinInt::lambda3().divides(b))
    {
        return Err(Error::BadModulus { norm: b.norm(), m });
    }
    let mut acc = ResidueSymbolValue::trivial(m);
    for (p, e) in factor(b)?.primes {
        let s = residue_symbol_prime(a, &p.value, m)?;
        for _ in 0..e {
            acc = acc.mul(&s);
        }
    }
    Ok(acc)
}

/// Least k ≥ 1 with a^k ≡ 1 mod π.
pub fn multiplicative_order(a: &EisensteinInt, pi: &EisensteinInt) -> Result<u64> {
    if !a.is_coprime(pi) {
        return Err(Error::NotCoprime);
    }
    if !is_prime(pi) {
        return Err(Error::NotPrime(pi.to_string()));
    }
    let ring = ResidueRing::new(pi);
    let one = ring.reduce(&EisensteinInt::ONE);
    let group = u64::try_from(pi.norm() - 1).map_err(|_| Error::TooLarge(pi.to_string()))?;
    let mut ord = group;
    for (&q, _) in num_prime::nt_funcs::factorize64(group).iter() {
        while ord % q == 0 && ring.pow(a, (ord / q) as u128) == one {
            ord /= q;
        }
    }
    Ok(ord)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: i64, b: i64) -> EisensteinInt {
        EisensteinInt::new(a, b)
    }

    #[test]
    fn norms() {
        assert_eq!(e(0, 0).norm(), 0);
        assert_eq!(e(13, 12).norm(), 157);
        assert_eq!(e(28, 27).norm(), 757);
    }

    #[test]
    fn parse_and_print() {
        for s in ["157", "13+12*w", "54*w-107", "-w", "28+27w", "-83-120*w"] {
            let z: EisensteinInt = s.parse().unwrap();
            let back: EisensteinInt = z.to_string().parse().unwrap();
            assert_eq!(z, back, "{s}");
        }
        assert_eq!("54*w-107".parse::<EisensteinInt>().unwrap(), e(-107, 54));
        assert!("x+1".parse::<EisensteinInt>().is_err());
    }

    #[test]
    fn small_factorizations() {
        let f = factor(&e(7, 0)).unwrap();
        assert_eq!(f.primes.len(), 2);
        assert!(f.primes.iter().all(|(p, m)| p.rational_norm == 7 && *m == 1));
        assert!(f.prime_values().contains(&e(-2, -3)));
        assert_eq!(f.product(), e(7, 0));

        let f = factor(&e(2, 0)).unwrap();
        assert_eq!(f.primes, vec![(PrimaryPrime::from_primary(e(-2, 0)), 1)]);
        assert_eq!(f.product(), e(2, 0));

        let f = factor(&e(-3, 0)).unwrap();
        assert_eq!(f.primes, vec![(PrimaryPrime::from_primary(e(1, -1)), 2)]);
        assert_eq!(f.product(), e(-3, 0));
    }

    #[test]
    fn primary_examples() {
        assert_eq!(primary_associate(&e(3, 1), Convention::Mod3).unwrap().value, e(-2, -3));
        assert_eq!(primary_associate(&e(13, 12), Convention::Mod3).unwrap().value, e(13, 12));
        assert_eq!(primary_associate(&e(-157, 0), Convention::Mod4Sign).unwrap().value, e(157, 0));
        assert!(primary_associate(&e(1, -1), Convention::Mod3).is_err());
        // 7 = −(−2−3ω)(…): its primes are not ±1 mod 4
        assert!(primary_associate(&e(-2, -3), Convention::Mod4Sign).is_err());
    }

    #[test]
    fn residue_ring_is_canonical() {
        for b in [e(13, 12), e(2, 0), e(1, -1), e(55, 33), e(-107, 54)] {
            let r = ResidueRing::new(&b);
            assert_eq!(r.order(), b.norm());
            for z in [e(1000, -77), e(-5, 9), e(123456, 654321)] {
                let red = r.reduce(&z);
                assert!(b.divides(&(z - red)));
                assert!(red.a >= 0 && red.a < r.big_a && red.b >= 0 && red.b < r.big_c);
            }
        }
    }

    #[test]
    fn symbols_paper_formulas() {
        // π = 1 + 3(m + nω) primary, ((1−ω)/π)₃ = ω^m and (ω/π)₃ = ω^{−m−n}
        for pi in [e(28, 27), e(-2, -3), e(13, 12), e(1, 9), e(7, 12)] {
            let (m, n) = ((pi.a - 1) / 3, pi.b / 3);
            let s = residue_symbol(&e(1, -1), &pi, 3).unwrap();
            assert_eq!(s.exponent as i64, m.rem_euclid(3), "{pi}");
            let s = residue_symbol(&EisensteinInt::OMEGA, &pi, 3).unwrap();
            assert_eq!(s.exponent as i64, (-m - n).rem_euclid(3), "{pi}");
        }
        assert_eq!(residue_symbol(&e(1, 0), &e(13, 12), 6).unwrap().exponent, 0);
        assert_eq!(residue_symbol(&e(13, 12), &e(13, 12), 2), Err(Error::NotCoprime));
    }

    #[test]
    fn orders() {
        let pi = e(28, 27);
        assert_eq!(multiplicative_order(&e(1, 0), &pi).unwrap(), 1);
        assert_eq!(multiplicative_order(&e(-1, 0), &pi).unwrap(), 2);
        assert_eq!(multiplicative_order(&e(1, -1), &pi).unwrap() % 9, 0);
    }

    #[test]
    fn prime_lift() {
        for p in [7u64, 13, 157, 757, 1_000_003] {
            let pi = prime_above(p);
            assert_eq!(pi.norm(), p as i128);
            assert!(pi.congruent_mod(&EisensteinInt::ONE, 3));
        }
    }
}
