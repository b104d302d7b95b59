//! Grössencharacters of the twists E(λ): y² = 4x³ − 27λ and their L-values at s = 1.
//!
//! For a primary a ≡ 1 mod 3 coprime to 3D the character is ψ_λ((a)) = χ(a)·a with
//! χ(a) = (D/a)₂ for λ = D³ and χ(a) = (D/a)₃^s for λ = D², s fixed by point counts.
//! L(ψ̄_λ, 1) is evaluated by the smoothed sum from the functional equation
//! Λ(s) = W·Λ*(2 − s), conductor N = 27·N(rad D).

use crate::analytic::consts;
use crate::classifier::{is_cubic_special, is_special_split};
use crate::eisenstein::{
    factor, is_prime_u64, mulmod, powmod, prime_above_with_root, residue_symbol_prime, EisensteinInt,
    PrimaryPrime, ResidueRing,
};
use crate::error::{Error, Result};
use crate::kelement::KElement;
use crate::mp::{Complex, PrecisionContext, Real};
use crate::recognize::recognize_k_element;
use crate::series::power_sums;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Cubic twists use χ(a) = (D/a)₃ raised to this power; pinned by the
/// point-count calibration test.
pub const CUBIC_SYMBOL_POWER: u32 = 2;

/// Default denominator bound for recognition.
pub const DEFAULT_DENOM_BOUND: u64 = 1000;

const GUARD: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TwistKind {
    Quadratic,
    Cubic,
}

impl TwistKind {
    /// j with λ = D^j.
    pub fn exponent(self) -> u32 {
        match self {
            TwistKind::Quadratic => 3,
            TwistKind::Cubic => 2,
        }
    }

    /// Order m of the twisting symbol.
    pub fn order(self) -> u32 {
        match self {
            TwistKind::Quadratic => 2,
            TwistKind::Cubic => 3,
        }
    }
}

impl fmt::Display for TwistKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TwistKind::Quadratic => "quadratic",
            TwistKind::Cubic => "cubic",
        })
    }
}

impl FromStr for TwistKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "quadratic" | "q" | "2" => Ok(TwistKind::Quadratic),
            "cubic" | "c" | "3" => Ok(TwistKind::Cubic),
            _ => Err(Error::Parse(format!("unknown twist kind {s:?}"))),
        }
    }
}

/// λ = D³ (quadratic) or λ = D² (cubic).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistSpec {
    pub kind: TwistKind,
    pub d: EisensteinInt,
    /// Mod-3 primary primes of K dividing D, with multiplicity.
    pub prime_list: Vec<(PrimaryPrime, u32)>,
    pub is_rational: bool,
    /// Every prime of D is special split (quadratic) or cubic-special (cubic).
    pub hypotheses: bool,
}

fn factor_rational(n: u64) -> Vec<(PrimaryPrime, u32)> {
    let mut out = Vec::new();
    for (&p, &e) in num_prime::nt_funcs::factorize64(n).iter() {
        let e = e as u32;
        match p % 3 {
            0 => out.push((PrimaryPrime::from_primary(EisensteinInt::lambda3()), 2 * e)),
            1 => {
                let (pi, _) = prime_above_with_root(p);
                out.push((PrimaryPrime::from_primary(pi), e));
                out.push((PrimaryPrime::from_primary(pi.conj().primary_mod3().unwrap()), e));
            }
            _ => out.push((PrimaryPrime::from_primary(EisensteinInt::rational(-(p as i64))), e)),
        }
    }
    out.sort_by_key(|(p, _)| (p.rational_norm, p.value));
    out
}

/// Parses D as an Eisenstein integer (`a+b*w`) or as a product of integer powers
/// (`19^2*37`, `-7`).
pub fn parse_twist_parameter(s: &str) -> Result<EisensteinInt> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.contains('w') {
        return t.parse();
    }
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1i64, rest),
        None => (1, t.as_str()),
    };
    let mut n: i64 = sign;
    for factor in body.split('*') {
        let bad = || Error::Parse(format!("cannot parse {s:?}"));
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => (b.parse::<i64>().map_err(|_| bad())?, e.parse::<u32>().map_err(|_| bad())?),
            None => (factor.parse::<i64>().map_err(|_| bad())?, 1),
        };
        n = base
            .checked_pow(exp)
            .and_then(|v| n.checked_mul(v))
            .ok_or_else(|| Error::TooLarge(s.to_string()))?;
    }
    Ok(EisensteinInt::rational(n))
}

impl TwistSpec {
    pub fn untwisted() -> Self {
        TwistSpec {
            kind: TwistKind::Quadratic,
            d: EisensteinInt::ONE,
            prime_list: Vec::new(),
            is_rational: true,
            hypotheses: true,
        }
    }

    pub fn new(kind: TwistKind, d: EisensteinInt) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::InvalidTwist("D = 0".into()));
        }
        if EisensteinInt::lambda3().divides(&d) {
            return Err(Error::InvalidTwist(format!("{d} is not prime to 3")));
        }
        let is_rational = d.is_rational();
        let prime_list = if is_rational {
            factor_rational(d.a.unsigned_abs())
        } else {
            factor(&d)?.primes
        };
        match kind {
            TwistKind::Quadratic => {
                if prime_list.iter().any(|(_, e)| *e > 1) {
                    return Err(Error::InvalidTwist(format!("{d} is not squarefree")));
                }
                if !d.congruent_mod(&EisensteinInt::ONE, 4) {
                    return Err(Error::InvalidTwist(format!("{d} is not ≡ 1 mod 4")));
                }
            }
            TwistKind::Cubic => {
                if prime_list.iter().any(|(_, e)| *e > 2) {
                    return Err(Error::InvalidTwist(format!("{d} is not cube-free")));
                }
                if !d.is_primary_pm() {
                    return Err(Error::InvalidTwist(format!("{d} is not ≡ ±1 mod 3")));
                }
            }
        }
        let hypotheses = prime_list.iter().all(|(p, _)| match kind {
            TwistKind::Quadratic => {
                let n = p.rational_norm as u64;
                p.value.b != 0 && is_special_split(n).map_or(false, |c| c.qualifies)
            }
            TwistKind::Cubic => is_cubic_special(&p.value).map_or(false, |c| c.qualifies),
        });
        Ok(TwistSpec { kind, d, prime_list, is_rational, hypotheses })
    }

    /// Parse D in `a+b*w` syntax or as a product of integer powers.
    pub fn parse(kind: TwistKind, d: &str) -> Result<Self> {
        Self::new(kind, parse_twist_parameter(d)?)
    }

    pub fn is_untwisted(&self) -> bool {
        self.d == EisensteinInt::ONE
    }

    /// N(rad D) over K.
    pub fn radical_norm(&self) -> u128 {
        self.prime_list.iter().map(|(p, _)| p.rational_norm as u128).product()
    }

    /// Conductor of E(λ)/Q (or of ψ_λ times d_K) when D ≡ ±1 mod 9: 27·N(rad D).
    pub fn conductor(&self) -> u128 {
        27 * self.radical_norm()
    }

    /// Possible conductors, most likely first. Away from D ≡ ±1 mod 9 the
    /// exponent at 3 can grow; the functional equation decides.
    pub fn conductor_candidates(&self) -> Vec<u128> {
        [27, 243, 81, 9].iter().map(|t| t * self.radical_norm()).collect()
    }

    /// Number of distinct rational primes dividing D.
    pub fn k_rational(&self) -> u32 {
        let mut ps: Vec<i128> = self
            .prime_list
            .iter()
            .map(|(p, _)| if p.value.b == 0 { p.value.a.abs() as i128 } else { p.rational_norm })
            .collect();
        ps.dedup();
        ps.len() as u32
    }

    fn divides_d(&self, pi: &EisensteinInt) -> bool {
        self.prime_list.iter().any(|(p, _)| p.value == *pi)
    }
}

/// Whether D is a square modulo 8·O_K.
fn is_square_mod8(d: &EisensteinInt) -> bool {
    let (da, db) = (d.a.rem_euclid(8), d.b.rem_euclid(8));
    (0..8).any(|u: i64| {
        (0..8).any(|v: i64| (u * u - v * v).rem_euclid(8) == da && (2 * u * v - v * v).rem_euclid(8) == db)
    })
}

/// ζ₆-exponent of χ at a primary prime π coprime to 3D, from Euler's criterion.
fn chi_exponent_at_prime(spec: &TwistSpec, pi: &EisensteinInt) -> Result<u32> {
    if spec.is_untwisted() {
        return Ok(0);
    }
    match spec.kind {
        TwistKind::Quadratic => {
            if *pi == EisensteinInt::rational(-2) {
                Ok(if is_square_mod8(&spec.d) { 0 } else { 3 })
            } else {
                Ok(residue_symbol_prime(&spec.d, pi, 2)?.as_sextic())
            }
        }
        TwistKind::Cubic => {
            let k = residue_symbol_prime(&spec.d, pi, 3)?.exponent;
            Ok((2 * k * CUBIC_SYMBOL_POWER) % 6)
        }
    }
}

/// ψ_λ(𝔭) for a prime 𝔭 coprime to 3D, given by its primary generator.
pub fn psi_twist(spec: &TwistSpec, p: &PrimaryPrime) -> Result<EisensteinInt> {
    let pi = p.value.primary_mod3().ok_or_else(|| Error::BadPrime(format!("{} lies above 3", p.value)))?;
    if spec.divides_d(&pi) || !pi.is_coprime(&spec.d) {
        return Err(Error::BadPrime(format!("{pi} divides D")));
    }
    Ok(EisensteinInt::unit(chi_exponent_at_prime(spec, &pi)? as i64) * pi)
}

/// Trace a + bω ↦ 2a − b.
pub fn trace(z: &EisensteinInt) -> i64 {
    2 * z.a - z.b
}

/// a_p of E(λ)/Q for a rational twist.
pub fn ap_char(spec: &TwistSpec, p: u64) -> Result<i64> {
    if !spec.is_rational {
        return Err(Error::InvalidTwist("a_p needs a rational D".into()));
    }
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if p == 3 || spec.d.a.unsigned_abs() % p == 0 {
        return Err(Error::BadPrime(p.to_string()));
    }
    if p % 3 == 2 {
        return Ok(0);
    }
    let (pi, _) = prime_above_with_root(p);
    Ok(trace(&psi_twist(spec, &PrimaryPrime::from_primary(pi))?))
}

/// Tr ψ_λ(π) for a split prime π of K (works for non-rational D).
pub fn ap_prime(spec: &TwistSpec, pi: &EisensteinInt) -> Result<i64> {
    Ok(trace(&psi_twist(spec, &PrimaryPrime::from_primary(*pi))?))
}

/// −27λ reduced modulo a split prime π of K, as an integer mod p = N(π).
pub fn a6_mod(spec: &TwistSpec, pi: &EisensteinInt) -> Result<(u64, u64)> {
    let n = pi.norm();
    let p = u64::try_from(n).map_err(|_| Error::TooLarge(pi.to_string()))?;
    if !is_prime_u64(p) || p == 3 {
        return Err(Error::BadPrime(format!("{pi} is not a split prime")));
    }
    let (pp, r) = prime_above_with_root(p);
    let r = if pp == pi.primary_mod3().unwrap() { r } else { (p - 1 + p - r) % p };
    let dm = ((spec.d.a as i128 + spec.d.b as i128 * r as i128).rem_euclid(p as i128)) as u64;
    let lam = powmod(dm, spec.kind.exponent() as u64, p);
    Ok(((p - mulmod(27 % p, lam, p)) % p, p))
}

/// p + 1 − #E(F_p) for E: y² = 4x³ + a6, by direct count.
pub fn ap_point_count(a6: i64, p: u64) -> Result<i64> {
    if p < 5 || !is_prime_u64(p) || a6.rem_euclid(p as i64) == 0 {
        return Err(Error::BadReduction(p));
    }
    let pu = p as usize;
    let mut chi = vec![-1i8; pu];
    chi[0] = 0;
    for y in 1..pu {
        chi[(y * y) % pu] = 1;
    }
    let a6 = a6.rem_euclid(p as i64) as u64;
    let mut s: i64 = 0;
    for x in 0..p {
        let v = (mulmod(4, mulmod(x, mulmod(x, x, p), p), p) + a6) % p;
        s += chi[v as usize] as i64;
    }
    Ok(-s)
}

// ---------------------------------------------------------------------------
// Dirichlet coefficients

/// a_n of E(λ)/Q for n < len, rational D only.
pub fn rational_coefficients(spec: &TwistSpec, len: usize) -> Vec<i32> {
    let mut a = vec![0i32; len.max(2)];
    a[1] = 1;
    let n = len;
    let mut spf = vec![0u32; n];
    let mut primes: Vec<u32> = Vec::new();
    for i in 2..n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
        }
        let si = spf[i];
        for &p in &primes {
            if p > si || i * p as usize >= n {
                break;
            }
            spf[i * p as usize] = p;
        }
    }
    drop(primes);
    let d = spec.d.a.unsigned_abs();
    let m = spec.kind.order();
    let ap = |p: u64| -> i32 {
        if p == 3 || d % p == 0 || p % 3 == 2 {
            return 0;
        }
        let (pi, r) = prime_above_with_root(p);
        let e = if spec.is_untwisted() {
            0
        } else {
            let t = powmod(spec.d.a.rem_euclid(p as i64) as u64, (p - 1) / m as u64, p);
            match spec.kind {
                TwistKind::Quadratic => {
                    if t == 1 {
                        0
                    } else {
                        3
                    }
                }
                TwistKind::Cubic => {
                    let k = if t == 1 {
                        0
                    } else if t == r {
                        1
                    } else {
                        2
                    };
                    (2 * k * CUBIC_SYMBOL_POWER) % 6
                }
            }
        };
        trace(&(EisensteinInt::unit(e as i64) * pi)) as i32
    };
    for i in 2..n {
        let p = spf[i] as usize;
        let mut rest = i;
        let mut pe = 1usize;
        while rest % p == 0 {
            rest /= p;
            pe *= p;
        }
        a[i] = if rest > 1 {
            (a[pe] as i64 * a[rest] as i64) as i32
        } else if pe == p {
            ap(p as u64)
        } else {
            let bad = p == 3 || d % p as u64 == 0;
            if bad {
                0
            } else {
                (a[p] as i64 * a[pe / p] as i64 - p as i64 * a[pe / p / p] as i64) as i32
            }
        };
    }
    a.truncate(len);
    a
}

/// Residue symbols modulo one prime of D.
enum PrimeTable {
    Split { q: u64, r: u64, table: Vec<u8> },
    Inert { q: u64, ring: ResidueRing, m: u32, cache: Option<Vec<u8>> },
}

const ZERO_RESIDUE: u8 = u8::MAX;

fn primitive_root(q: u64) -> u64 {
    let fac = num_prime::nt_funcs::factorize64(q - 1);
    (2..q)
        .find(|&g| fac.keys().all(|&f| powmod(g, (q - 1) / f, q) != 1))
        .unwrap_or(1)
}

impl PrimeTable {
    fn new(pi: &EisensteinInt, m: u32) -> Self {
        let n = pi.norm() as u64;
        if pi.b != 0 {
            let q = n;
            let (pp, r0) = prime_above_with_root(q);
            let r = if pp == *pi { r0 } else { (q - 1 + q - r0) % q };
            let g = primitive_root(q);
            // symbol of g: g^((q−1)/m) ≡ ω^k0 (m = 3) or −1 (m = 2)
            let z = powmod(g, (q - 1) / m as u64, q);
            let k0 = if m == 2 {
                1
            } else if z == r {
                1
            } else {
                2
            };
            let mut table = vec![ZERO_RESIDUE; q as usize];
            let mut x = 1u64;
            for i in 0..q - 1 {
                table[x as usize] = ((i * k0) % m as u64) as u8;
                x = mulmod(x, g, q);
            }
            PrimeTable::Split { q, r, table }
        } else {
            let q = pi.a.unsigned_abs();
            let ring = ResidueRing::new(pi);
            let mut t = PrimeTable::Inert { q, ring, m, cache: None };
            if q * q <= 1 << 22 {
                let mut cache = vec![ZERO_RESIDUE; (q * q) as usize];
                for u in 0..q {
                    for v in 0..q {
                        cache[(u * q + v) as usize] = t.inert_symbol(u as i64, v as i64);
                    }
                }
                if let PrimeTable::Inert { cache: c, .. } = &mut t {
                    *c = Some(cache);
                }
            }
            t
        }
    }

    fn inert_symbol(&self, x: i64, y: i64) -> u8 {
        let PrimeTable::Inert { q, ring, m, .. } = self else { unreachable!() };
        let z = EisensteinInt::new(x.rem_euclid(*q as i64), y.rem_euclid(*q as i64));
        if z.is_zero() {
            return ZERO_RESIDUE;
        }
        let e = ((*q as u128) * (*q as u128) - 1) / *m as u128;
        let w = ring.pow(&z, e);
        for k in 0..*m {
            let root = EisensteinInt::unit(((6 / *m) * k) as i64);
            if ring.reduce(&root) == w {
                return k as u8;
            }
        }
        ZERO_RESIDUE
    }

    /// Exponent of (x + yω / π)_m, or ZERO_RESIDUE when π divides it.
    fn symbol(&self, x: i64, y: i64) -> u8 {
        match self {
            PrimeTable::Split { q, r, table } => {
                let q = *q as i128;
                let idx = (x as i128 + y as i128 * *r as i128).rem_euclid(q);
                table[idx as usize]
            }
            PrimeTable::Inert { q, cache: Some(c), .. } => {
                let q = *q as i64;
                c[(x.rem_euclid(q) * q + y.rem_euclid(q)) as usize]
            }
            PrimeTable::Inert { .. } => self.inert_symbol(x, y),
        }
    }
}

/// Coordinates (A_n, B_n) of b_n = Σ_{N(a) = n} conj(ψ_λ((a))) over primary a coprime to 3D.
pub fn hecke_coefficients(spec: &TwistSpec, len: usize) -> (Vec<i32>, Vec<i32>) {
    let CharacterTable { tables, chi2, .. } = CharacterTable::new(spec);
    let mut ca = vec![0i32; len];
    let mut cb = vec![0i32; len];
    let lim = len as i64 - 1;
    let ymax = ((4 * lim) as f64 / 3.0).sqrt() as i64 + 1;
    let mut y = -(ymax - ymax.rem_euclid(3));
    while y <= ymax {
        // x² − xy + y² ≤ lim
        let disc = 4 * lim - 3 * y * y;
        if disc >= 0 {
            let s = (disc as f64).sqrt();
            let lo = ((y as f64 - s) / 2.0).floor() as i64 - 1;
            let hi = ((y as f64 + s) / 2.0).ceil() as i64 + 1;
            let mut x = lo + (1 - lo).rem_euclid(3);
            while x <= hi {
                let n = x * x - x * y + y * y;
                if n >= 1 && n <= lim {
                    if let Some(e) = chi_exponent_enumerated(spec, &tables, chi2, x, y) {
                        let psi = EisensteinInt::unit(e as i64) * EisensteinInt::new(x, y);
                        let c = psi.conj();
                        ca[n as usize] += c.a as i32;
                        cb[n as usize] += c.b as i32;
                    }
                }
                x += 3;
            }
        }
        y += 3;
    }
    (ca, cb)
}

/// The twisting character χ of a spec, evaluated on primary elements by reciprocity.
pub struct CharacterTable {
    spec: TwistSpec,
    tables: Vec<(PrimeTable, u32)>,
    chi2: u32,
}

impl CharacterTable {
    pub fn new(spec: &TwistSpec) -> Self {
        let m = spec.kind.order();
        let tables = spec.prime_list.iter().map(|(p, e)| (PrimeTable::new(&p.value, m), *e)).collect();
        let chi2 = if is_square_mod8(&spec.d) { 0 } else { 1 };
        CharacterTable { spec: spec.clone(), tables, chi2 }
    }

    /// ζ₆-exponent of χ(a) for a ≡ 1 mod 3, or None when a is not prime to D.
    pub fn exponent(&self, a: &EisensteinInt) -> Option<u32> {
        debug_assert!(a.a.rem_euclid(3) == 1 && a.b.rem_euclid(3) == 0);
        chi_exponent_enumerated(&self.spec, &self.tables, self.chi2, a.a, a.b)
    }
}

/// ζ₆-exponent of χ(a) via reciprocity, or None if a is not prime to D.
fn chi_exponent_enumerated(spec: &TwistSpec, tables: &[(PrimeTable, u32)], chi2: u32, x: i64, y: i64) -> Option<u32> {
    match spec.kind {
        TwistKind::Quadratic => {
            let (mut x, mut y, mut k) = (x, y, 0u32);
            while x % 2 == 0 && y % 2 == 0 && (x, y) != (0, 0) {
                x /= 2;
                y /= 2;
                k += 1;
            }
            let mut s = k * chi2;
            for (t, e) in tables {
                let v = t.symbol(x, y);
                if v == ZERO_RESIDUE {
                    return None;
                }
                s += v as u32 * e;
            }
            Some(3 * (s % 2))
        }
        TwistKind::Cubic => {
            let mut s = 0u32;
            for (t, e) in tables {
                let v = t.symbol(x, y);
                if v == ZERO_RESIDUE {
                    return None;
                }
                s += v as u32 * e;
            }
            Some((2 * (s % 3) * CUBIC_SYMBOL_POWER) % 6)
        }
    }
}

// ---------------------------------------------------------------------------
// Smoothed sums

/// How the algebraic value is normalized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// L(E(λ), 1)·λ^{1/6}/Ω with the real sixth root.
    OverQ,
    /// ζ₆^unit·L_S(ψ̄_λ, 1)·λ^{1/6}/Ω with the principal root; the unit is chosen
    /// so the value is a positive rational when one of the six is.
    OverK { unit: u32 },
}

#[derive(Clone, Debug)]
pub struct AlgebraicLValue {
    pub estimate: Complex,
    pub error: f64,
    pub normalization: Normalization,
    pub recognized: Option<KElement>,
    pub vanishes: bool,
    /// L_S(ψ̄_λ, 1)/Ω without any root factor.
    pub raw: Complex,
    pub raw_error: f64,
    pub conductor: u128,
    pub terms: usize,
    pub root_number: (f64, f64),
}

impl AlgebraicLValue {
    pub fn recognized_rational(&self) -> Option<BigRational> {
        self.recognized.as_ref().filter(|k| k.is_rational()).map(|k| k.x.clone())
    }
}

/// Smoothed-sum output: L(1) and supporting data.
struct SmoothedSum {
    l: Complex,
    err: f64,
    w: Complex,
    terms: usize,
}

fn cutoff(n_cond: u128, target: f64) -> (usize, f64) {
    let sq = (n_cond as f64).sqrt();
    let rate = 2.0 * std::f64::consts::PI / sq;
    let q = (-rate).exp();
    // 6·q^{M+1}/(1 − q) ≤ target
    let m = ((6.0 / ((1.0 - q) * target)).ln() / rate).ceil().max(1.0) as usize;
    (m, q)
}

fn tail_div_n(x: f64, m: usize) -> f64 {
    3.0 * x.powf(m as f64 + 1.0) / (1.0 - x)
}

fn tail_plain(x: f64, m: usize) -> f64 {
    3.0 * (m as f64 + 1.0) * x.powf(m as f64 + 1.0) / ((1.0 - x) * (1.0 - x))
}

const T_MAIN: (i64, i64) = (23, 20);
const T_CHECK: (i64, i64) = (13, 10);

fn max_abs(c: &[i32]) -> f64 {
    c.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0) as f64
}

/// L = S + W·S* where S uses (ca, cb) and S* the conjugate coefficients.
fn smoothed(ca: &[i32], cb: Option<&[i32]>, n_cond: u128, m: usize, bits: usize) -> Result<SmoothedSum> {
    let p = bits + GUARD;
    let pi = Real::pi(p);
    let sqrt3 = Real::from_i64(3, p).sqrt();
    let sqrt_n = Real::from_bigint(&BigInt::from(n_cond), p).sqrt();
    let rate = (&pi * 2i64) / &sqrt_n;
    let q = (-&rate).exp();
    let qf = q.to_f64();
    let len_l = (m + 1).min(ca.len());
    let coef_max = max_abs(ca).max(cb.map_or(0.0, max_abs)).max(1.0);

    // S and S* at s = 1
    let (sa, sb, err_s) = {
        let mut arrays: Vec<&[i32]> = vec![&ca[..len_l]];
        if let Some(b) = cb {
            arrays.push(&b[..len_l]);
        }
        let r = power_sums(&q, &arrays, true, bits);
        let err = r.rounding * coef_max + tail_div_n(qf, len_l - 1);
        let sb = if cb.is_some() { r.values[1].clone() } else { Real::zero(p) };
        (r.values[0].clone(), sb, err)
    };
    let half = Real::from_ratio(1, 2, p);
    let combine = |a: &Real, b: &Real, conj: bool| -> Complex {
        // a + bω or a + bω̄
        let re = a - &(b * &half);
        let im = b * &sqrt3 * &half;
        Complex::new(re, if conj { -im } else { im })
    };
    let s = combine(&sa, &sb, false);
    let s_star = combine(&sa, &sb, true);

    // root number from F(1/t) = W·t²·F*(t)
    let theta = |t: (i64, i64)| -> Result<(Complex, f64)> {
        let tr = Real::from_ratio(t.0, t.1, p);
        let x1 = (-(&rate / &tr)).exp();
        let x2 = (-(&rate * &tr)).exp();
        let len = ca.len();
        let mut arrays: Vec<&[i32]> = vec![ca];
        if let Some(b) = cb {
            arrays.push(b);
        }
        let f1 = power_sums(&x1, &arrays, false, bits);
        let f2 = power_sums(&x2, &arrays, false, bits);
        let e1 = f1.rounding * coef_max + tail_plain(x1.to_f64(), len - 1);
        let e2 = f2.rounding * coef_max + tail_plain(x2.to_f64(), len - 1);
        let zero = Real::zero(p);
        let g = |v: &Vec<Real>, conj: bool| combine(&v[0], v.get(1).unwrap_or(&zero), conj);
        let num = g(&f1.values, false);
        let den = g(&f2.values, true).scale(&(&tr * &tr));
        let dabs = den.abs_f64();
        if dabs < 1e-300 {
            return Err(Error::IdentityFailed("theta series vanishes at the test point".into()));
        }
        let w = &num / &den;
        let t2 = (t.0 as f64 / t.1 as f64).powi(2);
        let err = (e1 + w.abs_f64() * t2 * e2) / dabs;
        Ok((w, err))
    };
    let (w, err_w) = theta(T_MAIN)?;
    let (w2, err_w2) = theta(T_CHECK)?;
    let gap = (&w - &w2).abs_f64();
    if gap > 1e3 * (err_w + err_w2) + 1e-12 || (w.abs_f64() - 1.0).abs() > 1e-8 {
        return Err(Error::IdentityFailed(format!(
            "functional equation check failed for conductor {n_cond}: W = {w} vs {w2}"
        )));
    }
    let (w, err_w) = if cb.is_none() {
        // real coefficients: W = ±1 exactly
        let sign = if w.re.is_negative() { -1 } else { 1 };
        (Complex::from_i64(sign, p), 0.0)
    } else {
        (w, err_w)
    };
    let l = &s + &(&w * &s_star);
    let err = err_s * 2.0 + err_w * s_star.abs_f64();
    Ok(SmoothedSum { l, err, w, terms: len_l })
}

/// Try each candidate conductor until the functional equation checks out.
fn smoothed_search(
    spec: &TwistSpec,
    target: f64,
    limit: usize,
    bits: usize,
    coeffs: impl Fn(usize) -> (Vec<i32>, Option<Vec<i32>>),
) -> Result<(SmoothedSum, u128)> {
    let mut last = None;
    for n_cond in spec.conductor_candidates() {
        let (m, _) = cutoff(n_cond, target);
        let len = theta_len(m);
        if len > limit {
            return Err(last.unwrap_or_else(|| Error::TooLarge(format!("{len} coefficients"))));
        }
        let (ca, cb) = coeffs(len);
        match smoothed(&ca, cb.as_deref(), n_cond, m, bits) {
            Ok(sum) => return Ok((sum, n_cond)),
            Err(e @ Error::IdentityFailed(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one candidate"))
}

fn theta_len(m: usize) -> usize {
    ((m + 1) as f64 * T_MAIN.0 as f64 / T_MAIN.1 as f64).ceil() as usize + 16
}

/// L(E(λ), 1)·λ^{1/6}/Ω for rational D, recognized as a rational.
pub fn l_value_rational(spec: &TwistSpec, ctx: &PrecisionContext) -> Result<AlgebraicLValue> {
    l_value_rational_with_bound(spec, ctx, DEFAULT_DENOM_BOUND)
}

pub fn l_value_rational_with_bound(spec: &TwistSpec, ctx: &PrecisionContext, denom_bound: u64) -> Result<AlgebraicLValue> {
    if !spec.is_rational {
        return Err(Error::InvalidTwist(format!("{} is not rational", spec.d)));
    }
    if spec.kind == TwistKind::Quadratic && spec.d.a < 0 {
        return Err(Error::InvalidTwist("quadratic D must be positive over Q".into()));
    }
    let bits = ctx.working_bits;
    let p = bits + GUARD;
    let c = consts(bits);
    let d = spec.d.a.unsigned_abs();
    let j = spec.kind.exponent();
    // λ^{1/6} = D^{j/6}, real and positive
    let root = Real::from_bigint(&BigInt::from(d), p).powf(&Real::from_ratio(j as i64, 6, p));
    let root_f = root.to_f64();
    let target = ctx.target_abs_error * c.omega.to_f64() / (4.0 * root_f);
    let (sum, n_cond) =
        smoothed_search(spec, target, 400_000_000, bits, |len| (rational_coefficients(spec, len), None))?;
    let omega = &c.omega;
    let est = sum.l.scale(&(&root / omega));
    let err = (sum.err * root_f + sum.l.abs_f64() * root_f * c.omega_err / omega.to_f64()) / omega.to_f64();
    let raw = sum.l.scale(&omega.recip());
    let raw_err = sum.err / omega.to_f64();
    finish(est, err, raw, raw_err, Normalization::OverQ, n_cond, &sum, ctx, denom_bound)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    est: Complex,
    err: f64,
    raw: Complex,
    raw_err: f64,
    normalization: Normalization,
    n_cond: u128,
    sum: &SmoothedSum,
    ctx: &PrecisionContext,
    denom_bound: u64,
) -> Result<AlgebraicLValue> {
    let err = err.max(ctx.ulp());
    let vanishes = est.abs_f64() < (100.0 * err).max(1e-15);
    let recognized = if vanishes {
        Some(KElement::zero())
    } else {
        Some(recognize_k_element(&est, err.max(1e-40), denom_bound)?)
    };
    Ok(AlgebraicLValue {
        estimate: est,
        error: err,
        normalization,
        recognized,
        vanishes,
        raw,
        raw_error: raw_err,
        conductor: n_cond,
        terms: sum.terms,
        root_number: sum.w.to_f64(),
    })
}

/// L_S(ψ̄_λ, 1)/Ω with its error, S a set of primes of K.
#[derive(Clone, Debug)]
pub struct HeckeSum {
    pub value: Complex,
    pub error: f64,
    /// Primitive L(ψ̄_λ, 1)/Ω.
    pub primitive: Complex,
    pub euler: KElement,
    pub conductor: u128,
    pub terms: usize,
    pub root_number: (f64, f64),
}

/// Π_{π ∈ S, π ∤ 3D} (1 − ψ̄_λ(π)/N(π)).
pub fn euler_factor(spec: &TwistSpec, s: &[EisensteinInt]) -> Result<KElement> {
    let mut f = KElement::one();
    let mut seen: Vec<EisensteinInt> = Vec::new();
    for pi in s {
        let Some(pi) = pi.primary_mod3() else { continue };
        if seen.contains(&pi) || spec.divides_d(&pi) || !pi.is_coprime(&spec.d) {
            continue;
        }
        seen.push(pi);
        let psi = psi_twist(spec, &PrimaryPrime::from_primary(pi))?;
        let n = BigRational::from_integer(BigInt::from(pi.norm()));
        let term = &KElement::from(psi.conj()) / &KElement::rational(n);
        f = &f * &(&KElement::one() - &term);
    }
    Ok(f)
}

/// The S-imprimitive value L_S(ψ̄_λ, 1)/Ω by the Hecke ideal sum.
pub fn hecke_l_series(spec: &TwistSpec, s: &[EisensteinInt], ctx: &PrecisionContext) -> Result<HeckeSum> {
    let bits = ctx.working_bits;
    let p = bits + GUARD;
    let c = consts(bits);
    let euler = euler_factor(spec, s)?;
    let root_abs = (spec.d.norm() as f64).powf(spec.kind.exponent() as f64 / 12.0);
    let target = ctx.target_abs_error * c.omega.to_f64() / (4.0 * root_abs.max(1.0));
    let (sum, n_cond) = smoothed_search(spec, target, 200_000_000, bits, |len| {
        let (ca, cb) = hecke_coefficients(spec, len);
        (ca, Some(cb))
    })?;
    let omega = &c.omega;
    let of = omega.to_f64();
    let primitive = sum.l.scale(&omega.recip());
    let prim_err = sum.err / of + sum.l.abs_f64() * c.omega_err / (of * of);
    let ef = euler.to_complex(p);
    let value = &primitive * &ef;
    let error = prim_err * ef.abs_f64();
    Ok(HeckeSum {
        value,
        error,
        primitive,
        euler,
        conductor: n_cond,
        terms: sum.terms,
        root_number: sum.w.to_f64(),
    })
}

/// ζ₆^k·L_S(ψ̄_λ, 1)·λ^{1/6}/Ω, recognized in K.
pub fn hecke_l_value(spec: &TwistSpec, s: &[EisensteinInt], ctx: &PrecisionContext) -> Result<AlgebraicLValue> {
    hecke_l_value_with_bound(spec, s, ctx, DEFAULT_DENOM_BOUND)
}

pub fn hecke_l_value_with_bound(
    spec: &TwistSpec,
    s: &[EisensteinInt],
    ctx: &PrecisionContext,
    denom_bound: u64,
) -> Result<AlgebraicLValue> {
    let h = hecke_l_series(spec, s, ctx)?;
    let p = ctx.working_bits + GUARD;
    let d = Complex::from_eisenstein(spec.d.a, spec.d.b, p);
    let root = match spec.kind {
        TwistKind::Quadratic => d.root(2),
        TwistKind::Cubic => d.root(3),
    };
    let root_abs = root.abs_f64();
    let base = &h.value * &root;
    let err = h.error * root_abs;
    // pick the sixth root of unity making the value a positive rational, if any
    let mut unit = 0u32;
    for k in 0..6u32 {
        let u = EisensteinInt::unit(k as i64);
        let cand = &base * &Complex::from_eisenstein(u.a, u.b, p);
        if cand.im.abs().to_f64() <= 10.0 * err + 1e-30 && !cand.re.is_negative() && cand.re.to_f64() > 10.0 * err {
            unit = k;
            break;
        }
    }
    let u = EisensteinInt::unit(unit as i64);
    let est = &base * &Complex::from_eisenstein(u.a, u.b, p);
    let sum = SmoothedSum { l: Complex::zero(p), err: 0.0, w: Complex::zero(p), terms: h.terms };
    let mut out = finish(est, err, h.value.clone(), h.error, Normalization::OverK { unit }, h.conductor, &sum, ctx, denom_bound)?;
    out.root_number = h.root_number;
    Ok(out)
}
