//! Local data of E(λ): y² = x³ − 2⁴3³λ over Q, and the p-part of the BSD formula.

use crate::eisenstein::is_prime_u64;
use crate::error::{Error, Result};
use crate::kelement::ord_rational;
use crate::lseries::{l_value_rational, TwistKind, TwistSpec};
use crate::mp::PrecisionContext;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Kodaira {
    #[serde(rename = "I0*")]
    I0Star,
    #[serde(rename = "IV")]
    IV,
    #[serde(rename = "IV*")]
    IVStar,
    #[serde(rename = "III*")]
    IIIStar,
    #[serde(rename = "II*")]
    IIStar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalData {
    pub q: u64,
    pub kodaira: Kodaira,
    pub c_q: u32,
    pub method: String,
}

/// a₆ = −2⁴3³λ of the model y² = x³ + a₆.
pub fn model_a6(spec: &TwistSpec) -> Result<BigInt> {
    if !spec.is_rational {
        return Err(Error::InvalidTwist(format!("{} is not rational", spec.d)));
    }
    let d = BigInt::from(spec.d.a);
    Ok(-BigInt::from(432) * d.pow(spec.kind.exponent()))
}

fn ord_big(n: &BigInt, q: u64) -> u32 {
    let q = BigInt::from(q);
    let mut n = n.clone();
    let mut k = 0;
    while !n.is_zero() && (&n % &q).is_zero() {
        n /= &q;
        k += 1;
    }
    k
}

fn residue(n: &BigInt, q: u64) -> u64 {
    n.mod_floor(&BigInt::from(q)).to_u64().unwrap()
}

/// Roots of T³ + c in F_q.
fn cubic_roots(c: u64, q: u64) -> u32 {
    (0..q).filter(|t| (t * t % q * t + c) % q == 0).count() as u32
}

/// Whether Y² = c has a solution in F_q with c ≠ 0.
fn is_square(c: u64, q: u64) -> bool {
    (0..q).any(|y| y * y % q == c % q)
}

/// Tamagawa number at a bad prime q ∈ {3} ∪ {q | D}.
pub fn tamagawa(spec: &TwistSpec, q: u64) -> Result<LocalData> {
    let a6 = model_a6(spec)?;
    let d = spec.d.a.unsigned_abs();
    if !is_prime_u64(q) || (q != 3 && d % q != 0) {
        return Err(Error::GoodReduction(q));
    }
    if q == 2 {
        return Err(Error::Unsupported("local data at 2".into()));
    }
    if q == 3 {
        return tamagawa_at_3(&a6);
    }
    let v = ord_big(&a6, q);
    let qq = BigInt::from(q);
    match v {
        3 => {
            // I0*: c = 1 + #roots of T³ + a₆/q³
            let c = residue(&(&a6 / qq.pow(3)), q);
            let roots = cubic_roots(c, q);
            Ok(LocalData { q, kodaira: Kodaira::I0Star, c_q: 1 + roots, method: format!("T^3 + a6/q^3 has {roots} roots mod q") })
        }
        2 | 4 => {
            // IV (v = 2) or IV* (v = 4): c = 3 when Y² = a₆/q^v splits
            let split = is_square(residue(&(&a6 / qq.pow(v)), q), q);
            let kodaira = if v == 2 { Kodaira::IV } else { Kodaira::IVStar };
            Ok(LocalData {
                q,
                kodaira,
                c_q: if split { 3 } else { 1 },
                method: format!("Y^2 - a6/q^{v} {} mod q", if split { "splits" } else { "is irreducible" }),
            })
        }
        _ => Err(Error::BadReduction(q)),
    }
}

/// At 3 the cubic T³ + a₆/27 has a triple root r; move it to 0 with x = X + 3r and
/// read the type off Y² − a₆′/3⁴.
fn tamagawa_at_3(a6: &BigInt) -> Result<LocalData> {
    let v = ord_big(a6, 3);
    if v != 3 {
        return Err(Error::BadReduction(3));
    }
    let c = residue(&(a6 / 27), 3);
    // t³ ≡ t on F₃, so the triple root is r ≡ −c
    let r = BigInt::from((3 - c) % 3);
    let shift = BigInt::from(3) * &r;
    let a6p = shift.pow(3) + a6;
    if ord_big(&a6p, 3) != 4 {
        // double root: III* when 3⁴ ∤ a₄′, else II* when 3⁶ ∤ a₆′
        let a4p = BigInt::from(3) * shift.pow(2);
        let (kodaira, c_q) = if !a4p.is_zero() && ord_big(&a4p, 3) < 4 {
            (Kodaira::IIIStar, 2)
        } else if ord_big(&a6p, 3) < 6 {
            (Kodaira::IIStar, 1)
        } else {
            return Err(Error::BadReduction(3));
        };
        return Ok(LocalData { q: 3, kodaira, c_q, method: "Y^2 - a6'/81 has a double root".into() });
    }
    let e = residue(&(&a6p / 81), 3);
    let split = is_square(e, 3);
    Ok(LocalData {
        q: 3,
        kodaira: Kodaira::IVStar,
        c_q: if split { 3 } else { 1 },
        method: format!("after x = X + {shift}, Y^2 - a6'/81 {} mod 3", if split { "splits" } else { "is irreducible" }),
    })
}

fn perfect_power(n: &BigInt, k: u32) -> Option<BigInt> {
    let r = if n.is_negative() {
        if k % 2 == 0 {
            return None;
        }
        -((-n).nth_root(k))
    } else {
        n.nth_root(k)
    };
    (r.pow(k) == *n).then_some(r)
}

/// #E(λ)(Q)_tors for the Mordell curve y² = x³ + k, k = −432λ: rational points of
/// order 2 are roots of x³ = −k, and points of order 3 have x = 0 (k a square) or
/// k = −432m⁶.
pub fn torsion_order(spec: &TwistSpec) -> Result<u32> {
    let k = model_a6(spec)?;
    let mut order = 1;
    if perfect_power(&-&k, 3).is_some() {
        order *= 2;
    }
    let mut three = 1;
    if perfect_power(&k, 2).is_some() {
        three += 2;
    }
    if (&k % BigInt::from(432)).is_zero() && perfect_power(&(-&k / BigInt::from(432)), 6).is_some() {
        three += 2;
    }
    Ok(order * three)
}

#[derive(Clone, Debug, Serialize)]
pub struct BsdReport {
    pub p: u64,
    pub l_alg: BigRational,
    pub ord_l: Rational64,
    pub tamagawa: Vec<LocalData>,
    pub torsion: u32,
    pub ord_rhs_local: Rational64,
    pub predicted_sha_ord: Rational64,
    pub bound: Rational64,
    pub tight: bool,
    /// Set when the predicted Sha valuation is negative.
    pub warning: Option<String>,
}

/// Bad primes of E(λ): 3 and the primes of D.
pub fn bad_primes(spec: &TwistSpec) -> Vec<u64> {
    let mut out = vec![3];
    let d = spec.d.a.unsigned_abs();
    if d > 1 {
        out.extend(num_prime::nt_funcs::factorize64(d).keys().copied());
    }
    out.sort_unstable();
    out
}

/// Σ ord_p(c_q) − 2·ord_p(#tors).
pub fn local_valuation(spec: &TwistSpec, p: u64) -> Result<(Vec<LocalData>, u32, i64)> {
    let tam: Vec<LocalData> = bad_primes(spec).into_iter().map(|q| tamagawa(spec, q)).collect::<Result<_>>()?;
    let tors = torsion_order(spec)?;
    let ord = |n: u64| ord_rational(&BigRational::from_integer(BigInt::from(n)), p);
    let s: i64 = tam.iter().map(|l| ord(l.c_q as u64)).sum::<i64>() - 2 * ord(tors as u64);
    Ok((tam, tors, s))
}

pub fn bsd_report(spec: &TwistSpec, p: u64, ctx: &PrecisionContext) -> Result<BsdReport> {
    if p != 2 && p != 3 {
        return Err(Error::BadPrime(p.to_string()));
    }
    let v = l_value_rational(spec, ctx)?;
    if v.vanishes {
        return Err(Error::VanishingLValue);
    }
    let l_alg = v.recognized_rational().ok_or_else(|| Error::RecognitionFailed("L-value is not rational".into()))?;
    bsd_report_from_value(spec, p, l_alg)
}

/// The report for a known algebraic L-value.
pub fn bsd_report_from_value(spec: &TwistSpec, p: u64, l_alg: BigRational) -> Result<BsdReport> {
    if l_alg.is_zero() {
        return Err(Error::VanishingLValue);
    }
    let ord_l = Rational64::from_integer(ord_rational(&l_alg, p));
    let (tamagawa, torsion, local) = local_valuation(spec, p)?;
    let ord_rhs_local = Rational64::from_integer(local);
    let predicted = ord_l - ord_rhs_local;
    let k = spec.k_rational() as i64;
    let bound = Rational64::from_integer(match spec.kind {
        TwistKind::Quadratic => 2 * k,
        TwistKind::Cubic => k + 1,
    });
    let warning = (predicted < Rational64::zero()).then(|| format!("negative predicted Sha valuation {predicted}"));
    Ok(BsdReport {
        p,
        l_alg,
        ord_l,
        tamagawa,
        torsion,
        ord_rhs_local,
        predicted_sha_ord: predicted,
        bound,
        tight: ord_l == bound,
        warning,
    })
}
