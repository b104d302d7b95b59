//! Special split and cubic-special primes.

use crate::eisenstein::{
    is_prime, is_prime_u64, multiplicative_order, prime_above, EisensteinInt,
};
use crate::error::{Error, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeKind {
    SpecialSplit,
    CubicSpecial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum PrimeRef {
    Rational(u64),
    Element(EisensteinInt),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Witness {
    /// p is inert (or ramified) in K.
    NotSplit,
    /// Mod-3 primary generators of both primes above p and their residues mod 4.
    Split { generators: [EisensteinInt; 2], residues_mod4: [EisensteinInt; 2] },
    /// Primary generator, its residue mod 27 and the order of 1 − ω mod π.
    Cubic { primary: EisensteinInt, residue_mod27: EisensteinInt, order_lambda: Option<u64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifiedPrime {
    pub prime: PrimeRef,
    pub norm: u64,
    pub kind: PrimeKind,
    pub qualifies: bool,
    pub witness: Witness,
}

fn reduce_mod(z: &EisensteinInt, n: i64) -> EisensteinInt {
    EisensteinInt::new(z.a.rem_euclid(n), z.b.rem_euclid(n))
}

fn is_pm1_mod4(z: &EisensteinInt) -> bool {
    z.congruent_mod(&EisensteinInt::ONE, 4) || z.congruent_mod(&-EisensteinInt::ONE, 4)
}

/// p splits in K and both primary generators above p are ≡ ±1 mod 4.
pub fn is_special_split(p: u64) -> Result<ClassifiedPrime> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let mut out = ClassifiedPrime {
        prime: PrimeRef::Rational(p),
        norm: p,
        kind: PrimeKind::SpecialSplit,
        qualifies: false,
        witness: Witness::NotSplit,
    };
    if p % 3 != 1 {
        return Ok(out);
    }
    let pi = prime_above(p);
    let pib = pi.conj().primary_mod3().expect("coprime to 3");
    out.qualifies = is_pm1_mod4(&pi) && is_pm1_mod4(&pib);
    out.witness = Witness::Split {
        generators: [pi, pib],
        residues_mod4: [reduce_mod(&pi, 4), reduce_mod(&pib, 4)],
    };
    Ok(out)
}

/// π ≡ 1 mod 27 (for its primary associate) and 9 divides the order of 1 − ω mod π.
pub fn is_cubic_special(pi: &EisensteinInt) -> Result<ClassifiedPrime> {
    if !is_prime(pi) {
        return Err(Error::NotPrime(pi.to_string()));
    }
    let primary = pi
        .primary_mod3()
        .ok_or_else(|| Error::NoPrimaryAssociate(format!("{pi} lies above 3")))?;
    let norm = primary.norm() as u64;
    let congruent = primary.congruent_mod(&EisensteinInt::ONE, 27);
    let order_lambda = if congruent {
        Some(multiplicative_order(&EisensteinInt::lambda3(), &primary)?)
    } else {
        None
    };
    Ok(ClassifiedPrime {
        prime: PrimeRef::Element(primary),
        norm,
        kind: PrimeKind::CubicSpecial,
        qualifies: congruent && order_lambda.map_or(false, |o| o % 9 == 0),
        witness: Witness::Cubic { primary, residue_mod27: reduce_mod(&primary, 27), order_lambda },
    })
}

/// Primary primes of K with norm ≤ bound, sorted by (norm, a, b).
pub fn primary_primes_up_to(bound: u64) -> Vec<EisensteinInt> {
    let mut out = Vec::new();
    for p in primal::Primes::all().take_while(|&p| p as u64 <= bound) {
        let p = p as u64;
        match p % 3 {
            0 => {}
            1 => {
                let pi = prime_above(p);
                out.push(pi);
                out.push(pi.conj().primary_mod3().unwrap());
            }
            _ => {
                if p.checked_mul(p).map_or(false, |n| n <= bound) {
                    out.push(EisensteinInt::rational(-(p as i64)));
                }
            }
        }
    }
    out.sort_by_key(|z| (z.norm(), *z));
    out
}

/// All qualifying primes with norm ≤ bound. Special split primes are rational;
/// cubic-special primes are primary elements of K.
pub fn enumerate_classified(bound: u64, kind: PrimeKind) -> Vec<ClassifiedPrime> {
    match kind {
        PrimeKind::SpecialSplit => primal::Primes::all()
            .take_while(|&p| p as u64 <= bound)
            .filter(|&p| p > 3)
            .filter_map(|p| is_special_split(p as u64).ok())
            .filter(|c| c.qualifies)
            .collect(),
        PrimeKind::CubicSpecial => primary_primes_up_to(bound)
            .iter()
            .filter(|pi| pi.congruent_mod(&EisensteinInt::ONE, 27))
            .filter_map(|pi| is_cubic_special(pi).ok())
            .filter(|c| c.qualifies)
            .collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Density {
    pub cubic_special: u64,
    pub congruent: u64,
}

impl Density {
    pub fn frequency(&self) -> Option<f64> {
        (self.congruent > 0).then(|| self.cubic_special as f64 / self.congruent as f64)
    }
}

/// Counts among primary primes ≡ 1 mod 27 of norm ≤ bound.
pub fn density_estimate(bound: u64) -> Density {
    let mut d = Density { cubic_special: 0, congruent: 0 };
    for pi in primary_primes_up_to(bound) {
        if pi.congruent_mod(&EisensteinInt::ONE, 27) {
            d.congruent += 1;
            if is_cubic_special(&pi).map_or(false, |c| c.qualifies) {
                d.cubic_special += 1;
            }
        }
    }
    d
}
