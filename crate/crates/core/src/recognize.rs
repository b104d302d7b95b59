//! Exact recognition of rationals and elements of K from high-precision values.

use crate::error::{Error, Result};
use crate::kelement::KElement;
use crate::mp::{Complex, Real};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The unique p/q with q ≤ bound and |x − p/q| ≤ err, found among the
/// continued-fraction convergents of x. Uniqueness needs err < 1/(4·bound²).
pub fn recognize_rational(x: &Real, err: f64, bound: u64) -> Option<BigRational> {
    let p = x.prec();
    let bound = BigInt::from(bound);
    let (mut h1, mut h2) = (BigInt::one(), BigInt::zero());
    let (mut k1, mut k2) = (BigInt::zero(), BigInt::one());
    let mut v = x.clone();
    for _ in 0..400 {
        let a = v.floor_bigint();
        let h = &a * &h1 + &h2;
        let k = &a * &k1 + &k2;
        if k > bound {
            return None;
        }
        let cand = BigRational::new(h.clone(), k.clone());
        let diff = (x - &Real::from_bigrational(&cand, p)).abs().to_f64();
        if diff <= err {
            return Some(cand);
        }
        let frac = &v - &Real::from_bigint(&a, p);
        if frac.is_zero() || frac.abs().to_f64() < 1e-300 {
            return None;
        }
        v = frac.recip();
        (h2, h1) = (h1, h);
        (k2, k1) = (k1, k);
    }
    None
}

/// x + y√−3 with denominators ≤ bound, matching z within err.
pub fn recognize_k_element(z: &Complex, err: f64, bound: u64) -> Result<KElement> {
    let b = bound as f64;
    if !(err < 1.0 / (4.0 * b * b)) {
        return Err(Error::RecognitionFailed(format!(
            "error {err:.3e} too large for denominator bound {bound}"
        )));
    }
    let p = z.prec();
    let y = &z.im / &Real::from_i64(3, p).sqrt();
    let fail = || Error::RecognitionFailed(format!("no small-denominator value near {z}"));
    let xr = recognize_rational(&z.re, err, bound).ok_or_else(fail)?;
    let yr = recognize_rational(&y, err, bound).ok_or_else(fail)?;
    Ok(KElement::new(xr, yr))
}

/// Signed distance of a rational from an f64 estimate, for reporting.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    let n = q.numer().to_f64().unwrap_or(f64::NAN);
    let d = q.denom().to_f64().unwrap_or(f64::NAN);
    if q.is_negative() {
        -(n.abs() / d)
    } else {
        n / d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thirds_and_integers() {
        let p = 160;
        let third = Real::from_ratio(1, 3, p);
        assert_eq!(recognize_rational(&third, 1e-20, 1000), Some(BigRational::new(1.into(), 3.into())));
        let twelve = Real::from_i64(12, p) + Real::from_f64(1e-30, p);
        assert_eq!(recognize_rational(&twelve, 1e-20, 1000), Some(BigRational::from_integer(12.into())));
        let neg = Real::from_ratio(-289, 27, p);
        assert_eq!(recognize_rational(&neg, 1e-20, 1000), Some(BigRational::new((-289).into(), 27.into())));
        let z = Complex::new(Real::from_f64(0.5, p), Real::zero(p));
        assert!(recognize_k_element(&z, 1e-3, 1000).is_err());
        let z = KElement::from_ratios(3, 16, -3, 16).to_complex(p);
        assert_eq!(recognize_k_element(&z, 1e-25, 1000).unwrap(), KElement::from_ratios(3, 16, -3, 16));
    }
}
