//! Fixed-point kernel for Σ cₙ xⁿ (optionally divided by n) with integer cₙ.
//!
//! The inner loop of every L-value is a power series with millions of small
//! integer coefficients. Values xⁿ ∈ (0, 1) are kept as L-limb integers scaled
//! by 2^(64L), which is far cheaper than a general float per term.

use crate::mp::Real;
use num_bigint::{BigInt, Sign};

#[derive(Clone, Debug)]
struct Fixed {
    limbs: Vec<u64>,
}

fn mul_trunc(a: &[u64], b: &[u64], out: &mut [u64], scratch: &mut [u64]) {
    let l = a.len();
    scratch.iter_mut().for_each(|w| *w = 0);
    for i in 0..l {
        let mut carry: u128 = 0;
        let ai = a[i] as u128;
        for j in 0..l {
            let cur = scratch[i + j] as u128 + ai * b[j] as u128 + carry;
            scratch[i + j] = cur as u64;
            carry = cur >> 64;
        }
        scratch[i + l] = carry as u64;
    }
    out.copy_from_slice(&scratch[l..2 * l]);
}

/// acc += x·c/d for x < 1, unsigned c, d; acc has l + 2 limbs.
fn add_scaled(acc: &mut [u64], x: &[u64], c: u64, d: u64, tmp: &mut [u64]) {
    let l = x.len();
    let mut carry: u128 = 0;
    for i in 0..l {
        let cur = x[i] as u128 * c as u128 + carry;
        tmp[i] = cur as u64;
        carry = cur >> 64;
    }
    tmp[l] = carry as u64;
    if d != 1 {
        let mut rem: u128 = 0;
        for i in (0..=l).rev() {
            let cur = (rem << 64) | tmp[i] as u128;
            tmp[i] = (cur / d as u128) as u64;
            rem = cur % d as u128;
        }
    }
    let mut carry = 0u64;
    for i in 0..acc.len() {
        let t = if i <= l { tmp[i] } else { 0 };
        let (s1, o1) = acc[i].overflowing_add(t);
        let (s2, o2) = s1.overflowing_add(carry);
        acc[i] = s2;
        carry = (o1 as u64) + (o2 as u64);
    }
}

fn limbs_to_bigint(l: &[u64]) -> BigInt {
    let mut bytes = Vec::with_capacity(l.len() * 8);
    for w in l {
        bytes.extend_from_slice(&w.to_le_bytes());
    }
    BigInt::from_bytes_le(Sign::Plus, &bytes)
}

impl Fixed {
    fn from_real(x: &Real, l: usize) -> Fixed {
        let scaled = x * &Real::from_i64(2, x.prec().max(64 * l + 64)).powi(64 * l as i64);
        let n = scaled.trunc_bigint();
        let (_, mut d) = n.to_u64_digits();
        d.resize(l, 0);
        Fixed { limbs: d }
    }
}

/// Number of limbs for a working precision.
pub fn limbs_for(bits: usize) -> usize {
    (bits + 64 + 63) / 64
}

/// Result of a batch of power sums sharing the same x.
pub struct PowerSums {
    pub values: Vec<Real>,
    /// Absolute rounding bound, per unit of max |cₙ|.
    pub rounding: f64,
}

/// For each coefficient array c, compute Σ_{n=1}^{len−1} c[n]·xⁿ / n^{div}, div ∈ {0, 1}.
/// Requires 0 < x < 1.
pub fn power_sums(x: &Real, coeffs: &[&[i32]], divide_by_n: bool, bits: usize) -> PowerSums {
    let l = limbs_for(bits);
    let m = coeffs.iter().map(|c| c.len()).max().unwrap_or(0);
    let q = Fixed::from_real(x, l);
    let mut pow = q.limbs.clone();
    let mut next = vec![0u64; l];
    let mut scratch = vec![0u64; 2 * l];
    let mut tmp = vec![0u64; l + 1];
    let k = coeffs.len();
    let mut pos = vec![vec![0u64; l + 2]; k];
    let mut neg = vec![vec![0u64; l + 2]; k];
    for n in 1..m {
        if n > 1 {
            mul_trunc(&pow, &q.limbs, &mut next, &mut scratch);
            std::mem::swap(&mut pow, &mut next);
            if pow.iter().all(|&w| w == 0) {
                break;
            }
        }
        let d = if divide_by_n { n as u64 } else { 1 };
        for (i, c) in coeffs.iter().enumerate() {
            if n >= c.len() {
                continue;
            }
            let v = c[n];
            if v > 0 {
                add_scaled(&mut pos[i], &pow, v as u64, d, &mut tmp);
            } else if v < 0 {
                add_scaled(&mut neg[i], &pow, (-(v as i64)) as u64, d, &mut tmp);
            }
        }
    }
    let p = bits + 32;
    let scale = Real::from_i64(2, p).powi(64 * l as i64);
    let values = (0..k)
        .map(|i| Real::from_bigint(&(limbs_to_bigint(&pos[i]) - limbs_to_bigint(&neg[i])), p) / &scale)
        .collect();
    // xⁿ carries at most n ulps; each term at most 2 more
    let ulp = 2f64.powi(-64 * l as i32);
    let rounding = ulp * (m as f64) * (m as f64 + 3.0);
    PowerSums { values, rounding }
}
