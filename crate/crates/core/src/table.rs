//! Rows of L-value tables: evaluation, valuations and BSD predictions per row.

use crate::bsd::bsd_report_from_value;
use crate::classifier::{enumerate_classified, PrimeKind, PrimeRef, Witness};
use crate::eisenstein::EisensteinInt;
use crate::error::{Error, Result};
use crate::kelement::ord_rational;
use crate::lseries::{
    hecke_l_value_with_bound, l_value_rational_with_bound, parse_twist_parameter, TwistKind, TwistSpec, DEFAULT_DENOM_BOUND,
};
use crate::mp::PrecisionContext;
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// Field the stored value is normalized over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Over {
    /// L(E(λ)/Q, 1)·D^{j/6}/Ω.
    Q,
    /// The norm of L(ψ̄_λ, 1)·D^{j/6}/Ω from K to Q.
    K,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableRow {
    pub kind: TwistKind,
    /// Generator with D = N(π), when the row gives one.
    pub pi: Option<String>,
    pub d: String,
    pub l_alg: i64,
    pub over: Over,
}

#[derive(Clone, Debug, Serialize)]
pub struct RowResult {
    pub kind: TwistKind,
    pub pi: String,
    pub d: String,
    pub expected: Option<i64>,
    pub l_alg: Option<BigRational>,
    pub matches: Option<bool>,
    pub p: u64,
    pub ord_p: Option<i64>,
    pub bound: i64,
    pub tight: Option<bool>,
    pub predicted_sha: Option<Rational64>,
    pub conductor: u128,
    pub seconds: f64,
    pub error: Option<String>,
}

impl RowResult {
    fn failed(row: &TableRow, p: u64, e: String) -> Self {
        RowResult {
            kind: row.kind,
            pi: row.pi.clone().unwrap_or_default(),
            d: row.d.clone(),
            expected: Some(row.l_alg),
            l_alg: None,
            matches: Some(false),
            p,
            ord_p: None,
            bound: 0,
            tight: None,
            predicted_sha: None,
            conductor: 0,
            seconds: 0.0,
            error: Some(e),
        }
    }
}

/// The prime the valuation theorems concern: 2 for quadratic, 3 for cubic twists.
pub fn theorem_prime(kind: TwistKind) -> u64 {
    match kind {
        TwistKind::Quadratic => 2,
        TwistKind::Cubic => 3,
    }
}

/// 2k(D) for quadratic, k(D) + 1 for cubic twists.
pub fn valuation_bound(spec: &TwistSpec) -> i64 {
    let k = spec.k_rational() as i64;
    match spec.kind {
        TwistKind::Quadratic => 2 * k,
        TwistKind::Cubic => k + 1,
    }
}

fn unrecognized() -> Error {
    Error::RecognitionFailed("L-value not recognized".into())
}

fn compute(row: &TableRow, ctx: &PrecisionContext, bound: u64) -> Result<(TwistSpec, BigRational, u128)> {
    let spec = TwistSpec::new(row.kind, parse_twist_parameter(&row.d)?)?;
    let (value, conductor) = match row.over {
        Over::Q => {
            let v = l_value_rational_with_bound(&spec, ctx, bound)?;
            let x = if v.vanishes { BigRational::zero() } else { v.recognized_rational().ok_or_else(unrecognized)? };
            (x, v.conductor)
        }
        Over::K => {
            let v = hecke_l_value_with_bound(&spec, &[], ctx, bound)?;
            let x = if v.vanishes { BigRational::zero() } else { v.recognized.map(|k| k.norm()).ok_or_else(unrecognized)? };
            (x, v.conductor)
        }
    };
    Ok((spec, value, conductor))
}

pub fn evaluate_row(row: &TableRow, ctx: &PrecisionContext) -> RowResult {
    evaluate_row_with_bound(row, ctx, DEFAULT_DENOM_BOUND)
}

/// As [`evaluate_row`] with an explicit denominator bound for recognition.
pub fn evaluate_row_with_bound(row: &TableRow, ctx: &PrecisionContext, denom_bound: u64) -> RowResult {
    let start = Instant::now();
    let p = theorem_prime(row.kind);
    let (spec, value, conductor) = match compute(row, ctx, denom_bound) {
        Ok(v) => v,
        Err(e) => return RowResult::failed(row, p, e.to_string()),
    };
    let nonzero = !value.is_zero();
    let ord_p = nonzero.then(|| ord_rational(&value, p));
    let bound = valuation_bound(&spec);
    let predicted_sha = if nonzero && row.over == Over::Q {
        bsd_report_from_value(&spec, p, value.clone()).ok().map(|r| r.predicted_sha_ord)
    } else {
        None
    };
    RowResult {
        kind: row.kind,
        pi: row.pi.clone().unwrap_or_default(),
        d: row.d.clone(),
        expected: Some(row.l_alg),
        matches: Some(value == BigRational::from_integer(BigInt::from(row.l_alg))),
        l_alg: Some(value),
        p,
        ord_p,
        bound,
        tight: ord_p.map(|o| o == bound),
        predicted_sha,
        conductor,
        seconds: start.elapsed().as_secs_f64(),
        error: None,
    }
}

/// Unvalued rows over the qualifying primes up to the bound: special split D for
/// quadratic twists, D = N(π) for cubic-special π for cubic twists.
pub fn range_rows(kind: TwistKind, bound: u64) -> Vec<TableRow> {
    let pk = match kind {
        TwistKind::Quadratic => PrimeKind::SpecialSplit,
        TwistKind::Cubic => PrimeKind::CubicSpecial,
    };
    let mut rows: Vec<TableRow> = enumerate_classified(bound, pk)
        .into_iter()
        .filter(|c| c.qualifies)
        .map(|c| {
            let pi = match (&c.prime, &c.witness) {
                (PrimeRef::Element(z), _) => Some(z.to_string()),
                (_, Witness::Split { generators, .. }) => Some(generators[0].to_string()),
                _ => None,
            };
            TableRow { kind, pi, d: c.norm.to_string(), l_alg: 0, over: Over::Q }
        })
        .collect();
    // both primes above a split D qualify together; keep one row per D
    rows.dedup_by(|a, b| a.d == b.d);
    rows
}

/// Evaluates a row with no stored value.
pub fn evaluate_unstored(row: &TableRow, ctx: &PrecisionContext) -> RowResult {
    let mut r = evaluate_row(row, ctx);
    r.expected = None;
    r.matches = None;
    r
}

/// D = N(π) for rows that list π.
pub fn generator_consistent(row: &TableRow) -> Result<bool> {
    let Some(pi) = &row.pi else { return Ok(true) };
    let pi: EisensteinInt = pi.parse()?;
    let d = parse_twist_parameter(&row.d)?;
    Ok(d.b == 0 && pi.norm() == d.a as i128)
}
