//! Averaged sums Φ over the twists D_α = ∏ π_j^{α_j} of a squarefree D, by two routes:
//! Hecke L-values, and Eisenstein values at D-division points.
//!
//! With m = 2 (λ = D³) or m = 3 (λ = D²) and a character χ of (Z/m)ⁿ,
//! Φ^(χ) = Σ_α χ(α)·L_S(ψ̄_{D_α^j}, 1)/Ω, S the primes of D. Grouping the ideal sums by
//! residue classes gives Φ^(χ) = ε·mⁿ/(3D)·Σ_{c ∈ V^(χ)} E₁*(cΩ/D + Ω/3) with ε ≡ D mod 3,
//! and E₁*(z + Ω/3) + E₁*(−z + Ω/3) = 2 − 9/(3 − ℘(z)).

use crate::analytic::{eisenstein_e1star, wp_only, LatticePoint};
use crate::eisenstein::{factor, is_prime, primary_associate, Convention, EisensteinInt, ResidueRing};
use crate::error::{Error, Result};
use crate::kelement::KElement;
use crate::lseries::{hecke_l_series, CharacterTable, TwistKind, TwistSpec};
use crate::mp::{Complex, PrecisionContext, Real};
use crate::recognize::recognize_k_element;
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use serde::Serialize;
use std::collections::HashSet;

/// Largest N(D) for which residues mod D are enumerated.
pub const MAX_RESIDUE_NORM: i128 = 10_000_000;

/// D = π₁⋯πₙ with each π_j normalized for its kind: ≡ 1 mod 4 (quadratic) or
/// ≡ 1 mod 3 (cubic).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiSpec {
    pub kind: TwistKind,
    pub primes: Vec<EisensteinInt>,
    pub d: EisensteinInt,
    /// D mod 3, either 1 or −1.
    pub epsilon: i64,
}

fn normalize_prime(kind: TwistKind, pi: &EisensteinInt) -> Result<EisensteinInt> {
    if !is_prime(pi) {
        return Err(Error::NotPrime(pi.to_string()));
    }
    let conv = match kind {
        TwistKind::Quadratic => Convention::Mod4Sign,
        TwistKind::Cubic => Convention::Mod3,
    };
    Ok(primary_associate(pi, conv)?.value)
}

impl PhiSpec {
    pub fn new(kind: TwistKind, primes: &[EisensteinInt]) -> Result<Self> {
        if primes.is_empty() {
            return Err(Error::EmptyTwist);
        }
        let mut ps = Vec::with_capacity(primes.len());
        for pi in primes {
            let p = normalize_prime(kind, pi)?;
            if ps.iter().any(|q: &EisensteinInt| q.divides(&p)) {
                return Err(Error::InvalidTwist(format!("{pi} repeated")));
            }
            ps.push(p);
        }
        let d = ps.iter().fold(EisensteinInt::ONE, |acc, p| acc * *p);
        let epsilon = if d.congruent_mod(&EisensteinInt::ONE, 3) { 1 } else { -1 };
        debug_assert!(d.congruent_mod(&EisensteinInt::rational(epsilon), 3));
        Ok(PhiSpec { kind, primes: ps, d, epsilon })
    }

    /// Factor a squarefree D into primes of K.
    pub fn from_d(kind: TwistKind, d: &EisensteinInt) -> Result<Self> {
        let f = factor(d)?;
        if f.primes.iter().any(|(_, e)| *e > 1) {
            return Err(Error::InvalidTwist(format!("{d} is not squarefree")));
        }
        let primes: Vec<_> = f.primes.iter().map(|(p, _)| p.value).collect();
        Self::new(kind, &primes)
    }

    pub fn n(&self) -> usize {
        self.primes.len()
    }

    pub fn m(&self) -> u32 {
        self.kind.order()
    }

    /// All α ∈ (Z/m)ⁿ, first coordinate fastest.
    pub fn alphas(&self) -> Vec<Vec<u32>> {
        let (m, n) = (self.m(), self.n());
        (0..m.pow(n as u32))
            .map(|mut i| {
                (0..n)
                    .map(|_| {
                        let v = i % m;
                        i /= m;
                        v
                    })
                    .collect()
            })
            .collect()
    }

    /// Characters χ of (Z/m)ⁿ, as exponents k_j with χ(e_j) = ζ_m^{k_j}.
    pub fn characters(&self) -> Vec<Vec<u32>> {
        self.alphas()
    }

    pub fn d_alpha(&self, alpha: &[u32]) -> EisensteinInt {
        self.primes.iter().zip(alpha).fold(EisensteinInt::ONE, |acc, (p, &a)| acc * p.pow(a))
    }

    fn twist(&self, alpha: &[u32]) -> Result<TwistSpec> {
        if alpha.iter().all(|&a| a == 0) {
            Ok(TwistSpec::untwisted())
        } else {
            TwistSpec::new(self.kind, self.d_alpha(alpha))
        }
    }

    /// χ(α) as a root of unity in Z[ω].
    fn chi_at(&self, chi: &[u32], alpha: &[u32]) -> EisensteinInt {
        let e: u32 = chi.iter().zip(alpha).map(|(k, a)| k * a).sum::<u32>() % self.m();
        EisensteinInt::unit(((6 / self.m()) * e) as i64)
    }

    /// Number of distinct rational primes below D.
    pub fn k_rational(&self) -> u32 {
        let mut seen: Vec<i128> = Vec::new();
        for p in &self.primes {
            let q = if p.b == 0 { p.a.abs() as i128 } else { p.norm() };
            if !seen.contains(&q) {
                seen.push(q);
            }
        }
        seen.len() as u32
    }

    /// D up to sign is a rational integer.
    pub fn is_rational(&self) -> bool {
        self.d.is_rational()
    }
}

/// The residues c mod D, prime to D, with (ε(3c + D)/π_j)-symbols equal to χ(e_j).
#[derive(Clone, Debug, Serialize)]
pub struct CosetSetV {
    pub d: EisensteinInt,
    pub kind: TwistKind,
    pub chi: Vec<u32>,
    pub members: Vec<EisensteinInt>,
    /// #(O_K/D)^×.
    pub transversal_size: usize,
}

impl CosetSetV {
    fn contains_all(&self, ring: &ResidueRing, u: &EisensteinInt) -> bool {
        let set: HashSet<EisensteinInt> = self.members.iter().copied().collect();
        self.members.iter().all(|c| set.contains(&ring.reduce(&(*u * *c))))
    }

    /// Closed under c ↦ −c.
    pub fn closed_under_negation(&self) -> bool {
        self.contains_all(&ResidueRing::new(&self.d), &-EisensteinInt::ONE)
    }

    /// Closed under c ↦ ωc.
    pub fn closed_under_omega(&self) -> bool {
        self.contains_all(&ResidueRing::new(&self.d), &EisensteinInt::OMEGA)
    }
}

fn symbol_tables(spec: &PhiSpec) -> Result<Vec<CharacterTable>> {
    spec.primes
        .iter()
        .map(|p| Ok(CharacterTable::new(&TwistSpec::new(spec.kind, *p)?)))
        .collect()
}

/// V^(χ); χ = None means the trivial character.
pub fn build_v(spec: &PhiSpec, chi: Option<&[u32]>) -> Result<CosetSetV> {
    let n = spec.n();
    let chi: Vec<u32> = chi.map(|c| c.to_vec()).unwrap_or_else(|| vec![0; n]);
    if chi.len() != n {
        return Err(Error::InvalidTwist(format!("character has {} components, expected {n}", chi.len())));
    }
    let norm = spec.d.norm();
    if norm > MAX_RESIDUE_NORM {
        return Err(Error::TooLarge(format!("N(D) = {norm}")));
    }
    let tables = symbol_tables(spec)?;
    let ring = ResidueRing::new(&spec.d);
    let eps = EisensteinInt::rational(spec.epsilon);
    let step = 6 / spec.m();
    let mut members = Vec::new();
    let mut size = 0;
    for c in ring.elements() {
        let a = eps * (EisensteinInt::rational(3) * c + spec.d);
        let mut ok = true;
        let mut unit = true;
        for (t, k) in tables.iter().zip(&chi) {
            match t.exponent(&a) {
                None => {
                    unit = false;
                    break;
                }
                Some(e) => ok &= e / step == *k,
            }
        }
        if unit {
            size += 1;
            if ok {
                members.push(c);
            }
        }
    }
    Ok(CosetSetV { d: spec.d, kind: spec.kind, chi, members, transversal_size: size })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PhiPath {
    FromLvalues,
    FromWp,
}

/// Φ as an exact element Σ_α x_α / r_α of the Kummer algebra K(π_j^{1/m}),
/// r_α = ∏ r_j^{α_j} with r_j the principal m-th root of π_j.
#[derive(Clone, Debug, Serialize)]
pub struct KummerSum {
    pub m: u32,
    pub primes: Vec<EisensteinInt>,
    pub terms: Vec<(Vec<u32>, KElement)>,
}

fn kint(z: &EisensteinInt) -> KElement {
    KElement::from(*z)
}

impl KummerSum {
    fn dim(&self) -> usize {
        (self.m as usize).pow(self.primes.len() as u32)
    }

    fn index(&self, beta: &[u32]) -> usize {
        beta.iter().rev().fold(0, |acc, &b| acc * self.m as usize + b as usize)
    }

    fn digits(&self, mut i: usize) -> Vec<u32> {
        (0..self.primes.len())
            .map(|_| {
                let v = (i % self.m as usize) as u32;
                i /= self.m as usize;
                v
            })
            .collect()
    }

    /// Coordinates on the monomials r^β.
    fn coordinates(&self) -> Vec<KElement> {
        let mut v = vec![KElement::zero(); self.dim()];
        for (alpha, x) in &self.terms {
            let mut c = x.clone();
            let beta: Vec<u32> = alpha.iter().map(|&a| (self.m - a) % self.m).collect();
            for (p, &a) in self.primes.iter().zip(alpha) {
                if a > 0 {
                    c = &c / &kint(p);
                }
            }
            let i = self.index(&beta);
            v[i] = &v[i] + &c;
        }
        v
    }

    fn multiplication_matrix(&self) -> Vec<Vec<KElement>> {
        let n = self.dim();
        let phi = self.coordinates();
        let mut mat = vec![vec![KElement::zero(); n]; n];
        for (bi, coef) in phi.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let beta = self.digits(bi);
            for gi in 0..n {
                let gamma = self.digits(gi);
                let mut c = coef.clone();
                let mut delta = Vec::with_capacity(beta.len());
                for ((b, g), p) in beta.iter().zip(&gamma).zip(&self.primes) {
                    let s = b + g;
                    if s >= self.m {
                        c = &c * &kint(p);
                    }
                    delta.push(s % self.m);
                }
                let di = self.index(&delta);
                mat[di][gi] = &mat[di][gi] + &c;
            }
        }
        mat
    }

    /// Coefficients c₀..c_N of the characteristic polynomial over K (c_N = 1).
    pub fn char_poly(&self) -> Vec<KElement> {
        let a = self.multiplication_matrix();
        let n = a.len();
        let mul = |x: &Vec<Vec<KElement>>, y: &Vec<Vec<KElement>>| -> Vec<Vec<KElement>> {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            (0..n).fold(KElement::zero(), |acc, k| {
                                if x[i][k].is_zero() || y[k][j].is_zero() {
                                    acc
                                } else {
                                    &acc + &(&x[i][k] * &y[k][j])
                                }
                            })
                        })
                        .collect()
                })
                .collect()
        };
        // Faddeev–LeVerrier
        let mut c = vec![KElement::zero(); n + 1];
        c[n] = KElement::one();
        let mut mk = vec![vec![KElement::zero(); n]; n];
        for k in 1..=n {
            let mut next = mul(&a, &mk);
            for (i, row) in next.iter_mut().enumerate() {
                row[i] = &row[i] + &c[n - k + 1];
            }
            mk = next;
            let am = mul(&a, &mk);
            let tr = (0..n).fold(KElement::zero(), |acc, i| &acc + &am[i][i]);
            let kk = KElement::rational(BigRational::from_integer(BigInt::from(k)));
            c[n - k] = -&(&tr / &kk);
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|(_, x)| x.is_zero())
    }

    /// Least ord_p over all conjugates (p = 2 or 3, ord_p(p) = 1); None for Φ = 0.
    pub fn min_ord(&self, p: u64) -> Result<Option<Rational64>> {
        if self.is_zero() {
            return Ok(None);
        }
        let c = self.char_poly();
        let n = c.len() - 1;
        let mut best: Option<Rational64> = None;
        for k in 1..=n {
            let ck = &c[n - k];
            if ck.is_zero() {
                continue;
            }
            let v = ck.ord_p(p)? / Rational64::from_integer(k as i64);
            best = Some(best.map_or(v, |b| b.min(v)));
        }
        Ok(best)
    }

    pub fn to_complex(&self, prec: usize) -> Complex {
        let mut s = Complex::zero(prec);
        for (alpha, x) in &self.terms {
            let r = root_alpha(&self.primes, alpha, self.m, prec);
            s = &s + &(&x.to_complex(prec) / &r);
        }
        s
    }
}

fn root_alpha(primes: &[EisensteinInt], alpha: &[u32], m: u32, prec: usize) -> Complex {
    let mut r = Complex::from_i64(1, prec);
    for (p, &a) in primes.iter().zip(alpha) {
        if a > 0 {
            let root = Complex::from_eisenstein(p.a, p.b, prec).root(m as i64);
            r = &r * &root.powi(a as u64);
        }
    }
    r
}

/// One term L_S(ψ̄_{D_α^j}, 1)/Ω of Φ.
#[derive(Clone, Debug)]
pub struct PhiTerm {
    pub alpha: Vec<u32>,
    pub value: Complex,
    pub error: f64,
    /// value·r_α, recognized in K.
    pub algebraic: Option<KElement>,
}

#[derive(Clone, Debug)]
pub struct PhiValue {
    pub kind: TwistKind,
    pub d: EisensteinInt,
    pub chi: Vec<u32>,
    pub estimate: Complex,
    pub error: f64,
    pub path: PhiPath,
    /// Exact value, L path only.
    pub exact: Option<KummerSum>,
}

/// Denominator bound for the term at α: its Euler factors contribute N(π_j)
/// for each π_j ∤ D_α, on top of the small denominators of the algebraic value.
pub fn term_denominator_bound(spec: &PhiSpec, alpha: &[u32]) -> u64 {
    let n: i128 = spec.primes.iter().zip(alpha).filter(|(_, &a)| a == 0).map(|(p, _)| p.norm()).product();
    (300 * n).min(1 << 40) as u64
}

/// A context accurate enough to certify recognition up to the given bound.
fn context_for(ctx: &PrecisionContext, bound: u64, root_abs: f64) -> PrecisionContext {
    let b = bound as f64;
    let needed = 1.0 / (40.0 * b * b * root_abs.max(1.0));
    if ctx.target_abs_error <= needed {
        return *ctx;
    }
    let bits = ctx.working_bits.max((-needed.log2()) as usize + 48);
    PrecisionContext::new(bits, needed).unwrap_or(*ctx)
}

/// All terms L_S(ψ̄_{D_α^j}, 1)/Ω, shared by every character.
pub fn phi_terms(spec: &PhiSpec, ctx: &PrecisionContext) -> Result<Vec<PhiTerm>> {
    let prec = ctx.working_bits + 32;
    spec.alphas()
        .into_iter()
        .map(|alpha| {
            let tw = spec.twist(&alpha)?;
            let bound = term_denominator_bound(spec, &alpha);
            let r = root_alpha(&spec.primes, &alpha, spec.m(), prec);
            let local = context_for(ctx, bound, r.abs_f64());
            let h = hecke_l_series(&tw, &spec.primes, &local)?;
            let scaled = &h.value * &root_alpha(&spec.primes, &alpha, spec.m(), local.working_bits + 32);
            let err = h.error * r.abs_f64();
            let algebraic = if scaled.abs_f64() < (100.0 * err).max(1e-15) {
                Some(KElement::zero())
            } else {
                recognize_k_element(&scaled, err.max(1e-60), bound).ok()
            };
            let value = Complex::new(h.value.re.with_prec(prec), h.value.im.with_prec(prec));
            Ok(PhiTerm { alpha, value, error: h.error, algebraic })
        })
        .collect()
}

/// Φ^(χ) from precomputed terms.
pub fn phi_from_terms(spec: &PhiSpec, chi: &[u32], terms: &[PhiTerm], prec: usize) -> PhiValue {
    let mut est = Complex::zero(prec);
    let mut err = 0.0;
    let mut exact = Some(Vec::new());
    for t in terms {
        let u = spec.chi_at(chi, &t.alpha);
        est = &est + &(&t.value * &Complex::from_eisenstein(u.a, u.b, prec));
        err += t.error;
        match (&mut exact, &t.algebraic) {
            (Some(v), Some(x)) => v.push((t.alpha.clone(), &kint(&u) * x)),
            _ => exact = None,
        }
    }
    PhiValue {
        kind: spec.kind,
        d: spec.d,
        chi: chi.to_vec(),
        estimate: est,
        error: err,
        path: PhiPath::FromLvalues,
        exact: exact.map(|terms| KummerSum { m: spec.m(), primes: spec.primes.clone(), terms }),
    }
}

/// Φ^(χ) = Σ_α χ(α)·L_S(ψ̄_{D_α^j}, 1)/Ω.
pub fn phi_from_lvalues(spec: &PhiSpec, chi: Option<&[u32]>, ctx: &PrecisionContext) -> Result<PhiValue> {
    let chi: Vec<u32> = chi.map(|c| c.to_vec()).unwrap_or_else(|| vec![0; spec.n()]);
    let terms = phi_terms(spec, ctx)?;
    Ok(phi_from_terms(spec, &chi, &terms, ctx.working_bits + 32))
}

/// Σ_{c ∈ V} E₁*(cΩ/D + Ω/3) with its error, through ℘ where V allows it.
pub fn eisenstein_sum(v: &CosetSetV, ctx: &PrecisionContext) -> Result<(Complex, f64)> {
    let prec = ctx.working_bits + 32;
    let ring = ResidueRing::new(&v.d);
    let neg = v.closed_under_negation();
    let omega = neg && v.closed_under_omega();
    let mut total = Complex::zero(prec);
    let mut err = 0.0;
    if !neg {
        for c in &v.members {
            let (e, de) = eisenstein_e1star(&LatticePoint::with_third(*c, v.d), ctx)?;
            total = &total + &e;
            err += de;
        }
        return Ok((total, err));
    }
    // Σ 9/(3 − ℘) over unit orbits, then #V − ½Σ
    let units: Vec<EisensteinInt> = if omega {
        EisensteinInt::units().to_vec()
    } else {
        vec![EisensteinInt::ONE, -EisensteinInt::ONE]
    };
    let mut seen: HashSet<EisensteinInt> = HashSet::new();
    let mut s = Complex::zero(prec);
    let three = Complex::from_i64(3, prec);
    let twenty_seven = Complex::from_i64(27, prec);
    for c in &v.members {
        if seen.contains(c) {
            continue;
        }
        let orbit: HashSet<EisensteinInt> = units.iter().map(|u| ring.reduce(&(*u * *c))).collect();
        let stab = (units.len() / orbit.len()) as i64;
        seen.extend(orbit);
        let (x, dx) = wp_only(&LatticePoint::new(*c, v.d), ctx)?;
        let (term, dterm) = if omega {
            // Σ_{u ∈ μ6} 9/(3 − u⁻²x) = 486/(27 − x³)
            let x3 = x.powi(3);
            let den = &twenty_seven - &x3;
            let t = &Complex::from_i64(486, prec) / &den;
            let dd = 486.0 * 3.0 * x.abs_f64().powi(2) / den.abs_f64().powi(2);
            (t, dd * dx)
        } else {
            let den = &three - &x;
            let t = &Complex::from_i64(18, prec) / &den;
            (t, 18.0 / den.abs_f64().powi(2) * dx)
        };
        s = &s + &term.scale(&Real::from_ratio(1, stab, prec));
        err += dterm / stab as f64;
    }
    let count = Complex::from_i64(v.members.len() as i64, prec);
    total = &count - &s.scale(&Real::from_ratio(1, 2, prec));
    Ok((total, err / 2.0))
}

/// Φ^(χ) = ε·mⁿ/(3D)·Σ_{c ∈ V^(χ)} E₁*(cΩ/D + Ω/3).
pub fn phi_from_wp(spec: &PhiSpec, chi: Option<&[u32]>, ctx: &PrecisionContext) -> Result<PhiValue> {
    let prec = ctx.working_bits + 32;
    let v = build_v(spec, chi)?;
    let (sum, err) = eisenstein_sum(&v, ctx)?;
    let factor = spec.epsilon * (spec.m() as i64).pow(spec.n() as u32);
    let three_d = Complex::from_eisenstein(3 * spec.d.a, 3 * spec.d.b, prec);
    let est = &sum.scale(&Real::from_i64(factor, prec)) / &three_d;
    let scale = factor.unsigned_abs() as f64 / three_d.abs_f64();
    Ok(PhiValue {
        kind: spec.kind,
        d: spec.d,
        chi: v.chi,
        estimate: est,
        error: err * scale,
        path: PhiPath::FromWp,
        exact: None,
    })
}

/// One inequality from the valuation theorems; `value` None means +∞.
#[derive(Clone, Debug, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub chi: Vec<u32>,
    pub value: Option<Rational64>,
    pub bound: Rational64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValuationReport {
    pub kind: TwistKind,
    pub d: EisensteinInt,
    pub n: usize,
    pub k_rational: u32,
    pub p: u64,
    /// The primes satisfy the special-split or cubic-special hypothesis.
    pub hypotheses: bool,
    /// ord_p of each algebraic term x_α, None for a vanishing term.
    pub term_ords: Vec<(Vec<u32>, Option<Rational64>)>,
    pub checks: Vec<BoundCheck>,
}

impl ValuationReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn check(name: &str, chi: &[u32], value: Option<Rational64>, bound: Rational64) -> BoundCheck {
    BoundCheck { name: name.into(), chi: chi.to_vec(), value, bound, holds: value.map_or(true, |v| v >= bound) }
}

/// ord₂(Φ) ≥ n (quadratic); ord₃(Φ^(χ)) ≥ n for all χ, and ≥ n + 1/4 when n = 1 (cubic);
/// and ord_p of the primitive value at α = (1, …, 1) against 2k(D) or k(D) + 1.
pub fn verify_valuation_bounds(spec: &PhiSpec, ctx: &PrecisionContext) -> Result<ValuationReport> {
    let p: u64 = match spec.kind {
        TwistKind::Quadratic => 2,
        TwistKind::Cubic => 3,
    };
    let n = spec.n() as i64;
    let terms = phi_terms(spec, ctx)?;
    let prec = ctx.working_bits + 32;
    let mut term_ords = Vec::new();
    for t in &terms {
        let x = t
            .algebraic
            .as_ref()
            .ok_or_else(|| Error::RecognitionFailed(format!("term α = {:?} of Φ for {}", t.alpha, spec.d)))?;
        term_ords.push((t.alpha.clone(), if x.is_zero() { None } else { Some(x.ord_p(p)?) }));
    }
    let mut checks = Vec::new();
    let chars = match spec.kind {
        TwistKind::Quadratic => vec![vec![0; spec.n()]],
        TwistKind::Cubic => spec.characters(),
    };
    for chi in &chars {
        let phi = phi_from_terms(spec, chi, &terms, prec);
        let v = phi.exact.as_ref().expect("all terms recognized").min_ord(p)?;
        checks.push(check("ord_p(Phi) >= n", chi, v, Rational64::from_integer(n)));
        if spec.kind == TwistKind::Cubic && n == 1 {
            checks.push(check("ord_3(Phi) >= n + 1/4", chi, v, Rational64::new(4 * n + 1, 4)));
        }
    }
    let k = spec.k_rational() as i64;
    let top: Vec<u32> = vec![1; spec.n()];
    let top_ord = term_ords.iter().find(|(a, _)| *a == top).and_then(|(_, v)| *v);
    let bound = match spec.kind {
        TwistKind::Quadratic => 2 * k,
        TwistKind::Cubic => k + 1,
    };
    if spec.is_rational() {
        checks.push(check("ord_p(L_alg) >= bound", &top, top_ord, Rational64::from_integer(bound)));
    }
    let hypotheses = TwistSpec::new(spec.kind, spec.d).map_or(false, |t| t.hypotheses);
    Ok(ValuationReport {
        kind: spec.kind,
        d: spec.d,
        n: spec.n(),
        k_rational: spec.k_rational(),
        p,
        hypotheses,
        term_ords,
        checks,
    })
}
