//! Exact algebra behind the 4-division field, the Kummer generator of K(E[2+√−3])
//! and the model of E with good reduction at 3.

use crate::error::{Error, Result};
use crate::kelement::KElement;
use crate::mp::{Complex, Real};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use serde::Serialize;
use std::fmt;
use std::sync::Arc;

type Poly = Vec<BigRational>;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Poly {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Poly, Poly) {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut quot = vec![BigRational::zero(); r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() / &lead;
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &c * bi;
        }
        quot[k] = c;
        r = trim(r);
    }
    (trim(quot), r)
}

/// Inverse of a modulo m by the extended Euclidean algorithm.
fn poly_inv_mod(a: &[BigRational], m: &[BigRational]) -> Option<Poly> {
    let (mut r0, mut r1) = (m.to_vec(), trim(a.to_vec()));
    let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![q(1)]);
    while !r1.is_empty() {
        let (qt, r) = poly_divrem(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&qt, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    Some(s0.into_iter().map(|x| x / &c).collect())
}

/// Q[θ]/(f) for a monic irreducible f, with a fixed complex embedding of θ.
pub struct NumberField {
    pub name: String,
    /// Monic minimal polynomial of θ, constant term first.
    pub modulus: Poly,
    theta: fn(usize) -> Complex,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({}, degree {})", self.name, self.degree())
    }
}

impl NumberField {
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn minimal_polynomial_string(&self) -> String {
        poly_string(&self.modulus, "t")
    }

    /// θ under the fixed embedding.
    pub fn theta(&self, prec: usize) -> Complex {
        (self.theta)(prec)
    }
}

#[derive(Clone)]
pub struct NumberFieldElement {
    pub field: Arc<NumberField>,
    pub coeffs: Poly,
}

impl fmt::Debug for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", poly_string(&self.coeffs, "t"), self.field.name)
    }
}

impl PartialEq for NumberFieldElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) && self.coeffs == other.coeffs
    }
}

impl NumberFieldElement {
    pub fn new(field: &Arc<NumberField>, coeffs: Poly) -> Self {
        let (_, r) = poly_divrem(&coeffs, &field.modulus);
        NumberFieldElement { field: field.clone(), coeffs: r }
    }

    pub fn rational(field: &Arc<NumberField>, x: BigRational) -> Self {
        Self::new(field, vec![x])
    }

    pub fn theta(field: &Arc<NumberField>) -> Self {
        Self::new(field, vec![q(0), q(1)])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let z = BigRational::zero();
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z)).collect();
        Self::new(&self.field, trim(c))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.field, poly_sub(&self.coeffs, &o.coeffs))
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.field, poly_mul(&self.coeffs, &o.coeffs))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(&self.field, trim(self.coeffs.iter().map(|x| x * c).collect()))
    }

    pub fn inv(&self) -> Result<Self> {
        let c = poly_inv_mod(&self.coeffs, &self.field.modulus)
            .ok_or_else(|| Error::IdentityFailed(format!("{self:?} is not invertible")))?;
        Ok(Self::new(&self.field, c))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::rational(&self.field, q(1));
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// The value under the field's embedding.
    pub fn to_complex(&self, prec: usize) -> Complex {
        let theta = self.field.theta(prec);
        let mut acc = Complex::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &theta) + &Complex::from_real(Real::from_bigrational(c, prec));
        }
        acc
    }
}

fn poly_string(p: &[BigRational], var: &str) -> String {
    let mut parts = Vec::new();
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let s = if mono.is_empty() {
            c.to_string()
        } else if c.is_one() {
            mono
        } else if (-c).is_one() {
            format!("-{mono}")
        } else {
            format!("{c}*{mono}")
        };
        parts.push(s);
    }
    if parts.is_empty() {
        return "0".into();
    }
    parts.join(" + ").replace("+ -", "- ")
}

/// Compositum of fields Q(g_j) given by rational minimal polynomials, built on the
/// primitive element θ = Σ m_j g_j. Returns the field and the images of the g_j.
fn compositum(
    name: &str,
    gens: &[Vec<i64>],
    mults: &[i64],
    theta: fn(usize) -> Complex,
) -> Result<(Arc<NumberField>, Vec<NumberFieldElement>)> {
    let dims: Vec<usize> = gens.iter().map(|g| g.len() - 1).collect();
    let n: usize = dims.iter().product();
    // x_j^k reduced, for k < 2 d_j
    let powers: Vec<Vec<Poly>> = gens
        .iter()
        .zip(&dims)
        .map(|(g, &d)| {
            let m: Poly = g.iter().map(|&c| q(c)).collect();
            (0..2 * d)
                .map(|k| {
                    let mut mono = vec![q(0); k + 1];
                    mono[k] = q(1);
                    let mut r = poly_divrem(&mono, &m).1;
                    r.resize(d, q(0));
                    r
                })
                .collect()
        })
        .collect();
    let index = |e: &[usize]| e.iter().zip(&dims).fold(0, |acc, (x, d)| acc * d + x);
    let unindex = |mut i: usize| {
        let mut e = vec![0; dims.len()];
        for j in (0..dims.len()).rev() {
            e[j] = i % dims[j];
            i /= dims[j];
        }
        e
    };
    let mul = |a: &Poly, b: &Poly| -> Poly {
        let mut out = vec![q(0); n];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            let ei = unindex(i);
            for (k, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let ek = unindex(k);
                let xy = x * y;
                // tensor product of the reduced powers
                let mut terms: Vec<(Vec<usize>, BigRational)> = vec![(Vec::new(), xy)];
                for j in 0..dims.len() {
                    let pj = &powers[j][ei[j] + ek[j]];
                    let mut next = Vec::new();
                    for (e, c) in &terms {
                        for (m, cj) in pj.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                            let mut e2 = e.clone();
                            e2.push(m);
                            next.push((e2, c * cj));
                        }
                    }
                    terms = next;
                }
                for (e, c) in terms {
                    out[index(&e)] += c;
                }
            }
        }
        out
    };
    let gen_vec = |j: usize| {
        let mut v = vec![q(0); n];
        let mut e = vec![0; dims.len()];
        e[j] = 1;
        v[index(&e)] = q(1);
        v
    };
    let mut th = vec![q(0); n];
    for (j, &m) in mults.iter().enumerate() {
        for (a, b) in th.iter_mut().zip(gen_vec(j)) {
            *a += b * q(m);
        }
    }
    let mut pows = vec![{
        let mut one = vec![q(0); n];
        one[0] = q(1);
        one
    }];
    for _ in 0..n {
        let next = mul(pows.last().unwrap(), &th);
        pows.push(next);
    }
    // columns θ^0..θ^{n-1}; solve for θ^n and for each generator
    let solve = |target: &Poly| -> Option<Poly> {
        let mut rows: Vec<Vec<BigRational>> =
            (0..n).map(|r| (0..n).map(|c| pows[c][r].clone()).chain([target[r].clone()]).collect()).collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !rows[r][col].is_zero())?;
            rows.swap(col, piv);
            let p = rows[col][col].clone();
            for v in rows[col].iter_mut() {
                *v = &*v / &p;
            }
            for r in 0..n {
                if r != col && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    let pivot_row = rows[col].clone();
                    for (v, pv) in rows[r].iter_mut().zip(pivot_row) {
                        *v -= &f * pv;
                    }
                }
            }
        }
        Some(rows.into_iter().map(|r| r[n].clone()).collect())
    };
    let top = solve(&pows[n]).ok_or_else(|| Error::IdentityFailed(format!("{name}: θ is not primitive")))?;
    let mut modulus: Poly = top.into_iter().map(|c| -c).collect();
    modulus.push(q(1));
    let field = Arc::new(NumberField { name: name.into(), modulus, theta });
    let images = (0..gens.len())
        .map(|j| solve(&gen_vec(j)).map(|c| NumberFieldElement::new(&field, trim(c))))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::IdentityFailed(format!("{name}: generator not in Q(θ)")))?;
    Ok((field, images))
}

fn sqrt_m3(prec: usize) -> Complex {
    Complex::new(Real::zero(prec), Real::from_i64(3, prec).sqrt())
}

/// L = K(μ₄, ∛2) = Q(√−3, i, ∛2) on θ = √−3 + i + ∛2, with generators in that order.
pub fn four_division_field() -> Result<(Arc<NumberField>, Vec<NumberFieldElement>)> {
    fn theta(p: usize) -> Complex {
        let i = Complex::new(Real::zero(p), Real::one(p));
        &(&sqrt_m3(p) + &i) + &Complex::from_real(Real::from_i64(2, p).cbrt())
    }
    compositum("K(mu4, cbrt 2)", &[vec![3, 0, 1], vec![1, 0, 1], vec![-2, 0, 0, 1]], &[1, 1, 1], theta)
}

/// A K-element inside a field where √−3 has image `t`.
fn embed_k(field: &Arc<NumberField>, t: &NumberFieldElement, v: &KElement) -> NumberFieldElement {
    NumberFieldElement::rational(field, v.x.clone()).add(&t.scale(&v.y))
}

#[derive(Clone, Debug, Serialize)]
pub struct FourDivisionData {
    pub field_degree: usize,
    pub field_polynomial: String,
    /// z⁴ − 4z³ + 8z + 4 = (z² − 2z − 2)² as polynomials.
    pub square_identity: bool,
    pub z_roots: Vec<String>,
    /// x-coordinates of E[2] \ {O}, as (3∛2/2)·ω^i.
    pub e2_x: Vec<String>,
    /// x-coordinates of E[4] \ E[2], as (3∛2/2)(1 ± √3)·ω^i.
    pub e4_x: Vec<String>,
    /// Every e4 value doubles into the E[2] list.
    pub duplication_holds: bool,
    #[serde(skip)]
    pub e4_values: Vec<NumberFieldElement>,
    #[serde(skip)]
    pub e2_values: Vec<NumberFieldElement>,
}

/// x(2P) = (x⁴ + 2·3³x)/(4x³ − 3³) on y² = 4x³ − 27.
pub fn duplication_x(x: &NumberFieldElement) -> Result<NumberFieldElement> {
    let f = &x.field;
    let num = x.pow(4).add(&x.scale(&q(54)));
    let den = x.pow(3).scale(&q(4)).sub(&NumberFieldElement::rational(f, q(27)));
    num.div(&den)
}

pub fn four_division_data() -> Result<FourDivisionData> {
    let zsq = poly_mul(&[q(-2), q(-2), q(1)], &[q(-2), q(-2), q(1)]);
    let square_identity = zsq == vec![q(4), q(8), q(0), q(-4), q(1)];
    let (field, gens) = four_division_field()?;
    let (t, i, c) = (&gens[0], &gens[1], &gens[2]);
    let one = NumberFieldElement::rational(&field, q(1));
    // √3 = −i·√−3
    let sqrt3 = i.mul(t).scale(&q(-1));
    if sqrt3.mul(&sqrt3) != NumberFieldElement::rational(&field, q(3)) {
        return Err(Error::IdentityFailed("sqrt(3)^2".into()));
    }
    let z = [one.add(&sqrt3), one.sub(&sqrt3)];
    for r in &z {
        let v = r.mul(r).sub(&r.scale(&q(2))).sub(&NumberFieldElement::rational(&field, q(2)));
        if !v.is_zero() {
            return Err(Error::IdentityFailed("z^2 - 2z - 2 at 1 ± sqrt(3)".into()));
        }
    }
    let omega = t.sub(&one).scale(&BigRational::new(1.into(), 2.into()));
    let x0 = c.scale(&BigRational::new(3.into(), 2.into()));
    let e2: Vec<_> = (0..3).map(|k| x0.mul(&omega.pow(k))).collect();
    for x in &e2 {
        // roots of 4x³ − 27
        if !x.pow(3).scale(&q(4)).sub(&NumberFieldElement::rational(&field, q(27))).is_zero() {
            return Err(Error::IdentityFailed("E[2] x-coordinate".into()));
        }
    }
    let mut e4 = Vec::new();
    let mut labels = Vec::new();
    for (k, w) in (0..3).map(|k| (k, omega.pow(k))) {
        for (sign, zr) in ["+", "-"].iter().zip(&z) {
            e4.push(x0.mul(zr).mul(&w));
            labels.push(format!("(3*cbrt(2)/2)*(1{sign}sqrt(3))*w^{k}"));
        }
    }
    let mut duplication_holds = true;
    for x in &e4 {
        let d = duplication_x(x)?;
        duplication_holds &= e2.contains(&d);
    }
    Ok(FourDivisionData {
        field_degree: field.degree(),
        field_polynomial: field.minimal_polynomial_string(),
        square_identity,
        z_roots: vec!["1+sqrt(3)".into(), "1-sqrt(3)".into()],
        e2_x: (0..3).map(|k| format!("(3*cbrt(2)/2)*w^{k}")).collect(),
        e4_x: labels,
        duplication_holds,
        e4_values: e4,
        e2_values: e2,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct KummerSolution {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

fn powmod(b: u64, e: u64, m: u64) -> u64 {
    let mut r = 1;
    for _ in 0..e {
        r = r * b % m;
    }
    r
}

/// Exponents (a, b, c) ∈ {0..5}³ with 117ᵃ276ᵇ160ᶜ ≡ 1 mod 277 and 29ᵃ37ᵇ38ᶜ ≡ 1 mod 67.
pub fn kummer_exponent_search() -> Vec<KummerSolution> {
    let congruences: [([u64; 3], u64); 2] = [([117, 276, 160], 277), ([29, 37, 38], 67)];
    let mut out = Vec::new();
    for a in 0..6 {
        for b in 0..6 {
            for c in 0..6 {
                let ok = congruences.iter().all(|(base, m)| {
                    powmod(base[0], a, *m) * powmod(base[1], b, *m) % m * powmod(base[2], c, *m) % m == 1
                });
                if ok {
                    out.push(KummerSolution { a: a as u32, b: b as u32, c: c as u32 });
                }
            }
        }
    }
    out
}

/// F = K(⁶√α), α = (27 + 3√−3)/2, over Q: θ¹² − 27θ⁶ + 189 is the resultant of
/// X⁶ − α with t² + 3. Returns the field and the image of √−3.
pub fn kummer_field() -> Result<(Arc<NumberField>, NumberFieldElement)> {
    // X⁶ − α = a₀ + a₁·√−3 with a₀ = X⁶ − 27/2, a₁ = −3/2; the norm is a₀² + 3a₁²
    let mut a0 = vec![q(0); 7];
    a0[0] = BigRational::new((-27).into(), 2.into());
    a0[6] = q(1);
    let a1 = vec![BigRational::new((-3).into(), 2.into())];
    let mut modulus = poly_mul(&a0, &a0);
    let a1sq = poly_mul(&a1, &a1);
    modulus[0] += &a1sq[0] * q(3);
    fn theta(p: usize) -> Complex {
        let alpha = Complex::new(Real::from_ratio(27, 2, p), &Real::from_i64(3, p).sqrt() * &Real::from_ratio(3, 2, p));
        alpha.root(6)
    }
    let field = Arc::new(NumberField { name: "K(alpha^(1/6))".into(), modulus, theta });
    let g = NumberFieldElement::theta(&field);
    // √−3 = (2θ⁶ − 27)/3
    let t = g.pow(6).scale(&q(2)).sub(&NumberFieldElement::rational(&field, q(27))).scale(&BigRational::new(1.into(), 3.into()));
    if t.mul(&t) != NumberFieldElement::rational(&field, q(-3)) {
        return Err(Error::IdentityFailed("sqrt(-3) in the Kummer field".into()));
    }
    Ok((field, t))
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelCheck {
    pub field_polynomial: String,
    /// a₂, a₄, a₆ of Y² = X³ + a₂X² + a₄X + a₆ after the substitution.
    pub coefficients: Vec<KElement>,
    pub identity_holds: bool,
    pub discriminant: KElement,
    pub discriminant_ord3: Rational64,
    pub ord3_u: Rational64,
    pub one_minus_s_cubed: KElement,
    pub ord3_one_minus_s_cubed: Rational64,
    pub four_s_cubed_minus_one: KElement,
    pub ord3_four_s_cubed_minus_one: Rational64,
    /// Valuations are in the normalization ord₃(3) = 1.
    pub context: Vec<String>,
}

impl ModelCheck {
    pub fn passes(&self) -> bool {
        self.identity_holds && self.discriminant_ord3 == Rational64::zero()
    }
}

/// The stated coefficients (9+√−3)/4, (13+3√−3)/8, (2+√−3)/8.
pub fn stated_model() -> [KElement; 3] {
    [KElement::from_ratios(9, 4, 1, 4), KElement::from_ratios(13, 8, 3, 8), KElement::from_ratios(2, 8, 1, 8)]
}

/// Read off a K-element from an F-element known to lie in K.
fn to_k(v: &NumberFieldElement, t: &NumberFieldElement) -> Option<KElement> {
    // v = x + y·t; the θ⁶ coordinate of t is 2/3 and t has no other non-constant part
    let t6 = t.coeffs.get(6).cloned().unwrap_or_default();
    let y = v.coeffs.get(6).cloned().unwrap_or_default() / t6;
    let x = v.sub(&t.scale(&y));
    if x.coeffs.len() > 1 {
        return None;
    }
    let x = x.coeffs.first().cloned().unwrap_or_default();
    Some(KElement::new(x, y))
}

/// Substitutes x = u²X + r, y = 2u³Y into y² = 4x³ − 27 over F and compares with the
/// stated model; then computes the discriminant and the s-valuations.
pub fn good_reduction_model_check() -> Result<ModelCheck> {
    let (field, t) = kummer_field()?;
    let one = NumberFieldElement::rational(&field, q(1));
    let gamma = NumberFieldElement::theta(&field);
    // β = ∛((1 − 3√−3)/2) = γ²/(ω − 1), ω − 1 = (√−3 − 3)/2
    let w1 = t.sub(&NumberFieldElement::rational(&field, q(3))).scale(&BigRational::new(1.into(), 2.into()));
    let beta = gamma.pow(2).div(&w1)?;
    let beta3 = embed_k(&field, &t, &KElement::from_ratios(1, 2, -3, 2));
    if beta.pow(3) != beta3 {
        return Err(Error::IdentityFailed("beta^3 = (1 - 3sqrt(-3))/2".into()));
    }
    let u = gamma.pow(3).div(&beta.pow(2))?;
    let s = beta.pow(2).scale(&BigRational::new((-1).into(), 2.into()));
    let r = s.scale(&q(3));
    // 4(u²X + r)³ − 27 = 4u⁶X³ + 12u⁴rX² + 12u²r²X + 4r³ − 27, divided by 4u⁶
    let u2 = u.pow(2);
    let four_u6 = u.pow(6).scale(&q(4));
    let coeff = [
        r.pow(3).scale(&q(4)).sub(&NumberFieldElement::rational(&field, q(27))).div(&four_u6)?,
        u2.mul(&r.pow(2)).scale(&q(12)).div(&four_u6)?,
        u2.pow(2).mul(&r).scale(&q(12)).div(&four_u6)?,
        u.pow(6).scale(&q(4)).div(&four_u6)?,
    ];
    if coeff[3] != one {
        return Err(Error::IdentityFailed("X^3 coefficient".into()));
    }
    let stated = stated_model();
    let names = ["a6", "a4", "a2"];
    let mut coefficients = Vec::new();
    for (k, (got, want)) in coeff[..3].iter().zip([&stated[2], &stated[1], &stated[0]]).enumerate() {
        if *got != embed_k(&field, &t, want) {
            return Err(Error::IdentityFailed(format!("{} = {:?}, expected {}", names[k], got, want)));
        }
        coefficients.push(to_k(got, &t).ok_or_else(|| Error::IdentityFailed(format!("{} not in K", names[k])))?);
    }
    coefficients.reverse();
    let [a2, a4, a6] = stated;
    let disc = model_discriminant(&a2, &a4, &a6);
    // Δ·u¹² equals the discriminant −3⁹ of y² = 4x³ − 27 in the y/2 normalization
    let u12 = u.pow(12);
    if embed_k(&field, &t, &disc).mul(&u12) != NumberFieldElement::rational(&field, q(-19683)) {
        return Err(Error::IdentityFailed("discriminant scaling by u^12".into()));
    }
    let u12k = to_k(&u12, &t).ok_or_else(|| Error::IdentityFailed("u^12 not in K".into()))?;
    let ord3_u = u12k.ord_p(3)? / Rational64::from_integer(12);
    let s3 = s.pow(3);
    let one_minus = to_k(&one.sub(&s3), &t).ok_or_else(|| Error::IdentityFailed("1 - s^3 not in K".into()))?;
    let four_minus = to_k(&s3.scale(&q(4)).sub(&one), &t).ok_or_else(|| Error::IdentityFailed("4s^3 - 1 not in K".into()))?;
    if one_minus != KElement::from_ratios(3, 16, -3, 16) {
        return Err(Error::IdentityFailed(format!("1 - s^3 = {one_minus}")));
    }
    let o1 = one_minus.ord_p(3)?;
    let o4 = four_minus.ord_p(3)?;
    Ok(ModelCheck {
        field_polynomial: field.minimal_polynomial_string(),
        coefficients,
        identity_holds: true,
        discriminant_ord3: disc.ord_p(3)?,
        discriminant: disc,
        ord3_u,
        context: vec![
            format!("ord_3(1 - s^3) = {o1}: 3 - 3sqrt(-3) = 3(1 - sqrt(-3)) and 1 - sqrt(-3) has norm 4"),
            format!("ord_3(4s^3 - 1) = {o4}: this is the 3/2 that makes the model integral, ord_3(u^6) = {}", ord3_u * 6),
        ],
        one_minus_s_cubed: one_minus,
        ord3_one_minus_s_cubed: o1,
        four_s_cubed_minus_one: four_minus,
        ord3_four_s_cubed_minus_one: o4,
    })
}

/// Δ of Y² = X³ + a₂X² + a₄X + a₆.
pub fn model_discriminant(a2: &KElement, a4: &KElement, a6: &KElement) -> KElement {
    let k = |n: i64| KElement::from_ints(n, 0);
    let b2 = &k(4) * a2;
    let b4 = &k(2) * a4;
    let b6 = &k(4) * a6;
    let b8 = &(&(&k(4) * a2) * a6) - &(a4 * a4);
    let t1 = &(&b2 * &b2) * &b8;
    let t2 = &k(8) * &b4.pow(3);
    let t3 = &k(27) * &(&b6 * &b6);
    let t4 = &k(9) * &(&(&b2 * &b4) * &b6);
    &(&(&(-&t1) - &t2) - &t3) + &t4
}

/// Largest |a − b| over the model coefficients against their floating evaluation
/// from u and r, a consistency check on the embedding.
pub fn model_numeric_residual(prec: usize) -> Result<f64> {
    let (field, t) = kummer_field()?;
    let gamma = NumberFieldElement::theta(&field);
    let w1 = t.sub(&NumberFieldElement::rational(&field, q(3))).scale(&BigRational::new(1.into(), 2.into()));
    let beta = gamma.pow(2).div(&w1)?;
    let u = gamma.pow(3).div(&beta.pow(2))?.to_complex(prec);
    let r = beta.pow(2).scale(&BigRational::new((-3).into(), 2.into())).to_complex(prec);
    let u2 = &u * &u;
    let u4 = &u2 * &u2;
    let u6 = &u4 * &u2;
    let three = Complex::from_i64(3, prec);
    let four = Complex::from_i64(4, prec);
    let got = [
        &(&three * &r) / &u2,
        &(&(&three * &r) * &r) / &u4,
        &(&(&(&four * &r) * &r) * &r - &Complex::from_i64(27, prec)) / &(&four * &u6),
    ];
    let want = stated_model();
    Ok(got.iter().zip(&want).map(|(g, w)| (g - &w.to_complex(prec)).abs_f64()).fold(0.0, f64::max))
}
