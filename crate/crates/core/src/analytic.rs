//! Period, Weierstrass functions and E₁* on the lattice L = ΩZ[ω] of y² = 4x³ − 27.

use crate::eisenstein::EisensteinInt;
use crate::error::{Error, Result};
use crate::mp::{Complex, PrecisionContext, Real};
use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

const GUARD: usize = 32;

/// Constants shared by all evaluations at one precision.
pub struct AnalyticConsts {
    pub bits: usize,
    pub pi: Real,
    pub sqrt3: Real,
    pub omega: Real,
    pub omega_err: f64,
    /// 2π/(√3Ω), the quasi-period factor: ζ(z + Ωw) = ζ(z) + η·w̄.
    pub eta: Real,
    /// c_{3j}, j = 1, 2, … in ℘(z) = z⁻² + Σ c_k z^{2k−2}.
    laurent: Vec<Real>,
}

thread_local! {
    static CACHE: RefCell<HashMap<usize, Rc<AnalyticConsts>>> = RefCell::new(HashMap::new());
}

pub fn consts(bits: usize) -> Rc<AnalyticConsts> {
    if let Some(c) = CACHE.with(|c| c.borrow().get(&bits).cloned()) {
        return c;
    }
    let c = Rc::new(AnalyticConsts::compute(bits));
    CACHE.with(|m| m.borrow_mut().insert(bits, c.clone()));
    c
}

fn agm(a: &Real, b: &Real) -> Real {
    let p = a.prec();
    let (mut a, mut b) = (a.clone(), b.clone());
    for _ in 0..200 {
        let na = (&a + &b) / 2i64;
        let nb = (&a * &b).sqrt();
        let diff = (&na - &nb).abs();
        a = na;
        b = nb;
        if diff.is_zero() || diff.exponent().unwrap_or(i32::MIN) < a.exponent().unwrap_or(0) - p as i32 + 2 {
            break;
        }
    }
    (a + b) / 2i64
}

impl AnalyticConsts {
    fn compute(bits: usize) -> Self {
        let p = bits + GUARD;
        let pi = Real::pi(p);
        let sqrt3 = Real::from_i64(3, p).sqrt();
        // real root e1 = 3/∛4, distance to the complex roots r = √3·e1
        let e1 = Real::from_i64(3, p) / Real::from_i64(4, p).cbrt();
        let r = &sqrt3 * &e1;
        let a = (&r).sqrt() * 2i64;
        let b = (&r * 2i64 + &e1 * 3i64).sqrt();
        let omega = &pi * 2i64 / agm(&a, &b);
        let omega_err = omega.to_f64() * 2f64.powi(8 - bits as i32);
        let eta = &pi * 2i64 / (&sqrt3 * &omega);
        // Laurent coefficients for g2 = 0, g3 = 27
        let kmax = 3 * ((bits as f64 * 0.22).ceil() as usize + 8);
        let mut c = vec![Real::zero(p); kmax + 1];
        c[3] = Real::from_ratio(27, 28, p);
        for k in 4..=kmax {
            if k % 3 != 0 {
                continue;
            }
            let mut s = Real::zero(p);
            for m in 2..=k - 2 {
                if m % 3 == 0 && (k - m) % 3 == 0 {
                    s = s + &c[m] * &c[k - m];
                }
            }
            c[k] = s * 3i64 / (((2 * k + 1) * (k - 3)) as i64);
        }
        let laurent = (1..=kmax / 3).map(|j| c[3 * j].clone()).collect();
        AnalyticConsts { bits, pi, sqrt3, omega, omega_err, eta, laurent }
    }

    pub fn prec(&self) -> usize {
        self.bits + GUARD
    }

    /// Coefficient c_{3j} of the Laurent expansion.
    pub fn laurent(&self, j: usize) -> &Real {
        &self.laurent[j - 1]
    }
}

/// Ω with an error bound.
pub fn fundamental_period(ctx: &PrecisionContext) -> Result<(Real, f64)> {
    let c = consts(ctx.working_bits);
    if c.omega_err > ctx.target_abs_error {
        return Err(Error::PrecisionUnachievable { target: ctx.target_abs_error, achieved: c.omega_err });
    }
    Ok((c.omega.with_prec(ctx.working_bits), c.omega_err))
}

/// z = (c/d)Ω, plus Ω/3 when `third` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticePoint {
    pub c: EisensteinInt,
    pub d: EisensteinInt,
    pub third: bool,
}

impl LatticePoint {
    pub fn new(c: EisensteinInt, d: EisensteinInt) -> Self {
        LatticePoint { c, d, third: false }
    }

    pub fn with_third(c: EisensteinInt, d: EisensteinInt) -> Self {
        LatticePoint { c, d, third: true }
    }

    pub fn rational(n: i64, d: i64) -> Self {
        Self::new(EisensteinInt::rational(n), EisensteinInt::rational(d))
    }

    /// z/Ω as (X + Yω)/N with integers.
    fn exact(&self) -> (i128, i128, i128) {
        let n = self.d.norm();
        let cd = self.c * self.d.conj();
        if self.third {
            (3 * cd.a as i128 + n, 3 * cd.b as i128, 3 * n)
        } else {
            (cd.a as i128, cd.b as i128, n)
        }
    }

    /// Reduce to (u₀, w) with z/Ω = u₀ + w, w ∈ Z[ω], u₀ nearest to 0.
    pub fn reduce(&self) -> Result<ReducedPoint> {
        if self.d.is_zero() {
            return Err(Error::PoleAtLatticePoint);
        }
        let (x, y, n) = self.exact();
        let (qx, qy) = (x.div_euclid(n), y.div_euclid(n));
        let (rx, ry) = (x - qx * n, y - qy * n);
        if rx == 0 && ry == 0 {
            return Err(Error::PoleAtLatticePoint);
        }
        let mut best = (i128::MAX, 0, 0, 0, 0);
        for i in 0..2 {
            for j in 0..2 {
                let (ux, uy) = (rx - i * n, ry - j * n);
                let nn = ux * ux - ux * uy + uy * uy;
                if nn < best.0 {
                    best = (nn, ux, uy, qx + i, qy + j);
                }
            }
        }
        let w = EisensteinInt::new(best.3 as i64, best.4 as i64);
        Ok(ReducedPoint { x: best.1, y: best.2, n, w })
    }
}

/// u₀ = (x + yω)/n with |u₀| ≤ 1/√3, and the lattice shift w.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReducedPoint {
    pub x: i128,
    pub y: i128,
    pub n: i128,
    pub w: EisensteinInt,
}

impl ReducedPoint {
    fn u0(&self, c: &AnalyticConsts) -> Complex {
        let p = c.prec();
        let n = Real::from_bigint(&self.n.into(), p);
        let x = Real::from_bigint(&self.x.into(), p);
        let y = Real::from_bigint(&self.y.into(), p);
        let re = (x - &y / 2i64) / &n;
        let im = &y * &c.sqrt3 / 2i64 / &n;
        Complex::new(re, im)
    }
}

#[derive(Clone, Debug)]
pub struct WeierstrassValues {
    pub wp: Complex,
    pub wp_prime: Complex,
    pub zeta: Complex,
    pub err: f64,
}

/// Series for ℘, ℘′, ζ at z = Ωu with |u| < 1; returns the error bound too.
fn series(u: &Complex, c: &AnalyticConsts, want_zeta: bool) -> (Complex, Complex, Complex, f64) {
    let p = c.prec();
    let z = u.scale(&c.omega);
    let r2 = u.norm_sqr().to_f64();
    assert!(r2 < 0.99, "series argument outside the disc of convergence");
    let z2 = &z * &z;
    let t = &(&z2 * &z2) * &z2;
    let tiny = 2f64.powi(-(c.bits as i32) - 8);
    let absz = z.abs_f64();
    // number of terms so that the bound 7(2k−1)r^{2k} falls below the target
    let mut jmax = 1;
    while jmax < c.laurent.len() {
        let k = 3 * (jmax + 1);
        if 7.0 * (2 * k) as f64 * r2.powi(k as i32) < tiny * r2 {
            break;
        }
        jmax += 1;
    }
    let mut tail = 0.0;
    for k in (3 * (jmax + 1)..).step_by(3).take(400) {
        tail += 7.0 * (2 * k - 1) as f64 * r2.powi(k as i32);
    }
    // Horner in t for the three series
    let mut sp = Complex::zero(p);
    let mut sd = Complex::zero(p);
    let mut sz = Complex::zero(p);
    for j in (1..=jmax).rev() {
        let cj = c.laurent(j);
        let k = (3 * j) as i64;
        sp = &(&sp * &t) + &Complex::from_real(cj.clone());
        sd = &(&sd * &t) + &Complex::from_real(cj * (2 * k - 2));
        if want_zeta {
            sz = &(&sz * &t) + &Complex::from_real(cj / (2 * k - 1));
        }
    }
    let z3 = &z2 * &z;
    let z4 = &z2 * &z2;
    let zi = z.recip();
    let zi2 = &zi * &zi;
    let wp = &zi2 + &(&sp * &z4);
    let wpp = &(&z3 * &sd) - &(&zi2 * &zi).scale_i(2);
    let zeta = if want_zeta { &zi - &(&(&z4 * &z) * &sz) } else { Complex::zero(p) };
    // tail: ℘ gets 1/|z|², ℘′ and ζ similar up to factors of the index
    let rounding = 2f64.powi(-(c.bits as i32)) * (jmax as f64 + 8.0) * (1.0 + 1.0 / (absz * absz * absz));
    let err = tail * (1.0 + 1.0 / (absz * absz * absz)) * (6.0 * jmax as f64 + 6.0) + rounding;
    (wp, wpp, zeta, err)
}

fn at_reduced(rp: &ReducedPoint, c: &AnalyticConsts, want_zeta: bool) -> WeierstrassValues {
    let u0 = rp.u0(c);
    let (wp, wp_prime, zeta0, err) = series(&u0, c, want_zeta);
    let zeta = if want_zeta {
        // ζ(Ωu₀ + Ωw) = ζ(Ωu₀) + η·w̄
        let wbar = Complex::from_eisenstein(rp.w.conj().a, rp.w.conj().b, c.prec());
        &zeta0 + &wbar.scale(&c.eta)
    } else {
        zeta0
    };
    WeierstrassValues { wp, wp_prime, zeta, err: err + c.omega_err * 10.0 }
}

fn finish(v: Complex, bits: usize) -> Complex {
    Complex::new(v.re.with_prec(bits), v.im.with_prec(bits))
}

fn check(err: f64, ctx: &PrecisionContext, scale: f64) -> Result<()> {
    if err > ctx.target_abs_error * scale.max(1.0) {
        Err(Error::PrecisionUnachievable { target: ctx.target_abs_error, achieved: err })
    } else {
        Ok(())
    }
}

/// ℘, ℘′, ζ at a rational point of ΩK.
pub fn weierstrass_values(z: &LatticePoint, ctx: &PrecisionContext) -> Result<WeierstrassValues> {
    let c = consts(ctx.working_bits);
    let rp = z.reduce()?;
    let v = at_reduced(&rp, &c, true);
    // relative scale: values near a pole are large
    let scale = v.wp.abs_f64().max(v.wp_prime.abs_f64());
    check(v.err, ctx, scale)?;
    Ok(WeierstrassValues {
        wp: finish(v.wp, ctx.working_bits),
        wp_prime: finish(v.wp_prime, ctx.working_bits),
        zeta: finish(v.zeta, ctx.working_bits),
        err: v.err,
    })
}

/// ℘ alone, skipping ζ.
pub fn wp_only(z: &LatticePoint, ctx: &PrecisionContext) -> Result<(Complex, f64)> {
    let c = consts(ctx.working_bits);
    let rp = z.reduce()?;
    let v = at_reduced(&rp, &c, false);
    Ok((v.wp, v.err))
}

/// ℘, ℘′, ζ at an arbitrary complex z (numerical reduction).
pub fn weierstrass_at(z: &Complex, ctx: &PrecisionContext) -> Result<WeierstrassValues> {
    let c = consts(ctx.working_bits);
    let p = c.prec();
    let zp = Complex::new(z.re.with_prec(p), z.im.with_prec(p));
    let u = zp.scale(&c.omega.recip());
    // u = X + Yω
    let yy = &u.im * 2i64 / &c.sqrt3;
    let xx = &u.re + &yy / 2i64;
    let (fx, fy) = (xx.floor().to_f64() as i64, yy.floor().to_f64() as i64);
    let mut best: Option<(f64, EisensteinInt, Complex)> = None;
    for i in 0..2 {
        for j in 0..2 {
            let w = EisensteinInt::new(fx + i, fy + j);
            let u0 = &u - &Complex::from_eisenstein(w.a, w.b, p);
            let n = u0.norm_sqr().to_f64();
            if best.as_ref().map_or(true, |b| n < b.0) {
                best = Some((n, w, u0));
            }
        }
    }
    let (n, w, u0) = best.unwrap();
    if n == 0.0 {
        return Err(Error::PoleAtLatticePoint);
    }
    let (wp, wp_prime, zeta0, err) = series(&u0, &c, true);
    let wbar = Complex::from_eisenstein(w.conj().a, w.conj().b, p);
    let zeta = &zeta0 + &wbar.scale(&c.eta);
    Ok(WeierstrassValues { wp, wp_prime, zeta, err: err + c.omega_err * 10.0 })
}

/// Raw series without reduction, for |z/Ω| < 1. Test hook for quasi-periodicity.
pub fn weierstrass_series_unreduced(u: &Complex, ctx: &PrecisionContext) -> WeierstrassValues {
    let c = consts(ctx.working_bits);
    let (wp, wp_prime, zeta, err) = series(u, &c, true);
    WeierstrassValues { wp, wp_prime, zeta, err }
}

/// E₁*(z) = ζ(z) − z̄·2π/(√3Ω²).
pub fn eisenstein_e1star(z: &LatticePoint, ctx: &PrecisionContext) -> Result<(Complex, f64)> {
    let c = consts(ctx.working_bits);
    let rp = z.reduce()?;
    let u0 = rp.u0(&c);
    let (_, _, zeta0, err) = series(&u0, &c, true);
    // the quasi-period and the z̄ correction cancel on the lattice part
    let corr = u0.conj().scale(&c.eta);
    let v = &zeta0 - &corr;
    let err = err + c.omega_err * 10.0;
    check(err, ctx, v.abs_f64())?;
    Ok((finish(v, ctx.working_bits), err))
}

/// The D-torsion point (℘(cΩ/D), ℘′(cΩ/D)).
pub fn torsion_point(c: &EisensteinInt, d: &EisensteinInt, ctx: &PrecisionContext) -> Result<(Complex, Complex, f64)> {
    if d.is_zero() || d.divides(c) {
        return Err(Error::PoleAtLatticePoint);
    }
    let v = weierstrass_values(&LatticePoint::new(*c, *d), ctx)?;
    Ok((v.wp, v.wp_prime, v.err))
}
