//! Acceptance criteria 1-10, one PASS/FAIL line each.
//!
//! `ACCEPTANCE_ONLY=3,5` restricts the run. Criteria listed in `EXPECTED_FAILURES`
//! report FAIL without failing the target; the reason is printed with them.

use cmtwist::analytic::{
    consts, eisenstein_e1star, torsion_point, weierstrass_at, weierstrass_values, LatticePoint,
};
use cmtwist::classifier::{density_estimate, enumerate_classified, primary_primes_up_to, PrimeKind};
use cmtwist::eisenstein::{is_prime, is_prime_u64, residue_symbol_prime};
use cmtwist::lseries::{
    ap_char, ap_point_count, hecke_l_value, l_value_rational, TwistKind, TwistSpec,
};
use cmtwist::phi::{build_v, phi_from_terms, phi_from_wp, phi_terms, verify_valuation_bounds, PhiSpec};
use cmtwist::table::{range_rows, Over, TableRow};
use cmtwist::{Complex, EisensteinInt, KElement, PrecisionContext, Real};
use cmtwist_cli::commands::{evaluate_rows, load_fixtures, model_checks};
use cmtwist_cli::config::RunConfig;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

/// Tolerances and budgets.
const RESIDUAL: f64 = 1e-20;
const IDENTITY_TOL: f64 = 1e-20;
const BASE_BUDGET_S: f64 = 5.0;
const ANCHOR_BUDGET_S: f64 = 60.0;
const TABLE_BUDGET_S: f64 = 1800.0;
const HECKE_BUDGET_S: f64 = 300.0;
const MIN_TABLE_ROWS: usize = 40;
const DENSITY_BOUND: u64 = 1_000_000;
const DENSITY_TOL: f64 = 0.10;

const EXPECTED_FAILURES: [(u32, &str); 2] = [
    (
        6,
        "the stated signs of p'(W/3), zeta(W/3) and E1*(W/3) belong to 2W/3; \
         on the real lattice p decreases on (0, W/2), so p'(W/3) = -9 and E1*(W/3) = +1, \
         which is also the value forced by L(E,1)/W = E1*(W/3)/3 = 1/3",
    ),
    (
        8,
        "55+33w = 11(5+3w) is not prime and is not 1 mod 9, so its cubic twist has odd sign \
         and L = 0; no prime of norm <= 20000 with the stated local properties has values \
         of absolute value 3 or 289",
    ),
];

struct Report {
    pass: bool,
    detail: String,
}

impl Report {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Report { pass, detail: detail.into() }
    }
}

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

fn rational(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn spec(kind: TwistKind, d: i64) -> TwistSpec {
    TwistSpec::new(kind, EisensteinInt::rational(d)).unwrap()
}

fn c1_base_value() -> Report {
    let start = Instant::now();
    let v = l_value_rational(&TwistSpec::untwisted(), &ctx()).unwrap();
    let third = Complex::new(Real::from_ratio(1, 3, 160), Real::zero(160));
    let residual = (&v.estimate - &third).abs_f64();
    let secs = start.elapsed().as_secs_f64();
    let ok = v.recognized == Some(KElement::from_ratios(1, 3, 0, 1)) && residual < RESIDUAL && secs < BASE_BUDGET_S;
    Report::new(ok, format!("L(E,1)/W = {:?}, residual {residual:.1e}, {secs:.2} s", v.recognized.map(|x| x.to_string())))
}

fn c2_sharpness() -> Report {
    let mut ok = true;
    let mut parts = Vec::new();
    for (kind, d, want) in [(TwistKind::Quadratic, 157, 12), (TwistKind::Cubic, 757, 9)] {
        let start = Instant::now();
        let got = l_value_rational(&spec(kind, d), &ctx()).ok().and_then(|v| v.recognized_rational());
        let secs = start.elapsed().as_secs_f64();
        ok &= got == Some(rational(want)) && secs < ANCHOR_BUDGET_S;
        parts.push(format!("{kind} {d} -> {} ({secs:.2} s)", got.map_or("none".into(), |x| x.to_string())));
    }
    Report::new(ok, parts.join(", "))
}

fn c3_table() -> Report {
    let start = Instant::now();
    let cfg = RunConfig { jobs: 8, ..RunConfig::default() };
    let f = load_fixtures(&cfg.fixtures).unwrap();
    let results = evaluate_rows(&f.rows, &cfg, &ctx());
    let secs = start.elapsed().as_secs_f64();
    let matched = |k: TwistKind| results.iter().filter(|r| r.kind == k && r.matches == Some(true)).count();
    let mismatched: Vec<String> =
        results.iter().filter(|r| r.matches != Some(true)).map(|r| format!("{} {}", r.kind, r.d)).collect();
    let anchor = |kind: TwistKind, d: &str, want: i64| {
        results.iter().any(|r| r.kind == kind && r.d == d && r.matches == Some(true) && r.expected == Some(want))
    };
    let anchors = anchor(TwistKind::Quadratic, "3889", 0)
        && anchor(TwistKind::Quadratic, "997", 0)
        && anchor(TwistKind::Cubic, "19*37", 27)
        && anchor(TwistKind::Cubic, "19^2*37^2*163^2", 2916);
    let (q, c) = (matched(TwistKind::Quadratic), matched(TwistKind::Cubic));
    let ok = q >= MIN_TABLE_ROWS && c >= MIN_TABLE_ROWS && mismatched.is_empty() && anchors && secs < TABLE_BUDGET_S;
    let mut detail = format!(
        "{q} quadratic and {c} cubic rows reproduced, {} mismatches{}, anchors {}, {secs:.0} s; excluded: {}",
        mismatched.len(),
        if mismatched.is_empty() { String::new() } else { format!(" ({})", mismatched.join("; ")) },
        if anchors { "ok" } else { "missing" },
        f.excluded.join(" | ")
    );
    detail = detail.replace('\n', " ");
    Report::new(ok, detail)
}

fn c4_valuation_theorems() -> Report {
    let cfg = RunConfig::default();
    let ctx = ctx();
    let mut rows = range_rows(TwistKind::Quadratic, 3000);
    let singles: Vec<u64> = range_rows(TwistKind::Quadratic, 100_000 / 157).iter().map(|r| r.d.parse().unwrap()).collect();
    let mut products = 0;
    for (i, &p) in singles.iter().enumerate() {
        for &q in &singles[i + 1..] {
            if p * q <= 100_000 {
                rows.push(TableRow { kind: TwistKind::Quadratic, pi: None, d: format!("{p}*{q}"), l_alg: 0, over: Over::Q });
                products += 1;
            }
        }
    }
    let cubic_rows = range_rows(TwistKind::Cubic, 3000);
    let n_cubic_rows = cubic_rows.len();
    rows.extend(cubic_rows);
    let results = evaluate_rows(&rows, &cfg, &ctx);
    let mut violations = Vec::new();
    let mut nonzero = 0;
    for r in &results {
        if let Some(e) = &r.error {
            violations.push(format!("{} {}: {e}", r.kind, r.d));
        } else if let Some(o) = r.ord_p {
            nonzero += 1;
            if o < r.bound {
                violations.push(format!("{} {}: ord {o} < {}", r.kind, r.d, r.bound));
            }
        }
    }
    // cubic-special primes that are not rational: the bound on the primitive value over K
    let special: Vec<EisensteinInt> = enumerate_classified(3000, PrimeKind::CubicSpecial)
        .iter()
        .filter_map(|c| match c.prime {
            cmtwist::classifier::PrimeRef::Element(z) => Some(z),
            _ => None,
        })
        .collect();
    for pi in &special {
        match PhiSpec::new(TwistKind::Cubic, &[*pi]).and_then(|s| verify_valuation_bounds(&s, &ctx)) {
            Ok(rep) if rep.all_hold() => {}
            Ok(_) => violations.push(format!("cubic {pi}: bound check failed")),
            Err(e) => violations.push(format!("cubic {pi}: {e}")),
        }
    }
    Report::new(
        violations.is_empty(),
        format!(
            "{} quadratic primes, {products} products, {n_cubic_rows} rational cubic D, {} cubic-special pi; \
             {nonzero} nonvanishing values; violations: {}",
            results.len() - products - n_cubic_rows,
            special.len(),
            if violations.is_empty() { "none".into() } else { violations.join("; ") }
        ),
    )
}

fn c5_path_equivalence() -> Report {
    let ctx = ctx();
    let start = Instant::now();
    let mut checked = 0;
    let mut failures = Vec::new();
    for pi in primary_primes_up_to(10_000) {
        for kind in [TwistKind::Quadratic, TwistKind::Cubic] {
            let Ok(spec) = PhiSpec::new(kind, &[pi]) else { continue };
            let terms = match phi_terms(&spec, &ctx) {
                Ok(t) => t,
                Err(e) => {
                    failures.push(format!("{kind} {pi}: {e}"));
                    continue;
                }
            };
            let chars = match kind {
                TwistKind::Quadratic => vec![vec![0]],
                TwistKind::Cubic => spec.characters(),
            };
            for chi in chars {
                let l = phi_from_terms(&spec, &chi, &terms, ctx.working_bits + 32);
                match phi_from_wp(&spec, Some(&chi), &ctx) {
                    Ok(w) => {
                        let diff = (&l.estimate - &w.estimate).abs_f64();
                        if diff > l.error + w.error + ctx.target_abs_error {
                            failures.push(format!("{kind} {pi} chi={chi:?}: diff {diff:.1e}"));
                        }
                    }
                    Err(e) => failures.push(format!("{kind} {pi} chi={chi:?}: {e}")),
                }
                checked += 1;
            }
        }
    }
    Report::new(
        failures.is_empty(),
        format!(
            "{checked} (spec, character) pairs with norm <= 10^4, {} failures{} ({:.0} s)",
            failures.len(),
            if failures.is_empty() { String::new() } else { format!(": {}", failures.iter().take(5).cloned().collect::<Vec<_>>().join("; ")) },
            start.elapsed().as_secs_f64()
        ),
    )
}

fn c6_analytic_identities() -> Report {
    let ctx = PrecisionContext::default();
    let p = ctx.working_bits + 32;
    let c = consts(ctx.working_bits);
    let third = weierstrass_values(&LatticePoint::rational(1, 3), &ctx).unwrap();
    let (e1, _) = eisenstein_e1star(&LatticePoint::rational(1, 3), &ctx).unwrap();
    let int = |n: i64| Complex::from_i64(n, p);
    // 2π/(3√3Ω)
    let base = &(&Real::pi(p) * 2i64) / &(&(&c.sqrt3 * 3i64) * &c.omega);
    let zeta_target = Complex::from_real(&base - &Real::from_i64(1, p));
    let dist = |a: &Complex, b: &Complex| (a - b).abs_f64();
    let literal = [
        ("p(W/3) = 3", dist(&third.wp, &int(3))),
        ("p'(W/3) = 9", dist(&third.wp_prime, &int(9))),
        ("zeta(W/3) = 2pi/(3 sqrt3 W) - 1", dist(&third.zeta, &zeta_target)),
        ("E1*(W/3) = -1", dist(&e1, &int(-1))),
    ];
    // quasi-periodicity: ζ(z + Ω) − ζ(z) = 2π/(√3Ω), ζ(z + ωΩ) − ζ(z) = ω̄·2π/(√3Ω)
    let eta = &(&Real::pi(p) * 2i64) / &(&c.sqrt3 * &c.omega);
    let omega_c = Complex::new(Real::from_ratio(-1, 2, p), &c.sqrt3 / 2i64);
    let om = Complex::from_real(c.omega.clone());
    let mut quasi: f64 = 0.0;
    for (x, y) in [(0.123, 0.071), (0.31, -0.2), (-0.05, 0.44)] {
        let z = Complex::new(Real::from_f64(x, p), Real::from_f64(y, p)).scale(&c.omega);
        let z0 = weierstrass_at(&z, &ctx).unwrap().zeta;
        let z1 = weierstrass_at(&(&z + &om), &ctx).unwrap().zeta;
        let z2 = weierstrass_at(&(&z + &(&omega_c * &om)), &ctx).unwrap().zeta;
        let want1 = Complex::from_real(eta.clone());
        let want2 = omega_c.conj().scale(&eta);
        quasi = quasi.max(dist(&(&z1 - &z0), &want1)).max(dist(&(&z2 - &z0), &want2));
    }
    let mut parts: Vec<String> =
        literal.iter().map(|(n, d)| format!("{n}: {}", if *d < IDENTITY_TOL { "ok".into() } else { format!("off by {d:.2e}") })).collect();
    parts.push(format!("quasi-periodicity: {}", if quasi < IDENTITY_TOL { "ok".into() } else { format!("off by {quasi:.2e}") }));
    // the values the code computes: ℘′(Ω/3) = −9, E₁*(Ω/3) = +1, and the stated values at 2Ω/3
    let two_thirds = weierstrass_values(&LatticePoint::rational(2, 3), &ctx).unwrap();
    let (e2, _) = eisenstein_e1star(&LatticePoint::rational(2, 3), &ctx).unwrap();
    let corrected = dist(&third.wp_prime, &int(-9)) < IDENTITY_TOL
        && dist(&e1, &int(1)) < IDENTITY_TOL
        && dist(&two_thirds.wp_prime, &int(9)) < IDENTITY_TOL
        && dist(&e2, &int(-1)) < IDENTITY_TOL;
    parts.push(format!("sign-corrected values at W/3 and stated values at 2W/3: {}", if corrected { "ok" } else { "off" }));
    let ok = literal.iter().all(|(_, d)| *d < IDENTITY_TOL) && quasi < IDENTITY_TOL;
    Report::new(ok, parts.join("; "))
}

/// Reduction O_K → F_p at the prime π above a split p: ω ↦ r with π | ω − r.
fn reduction(pi: &EisensteinInt) -> (u64, impl Fn(&EisensteinInt) -> u64) {
    let p = pi.norm() as u64;
    let r = (2..p).find(|&r| (r * r + r + 1) % p == 0 && (pi.a as i128 + pi.b as i128 * r as i128).rem_euclid(p as i128) == 0).unwrap();
    (p, move |z: &EisensteinInt| ((z.a as i128 + z.b as i128 * r as i128).rem_euclid(p as i128)) as u64)
}

fn powmod(a: u64, mut e: u64, m: u64) -> u64 {
    let (mut acc, mut b, m) = (1u128, a as u128 % m as u128, m as u128);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc as u64
}

/// 4x³ − 27 and the division polynomials of y² = x³ − 27/4 (x = ℘, y = ℘′/2),
/// evaluated by the standard recurrence.
fn division_value(n: u32, x: &Complex, y: &Complex) -> Complex {
    let p = x.prec();
    let c = |k: i64| Complex::from_i64(k, p);
    let b = Complex::from_real(Real::from_ratio(-27, 4, p));
    let x2 = x * x;
    let x3 = &x2 * x;
    let x4 = &x2 * &x2;
    let x6 = &x3 * &x3;
    // ψ₃ = 3x⁴ + 12bx
    let mut psi: Vec<Complex> = vec![c(0), c(1), &c(2) * y, &(&c(3) * &x4) + &(&(&c(12) * &b) * x)];
    // ψ₄ = 4y(x⁶ + 20bx³ − 8b²)
    let inner = &(&x6 + &(&(&c(20) * &b) * &x3)) - &(&c(8) * &(&b * &b));
    psi.push(&(&c(4) * y) * &inner);
    let cube = |z: &Complex| z * &(z * z);
    while psi.len() <= n as usize {
        let k = psi.len();
        let m = k / 2;
        let v = if k % 2 == 1 {
            &(&psi[m + 2] * &cube(&psi[m])) - &(&psi[m - 1] * &cube(&psi[m + 1]))
        } else {
            let t = &(&psi[m + 2] * &(&psi[m - 1] * &psi[m - 1])) - &(&psi[m - 2] * &(&psi[m + 1] * &psi[m + 1]));
            &(&psi[m] * &t) / &(&c(2) * y)
        };
        psi.push(v);
    }
    psi[n as usize].clone()
}

fn c7_oracles() -> Report {
    let mut parts = Vec::new();
    let mut ok = true;

    // ap from the character against point counts
    let samples = [
        (TwistKind::Quadratic, 5),
        (TwistKind::Quadratic, 157),
        (TwistKind::Quadratic, -7),
        (TwistKind::Cubic, 2),
        (TwistKind::Cubic, 19),
        (TwistKind::Cubic, -5),
    ];
    let mut compared = 0;
    let mut bad = Vec::new();
    for (kind, d) in samples {
        let s = spec(kind, d);
        let lam = d.pow(kind.exponent());
        for p in (5..10_000u64).filter(|&p| p % 3 == 1 && is_prime_u64(p) && d.unsigned_abs() % p != 0) {
            compared += 1;
            if ap_char(&s, p).ok() != ap_point_count(-27 * lam, p).ok() {
                bad.push(format!("{kind} {d} p={p}"));
            }
        }
    }
    ok &= bad.is_empty();
    parts.push(format!("a_p: {compared} split primes, {} disagreements", bad.len()));

    // Euler's criterion through the reduction map, and cubic reciprocity
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let primes: Vec<EisensteinInt> =
        primary_primes_up_to(20_000).into_iter().filter(|z| z.b != 0 && is_prime(z)).collect();
    let mut euler_bad = 0;
    for _ in 0..300 {
        let pi = primes[rng.gen_range(0..primes.len())];
        let (p, red) = reduction(&pi);
        let m = [2u32, 3, 6][rng.gen_range(0..3)];
        let a = EisensteinInt::new(rng.gen_range(-500..500), rng.gen_range(-500..500));
        if red(&a) == 0 {
            continue;
        }
        let sym = residue_symbol_prime(&a, &pi, m).unwrap();
        if red(&sym.as_unit()) != powmod(red(&a), (p - 1) / m as u64, p) {
            euler_bad += 1;
        }
    }
    let mut recip_bad = 0;
    for _ in 0..300 {
        let (x, y) = (primes[rng.gen_range(0..primes.len())], primes[rng.gen_range(0..primes.len())]);
        let (x, y) = (x.primary_mod3().unwrap(), y.primary_mod3().unwrap());
        if x.norm() == y.norm() {
            continue;
        }
        if residue_symbol_prime(&x, &y, 3).unwrap() != residue_symbol_prime(&y, &x, 3).unwrap() {
            recip_bad += 1;
        }
    }
    ok &= euler_bad == 0 && recip_bad == 0;
    parts.push(format!("Euler criterion 300 cases: {euler_bad} failures; cubic reciprocity 300 cases: {recip_bad} failures"));

    // torsion x-coordinates are roots of the division polynomials
    let ctx = PrecisionContext::bits(192);
    let mut worst: f64 = 0.0;
    for n in [2i64, 3, 5, 7] {
        for c in [EisensteinInt::ONE, EisensteinInt::OMEGA, EisensteinInt::new(1, 2), EisensteinInt::new(2, 1)] {
            let d = EisensteinInt::rational(n);
            if d.divides(&c) {
                continue;
            }
            let (x, yp, _) = torsion_point(&c, &d, &ctx).unwrap();
            let y = yp.scale(&Real::from_ratio(1, 2, yp.prec()));
            let prec = x.prec();
            let f = |x: &Complex| {
                if n == 2 {
                    &(&Complex::from_i64(4, prec) * &(x * &(x * x))) - &Complex::from_i64(27, prec)
                } else {
                    division_value(n as u32, x, &y)
                }
            };
            // distance to the nearest root ≈ |f/f′|
            let h = Complex::from_real(Real::from_f64(1e-30, prec));
            let fx = f(&x);
            let deriv = &(&f(&(&x + &h)) - &f(&(&x - &h))) / &(&h + &h);
            worst = worst.max((&fx / &deriv).abs_f64());
        }
    }
    ok &= worst < IDENTITY_TOL;
    parts.push(format!("torsion x vs division polynomial roots for D in 2,3,5,7: max distance {worst:.1e}"));
    Report::new(ok, parts.join("; "))
}

fn c8_hecke_remark() -> Report {
    let start = Instant::now();
    let ctx = ctx();
    let pi = EisensteinInt::new(55, 33);
    let mut parts = vec![format!("55+33w prime: {}", is_prime(&pi))];
    let mut values = Vec::new();
    for (label, d) in [("D=pi", pi), ("D=pi^2", pi * pi)] {
        match TwistSpec::new(TwistKind::Cubic, d).and_then(|s| hecke_l_value(&s, &[], &ctx)) {
            Ok(v) => {
                let shown = if v.vanishes { "0".to_string() } else { v.recognized.as_ref().map_or("unrecognized".into(), |x| x.to_string()) };
                parts.push(format!("{label}: normalized L(psi-bar_{{D^2}},1) = {shown}"));
                values.push(v.recognized.map(|x| x.norm()));
            }
            Err(e) => {
                parts.push(format!("{label}: {e}"));
                values.push(None);
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    // accept 3 and 289 as absolute values: N(x) = 9 and 289²
    let ok = values.len() == 2
        && values.iter().zip([9i64, 289 * 289]).all(|(v, want)| v.as_ref() == Some(&rational(want)))
        && secs < HECKE_BUDGET_S;
    parts.push(format!("{secs:.1} s"));
    Report::new(ok, parts.join("; "))
}

fn c9_models() -> Report {
    match model_checks() {
        Ok(checks) => {
            let ok = checks.iter().all(|c| c.holds);
            let detail = checks.iter().map(|c| format!("{}: {}", c.check, if c.holds { "ok" } else { "FAILED" })).collect::<Vec<_>>().join("; ");
            Report::new(ok, detail)
        }
        Err(e) => Report::new(false, e.to_string()),
    }
}

fn c10_structure() -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(48);
    let pool: Vec<EisensteinInt> = primary_primes_up_to(3000)
        .into_iter()
        .filter(|z| (z.norm() - 1) % 27 == 0)
        .collect();
    let mut checked = 0;
    let mut failures = Vec::new();
    while checked < 50 {
        let n = rng.gen_range(1..=2);
        let mut primes: Vec<EisensteinInt> = (0..n).map(|_| pool[rng.gen_range(0..pool.len())]).collect();
        primes.dedup();
        if primes.len() == 2 && primes[0].norm() * primes[1].norm() > 10_000_000 {
            continue;
        }
        let Ok(spec) = PhiSpec::new(TwistKind::Cubic, &primes) else { continue };
        for chi in spec.characters() {
            let v = build_v(&spec, Some(&chi)).unwrap();
            let size = v.members.len();
            if size % 9 != 0 || !v.closed_under_omega() || !v.closed_under_negation() {
                failures.push(format!("D={} chi={chi:?}: #V={size}", spec.d));
            }
            if chi.iter().all(|&c| c == 0) && (size == 0 || v.transversal_size % size != 0) {
                failures.push(format!("D={}: #C={} not a multiple of #V={size}", spec.d, v.transversal_size));
            }
        }
        checked += 1;
    }
    let d = density_estimate(DENSITY_BOUND);
    let freq = d.frequency().unwrap_or(0.0);
    let dens_ok = (freq - 2.0 / 3.0).abs() <= DENSITY_TOL;
    Report::new(
        failures.is_empty() && dens_ok,
        format!(
            "50 random cubic D: {} failures; cubic-special density {}/{} = {freq:.4} at 10^6 (target 2/3 +- {DENSITY_TOL})",
            failures.len(),
            d.cubic_special,
            d.congruent
        ),
    )
}

fn main() {
    let only: Option<Vec<u32>> =
        std::env::var("ACCEPTANCE_ONLY").ok().map(|s| s.split(',').filter_map(|t| t.trim().parse().ok()).collect());
    let criteria: [(u32, &str, fn() -> Report); 10] = [
        (1, "base value L(E,1)/W = 1/3", c1_base_value),
        (2, "sharpness anchors 157 -> 12, 757 -> 9", c2_sharpness),
        (3, "table reproduction", c3_table),
        (4, "valuation theorems at desk scale", c4_valuation_theorems),
        (5, "path equivalence", c5_path_equivalence),
        (6, "analytic identities at W/3", c6_analytic_identities),
        (7, "oracle suites", c7_oracles),
        (8, "Hecke path for 55+33w", c8_hecke_remark),
        (9, "field-theoretic models", c9_models),
        (10, "structure of V and cubic-special density", c10_structure),
    ];
    let mut unexpected = 0;
    for (id, name, f) in criteria {
        if only.as_ref().is_some_and(|o| !o.contains(&id)) {
            continue;
        }
        let start = Instant::now();
        let r = f();
        let secs = start.elapsed().as_secs_f64();
        let expected = EXPECTED_FAILURES.iter().find(|(i, _)| *i == id).map(|(_, why)| *why);
        let status = if r.pass { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {status} {name} [{secs:.1} s]: {}", r.detail);
        match (r.pass, expected) {
            (false, Some(why)) => println!("             expected failure: {why}"),
            (false, None) => unexpected += 1,
            (true, Some(_)) => println!("             note: listed as an expected failure but passed"),
            (true, None) => {}
        }
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected failure(s)");
        std::process::exit(1);
    }
}
