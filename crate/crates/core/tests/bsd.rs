use cmtwist::bsd::{bsd_report, bsd_report_from_value, tamagawa, torsion_order, Kodaira};
use cmtwist::lseries::{TwistKind, TwistSpec};
use cmtwist::{EisensteinInt, Error, PrecisionContext};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Tate's algorithm at an odd prime for y² = x³ + a2x² + a4x + a6, written from the
/// textbook steps and kept independent of the library.
fn tate(a2: i128, a4: i128, a6: i128, p: i128) -> (&'static str, u32) {
    let (mut a2, mut a4, mut a6) = (a2, a4, a6);
    let m = |x: i128, k: u32| x.rem_euclid(p.pow(k)) == 0;
    let sq = |c: i128| (0..p).any(|y| (y * y - c).rem_euclid(p) == 0);
    loop {
        let disc = -4 * a2.pow(3) * a6 + a2 * a2 * a4 * a4 + 18 * a2 * a4 * a6 - 4 * a4.pow(3) - 27 * a6 * a6;
        if !m(disc, 1) {
            return ("I0", 1);
        }
        // singular point to (0, 0)
        let r = (0..p)
            .find(|&r| m(r * r * r + a2 * r * r + a4 * r + a6, 1) && m(3 * r * r + 2 * a2 * r + a4, 1))
            .unwrap();
        a6 += r * r * r + a2 * r * r + a4 * r;
        a4 += 3 * r * r + 2 * a2 * r;
        a2 += 3 * r;
        if !m(a2, 1) {
            let mut n = 0;
            let mut d = disc;
            while m(d, 1) {
                d /= p;
                n += 1;
            }
            return ("In", if sq(a2) { n } else if n % 2 == 0 { 2 } else { 1 });
        }
        if !m(a6, 2) {
            return ("II", 1);
        }
        let b8 = 4 * a2 * a6 - a4 * a4;
        if !m(b8, 3) {
            return ("III", 2);
        }
        if !m(a6, 3) {
            return ("IV", if sq(a6 / (p * p)) { 3 } else { 1 });
        }
        let (c2, c1, c0) = (a2 / p, a4 / (p * p), a6 / (p * p * p));
        let f = |t: i128| t * t * t + c2 * t * t + c1 * t + c0;
        let df = |t: i128| 3 * t * t + 2 * c2 * t + c1;
        let roots: Vec<i128> = (0..p).filter(|&t| m(f(t), 1)).collect();
        let multiple: Vec<i128> = roots.iter().copied().filter(|&t| m(df(t), 1)).collect();
        if multiple.is_empty() {
            return ("I0*", 1 + roots.len() as u32);
        }
        let t = multiple[0];
        if !m(6 * t + 2 * c2, 1) {
            return ("Im*", 0);
        }
        // triple root: x -> x + p t
        let s = p * t;
        a6 += s * s * s + a2 * s * s + a4 * s;
        a4 += 3 * s * s + 2 * a2 * s;
        a2 += 3 * s;
        let e = a6 / p.pow(4);
        if !m(e, 1) {
            return ("IV*", if sq(e) { 3 } else { 1 });
        }
        if !m(a4, 4) {
            return ("III*", 2);
        }
        if !m(a6, 6) {
            return ("II*", 1);
        }
        a2 /= p * p;
        a4 /= p.pow(4);
        a6 /= p.pow(6);
    }
}

fn kodaira_name(k: Kodaira) -> &'static str {
    match k {
        Kodaira::I0Star => "I0*",
        Kodaira::IV => "IV",
        Kodaira::IVStar => "IV*",
        Kodaira::IIIStar => "III*",
        Kodaira::IIStar => "II*",
    }
}

fn spec(kind: TwistKind, d: i64) -> TwistSpec {
    TwistSpec::new(kind, EisensteinInt::rational(d)).unwrap()
}

fn a6(kind: TwistKind, d: i64) -> i128 {
    -432 * (d as i128).pow(kind.exponent())
}

#[test]
fn oracle_sanity() {
    // 27a1 is IV* at 3 with c = 3
    assert_eq!(tate(0, 0, -432, 5), ("I0", 1));
    assert_eq!(tate(0, 0, -432, 3), ("IV*", 3));
    // y² = x³ + x² + 4 has Δ = −16·(27·16 + 16) = −7168 = −2¹⁰·7, split I1 at 7
    assert_eq!(tate(1, 0, 4, 7), ("In", 1));
    // y² = x³ − 5²·x has additive reduction I0* at 5 with full 2-torsion
    assert_eq!(tate(0, -25, 0, 5), ("I0*", 4));
}

#[test]
fn local_tests_match_tate_on_random_specs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 40 {
        let kind = if rng.gen_bool(0.5) { TwistKind::Quadratic } else { TwistKind::Cubic };
        let d: i64 = rng.gen_range(-400..400);
        let Ok(s) = TwistSpec::new(kind, EisensteinInt::rational(d)) else { continue };
        if d.abs() <= 1 {
            continue;
        }
        let mut qs = vec![3u64];
        qs.extend(num_prime::nt_funcs::factorize64(d.unsigned_abs()).keys().copied());
        for q in qs.into_iter().filter(|&q| q != 2) {
            let local = tamagawa(&s, q).unwrap();
            let (name, c) = tate(0, 0, a6(kind, d), q as i128);
            assert_eq!((kodaira_name(local.kodaira), local.c_q), (name, c), "{kind} D={d} q={q}");
        }
        checked += 1;
    }
}

#[test]
fn tamagawa_numbers_of_sharp_twists() {
    let q157 = tamagawa(&spec(TwistKind::Quadratic, 157), 157).unwrap();
    assert_eq!((q157.kodaira, q157.c_q), (Kodaira::I0Star, 4));
    let three = tamagawa(&spec(TwistKind::Quadratic, 157), 3).unwrap();
    assert_eq!((three.kodaira, three.c_q), (Kodaira::IVStar, 3));
    let c757 = spec(TwistKind::Cubic, 757);
    let q = tamagawa(&c757, 757).unwrap();
    assert_eq!((q.kodaira, q.c_q), (Kodaira::IV, 3));
    assert_eq!(tamagawa(&c757, 3).unwrap().c_q, 3);
    assert!(matches!(tamagawa(&c757, 5), Err(Error::GoodReduction(5))));
}

#[test]
fn torsion_orders() {
    assert_eq!(torsion_order(&TwistSpec::untwisted()).unwrap(), 3);
    assert_eq!(torsion_order(&spec(TwistKind::Cubic, 2)).unwrap(), 2);
    for d in [157, 433, 5, -7] {
        assert_eq!(torsion_order(&spec(TwistKind::Quadratic, d)).unwrap(), 1, "{d}");
    }
    for d in [7, 73, 757, -5] {
        assert_eq!(torsion_order(&spec(TwistKind::Cubic, d)).unwrap(), 1, "{d}");
    }
}

/// Brute-force torsion oracle: the gcd of #E(F_p) bounds the torsion, and a point of
/// order 2 or 3 is found by direct search.
#[test]
fn torsion_agrees_with_reduction_counts() {
    for (kind, d) in [(TwistKind::Cubic, 2), (TwistKind::Cubic, 7), (TwistKind::Quadratic, 5), (TwistKind::Cubic, 19)] {
        let a = a6(kind, d);
        let mut g = 0u64;
        for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43] {
            if (d as i128).rem_euclid(p as i128) == 0 {
                continue;
            }
            let pi = p as i128;
            let mut n = 1u64;
            for x in 0..pi {
                for y in 0..pi {
                    if (y * y - x * x * x - a).rem_euclid(pi) == 0 {
                        n += 1;
                    }
                }
            }
            g = num_integer::gcd(g, n);
        }
        let t = torsion_order(&spec(kind, d)).unwrap() as u64;
        assert_eq!(g % t, 0, "{kind} {d}");
        assert!(g <= 6);
    }
}

#[test]
fn reports_for_table_values() {
    let r = bsd_report_from_value(&spec(TwistKind::Quadratic, 433), 2, BigRational::from_integer(48.into())).unwrap();
    assert_eq!(r.ord_l, Rational64::from_integer(4));
    assert_eq!(r.ord_rhs_local, Rational64::from_integer(2));
    assert_eq!(r.predicted_sha_ord, Rational64::from_integer(2));
    assert!(!r.tight);
    let r = bsd_report_from_value(&spec(TwistKind::Cubic, 73), 3, BigRational::from_integer(9.into())).unwrap();
    assert_eq!(r.predicted_sha_ord, Rational64::from_integer(0));
    assert!(r.tight);
    assert!(r.warning.is_none());
    let neg = bsd_report_from_value(&spec(TwistKind::Cubic, 73), 3, BigRational::new(BigInt::from(1), BigInt::from(3))).unwrap();
    assert!(neg.warning.is_some());
}

#[test]
fn computed_reports() {
    let ctx = PrecisionContext::default();
    let r = bsd_report(&spec(TwistKind::Quadratic, 157), 2, &ctx).unwrap();
    assert_eq!(r.l_alg, BigRational::from_integer(12.into()));
    assert_eq!(r.predicted_sha_ord, Rational64::from_integer(0));
    assert!(r.tight);
    let r = bsd_report(&spec(TwistKind::Cubic, 757), 3, &ctx).unwrap();
    assert!(r.tight);
    assert!(matches!(bsd_report(&spec(TwistKind::Cubic, 7), 3, &ctx), Err(Error::VanishingLValue)));
}

#[test]
fn local_valuation_invariants() {
    use cmtwist::bsd::local_valuation;
    // products of special split primes: 157, 433, 277, 1009, ...
    for d in [157i64, 433, 157 * 433] {
        let s = spec(TwistKind::Quadratic, d);
        let (_, _, v) = local_valuation(&s, 2).unwrap();
        assert_eq!(v, 2 * s.k_rational() as i64, "{d}");
    }
    for d in [73i64, 757, 19 * 37, 109] {
        let s = spec(TwistKind::Cubic, d);
        if d.rem_euclid(9) != 1 {
            continue;
        }
        let (_, _, v) = local_valuation(&s, 3).unwrap();
        assert_eq!(v, s.k_rational() as i64 + 1, "{d}");
    }
}
