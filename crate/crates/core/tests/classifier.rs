use cmtwist::classifier::{density_estimate, enumerate_classified, is_cubic_special, primary_primes_up_to, PrimeKind};
use cmtwist::eisenstein::{is_prime_u64, multiplicative_order, EisensteinInt};

#[test]
fn cubic_special_norms_are_one_mod_27() {
    for c in enumerate_classified(50_000, PrimeKind::CubicSpecial) {
        assert_eq!((c.norm - 1) % 27, 0, "{c:?}");
    }
}

#[test]
fn cubic_special_decision_matches_the_order_test() {
    let pis = primary_primes_up_to(50_000);
    let mut congruent = 0;
    for p in (28..50_000u64).step_by(27).filter(|&p| is_prime_u64(p)) {
        let above: Vec<_> = pis.iter().filter(|pi| pi.norm() == p as i128).collect();
        assert_eq!(above.len(), 2, "{p}");
        for pi in above {
            let one_mod_27 = pi.congruent_mod(&EisensteinInt::ONE, 27);
            congruent += one_mod_27 as usize;
            let expected = one_mod_27 && multiplicative_order(&EisensteinInt::lambda3(), pi).unwrap() % 9 == 0;
            assert_eq!(is_cubic_special(pi).unwrap().qualifies, expected, "{pi}");
        }
    }
    assert!(congruent > 0);
}

#[test]
fn enumeration_is_sorted_and_deterministic() {
    for kind in [PrimeKind::SpecialSplit, PrimeKind::CubicSpecial] {
        let a = enumerate_classified(20_000, kind);
        assert!(a.windows(2).all(|w| w[0].norm <= w[1].norm));
        assert_eq!(a, enumerate_classified(20_000, kind));
        assert!(enumerate_classified(6, kind).is_empty());
    }
}

#[test]
fn density_guards_and_counts() {
    let small = density_estimate(30);
    assert!(small.congruent <= 1 && small.cubic_special <= small.congruent);
    let d = density_estimate(10_000);
    assert!(d.cubic_special >= 1 && d.congruent >= 1);
}
