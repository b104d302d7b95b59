use cmtwist::classifier::primary_primes_up_to;
use cmtwist::eisenstein::{factor, residue_symbol, residue_symbol_prime, EisensteinInt, ResidueRing, ResidueSymbolValue};
use proptest::prelude::*;
use std::sync::OnceLock;

fn primes() -> &'static [EisensteinInt] {
    static P: OnceLock<Vec<EisensteinInt>> = OnceLock::new();
    P.get_or_init(|| primary_primes_up_to(10_000).into_iter().filter(|p| p.b != 0).collect())
}

fn elem() -> impl Strategy<Value = EisensteinInt> {
    (-300i64..300, -300i64..300).prop_map(|(a, b)| EisensteinInt::new(a, b))
}

fn nonzero() -> impl Strategy<Value = EisensteinInt> {
    elem().prop_filter("nonzero", |z| !z.is_zero())
}

fn prime() -> impl Strategy<Value = EisensteinInt> {
    (0..primes().len()).prop_map(|i| primes()[i])
}

/// Odd, prime to 3, built from a few split primes.
fn modulus() -> impl Strategy<Value = EisensteinInt> {
    prop::collection::vec(0..200usize, 1..3).prop_map(|ix| ix.iter().fold(EisensteinInt::ONE, |acc, &i| acc * primes()[i]))
}

fn sextic_unit(m: u32, x: &EisensteinInt, ring: &ResidueRing) -> Option<u32> {
    (0..m).find(|&k| ring.reduce(&ResidueSymbolValue { exponent: k, m }.as_unit()) == *x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn norm_is_multiplicative(x in elem(), y in elem()) {
        prop_assert_eq!((x * y).norm(), x.norm() * y.norm());
        prop_assert!(x.norm() >= 0);
        prop_assert_eq!(x.norm() == 0, x.is_zero());
    }

    #[test]
    fn factor_round_trip(z in nonzero()) {
        let f = factor(&z).unwrap();
        prop_assert!(f.unit.is_unit());
        prop_assert_eq!(f.product(), z);
        for (p, _) in &f.primes {
            prop_assert!(p.value == EisensteinInt::lambda3() || p.value.congruent_mod(&EisensteinInt::ONE, 3));
        }
    }

    #[test]
    fn euler_criterion(a in nonzero(), pi in prime(), m in prop::sample::select(vec![2u32, 3, 6])) {
        prop_assume!(a.is_coprime(&pi));
        let ring = ResidueRing::new(&pi);
        let x = ring.pow(&a, ((pi.norm() - 1) / m as i128) as u128);
        let s = residue_symbol_prime(&a, &pi, m).unwrap();
        prop_assert_eq!(Some(s.exponent), sextic_unit(m, &x, &ring));
    }

    #[test]
    fn cubic_reciprocity(pi in prime(), rho in prime()) {
        prop_assume!(pi.norm() != rho.norm());
        prop_assert_eq!(residue_symbol(&pi, &rho, 3).unwrap(), residue_symbol(&rho, &pi, 3).unwrap());
    }

    #[test]
    fn symbol_is_multiplicative(a in nonzero(), a2 in nonzero(), b in modulus(), b2 in modulus(), m in prop::sample::select(vec![2u32, 3, 6])) {
        prop_assume!(a.is_coprime(&(b * b2)) && a2.is_coprime(&(b * b2)));
        let s = |x: &EisensteinInt, y: &EisensteinInt| residue_symbol(x, y, m).unwrap();
        prop_assert_eq!(s(&(a * a2), &b), s(&a, &b).mul(&s(&a2, &b)));
        prop_assert_eq!(s(&a, &(b * b2)), s(&a, &b).mul(&s(&a, &b2)));
    }

    #[test]
    fn sextic_symbol_composes(a in nonzero(), b in modulus()) {
        prop_assume!(a.is_coprime(&b));
        let s6 = residue_symbol(&a, &b, 6).unwrap();
        prop_assert_eq!(s6.exponent * 3 % 6 / 3, residue_symbol(&a, &b, 2).unwrap().exponent);
        prop_assert_eq!(s6.exponent * 2 % 6 / 2, residue_symbol(&a, &b, 3).unwrap().exponent);
    }
}

#[test]
fn units_are_the_six_roots_of_unity() {
    let units: Vec<_> = (-2i64..=2).flat_map(|a| (-2i64..=2).map(move |b| EisensteinInt::new(a, b))).filter(|z| z.norm() == 1).collect();
    assert_eq!(units.len(), 6);
    for u in EisensteinInt::units() {
        assert!(units.contains(&u));
        assert_eq!(u.pow(6), EisensteinInt::ONE);
    }
}
