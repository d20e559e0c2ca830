use num_bigint::BigInt;
use overcubic::classify::{check_identity, theorem_mod4_residue, verify_family, CongruenceFamily, Identity};
use overcubic::eta_theta::{
    self, expand_eta_quotient, gen_overcubic_gf, theta_sum, EtaQuotient, Sign, ThetaSpec,
};
use overcubic::Series;
use proptest::prelude::*;

fn theta(a: Sign, ae: usize, b: Sign, be: usize, n: usize) -> Series {
    theta_sum(&ThetaSpec::new(a, ae, b, be).unwrap(), n, None).unwrap()
}

#[test]
fn product_and_sum_forms_agree_to_500() {
    use Sign::{Minus, Plus};
    assert_eq!(eta_theta::psi(500), theta(Plus, 1, Plus, 3, 500));
    assert_eq!(eta_theta::psi_neg(500), theta(Minus, 1, Minus, 3, 500));
    assert_eq!(eta_theta::phi(500), theta(Plus, 1, Plus, 1, 500));
    let phi3 = eta_theta::phi(500).substitute_power(3).unwrap();
    let f_neg = phi3.div(&eta_theta::chi(500)).unwrap();
    assert_eq!(theta(Minus, 1, Plus, 2, 500), f_neg);
}

#[test]
fn every_named_identity_holds_at_300() {
    for i in 0..=2 {
        for id in Identity::all(i) {
            for r in id.check(300).unwrap() {
                assert!(r.passed(), "{} (i={i}): {:?}", r.description, r.first_counterexample());
            }
        }
    }
}

#[test]
fn mod3_reductions_for_more_parameters() {
    for i in 0..=4 {
        for r in (Identity::Overcubic3i2Mod3 { i }).check(400).unwrap() {
            assert!(r.passed(), "{}", r.description);
        }
    }
    for i in 0..=3 {
        for id in [Identity::Overcubic9i5Trisection { i }, Identity::Overcubic9i8Mod3 { i }, Identity::Overcubic9i8Vanish { i }] {
            for r in id.check(600).unwrap() {
                assert!(r.passed(), "{}", r.description);
            }
        }
    }
}

#[test]
fn overcubic_with_one_color_is_overpartitions() {
    let over = EtaQuotient::new([(2, 1), (1, -2)]).unwrap();
    assert_eq!(gen_overcubic_gf(1, 300, None).unwrap(), over.expand(300, None).unwrap());
}

#[test]
fn mod4_reduction_of_cubic_overpartitions() {
    let s = gen_overcubic_gf(2, 20, None).unwrap().reduce_mod(4).unwrap();
    let res = s.residues().unwrap();
    for n in 1..=20u64 {
        assert_eq!(res[n as usize], theorem_mod4_residue(2, n), "n = {n}");
    }
}

#[test]
fn extracting_psi_at_two_mod_three_vanishes() {
    assert!(eta_theta::psi(30).extract_progression(3, 2).unwrap().is_zero());
}

#[test]
fn wrong_progression_is_rejected() {
    // 3n+1 is not a vanishing progression for c = 3i+2
    let f = CongruenceFamily::new(3, 2, 3, 1, 6, 0).unwrap();
    let r = verify_family(&f, 2, 40, 121).unwrap();
    assert!(!r.passed());
    let c = r.first_counterexample().unwrap();
    let value = gen_overcubic_gf(f.colors(c.i), 121, None).unwrap().coefficient(3 * c.n as usize + 1).unwrap();
    assert_eq!((value % 6u32).to_string(), c.observed);
}

#[test]
fn higher_parameters_of_the_families() {
    for f in overcubic::classify::conjecture73_families() {
        let r = verify_family(&f, 5, 40, 9 * 40 + 8).unwrap();
        assert!(r.passed(), "{}", r.description);
    }
}

#[test]
fn identity_checker_catches_a_perturbation() {
    let psi = eta_theta::psi(100);
    let bumped = psi.add(&Series::monomial(1, 77, 100, None).unwrap()).unwrap();
    let r = check_identity("perturbed", &psi, &bumped, None).unwrap();
    assert_eq!(r.first_counterexample().unwrap().n, 77);
}

fn quotient() -> impl Strategy<Value = EtaQuotient> {
    proptest::collection::vec((1u32..=12, -6i64..=6), 0..5)
        .prop_map(|f| EtaQuotient::new(f).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expansion_is_multiplicative(a in quotient(), b in quotient()) {
        let n = 80;
        let lhs = a.times(&b).expand(n, None).unwrap();
        let rhs = a.expand(n, None).unwrap().mul(&b.expand(n, None).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn modular_expansion_commutes_with_reduction(e in quotient(), m in 2u64..=30) {
        let exact = expand_eta_quotient(&e, 80, None).unwrap();
        prop_assert_eq!(expand_eta_quotient(&e, 80, Some(m)).unwrap(), exact.reduce_mod(m).unwrap());
    }

    #[test]
    fn inverse_quotient_expands_to_inverse(e in quotient()) {
        let s = e.expand(60, None).unwrap();
        let inv = e.powi(-1).expand(60, None).unwrap();
        prop_assert_eq!(s.mul(&inv).unwrap(), Series::one(60, None).unwrap());
        prop_assert_eq!(s.coefficient(0).unwrap(), BigInt::from(1));
    }
}
