use std::collections::BTreeSet;

use bellkit_core::analysis::{
    binomial, classify, max_b0_family, verify_binomial_identity, zero_probability, zero_probability_ratio,
};
use bellkit_core::hadamard::walsh_hadamard;
use bellkit_core::inequality::{enumerate, CoefficientVector, EnumerateOptions};
use bellkit_core::lhv::{is_tight, max_lhv};
use bellkit_core::polynomial::{b_uv, UVIndex};
use num_bigint::BigInt;
use num_rational::BigRational;

const LISTED: [&str; 7] = [
    "3+z-z^2+z^3-z^4+z^5-z^6+z^7",
    "3+z+z^2-z^3-z^4+z^5+z^6-z^7",
    "3-z+z^2+z^3-z^4-z^5+z^6+z^7",
    "3+z-z^2+z^3+z^4-z^5+z^6-z^7",
    "3-z-z^2-z^3+z^4+z^5+z^6+z^7",
    "3+z+z^2-z^3+z^4-z^5-z^6+z^7",
    "3-z+z^2+z^3+z^4+z^5-z^6-z^7",
];

fn standard_forms(sites: u32) -> BTreeSet<CoefficientVector> {
    enumerate(sites, EnumerateOptions::default())
        .unwrap()
        .map(|(_, v)| v.standard_form().into_vector())
        .collect()
}

#[test]
fn three_site_family_matches_the_listed_polynomials() {
    let family: BTreeSet<String> = max_b0_family(3, 0).unwrap().iter().map(|p| p.to_string()).collect();
    let listed: BTreeSet<String> = LISTED.iter().map(|s| s.to_string()).collect();
    assert_eq!(family, listed);
}

#[test]
fn family_is_maximal_among_standard_forms() {
    for (k, position) in [(0u8, 0usize), (1, 7)] {
        let family: BTreeSet<CoefficientVector> =
            max_b0_family(3, k).unwrap().iter().map(|p| p.to_coefficient_vector().unwrap()).collect();
        let brute: BTreeSet<CoefficientVector> =
            standard_forms(3).into_iter().filter(|v| v.coeffs()[position] >= 3).collect();
        assert_eq!(family, brute, "k={k}");
        let best_other =
            standard_forms(3).into_iter().filter(|v| !family.contains(v)).map(|v| v.coeffs()[position]).max();
        assert_eq!(best_other, Some(1));
    }
}

#[test]
fn reversed_family_is_the_second_family() {
    let zero = max_b0_family(3, 0).unwrap();
    let one = max_b0_family(3, 1).unwrap();
    for (a, b) in zero.iter().zip(&one) {
        let reversed = a.to_coefficient_vector().unwrap().reverse_observables();
        assert_eq!(reversed, b.to_coefficient_vector().unwrap());
    }
}

#[test]
fn family_members_are_full_term_odd_and_tight() {
    for sites in 3..=4u32 {
        let top = (1i64 << (sites - 1)) - 1;
        for k in 0..=1u8 {
            let family = max_b0_family(sites, k).unwrap();
            assert_eq!(family.len(), (1 << sites) - 1);
            let position = if k == 0 { 0 } else { (1 << sites) - 1 };
            for p in &family {
                let v = p.to_coefficient_vector().unwrap();
                assert!(v.is_standard_form());
                assert_eq!(v.coeffs()[position], top);
                assert!(v.coeffs().iter().all(|b| b % 2 != 0), "{v}");
                assert!(is_tight(&v, 1 << (sites - 1)).unwrap(), "{v}");
            }
        }
    }
}

#[test]
fn odd_parity_numbers_give_full_term_inequalities() {
    for sites in 2..=3 {
        for i in UVIndex::all(sites).unwrap().filter(|i| i.v().count_ones() % 2 == 1) {
            let v = b_uv(i).to_coefficient_vector().unwrap().standard_form();
            assert_eq!(v.terms(), 1 << sites);
            assert_eq!(v.bound(), 1 << (sites - 1));
            assert_eq!(max_lhv(&v).unwrap(), v.bound());
        }
    }
}

#[test]
fn zero_probability_matches_counts() {
    for sites in 1..=4 {
        let report = classify(sites).unwrap();
        let total = BigInt::from(report.total);
        for (k, &count) in report.zero_counts.iter().enumerate() {
            let measured = BigRational::new(BigInt::from(count), total.clone());
            assert_eq!(measured, zero_probability(sites, k as u64).unwrap(), "N={sites} k={k}");
        }
    }
}

#[test]
fn zero_probability_ratio_increases_toward_one() {
    let ratios: Vec<f64> = (2..=8).map(|n| zero_probability_ratio(n).unwrap()).collect();
    assert!(ratios.windows(2).all(|w| w[0] < w[1]), "{ratios:?}");
    assert!(ratios.iter().all(|&r| r < 1.0));
    assert!((0.9..=1.1).contains(ratios.last().unwrap()));
}

#[test]
fn binomial_identity_holds() {
    for sites in 1..=10 {
        assert!(verify_binomial_identity(sites).unwrap(), "N={sites}");
    }
    assert_eq!(binomial(16, 8), BigInt::from(12870).to_biguint().unwrap());
}

#[test]
fn four_site_classification() {
    let report = classify(4).unwrap();
    assert_eq!(report.total, 1 << 16);
    assert_eq!(report.trivial_classes, 16);
    assert!(report.checks().all_hold());
    assert!(2 * report.full_term >= report.total);

    let mut full_term = 0u64;
    for mask in 0u64..1 << 16 {
        let signs: Vec<i64> = (0..16).map(|j| if mask >> j & 1 == 1 { -1 } else { 1 }).collect();
        let coeffs = walsh_hadamard(&signs).unwrap();
        full_term += u64::from(coeffs.iter().all(|&b| b != 0));
    }
    assert_eq!(report.full_term, full_term);
    assert!(2 * full_term > report.total);
}
