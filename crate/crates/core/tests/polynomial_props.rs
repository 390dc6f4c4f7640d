use std::collections::BTreeSet;

use bellkit_core::inequality::{enumerate, CoefficientVector, EnumerateOptions};
use bellkit_core::polynomial::{b0_from_uv, s_poly, BellPolynomial, SummandTable, UVIndex};
use proptest::prelude::*;

fn family(sites: u32) -> Vec<(UVIndex, BellPolynomial)> {
    let table = SummandTable::new(sites).unwrap();
    UVIndex::all(sites).unwrap().map(|i| (i, table.b_uv(i).unwrap())).collect()
}

#[test]
fn polynomial_family_equals_hadamard_family() {
    for sites in 1..=3 {
        let from_uv: BTreeSet<Vec<i64>> =
            family(sites).into_iter().map(|(_, p)| p.coeffs().iter().map(|b| 2 * b).collect()).collect();
        let from_h: BTreeSet<Vec<i64>> =
            enumerate(sites, EnumerateOptions::default()).unwrap().map(|(_, v)| v.into_coeffs()).collect();
        assert_eq!(from_uv.len(), 1 << (1 << sites));
        assert_eq!(from_uv, from_h, "N={sites}");
    }
}

#[test]
fn coefficient_structure_up_to_four_sites() {
    for sites in 1..=4u32 {
        let half = 1i64 << (sites - 1);
        let full = (1u128 << half) - 1;
        for (i, p) in family(sites) {
            let b = p.coeffs();
            let (u, v) = (i.u(), i.v());
            let odd_sum: i64 = b.iter().skip(1).step_by(2).sum();
            let even_sum: i64 = b.iter().step_by(2).sum();
            if u == 0 {
                assert_eq!(b[0], half - b[1], "{i:?}");
                for j in 1..b.len() / 2 {
                    assert_eq!(b[2 * j], -b[2 * j + 1], "{i:?}");
                }
            }
            if v == 0 {
                assert!(b.iter().skip(1).step_by(2).all(|&c| c == 0), "{i:?}");
            }
            if v % 2 == 0 {
                assert_eq!(odd_sum, 0, "{i:?}");
            } else {
                assert_eq!(even_sum, 0, "{i:?}");
            }
            if sites >= 2 {
                let parity = i64::from(v.count_ones() % 2);
                assert!(b.iter().all(|c| c.rem_euclid(2) == parity), "{i:?}");
            }

            let u0 = (u & 1) as u32;
            let v0 = (v & 1) as u32;
            assert_eq!(p.at_one(), (-1i64).pow(u0) * half, "{i:?}");
            assert_eq!(p.at_minus_one(), (-1i64).pow(u0 + v0) * half, "{i:?}");
            let at_zero: i64 = (0..half as u32)
                .map(|k| {
                    let sign = if u >> k & 1 == 1 { -1 } else { 1 };
                    sign * (1 - (v >> k & 1) as i64)
                })
                .sum();
            assert_eq!(p.at_zero(), at_zero, "{i:?}");
            assert_eq!(b0_from_uv(i), at_zero, "{i:?}");

            assert_eq!(family_member(i.negate()), p.negated(), "{i:?}");
            assert_eq!(family_member(i.reflect()), p.reflected(), "{i:?}");
            let even = p.reflected() == p;
            let odd = p.reflected() == p.negated();
            assert_eq!(even, v == 0, "{i:?}");
            assert_eq!(odd, v == full, "{i:?}");
        }
    }
}

#[test]
fn one_site_coefficients_have_mixed_parity() {
    for (_, p) in family(1) {
        let odd = p.coeffs().iter().filter(|c| *c % 2 != 0).count();
        assert_eq!(odd, 1, "{p}");
    }
}

fn family_member(i: UVIndex) -> BellPolynomial {
    bellkit_core::polynomial::b_uv(i)
}

#[test]
fn summands_up_to_six_sites() {
    for sites in 1..=6u32 {
        let count = 1u64 << (sites - 1);
        let mut total = vec![0i64; 1 << sites];
        for k in 0..count {
            let s = s_poly(sites, k).unwrap();
            let even: Vec<i64> = s.coeffs().iter().step_by(2).copied().collect();
            assert!(s.coeffs().iter().skip(1).step_by(2).all(|&c| c == 0));
            if k == 0 {
                assert!(even.iter().all(|&c| c == 1));
                assert_eq!(s.at_one(), count as i64);
            } else {
                assert_eq!(even.iter().filter(|&&c| c == 1).count(), even.len() / 2);
                assert_eq!(even.iter().filter(|&&c| c == -1).count(), even.len() / 2);
                assert_eq!((s.at_one(), s.at_minus_one()), (0, 0));
            }
            assert_eq!(s.at_zero(), 1);
            for (t, c) in total.iter_mut().zip(s.coeffs()) {
                *t += c;
            }
        }
        assert_eq!(total[0], count as i64);
        assert!(total[1..].iter().all(|&c| c == 0), "N={sites}");
    }
}

/// Coefficients of `prod_i (1 + sign_i z^{k_i})`.
fn product(exponents: &[usize], signs: u32) -> Vec<i64> {
    let degree: usize = exponents.iter().sum();
    let mut out = vec![0i64; degree + 1];
    out[0] = 1;
    let mut top = 0;
    for (i, &e) in exponents.iter().enumerate() {
        let sign = if signs >> i & 1 == 1 { -1 } else { 1 };
        for d in (0..=top).rev() {
            out[d + e] += sign * out[d];
        }
        top += e;
    }
    out
}

proptest! {
    #[test]
    fn sign_combinations_sum_to_a_constant(exponents in proptest::collection::vec(1usize..40, 1..=6)) {
        let n = exponents.len();
        let degree: usize = exponents.iter().sum();
        let mut total = vec![0i64; degree + 1];
        for signs in 0..1u32 << n {
            for (t, c) in total.iter_mut().zip(product(&exponents, signs)) {
                *t += c;
            }
        }
        prop_assert_eq!(total[0], 1 << n);
        prop_assert!(total[1..].iter().all(|&c| c == 0));
    }
}

#[test]
fn bowtie_agrees_with_coefficient_vectors() {
    for sites in 1..=2 {
        let all: Vec<_> = enumerate(sites, EnumerateOptions::default()).unwrap().map(|(_, v)| v).collect();
        for a in &all {
            for b in &all {
                let pa = BellPolynomial::from(a);
                let pb = BellPolynomial::from(b);
                match (a.bowtie(b), pa.bowtie(&pb)) {
                    (Ok(v), Ok(p)) => assert_eq!(CoefficientVector::try_from(&p).unwrap(), v),
                    (Err(_), Err(_)) => {}
                    other => panic!("disagreement for {a} and {b}: {other:?}"),
                }
            }
        }
    }
}
