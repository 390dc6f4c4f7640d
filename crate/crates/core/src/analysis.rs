//! Term counts, classification of the complete family, zero-coefficient
//! probabilities and the maximal-`b_0` construction.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hadamard::{SignMaskTransform, MAX_MASK_SITES};
use crate::inequality::CoefficientVector;
use crate::polynomial::{BellPolynomial, SummandTable, UVIndex, MAX_UV_SITES};

/// Largest site count [`classify`] handles exhaustively by default.
pub const MAX_EXHAUSTIVE_SITES: u32 = 4;

/// Largest site count for the exact binomial quantities.
pub const MAX_BINOMIAL_SITES: u32 = 20;

/// Number of nonzero coefficients.
pub fn term_count(v: &CoefficientVector) -> usize {
    v.terms()
}

/// Running totals over raw `H c` vectors; partial results from disjoint
/// mask ranges combine with [`ClassStats::merge`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassStats {
    sites: u32,
    total: u64,
    histogram: Vec<u64>,
    trivial_positions: Vec<bool>,
    zero_counts: Vec<u64>,
}

impl ClassStats {
    pub fn new(sites: u32) -> Result<Self> {
        if sites == 0 {
            return Err(Error::TooFewSites { sites, min: 1 });
        }
        if sites > MAX_MASK_SITES {
            return Err(Error::TooManySites { sites, cap: MAX_MASK_SITES });
        }
        let order = 1usize << sites;
        Ok(ClassStats {
            sites,
            total: 0,
            histogram: vec![0; order + 1],
            trivial_positions: vec![false; order],
            zero_counts: vec![0; order],
        })
    }

    pub fn sites(&self) -> u32 {
        self.sites
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Adds one coefficient vector of length `2^N`.
    pub fn record(&mut self, coeffs: &[i64]) {
        debug_assert_eq!(coeffs.len(), self.zero_counts.len());
        let mut terms = 0;
        let mut last = 0;
        for (k, &b) in coeffs.iter().enumerate() {
            if b == 0 {
                self.zero_counts[k] += 1;
            } else {
                terms += 1;
                last = k;
            }
        }
        self.histogram[terms] += 1;
        if terms == 1 {
            self.trivial_positions[last] = true;
        }
        self.total += 1;
    }

    /// Records the vector `H c` for every sign mask in `masks`.
    pub fn record_masks(&mut self, masks: impl IntoIterator<Item = u64>) -> Result<()> {
        let transform = SignMaskTransform::new(self.sites)?;
        let mut buffer = vec![0; transform.order()];
        for mask in masks {
            if mask & !transform.full_mask() != 0 {
                return Err(Error::IndexOutOfRange {
                    index: mask as u128,
                    len: transform.full_mask() as u128 + 1,
                });
            }
            transform.apply_into(mask, &mut buffer);
            self.record(&buffer);
        }
        Ok(())
    }

    pub fn merge(&mut self, other: &ClassStats) -> Result<()> {
        if other.sites != self.sites {
            return Err(Error::LengthMismatch {
                expected: self.zero_counts.len(),
                found: other.zero_counts.len(),
            });
        }
        self.total += other.total;
        for (a, b) in self.histogram.iter_mut().zip(&other.histogram) {
            *a += b;
        }
        for (a, b) in self.trivial_positions.iter_mut().zip(&other.trivial_positions) {
            *a |= b;
        }
        for (a, b) in self.zero_counts.iter_mut().zip(&other.zero_counts) {
            *a += b;
        }
        Ok(())
    }

    pub fn into_report(self, exhaustive: bool) -> ClassificationReport {
        let trivial_classes = self.trivial_positions.iter().filter(|&&seen| seen).count();
        ClassificationReport {
            sites: self.sites,
            exhaustive,
            total: self.total,
            full_term: self.histogram[1usize << self.sites],
            histogram: self.histogram,
            trivial_classes,
            zero_counts: self.zero_counts,
        }
    }
}

/// Statistics of the `2^{2^N}` raw inequalities, or of a sample of them.
///
/// One-term vectors are grouped into classes by scalar multiples, so each
/// class corresponds to one coefficient position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub sites: u32,
    pub exhaustive: bool,
    pub total: u64,
    /// `histogram[t]` counts the `t`-term vectors, `t = 0..=2^N`.
    pub histogram: Vec<u64>,
    pub trivial_classes: usize,
    pub full_term: u64,
    pub zero_counts: Vec<u64>,
}

/// Outcome of the consistency checks on a [`ClassificationReport`];
/// `None` marks a check that does not apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReportChecks {
    pub histogram_total: bool,
    pub trivial_classes: Option<bool>,
    pub at_least_half_full_term: Option<bool>,
    pub exactly_half_full_term: Option<bool>,
}

impl ReportChecks {
    pub fn all_hold(&self) -> bool {
        self.histogram_total
            && [self.trivial_classes, self.at_least_half_full_term, self.exactly_half_full_term]
                .iter()
                .all(|c| c.unwrap_or(true))
    }
}

impl ClassificationReport {
    /// `2^{2^N}`, the size of the full family.
    pub fn population(&self) -> u128 {
        1u128 << (1u32 << self.sites)
    }

    pub fn full_term_fraction(&self) -> f64 {
        self.full_term as f64 / self.total as f64
    }

    /// Binomial standard error of [`Self::full_term_fraction`]; zero when exhaustive.
    pub fn standard_error(&self) -> f64 {
        if self.exhaustive || self.total == 0 {
            return 0.0;
        }
        let p = self.full_term_fraction();
        libm::sqrt(p * (1.0 - p) / self.total as f64)
    }

    pub fn checks(&self) -> ReportChecks {
        let order = 1u64 << self.sites;
        let histogram_total = self.histogram.iter().sum::<u64>() == self.total;
        let exhaustive = self.exhaustive && self.total as u128 == self.population();
        let trivial_classes = exhaustive.then_some(self.trivial_classes as u64 == order);
        let at_least_half_full_term =
            (exhaustive && self.sites >= 2).then(|| 2 * self.full_term >= self.total);
        let exactly_half_full_term =
            (exhaustive && matches!(self.sites, 2 | 3)).then(|| 2 * self.full_term == self.total);
        ReportChecks { histogram_total, trivial_classes, at_least_half_full_term, exactly_half_full_term }
    }
}

/// Exhaustive classification for `N <= 4`.
pub fn classify(sites: u32) -> Result<ClassificationReport> {
    classify_with_cap(sites, MAX_EXHAUSTIVE_SITES)
}

pub fn classify_with_cap(sites: u32, cap: u32) -> Result<ClassificationReport> {
    if sites > cap {
        return Err(Error::TooManySites { sites, cap });
    }
    let stats = classify_range(sites, 0..mask_count(sites)?)?;
    Ok(stats.into_report(true))
}

/// Statistics for the sign masks in `masks`.
pub fn classify_range(sites: u32, masks: Range<u64>) -> Result<ClassStats> {
    let mut stats = ClassStats::new(sites)?;
    stats.record_masks(masks)?;
    Ok(stats)
}

/// Number of sign masks `2^{2^N}` as a `u64`; `N = 6` does not fit.
pub fn mask_count(sites: u32) -> Result<u64> {
    if sites == 0 {
        return Err(Error::TooFewSites { sites, min: 1 });
    }
    if sites > 5 {
        return Err(Error::TooManySites { sites, cap: 5 });
    }
    Ok(1u64 << (1u32 << sites))
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn check_binomial_sites(sites: u32) -> Result<()> {
    if sites == 0 {
        return Err(Error::TooFewSites { sites, min: 1 });
    }
    if sites > MAX_BINOMIAL_SITES {
        return Err(Error::TooManySites { sites, cap: MAX_BINOMIAL_SITES });
    }
    Ok(())
}

/// Probability that coefficient `k` of a uniformly chosen raw inequality is
/// zero: `C(2^N, 2^{N-1}) / 2^{2^N}`, the same for every position.
pub fn zero_probability(sites: u32, k: u64) -> Result<BigRational> {
    check_binomial_sites(sites)?;
    let order = 1u64 << sites;
    if k >= order {
        return Err(Error::IndexOutOfRange { index: k as u128, len: order as u128 });
    }
    let numer = BigInt::from(binomial(order, order / 2));
    let denom = BigInt::one() << order;
    Ok(BigRational::new(numer, denom))
}

/// `1 / sqrt(2^{N-1} pi)`.
pub fn asymptotic_zero_probability(sites: u32) -> f64 {
    let half = libm::ldexp(1.0, sites as i32 - 1);
    1.0 / libm::sqrt(half * core::f64::consts::PI)
}

/// Exact zero probability divided by its asymptotic estimate.
pub fn zero_probability_ratio(sites: u32) -> Result<f64> {
    let exact = zero_probability(sites, 0)?;
    let exact = exact.to_f64().ok_or(Error::Overflow)?;
    Ok(exact / asymptotic_zero_probability(sites))
}

/// Both sides of
/// `sum_{k} C(2^{N-1}, 2k) C(2k, k) 2^{2^{N-1}-2k} = C(2^N, 2^{N-1})`.
pub fn binomial_identity_sides(sites: u32) -> Result<(BigUint, BigUint)> {
    check_binomial_sites(sites)?;
    let half = 1u64 << (sites - 1);
    let mut lhs = BigUint::zero();
    for k in 0..=half / 2 {
        lhs += (binomial(half, 2 * k) * binomial(2 * k, k)) << (half - 2 * k);
    }
    Ok((lhs, binomial(2 * half, half)))
}

pub fn verify_binomial_identity(sites: u32) -> Result<bool> {
    let (lhs, rhs) = binomial_identity_sides(sites)?;
    Ok(lhs == rhs)
}

/// All standard-form inequalities whose coefficient of `E(k, ..., k)` is the
/// largest possible, `2^{N-1} - 1`, as Bell polynomials.
///
/// For `k = 0` the index pairs are `v = 2^j` with `u` either zero or, for
/// `j > 0`, equal to `2^j`; this gives `2^N - 1` polynomials, listed by `j`
/// and then `u`. The `k = 1` family reverses the observable labels.
pub fn max_b0_family(sites: u32, k: u8) -> Result<Vec<BellPolynomial>> {
    if sites < 3 {
        return Err(Error::TooFewSites { sites, min: 3 });
    }
    if sites > MAX_UV_SITES {
        return Err(Error::TooManySites { sites, cap: MAX_UV_SITES });
    }
    if k > 1 {
        return Err(Error::IndexOutOfRange { index: k as u128, len: 2 });
    }
    let table = SummandTable::new(sites)?;
    let mut family = Vec::with_capacity((1usize << sites) - 1);
    for j in 0..1u32 << (sites - 1) {
        let v = 1u128 << j;
        let patterns: &[u128] = if j == 0 { &[0] } else { &[0, v] };
        for &u in patterns {
            let p = table.b_uv(UVIndex::new(sites, u, v)?)?;
            let p = BellPolynomial::from(p.to_coefficient_vector()?.standard_form().as_vector());
            family.push(if k == 1 { p.reversed() } else { p });
        }
    }
    Ok(family)
}
