//! Local hidden-variable bound of a coefficient vector.
//!
//! A deterministic strategy fixes `A_i(0), A_i(1)` in `{+1, -1}` for every
//! site; the classical bound of `sum_k b_k E(k)` is the largest
//! `|sum_k b_k prod_i A_i(k_i)|` over all `4^N` strategies. Mixed strategies
//! are convex combinations of these vertices and never exceed it.
//!
//! Strategies are packed into a `2N`-bit mask: bit `2i + j` set means
//! `A_i(j) = -1`, with site 0 the most significant digit of `k`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::inequality::CoefficientVector;

/// Default limit for [`max_lhv`]; the search visits about `4^N` nodes.
pub const DEFAULT_LHV_MAX_SITES: u32 = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DeterministicStrategy {
    sites: u32,
    mask: u64,
}

impl DeterministicStrategy {
    pub fn from_mask(sites: u32, mask: u64) -> Result<Self> {
        if sites == 0 || sites > 32 {
            return Err(Error::TooManySites { sites, cap: 32 });
        }
        if sites < 32 && mask >> (2 * sites) != 0 {
            return Err(Error::IndexOutOfRange { index: mask as u128, len: 1u128 << (2 * sites) });
        }
        Ok(DeterministicStrategy { sites, mask })
    }

    /// `values[i] = (A_i(0), A_i(1))`.
    pub fn from_values(values: &[(i64, i64)]) -> Result<Self> {
        let mut mask = 0u64;
        for (i, &(a0, a1)) in values.iter().enumerate() {
            for (j, a) in [a0, a1].into_iter().enumerate() {
                match a {
                    1 => {}
                    -1 => mask |= 1 << (2 * i + j),
                    other => return Err(Error::NotASign { index: 2 * i + j, value: other }),
                }
            }
        }
        Self::from_mask(values.len() as u32, mask)
    }

    pub fn sites(&self) -> u32 {
        self.sites
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn value(&self, site: u32, observable: u8) -> i64 {
        if (self.mask >> (2 * site + observable as u32)) & 1 == 1 {
            -1
        } else {
            1
        }
    }

    pub fn values(&self) -> Vec<(i64, i64)> {
        (0..self.sites).map(|i| (self.value(i, 0), self.value(i, 1))).collect()
    }

    /// Negates both values at `site`.
    pub fn flip_site(&self, site: u32) -> DeterministicStrategy {
        DeterministicStrategy { mask: self.mask ^ (0b11 << (2 * site)), ..*self }
    }
}

// Bits 2i + k_i for every site, so that prod_i A_i(k_i) = (-1)^popcount(strategy & mask).
#[inline]
fn setting_mask(sites: u32, k: usize) -> u64 {
    (0..sites).fold(0u64, |m, i| {
        let digit = (k >> (sites - 1 - i)) & 1;
        m | 1 << (2 * i + digit as u32)
    })
}

/// `sum_k b_k prod_i A_i(k_i)` for one deterministic strategy.
pub fn strategy_value(v: &CoefficientVector, s: &DeterministicStrategy) -> Result<i64> {
    if v.sites() != s.sites {
        return Err(Error::LengthMismatch { expected: v.sites() as usize, found: s.sites as usize });
    }
    Ok(v.coeffs()
        .iter()
        .enumerate()
        .map(|(k, &b)| if (s.mask & setting_mask(v.sites(), k)).count_ones() & 1 == 1 { -b } else { b })
        .sum())
}

/// Largest `|strategy_value|` over all strategies, with the default site cap.
pub fn max_lhv(v: &CoefficientVector) -> Result<u64> {
    max_lhv_with_cap(v, DEFAULT_LHV_MAX_SITES)
}

pub fn max_lhv_with_cap(v: &CoefficientVector, cap: u32) -> Result<u64> {
    if v.sites() > cap {
        return Err(Error::TooManySites { sites: v.sites(), cap });
    }
    let mut best = 0;
    for prefix in strategy_prefixes(v.sites(), 1) {
        best = best.max(max_lhv_for_prefix(v, 1, prefix)?);
    }
    Ok(best)
}

/// `max_lhv(v) == claimed`.
pub fn is_tight(v: &CoefficientVector, claimed: u64) -> Result<bool> {
    Ok(max_lhv(v)? == claimed)
}

/// Masks for the first `depth` sites with `A_0(0) = +1`; global negation of
/// site 0 maps every other strategy onto one of these with the same `|value|`.
pub fn strategy_prefixes(sites: u32, depth: u32) -> impl Iterator<Item = u64> {
    let depth = depth.clamp(1, sites.max(1));
    (0..1u64 << (2 * depth)).filter(|m| m & 1 == 0)
}

/// Best `|value|` among strategies whose first `depth` sites follow `prefix`.
pub fn max_lhv_for_prefix(v: &CoefficientVector, depth: u32, prefix: u64) -> Result<u64> {
    let sites = v.sites();
    if depth == 0 || depth > sites {
        return Err(Error::IndexOutOfRange { index: depth as u128, len: sites as u128 + 1 });
    }
    if depth < 32 && prefix >> (2 * depth) != 0 {
        return Err(Error::IndexOutOfRange { index: prefix as u128, len: 1u128 << (2 * depth) });
    }
    let mut current = v.coeffs().to_vec();
    for site in 0..depth {
        let a0 = if (prefix >> (2 * site)) & 1 == 1 { -1 } else { 1 };
        let a1 = if (prefix >> (2 * site + 1)) & 1 == 1 { -1 } else { 1 };
        current = contract(&current, a0, a1);
    }
    if current.len() == 1 {
        return Ok(current[0].unsigned_abs());
    }
    let mut scratch: Vec<Vec<i64>> = (1..sites - depth).map(|l| vec![0; 1 << l]).collect();
    Ok(search(&current, &mut scratch))
}

// Fixes the values of the leading site: out[r] = a0 * lo[r] + a1 * hi[r].
fn contract(coeffs: &[i64], a0: i64, a1: i64) -> Vec<i64> {
    let (lo, hi) = coeffs.split_at(coeffs.len() / 2);
    lo.iter().zip(hi).map(|(x, y)| a0 * x + a1 * y).collect()
}

// Depth-first search over the remaining sites; scratch[l] holds 2^(l+1) slots.
fn search(coeffs: &[i64], scratch: &mut [Vec<i64>]) -> u64 {
    let half = coeffs.len() / 2;
    if half == 1 {
        // last site: max over A(0), A(1) of |A(0) x + A(1) y| = |x| + |y|
        return coeffs[0].unsigned_abs() + coeffs[1].unsigned_abs();
    }
    let (lo, hi) = coeffs.split_at(half);
    let level = half.trailing_zeros() as usize - 1;
    let (below, rest) = scratch.split_at_mut(level);
    let buffer = &mut rest[0];
    let mut best = 0;
    for (a0, a1) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        for ((slot, x), y) in buffer.iter_mut().zip(lo).zip(hi) {
            *slot = a0 * x + a1 * y;
        }
        best = best.max(search(buffer, below));
    }
    best
}

/// Measurement angles of the two-observer, three-setting spin experiment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingletSetup {
    pub theta: [f64; 3],
    pub eta: [f64; 3],
}

impl Default for SingletSetup {
    fn default() -> Self {
        SingletSetup { theta: [0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0], eta: [PI, 5.0 * PI / 3.0, PI / 3.0] }
    }
}

impl SingletSetup {
    /// Rotates the second apparatus by `phi`.
    pub fn tilted(&self, phi: f64) -> SingletSetup {
        SingletSetup { theta: self.theta, eta: self.eta.map(|e| e + phi) }
    }

    /// Singlet correlation `E(i, j) = -cos(theta_i - eta_j)`.
    pub fn expectation(&self, i: usize, j: usize) -> Result<f64> {
        if i > 2 || j > 2 {
            return Err(Error::IndexOutOfRange { index: i.max(j) as u128, len: 3 });
        }
        Ok(-libm::cos(self.theta[i] - self.eta[j]))
    }

    pub fn table(&self) -> [[f64; 3]; 3] {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = -libm::cos(self.theta[i] - self.eta[j]);
            }
        }
        out
    }

    /// Average of `E(i, j)` over the nine equally likely setting pairs.
    pub fn mean_product(&self) -> f64 {
        self.table().iter().flatten().sum::<f64>() / 9.0
    }
}

/// `cos(pi/3 + phi) + cos(pi + phi) + cos(5 pi/3 + phi)`, zero for every `phi`.
pub fn tilt_sum(phi: f64) -> f64 {
    libm::cos(PI / 3.0 + phi) + libm::cos(PI + phi) + libm::cos(5.0 * PI / 3.0 + phi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cv(coeffs: &[i64]) -> CoefficientVector {
        CoefficientVector::from_coeffs(coeffs.to_vec()).unwrap()
    }

    fn brute_force(v: &CoefficientVector) -> u64 {
        (0..1u64 << (2 * v.sites()))
            .map(|m| {
                let s = DeterministicStrategy::from_mask(v.sites(), m).unwrap();
                strategy_value(v, &s).unwrap().unsigned_abs()
            })
            .max()
            .unwrap()
    }

    #[test]
    fn strategy_values() {
        let chsh = cv(&[1, 1, 1, -1]);
        let all_plus = DeterministicStrategy::from_values(&[(1, 1), (1, 1)]).unwrap();
        assert_eq!(strategy_value(&chsh, &all_plus).unwrap(), 2);
        let s = DeterministicStrategy::from_values(&[(1, 1), (1, -1)]).unwrap();
        assert_eq!(strategy_value(&chsh, &s).unwrap(), 2);
        let mabk = cv(&[1, 0, 0, -1, 0, 1, 1, 0]);
        let plus3 = DeterministicStrategy::from_mask(3, 0).unwrap();
        assert_eq!(strategy_value(&mabk, &plus3).unwrap(), 2);
        assert!(strategy_value(&mabk, &all_plus).is_err());
        assert!(DeterministicStrategy::from_values(&[(1, 0)]).is_err());
        assert!(DeterministicStrategy::from_mask(1, 0b100).is_err());
    }

    #[test]
    fn strategy_encoding() {
        let s = DeterministicStrategy::from_values(&[(1, -1), (-1, 1)]).unwrap();
        assert_eq!(s.mask(), 0b0110);
        assert_eq!(s.values(), alloc::vec![(1, -1), (-1, 1)]);
        assert_eq!(s.flip_site(1).values(), alloc::vec![(1, -1), (1, -1)]);
    }

    #[test]
    fn max_lhv_examples() {
        assert_eq!(max_lhv(&cv(&[1, 1, 1, -1])).unwrap(), 2);
        assert_eq!(max_lhv(&cv(&[1, 0, 0, -1, 0, 1, 1, 0])).unwrap(), 2);
        assert_eq!(max_lhv(&cv(&[1, 0])).unwrap(), 1);
        assert_eq!(max_lhv(&cv(&[1, 0, 0, 0, 0, 0, 0, 0])).unwrap(), 1);
        assert!(is_tight(&cv(&[3, 1, 1, -1, -1, 1, 1, -1]), 4).unwrap());
        assert!(!is_tight(&cv(&[1, 1]), 3).unwrap());
    }

    #[test]
    fn search_matches_brute_force() {
        let vectors = [
            cv(&[3, -1, 4, 1, -5, 9, 2, -6]),
            cv(&[1, 2]),
            cv(&[7, -3, 0, 2, 5, 5, -1, 0, 1, 1, -2, 3, 0, 4, -4, 1]),
        ];
        for v in &vectors {
            assert_eq!(max_lhv(v).unwrap(), brute_force(v), "{v}");
        }
    }

    #[test]
    fn prefixes_cover_the_search() {
        let v = cv(&[7, -3, 0, 2, 5, 5, -1, 0, 1, 1, -2, 3, 0, 4, -4, 1]);
        for depth in 1..=4 {
            let best =
                strategy_prefixes(4, depth).map(|p| max_lhv_for_prefix(&v, depth, p).unwrap()).max().unwrap();
            assert_eq!(best, brute_force(&v), "depth {depth}");
        }
        assert_eq!(strategy_prefixes(3, 2).count(), 8);
        assert!(max_lhv_for_prefix(&v, 5, 0).is_err());
    }

    #[test]
    fn cap() {
        let v = cv(&[1, 0, 0, 0]);
        assert_eq!(max_lhv_with_cap(&v, 1), Err(Error::TooManySites { sites: 2, cap: 1 }));
    }

    #[test]
    fn singlet_table() {
        let setup = SingletSetup::default();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { 1.0 } else { -0.5 };
                assert!((setup.expectation(i, j).unwrap() - expected).abs() < 1e-12);
            }
        }
        assert!(setup.expectation(3, 0).is_err());
        assert!(setup.mean_product().abs() < 1e-12);
        assert!(setup.tilted(0.37).mean_product().abs() < 1e-12);
        assert!(tilt_sum(1.234).abs() < 1e-12);
    }
}
