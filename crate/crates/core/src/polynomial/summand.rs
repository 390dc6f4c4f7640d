//! The summand polynomials `s_k^{(N)}` and the column polynomials `t_k^{(N)}`.
//!
//! `s_k^{(N)}(z) = prod_i (1 + (-1)^{k_i} z^{2^{i+1}})` over the `N - 1` bits of
//! `k`; bit 0 of `k` selects the sign of the `z^2` factor. The recursion
//! builds `s^{(N)}` from `s^{(N-1)}` by one factor `1 +- z^{2^{N-1}}`.

use alloc::vec;
use alloc::vec::Vec;

use super::BellPolynomial;
use crate::error::{Error, Result};
use crate::hadamard;

fn check_summand(sites: u32, k: u64) -> Result<()> {
    if sites == 0 {
        return Err(Error::TooFewSites { sites, min: 1 });
    }
    if sites > 31 {
        return Err(Error::TooManySites { sites, cap: 31 });
    }
    let count = 1u64 << (sites - 1);
    if k >= count {
        return Err(Error::IndexOutOfRange { index: k as u128, len: count as u128 });
    }
    Ok(())
}

// (1 + sign * z^m) * p, where p has fewer than m coefficients slots of interest.
// With p stored in m slots the product is the concatenation [p, sign * p].
fn extend(prev: &[i64], negative: bool) -> Vec<i64> {
    let mut out = Vec::with_capacity(prev.len() * 2);
    out.extend_from_slice(prev);
    out.extend(prev.iter().map(|&c| if negative { -c } else { c }));
    out
}

/// `s_k^{(N)}` by the recursion on `N`.
pub fn s_poly(sites: u32, k: u64) -> Result<BellPolynomial> {
    check_summand(sites, k)?;
    // s_0^{(1)} = 1 stored in 2 slots (degree < 2^1).
    let mut coeffs = vec![1, 0];
    for level in 2..=sites {
        // the factor added at `level` is chosen by bit level-2 of k
        let negative = (k >> (level - 2)) & 1 == 1;
        coeffs = extend(&coeffs, negative);
    }
    Ok(BellPolynomial::from_full(sites, coeffs))
}

/// `s_k^{(N)}` by multiplying out the factored form.
pub fn s_poly_closed_form(sites: u32, k: u64) -> Result<BellPolynomial> {
    check_summand(sites, k)?;
    let len = 1usize << sites;
    let mut coeffs = vec![0i64; len];
    coeffs[0] = 1;
    for i in 0..sites - 1 {
        let shift = 1usize << (i + 1);
        let sign = if (k >> i) & 1 == 1 { -1 } else { 1 };
        let mut next = coeffs.clone();
        for d in (shift..len).rev() {
            next[d] += sign * coeffs[d - shift];
        }
        coeffs = next;
    }
    Ok(BellPolynomial::from_full(sites, coeffs))
}

/// `t_k^{(N)}(z) = sum_j h_{jk} z^j` with `j` over all `2^N` rows of `H_{2^N}`.
pub fn t_poly(sites: u32, k: u64) -> Result<BellPolynomial> {
    if sites > 31 {
        return Err(Error::TooManySites { sites, cap: 31 });
    }
    let order = 1u64 << sites;
    if k >= order {
        return Err(Error::IndexOutOfRange { index: k as u128, len: order as u128 });
    }
    let coeffs = (0..order).map(|j| hadamard::entry(sites, j, k)).collect::<Result<Vec<_>>>()?;
    Ok(BellPolynomial::from_full(sites, coeffs))
}

/// All summands `s_0^{(N)}, ..., s_{2^{N-1}-1}^{(N)}` for one site count,
/// computed once by the recursion and then shared read-only.
#[derive(Clone, Debug)]
pub struct SummandTable {
    sites: u32,
    summands: Vec<Vec<i64>>,
}

impl SummandTable {
    pub fn new(sites: u32) -> Result<Self> {
        if sites == 0 {
            return Err(Error::TooFewSites { sites, min: 1 });
        }
        if sites > 16 {
            return Err(Error::TooManySites { sites, cap: 16 });
        }
        let mut summands = vec![vec![1i64, 0]];
        for _ in 2..=sites {
            // k < 2^{N-2} takes the + factor, the upper half the - factor
            let plus = summands.iter().map(|s| extend(s, false));
            let minus = summands.iter().map(|s| extend(s, true));
            summands = plus.chain(minus).collect();
        }
        Ok(SummandTable { sites, summands })
    }

    pub fn sites(&self) -> u32 {
        self.sites
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn summand(&self, k: usize) -> &[i64] {
        &self.summands[k]
    }

    pub fn get(&self, k: u64) -> Result<BellPolynomial> {
        check_summand(self.sites, k)?;
        Ok(BellPolynomial::from_full(self.sites, self.summands[k as usize].clone()))
    }

    /// `B_uv^{(N)}(z) = sum_k (-1)^{u_k} z^{v_k} s_k^{(N)}(z)` for raw bit patterns.
    pub(crate) fn combine(&self, u: u128, v: u128) -> BellPolynomial {
        let len = 1usize << self.sites;
        let mut coeffs = vec![0i64; len];
        for (k, s) in self.summands.iter().enumerate() {
            let sign = if (u >> k) & 1 == 1 { -1 } else { 1 };
            let shift = ((v >> k) & 1) as usize;
            // s is even with degree <= 2^N - 2, so the shift stays in range
            for (d, &c) in s.iter().enumerate().step_by(2) {
                coeffs[d + shift] += sign * c;
            }
        }
        BellPolynomial::from_full(self.sites, coeffs)
    }
}
