//! Sylvester-type Hadamard matrices `H_{2^N}`.
//!
//! Row and column indices are read as N-digit binary numbers with site 1 in
//! the most significant position, so `h_{jk} = (-1)^<j,k>` where `<j,k>` is
//! the GF(2) scalar product of the two expansions. Entries are stored as
//! packed sign bits (bit set means `-1`), one bit-row per matrix row.
//!
//! Most callers never need the dense matrix: [`walsh_hadamard`] computes
//! `H * c` with the butterfly scheme and [`SignMaskTransform`] evaluates the
//! same product for sign vectors packed into a `u64`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest site count for which [`HadamardMatrix::build`] materializes the
/// dense matrix (8192 x 8192 bits).
pub const DEFAULT_MAX_SITES: u32 = 13;

/// Largest site count whose sign vectors fit a `u64` mask.
pub const MAX_MASK_SITES: u32 = 6;

/// GF(2) scalar product of the binary expansions of `j` and `k`.
#[inline]
pub fn gf2_dot(j: u64, k: u64) -> u8 {
    ((j & k).count_ones() & 1) as u8
}

/// Entry `h_{jk}` of `H_{2^N}`, computed without materializing the matrix.
pub fn entry(sites: u32, j: u64, k: u64) -> Result<i64> {
    let order = order_of(sites)?;
    for index in [j, k] {
        if index >= order {
            return Err(Error::IndexOutOfRange { index: index as u128, len: order as u128 });
        }
    }
    Ok(sign_of(gf2_dot(j, k)))
}

#[inline]
fn sign_of(bit: u8) -> i64 {
    1 - 2 * bit as i64
}

fn order_of(sites: u32) -> Result<u64> {
    if sites >= 63 {
        return Err(Error::TooManySites { sites, cap: 62 });
    }
    Ok(1u64 << sites)
}

/// Dense Sylvester-Hadamard matrix of order `2^N`.
#[derive(Clone, PartialEq, Eq)]
pub struct HadamardMatrix {
    sites: u32,
    order: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl HadamardMatrix {
    /// Builds `H_{2^N}` by the block recursion `H_{2n} = [[H_n, H_n], [H_n, -H_n]]`
    /// starting from `H_1 = (1)`, using the default size cap.
    pub fn build(sites: u32) -> Result<Self> {
        Self::build_with_cap(sites, DEFAULT_MAX_SITES)
    }

    pub fn build_with_cap(sites: u32, cap: u32) -> Result<Self> {
        if sites > cap || sites >= 32 {
            return Err(Error::TooManySites { sites, cap: cap.min(31) });
        }
        let mut current = Self::empty(0);
        for _ in 0..sites {
            current = current.doubled();
        }
        Ok(current)
    }

    fn empty(sites: u32) -> Self {
        let order = 1usize << sites;
        let words_per_row = order.div_ceil(64);
        HadamardMatrix { sites, order, words_per_row, bits: vec![0; order * words_per_row] }
    }

    // One step of the block recursion.
    fn doubled(&self) -> Self {
        let half = self.order;
        let mut next = Self::empty(self.sites + 1);
        if half < 64 {
            let mask = (1u64 << half) - 1;
            for r in 0..half {
                let row = self.bits[r];
                next.bits[r] = row | (row << half);
                next.bits[r + half] = row | ((!row & mask) << half);
            }
        } else {
            let src_words = self.words_per_row;
            let dst_words = next.words_per_row;
            for r in 0..half {
                let src = &self.bits[r * src_words..(r + 1) * src_words];
                let top = r * dst_words;
                let bottom = (r + half) * dst_words;
                for (w, &word) in src.iter().enumerate() {
                    next.bits[top + w] = word;
                    next.bits[top + src_words + w] = word;
                    next.bits[bottom + w] = word;
                    next.bits[bottom + src_words + w] = !word;
                }
            }
        }
        next
    }

    /// Kronecker product `A (x) B`; block `(i, j)` of the result is `a_ij * B`.
    pub fn kronecker(&self, other: &HadamardMatrix) -> Result<Self> {
        Self::kronecker_with_cap(self, other, DEFAULT_MAX_SITES)
    }

    pub fn kronecker_with_cap(&self, other: &HadamardMatrix, cap: u32) -> Result<Self> {
        let sites = self.sites + other.sites;
        if sites > cap || sites >= 32 {
            return Err(Error::TooManySites { sites, cap: cap.min(31) });
        }
        let mut out = Self::empty(sites);
        let nb = other.order;
        for i in 0..self.order {
            for j in 0..self.order {
                let a = self.bit(i, j);
                for p in 0..nb {
                    for q in 0..nb {
                        if a ^ other.bit(p, q) {
                            out.set_bit(i * nb + p, j * nb + q);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    #[inline]
    fn bit(&self, row: usize, col: usize) -> bool {
        (self.bits[row * self.words_per_row + col / 64] >> (col % 64)) & 1 == 1
    }

    #[inline]
    fn set_bit(&mut self, row: usize, col: usize) {
        self.bits[row * self.words_per_row + col / 64] |= 1 << (col % 64);
    }

    pub fn sites(&self) -> u32 {
        self.sites
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Entry at `(row, col)` as `+1` or `-1`.
    pub fn get(&self, row: usize, col: usize) -> Result<i64> {
        if row >= self.order || col >= self.order {
            return Err(Error::IndexOutOfRange { index: row.max(col) as u128, len: self.order as u128 });
        }
        Ok(if self.bit(row, col) { -1 } else { 1 })
    }

    /// Row `row` as `+1`/`-1` values.
    pub fn row(&self, row: usize) -> Vec<i64> {
        (0..self.order).map(|c| if self.bit(row, c) { -1 } else { 1 }).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..self.order).map(move |r| self.row(r))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|r| (r + 1..self.order).all(|c| self.bit(r, c) == self.bit(c, r)))
    }

    /// First row and first column all `+1`.
    pub fn is_normalized(&self) -> bool {
        (0..self.order).all(|i| !self.bit(0, i) && !self.bit(i, 0))
    }

    /// Checks `H * H^T = n * I`: every pair of distinct rows differs in
    /// exactly half of its entries.
    pub fn is_orthogonal(&self) -> bool {
        let w = self.words_per_row;
        let half = (self.order / 2) as u32;
        if self.order == 1 {
            return true;
        }
        for r in 0..self.order {
            let a = &self.bits[r * w..(r + 1) * w];
            for s in r + 1..self.order {
                let b = &self.bits[s * w..(s + 1) * w];
                let differing: u32 = a.iter().zip(b).map(|(x, y)| (x ^ y).count_ones()).sum();
                if differing != half {
                    return false;
                }
            }
        }
        true
    }

    /// `H * c` through the butterfly transform.
    pub fn apply(&self, c: &[i64]) -> Result<Vec<i64>> {
        if c.len() != self.order {
            return Err(Error::LengthMismatch { expected: self.order, found: c.len() });
        }
        walsh_hadamard(c)
    }

    /// `H * c` as a plain dense matrix-vector product.
    pub fn apply_dense(&self, c: &[i64]) -> Result<Vec<i64>> {
        if c.len() != self.order {
            return Err(Error::LengthMismatch { expected: self.order, found: c.len() });
        }
        check_signs(c)?;
        Ok((0..self.order)
            .map(|r| c.iter().enumerate().map(|(col, &x)| if self.bit(r, col) { -x } else { x }).sum())
            .collect())
    }
}

impl fmt::Debug for HadamardMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HadamardMatrix")
            .field("sites", &self.sites)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

/// `+`/`-` grid, one matrix row per line.
impl fmt::Display for HadamardMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.order {
            for c in 0..self.order {
                f.write_str(if self.bit(r, c) { "-" } else { "+" })?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

fn check_signs(c: &[i64]) -> Result<()> {
    match c.iter().position(|&x| x != 1 && x != -1) {
        Some(index) => Err(Error::NotASign { index, value: c[index] }),
        None => Ok(()),
    }
}

/// In-place unnormalized Walsh-Hadamard butterfly in natural (Sylvester) order.
///
/// The length must be a power of two.
pub fn fwht_in_place(data: &mut [i64]) -> Result<()> {
    let len = data.len();
    if !len.is_power_of_two() {
        return Err(Error::LengthMismatch { expected: len.next_power_of_two(), found: len });
    }
    let mut dist = 1;
    while dist < len {
        for block in data.chunks_exact_mut(2 * dist) {
            let (lo, hi) = block.split_at_mut(dist);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        dist *= 2;
    }
    Ok(())
}

/// `H_{2^N} * c` for a `+1`/`-1` vector of length `2^N`.
pub fn walsh_hadamard(c: &[i64]) -> Result<Vec<i64>> {
    check_signs(c)?;
    let mut out = c.to_vec();
    fwht_in_place(&mut out)?;
    Ok(out)
}

/// `H_{2^N} * c` for sign vectors packed into a `u64` (bit `j` set means
/// `c_j = -1`), valid for `N <= 6`.
///
/// Coefficient `k` is `2^N - 2 * popcount(c ^ row_k)` where `row_k` packs the
/// sign bits of row `k` of the matrix.
#[derive(Debug, Clone)]
pub struct SignMaskTransform {
    sites: u32,
    rows: Vec<u64>,
}

impl SignMaskTransform {
    pub fn new(sites: u32) -> Result<Self> {
        if sites > MAX_MASK_SITES {
            return Err(Error::TooManySites { sites, cap: MAX_MASK_SITES });
        }
        let order = 1u64 << sites;
        let rows = (0..order)
            .map(|k| (0..order).filter(|&j| gf2_dot(j, k) == 1).fold(0u64, |m, j| m | (1 << j)))
            .collect();
        Ok(SignMaskTransform { sites, rows })
    }

    pub fn sites(&self) -> u32 {
        self.sites
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    /// Mask covering all `2^N` sign bits.
    pub fn full_mask(&self) -> u64 {
        let order = self.rows.len();
        if order == 64 {
            u64::MAX
        } else {
            (1u64 << order) - 1
        }
    }

    /// Packed sign bits of row `k`.
    pub fn row_mask(&self, k: usize) -> u64 {
        self.rows[k]
    }

    #[inline]
    pub fn coefficient(&self, signs: u64, k: usize) -> i64 {
        (1i64 << self.sites) - 2 * (signs ^ self.rows[k]).count_ones() as i64
    }

    pub fn apply_into(&self, signs: u64, out: &mut [i64]) {
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.coefficient(signs, k);
        }
    }

    pub fn apply(&self, signs: u64) -> Vec<i64> {
        let mut out = vec![0; self.rows.len()];
        self.apply_into(signs, &mut out);
        out
    }
}

/// Unpacks a sign mask into `+1`/`-1` values (bit `j` set means `c_j = -1`).
pub fn signs_from_mask(sites: u32, mask: u64) -> Result<Vec<i64>> {
    if sites > MAX_MASK_SITES {
        return Err(Error::TooManySites { sites, cap: MAX_MASK_SITES });
    }
    Ok((0..1usize << sites).map(|j| if (mask >> j) & 1 == 1 { -1 } else { 1 }).collect())
}

/// Packs a `+1`/`-1` vector of length at most 64 into a sign mask.
pub fn mask_from_signs(c: &[i64]) -> Result<u64> {
    if c.len() > 64 {
        return Err(Error::LengthMismatch { expected: 64, found: c.len() });
    }
    check_signs(c)?;
    Ok(c.iter().enumerate().filter(|(_, &x)| x == -1).fold(0u64, |m, (j, _)| m | (1 << j)))
}
