use super::{BellPolynomial, SummandTable};
use crate::error::{Error, Result};

/// `u` and `v` carry `2^{N-1}` bits each; with `u128` storage this allows `N <= 8`.
pub const MAX_UV_SITES: u32 = 8;

/// Sign number `u` and parity number `v` of `B_uv^{(N)}`.
///
/// Bit `k` of `u` (least significant first) is the sign of summand `k`; bit
/// `k` of `v` says whether summand `k` is multiplied by `z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UVIndex {
    sites: u32,
    u: u128,
    v: u128,
}

impl UVIndex {
    pub fn new(sites: u32, u: u128, v: u128) -> Result<Self> {
        if sites == 0 {
            return Err(Error::TooFewSites { sites, min: 1 });
        }
        if sites > MAX_UV_SITES {
            return Err(Error::TooManySites { sites, cap: MAX_UV_SITES });
        }
        let limit = Self::mask_for(sites);
        for x in [u, v] {
            if x & !limit != 0 {
                return Err(Error::IndexOutOfRange { index: x, len: limit.saturating_add(1) });
            }
        }
        Ok(UVIndex { sites, u, v })
    }

    fn mask_for(sites: u32) -> u128 {
        let width = 1u32 << (sites - 1);
        if width == 128 {
            u128::MAX
        } else {
            (1u128 << width) - 1
        }
    }

    pub fn sites(&self) -> u32 {
        self.sites
    }

    pub fn u(&self) -> u128 {
        self.u
    }

    pub fn v(&self) -> u128 {
        self.v
    }

    /// Number of bits in `u` and `v`: `2^{N-1}`.
    pub fn width(&self) -> u32 {
        1 << (self.sites - 1)
    }

    /// All-ones pattern of `width()` bits.
    pub fn full(&self) -> u128 {
        Self::mask_for(self.sites)
    }

    /// `(u^, v)` with every bit of `u` flipped; `B_{u^ v} = -B_uv`.
    pub fn negate(&self) -> UVIndex {
        UVIndex { u: !self.u & self.full(), ..*self }
    }

    /// `(u xor v, v)`; `B_{u xor v, v}(z) = B_uv(-z)`.
    pub fn reflect(&self) -> UVIndex {
        UVIndex { u: self.u ^ self.v, ..*self }
    }

    /// Every index for `sites`, `u` outer and `v` inner.
    pub fn all(sites: u32) -> Result<impl Iterator<Item = UVIndex>> {
        if sites == 0 || sites > 5 {
            return Err(Error::TooManySites { sites, cap: 5 });
        }
        let count = 1u128 << (1u32 << (sites - 1));
        Ok((0..count).flat_map(move |u| (0..count).map(move |v| UVIndex { sites, u, v })))
    }
}

/// `B_uv^{(N)}(z) = sum_k (-1)^{u_k} z^{v_k} s_k^{(N)}(z)`.
///
/// Builds the summand table for each call; loops over many indices should
/// use [`SummandTable::b_uv`].
pub fn b_uv(index: UVIndex) -> BellPolynomial {
    let table = SummandTable::new(index.sites).expect("UVIndex sites are within table limits");
    table.combine(index.u, index.v)
}

impl SummandTable {
    pub fn b_uv(&self, index: UVIndex) -> Result<BellPolynomial> {
        if index.sites != self.sites() {
            return Err(Error::LengthMismatch {
                expected: 1usize << self.sites(),
                found: 1usize << index.sites,
            });
        }
        Ok(self.combine(index.u, index.v))
    }
}

/// Constant coefficient of `B_uv` from the bit patterns alone:
/// `<u^, v^> - <u, v^>` where `<x, y>` counts common one bits.
pub fn b0_from_uv(index: UVIndex) -> i64 {
    let full = index.full();
    let (u_hat, v_hat) = (!index.u & full, !index.v & full);
    (u_hat & v_hat).count_ones() as i64 - (index.u & v_hat).count_ones() as i64
}
