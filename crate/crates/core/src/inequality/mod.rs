//! Bell inequalities as integer coefficient vectors.
//!
//! A vector `(b_0, ..., b_{2^N-1})` stands for `|sum_k b_k E(k)| <= |sum_k b_k|`,
//! where the setting index `k` is the N-digit binary number whose digit for
//! site 1 is the most significant one. Vectors with vanishing coefficient sum
//! never arise from a sign function and are rejected on construction.

mod enumerate;
mod symmetry;

pub use enumerate::{enumerate, enumerate_range, EnumerateOptions, Enumeration, MAX_ENUMERATION_SITES};
pub use symmetry::{flip_value, permute_sites, relabel_observables, symmetry_orbit, Orbit, Symmetries};

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};
use core::ops::Deref;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::hadamard::{self, SignMaskTransform, MAX_MASK_SITES};

/// Coefficients `b_k` of one Bell inequality for `N >= 1` sites.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoefficientVector {
    sites: u32,
    coeffs: Vec<i64>,
}

impl CoefficientVector {
    /// Wraps `coeffs`, checking the length `2^N` and a nonzero coefficient sum.
    pub fn new(sites: u32, coeffs: Vec<i64>) -> Result<Self> {
        if sites == 0 {
            return Err(Error::TooFewSites { sites, min: 1 });
        }
        if sites > 62 {
            return Err(Error::TooManySites { sites, cap: 62 });
        }
        let expected = 1usize << sites;
        if coeffs.len() != expected {
            return Err(Error::LengthMismatch { expected, found: coeffs.len() });
        }
        let sum = coeffs.iter().try_fold(0i64, |acc, &b| acc.checked_add(b)).ok_or(Error::Overflow)?;
        if sum == 0 {
            return Err(Error::ZeroSum);
        }
        Ok(CoefficientVector { sites, coeffs })
    }

    /// Like [`CoefficientVector::new`], inferring `N` from the length.
    pub fn from_coeffs(coeffs: Vec<i64>) -> Result<Self> {
        let len = coeffs.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::LengthMismatch { expected: len.next_power_of_two().max(2), found: len });
        }
        Self::new(len.trailing_zeros(), coeffs)
    }

    /// The raw inequality `a = H_{2^N} c` for a `+1`/`-1` sign vector `c`.
    pub fn from_sign_vector(c: &[i64]) -> Result<Self> {
        let coeffs = hadamard::walsh_hadamard(c)?;
        Self::from_coeffs(coeffs)
    }

    /// Same as [`CoefficientVector::from_sign_vector`] with `c` packed into a
    /// mask (bit `j` set means `c_j = -1`); `N <= 6`.
    pub fn from_sign_mask(sites: u32, mask: u64) -> Result<Self> {
        if sites > MAX_MASK_SITES {
            return Err(Error::TooManySites { sites, cap: MAX_MASK_SITES });
        }
        let transform = SignMaskTransform::new(sites)?;
        if mask & !transform.full_mask() != 0 {
            return Err(Error::IndexOutOfRange {
                index: mask as u128,
                len: transform.full_mask() as u128 + 1,
            });
        }
        Self::new(sites, transform.apply(mask))
    }

    pub fn sites(&self) -> u32 {
        self.sites
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<i64> {
        self.coeffs
    }

    pub fn sum(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Right-hand side `|sum_k b_k|` of the inequality.
    pub fn bound(&self) -> u64 {
        self.sum().unsigned_abs()
    }

    /// Number of expectation values with a nonzero coefficient.
    pub fn terms(&self) -> usize {
        self.coeffs.iter().filter(|&&b| b != 0).count()
    }

    pub fn gcd(&self) -> u64 {
        self.coeffs.iter().fold(0u64, |g, &b| g.gcd(&b.unsigned_abs()))
    }

    /// Divides by the gcd of the coefficients and flips the sign if the sum is negative.
    pub fn standard_form(&self) -> StandardForm {
        let g = self.gcd() as i64;
        let sign = if self.sum() < 0 { -1 } else { 1 };
        let coeffs = self.coeffs.iter().map(|&b| sign * (b / g)).collect();
        StandardForm(CoefficientVector { sites: self.sites, coeffs })
    }

    /// Divides by the gcd of the coefficients, keeping the signs.
    pub fn reduced(&self) -> CoefficientVector {
        let g = self.gcd() as i64;
        CoefficientVector { sites: self.sites, coeffs: self.coeffs.iter().map(|&b| b / g).collect() }
    }

    pub fn is_standard_form(&self) -> bool {
        self.gcd() == 1 && self.sum() > 0
    }

    /// Lifts two N-site inequalities with equal bound to one for N+1 sites:
    /// `(a_0+b_0, ..., a_{2^N-1}+b_{2^N-1}, a_0-b_0, ..., a_{2^N-1}-b_{2^N-1})`.
    pub fn bowtie(&self, other: &CoefficientVector) -> Result<CoefficientVector> {
        if self.coeffs.len() != other.coeffs.len() {
            return Err(Error::LengthMismatch { expected: self.coeffs.len(), found: other.coeffs.len() });
        }
        if self.bound() != other.bound() {
            return Err(Error::BoundMismatch { left: self.bound(), right: other.bound() });
        }
        let sums = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.checked_add(*b));
        let diffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.checked_sub(*b));
        let coeffs = sums.chain(diffs).collect::<Option<Vec<_>>>().ok_or(Error::Overflow)?;
        CoefficientVector::new(self.sites + 1, coeffs)
    }

    /// Reverses the enumeration of observables at every site: the coefficient
    /// at `k` moves to `2^N - 1 - k`.
    pub fn reverse_observables(&self) -> CoefficientVector {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        CoefficientVector { sites: self.sites, coeffs }
    }

    /// `-b` for every coefficient.
    pub fn negated(&self) -> CoefficientVector {
        CoefficientVector { sites: self.sites, coeffs: self.coeffs.iter().map(|b| -b).collect() }
    }

    /// Renders the inequality with 1-based observable digits, e.g.
    /// `|E(1,1) − E(1,2) − E(2,1) − E(2,2)| ≤ 2`.
    pub fn to_traditional(&self) -> String {
        let mut out = String::from("|");
        let mut first = true;
        for (k, &b) in self.coeffs.iter().enumerate() {
            if b == 0 {
                continue;
            }
            match (first, b < 0) {
                (true, true) => out.push('−'),
                (true, false) => {}
                (false, true) => out.push_str(" − "),
                (false, false) => out.push_str(" + "),
            }
            first = false;
            let magnitude = b.unsigned_abs();
            if magnitude != 1 {
                let _ = write!(out, "{magnitude}");
            }
            out.push_str("E(");
            for digit in (0..self.sites).rev() {
                out.push(if (k >> digit) & 1 == 1 { '2' } else { '1' });
                if digit != 0 {
                    out.push(',');
                }
            }
            out.push(')');
        }
        let _ = write!(out, "| ≤ {}", self.bound());
        out
    }

    /// Shorthand `(b_0, b_1, ..., b_{2^N-1})`.
    pub fn shorthand(&self) -> String {
        let mut out = String::from("(");
        for (i, b) in self.coeffs.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            let _ = write!(out, "{b}");
        }
        out.push(')');
        out
    }
}

impl fmt::Display for CoefficientVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.shorthand())
    }
}

/// A coefficient vector with relatively prime entries and positive sum.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StandardForm(CoefficientVector);

impl StandardForm {
    pub fn as_vector(&self) -> &CoefficientVector {
        &self.0
    }

    pub fn into_vector(self) -> CoefficientVector {
        self.0
    }
}

impl Deref for StandardForm {
    type Target = CoefficientVector;

    fn deref(&self) -> &CoefficientVector {
        &self.0
    }
}

impl fmt::Display for StandardForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
