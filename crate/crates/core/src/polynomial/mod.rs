//! Bell polynomials `B(z) = sum_k b_k z^k`.
//!
//! The polynomial view shares its coefficients with [`CoefficientVector`]; it
//! exposes the structure of the complete family through the summands
//! `s_k^{(N)}` and the sign/parity numbers `(u, v)` of [`UVIndex`].
//!
//! An alternative parameterization uses a single `2^N`-bit number `w` with
//! `B_w = 1/2 * sum_k (-1)^{w_k} t_k^{(N)}(z)`; it covers the same set (see
//! [`t_poly`]) but no explicit map `w <-> (u, v)` is provided here.

mod normalized;
mod summand;
mod uv;

pub use normalized::{Dyadic, NormalizedBellPolynomial};
pub use summand::{s_poly, s_poly_closed_form, t_poly, SummandTable};
pub use uv::{b0_from_uv, b_uv, UVIndex, MAX_UV_SITES};

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::inequality::CoefficientVector;

/// Integer polynomial of degree below `2^N`, stored as `2^N` ascending coefficients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BellPolynomial {
    sites: u32,
    coeffs: Vec<i64>,
}

impl BellPolynomial {
    /// Builds the polynomial from ascending coefficients; missing high
    /// coefficients are zero.
    pub fn new(sites: u32, mut coeffs: Vec<i64>) -> Result<Self> {
        if sites > 62 {
            return Err(Error::TooManySites { sites, cap: 62 });
        }
        let len = 1usize << sites;
        if coeffs.len() > len {
            return Err(Error::LengthMismatch { expected: len, found: coeffs.len() });
        }
        coeffs.resize(len, 0);
        Ok(BellPolynomial { sites, coeffs })
    }

    pub(crate) fn from_full(sites: u32, coeffs: Vec<i64>) -> Self {
        debug_assert_eq!(coeffs.len(), 1usize << sites);
        BellPolynomial { sites, coeffs }
    }

    pub fn sites(&self) -> u32 {
        self.sites
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&b| b != 0)
    }

    /// `B(1)`, the signed coefficient sum.
    pub fn at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// `B(-1)`.
    pub fn at_minus_one(&self) -> i64 {
        self.coeffs.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b } else { -b }).sum()
    }

    /// `B(0)`.
    pub fn at_zero(&self) -> i64 {
        self.coeffs[0]
    }

    /// Exact value at a rational point (Horner scheme).
    pub fn eval(&self, z: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for &b in self.coeffs.iter().rev() {
            acc = acc * z + BigRational::from_integer(BigInt::from(b));
        }
        acc
    }

    /// `B(-z)`.
    pub fn reflected(&self) -> BellPolynomial {
        let coeffs = self.coeffs.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b } else { -b }).collect();
        BellPolynomial { sites: self.sites, coeffs }
    }

    /// `-B(z)`.
    pub fn negated(&self) -> BellPolynomial {
        BellPolynomial { sites: self.sites, coeffs: self.coeffs.iter().map(|b| -b).collect() }
    }

    /// `z^{2^N-1} B(1/z)`.
    pub fn reversed(&self) -> BellPolynomial {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        BellPolynomial { sites: self.sites, coeffs }
    }

    /// `B(z^2)`, viewed as a polynomial for one more site.
    pub fn compose_square(&self) -> BellPolynomial {
        let mut coeffs = vec![0; self.coeffs.len() * 2];
        for (k, &b) in self.coeffs.iter().enumerate() {
            coeffs[2 * k] = b;
        }
        BellPolynomial { sites: self.sites + 1, coeffs }
    }

    /// `(1 + z^{2^N}) A(z) + (1 - z^{2^N}) B(z)`, a polynomial for `N + 1` sites.
    pub fn bowtie(&self, other: &BellPolynomial) -> Result<BellPolynomial> {
        if self.sites != other.sites {
            return Err(Error::LengthMismatch { expected: self.coeffs.len(), found: other.coeffs.len() });
        }
        let (left, right) = (self.at_one().unsigned_abs(), other.at_one().unsigned_abs());
        if left != right {
            return Err(Error::BoundMismatch { left, right });
        }
        let sums = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b);
        let diffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b);
        Ok(BellPolynomial { sites: self.sites + 1, coeffs: sums.chain(diffs).collect() })
    }

    /// Scales by `2^{1-N}` in exact dyadic arithmetic.
    pub fn normalize(&self) -> NormalizedBellPolynomial {
        NormalizedBellPolynomial::from_polynomial(self)
    }

    pub fn to_coefficient_vector(&self) -> Result<CoefficientVector> {
        CoefficientVector::new(self.sites, self.coeffs.clone())
    }

    pub fn from_coefficient_vector(v: &CoefficientVector) -> BellPolynomial {
        BellPolynomial { sites: v.sites(), coeffs: v.coeffs().to_vec() }
    }
}

impl From<&CoefficientVector> for BellPolynomial {
    fn from(v: &CoefficientVector) -> Self {
        BellPolynomial::from_coefficient_vector(v)
    }
}

impl TryFrom<&BellPolynomial> for CoefficientVector {
    type Error = Error;

    fn try_from(p: &BellPolynomial) -> Result<Self> {
        p.to_coefficient_vector()
    }
}

/// Writes `c z^k` terms in ascending order with explicit signs, e.g.
/// `-1+z+z^2+z^3` or `2z^2`; the zero polynomial is `0`.
pub(crate) fn write_terms<C: Coefficient>(out: &mut String, coeffs: &[C]) {
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            out.push('-');
        } else if !first {
            out.push('+');
        }
        first = false;
        if k == 0 || !c.is_unit() {
            c.write_magnitude(out);
        }
        match k {
            0 => {}
            1 => out.push('z'),
            _ => {
                let _ = write!(out, "z^{k}");
            }
        }
    }
    if first {
        out.push('0');
    }
}

pub(crate) trait Coefficient {
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn write_magnitude(&self, out: &mut String);
}

impl Coefficient for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn is_unit(&self) -> bool {
        self.unsigned_abs() == 1
    }
    fn write_magnitude(&self, out: &mut String) {
        let _ = write!(out, "{}", self.unsigned_abs());
    }
}

impl fmt::Display for BellPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        write_terms(&mut out, &self.coeffs);
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn poly(sites: u32, coeffs: &[i64]) -> BellPolynomial {
        BellPolynomial::new(sites, coeffs.to_vec()).unwrap()
    }

    #[test]
    fn rendering() {
        assert_eq!(poly(2, &[1, 1, -1, 1]).to_string(), "1+z-z^2+z^3");
        assert_eq!(poly(2, &[-1, 1, 1, 1]).to_string(), "-1+z+z^2+z^3");
        assert_eq!(poly(2, &[0, 0, 2]).to_string(), "2z^2");
        assert_eq!(poly(2, &[0, 0, 0, -2]).to_string(), "-2z^3");
        assert_eq!(poly(2, &[-2]).to_string(), "-2");
        assert_eq!(poly(1, &[0, -1]).to_string(), "-z");
        assert_eq!(poly(2, &[]).to_string(), "0");
        assert_eq!(poly(3, &[2, 0, 0, -2, 0, 2, 2]).to_string(), "2-2z^3+2z^5+2z^6");
    }

    #[test]
    fn bowtie_examples() {
        let a = poly(2, &[1, 1, 1, -1]);
        let b = poly(2, &[1, -1, -1, -1]);
        assert_eq!(a.bowtie(&b).unwrap().to_string(), "2-2z^3+2z^5+2z^6");
        assert_eq!(a.bowtie(&poly(2, &[2])).unwrap().to_string(), "3+z+z^2-z^3-z^4+z^5+z^6-z^7");
        let doubled: Vec<i64> = a.coeffs().iter().map(|c| 2 * c).collect();
        assert_eq!(a.bowtie(&a).unwrap(), poly(3, &doubled));
        assert_eq!(a.bowtie(&poly(2, &[1])), Err(Error::BoundMismatch { left: 2, right: 1 }));
    }

    #[test]
    fn coefficient_vector_bridge() {
        let p = poly(2, &[1, 1, 1, -1]);
        let v = p.to_coefficient_vector().unwrap();
        assert_eq!(v.coeffs(), &[1, 1, 1, -1]);
        assert_eq!(BellPolynomial::from(&v), p);
        let q = poly(2, &[0, 0, 2]);
        assert_eq!(q.to_coefficient_vector().unwrap().coeffs(), &[0, 0, 2, 0]);
        assert_eq!(poly(2, &[1, -1]).to_coefficient_vector(), Err(Error::ZeroSum));
    }

    #[test]
    fn transforms_and_eval() {
        let p = poly(2, &[1, 1, 1, -1]);
        assert_eq!(p.reflected(), poly(2, &[1, -1, 1, 1]));
        assert_eq!(p.reversed(), poly(2, &[-1, 1, 1, 1]));
        assert_eq!(p.negated().at_one(), -2);
        assert_eq!(p.at_minus_one(), 2);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        // 1 + 1/2 + 1/4 - 1/8
        assert_eq!(p.eval(&half), BigRational::new(BigInt::from(13), BigInt::from(8)));
        assert_eq!(p.degree(), Some(3));
        assert!(BellPolynomial::new(1, vec![1, 2, 3]).is_err());
    }
}
