use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::{self, Write as _};
use core::ops::Add;

use super::{write_terms, BellPolynomial, Coefficient};

/// Exact dyadic rational `num / 2^exp`, kept in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: i64,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: i64, exp: u32) -> Dyadic {
        let mut d = Dyadic { num, exp };
        d.reduce();
        d
    }

    pub fn integer(num: i64) -> Dyadic {
        Dyadic { num, exp: 0 }
    }

    fn reduce(&mut self) {
        if self.num == 0 {
            self.exp = 0;
            return;
        }
        let twos = self.num.trailing_zeros().min(self.exp);
        self.num >>= twos;
        self.exp -= twos;
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    /// Denominator `2^exp`.
    pub fn denominator_log2(&self) -> u32 {
        self.exp
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { num: self.num.abs(), ..*self }
    }

    pub fn is_one(&self) -> bool {
        self.num == 1 && self.exp == 0
    }
}

impl Add for Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: Dyadic) -> Dyadic {
        let exp = self.exp.max(rhs.exp);
        let a = self.num << (exp - self.exp);
        let b = rhs.num << (exp - rhs.exp);
        Dyadic::new(a + b, exp)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let exp = self.exp.max(other.exp);
        let a = (self.num as i128) << (exp - self.exp);
        let b = (other.num as i128) << (exp - other.exp);
        a.cmp(&b)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, 1u64 << self.exp)
        }
    }
}

impl Coefficient for Dyadic {
    fn is_zero(&self) -> bool {
        self.num == 0
    }
    fn is_negative(&self) -> bool {
        self.num < 0
    }
    fn is_unit(&self) -> bool {
        self.num.unsigned_abs() == 1 && self.exp == 0
    }
    fn write_magnitude(&self, out: &mut String) {
        let _ = write!(out, "{}", self.abs());
    }
}

/// `2^{1-N} B(z)`: for members of the `B_uv` family the values at `z = 1`
/// and `z = -1` have absolute value one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalizedBellPolynomial {
    sites: u32,
    coeffs: Vec<Dyadic>,
}

impl NormalizedBellPolynomial {
    pub(super) fn from_polynomial(p: &BellPolynomial) -> Self {
        let exp = p.sites().saturating_sub(1);
        // N = 0 would need a factor 2, which no Bell polynomial uses
        let coeffs = p.coeffs().iter().map(|&b| Dyadic::new(b, exp)).collect();
        NormalizedBellPolynomial { sites: p.sites(), coeffs }
    }

    pub fn sites(&self) -> u32 {
        self.sites
    }

    pub fn coeffs(&self) -> &[Dyadic] {
        &self.coeffs
    }

    pub fn at_one(&self) -> Dyadic {
        self.coeffs.iter().fold(Dyadic::integer(0), |acc, &c| acc + c)
    }

    pub fn at_minus_one(&self) -> Dyadic {
        self.coeffs.iter().enumerate().fold(Dyadic::integer(0), |acc, (k, &c)| {
            acc + if k % 2 == 0 { c } else { Dyadic { num: -c.num, ..c } }
        })
    }

    /// Integer numerators over the common denominator `2^exp`.
    pub fn over_common_denominator(&self) -> (Vec<i64>, u32) {
        let exp = self.coeffs.iter().map(|c| c.exp).max().unwrap_or(0);
        (self.coeffs.iter().map(|c| c.num << (exp - c.exp)).collect(), exp)
    }
}

/// `(1-z^3+z^5+z^6)/2` style: numerators over the common denominator.
impl fmt::Display for NormalizedBellPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (nums, exp) = self.over_common_denominator();
        let mut out = String::new();
        write_terms(&mut out, &nums);
        if exp == 0 {
            f.write_str(&out)
        } else {
            write!(f, "({out})/{}", 1u64 << exp)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::{b_uv, UVIndex};
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn dyadic_arithmetic() {
        assert_eq!(Dyadic::new(4, 3), Dyadic::new(1, 1));
        assert_eq!(Dyadic::new(1, 1) + Dyadic::new(1, 1), Dyadic::integer(1));
        assert_eq!(Dyadic::new(-3, 2).to_string(), "-3/4");
        assert!(Dyadic::new(1, 2) < Dyadic::new(1, 1));
        assert_eq!(Dyadic::new(0, 5), Dyadic::integer(0));
    }

    #[test]
    fn normalization_examples() {
        let two = BellPolynomial::new(2, vec![2]).unwrap().normalize();
        assert_eq!(two.to_string(), "1");
        let chsh = b_uv(UVIndex::new(2, 0, 2).unwrap()).normalize();
        assert_eq!(chsh.to_string(), "(1+z+z^2-z^3)/2");
        assert!(chsh.at_one().is_one());
        assert!(chsh.at_minus_one().abs().is_one());
        let mabk = BellPolynomial::new(3, vec![2, 0, 0, -2, 0, 2, 2]).unwrap().normalize();
        assert_eq!(mabk.to_string(), "(1-z^3+z^5+z^6)/2");
        assert!(mabk.at_one().abs().is_one() && mabk.at_minus_one().abs().is_one());
    }

    #[test]
    fn unit_values_over_family() {
        for n in 1..=4 {
            for i in UVIndex::all(n).unwrap() {
                let p = b_uv(i).normalize();
                assert!(p.at_one().abs().is_one(), "{i:?}");
                assert!(p.at_minus_one().abs().is_one(), "{i:?}");
            }
        }
    }
}
