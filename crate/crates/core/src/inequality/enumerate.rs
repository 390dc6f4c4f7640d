use core::ops::Range;

use super::CoefficientVector;
use crate::error::{Error, Result};
use crate::hadamard::SignMaskTransform;

/// Beyond five sites the `2^{2^N}` sign vectors cannot be walked.
pub const MAX_ENUMERATION_SITES: u32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// Caller consumes items as they arrive instead of collecting them.
    pub streaming: bool,
    /// Largest site count allowed without `streaming`.
    pub materialize_cap: u32,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { streaming: false, materialize_cap: 4 }
    }
}

impl EnumerateOptions {
    pub fn streaming() -> Self {
        EnumerateOptions { streaming: true, ..Self::default() }
    }
}

/// Iterator over `(c, H c)` for sign masks `c` in increasing order.
#[derive(Clone, Debug)]
pub struct Enumeration {
    transform: SignMaskTransform,
    next: u64,
    end: u64,
}

impl Iterator for Enumeration {
    type Item = (u64, CoefficientVector);

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.end {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        let coeffs = self.transform.apply(mask);
        // Every raw vector has coefficient sum +-2^N.
        let vector = CoefficientVector { sites: self.transform.sites(), coeffs };
        Some((mask, vector))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Enumeration {}

/// All `2^{2^N}` raw Bell inequalities for `sites` sites, tagged with the sign
/// mask that generates them.
pub fn enumerate(sites: u32, options: EnumerateOptions) -> Result<Enumeration> {
    if !options.streaming && sites > options.materialize_cap {
        return Err(Error::StreamingRequired { sites, cap: options.materialize_cap });
    }
    enumerate_range(sites, 0..total_count(sites)?)
}

/// The slice of [`enumerate`] whose sign masks fall into `masks`.
pub fn enumerate_range(sites: u32, masks: Range<u64>) -> Result<Enumeration> {
    let total = total_count(sites)?;
    if masks.end > total {
        return Err(Error::IndexOutOfRange { index: masks.end as u128, len: total as u128 });
    }
    Ok(Enumeration {
        transform: SignMaskTransform::new(sites)?,
        next: masks.start,
        end: masks.end.max(masks.start),
    })
}

fn total_count(sites: u32) -> Result<u64> {
    if sites == 0 {
        return Err(Error::TooFewSites { sites, min: 1 });
    }
    if sites > MAX_ENUMERATION_SITES {
        return Err(Error::TooManySites { sites, cap: MAX_ENUMERATION_SITES });
    }
    Ok(1u64 << (1u32 << sites))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use alloc::vec;
    use alloc::vec::Vec;

    #[test]
    fn one_site() {
        let all: Vec<_> = enumerate(1, EnumerateOptions::default()).unwrap().collect();
        assert_eq!(all.len(), 4);
        let coeffs: BTreeSet<Vec<i64>> = all.iter().map(|(_, v)| v.coeffs().to_vec()).collect();
        let expected: BTreeSet<Vec<i64>> =
            [vec![2, 0], vec![0, 2], vec![0, -2], vec![-2, 0]].into_iter().collect();
        assert_eq!(coeffs, expected);
        assert_eq!(all.iter().map(|(c, _)| *c).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn two_sites_split() {
        let all: Vec<_> = enumerate(2, EnumerateOptions::default()).unwrap().collect();
        assert_eq!(all.len(), 16);
        let single = all.iter().filter(|(_, v)| v.terms() == 1 && v.bound() == 4).count();
        let chsh = all.iter().filter(|(_, v)| v.coeffs().iter().all(|b| b.abs() == 2)).count();
        assert_eq!((single, chsh), (8, 8));
        assert_eq!(all[1].1.coeffs(), &[2, -2, -2, -2]);
    }

    #[test]
    fn counts_and_caps() {
        assert_eq!(enumerate(3, EnumerateOptions::default()).unwrap().count(), 256);
        assert_eq!(
            enumerate(5, EnumerateOptions::default()).unwrap_err(),
            Error::StreamingRequired { sites: 5, cap: 4 }
        );
        let stream = enumerate(5, EnumerateOptions::streaming()).unwrap();
        assert_eq!(stream.len(), 1usize << 32);
        assert!(enumerate(6, EnumerateOptions::streaming()).is_err());
        assert!(enumerate(0, EnumerateOptions::default()).is_err());
    }

    #[test]
    fn ranges_partition_the_stream() {
        let whole: Vec<_> = enumerate(3, EnumerateOptions::default()).unwrap().collect();
        let mut pieces = Vec::new();
        for start in (0..256).step_by(40) {
            pieces.extend(enumerate_range(3, start..(start + 40).min(256)).unwrap());
        }
        assert_eq!(whole, pieces);
        assert!(enumerate_range(2, 0..17).is_err());
    }
}
