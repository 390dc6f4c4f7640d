//! Relabelings that map Bell inequalities to equivalent ones.
//!
//! The generators are liftings of relabelings of the experiment onto the
//! setting index `k` (sites are numbered from 0, site 0 being the most
//! significant digit of `k`):
//!
//! - permuting sites permutes the digits of `k`;
//! - swapping the two observables at site `i` flips digit `i` of `k`;
//! - flipping the measurement values of observable `j` at site `i` negates
//!   every coefficient whose digit `i` equals `j`;
//! - global negation negates every coefficient.
//!
//! This group is one reading of "permutations of sites, observables or
//! measurement values"; other formalizations are possible.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;

use super::{CoefficientVector, StandardForm};
use crate::error::{Error, Result};

/// Which generator families take part in [`symmetry_orbit`]. Global negation
/// is always included.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Symmetries {
    pub site_permutations: bool,
    pub observable_relabeling: bool,
    pub value_flips: bool,
}

impl Symmetries {
    pub const ALL: Symmetries =
        Symmetries { site_permutations: true, observable_relabeling: true, value_flips: true };
    pub const NEGATION_ONLY: Symmetries =
        Symmetries { site_permutations: false, observable_relabeling: false, value_flips: false };
}

#[inline]
fn digit_shift(sites: u32, site: u32) -> u32 {
    sites - 1 - site
}

fn permute_raw(sites: u32, coeffs: &[i64], perm: &[u32]) -> Vec<i64> {
    let mut out = alloc::vec![0; coeffs.len()];
    for (k, &b) in coeffs.iter().enumerate() {
        let mut target = 0usize;
        for (site, &dest) in perm.iter().enumerate() {
            let digit = (k >> digit_shift(sites, site as u32)) & 1;
            target |= digit << digit_shift(sites, dest);
        }
        out[target] = b;
    }
    out
}

fn relabel_raw(sites: u32, coeffs: &[i64], site: u32) -> Vec<i64> {
    let bit = 1usize << digit_shift(sites, site);
    (0..coeffs.len()).map(|k| coeffs[k ^ bit]).collect()
}

fn flip_raw(sites: u32, coeffs: &[i64], site: u32, observable: u8) -> Vec<i64> {
    let shift = digit_shift(sites, site);
    coeffs
        .iter()
        .enumerate()
        .map(|(k, &b)| if ((k >> shift) & 1) as u8 == observable { -b } else { b })
        .collect()
}

fn check_site(v: &CoefficientVector, site: u32) -> Result<()> {
    if site >= v.sites {
        return Err(Error::IndexOutOfRange { index: site as u128, len: v.sites as u128 });
    }
    Ok(())
}

/// Moves site `i` to position `perm[i]`.
pub fn permute_sites(v: &CoefficientVector, perm: &[u32]) -> Result<CoefficientVector> {
    let n = v.sites as usize;
    if perm.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: perm.len() });
    }
    let mut seen = alloc::vec![false; n];
    for &p in perm {
        let slot =
            seen.get_mut(p as usize).ok_or(Error::IndexOutOfRange { index: p as u128, len: n as u128 })?;
        if *slot {
            return Err(Error::IndexOutOfRange { index: p as u128, len: n as u128 });
        }
        *slot = true;
    }
    Ok(CoefficientVector { sites: v.sites, coeffs: permute_raw(v.sites, &v.coeffs, perm) })
}

/// Swaps the two observables at `site`.
pub fn relabel_observables(v: &CoefficientVector, site: u32) -> Result<CoefficientVector> {
    check_site(v, site)?;
    Ok(CoefficientVector { sites: v.sites, coeffs: relabel_raw(v.sites, &v.coeffs, site) })
}

/// Exchanges the outcomes `+1` and `-1` of `observable` at `site`.
pub fn flip_value(v: &CoefficientVector, site: u32, observable: u8) -> Result<CoefficientVector> {
    check_site(v, site)?;
    if observable > 1 {
        return Err(Error::IndexOutOfRange { index: observable as u128, len: 2 });
    }
    CoefficientVector::new(v.sites, flip_raw(v.sites, &v.coeffs, site, observable))
}

/// Closure of a vector under a set of symmetry generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    members: Vec<CoefficientVector>,
}

impl Orbit {
    /// Members in lexicographic order of their coefficients.
    pub fn members(&self) -> &[CoefficientVector] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: &CoefficientVector) -> bool {
        self.members.binary_search(v).is_ok()
    }

    /// Lexicographically smallest standard form among the members.
    pub fn canonical(&self) -> StandardForm {
        self.members
            .iter()
            .map(CoefficientVector::standard_form)
            .min_by(|a, b| a.coeffs().cmp(b.coeffs()))
            .expect("orbit contains its seed")
    }
}

/// Orbit of `v` under the selected generators plus global negation.
///
/// Fails with [`Error::ZeroSum`] if some image has vanishing coefficient sum,
/// which only happens when `v` is not a Bell inequality.
pub fn symmetry_orbit(v: &CoefficientVector, generators: Symmetries) -> Result<Orbit> {
    let sites = v.sites;
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(v.coeffs.clone());
    queue.push_back(v.coeffs.clone());

    while let Some(current) = queue.pop_front() {
        let mut images: Vec<Vec<i64>> = Vec::new();
        images.push(current.iter().map(|b| -b).collect());
        if generators.site_permutations {
            for site in 0..sites.saturating_sub(1) {
                let mut perm: Vec<u32> = (0..sites).collect();
                perm.swap(site as usize, site as usize + 1);
                images.push(permute_raw(sites, &current, &perm));
            }
        }
        if generators.observable_relabeling {
            for site in 0..sites {
                images.push(relabel_raw(sites, &current, site));
            }
        }
        if generators.value_flips {
            for site in 0..sites {
                for observable in 0..2 {
                    images.push(flip_raw(sites, &current, site, observable));
                }
            }
        }
        for image in images {
            if !seen.contains(&image) {
                seen.insert(image.clone());
                queue.push_back(image);
            }
        }
    }

    let members =
        seen.into_iter().map(|coeffs| CoefficientVector::new(sites, coeffs)).collect::<Result<Vec<_>>>()?;
    Ok(Orbit { members })
}
