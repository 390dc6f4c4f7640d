//! Rayon drivers over sign-mask ranges and strategy prefixes.
//!
//! Work is cut into fixed-size chunks whose results are merged in chunk
//! order, so every output is independent of the worker count.

use bellkit_core::analysis::{mask_count, ClassStats};
use bellkit_core::inequality::CoefficientVector;
use bellkit_core::lhv::{max_lhv, max_lhv_for_prefix, strategy_prefixes, DEFAULT_LHV_MAX_SITES};
use bellkit_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Masks per work item for enumeration and classification.
pub const CHUNK: u64 = 1 << 16;

/// Exhaustive statistics over all `2^{2^N}` sign masks.
pub fn classify_exhaustive(sites: u32) -> Result<ClassStats, Error> {
    let total = mask_count(sites)?;
    let chunks = total.div_ceil(CHUNK);
    let parts = (0..chunks)
        .into_par_iter()
        .map(|i| {
            let mut stats = ClassStats::new(sites)?;
            stats.record_masks(i * CHUNK..((i + 1) * CHUNK).min(total))?;
            Ok(stats)
        })
        .collect::<Result<Vec<_>, Error>>()?;
    merge_all(sites, parts)
}

/// Statistics over `samples` uniformly drawn sign masks.
///
/// Chunk `i` draws from `ChaCha8Rng::seed_from_u64(seed)` on stream `i`.
pub fn classify_sampled(sites: u32, samples: u64, seed: u64) -> Result<ClassStats, Error> {
    ClassStats::new(sites)?;
    let full = u64::MAX >> (64 - (1u32 << sites));
    let chunks = samples.div_ceil(CHUNK);
    let parts = (0..chunks)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let count = CHUNK.min(samples - i * CHUNK);
            let mut stats = ClassStats::new(sites)?;
            stats.record_masks((0..count).map(|_| rng.gen::<u64>() & full))?;
            Ok(stats)
        })
        .collect::<Result<Vec<_>, Error>>()?;
    merge_all(sites, parts)
}

fn merge_all(sites: u32, parts: Vec<ClassStats>) -> Result<ClassStats, Error> {
    let mut total = ClassStats::new(sites)?;
    for part in &parts {
        total.merge(part)?;
    }
    Ok(total)
}

/// [`max_lhv`] with the strategy prefixes of the first sites spread over workers.
pub fn max_lhv_parallel(v: &CoefficientVector) -> Result<u64, Error> {
    let sites = v.sites();
    if sites > DEFAULT_LHV_MAX_SITES {
        return Err(Error::TooManySites { sites, cap: DEFAULT_LHV_MAX_SITES });
    }
    if sites < 8 {
        return max_lhv(v);
    }
    let depth = 3;
    let prefixes: Vec<u64> = strategy_prefixes(sites, depth).collect();
    prefixes.into_par_iter().map(|p| max_lhv_for_prefix(v, depth, p)).try_reduce(|| 0, |a, b| Ok(a.max(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use bellkit_core::analysis::classify;

    #[test]
    fn exhaustive_matches_sequential() {
        for n in 1..=4 {
            let parallel = classify_exhaustive(n).unwrap().into_report(true);
            assert_eq!(parallel, classify(n).unwrap());
        }
    }

    #[test]
    fn sampling_is_reproducible_across_pools() {
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| classify_sampled(5, 200_000, 7).unwrap())
        };
        let one = run(1);
        assert_eq!(one.total(), 200_000);
        assert_eq!(one, run(4));
        assert_ne!(one, classify_sampled(5, 200_000, 8).unwrap());
    }

    #[test]
    fn parallel_search_matches() {
        let coeffs: Vec<i64> = (0..256).map(|k| ((k * 37 + 11) % 7) as i64 - 3).collect();
        let v = CoefficientVector::from_coeffs(coeffs).unwrap();
        assert_eq!(max_lhv_parallel(&v).unwrap(), max_lhv(&v).unwrap());
    }
}
