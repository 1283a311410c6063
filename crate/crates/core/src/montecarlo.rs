//! Random-walk estimates of `λ_s(n)/|X|ⁿ` and `γ'(2n)/|X|^{2n}`.
//!
//! Trials are grouped in blocks of [`BLOCK`]; block `b` draws from ChaCha8
//! seeded with the 64-bit seed on stream `b`. Hit counts therefore depend only
//! on the seed and the trial count, however the blocks are split between
//! workers.

use core::ops::Range;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Element, Semigroup};
use crate::error::{usage, Result};

/// Trials per random stream.
pub const BLOCK: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkSample {
    pub seed: u64,
    pub n: usize,
    pub trials: u64,
    pub hits: u64,
}

impl WalkSample {
    pub fn estimate(&self) -> f64 {
        self.hits as f64 / self.trials as f64
    }

    /// `sqrt(p(1-p)/trials)` at the estimate `p`.
    pub fn stderr(&self) -> f64 {
        let p = self.estimate();
        libm::sqrt(p * (1.0 - p) / self.trials as f64)
    }
}

/// Number of blocks needed for `trials`.
pub fn block_count(trials: u64) -> u64 {
    trials.div_ceil(BLOCK)
}

fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

fn walk<R: Rng>(sg: &mut Semigroup, rng: &mut R, n: usize) -> Element {
    let k = sg.rank() as u64;
    let mut s = sg.root();
    for _ in 0..n {
        s = sg.step(s, rng.gen_range(0..k) as usize);
    }
    s
}

fn run_blocks<F>(seed: u64, trials: u64, blocks: Range<u64>, mut trial: F) -> u64
where
    F: FnMut(&mut ChaCha8Rng) -> bool,
{
    let mut hits = 0;
    for b in blocks {
        let len = trials.saturating_sub(b * BLOCK).min(BLOCK);
        let mut rng = block_rng(seed, b);
        for _ in 0..len {
            hits += trial(&mut rng) as u64;
        }
    }
    hits
}

fn check(sg: &Semigroup, trials: u64, target: Option<Element>) -> Result<()> {
    if trials == 0 {
        return Err(usage("at least one trial is required"));
    }
    if target.is_some_and(|s| s.index() >= sg.len()) {
        return Err(usage("target is not an element of this semigroup"));
    }
    Ok(())
}

/// Hits of `n`-step walks ending at `s`, over the given blocks only.
pub fn local_hits(
    sg: &mut Semigroup,
    s: Element,
    n: usize,
    seed: u64,
    trials: u64,
    blocks: Range<u64>,
) -> u64 {
    run_blocks(seed, trials, blocks, |rng| walk(sg, rng, n) == s)
}

/// Hits of two independent `n`-step walks meeting, over the given blocks only.
pub fn coincidence_hits(
    sg: &mut Semigroup,
    n: usize,
    seed: u64,
    trials: u64,
    blocks: Range<u64>,
) -> u64 {
    run_blocks(seed, trials, blocks, |rng| {
        let u = walk(sg, rng, n);
        walk(sg, rng, n) == u
    })
}

/// Estimates `λ_s(n)/|X|ⁿ`, the probability that a uniform `n`-step walk from
/// the identity of `S¹` ends at `s`.
pub fn estimate_local(
    sg: &mut Semigroup,
    s: Element,
    n: usize,
    trials: u64,
    seed: u64,
) -> Result<WalkSample> {
    check(sg, trials, Some(s))?;
    let hits = local_hits(sg, s, n, seed, trials, 0..block_count(trials));
    Ok(WalkSample {
        seed,
        n,
        trials,
        hits,
    })
}

/// Estimates `γ'(2n)/|X|^{2n}`, the probability that two independent `n`-step
/// walks end at the same element.
pub fn estimate_coincidence(
    sg: &mut Semigroup,
    n: usize,
    trials: u64,
    seed: u64,
) -> Result<WalkSample> {
    check(sg, trials, None)?;
    let hits = coincidence_hits(sg, n, seed, trials, 0..block_count(trials));
    Ok(WalkSample {
        seed,
        n,
        trials,
        hits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_family, Family};
    use alloc::string::ToString;
    use alloc::vec;

    fn session(family: Family) -> Semigroup {
        let (e, g) = make_family(&family).unwrap();
        Semigroup::new(e, g).unwrap()
    }

    fn within(sample: &WalkSample, target: f64) -> bool {
        let tol = 4.0
            * sample
                .stderr()
                .max(libm::sqrt(target * (1.0 - target) / sample.trials as f64));
        (sample.estimate() - target).abs() <= tol
    }

    #[test]
    fn local_examples() {
        let mut b = session(Family::Bicyclic);
        let root = b.root();
        let w = estimate_local(&mut b, root, 2, 20_000, 7).unwrap();
        assert!(within(&w, 0.25), "{}", w.estimate());

        let mut f = session(Family::Free { rank: 2 });
        let ab = f.parse_element("ab").unwrap();
        let w = estimate_local(&mut f, ab, 2, 20_000, 7).unwrap();
        assert!(within(&w, 0.25), "{}", w.estimate());

        let mut z = session(Family::IntegerLattice {
            dim: 1,
            gens: vec![("a".to_string(), vec![1]), ("b".to_string(), vec![-1])],
        });
        let root = z.root();
        let w = estimate_local(&mut z, root, 3, 5_000, 7).unwrap();
        assert_eq!(w.hits, 0);
        assert_eq!(w.stderr(), 0.0);
    }

    #[test]
    fn coincidence_examples() {
        let mut f = session(Family::Free { rank: 2 });
        let w = estimate_coincidence(&mut f, 1, 20_000, 3).unwrap();
        assert!(within(&w, 0.5), "{}", w.estimate());

        let mut fc = session(Family::FreeCommutative { rank: 2 });
        let w = estimate_coincidence(&mut fc, 2, 20_000, 3).unwrap();
        assert!(within(&w, 0.375), "{}", w.estimate());
    }

    #[test]
    fn reproducible_and_partition_free() {
        let mut f = session(Family::FreeCommutative { rank: 2 });
        let a = estimate_coincidence(&mut f, 3, 10_000, 11).unwrap();
        let b = estimate_coincidence(&mut f.clone(), 3, 10_000, 11).unwrap();
        assert_eq!(a, b);
        let blocks = block_count(10_000);
        let split: u64 = (0..blocks)
            .map(|i| coincidence_hits(&mut f.clone(), 3, 11, 10_000, i..i + 1))
            .sum();
        assert_eq!(split, a.hits);
        let other = estimate_coincidence(&mut f, 3, 10_000, 12).unwrap();
        assert_ne!(other.hits, a.hits);
    }

    #[test]
    fn rejects_zero_trials() {
        let mut f = session(Family::Free { rank: 2 });
        assert!(estimate_coincidence(&mut f, 1, 0, 0).is_err());
        let root = f.root();
        assert!(estimate_local(&mut f, root, 1, 0, 0).is_err());
    }
}
