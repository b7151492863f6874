//! Adequacy testing, exhaustive enumeration of adequate sets, minimal-size
//! search, and loss-probability evaluation.
//!
//! A nonempty set `A` of configuration codes is *adequate* when every code
//! `k` in the universe has some player whose line through `k` contains at
//! least Q-1 elements of `A` (counting `k` itself when `k` is in `A`). The
//! adequate sets are exactly the loss sets of viable team strategies, so
//! minimizing their probability mass maximizes the winning probability.
//!
//! The *weak* variant only constrains codes outside `A`. The two readings
//! can disagree; [`weak_only_sets`] reports the sets separating them rather
//! than silently preferring one.

mod engine;

use crate::error::{Error, Result};
use crate::game::{Code, GameShape};
use crate::probability::ProbabilityVector;
use crate::scalar::Scalar;
use engine::Engine;

/// Full enumeration is refused beyond this universe size.
pub const ENUMERATION_MAX_CODES: u32 = 30;

/// Incremental minimal-size search is refused beyond this universe size.
pub const MIN_DAS_MAX_CODES: u32 = 32;

/// A validated adequate-set candidate: sorted duplicate-free codes plus a
/// membership bitmask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdequateSet {
    shape: GameShape,
    codes: Vec<Code>,
    mask: Vec<u64>,
}

impl AdequateSet {
    /// Builds a set from codes in any order; rejects empty input,
    /// duplicates, and out-of-range codes.
    pub fn new(shape: GameShape, mut codes: Vec<Code>) -> Result<Self> {
        if codes.is_empty() {
            return Err(Error::EmptyCandidate);
        }
        codes.sort_unstable();
        for w in codes.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidCodeSet {
                    reason: format!("duplicate code {}", w[0]),
                });
            }
        }
        shape.check_code(*codes.last().unwrap())?;
        let mut mask = vec![0u64; (shape.num_codes() as usize).div_ceil(64)];
        for &c in &codes {
            mask[c as usize / 64] |= 1 << (c % 64);
        }
        Ok(AdequateSet { shape, codes, mask })
    }

    fn from_sorted_unchecked(shape: GameShape, codes: Vec<Code>) -> Self {
        let mut mask = vec![0u64; (shape.num_codes() as usize).div_ceil(64)];
        for &c in &codes {
            mask[c as usize / 64] |= 1 << (c % 64);
        }
        AdequateSet { shape, codes, mask }
    }

    pub fn shape(&self) -> &GameShape {
        &self.shape
    }

    pub fn codes(&self) -> &[Code] {
        &self.codes
    }

    /// Number of elements; the set's dimension.
    pub fn das(&self) -> usize {
        self.codes.len()
    }

    pub fn contains(&self, code: Code) -> bool {
        code < self.shape.num_codes() && self.mask[code as usize / 64] & (1 << (code % 64)) != 0
    }

    pub fn is_adequate(&self) -> Result<bool> {
        is_adequate(&self.shape, &self.codes)
    }

    /// Probability mass of the set under `probs`; the loss probability of
    /// the strategy built from it.
    pub fn phi<T: Scalar>(&self, probs: &ProbabilityVector<T>) -> Result<T> {
        phi(&self.shape, &self.codes, probs)
    }

    /// The set with colors relabeled digit-wise (`d -> perm[d]`).
    pub fn permuted_colors(&self, perm: &[u8]) -> Result<AdequateSet> {
        let codes = self
            .codes
            .iter()
            .map(|&c| crate::game::permute_colors(&self.shape, c, perm))
            .collect::<Result<Vec<_>>>()?;
        AdequateSet::new(self.shape, codes)
    }

    /// The set with players reordered (`new position i <- old perm[i]`).
    pub fn permuted_players(&self, perm: &[usize]) -> Result<AdequateSet> {
        let codes = self
            .codes
            .iter()
            .map(|&c| crate::game::permute_players(&self.shape, c, perm))
            .collect::<Result<Vec<_>>>()?;
        AdequateSet::new(self.shape, codes)
    }
}

fn validate_candidate(shape: &GameShape, candidate: &[Code]) -> Result<Vec<u64>> {
    if candidate.is_empty() {
        return Err(Error::EmptyCandidate);
    }
    let m = shape.num_codes() as usize;
    let mut member = vec![0u64; m.div_ceil(64)];
    for &c in candidate {
        shape.check_code(c)?;
        let word = &mut member[c as usize / 64];
        if *word & (1 << (c % 64)) != 0 {
            return Err(Error::InvalidCodeSet {
                reason: format!("duplicate code {c}"),
            });
        }
        *word |= 1 << (c % 64);
    }
    Ok(member)
}

fn covered(shape: &GameShape, member: &[u64], code: Code, threshold: usize) -> bool {
    let q = shape.colors() as u32;
    for player in 0..shape.players() {
        let stride = shape.stride(player);
        let digit = (code / stride) % q;
        let base = code - digit * stride;
        let mut hits = 0usize;
        for c in 0..q {
            let k = (base + c * stride) as usize;
            if member[k / 64] & (1 << (k % 64)) != 0 {
                hits += 1;
                if hits >= threshold {
                    return true;
                }
            }
        }
    }
    false
}

/// Whether `candidate` is adequate: every code in the universe must have a
/// player whose line through it carries at least Q-1 candidate elements,
/// the code itself included when it belongs to the candidate.
pub fn is_adequate(shape: &GameShape, candidate: &[Code]) -> Result<bool> {
    let member = validate_candidate(shape, candidate)?;
    let threshold = shape.colors() - 1;
    for code in 0..shape.num_codes() {
        if !covered(shape, &member, code, threshold) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The weaker reading that constrains only codes outside the candidate.
pub fn is_adequate_weak(shape: &GameShape, candidate: &[Code]) -> Result<bool> {
    let member = validate_candidate(shape, candidate)?;
    let threshold = shape.colors() - 1;
    for code in 0..shape.num_codes() {
        if member[code as usize / 64] & (1 << (code % 64)) != 0 {
            continue;
        }
        if !covered(shape, &member, code, threshold) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Probability that the hat configuration lands in `codes`.
pub fn phi<T: Scalar>(
    shape: &GameShape,
    codes: &[Code],
    probs: &ProbabilityVector<T>,
) -> Result<T> {
    probs.check_colors(shape.colors())?;
    let q = shape.colors() as u32;
    let mut sum = T::zero();
    for &code in codes {
        shape.check_code(code)?;
        let mut term = probs.get((code % q) as usize).clone();
        let mut rest = code / q;
        for _ in 1..shape.players() {
            term = term * probs.get((rest % q) as usize).clone();
            rest /= q;
        }
        sum = sum + term;
    }
    Ok(sum)
}

fn check_das(shape: &GameShape, das: usize) -> Result<()> {
    let m = shape.num_codes() as usize;
    if das == 0 || das > m {
        return Err(Error::DasOutOfRange { das, max: m });
    }
    Ok(())
}

fn enumeration_capacity(shape: &GameShape) -> Result<()> {
    if shape.num_codes() > ENUMERATION_MAX_CODES {
        return Err(Error::Capacity(format!(
            "full enumeration supports at most {ENUMERATION_MAX_CODES} configurations, \
             shape has {}; use the incremental minimal-size search instead",
            shape.num_codes()
        )));
    }
    Ok(())
}

fn auto_workers() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

/// All adequate sets of the given size, in lexicographic order of their
/// code sequences.
pub fn enumerate_adequate_sets(shape: &GameShape, das: usize) -> Result<Vec<AdequateSet>> {
    enumerate_adequate_sets_with_workers(shape, das, auto_workers())
}

/// [`enumerate_adequate_sets`] with an explicit worker count. The search
/// space is partitioned by the first element of the combination; partitions
/// are searched independently and merged in order, so the output does not
/// depend on the worker count.
pub fn enumerate_adequate_sets_with_workers(
    shape: &GameShape,
    das: usize,
    workers: usize,
) -> Result<Vec<AdequateSet>> {
    check_das(shape, das)?;
    enumeration_capacity(shape)?;
    let engine = Engine::new(shape)?;
    let sets = engine.enumerate(das, false, workers);
    Ok(sets
        .into_iter()
        .map(|codes| AdequateSet::from_sorted_unchecked(*shape, codes))
        .collect())
}

/// Size-`das` sets adequate under the weak (outside-only) reading but not
/// under the normative one. A nonempty result means the two readings of the
/// adequacy condition genuinely diverge at this size.
pub fn weak_only_sets(shape: &GameShape, das: usize) -> Result<Vec<AdequateSet>> {
    weak_only_sets_with_workers(shape, das, auto_workers())
}

pub fn weak_only_sets_with_workers(
    shape: &GameShape,
    das: usize,
    workers: usize,
) -> Result<Vec<AdequateSet>> {
    check_das(shape, das)?;
    enumeration_capacity(shape)?;
    let engine = Engine::new(shape)?;
    let weak = engine.enumerate(das, true, workers);
    let mut out = Vec::new();
    for codes in weak {
        if !is_adequate(shape, &codes)? {
            out.push(AdequateSet::from_sorted_unchecked(*shape, codes));
        }
    }
    Ok(out)
}

/// Smallest size admitting an adequate set, with the lexicographically
/// first witness of that size.
pub fn find_min_das(shape: &GameShape) -> Result<(usize, AdequateSet)> {
    find_min_das_with_workers(shape, auto_workers())
}

pub fn find_min_das_with_workers(
    shape: &GameShape,
    workers: usize,
) -> Result<(usize, AdequateSet)> {
    let m = shape.num_codes();
    if m > MIN_DAS_MAX_CODES {
        return Err(Error::Capacity(format!(
            "minimal-size search supports at most {MIN_DAS_MAX_CODES} configurations, \
             shape has {m}"
        )));
    }
    let engine = Engine::new(shape)?;
    for das in 1..=m as usize {
        if let Some(codes) = engine.first_witness(das, workers) {
            return Ok((das, AdequateSet::from_sorted_unchecked(*shape, codes)));
        }
    }
    // the full universe is always adequate to itself
    Err(Error::Internal(
        "no adequate set found up to the full universe".into(),
    ))
}
