//! Digit-signature patterns, their probability polynomials, and the
//! dominance order that singles out the minimal-loss patterns.
//!
//! The signature of a configuration counts its digits per color (the last
//! color's count is implied). A set's *pattern* counts its elements per
//! signature, so the set's probability mass is the polynomial
//! `sum coeff(e) * prod probs[c]^e_c` and sets with equal patterns have
//! equal mass under every distribution.
//!
//! With colors sorted by descending probability, one monomial is pointwise
//! below another exactly when the exponent prefix sums dominate; shifting
//! coefficient mass along that order can only increase the polynomial.
//! Pattern dominance is therefore certified by a feasible transport (a
//! max-flow check) and refuted by sampling; neither side can contradict
//! the other.

use crate::adequate::AdequateSet;
use crate::error::{Error, Result};
use crate::game::{decode_config, GameShape};
use crate::probability::ProbabilityVector;
use crate::scalar::{ipow, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// Slack below which a sampled gap does not refute dominance.
const REFUTATION_TOLERANCE: f64 = 1e-12;

/// Seed for the pseudo-random half of the refutation sample.
const REFUTATION_SEED: u64 = 0x4861_7447_616d_6531;

/// Exponent tuples `(e_0, .., e_{Q-2})` with sum at most N, in ascending
/// lexicographic order. For three players and three colors this is the
/// fixed ten-slot order 00 01 02 03 10 11 12 20 21 30.
pub fn signature_slots(players: usize, colors: usize) -> Vec<Vec<u8>> {
    let mut slots = Vec::new();
    let mut current = vec![0u8; colors - 1];
    loop {
        slots.push(current.clone());
        // next tuple in lexicographic order with sum <= players
        let mut pos = colors - 1;
        loop {
            if pos == 0 {
                return slots;
            }
            pos -= 1;
            current[pos] += 1;
            for e in &mut current[pos + 1..] {
                *e = 0;
            }
            let total: usize = current.iter().map(|&e| e as usize).sum();
            if total <= players {
                break;
            }
        }
    }
}

/// Coefficient vector counting a set's elements by digit signature.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    players: usize,
    colors: usize,
    coeffs: Vec<u32>,
}

impl Pattern {
    pub fn new(shape: &GameShape, coeffs: Vec<u32>) -> Result<Self> {
        let slots = signature_slots(shape.players(), shape.colors());
        if coeffs.len() != slots.len() {
            return Err(Error::InvalidShape {
                reason: format!(
                    "pattern needs {} coefficients for this shape, got {}",
                    slots.len(),
                    coeffs.len()
                ),
            });
        }
        Ok(Pattern {
            players: shape.players(),
            colors: shape.colors(),
            coeffs,
        })
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    /// Sum of the coefficients: the size of any set with this pattern.
    pub fn total(&self) -> u64 {
        self.coeffs.iter().map(|&c| c as u64).sum()
    }
}

impl std::fmt::Display for Pattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let strs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", strs.join(" "))
    }
}

/// The pattern of an adequate-set candidate.
pub fn pattern_of(set: &AdequateSet) -> Pattern {
    let shape = set.shape();
    let slots = signature_slots(shape.players(), shape.colors());
    let index: HashMap<&[u8], usize> = slots
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let mut coeffs = vec![0u32; slots.len()];
    for &code in set.codes() {
        let digits = decode_config(shape, code).expect("set codes are valid");
        let mut counts = vec![0u8; shape.colors() - 1];
        for &d in &digits {
            if (d as usize) < shape.colors() - 1 {
                counts[d as usize] += 1;
            }
        }
        coeffs[index[counts.as_slice()]] += 1;
    }
    Pattern {
        players: shape.players(),
        colors: shape.colors(),
        coeffs,
    }
}

/// Evaluates the pattern's probability polynomial.
pub fn phi_of_pattern<T: Scalar>(pattern: &Pattern, probs: &ProbabilityVector<T>) -> Result<T> {
    probs.check_colors(pattern.colors)?;
    let slots = signature_slots(pattern.players, pattern.colors);
    let mut sum = T::zero();
    for (slot, &coeff) in slots.iter().zip(&pattern.coeffs) {
        if coeff == 0 {
            continue;
        }
        let mut term = T::from_u64(coeff as u64);
        let mut used = 0u32;
        for (color, &exp) in slot.iter().enumerate() {
            term = term * ipow(probs.get(color), exp as u32);
            used += exp as u32;
        }
        term = term * ipow(probs.get(pattern.colors - 1), pattern.players as u32 - used);
        sum = sum + term;
    }
    Ok(sum)
}

/// Partial order on signature slots under which monomials are pointwise
/// ordered whenever the probabilities are sorted descending.
///
/// `u <= v` iff every exponent prefix sum of `u` is at most the matching
/// prefix sum of `v`; each unit step replaces a less probable color by a
/// more probable one, so `monomial(u) <= monomial(v)` pointwise on the
/// sorted simplex.
pub struct MonomialOrder {
    slots: Vec<Vec<u8>>,
    le: Vec<bool>,
}

impl MonomialOrder {
    pub fn new(players: usize, colors: usize) -> Self {
        let slots = signature_slots(players, colors);
        let l = slots.len();
        let mut le = vec![false; l * l];
        for (i, u) in slots.iter().enumerate() {
            for (j, v) in slots.iter().enumerate() {
                le[i * l + j] = prefix_dominates(u, v);
            }
        }
        MonomialOrder { slots, le }
    }

    pub fn slots(&self) -> &[Vec<u8>] {
        &self.slots
    }

    /// Whether mass at slot `u` may move to slot `v` in a dominance
    /// certificate.
    pub fn le(&self, u: usize, v: usize) -> bool {
        self.le[u * self.slots.len() + v]
    }
}

fn prefix_dominates(u: &[u8], v: &[u8]) -> bool {
    let mut su = 0u32;
    let mut sv = 0u32;
    for (a, b) in u.iter().zip(v) {
        su += *a as u32;
        sv += *b as u32;
        if su > sv {
            return false;
        }
    }
    true
}

/// Outcome of a dominance query between two patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominanceResult {
    /// A transport certificate proves the left pattern's polynomial is at
    /// most the right one's everywhere on the sorted simplex.
    Certified,
    /// A sampled sorted distribution shows the left polynomial strictly
    /// above the right one.
    Refuted,
    /// Neither a certificate nor a counterexample was found.
    Unknown,
}

/// Whether `p1` dominates `p2`: `phi(p1) <= phi(p2)` for every distribution
/// with probabilities sorted descending.
pub fn dominates(p1: &Pattern, p2: &Pattern) -> Result<DominanceResult> {
    check_comparable(p1, p2)?;
    let order = MonomialOrder::new(p1.players, p1.colors);
    if transport_feasible(&p1.coeffs, &p2.coeffs, &order) {
        return Ok(DominanceResult::Certified);
    }
    let samples = refutation_samples(p1.colors);
    Ok(refute_with_samples(p1, p2, &samples))
}

fn check_comparable(p1: &Pattern, p2: &Pattern) -> Result<()> {
    if p1.players != p2.players || p1.colors != p2.colors {
        return Err(Error::PatternShapeMismatch);
    }
    if p1.total() != p2.total() {
        return Err(Error::PatternTotalsDiffer {
            left: p1.total(),
            right: p2.total(),
        });
    }
    Ok(())
}

fn refute_with_samples(p1: &Pattern, p2: &Pattern, samples: &[Vec<f64>]) -> DominanceResult {
    for probs in samples {
        let v = ProbabilityVector::new(probs.clone()).expect("samples are valid");
        let phi1 = phi_of_pattern(p1, &v).expect("matching shape");
        let phi2 = phi_of_pattern(p2, &v).expect("matching shape");
        if phi1 > phi2 + REFUTATION_TOLERANCE {
            return DominanceResult::Refuted;
        }
    }
    DominanceResult::Unknown
}

/// Deterministic sample of descending-sorted distributions: a barycentric
/// grid with step 0.005 (three colors) plus 10,000 seeded pseudo-random
/// points.
pub(crate) fn refutation_samples(colors: usize) -> Vec<Vec<f64>> {
    let mut samples = Vec::new();
    if colors == 3 {
        const STEPS: u32 = 200;
        for i in 0..=STEPS {
            for j in 0..=(STEPS - i) {
                let k = STEPS - i - j;
                if i >= j && j >= k {
                    samples.push(vec![
                        i as f64 / STEPS as f64,
                        j as f64 / STEPS as f64,
                        k as f64 / STEPS as f64,
                    ]);
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(REFUTATION_SEED);
    for _ in 0..10_000 {
        samples.push(random_sorted_distribution(&mut rng, colors));
    }
    samples
}

pub(crate) fn random_sorted_distribution(rng: &mut impl Rng, colors: usize) -> Vec<f64> {
    // exponential spacings give a uniform point on the simplex
    let mut v: Vec<f64> = (0..colors)
        .map(|_| -(1.0 - rng.gen::<f64>()).ln())
        .collect();
    let sum: f64 = v.iter().sum();
    for x in &mut v {
        *x /= sum;
    }
    v.sort_by(|a, b| b.partial_cmp(a).unwrap());
    v
}

/// Transport feasibility: can all of `supply`'s mass move onto `demand`
/// along order-respecting edges? Decided by max-flow on the bipartite slot
/// graph.
fn transport_feasible(supply: &[u32], demand: &[u32], order: &MonomialOrder) -> bool {
    let l = supply.len();
    let total: u32 = supply.iter().sum();
    // nodes: 0 source, 1..=l supply slots, l+1..=2l demand slots, 2l+1 sink
    let mut graph = FlowGraph::new(2 * l + 2);
    for (u, &supplied) in supply.iter().enumerate() {
        if supplied == 0 {
            continue;
        }
        graph.add_edge(0, 1 + u, supplied);
        for (v, &demanded) in demand.iter().enumerate() {
            if demanded > 0 && order.le(u, v) {
                graph.add_edge(1 + u, 1 + l + v, supplied);
            }
        }
    }
    for (v, &demanded) in demand.iter().enumerate() {
        if demanded > 0 {
            graph.add_edge(1 + l + v, 2 * l + 1, demanded);
        }
    }
    graph.max_flow(0, 2 * l + 1) == total
}

struct FlowGraph {
    // edge list with residuals at even/odd pairs
    to: Vec<usize>,
    cap: Vec<u32>,
    adj: Vec<Vec<usize>>,
}

impl FlowGraph {
    fn new(nodes: usize) -> Self {
        FlowGraph {
            to: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: u32) {
        self.adj[from].push(self.to.len());
        self.to.push(to);
        self.cap.push(cap);
        self.adj[to].push(self.to.len());
        self.to.push(from);
        self.cap.push(0);
    }

    fn max_flow(&mut self, source: usize, sink: usize) -> u32 {
        let mut flow = 0;
        loop {
            // BFS for an augmenting path
            let mut prev_edge = vec![usize::MAX; self.adj.len()];
            let mut queue = std::collections::VecDeque::from([source]);
            let mut seen = vec![false; self.adj.len()];
            seen[source] = true;
            while let Some(u) = queue.pop_front() {
                for &e in &self.adj[u] {
                    let v = self.to[e];
                    if !seen[v] && self.cap[e] > 0 {
                        seen[v] = true;
                        prev_edge[v] = e;
                        queue.push_back(v);
                    }
                }
            }
            if !seen[sink] {
                return flow;
            }
            let mut bottleneck = u32::MAX;
            let mut v = sink;
            while v != source {
                let e = prev_edge[v];
                bottleneck = bottleneck.min(self.cap[e]);
                v = self.to[e ^ 1];
            }
            let mut v = sink;
            while v != source {
                let e = prev_edge[v];
                self.cap[e] -= bottleneck;
                self.cap[e ^ 1] += bottleneck;
                v = self.to[e ^ 1];
            }
            flow += bottleneck;
        }
    }
}

/// Distinct patterns of the given sets with multiplicities, sorted by
/// coefficient vector.
pub fn pattern_census(sets: &[AdequateSet]) -> Vec<(Pattern, usize)> {
    let mut census: HashMap<Pattern, usize> = HashMap::new();
    for set in sets {
        *census.entry(pattern_of(set)).or_insert(0) += 1;
    }
    let mut out: Vec<(Pattern, usize)> = census.into_iter().collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Groups the sets by the value of their mass under `probs`, within the
/// scalar's tie tolerance (exactly in rational mode). Returns
/// `(value, indices of sets)` sorted by ascending value.
///
/// Distinct patterns can share a value at a particular distribution, so
/// this census can be strictly coarser than [`pattern_census`]. At the
/// probability point (7/10, 2/10, 1/10) the 324 optimal-size sets fall
/// into 72 value classes but carry 75 distinct patterns: three pairs of
/// patterns collide there, e.g. masses of both `1 0 0 1 3 0 3 3 0 1` and
/// `0 2 1 1 1 3 0 2 1 1` equal exactly 151/250.
pub fn phi_value_classes<T: Scalar>(
    sets: &[AdequateSet],
    probs: &ProbabilityVector<T>,
) -> Result<Vec<(T, Vec<usize>)>> {
    let mut valued: Vec<(T, usize)> = sets
        .iter()
        .enumerate()
        .map(|(i, s)| Ok((s.phi(probs)?, i)))
        .collect::<Result<_>>()?;
    valued.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("comparable masses"));
    let mut classes: Vec<(T, Vec<usize>)> = Vec::new();
    for (value, index) in valued {
        match classes.last_mut() {
            Some((v, members)) if (value.clone() - v.clone()).abs() <= T::tie_tolerance() => {
                members.push(index);
            }
            _ => classes.push((value, vec![index])),
        }
    }
    Ok(classes)
}

/// Result of a minimal-pattern analysis.
#[derive(Debug, Clone)]
pub struct DominanceAnalysis {
    /// Indices (into the input) of the minimal patterns: those no other
    /// input pattern certifiably dominates.
    pub minimal: Vec<usize>,
    /// For every input pattern, the input index of a certified minimal
    /// dominator (itself when the pattern is minimal).
    pub dominator: Vec<usize>,
}

/// Finds the minimal patterns of the input under certified dominance and a
/// certified dominator for every pattern.
///
/// Fails rather than guessing when any pattern cannot be resolved against
/// the minimal candidates, or when two minimal candidates cannot be
/// separated by a sampled counterexample.
pub fn dominant_patterns(patterns: &[Pattern]) -> Result<DominanceAnalysis> {
    if patterns.is_empty() {
        return Ok(DominanceAnalysis {
            minimal: vec![],
            dominator: vec![],
        });
    }
    for p in &patterns[1..] {
        check_comparable(&patterns[0], p)?;
    }
    for (i, p) in patterns.iter().enumerate() {
        if patterns[..i].contains(p) {
            return Err(Error::InvalidShape {
                reason: format!("patterns must be pairwise distinct; {p} appears twice"),
            });
        }
    }

    let order = MonomialOrder::new(patterns[0].players, patterns[0].colors);
    let n = patterns.len();
    let mut cert = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                cert[i * n + j] =
                    transport_feasible(&patterns[i].coeffs, &patterns[j].coeffs, &order);
            }
        }
    }

    let minimal: Vec<usize> = (0..n)
        .filter(|&j| (0..n).all(|i| i == j || !cert[i * n + j]))
        .collect();

    let mut unresolved = Vec::new();
    let mut dominator = vec![usize::MAX; n];
    for j in 0..n {
        if minimal.contains(&j) {
            dominator[j] = j;
        } else if let Some(&m) = minimal.iter().find(|&&m| cert[m * n + j]) {
            dominator[j] = m;
        } else {
            unresolved.push(j);
        }
    }

    // minimal candidates must be mutually incomparable, witnessed by
    // sampled counterexamples in both directions
    let samples = refutation_samples(patterns[0].colors);
    for &a in &minimal {
        for &b in &minimal {
            if a != b
                && refute_with_samples(&patterns[a], &patterns[b], &samples)
                    != DominanceResult::Refuted
            {
                unresolved.push(b);
            }
        }
    }

    if !unresolved.is_empty() {
        unresolved.sort_unstable();
        unresolved.dedup();
        return Err(Error::DominanceUnresolved {
            patterns: unresolved
                .iter()
                .map(|&j| format!("#{j} ({})", patterns[j]))
                .collect::<Vec<_>>()
                .join(", "),
        });
    }

    Ok(DominanceAnalysis { minimal, dominator })
}
