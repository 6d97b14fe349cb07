//! Permutation events behind the probabilistic proofs.
//!
//! Each block `X_k` of the ground set may receive one extra *separator*
//! element, ranked among the elements of its block. A block-preserving
//! permutation `σ` is drawn uniformly; for a pair `(A, B)` the event `E`
//! asks that, in every separated block, all of `A ∩ X_k` come before the
//! separator and all of `B ∩ X_k` after it, and in an unseparated block
//! that all of `A ∩ X_k` come before all of `B ∩ X_k`.
//!
//! Only the relative order inside a block matters, so a permutation is
//! stored as one rank vector per block.
//!
//! Three layouts are provided:
//!
//! | layout          | blocks                              | separators                  |
//! |-----------------|-------------------------------------|-----------------------------|
//! | `thm15`         | the whole ground set as one block   | one                         |
//! | `thm17`         | the given partition                 | one in every block          |
//! | `lemma31(l)`    | the given partition                 | every block except block `l` |
//!
//! # Sampling
//!
//! Monte Carlo samples are drawn in chunks of [`MC_CHUNK`] permutations.
//! Chunk `c` shuffles block `k` with a `ChaCha8Rng` seeded by
//! `seed_from_u64(seed)` on stream `(c << 16) | k`, using the
//! index-decrementing Fisher–Yates shuffle of `rand`. Chunks are
//! independent, so estimates are bit-identical for any number of worker
//! threads and on every platform.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::functionals::SystemClass;
use crate::ground::GroundSet;
use crate::rational::{binomial, factorial, from_biguint, int, recip, to_decimal, to_ratio_string, Rational};
use crate::sets::SetPair;

pub const DEFAULT_PERMUTATION_CAP: u64 = 10_000_000;
pub const MC_CHUNK: u64 = 4096;

/// Reads `BOLLOBAS_PERMUTATION_CAP`, falling back to the default.
pub fn permutation_cap_from_env() -> u64 {
    std::env::var("BOLLOBAS_PERMUTATION_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_PERMUTATION_CAP)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProofKind {
    /// One separator after the whole ground set.
    Thm15,
    /// A separator in every block.
    Thm17,
    /// A separator in every block except block `l` (1-based).
    Lemma31 { l: usize },
}

impl ProofKind {
    /// The system class whose events are pairwise disjoint.
    pub fn system_class(self) -> SystemClass {
        match self {
            Self::Thm15 | Self::Thm17 => SystemClass::Skew,
            Self::Lemma31 { .. } => SystemClass::Bollobas,
        }
    }
}

impl fmt::Display for ProofKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Thm15 => f.write_str("thm15"),
            Self::Thm17 => f.write_str("thm17"),
            Self::Lemma31 { l } => write!(f, "lemma31(l={l})"),
        }
    }
}

/// A ground set with its separators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedGround {
    base: GroundSet,
    proof: ProofKind,
    separated: Vec<bool>,
}

impl AugmentedGround {
    /// For `Thm15` the partition of `base` is dropped.
    pub fn new(base: &GroundSet, proof: ProofKind) -> Result<Self> {
        let (base, separated) = match proof {
            ProofKind::Thm15 => (base.unpartitioned(), vec![true]),
            ProofKind::Thm17 => (base.clone(), vec![true; base.r()]),
            ProofKind::Lemma31 { l } => {
                if l == 0 || l > base.r() {
                    return Err(Error::Precondition(format!(
                        "lemma31 block index {l} outside 1..={}",
                        base.r()
                    )));
                }
                (base.clone(), (1..=base.r()).map(|k| k != l).collect())
            }
        };
        Ok(Self { base, proof, separated })
    }

    pub fn base(&self) -> &GroundSet {
        &self.base
    }

    pub fn proof(&self) -> ProofKind {
        self.proof
    }

    pub fn is_separated(&self, k: usize) -> bool {
        self.separated[k]
    }

    /// `|X′_k|`: block size plus one if the block has a separator.
    pub fn block_len(&self, k: usize) -> usize {
        self.base.block(k).len() + self.separated[k] as usize
    }

    /// `|Ω| = ∏ |X′_k|!`.
    pub fn omega_size(&self) -> BigUint {
        (0..self.base.r()).fold(BigUint::one(), |acc, k| acc * factorial(self.block_len(k) as u64))
    }

    fn event(&self, pair: &SetPair) -> Result<PairEvent> {
        self.base.ensure_pair(pair)?;
        let blocks = (0..self.base.r())
            .map(|k| {
                let members: Vec<usize> = self.base.block(k).iter().collect();
                let local = |set: &crate::ElementSet| {
                    members
                        .iter()
                        .enumerate()
                        .filter(|(_, e)| set.contains(**e))
                        .map(|(j, _)| j)
                        .collect::<Vec<_>>()
                };
                BlockEvent {
                    a: local(pair.a()),
                    b: local(pair.b()),
                    separator: self.separated[k].then_some(members.len()),
                }
            })
            .collect();
        Ok(PairEvent { blocks })
    }
}

impl fmt::Display for AugmentedGround {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on blocks {:?}", self.proof, self.base.block_sizes())
    }
}

/// One block permutation per block: `ranks[k][j]` is the position given to
/// the `j`-th augmented element of block `k` (block elements in ascending
/// order, then the separator).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPermutation {
    pub ranks: Vec<Vec<usize>>,
}

impl fmt::Display for BlockPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ranks.iter().map(|r| format!("{r:?}")).collect();
        f.write_str(&parts.join(" | "))
    }
}

#[derive(Clone, Debug)]
struct BlockEvent {
    a: Vec<usize>,
    b: Vec<usize>,
    separator: Option<usize>,
}

impl BlockEvent {
    fn holds(&self, ranks: &[usize]) -> bool {
        let max_a = self.a.iter().map(|&j| ranks[j]).max();
        let min_b = self.b.iter().map(|&j| ranks[j]).min();
        match self.separator {
            Some(s) => {
                let pivot = ranks[s];
                max_a.is_none_or(|x| x < pivot) && min_b.is_none_or(|y| pivot < y)
            }
            None => match (max_a, min_b) {
                (Some(x), Some(y)) => x < y,
                _ => true,
            },
        }
    }
}

/// The event `E_i = ∩_k E_ik` of one pair.
#[derive(Clone, Debug)]
struct PairEvent {
    blocks: Vec<BlockEvent>,
}

impl PairEvent {
    fn holds(&self, perm: &[&[usize]]) -> bool {
        self.blocks.iter().zip(perm).all(|(e, r)| e.holds(r))
    }
}

fn block_factor(a: usize, b: usize, separated: bool) -> BigUint {
    let c = binomial((a + b) as u64, a as i64);
    if separated {
        c * (1 + a + b)
    } else {
        c
    }
}

/// `P(E)` in closed form: `1/((1+a_k+b_k) C(a_k+b_k, a_k))` per separated
/// block and `1/C(a_k+b_k, a_k)` per unseparated block.
pub fn event_probability_formula(pair: &SetPair, aug: &AugmentedGround) -> Result<Rational> {
    aug.base.ensure_pair(pair)?;
    let den = aug
        .base
        .profile(pair)
        .into_iter()
        .enumerate()
        .fold(BigUint::one(), |acc, (k, (a, b))| acc * block_factor(a, b, aug.separated[k]));
    Ok(recip(den))
}

/// The closed form with `1 + n_k` in place of `1 + a_k + b_k`, a lower
/// bound for [`event_probability_formula`].
pub fn event_probability_lower_bound(pair: &SetPair, aug: &AugmentedGround) -> Result<Rational> {
    aug.base.ensure_pair(pair)?;
    let sizes = aug.base.block_sizes();
    let den = aug
        .base
        .profile(pair)
        .into_iter()
        .enumerate()
        .fold(BigUint::one(), |acc, (k, (a, b))| {
            let c = binomial((a + b) as u64, a as i64);
            if aug.separated[k] {
                acc * c * (1 + sizes[k])
            } else {
                acc * c
            }
        });
    Ok(recip(den))
}

/// All permutations of `0..len` in lexicographic order.
fn all_permutations(len: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..len).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..len).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..len).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// Enumerates `Ω` as tuples of per-block rank vectors.
struct Omega {
    tables: Vec<Vec<Vec<usize>>>,
}

impl Omega {
    fn new(aug: &AugmentedGround, cap: u64) -> Result<Self> {
        let size = aug.omega_size();
        if size > BigUint::from(cap) {
            return Err(Error::CapExceeded {
                what: "|Ω|".into(),
                value: size.to_u128().unwrap_or(u128::MAX),
                cap: cap as u128,
            });
        }
        let tables = (0..aug.base.r()).map(|k| all_permutations(aug.block_len(k))).collect();
        Ok(Self { tables })
    }

    fn size(&self) -> u64 {
        self.tables.iter().map(|t| t.len() as u64).product()
    }

    /// Calls `f` on every element of `Ω`; stops when `f` returns false.
    fn for_each(&self, mut f: impl FnMut(&[&[usize]]) -> bool) {
        let r = self.tables.len();
        let mut idx = vec![0usize; r];
        loop {
            let perm: Vec<&[usize]> = (0..r).map(|k| self.tables[k][idx[k]].as_slice()).collect();
            if !f(&perm) {
                return;
            }
            // odometer, last block fastest
            let mut k = r;
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < self.tables[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    fn materialize(perm: &[&[usize]]) -> BlockPermutation {
        BlockPermutation { ranks: perm.iter().map(|r| r.to_vec()).collect() }
    }
}

/// `P(E)` by counting the permutations of `Ω` that realise the event.
pub fn event_probability_exact(pair: &SetPair, aug: &AugmentedGround) -> Result<Rational> {
    event_probability_exact_capped(pair, aug, DEFAULT_PERMUTATION_CAP)
}

pub fn event_probability_exact_capped(pair: &SetPair, aug: &AugmentedGround, cap: u64) -> Result<Rational> {
    let event = aug.event(pair)?;
    let omega = Omega::new(aug, cap)?;
    let mut hits = 0u64;
    omega.for_each(|perm| {
        hits += event.holds(perm) as u64;
        true
    });
    Ok(Rational::new(hits.into(), omega.size().into()))
}

/// `P(E_k)` for each block separately, each by enumerating that block's
/// permutations only.
pub fn block_probabilities_exact(pair: &SetPair, aug: &AugmentedGround) -> Result<Vec<Rational>> {
    let event = aug.event(pair)?;
    Ok((0..aug.base.r())
        .map(|k| {
            let table = all_permutations(aug.block_len(k));
            let hits = table.iter().filter(|r| event.blocks[k].holds(r)).count();
            Rational::new(hits.into(), table.len().into())
        })
        .collect())
}

/// A Monte Carlo estimate of `P(E)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct McEstimate {
    pub hits: u64,
    pub samples: u64,
    pub seed: u64,
}

impl McEstimate {
    pub fn estimate(&self) -> f64 {
        self.hits as f64 / self.samples as f64
    }

    /// `√(p̂(1 − p̂)/samples)`.
    pub fn stderr(&self) -> f64 {
        let p = self.estimate();
        (p * (1.0 - p) / self.samples as f64).sqrt()
    }

    /// Whether `exact` lies within `k` standard errors of the estimate.
    pub fn within(&self, exact: &Rational, k: f64) -> bool {
        let x = exact.to_f64().unwrap_or(f64::NAN);
        (self.estimate() - x).abs() <= k * self.stderr()
    }
}

fn chunk_hits(event: &PairEvent, lens: &[usize], seed: u64, chunk: u64, count: u64) -> u64 {
    let mut rngs: Vec<ChaCha8Rng> = (0..lens.len())
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk << 16 | k as u64);
            rng
        })
        .collect();
    let mut ranks: Vec<Vec<usize>> = lens.iter().map(|&l| (0..l).collect()).collect();
    let mut hits = 0;
    for _ in 0..count {
        for (r, rng) in ranks.iter_mut().zip(&mut rngs) {
            r.shuffle(rng);
        }
        let view: Vec<&[usize]> = ranks.iter().map(Vec::as_slice).collect();
        hits += event.holds(&view) as u64;
    }
    hits
}

/// Estimates `P(E)` from `samples` uniform draws of `Ω`.
pub fn event_probability_mc(pair: &SetPair, aug: &AugmentedGround, samples: u64, seed: u64) -> Result<McEstimate> {
    if samples == 0 {
        return Err(Error::Precondition("at least one sample is required".into()));
    }
    if aug.base.r() >= 1 << 16 {
        return Err(Error::Precondition("too many blocks for per-block streams".into()));
    }
    let event = aug.event(pair)?;
    let lens: Vec<usize> = (0..aug.base.r()).map(|k| aug.block_len(k)).collect();
    let chunks = samples.div_ceil(MC_CHUNK);
    let hits = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let count = MC_CHUNK.min(samples - c * MC_CHUNK);
            chunk_hits(&event, &lens, seed, c, count)
        })
        .sum();
    Ok(McEstimate { hits, samples, seed })
}

fn require_class(f: &Family, aug: &AugmentedGround) -> Result<()> {
    if f.ground().n() != aug.base.n() {
        return Err(Error::GroundMismatch { n: aug.base.n() });
    }
    let class = aug.proof.system_class();
    let v = class.validate(f);
    if !v.valid {
        let w = v.witness.map(|w| w.to_string()).unwrap_or_default();
        return Err(Error::Precondition(format!(
            "{} needs a {class} system; violation at {w}",
            aug.proof
        )));
    }
    Ok(())
}

/// Outcome of [`disjointness_exact`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disjointness {
    pub valid: bool,
    /// `(σ, i, j)` with `σ ∈ E_i ∩ E_j`, positions 1-based.
    pub witness: Option<(BlockPermutation, usize, usize)>,
    /// `|∪ E_i|`.
    pub union_count: u64,
    /// `|Ω|`.
    pub omega: u64,
}

impl Disjointness {
    pub fn union_probability(&self) -> Rational {
        Rational::new(self.union_count.into(), self.omega.into())
    }
}

/// Checks by full enumeration of `Ω` that no permutation lies in two events.
pub fn disjointness_exact(f: &Family, aug: &AugmentedGround) -> Result<Disjointness> {
    disjointness_exact_capped(f, aug, DEFAULT_PERMUTATION_CAP)
}

pub fn disjointness_exact_capped(f: &Family, aug: &AugmentedGround, cap: u64) -> Result<Disjointness> {
    require_class(f, aug)?;
    let events: Vec<PairEvent> = f.pairs().iter().map(|p| aug.event(p)).collect::<Result<_>>()?;
    let omega = Omega::new(aug, cap)?;
    let mut witness = None;
    let mut union_count = 0;
    omega.for_each(|perm| {
        let mut first: Option<usize> = None;
        for (i, e) in events.iter().enumerate() {
            if e.holds(perm) {
                match first {
                    None => first = Some(i),
                    Some(j) => {
                        witness = Some((Omega::materialize(perm), j + 1, i + 1));
                        return false;
                    }
                }
            }
        }
        union_count += first.is_some() as u64;
        true
    });
    Ok(Disjointness {
        valid: witness.is_none(),
        witness,
        union_count,
        omega: omega.size(),
    })
}

/// Outcome of [`union_mass`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnionMass {
    /// `Σ_i P(E_i)` in closed form.
    pub mass: Rational,
    /// `Σ_i` of [`event_probability_lower_bound`].
    pub lower_bound: Rational,
    /// Every pair's probability is at least its lower bound.
    pub chain_holds: bool,
}

impl UnionMass {
    pub fn at_most_one(&self) -> bool {
        self.mass <= int(1)
    }
}

pub fn union_mass(f: &Family, aug: &AugmentedGround) -> Result<UnionMass> {
    require_class(f, aug)?;
    let mut mass = Rational::zero();
    let mut lower_bound = Rational::zero();
    let mut chain_holds = true;
    for p in f.pairs() {
        let exact = event_probability_formula(p, aug)?;
        let low = event_probability_lower_bound(p, aug)?;
        chain_holds &= low <= exact;
        mass += exact;
        lower_bound += low;
    }
    Ok(UnionMass { mass, lower_bound, chain_holds })
}

/// JSON rendering of an exact-mode simulation.
pub fn exact_report(f: &Family, aug: &AugmentedGround, cap: u64) -> Result<serde_json::Value> {
    let num = |q: &Rational| json!({ "exact": to_ratio_string(q), "decimal": to_decimal(q) });
    let mut pairs = Vec::new();
    for (i, p) in f.pairs().iter().enumerate() {
        let formula = event_probability_formula(p, aug)?;
        let enumerated = event_probability_exact_capped(p, aug, cap)?;
        pairs.push(json!({
            "pair": i + 1,
            "formula": num(&formula),
            "enumerated": num(&enumerated),
            "agree": formula == enumerated,
        }));
    }
    let d = disjointness_exact_capped(f, aug, cap)?;
    let u = union_mass(f, aug)?;
    Ok(json!({
        "proof": aug.proof().to_string(),
        "blocks": aug.base().block_sizes(),
        "omega": d.omega,
        "pairs": pairs,
        "disjoint": d.valid,
        "witness": d.witness.as_ref().map(|(s, i, j)| json!({ "sigma": s.to_string(), "i": i, "j": j })),
        "union_probability": num(&d.union_probability()),
        "union_mass": num(&u.mass),
        "lower_bound_mass": num(&u.lower_bound),
        "chain_holds": u.chain_holds,
        "union_mass_at_most_one": u.at_most_one(),
    }))
}

/// JSON rendering of a Monte Carlo simulation.
pub fn mc_report(f: &Family, aug: &AugmentedGround, samples: u64, seed: u64) -> Result<serde_json::Value> {
    let mut pairs = Vec::new();
    for (i, p) in f.pairs().iter().enumerate() {
        let exact = event_probability_formula(p, aug)?;
        let est = event_probability_mc(p, aug, samples, seed)?;
        pairs.push(json!({
            "pair": i + 1,
            "exact": to_ratio_string(&exact),
            "estimate": est.estimate(),
            "stderr": est.stderr(),
            "hits": est.hits,
            "within_4_stderr": est.within(&exact, 4.0),
        }));
    }
    Ok(json!({
        "proof": aug.proof().to_string(),
        "samples": samples,
        "seed": seed,
        "pairs": pairs,
    }))
}

/// `from_biguint` re-export used by reports and tests.
pub fn omega_size_rational(aug: &AugmentedGround) -> Rational {
    from_biguint(aug.omega_size())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{example1, example2};
    use crate::family::{weight, WeightKind};
    use crate::rational::ratio;
    use crate::sets::pair;

    fn thm15(n: usize) -> AugmentedGround {
        AugmentedGround::new(&GroundSet::new(n), ProofKind::Thm15).unwrap()
    }

    fn blocks22(proof: ProofKind) -> AugmentedGround {
        AugmentedGround::new(&GroundSet::from_block_sizes(&[2, 2]).unwrap(), proof).unwrap()
    }

    #[test]
    fn permutations_are_listed_once() {
        let p = all_permutations(4);
        assert_eq!(p.len(), 24);
        let mut q = p.clone();
        q.dedup();
        assert_eq!(q.len(), 24);
        assert_eq!(all_permutations(0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn formula_examples() {
        assert_eq!(event_probability_formula(&pair([1], [2]), &thm15(2)).unwrap(), ratio(1, 6));
        let p = pair([1, 3], [2, 4]);
        assert_eq!(event_probability_formula(&p, &blocks22(ProofKind::Thm17)).unwrap(), ratio(1, 36));
        assert_eq!(
            event_probability_formula(&p, &blocks22(ProofKind::Lemma31 { l: 2 })).unwrap(),
            ratio(1, 12)
        );
    }

    #[test]
    fn exact_examples() {
        assert_eq!(event_probability_exact(&pair([1], [2]), &thm15(2)).unwrap(), ratio(1, 6));
        assert_eq!(event_probability_exact(&pair([], []), &thm15(2)).unwrap(), int(1));
        assert_eq!(event_probability_exact(&pair([1], []), &thm15(1)).unwrap(), ratio(1, 2));
        let p = pair([1, 3], [2, 4]);
        assert_eq!(event_probability_exact(&p, &blocks22(ProofKind::Thm17)).unwrap(), ratio(1, 36));
        assert_eq!(event_probability_exact(&p, &blocks22(ProofKind::Lemma31 { l: 2 })).unwrap(), ratio(1, 12));
    }

    #[test]
    fn exact_respects_cap() {
        let aug = thm15(9); // 10! > 10^6
        assert!(matches!(
            event_probability_exact_capped(&pair([], []), &aug, 1_000_000),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn formula_matches_weights() {
        let g = GroundSet::new(4);
        let aug = thm15(4);
        let one_block = AugmentedGround::new(&g, ProofKind::Lemma31 { l: 1 }).unwrap();
        for p in crate::oracle::enumerate_pairs(&g).unwrap() {
            assert_eq!(
                event_probability_formula(&p, &aug).unwrap(),
                weight(&p, WeightKind::Augmented, &g).unwrap()
            );
            assert_eq!(
                event_probability_formula(&p, &one_block).unwrap(),
                weight(&p, WeightKind::Plain, &g).unwrap()
            );
        }
    }

    #[test]
    fn mc_basics() {
        let aug = thm15(2);
        let p = pair([1], [2]);
        let e = event_probability_mc(&p, &aug, 100_000, 1).unwrap();
        assert!(e.within(&ratio(1, 6), 4.0), "{e:?}");
        assert_eq!(e, event_probability_mc(&p, &aug, 100_000, 1).unwrap());
        let one = event_probability_mc(&p, &aug, 1, 3).unwrap();
        assert!(one.estimate() == 0.0 || one.estimate() == 1.0);
        assert!(event_probability_mc(&p, &aug, 0, 3).is_err());
    }

    #[test]
    fn mc_is_worker_count_invariant() {
        let aug = blocks22(ProofKind::Thm17);
        let p = pair([1], [2, 4]);
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| event_probability_mc(&p, &aug, 50_000, 9).unwrap())
        };
        assert_eq!(run(1), run(3));
    }

    #[test]
    fn disjointness_examples() {
        let f = example1(&GroundSet::new(2));
        let d = disjointness_exact(&f, &thm15(2)).unwrap();
        assert!(d.valid);
        assert_eq!(d.omega, 6);
        assert_eq!(d.union_probability(), int(1));

        let (f, g) = example2(4);
        let aug = AugmentedGround::new(&g, ProofKind::Lemma31 { l: 1 }).unwrap();
        let d = disjointness_exact(&f, &aug).unwrap();
        assert!(d.valid);
        assert_eq!(d.omega, 12);

        let rev = example1(&GroundSet::new(2)).reversed();
        assert!(matches!(disjointness_exact(&rev, &thm15(2)), Err(Error::Precondition(_))));
    }

    #[test]
    fn union_mass_examples() {
        let u = union_mass(&example1(&GroundSet::new(2)), &thm15(2)).unwrap();
        assert_eq!(u.mass, int(1));
        assert!(u.chain_holds);

        let single = Family::new(GroundSet::new(0), vec![pair([], [])]).unwrap();
        assert_eq!(union_mass(&single, &thm15(0)).unwrap().mass, int(1));
        assert_eq!(thm15(0).omega_size(), BigUint::one());

        let (f, g) = example2(4);
        let aug = AugmentedGround::new(&g, ProofKind::Lemma31 { l: 1 }).unwrap();
        assert_eq!(union_mass(&f, &aug).unwrap().mass, int(1));
    }

    #[test]
    fn block_probabilities_multiply() {
        let aug = blocks22(ProofKind::Thm17);
        for p in crate::oracle::enumerate_pairs(aug.base()).unwrap() {
            let parts = block_probabilities_exact(&p, &aug).unwrap();
            let product = parts.iter().fold(int(1), |acc, q| acc * q);
            assert_eq!(product, event_probability_exact(&p, &aug).unwrap());
        }
    }

    #[test]
    fn lemma31_index_checked() {
        assert!(AugmentedGround::new(&GroundSet::new(2), ProofKind::Lemma31 { l: 2 }).is_err());
    }
}
