//! Brute-force ground truth on small ground sets.
//!
//! Every Bollobás or skew system over `[n]` is a set of distinct disjoint
//! pairs drawn from the `3^n` candidates. The walker below visits each such
//! set exactly once by depth-first extension in a fixed candidate order:
//!
//! * Bollobás: a candidate may join when it cross-intersects every chosen
//!   pair in both directions, so the allowed set is an intersection of
//!   precomputed compatibility masks.
//! * Skew: the chosen set must stay orderable, i.e. its precedence digraph
//!   (`y → x` when `A_x ∩ B_y = ∅`) must stay acyclic. Reachability among
//!   chosen pairs is kept incrementally, so each extension is a few mask
//!   operations. Order inside a skew system is recovered afterwards with
//!   [`skew_orderable`].
//!
//! Weights are reciprocals of integers. Sums are kept exactly as integers
//! scaled by the lcm of all candidate denominators.
//!
//! Top-level branches (systems whose first candidate is `v`) are independent
//! and run on a rayon pool. Results are merged in branch order, so every
//! output is identical for any worker count.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::family::{weight_denominator, Family, WeightKind};
use crate::functionals::{bound, check, CheckReport, Lhs, SystemClass, TheoremId};
use crate::ground::GroundSet;
use crate::rational::{ratio, Rational};
use crate::sets::{ElementSet, SetPair};
use crate::systems::{skew_orderable, OrderCertificate};

pub const DEFAULT_ENUMERATION_CAP: usize = 12;
pub const DEFAULT_SKEW_CAP: usize = 3;
pub const DEFAULT_BOLLOBAS_CAP: usize = 4;

/// Size limits on `n`. [`Caps::from_env`] reads `BOLLOBAS_ENUMERATION_CAP`,
/// `BOLLOBAS_SKEW_CAP` and `BOLLOBAS_BOLLOBAS_CAP`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub enumeration: usize,
    pub skew: usize,
    pub bollobas: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            enumeration: DEFAULT_ENUMERATION_CAP,
            skew: DEFAULT_SKEW_CAP,
            bollobas: DEFAULT_BOLLOBAS_CAP,
        }
    }
}

impl Caps {
    pub fn from_env() -> Self {
        let read = |name: &str, default: usize| {
            std::env::var(name).ok().and_then(|v| v.parse().ok()).unwrap_or(default)
        };
        Self {
            enumeration: read("BOLLOBAS_ENUMERATION_CAP", DEFAULT_ENUMERATION_CAP),
            skew: read("BOLLOBAS_SKEW_CAP", DEFAULT_SKEW_CAP),
            bollobas: read("BOLLOBAS_BOLLOBAS_CAP", DEFAULT_BOLLOBAS_CAP),
        }
    }

    fn search(&self, class: SystemClass) -> usize {
        match class {
            SystemClass::Skew => self.skew,
            SystemClass::Bollobas => self.bollobas,
        }
    }
}

/// All `3^n` disjoint pairs over the ground set, in canonical order.
pub fn enumerate_pairs(ground: &GroundSet) -> Result<Vec<SetPair>> {
    enumerate_pairs_capped(ground, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_pairs_capped(ground: &GroundSet, cap: usize) -> Result<Vec<SetPair>> {
    let n = ground.n();
    if n > cap {
        return Err(Error::CapExceeded { what: "n".into(), value: n as u128, cap: cap as u128 });
    }
    let mut out = Vec::with_capacity(3usize.pow(n as u32));
    let to_set = |mask: u64| -> ElementSet { (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect() };
    for b in 0u64..1 << n {
        let b_set = to_set(b);
        for a in 0u64..1 << n {
            if a & b == 0 {
                out.push(SetPair::new(to_set(a), b_set.clone()).expect("masks are disjoint"));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Lift the size caps (a warning is logged).
    pub force: bool,
    /// Worker threads; `None` uses every available core.
    pub workers: Option<usize>,
    /// Skip subtrees whose total remaining weight cannot reach the best sum.
    pub prune: bool,
    /// Only consider pairs with these per-block `(|A ∩ X_k|, |B ∩ X_k|)`.
    pub restrict: Option<Vec<(usize, usize)>>,
    pub caps: Caps,
}

impl SearchOptions {
    fn pool(&self) -> Result<rayon::ThreadPool> {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(w) = self.workers {
            b = b.num_threads(w.max(1));
        }
        b.build().map_err(|e| Error::Precondition(format!("thread pool: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub max_sum: Rational,
    pub maximizer: Family,
    /// Systems visited, counting the empty one.
    pub nodes_explored: u64,
    pub exhaustive: bool,
}

/// The candidates of one search, in walk order, with their precomputed
/// relations.
pub(crate) struct Space {
    ground: GroundSet,
    class: SystemClass,
    pairs: Vec<SetPair>,
    codes: Vec<Vec<u64>>,
    /// `weight_i * scale`.
    scaled: Vec<u128>,
    scale: BigUint,
    words: usize,
    /// Bollobás: cross-intersecting both ways. Skew: not forced both ways.
    compat: Vec<Vec<u64>>,
    /// `before[x]`: candidates that must precede `x`.
    before: Vec<Vec<u64>>,
    /// `after[x]`: candidates that `x` must precede.
    after: Vec<Vec<u64>>,
}

fn set_bit(words: &mut [u64], i: usize) {
    words[i / 64] |= 1 << (i % 64);
}

fn bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut rest = w;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(wi * 64 + b)
        })
    })
}

fn intersects(x: &[u64], y: &[u64]) -> bool {
    x.iter().zip(y).any(|(a, b)| a & b != 0)
}

/// Canonical key of a pair: the integer `A + 2^n B` as little-endian words.
fn canonical_words(p: &SetPair, n: usize) -> Vec<u64> {
    let mut w = vec![0u64; (2 * n).div_ceil(64).max(1)];
    for i in p.a().iter() {
        set_bit(&mut w, i - 1);
    }
    for i in p.b().iter() {
        set_bit(&mut w, n + i - 1);
    }
    w.reverse(); // most significant word first, so Vec comparison is numeric
    w
}

impl Space {
    pub(crate) fn new(
        ground: &GroundSet,
        class: SystemClass,
        kind: WeightKind,
        filter: impl Fn(&SetPair) -> bool,
        caps: &Caps,
    ) -> Result<Self> {
        let all = enumerate_pairs_capped(ground, caps.enumeration.max(ground.n()))?;
        let mut weighted: Vec<(BigUint, SetPair)> = all
            .into_iter()
            .filter(|p| filter(p))
            .map(|p| Ok((weight_denominator(&p, kind, ground)?, p)))
            .collect::<Result<_>>()?;
        // heaviest (smallest denominator) first; ties canonical
        weighted.sort_by(|(d, p), (e, q)| d.cmp(e).then_with(|| p.canonical_cmp(q)));

        let scale = weighted.iter().fold(BigUint::one(), |acc, (d, _)| acc.lcm(d));
        let total = &scale * BigUint::from(weighted.len().max(1));
        if total.to_u128().is_none() {
            return Err(Error::CapExceeded {
                what: "scaled weight total".into(),
                value: u128::MAX,
                cap: u128::MAX,
            });
        }
        let scaled = weighted.iter().map(|(d, _)| (&scale / d).to_u128().unwrap()).collect();
        let pairs: Vec<SetPair> = weighted.into_iter().map(|(_, p)| p).collect();
        let c = pairs.len();
        let words = c.div_ceil(64).max(1);
        let mut compat = vec![vec![0u64; words]; c];
        let mut before = vec![vec![0u64; words]; c];
        let mut after = vec![vec![0u64; words]; c];
        for x in 0..c {
            for y in 0..c {
                if x == y {
                    continue;
                }
                // y must precede x
                let y_first = pairs[x].a().is_disjoint(pairs[y].b());
                let x_first = pairs[y].a().is_disjoint(pairs[x].b());
                let ok = match class {
                    SystemClass::Bollobas => !y_first && !x_first,
                    SystemClass::Skew => !(y_first && x_first),
                };
                if ok {
                    set_bit(&mut compat[x], y);
                }
                if y_first {
                    set_bit(&mut before[x], y);
                    set_bit(&mut after[y], x);
                }
            }
        }
        let codes = pairs.iter().map(|p| canonical_words(p, ground.n())).collect();
        Ok(Self {
            ground: ground.clone(),
            class,
            pairs,
            codes,
            scaled,
            scale,
            words,
            compat,
            before,
            after,
        })
    }

    pub(crate) fn len(&self) -> usize {
        self.pairs.len()
    }

    pub(crate) fn to_rational(&self, scaled: u128) -> Rational {
        ratio(BigInt::from(scaled), BigInt::from(self.scale.clone()))
    }

    /// Largest scaled sum `s` with `s / scale <= q`, saturating.
    fn scaled_floor(&self, q: &Rational) -> u128 {
        if q < &Rational::zero() {
            return 0;
        }
        let v = (q * Rational::from_integer(BigInt::from(self.scale.clone()))).floor();
        v.to_integer().to_u128().unwrap_or(u128::MAX)
    }

    fn remaining(&self, allowed: &[u64]) -> u128 {
        bits(allowed).map(|i| self.scaled[i]).sum()
    }

    /// Sorted canonical codes of a chosen set, the tie-break key.
    fn key(&self, chosen: &[usize]) -> Vec<Vec<u64>> {
        let mut k: Vec<Vec<u64>> = chosen.iter().map(|&i| self.codes[i].clone()).collect();
        k.sort();
        k
    }

    /// The chosen pairs as a family in a valid order for the class.
    pub(crate) fn family(&self, chosen: &[usize]) -> Family {
        let mut pairs: Vec<SetPair> = chosen.iter().map(|&i| self.pairs[i].clone()).collect();
        pairs.sort_by(|p, q| p.canonical_cmp(q));
        if self.class == SystemClass::Skew {
            match skew_orderable(&pairs).expect("candidates are distinct") {
                OrderCertificate::Ordering(order) => {
                    pairs = order.into_iter().map(|i| pairs[i].clone()).collect();
                }
                OrderCertificate::Cycle(_) => unreachable!("walker only emits orderable sets"),
            }
        }
        Family::new(self.ground.clone(), pairs).expect("candidates live on the ground set")
    }
}

/// What the walker should do after visiting a node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Flow {
    Continue,
    SkipChildren,
    Stop,
}

pub(crate) struct Node<'a> {
    pub chosen: &'a [usize],
    pub scaled_sum: u128,
    /// Candidates that may still extend this node (a superset for skew).
    pub allowed: &'a [u64],
}

struct Walker<'s, F> {
    space: &'s Space,
    visit: F,
    chosen: Vec<usize>,
    /// Skew only: `reach[u]` = chosen candidates reachable from `u`, itself included.
    reach: Vec<Vec<u64>>,
    undo: Vec<(usize, Vec<u64>)>,
    nodes: u64,
    stopped: bool,
}

impl<F: FnMut(&Node) -> Flow> Walker<'_, F> {
    fn descend(&mut self, allowed: Vec<u64>, sum: u128) {
        let flow = (self.visit)(&Node { chosen: &self.chosen, scaled_sum: sum, allowed: &allowed });
        self.nodes += 1;
        match flow {
            Flow::Stop => {
                self.stopped = true;
                return;
            }
            Flow::SkipChildren => return,
            Flow::Continue => {}
        }
        let candidates: Vec<usize> = bits(&allowed).collect();
        for v in candidates {
            if self.stopped {
                return;
            }
            let mark = self.undo.len();
            if !self.push(v) {
                continue;
            }
            let space = self.space;
            let mut next = allowed.clone();
            for (i, w) in next.iter_mut().enumerate() {
                *w &= space.compat[v][i];
            }
            // only candidates after v
            for (i, w) in next.iter_mut().enumerate() {
                let lo = i * 64;
                if lo + 64 <= v + 1 {
                    *w = 0;
                } else if lo <= v {
                    *w &= !0u64 << (v + 1 - lo);
                }
            }
            self.descend(next, sum + space.scaled[v]);
            self.pop(v, mark);
        }
    }

    /// Adds `v`; false (and no change) if it would close a precedence cycle.
    fn push(&mut self, v: usize) -> bool {
        if self.space.class == SystemClass::Skew {
            let words = self.space.words;
            let mut chosen_mask = vec![0u64; words];
            for &u in &self.chosen {
                set_bit(&mut chosen_mask, u);
            }
            let preds: Vec<u64> =
                self.space.before[v].iter().zip(&chosen_mask).map(|(a, b)| a & b).collect();
            let succs: Vec<u64> =
                self.space.after[v].iter().zip(&chosen_mask).map(|(a, b)| a & b).collect();
            let mut reach_v = vec![0u64; words];
            for y in bits(&succs) {
                for (r, s) in reach_v.iter_mut().zip(&self.reach[y]) {
                    *r |= s;
                }
            }
            if intersects(&reach_v, &preds) {
                return false;
            }
            set_bit(&mut reach_v, v);
            for &u in &self.chosen {
                if intersects(&self.reach[u], &preds) {
                    self.undo.push((u, self.reach[u].clone()));
                    for (r, s) in self.reach[u].iter_mut().zip(&reach_v) {
                        *r |= s;
                    }
                }
            }
            self.reach[v] = reach_v;
        }
        self.chosen.push(v);
        true
    }

    fn pop(&mut self, v: usize, mark: usize) {
        self.chosen.pop();
        while self.undo.len() > mark {
            let (u, old) = self.undo.pop().unwrap();
            self.reach[u] = old;
        }
        if self.space.class == SystemClass::Skew {
            self.reach[v].iter_mut().for_each(|w| *w = 0);
        }
    }
}

/// Runs `make_visit()`'s visitor over the systems of one top-level branch:
/// `None` is the empty system alone, `Some(v)` every system whose first
/// candidate is `v`. Returns the visitor and the node count.
pub(crate) fn walk_branch<F: FnMut(&Node) -> Flow>(space: &Space, branch: Option<usize>, visit: F) -> (F, u64) {
    let mut w = Walker {
        space,
        visit,
        chosen: Vec::new(),
        reach: vec![vec![0u64; space.words]; space.len()],
        undo: Vec::new(),
        nodes: 0,
        stopped: false,
    };
    match branch {
        None => {
            let none = vec![0u64; space.words];
            (w.visit)(&Node { chosen: &[], scaled_sum: 0, allowed: &none });
            w.nodes = 1;
        }
        Some(v) => {
            let mut allowed = space.compat[v].clone();
            for (i, word) in allowed.iter_mut().enumerate() {
                let lo = i * 64;
                if lo + 64 <= v + 1 {
                    *word = 0;
                } else if lo <= v {
                    *word &= !0u64 << (v + 1 - lo);
                }
            }
            assert!(w.push(v));
            let s = space.scaled[v];
            w.descend(allowed, s);
        }
    }
    (w.visit, w.nodes)
}

fn branches(space: &Space) -> Vec<Option<usize>> {
    std::iter::once(None).chain((0..space.len()).map(Some)).collect()
}

fn enforce_cap(n: usize, class: SystemClass, opts: &SearchOptions) -> Result<()> {
    let cap = opts.caps.search(class);
    if n > cap {
        if !opts.force {
            return Err(Error::CapExceeded { what: "n".into(), value: n as u128, cap: cap as u128 });
        }
        log::warn!("n = {n} exceeds the {class} search cap {cap}; continuing because of --force");
    }
    Ok(())
}

fn restrict_filter<'a>(ground: &'a GroundSet, restrict: &'a Option<Vec<(usize, usize)>>) -> impl Fn(&SetPair) -> bool + 'a {
    move |p: &SetPair| match restrict {
        None => true,
        Some(profile) => ground.profile(p) == *profile,
    }
}

#[derive(Clone)]
struct Best {
    sum: u128,
    key: Vec<Vec<u64>>,
    chosen: Vec<usize>,
}

impl Best {
    fn better_than(&self, other: &Best) -> bool {
        match self.sum.cmp(&other.sum) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => self.key < other.key,
        }
    }
}

/// The exact maximum of `Σ weight` over all systems of `class` on `ground`,
/// with the maximiser whose sorted canonical codes are lexicographically
/// smallest.
pub fn search_max(ground: &GroundSet, class: SystemClass, kind: WeightKind, opts: &SearchOptions) -> Result<SearchResult> {
    enforce_cap(ground.n(), class, opts)?;
    let space = Space::new(ground, class, kind, restrict_filter(ground, &opts.restrict), &opts.caps)?;
    let pool = opts.pool()?;
    let progress = AtomicU64::new(0);
    let total = space.len() + 1;

    let per_branch: Vec<(Best, u64)> = pool.install(|| {
        branches(&space)
            .into_par_iter()
            .map(|branch| {
                let mut best = Best { sum: 0, key: Vec::new(), chosen: Vec::new() };
                let (_, nodes) = walk_branch(&space, branch, |node| {
                    if node.scaled_sum >= best.sum {
                        let cand = Best {
                            sum: node.scaled_sum,
                            key: space.key(node.chosen),
                            chosen: node.chosen.to_vec(),
                        };
                        if cand.better_than(&best) {
                            best = cand;
                        }
                    }
                    if opts.prune && node.scaled_sum + space.remaining(node.allowed) < best.sum {
                        return Flow::SkipChildren;
                    }
                    Flow::Continue
                });
                let done = progress.fetch_add(1, AtomicOrdering::Relaxed) + 1;
                log::debug!("branch {done}/{total} done, {nodes} nodes, branch best {}", space.to_rational(best.sum));
                (best, nodes)
            })
            .collect()
    });

    let mut nodes = 0;
    let mut best: Option<Best> = None;
    for (b, n) in per_branch {
        nodes += n;
        if best.as_ref().is_none_or(|cur| b.better_than(cur)) {
            best = Some(b);
        }
    }
    let best = best.expect("the empty system is always visited");
    Ok(SearchResult {
        max_sum: space.to_rational(best.sum),
        maximizer: space.family(&best.chosen),
        nodes_explored: nodes,
        exhaustive: !opts.prune,
    })
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub search: SearchOptions,
    /// Also pass every visited system through [`check`] and require it to
    /// agree with the incremental comparison. Much slower.
    pub full_check: bool,
}

/// Result of [`exhaustive_verify`] for one theorem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub theorem: TheoremId,
    pub valid: bool,
    /// A system violating the inequality, with its check report.
    pub counterexample: Option<(Family, CheckReport)>,
    pub systems_checked: u64,
    pub max_lhs: Rational,
    pub rhs: Rational,
}

/// Streams every system of the theorem's class through the inequality.
pub fn exhaustive_verify(ground: &GroundSet, id: &TheoremId, opts: &VerifyOptions) -> Result<VerifyReport> {
    Ok(exhaustive_verify_many(ground, std::slice::from_ref(id), opts)?.remove(0))
}

/// Like [`exhaustive_verify`] for several theorems sharing one system class
/// and left-hand side, in a single walk.
pub fn exhaustive_verify_many(ground: &GroundSet, ids: &[TheoremId], opts: &VerifyOptions) -> Result<Vec<VerifyReport>> {
    let first = ids.first().ok_or_else(|| Error::Precondition("no theorem given".into()))?;
    let class = first.system_class();
    let lhs = first.lhs();
    let lym = first.is_lym();
    let uniform = first.uniformity();
    for id in ids {
        if id.system_class() != class || id.lhs() != lhs || id.is_lym() != lym || id.uniformity() != uniform {
            return Err(Error::Precondition(format!("{id} cannot share a walk with {first}")));
        }
    }
    enforce_cap(ground.n(), class, &opts.search)?;
    let rhs: Vec<Rational> = ids.iter().map(|id| bound(id, ground).map(|b| b.value)).collect::<Result<_>>()?;

    let kind = match lhs {
        Lhs::Sum(kind) => kind,
        Lhs::Cardinality => WeightKind::Plain,
    };
    let full = ground.full_set();
    let filter = |p: &SetPair| {
        let lym_ok = !lym || p.a().union(p.b()) == full;
        let uniform_ok = match (first, &uniform) {
            (TheoremId::C1_3 { .. }, Some(u)) => vec![(p.a().len(), p.b().len())] == *u,
            (_, Some(u)) => ground.profile(p) == *u,
            (_, None) => true,
        };
        lym_ok && uniform_ok
    };
    let space = Space::new(ground, class, kind, filter, &opts.search.caps)?;
    let limits: Vec<u128> = match lhs {
        Lhs::Sum(_) => rhs.iter().map(|q| space.scaled_floor(q)).collect(),
        Lhs::Cardinality => rhs
            .iter()
            .map(|q| q.floor().to_integer().to_u128().unwrap_or(u128::MAX))
            .collect(),
    };
    let pool = opts.search.pool()?;

    struct Branch {
        nodes: u64,
        max: u128,
        violation: Vec<Option<Vec<usize>>>,
    }

    let per_branch: Vec<Branch> = pool.install(|| {
        branches(&space)
            .into_par_iter()
            .map(|branch| {
                let mut max = 0u128;
                let mut violation: Vec<Option<Vec<usize>>> = vec![None; ids.len()];
                let (_, nodes) = walk_branch(&space, branch, |node| {
                    let value = match lhs {
                        Lhs::Sum(_) => node.scaled_sum,
                        Lhs::Cardinality => node.chosen.len() as u128,
                    };
                    max = max.max(value);
                    let mut all_found = true;
                    for (k, limit) in limits.iter().enumerate() {
                        let violated = value > *limit;
                        if opts.full_check {
                            let f = space.family(node.chosen);
                            let report = check(&f, &ids[k]).expect("walker emits well-formed systems");
                            assert_eq!(report.holds, Some(!violated), "incremental and full check disagree on {f:?}");
                        }
                        if violated && violation[k].is_none() {
                            violation[k] = Some(node.chosen.to_vec());
                        }
                        all_found &= violation[k].is_some();
                    }
                    if all_found {
                        Flow::Stop
                    } else {
                        Flow::Continue
                    }
                });
                Branch { nodes, max, violation }
            })
            .collect()
    });

    let nodes: u64 = per_branch.iter().map(|b| b.nodes).sum();
    let max = per_branch.iter().map(|b| b.max).max().unwrap_or(0);
    let max_lhs = match lhs {
        Lhs::Sum(_) => space.to_rational(max),
        Lhs::Cardinality => Rational::from_integer(BigInt::from(max)),
    };
    ids.iter()
        .enumerate()
        .map(|(k, id)| {
            let counterexample = per_branch
                .iter()
                .find_map(|b| b.violation[k].clone())
                .map(|chosen| {
                    let f = space.family(&chosen);
                    let report = check(&f, id)?;
                    Ok((f, report))
                })
                .transpose()?;
            Ok(VerifyReport {
                theorem: id.clone(),
                valid: counterexample.is_none(),
                counterexample,
                systems_checked: nodes,
                max_lhs: max_lhs.clone(),
                rhs: rhs[k].clone(),
            })
        })
        .collect()
}

/// Calls `visit` with every system of `class` over `ground` (the empty one
/// included), as a family in a valid order. Single-threaded; stops early
/// when `visit` returns false.
pub fn for_each_system(
    ground: &GroundSet,
    class: SystemClass,
    opts: &SearchOptions,
    mut visit: impl FnMut(&Family) -> bool,
) -> Result<u64> {
    enforce_cap(ground.n(), class, opts)?;
    let space = Space::new(ground, class, WeightKind::Plain, restrict_filter(ground, &opts.restrict), &opts.caps)?;
    let mut total = 0;
    for branch in branches(&space) {
        let mut stop = false;
        let (_, nodes) = walk_branch(&space, branch, |node| {
            if visit(&space.family(node.chosen)) {
                Flow::Continue
            } else {
                stop = true;
                Flow::Stop
            }
        });
        total += nodes;
        if stop {
            break;
        }
    }
    Ok(total)
}

/// Number of systems of `class` on `ground`, the empty one included.
pub fn count_systems(ground: &GroundSet, class: SystemClass, opts: &SearchOptions) -> Result<u64> {
    enforce_cap(ground.n(), class, opts)?;
    let space = Space::new(ground, class, WeightKind::Plain, restrict_filter(ground, &opts.restrict), &opts.caps)?;
    let pool = opts.pool()?;
    Ok(pool.install(|| {
        branches(&space)
            .into_par_iter()
            .map(|b| walk_branch(&space, b, |_| Flow::Continue).1)
            .sum()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::example1;
    use crate::functionals::family_sum;
    use crate::rational::int;
    use crate::sets::pair;
    use crate::systems::{validate_bollobas, validate_skew};

    fn opts() -> SearchOptions {
        SearchOptions { workers: Some(2), ..Default::default() }
    }

    #[test]
    fn enumerate_small() {
        let p = enumerate_pairs(&GroundSet::new(1)).unwrap();
        assert_eq!(p, vec![pair([], []), pair([1], []), pair([], [1])]);
        assert_eq!(enumerate_pairs(&GroundSet::new(2)).unwrap().len(), 9);
        let p3 = enumerate_pairs(&GroundSet::new(3)).unwrap();
        assert_eq!(p3.len(), 27);
        assert!(p3.windows(2).all(|w| w[0].canonical_cmp(&w[1]) == Ordering::Less));
        assert!(matches!(enumerate_pairs(&GroundSet::new(13)), Err(Error::CapExceeded { .. })));
    }

    /// Brute force over every subset of candidates and every ordering.
    fn brute_count(n: usize, class: SystemClass) -> u64 {
        let g = GroundSet::new(n);
        let cands = enumerate_pairs(&g).unwrap();
        let c = cands.len();
        let mut count = 0;
        for mask in 0u64..1 << c {
            let chosen: Vec<SetPair> = (0..c).filter(|i| mask >> i & 1 == 1).map(|i| cands[i].clone()).collect();
            let ok = match class {
                SystemClass::Bollobas => {
                    validate_bollobas(&Family::new(g.clone(), chosen).unwrap()).valid
                }
                SystemClass::Skew => permutations_any(&chosen, &g),
            };
            count += ok as u64;
        }
        count
    }

    fn permutations_any(pairs: &[SetPair], g: &GroundSet) -> bool {
        fn go(v: &mut Vec<SetPair>, k: usize, g: &GroundSet) -> bool {
            if k == v.len() {
                return validate_skew(&Family::new(g.clone(), v.clone()).unwrap()).valid;
            }
            for i in k..v.len() {
                v.swap(k, i);
                if go(v, k + 1, g) {
                    return true;
                }
                v.swap(k, i);
            }
            false
        }
        go(&mut pairs.to_vec(), 0, g)
    }

    #[test]
    fn walker_counts_match_brute_force() {
        for n in 0..=2 {
            for class in [SystemClass::Bollobas, SystemClass::Skew] {
                let got = count_systems(&GroundSet::new(n), class, &opts()).unwrap();
                assert_eq!(got, brute_count(n, class), "n={n} {class}");
            }
        }
    }

    #[test]
    fn every_streamed_system_validates() {
        for class in [SystemClass::Bollobas, SystemClass::Skew] {
            let g = GroundSet::new(3);
            let mut seen = std::collections::HashSet::new();
            for_each_system(&g, class, &opts(), |f| {
                assert!(class.validate(f).valid);
                let mut key: Vec<SetPair> = f.pairs().to_vec();
                key.sort_by(|p, q| p.canonical_cmp(q));
                assert!(seen.insert(format!("{key:?}")), "visited twice");
                true
            })
            .unwrap();
        }
    }

    #[test]
    fn search_examples() {
        let r = search_max(&GroundSet::new(1), SystemClass::Skew, WeightKind::Plain, &opts()).unwrap();
        assert_eq!(r.max_sum, int(2));
        assert_eq!(family_sum(&r.maximizer, WeightKind::Plain).unwrap(), int(2));
        assert!(validate_skew(&r.maximizer).valid);
        assert_eq!(r.maximizer.pairs(), example1(&GroundSet::new(1)).pairs());

        let r = search_max(&GroundSet::new(2), SystemClass::Bollobas, WeightKind::Plain, &opts()).unwrap();
        assert_eq!(r.max_sum, int(1));
        assert!(r.exhaustive);

        let r = search_max(&GroundSet::new(2), SystemClass::Skew, WeightKind::Augmented, &opts()).unwrap();
        assert_eq!(r.max_sum, int(1));
    }

    #[test]
    fn caps_are_enforced() {
        let g = GroundSet::new(4);
        let err = search_max(&g, SystemClass::Skew, WeightKind::Plain, &opts()).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
        assert!(exhaustive_verify(&GroundSet::new(5), &TheoremId::T1_2, &VerifyOptions::default()).is_err());
    }

    #[test]
    fn results_do_not_depend_on_workers_or_pruning() {
        let g = GroundSet::from_block_sizes(&[1, 2]).unwrap();
        let base = search_max(&g, SystemClass::Skew, WeightKind::Partitioned, &SearchOptions { workers: Some(1), ..Default::default() }).unwrap();
        for workers in [2, 4] {
            let r = search_max(&g, SystemClass::Skew, WeightKind::Partitioned, &SearchOptions { workers: Some(workers), ..Default::default() }).unwrap();
            assert_eq!(r, base);
        }
        let pruned = search_max(&g, SystemClass::Skew, WeightKind::Partitioned, &SearchOptions { prune: true, ..Default::default() }).unwrap();
        assert_eq!((pruned.max_sum, pruned.maximizer), (base.max_sum.clone(), base.maximizer.clone()));
        assert!(!pruned.exhaustive);
        assert!(pruned.nodes_explored <= base.nodes_explored);
    }

    #[test]
    fn verify_small_theorems_with_full_check() {
        let o = VerifyOptions { search: opts(), full_check: true };
        for n in 0..=2 {
            let g = GroundSet::new(n);
            for id in [TheoremId::T1_2, TheoremId::T1_4, TheoremId::T1_5, TheoremId::T1_7, TheoremId::T1_9, TheoremId::T3_2] {
                let r = exhaustive_verify(&g, &id, &o).unwrap();
                assert!(r.valid, "{id} on n={n}");
                assert!(r.max_lhs <= r.rhs);
            }
        }
    }

    #[test]
    fn verify_detects_a_false_bound() {
        // The plain sum of skew systems can exceed 1, so checking skew
        // systems against the Bollobás bound must fail.
        let g = GroundSet::new(2);
        let space = Space::new(&g, SystemClass::Skew, WeightKind::Plain, |_| true, &Caps::default()).unwrap();
        let limit = space.scaled_floor(&int(1));
        let mut found = false;
        for b in branches(&space) {
            let _ = walk_branch(&space, b, |node| {
                found |= node.scaled_sum > limit;
                Flow::Continue
            });
        }
        assert!(found);
    }

    #[test]
    fn uniform_restriction_counts() {
        for (a, b) in [(1, 1), (1, 2), (2, 1)] {
            let g = GroundSet::new(a + b);
            for class in [SystemClass::Bollobas, SystemClass::Skew] {
                let o = SearchOptions { restrict: Some(vec![(a, b)]), ..opts() };
                let r = search_max(&g, class, WeightKind::Plain, &o).unwrap();
                let m = crate::binomial((a + b) as u64, a as i64);
                assert_eq!(r.maximizer.m() as u64, m.to_u64().unwrap(), "{class} a={a} b={b}");
                assert_eq!(r.max_sum, int(1));
            }
        }
    }
}
