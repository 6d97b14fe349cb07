//! Membership tests for Bollobás and skew Bollobás systems, skew
//! orderability of unordered pair sets, and antichains.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::ground::GroundSet;
use crate::sets::{ElementSet, SetPair};

/// Which condition a witness violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `A_i ∩ B_i ≠ ∅`.
    SelfIntersecting,
    /// `A_i ∩ B_j = ∅` for an index pair that requires an intersection.
    CrossDisjoint,
    /// `S_i ⊆ S_j` for two positions of a would-be antichain.
    Containment,
}

/// A violation at family positions `i` and `j` (1-based, as in the file).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub i: usize,
    pub j: usize,
    pub violation: Violation,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j) = (self.i, self.j);
        match self.violation {
            Violation::SelfIntersecting => write!(f, "({i},{j}): A{i}∩B{i}≠∅"),
            Violation::CrossDisjoint => write!(f, "({i},{j}): A{i}∩B{j}=∅"),
            Violation::Containment => write!(f, "({i},{j}): F{i}⊆F{j}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub valid: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub const VALID: Verdict = Verdict { valid: true, witness: None };

    fn invalid(i: usize, j: usize, violation: Violation) -> Self {
        Verdict {
            valid: false,
            witness: Some(Witness { i, j, violation }),
        }
    }

    /// Confirms that the witness really is a violation in `f`.
    pub fn recheck(&self, f: &Family) -> bool {
        let Some(w) = self.witness else {
            return self.valid;
        };
        let get = |k: usize| f.pairs().get(k.wrapping_sub(1));
        match (w.violation, get(w.i), get(w.j)) {
            (Violation::SelfIntersecting, Some(p), _) => !p.a().is_disjoint(p.b()),
            (Violation::CrossDisjoint, Some(p), Some(q)) => w.i != w.j && p.a().is_disjoint(q.b()),
            _ => false,
        }
    }
}

fn diagonal(f: &Family) -> Option<Verdict> {
    f.pairs()
        .iter()
        .position(|p| !p.a().is_disjoint(p.b()))
        .map(|i| Verdict::invalid(i + 1, i + 1, Violation::SelfIntersecting))
}

/// `A_i ∩ B_j = ∅ ⇔ i = j`. The witness is the lexicographically first
/// violating `(i, j)`.
pub fn validate_bollobas(f: &Family) -> Verdict {
    if let Some(v) = diagonal(f) {
        return v;
    }
    let pairs = f.pairs();
    for (i, p) in pairs.iter().enumerate() {
        for (j, q) in pairs.iter().enumerate() {
            if i != j && p.a().is_disjoint(q.b()) {
                return Verdict::invalid(i + 1, j + 1, Violation::CrossDisjoint);
            }
        }
    }
    Verdict::VALID
}

/// `A_i ∩ B_i = ∅` and `A_i ∩ B_j ≠ ∅` for `i < j`.
pub fn validate_skew(f: &Family) -> Verdict {
    if let Some(v) = diagonal(f) {
        return v;
    }
    let pairs = f.pairs();
    for (i, p) in pairs.iter().enumerate() {
        for (j, q) in pairs.iter().enumerate().skip(i + 1) {
            if p.a().is_disjoint(q.b()) {
                return Verdict::invalid(i + 1, j + 1, Violation::CrossDisjoint);
            }
        }
    }
    Verdict::VALID
}

/// True when `earlier` is forced to come before `later` in any skew
/// ordering, i.e. `A_later ∩ B_earlier = ∅`.
pub fn must_precede(earlier: &SetPair, later: &SetPair) -> bool {
    later.a().is_disjoint(earlier.b())
}

/// Outcome of [`skew_orderable`]; indices refer to the input slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderCertificate {
    /// A permutation of the input under which the pairs form a skew system.
    Ordering(Vec<usize>),
    /// A directed cycle `c_0 → c_1 → ... → c_0` in the precedence digraph,
    /// where each pair must precede the next one.
    Cycle(Vec<usize>),
}

/// Decides whether some ordering of `pairs` is a skew Bollobás system.
///
/// Builds the precedence digraph (`y → x` whenever `A_x ∩ B_y = ∅`) and
/// topologically sorts it, taking the available pair with the smallest
/// canonical encoding first. On failure a cycle is returned instead.
pub fn skew_orderable(pairs: &[SetPair]) -> Result<OrderCertificate> {
    let m = pairs.len();
    let mut by_code: Vec<usize> = (0..m).collect();
    by_code.sort_by(|&x, &y| pairs[x].canonical_cmp(&pairs[y]));
    for w in by_code.windows(2) {
        if pairs[w[0]] == pairs[w[1]] {
            let (first, second) = (w[0].min(w[1]), w[0].max(w[1]));
            return Err(Error::DuplicatePair { first: first + 1, second: second + 1 });
        }
    }
    let mut rank = vec![0; m];
    for (r, &x) in by_code.iter().enumerate() {
        rank[x] = r;
    }

    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut indegree = vec![0usize; m];
    for y in 0..m {
        for x in 0..m {
            if x != y && must_precede(&pairs[y], &pairs[x]) {
                succ[y].push(x);
                indegree[x] += 1;
            }
        }
    }

    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..m)
        .filter(|&x| indegree[x] == 0)
        .map(|x| Reverse((rank[x], x)))
        .collect();
    let mut order = Vec::with_capacity(m);
    let mut remaining = indegree.clone();
    while let Some(Reverse((_, y))) = heap.pop() {
        order.push(y);
        for &x in &succ[y] {
            remaining[x] -= 1;
            if remaining[x] == 0 {
                heap.push(Reverse((rank[x], x)));
            }
        }
    }
    if order.len() == m {
        return Ok(OrderCertificate::Ordering(order));
    }

    // Every unplaced vertex keeps an unplaced predecessor; walk backwards
    // until a vertex repeats.
    let unplaced: Vec<bool> = remaining.iter().map(|&d| d > 0).collect();
    let pred_of = |x: usize| {
        (0..m)
            .find(|&y| unplaced[y] && y != x && must_precede(&pairs[y], &pairs[x]))
            .expect("unplaced vertex has an unplaced predecessor")
    };
    let start = unplaced.iter().position(|&u| u).unwrap();
    let mut seen = vec![usize::MAX; m];
    let mut walk = vec![start];
    seen[start] = 0;
    loop {
        let p = pred_of(*walk.last().unwrap());
        if seen[p] != usize::MAX {
            let mut cycle: Vec<usize> = walk[seen[p]..].to_vec();
            cycle.reverse();
            return Ok(OrderCertificate::Cycle(cycle));
        }
        seen[p] = walk.len();
        walk.push(p);
    }
}

/// No set is contained in a set at another position. The witness
/// `(i, j)` means `S_i ⊆ S_j`.
pub fn validate_antichain(sets: &[ElementSet]) -> Verdict {
    for (i, s) in sets.iter().enumerate() {
        for (j, t) in sets.iter().enumerate() {
            if i != j && s.is_subset(t) {
                return Verdict::invalid(i + 1, j + 1, Violation::Containment);
            }
        }
    }
    Verdict::VALID
}

/// `F_i ↦ (F_i, [n] ∖ F_i)`.
pub fn antichain_to_system(ground: &GroundSet, sets: &[ElementSet]) -> Result<Family> {
    let full = ground.full_set();
    let pairs = sets
        .iter()
        .map(|s| SetPair::new(s.clone(), full.difference(s)))
        .collect::<Result<Vec<_>>>()?;
    Family::new(ground.clone(), pairs)
}
