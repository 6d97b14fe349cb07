#![allow(dead_code)]

use bollobas::constructions::all_subsets;
use bollobas::{ElementSet, GroundSet};

/// Every surjective labeling `[n] → [r]`, as 1-based labels.
pub fn labelings(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![1; n];
    loop {
        let mut used = vec![false; r];
        cur.iter().for_each(|&l| used[l - 1] = true);
        if used.iter().all(|&u| u) || (n == 0 && r == 1) {
            out.push(cur.clone());
        }
        let Some(i) = (0..n).rev().find(|&i| cur[i] < r) else {
            return out;
        };
        cur[i] += 1;
        cur[i + 1..].iter_mut().for_each(|l| *l = 1);
    }
}

/// Grounds for every surjective labeling of `[n]` onto `r` blocks; `n = 0`
/// gives the single one-block ground.
pub fn labeled_grounds(n: usize, r: usize) -> Vec<GroundSet> {
    if n == 0 {
        return if r == 1 { vec![GroundSet::new(0)] } else { Vec::new() };
    }
    labelings(n, r).iter().map(|l| GroundSet::from_labels(l).unwrap()).collect()
}

/// One ground per set partition of `[n]` into `r` nonempty blocks
/// (restricted growth strings).
pub fn set_partitions(n: usize, r: usize) -> Vec<GroundSet> {
    labelings(n, r)
        .into_iter()
        .filter(|l| {
            let mut next = 1;
            l.iter().all(|&x| {
                if x > next {
                    false
                } else {
                    next = next.max(x + 1);
                    true
                }
            })
        })
        .map(|l| if n == 0 { GroundSet::new(0) } else { GroundSet::from_labels(&l).unwrap() })
        .collect()
}

/// Every antichain of subsets of `[n]`, the empty one included.
pub fn antichains(n: usize) -> Vec<Vec<ElementSet>> {
    let subsets = all_subsets(n);
    let mut out = Vec::new();
    fn go(subsets: &[ElementSet], start: usize, cur: &mut Vec<ElementSet>, out: &mut Vec<Vec<ElementSet>>) {
        out.push(cur.clone());
        for i in start..subsets.len() {
            let s = &subsets[i];
            if cur.iter().all(|t| !t.is_subset(s) && !s.is_subset(t)) {
                cur.push(s.clone());
                go(subsets, i + 1, cur, out);
                cur.pop();
            }
        }
    }
    go(&subsets, 0, &mut Vec::new(), &mut out);
    out
}
