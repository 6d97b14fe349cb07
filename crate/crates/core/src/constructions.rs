//! Families that attain the inequalities with equality.
//!
//! All of them consist of complement pairs `(A, X ∖ A)`; they differ in
//! which sets `A` are taken and how the ground set is split.

use std::cmp::Reverse;

use crate::error::Result;
use crate::family::Family;
use crate::ground::GroundSet;
use crate::sets::{ElementSet, SetPair};

/// All `k`-element subsets of `elements`.
pub fn subsets_of_size(elements: &[usize], k: usize) -> Vec<ElementSet> {
    fn go(rest: &[usize], k: usize, cur: &mut Vec<usize>, out: &mut Vec<ElementSet>) {
        if k == 0 {
            out.push(cur.iter().copied().collect());
            return;
        }
        if rest.len() < k {
            return;
        }
        cur.push(rest[0]);
        go(&rest[1..], k - 1, cur, out);
        cur.pop();
        go(&rest[1..], k, cur, out);
    }
    let mut out = Vec::new();
    go(elements, k, &mut Vec::new(), &mut out);
    out
}

/// Every subset of `[n]`.
///
/// # Panics
///
/// If `n >= 64`.
pub fn all_subsets(n: usize) -> Vec<ElementSet> {
    assert!(n < 64, "2^{n} subsets cannot be listed");
    (0u64..1 << n)
        .map(|mask| (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect())
        .collect()
}

fn complement_pairs(ground: &GroundSet, sets: Vec<ElementSet>) -> Vec<SetPair> {
    let full = ground.full_set();
    sets.into_iter()
        .map(|a| {
            let b = full.difference(&a);
            SetPair::new(a, b).expect("a set and its complement are disjoint")
        })
        .collect()
}

fn sort_canonical(pairs: &mut [SetPair]) {
    pairs.sort_by(|p, q| p.canonical_cmp(q));
}

/// All `2^n` pairs `(A, [n] ∖ A)`, largest `A` first, ties in ascending
/// canonical order. A skew system whose partitioned sum is `∏(1 + n_k)`.
///
/// # Panics
///
/// If `n >= 64`.
pub fn example1(ground: &GroundSet) -> Family {
    let mut pairs = complement_pairs(ground, all_subsets(ground.n()));
    pairs.sort_by(|p, q| {
        Reverse(p.a().len())
            .cmp(&Reverse(q.a().len()))
            .then_with(|| p.canonical_cmp(q))
    });
    Family::new(ground.clone(), pairs).expect("pairs live on the ground set")
}

/// With `k = ⌊n/2⌋`, `X_1 = [k]` and `X_2 = [n] ∖ [k]`: all pairs
/// `(A, [n] ∖ A)` with `|A| = k`. A Bollobás system with partitioned sum
/// `1 + k`.
pub fn example2(n: usize) -> (Family, GroundSet) {
    let k = n / 2;
    let labels: Vec<usize> = (1..=n).map(|i| if i <= k { 1 } else { 2 }).collect();
    let ground = GroundSet::with_blocks(n, &labels, 2).expect("two blocks");
    let elements: Vec<usize> = (1..=n).collect();
    let mut pairs = complement_pairs(&ground, subsets_of_size(&elements, k));
    sort_canonical(&mut pairs);
    (Family::new(ground.clone(), pairs).expect("pairs live on the ground set"), ground)
}

/// All `C(a+b, a)` pairs `(A, [a+b] ∖ A)` with `|A| = a`.
pub fn uniform(a: usize, b: usize) -> Family {
    let ground = GroundSet::new(a + b);
    let elements: Vec<usize> = (1..=a + b).collect();
    let mut pairs = complement_pairs(&ground, subsets_of_size(&elements, a));
    sort_canonical(&mut pairs);
    Family::new(ground, pairs).expect("pairs live on the ground set")
}

/// Contiguous blocks of sizes `a_k + b_k`; every choice of an
/// `a_k`-subset in each block, paired with the complement.
pub fn uniform_partitioned(a: &[usize], b: &[usize]) -> Result<(Family, GroundSet)> {
    if a.len() != b.len() || a.is_empty() {
        return Err(crate::Error::Precondition(
            "a and b must be nonempty vectors of equal length".into(),
        ));
    }
    let sizes: Vec<usize> = a.iter().zip(b).map(|(x, y)| x + y).collect();
    let ground = GroundSet::from_block_sizes(&sizes)?;
    let mut sets = vec![ElementSet::new()];
    for (k, &ak) in a.iter().enumerate() {
        let block: Vec<usize> = ground.block(k).iter().collect();
        let choices = subsets_of_size(&block, ak);
        sets = sets
            .iter()
            .flat_map(|s| choices.iter().map(move |c| s.union(c)))
            .collect();
    }
    let mut pairs = complement_pairs(&ground, sets);
    sort_canonical(&mut pairs);
    Ok((Family::new(ground.clone(), pairs)?, ground))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::WeightKind;
    use crate::functionals::{family_sum, type_count};
    use crate::rational::{from_biguint, int};
    use crate::sets::pair;
    use crate::systems::{validate_bollobas, validate_skew};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    #[test]
    fn example1_small() {
        let f = example1(&GroundSet::new(2));
        assert_eq!(
            f.pairs(),
            &[pair([1, 2], []), pair([2], [1]), pair([1], [2]), pair([], [1, 2])]
        );
        assert_eq!(family_sum(&f, WeightKind::Plain).unwrap(), int(3));

        let g = GroundSet::from_block_sizes(&[2, 2]).unwrap();
        let f = example1(&g);
        assert_eq!(f.m(), 16);
        assert_eq!(family_sum(&f, WeightKind::Partitioned).unwrap(), int(9));

        let f = example1(&GroundSet::new(0));
        assert_eq!(f.pairs(), &[pair([], [])]);
        assert_eq!(family_sum(&f, WeightKind::Plain).unwrap(), int(1));
    }

    #[test]
    fn example1_saturates_augmented_sum() {
        for n in 0..=10 {
            let f = example1(&GroundSet::new(n));
            assert_eq!(family_sum(&f, WeightKind::Augmented).unwrap(), int(1), "n={n}");
        }
    }

    #[test]
    fn example1_any_size_class_order_is_skew() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 0..=5 {
            let f = example1(&GroundSet::new(n));
            for _ in 0..20 {
                let mut pairs = f.pairs().to_vec();
                pairs.shuffle(&mut rng);
                pairs.sort_by_key(|p| Reverse(p.a().len()));
                let g = Family::new(f.ground().clone(), pairs).unwrap();
                assert!(validate_skew(&g).valid);
            }
        }
    }

    #[test]
    fn example2_small() {
        let (f, g) = example2(4);
        assert_eq!(f.m(), 6);
        assert_eq!(g.block_sizes(), vec![2, 2]);
        assert!(validate_bollobas(&f).valid);
        assert_eq!(family_sum(&f, WeightKind::Partitioned).unwrap(), int(3));

        let (f, _) = example2(2);
        assert_eq!(f.m(), 2);
        assert_eq!(family_sum(&f, WeightKind::Partitioned).unwrap(), int(2));

        let (f, g) = example2(1);
        assert_eq!(g.block_sizes(), vec![0, 1]);
        assert_eq!(f.pairs(), &[pair([], [1])]);
        assert_eq!(family_sum(&f, WeightKind::Partitioned).unwrap(), int(1));
    }

    #[test]
    fn uniform_families() {
        assert_eq!(uniform(1, 1).m(), 2);
        let f = uniform(2, 2);
        assert_eq!(f.m(), 6);
        assert!(validate_bollobas(&f).valid);
        assert_eq!(family_sum(&f, WeightKind::Plain).unwrap(), int(1));
        assert_eq!(uniform(0, 0).pairs(), &[pair([], [])]);
    }

    #[test]
    fn uniform_partitioned_families() {
        let (f, g) = uniform_partitioned(&[1, 1], &[1, 1]).unwrap();
        assert_eq!((f.m(), g.n()), (4, 4));
        assert!(validate_bollobas(&f).valid);

        let (f, _) = uniform_partitioned(&[2], &[1]).unwrap();
        assert_eq!(f, uniform(2, 1));

        let (f, g) = uniform_partitioned(&[1, 0], &[0, 2]).unwrap();
        assert_eq!((f.m(), g.block_sizes()), (1, vec![1, 2]));

        assert!(uniform_partitioned(&[1], &[1, 1]).is_err());
    }

    #[test]
    fn example1_partitioned_sum_is_type_count() {
        for sizes in [vec![1, 2], vec![3, 0, 1], vec![2, 2, 2]] {
            let g = GroundSet::from_block_sizes(&sizes).unwrap();
            let f = example1(&g);
            assert_eq!(
                family_sum(&f, WeightKind::Partitioned).unwrap(),
                from_biguint(type_count(&g))
            );
        }
    }
}
