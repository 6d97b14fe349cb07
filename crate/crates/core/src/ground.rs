//! The ground set `[n]` and its partition into blocks.

use crate::error::{Error, Result};
use crate::sets::{ElementSet, SetPair};

/// `[n]` split into `r` labelled blocks `X_1, ..., X_r`.
///
/// Blocks need not be contiguous. A block may be empty only when it was
/// declared through [`GroundSet::from_block_sizes`] or
/// [`GroundSet::with_blocks`]; such a block still counts towards `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: usize,
    /// 0-based block index of element `i + 1`.
    block_of: Vec<usize>,
    blocks: Vec<ElementSet>,
}

impl GroundSet {
    /// `[n]` as a single block.
    pub fn new(n: usize) -> Self {
        Self {
            n,
            block_of: vec![0; n],
            blocks: vec![ElementSet::full(n)],
        }
    }

    /// Contiguous blocks of the given sizes, in order.
    pub fn from_block_sizes(sizes: &[usize]) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::Partition("at least one block is required".into()));
        }
        let labels: Vec<usize> = sizes
            .iter()
            .enumerate()
            .flat_map(|(k, &s)| std::iter::repeat_n(k + 1, s))
            .collect();
        Self::with_blocks(labels.len(), &labels, sizes.len())
    }

    /// Blocks given by 1-based labels, one per element; every label in
    /// `1..=max` must occur.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        if labels.is_empty() {
            return Ok(Self::new(0));
        }
        let r = labels.iter().copied().max().unwrap_or(1);
        let g = Self::with_blocks(labels.len(), labels, r)?;
        if let Some(k) = g.block_sizes().iter().position(|&s| s == 0) {
            return Err(Error::Partition(format!("block label {} is never used", k + 1)));
        }
        Ok(g)
    }

    /// Blocks given by labels with an explicit block count `r`; labels
    /// beyond those present declare empty blocks.
    pub fn with_blocks(n: usize, labels: &[usize], r: usize) -> Result<Self> {
        if labels.len() != n {
            return Err(Error::Partition(format!(
                "partition has {} labels but n = {n}",
                labels.len()
            )));
        }
        if r == 0 {
            return Err(Error::Partition("at least one block is required".into()));
        }
        let mut blocks = vec![ElementSet::new(); r];
        let mut block_of = Vec::with_capacity(n);
        for (i, &label) in labels.iter().enumerate() {
            if label == 0 || label > r {
                return Err(Error::Partition(format!(
                    "element {} has block label {label}, expected 1..={r}",
                    i + 1
                )));
            }
            blocks[label - 1].insert(i + 1);
            block_of.push(label - 1);
        }
        Ok(Self { n, block_of, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.blocks.len()
    }

    pub fn block(&self, k: usize) -> &ElementSet {
        &self.blocks[k]
    }

    pub fn blocks(&self) -> &[ElementSet] {
        &self.blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(ElementSet::len).collect()
    }

    /// 1-based block label of each element, in element order.
    pub fn labels(&self) -> Vec<usize> {
        self.block_of.iter().map(|k| k + 1).collect()
    }

    /// 0-based block index of element `i` (1-based).
    pub fn block_of(&self, element: usize) -> usize {
        self.block_of[element - 1]
    }

    /// Same `n`, one block.
    pub fn unpartitioned(&self) -> Self {
        Self::new(self.n)
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    pub fn contains_pair(&self, p: &SetPair) -> bool {
        p.max_element() <= self.n
    }

    pub fn ensure_pair(&self, p: &SetPair) -> Result<()> {
        if self.contains_pair(p) {
            Ok(())
        } else {
            Err(Error::GroundMismatch { n: self.n })
        }
    }

    /// `(|A ∩ X_k|, |B ∩ X_k|)` for every block.
    pub fn profile(&self, p: &SetPair) -> Vec<(usize, usize)> {
        self.blocks
            .iter()
            .map(|x| (p.a().intersection_len(x), p.b().intersection_len(x)))
            .collect()
    }
}
