//! Ordered families of set pairs and the per-pair weights.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::rational::{binomial, recip, Rational};
use crate::sets::SetPair;

/// Which summand a pair contributes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightKind {
    /// `1 / C(|A|+|B|, |A|)`
    Plain,
    /// `1 / ((1+|A|+|B|) C(|A|+|B|, |A|))`
    Augmented,
    /// `∏_k 1 / C(|A∩X_k|+|B∩X_k|, |A∩X_k|)`
    Partitioned,
}

impl FromStr for WeightKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Self::Plain),
            "augmented" => Ok(Self::Augmented),
            "partitioned" => Ok(Self::Partitioned),
            other => Err(Error::Malformed(format!("unknown weight kind {other:?}"))),
        }
    }
}

impl fmt::Display for WeightKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Plain => "plain",
            Self::Augmented => "augmented",
            Self::Partitioned => "partitioned",
        })
    }
}

/// The integer whose reciprocal is the weight of `pair`.
pub fn weight_denominator(pair: &SetPair, kind: WeightKind, ground: &GroundSet) -> Result<BigUint> {
    ground.ensure_pair(pair)?;
    let (a, b) = (pair.a().len() as u64, pair.b().len() as u64);
    Ok(match kind {
        WeightKind::Plain => binomial(a + b, a as i64),
        WeightKind::Augmented => binomial(a + b, a as i64) * (1 + a + b),
        WeightKind::Partitioned => ground
            .profile(pair)
            .into_iter()
            .fold(BigUint::one(), |acc, (ak, bk)| {
                acc * binomial((ak + bk) as u64, ak as i64)
            }),
    })
}

pub fn weight(pair: &SetPair, kind: WeightKind, ground: &GroundSet) -> Result<Rational> {
    weight_denominator(pair, kind, ground).map(recip)
}

/// A sequence of set pairs over one ground set. Order is kept exactly as
/// given, since skew systems depend on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    ground: GroundSet,
    pairs: Vec<SetPair>,
}

impl Family {
    pub fn new(ground: GroundSet, pairs: Vec<SetPair>) -> Result<Self> {
        for (i, p) in pairs.iter().enumerate() {
            if let Some(e) = p.a().iter().chain(p.b().iter()).find(|&e| e > ground.n()) {
                return Err(Error::ElementOutOfRange {
                    pair: i + 1,
                    element: e,
                    n: ground.n(),
                });
            }
        }
        Ok(Self { ground, pairs })
    }

    pub fn empty(ground: GroundSet) -> Self {
        Self { ground, pairs: Vec::new() }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn pairs(&self) -> &[SetPair] {
        &self.pairs
    }

    pub fn m(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn into_pairs(self) -> Vec<SetPair> {
        self.pairs
    }

    /// The same pairs over a different partition of the same `[n]`.
    pub fn with_ground(&self, ground: GroundSet) -> Result<Self> {
        Self::new(ground, self.pairs.clone())
    }

    /// Pairs rearranged so that position `k` holds `self.pairs[order[k]]`.
    pub fn reordered(&self, order: &[usize]) -> Self {
        Self {
            ground: self.ground.clone(),
            pairs: order.iter().map(|&i| self.pairs[i].clone()).collect(),
        }
    }

    pub fn reversed(&self) -> Self {
        let mut pairs = self.pairs.clone();
        pairs.reverse();
        Self { ground: self.ground.clone(), pairs }
    }

    /// Relabels elements; `map[i - 1]` is the image of `i`.
    pub fn relabeled(&self, map: &[usize]) -> Self {
        Self {
            ground: self.ground.clone(),
            pairs: self.pairs.iter().map(|p| p.map(map)).collect(),
        }
    }

    pub fn is_complement_pair(&self, p: &SetPair) -> bool {
        p.a().union(p.b()) == self.ground.full_set()
    }
}
