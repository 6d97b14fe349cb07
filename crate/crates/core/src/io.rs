//! The family file format.
//!
//! ```json
//! {
//!   "n": 4,
//!   "partition": [1, 1, 2, 2],
//!   "pairs": [
//!     {"A": [1, 3], "B": [2, 4]}
//!   ]
//! }
//! ```
//!
//! `partition` is optional (absent means one block). `blocks` is an
//! optional block count, written only when the ground set declares empty
//! blocks that the labels alone cannot express.

use serde::Deserialize;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::ground::GroundSet;
use crate::sets::{ElementSet, SetPair};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    n: usize,
    #[serde(default)]
    partition: Option<Vec<usize>>,
    #[serde(default)]
    blocks: Option<usize>,
    pairs: Vec<RawPair>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPair {
    #[serde(rename = "A")]
    a: Vec<usize>,
    #[serde(rename = "B")]
    b: Vec<usize>,
}

fn raw_ground(n: usize, partition: Option<Vec<usize>>, blocks: Option<usize>) -> Result<GroundSet> {
    match (partition, blocks) {
        (None, None) => Ok(GroundSet::new(n)),
        (None, Some(r)) => {
            // every element in block 1, the rest declared empty
            GroundSet::with_blocks(n, &vec![1; n], r)
        }
        (Some(labels), None) => {
            if labels.len() != n {
                return Err(Error::Partition(format!(
                    "partition has {} labels but n = {n}",
                    labels.len()
                )));
            }
            GroundSet::from_labels(&labels)
        }
        (Some(labels), Some(r)) => GroundSet::with_blocks(n, &labels, r),
    }
}

fn element_set(pair: usize, n: usize, items: &[usize]) -> Result<ElementSet> {
    let mut s = ElementSet::new();
    for &e in items {
        if e == 0 || e > n {
            return Err(Error::ElementOutOfRange { pair, element: e, n });
        }
        s.insert(e);
    }
    Ok(s)
}

pub fn parse_family(document: &str) -> Result<Family> {
    let raw: RawFamily =
        serde_json::from_str(document).map_err(|e| Error::Malformed(e.to_string()))?;
    let ground = raw_ground(raw.n, raw.partition, raw.blocks)?;
    let mut pairs = Vec::with_capacity(raw.pairs.len());
    for (i, p) in raw.pairs.iter().enumerate() {
        let a = element_set(i + 1, raw.n, &p.a)?;
        let b = element_set(i + 1, raw.n, &p.b)?;
        let pair = SetPair::new(a, b).map_err(|e| match e {
            Error::NotDisjoint { elements, .. } => Error::NotDisjoint { pair: i + 1, elements },
            other => other,
        })?;
        pairs.push(pair);
    }
    Family::new(ground, pairs)
}

fn write_list(out: &mut String, items: impl Iterator<Item = usize>) {
    out.push('[');
    for (k, x) in items.enumerate() {
        if k > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{x}");
    }
    out.push(']');
}

/// Writes the family in a stable layout: one pair per line, elements ascending.
pub fn serialize_family(f: &Family) -> String {
    let g = f.ground();
    let mut out = String::new();
    let _ = writeln!(out, "{{");
    let _ = writeln!(out, "  \"n\": {},", g.n());
    if g.r() > 1 {
        out.push_str("  \"partition\": ");
        write_list(&mut out, g.labels().into_iter());
        out.push_str(",\n");
    }
    if g.r() > 1 && g.block_sizes().contains(&0) {
        let _ = writeln!(out, "  \"blocks\": {},", g.r());
    }
    if f.is_empty() {
        out.push_str("  \"pairs\": []\n}\n");
        return out;
    }
    out.push_str("  \"pairs\": [\n");
    for (i, p) in f.pairs().iter().enumerate() {
        out.push_str("    {\"A\": ");
        write_list(&mut out, p.a().iter());
        out.push_str(", \"B\": ");
        write_list(&mut out, p.b().iter());
        out.push('}');
        if i + 1 < f.m() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("  ]\n}\n");
    out
}
