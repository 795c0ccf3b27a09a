//! Bi-partitions and the combinatorial index sets: dominance order,
//! conjugation, p-regularity, and the cell index poset of the diagram algebra.

use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombError {
    #[error("invalid bi-partition `{0}`: {1}")]
    Parse(String, String),
    #[error("size mismatch: |{0}| != |{1}|")]
    SizeMismatch(String, String),
}

/// A partition: weakly decreasing positive parts.
pub type Partition = Vec<usize>;

pub fn partition_size(p: &Partition) -> usize {
    p.iter().sum()
}

pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, cur: &mut Partition, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            cur.push(part);
            rec(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n.max(1), &mut Vec::new(), &mut out);
    if n == 0 {
        return vec![vec![]];
    }
    out
}

pub fn conjugate_partition(p: &Partition) -> Partition {
    let rows = p.len();
    if rows == 0 {
        return vec![];
    }
    let cols = p[0];
    (1..=cols)
        .map(|c| (0..rows).filter(|&i| p[i] >= c).count())
        .collect()
}

fn is_p_regular_partition(p: &Partition, prime: u64) -> bool {
    if prime == 0 {
        return true;
    }
    let mut run = 1;
    for i in 1..p.len() {
        if p[i] == p[i - 1] {
            run += 1;
            if run as u64 >= prime {
                return false;
            }
        } else {
            run = 1;
        }
    }
    true
}

/// A pair of partitions with total size r.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiPartition {
    pub first: Partition,
    pub second: Partition,
}

impl BiPartition {
    pub fn new(first: Partition, second: Partition) -> BiPartition {
        debug_assert!(first.windows(2).all(|w| w[0] >= w[1]) && !first.contains(&0));
        debug_assert!(second.windows(2).all(|w| w[0] >= w[1]) && !second.contains(&0));
        BiPartition { first, second }
    }

    pub fn empty() -> BiPartition {
        BiPartition {
            first: vec![],
            second: vec![],
        }
    }

    pub fn size(&self) -> usize {
        partition_size(&self.first) + partition_size(&self.second)
    }

    pub fn component(&self, i: usize) -> &Partition {
        match i {
            0 => &self.first,
            1 => &self.second,
            _ => panic!("component index"),
        }
    }

    /// Swap components, then transpose each: (lam1, lam2)' = (lam2', lam1').
    pub fn conjugate(&self) -> BiPartition {
        BiPartition {
            first: conjugate_partition(&self.second),
            second: conjugate_partition(&self.first),
        }
    }

    /// Both components p-regular for odd p; for p = 2 the first component
    /// must be empty and the second 2-regular. p = 0 is always regular.
    pub fn is_p_regular(&self, p: u64) -> bool {
        match p {
            0 => true,
            2 => self.first.is_empty() && is_p_regular_partition(&self.second, 2),
            _ => is_p_regular_partition(&self.first, p) && is_p_regular_partition(&self.second, p),
        }
    }

    /// Cumulative key extending dominance: lam dominates mu iff
    /// key(lam) >= key(mu) pointwise; lexicographic comparison of keys gives a
    /// deterministic total order refining dominance.
    pub fn dominance_key(&self) -> Vec<usize> {
        let n = self.size();
        let mut key = Vec::with_capacity(2 * n);
        let mut acc = 0;
        for j in 0..n {
            acc += self.first.get(j).copied().unwrap_or(0);
            key.push(acc);
        }
        for j in 0..n {
            acc += self.second.get(j).copied().unwrap_or(0);
            key.push(acc);
        }
        key
    }

    /// Text form `2,1|1`; an empty component prints as `-`.
    pub fn parse(text: &str) -> Result<BiPartition, CombError> {
        let t = text.trim();
        let bar = t
            .find('|')
            .ok_or_else(|| CombError::Parse(text.into(), "expected `|` separator".into()))?;
        let parse_comp = |s: &str| -> Result<Partition, CombError> {
            let s = s.trim();
            if s == "-" || s.is_empty() {
                return Ok(vec![]);
            }
            let parts = s
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| CombError::Parse(text.into(), format!("bad part `{x}`")))
                })
                .collect::<Result<Vec<usize>, _>>()?;
            if parts.contains(&0) {
                return Err(CombError::Parse(text.into(), "zero part".into()));
            }
            if parts.windows(2).any(|w| w[0] < w[1]) {
                return Err(CombError::Parse(
                    text.into(),
                    "parts must be weakly decreasing".into(),
                ));
            }
            Ok(parts)
        };
        Ok(BiPartition {
            first: parse_comp(&t[..bar])?,
            second: parse_comp(&t[bar + 1..])?,
        })
    }
}

impl std::fmt::Display for BiPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let comp = |p: &Partition| {
            if p.is_empty() {
                "-".to_string()
            } else {
                p.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            }
        };
        write!(f, "{}|{}", comp(&self.first), comp(&self.second))
    }
}

pub fn enumerate_bipartitions(r: usize) -> Vec<BiPartition> {
    let mut out = Vec::new();
    for a in 0..=r {
        for first in enumerate_partitions(a) {
            for second in enumerate_partitions(r - a) {
                out.push(BiPartition {
                    first: first.clone(),
                    second,
                });
            }
        }
    }
    out.sort();
    out
}

/// Dominance: partial sums of the first components compare, then partial sums
/// offset by the full first-component size.
pub fn dominates(a: &BiPartition, b: &BiPartition) -> Result<bool, CombError> {
    if a.size() != b.size() {
        return Err(CombError::SizeMismatch(a.to_string(), b.to_string()));
    }
    let (ka, kb) = (a.dominance_key(), b.dominance_key());
    Ok(ka.iter().zip(kb.iter()).all(|(x, y)| x >= y))
}

pub fn strictly_dominates(a: &BiPartition, b: &BiPartition) -> Result<bool, CombError> {
    Ok(a != b && dominates(a, b)?)
}

/// Index of a cell of the diagram algebra: an arc layer `l` and a
/// bi-partition of `r - l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellIndex {
    pub layer: usize,
    pub lam: BiPartition,
}

impl CellIndex {
    pub fn new(layer: usize, lam: BiPartition) -> CellIndex {
        CellIndex { layer, lam }
    }

    pub fn parse(text: &str, r: usize) -> Result<CellIndex, CombError> {
        let t = text.trim();
        let colon = t
            .find(':')
            .ok_or_else(|| CombError::Parse(text.into(), "expected `layer:bipartition`".into()))?;
        let layer: usize = t[..colon]
            .trim()
            .parse()
            .map_err(|_| CombError::Parse(text.into(), "bad layer".into()))?;
        let lam = BiPartition::parse(&t[colon + 1..])?;
        if layer > r || lam.size() != r - layer {
            return Err(CombError::Parse(
                text.into(),
                format!("expected a bi-partition of {}", r as i64 - layer as i64),
            ));
        }
        Ok(CellIndex { layer, lam })
    }
}

impl std::fmt::Display for CellIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.layer, self.lam)
    }
}

/// The partial order on cell indices: `(m, mu) >= (l, lam)` iff `m < l`, or
/// `m = l` and `lam` dominates `mu`. Smaller layers sit higher; within a
/// layer the order reverses dominance.
pub fn cmp_cell_indices(a: &CellIndex, b: &CellIndex) -> Option<Ordering> {
    if a == b {
        return Some(Ordering::Equal);
    }
    if a.layer != b.layer {
        // strictly comparable across layers: smaller layer is greater
        return Some(if a.layer < b.layer {
            Ordering::Greater
        } else {
            Ordering::Less
        });
    }
    let ab = dominates(&b.lam, &a.lam).ok()?;
    let ba = dominates(&a.lam, &b.lam).ok()?;
    match (ab, ba) {
        (true, false) => Some(Ordering::Greater), // b dominates a => a is greater
        (false, true) => Some(Ordering::Less),
        _ => None,
    }
}

pub fn cell_index_ge(a: &CellIndex, b: &CellIndex) -> bool {
    matches!(
        cmp_cell_indices(a, b),
        Some(Ordering::Greater) | Some(Ordering::Equal)
    )
}

pub fn cell_index_gt(a: &CellIndex, b: &CellIndex) -> bool {
    matches!(cmp_cell_indices(a, b), Some(Ordering::Greater))
}

/// All cell indices for rank r, in a fixed linear extension of the partial
/// order from greatest to least: layers ascending, and within a layer by
/// ascending dominance key (dominance-smaller bi-partitions are greater).
pub fn cell_indices(r: usize) -> Vec<CellIndex> {
    let mut out = Vec::new();
    for l in 0..=r {
        let mut layer: Vec<CellIndex> = enumerate_bipartitions(r - l)
            .into_iter()
            .map(|lam| CellIndex { layer: l, lam })
            .collect();
        layer.sort_by(|a, b| {
            a.lam
                .dominance_key()
                .cmp(&b.lam.dominance_key())
                .then_with(|| a.lam.to_string().cmp(&b.lam.to_string()))
        });
        out.extend(layer);
    }
    out
}
