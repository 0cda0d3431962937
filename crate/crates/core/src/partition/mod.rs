//! Set partitions of `{1..n}` and the lattices `Π_n` and `NC_n`.
//!
//! A [`Partition`] is stored as a restricted growth string: point `i`
//! (0-based) carries the index of its block, blocks being numbered by
//! their minimal elements. This is the canonical form, so structural
//! equality is partition equality.
//!
//! Programmatic APIs use 0-based points. The text format is 1-based.

mod enumerate;
mod moebius;
mod parse;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use enumerate::{bell, catalan, enumerate, RestrictedGrowth, MAX_ENUMERATE_FULL, MAX_ENUMERATE_NC};
pub use moebius::{interval, MoebiusCache};

use crate::error::{Error, Result};

/// Largest ground set a [`Partition`] can hold.
pub const MAX_POINTS: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LatticeKind {
    /// All set partitions, `Π_n`.
    Full,
    /// Noncrossing partitions, `NC_n`.
    Noncrossing,
}

impl LatticeKind {
    pub fn admits(self, p: &Partition) -> bool {
        match self {
            LatticeKind::Full => true,
            LatticeKind::Noncrossing => p.is_noncrossing(),
        }
    }

    pub(crate) fn check(self, p: &Partition) -> Result<()> {
        if self.admits(p) {
            Ok(())
        } else {
            Err(Error::Crossing(p.clone()))
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    labels: Vec<u8>,
}

impl Partition {
    /// Builds a partition from any block labelling of the points; equal
    /// labels mean same block. The labelling is canonicalised.
    pub fn from_labels<T: Copy + Ord>(labels: &[T]) -> Result<Self> {
        if labels.len() > MAX_POINTS {
            return Err(Error::Capacity {
                what: alloc::format!("partition of {} points", labels.len()),
                limit: MAX_POINTS,
            });
        }
        Ok(Self::canonical(labels))
    }

    fn canonical<T: Copy + Ord>(labels: &[T]) -> Self {
        let mut seen: Vec<T> = Vec::new();
        let labels = labels
            .iter()
            .map(|l| match seen.iter().position(|s| s == l) {
                Some(i) => i as u8,
                None => {
                    seen.push(*l);
                    (seen.len() - 1) as u8
                }
            })
            .collect();
        Partition { labels }
    }

    /// Builds a partition of `{0..n}` from 0-based blocks.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::Invalid("empty block".into()));
            }
            for &i in block {
                if i >= n {
                    return Err(Error::Invalid(alloc::format!("point {i} outside 0..{n}")));
                }
                if labels[i] != usize::MAX {
                    return Err(Error::Invalid(alloc::format!("point {i} in two blocks")));
                }
                labels[i] = b;
            }
        }
        if let Some(i) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::Invalid(alloc::format!("point {i} not covered")));
        }
        Self::from_labels(&labels)
    }

    /// `0̂_n`, all singletons.
    pub fn discrete(n: usize) -> Self {
        assert!(n <= MAX_POINTS);
        Partition { labels: (0..n).map(|i| i as u8).collect() }
    }

    /// `1̂_n`, a single block (empty for `n = 0`).
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_POINTS);
        Partition { labels: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Number of blocks, `|π|`.
    pub fn size(&self) -> usize {
        self.labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0)
    }

    /// Block index of each point.
    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn block_of(&self, point: usize) -> usize {
        self.labels[point] as usize
    }

    pub fn same_block(&self, i: usize, j: usize) -> bool {
        self.labels[i] == self.labels[j]
    }

    /// Blocks as ascending 0-based point lists, ordered by minima.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.size()];
        for (i, &l) in self.labels.iter().enumerate() {
            blocks[l as usize].push(i);
        }
        blocks
    }

    pub fn is_discrete(&self) -> bool {
        self.size() == self.n()
    }

    pub fn is_full(&self) -> bool {
        self.size() <= 1
    }

    /// Whether every block is a run of consecutive points.
    pub fn is_interval_partition(&self) -> bool {
        self.labels.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1)
    }

    /// Finds two blocks that cross, if any.
    fn crossing_pair(&self) -> Option<(u8, u8)> {
        let size = self.size();
        let mut first = vec![usize::MAX; size];
        let mut last = vec![0; size];
        for (i, &l) in self.labels.iter().enumerate() {
            let l = l as usize;
            if first[l] == usize::MAX {
                first[l] = i;
            }
            last[l] = i;
        }
        let mut open: Vec<u8> = Vec::new();
        for (i, &l) in self.labels.iter().enumerate() {
            if first[l as usize] == i {
                open.push(l);
            } else {
                let top = *open.last().expect("block already opened");
                if top != l {
                    return Some((l, top));
                }
            }
            if last[l as usize] == i {
                open.pop();
            }
        }
        None
    }

    pub fn is_noncrossing(&self) -> bool {
        self.crossing_pair().is_none()
    }

    fn same_n(&self, other: &Partition) -> Result<()> {
        if self.n() == other.n() {
            Ok(())
        } else {
            Err(Error::Dimension { left: self.n(), right: other.n() })
        }
    }

    /// `self ≤ other` in refinement order.
    pub fn refines(&self, other: &Partition) -> Result<bool> {
        self.same_n(other)?;
        Ok(self.refines_unchecked(other))
    }

    pub(crate) fn refines_unchecked(&self, other: &Partition) -> bool {
        let mut image = vec![u8::MAX; self.size()];
        for (&a, &b) in self.labels.iter().zip(&other.labels) {
            let slot = &mut image[a as usize];
            if *slot == u8::MAX {
                *slot = b;
            } else if *slot != b {
                return false;
            }
        }
        true
    }

    pub(crate) fn ensure_refines(&self, upper: &Partition) -> Result<()> {
        if self.refines(upper)? {
            Ok(())
        } else {
            Err(Error::Order { lower: self.clone(), upper: upper.clone() })
        }
    }

    /// Greatest lower bound; the same in `Π_n` and `NC_n`.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        self.same_n(other)?;
        let pairs: Vec<(u8, u8)> = self.labels.iter().copied().zip(other.labels.iter().copied()).collect();
        Ok(Self::canonical(&pairs))
    }

    /// Least upper bound in the chosen lattice.
    pub fn join(&self, other: &Partition, kind: LatticeKind) -> Result<Partition> {
        self.same_n(other)?;
        kind.check(self)?;
        kind.check(other)?;
        let mut labels: Vec<u8> = self.labels.clone();
        merge_classes(&mut labels, &other.labels);
        let mut joined = Self::canonical(&labels);
        if kind == LatticeKind::Noncrossing {
            while let Some((a, b)) = joined.crossing_pair() {
                let merged: Vec<u8> = joined.labels.iter().map(|&l| if l == b { a } else { l }).collect();
                joined = Self::canonical(&merged);
            }
        }
        Ok(joined)
    }

    /// `σ/ρ` for `ρ ≤ σ` (`self` is `σ`): the partition of the `ρ`-blocks
    /// induced by `σ`.
    pub fn quotient(&self, rho: &Partition) -> Result<Partition> {
        rho.ensure_refines(self)?;
        let mut image = vec![0u8; rho.size()];
        for (&r, &s) in rho.labels.iter().zip(&self.labels) {
            image[r as usize] = s;
        }
        Ok(Self::canonical(&image))
    }

    /// Lifts a partition of the blocks of `self` back to the points.
    pub fn lift(&self, of_blocks: &Partition) -> Result<Partition> {
        if of_blocks.n() != self.size() {
            return Err(Error::Dimension { left: self.size(), right: of_blocks.n() });
        }
        let labels: Vec<u8> = self.labels.iter().map(|&l| of_blocks.labels[l as usize]).collect();
        Ok(Self::canonical(&labels))
    }

    /// `π ∪̃ σ` on `2n` points: `π` on odd positions, `σ` on even ones.
    pub fn interweave(&self, other: &Partition) -> Result<Partition> {
        self.same_n(other)?;
        if 2 * self.n() > MAX_POINTS {
            return Err(Error::Capacity { what: "interweaved partition".into(), limit: MAX_POINTS });
        }
        let offset = self.size() as u16;
        let labels: Vec<u16> =
            self.labels.iter().zip(&other.labels).flat_map(|(&a, &b)| [a as u16, offset + b as u16]).collect();
        Ok(Self::canonical(&labels))
    }

    /// Kreweras complement `K(π)`, the largest `σ ∈ NC_n` with `π ∪̃ σ`
    /// noncrossing.
    ///
    /// Computed as the cycle partition of `π⁻¹γ`, where `γ = (1 2 … n)` and
    /// `π` is read as the permutation cycling each block upwards.
    pub fn kreweras(&self) -> Result<Partition> {
        LatticeKind::Noncrossing.check(self)?;
        let n = self.n();
        let mut prev = vec![0usize; n];
        for block in self.blocks() {
            for (k, &i) in block.iter().enumerate() {
                prev[i] = block[(k + block.len() - 1) % block.len()];
            }
        }
        let mut labels = vec![usize::MAX; n];
        let mut next_label = 0;
        for start in 0..n {
            if labels[start] != usize::MAX {
                continue;
            }
            let mut i = start;
            while labels[i] == usize::MAX {
                labels[i] = next_label;
                i = prev[(i + 1) % n];
            }
            next_label += 1;
        }
        Ok(Self::canonical(&labels))
    }

    /// Restriction to a set of points, relabelled to `0..points.len()`.
    pub fn restrict(&self, points: &[usize]) -> Partition {
        let labels: Vec<u8> = points.iter().map(|&i| self.labels[i]).collect();
        Self::canonical(&labels)
    }
}

/// Merges the classes of `labels` that `other` connects.
fn merge_classes(labels: &mut [u8], other: &[u8]) {
    loop {
        let mut changed = false;
        for i in 0..labels.len() {
            for j in i + 1..labels.len() {
                if other[i] == other[j] && labels[i] != labels[j] {
                    let (keep, drop) = (labels[i].min(labels[j]), labels[i].max(labels[j]));
                    labels.iter_mut().filter(|l| **l == drop).for_each(|l| *l = keep);
                    changed = true;
                }
            }
        }
        if !changed {
            return;
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for block in self.blocks() {
            f.write_str("{")?;
            for (k, i) in block.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", i + 1)?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

impl core::str::FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse::parse_partition(s)
    }
}
