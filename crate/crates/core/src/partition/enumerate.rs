use alloc::vec;
use alloc::vec::Vec;

use super::{LatticeKind, Partition};
use crate::error::{Error, Result};

/// Largest `n` accepted by [`enumerate`] for `Π_n` (Bell(10) = 115975).
pub const MAX_ENUMERATE_FULL: usize = 10;
/// Largest `n` accepted by [`enumerate`] for `NC_n` (Catalan(10) = 16796).
pub const MAX_ENUMERATE_NC: usize = 10;

/// Restricted growth strings of length `n` in lexicographic order, i.e.
/// every set partition of `{0..n}` exactly once.
#[derive(Debug, Clone)]
pub struct RestrictedGrowth {
    current: Vec<u8>,
    // max of current[..=i]
    prefix_max: Vec<u8>,
    done: bool,
}

impl RestrictedGrowth {
    pub fn new(n: usize) -> Self {
        RestrictedGrowth { current: vec![0; n], prefix_max: vec![0; n], done: false }
    }

    fn advance(&mut self) {
        let n = self.current.len();
        // position 0 is always 0
        for i in (1..n).rev() {
            if self.current[i] <= self.prefix_max[i - 1] {
                self.current[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.current[i]);
                for j in i + 1..n {
                    self.current[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for RestrictedGrowth {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let item = Partition { labels: self.current.clone() };
        self.advance();
        Some(item)
    }
}

/// All partitions of `{1..n}` of the requested kind in canonical form.
/// With `interval_only`, only partitions whose blocks are intervals.
pub fn enumerate(n: usize, kind: LatticeKind, interval_only: bool) -> Result<Vec<Partition>> {
    let limit = match kind {
        LatticeKind::Full => MAX_ENUMERATE_FULL,
        LatticeKind::Noncrossing => MAX_ENUMERATE_NC,
    };
    if n > limit {
        return Err(Error::Capacity {
            what: alloc::format!("enumeration of {kind:?} partitions of {n} points"),
            limit,
        });
    }
    Ok(RestrictedGrowth::new(n).filter(|p| kind.admits(p) && (!interval_only || p.is_interval_partition())).collect())
}

pub fn catalan(n: usize) -> u64 {
    // C_{k+1} = C_k * 2(2k+1) / (k+2)
    (0..n as u64).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

pub fn bell(n: usize) -> u64 {
    // Bell triangle
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            next.push(next.last().unwrap() + x);
        }
        row = next;
    }
    row[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(enumerate(4, LatticeKind::Noncrossing, false).unwrap().len(), 14);
        assert_eq!(enumerate(4, LatticeKind::Full, false).unwrap().len(), 15);
        assert_eq!(enumerate(0, LatticeKind::Full, false).unwrap(), vec![Partition::discrete(0)]);
        assert_eq!((1..=8).map(catalan).collect::<Vec<_>>(), [1, 2, 5, 14, 42, 132, 429, 1430]);
        assert_eq!((1..=6).map(bell).collect::<Vec<_>>(), [1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn interval_partitions_of_three() {
        let got = enumerate(3, LatticeKind::Noncrossing, true).unwrap();
        let want: Vec<Partition> =
            ["{1,2,3}", "{1,2}{3}", "{1}{2,3}", "{1}{2}{3}"].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(got.len(), 4);
        for w in &want {
            assert!(got.contains(w));
        }
        // all five partitions of 3 points are noncrossing
        assert_eq!(enumerate(3, LatticeKind::Noncrossing, false).unwrap().len(), 5);
    }

    #[test]
    fn capacity() {
        assert!(matches!(enumerate(11, LatticeKind::Full, false), Err(Error::Capacity { limit: 10, .. })));
    }
}
