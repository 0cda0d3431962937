use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cell::RefCell;

use super::{LatticeKind, Partition, RestrictedGrowth};
use crate::error::Result;

/// All `ρ` with `lower ≤ ρ ≤ upper` in the chosen lattice, sorted.
///
/// Generated as lifts of the partitions of `upper/lower`'s ground set that
/// refine `upper/lower`.
pub fn interval(lower: &Partition, upper: &Partition, kind: LatticeKind) -> Result<Vec<Partition>> {
    kind.check(lower)?;
    kind.check(upper)?;
    let quotient = upper.quotient(lower)?;
    let mut out: Vec<Partition> = RestrictedGrowth::new(quotient.n())
        .filter(|tau| tau.refines_unchecked(&quotient))
        .map(|tau| lower.lift(&tau).expect("sizes agree"))
        .filter(|rho| kind.admits(rho))
        .collect();
    out.sort();
    Ok(out)
}

type Key = (LatticeKind, Partition, Partition);

/// Memoised Möbius function of `Π_n` and `NC_n`.
///
/// The table is not `Sync`; each verification task owns its own.
#[derive(Debug, Default)]
pub struct MoebiusCache {
    table: RefCell<BTreeMap<Key, i64>>,
}

impl MoebiusCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// `μ(π, σ)` in the chosen lattice.
    pub fn value(&self, lower: &Partition, upper: &Partition, kind: LatticeKind) -> Result<i64> {
        kind.check(lower)?;
        kind.check(upper)?;
        lower.ensure_refines(upper)?;
        Ok(self.cached(lower, upper, kind))
    }

    fn key(lower: &Partition, upper: &Partition, kind: LatticeKind) -> Key {
        match kind {
            // [π, σ] in Π_n is isomorphic to [0̂, σ/π]
            LatticeKind::Full => {
                let q = upper.quotient(lower).expect("checked");
                (kind, Partition::discrete(q.n()), q)
            }
            LatticeKind::Noncrossing => (kind, lower.clone(), upper.clone()),
        }
    }

    fn cached(&self, lower: &Partition, upper: &Partition, kind: LatticeKind) -> i64 {
        let key = Self::key(lower, upper, kind);
        if let Some(&v) = self.table.borrow().get(&key) {
            return v;
        }
        let (_, lo, hi) = &key;
        let v = if lo == hi {
            1
        } else {
            -interval(lo, hi, kind)
                .expect("checked")
                .iter()
                .filter(|rho| *rho != lo)
                .map(|rho| self.cached(rho, hi, kind))
                .sum::<i64>()
        };
        self.table.borrow_mut().insert(key, v);
        v
    }

    pub fn len(&self) -> usize {
        self.table.borrow().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
