use std::collections::BTreeSet;

use nccumulant::partition::{enumerate, interval, MoebiusCache};
use nccumulant::{Error, LatticeKind, Partition};

use crate::report::{Drawn, Params, Tally};

const KINDS: [LatticeKind; 2] = [LatticeKind::Noncrossing, LatticeKind::Full];

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn catalan(n: usize) -> u128 {
    binomial(2 * n as u128, n as u128) / (n as u128 + 1)
}

// Bell triangle
fn bell(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for x in &row {
            next.push(next.last().unwrap() + x);
        }
        row = next;
    }
    row[0]
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

fn pairs(lattice: &[Partition]) -> impl Iterator<Item = (&Partition, &Partition)> {
    lattice.iter().flat_map(move |a| lattice.iter().filter(|b| a.refines(b).unwrap_or(false)).map(move |b| (a, b)))
}

pub fn counts(params: &Params, _: &Drawn, tally: &mut Tally) -> Result<(), Error> {
    let expected_nc = [1, 1, 2, 5, 14, 42, 132, 429, 1430];
    let expected_full = [1, 1, 2, 5, 15, 52, 203];
    for (kind, top) in [(LatticeKind::Noncrossing, params.n), (LatticeKind::Full, params.n.saturating_sub(2))] {
        for k in 1..=top {
            let all = enumerate(k, kind, false)?;
            let (identity, want, table) = match kind {
                LatticeKind::Noncrossing => ("catalan", catalan(k), expected_nc.get(k)),
                LatticeKind::Full => ("bell", bell(k), expected_full.get(k)),
            };
            let one = Partition::full(k);
            tally.check(identity, &[&one], || Ok((all.len() as u128, want)))?;
            if let Some(&t) = table {
                tally.check("table", &[&one], || Ok((all.len() as u128, t)))?;
            }
            tally.holds("distinct-and-admitted", &[&one], || {
                let unique: BTreeSet<&Partition> = all.iter().collect();
                Ok(unique.len() == all.len() && all.iter().all(|p| kind.admits(p) && p.n() == k))
            })?;
        }
    }
    Ok(())
}

pub fn moebius(params: &Params, _: &Drawn, tally: &mut Tally) -> Result<(), Error> {
    let cache = MoebiusCache::new();
    for k in 1..=params.n {
        let (zero, one) = (Partition::discrete(k), Partition::full(k));
        let sign = if k % 2 == 1 { 1 } else { -1 };
        tally.check("moebius-nc", &[&zero, &one], || {
            Ok((cache.value(&zero, &one, LatticeKind::Noncrossing)?, sign * catalan(k - 1) as i64))
        })?;
        if k < params.n {
            tally.check("moebius-full", &[&zero, &one], || {
                Ok((cache.value(&zero, &one, LatticeKind::Full)?, sign * factorial(k - 1)))
            })?;
        }
    }
    for (kind, k) in
        [(LatticeKind::Noncrossing, params.n.saturating_sub(2)), (LatticeKind::Full, params.n.saturating_sub(3))]
    {
        let lattice = enumerate(k, kind, false)?;
        for (lower, upper) in pairs(&lattice) {
            tally.check("convolution", &[lower, upper], || {
                let mut total = 0;
                for rho in interval(lower, upper, kind)? {
                    total += cache.value(&rho, upper, kind)?;
                }
                Ok((total, (lower == upper) as i64))
            })?;
        }
    }
    Ok(())
}

pub fn kreweras(params: &Params, _: &Drawn, tally: &mut Tally) -> Result<(), Error> {
    let n = params.n;
    let nc = enumerate(n, LatticeKind::Noncrossing, false)?;
    for pi in &nc {
        let k = pi.kreweras()?;
        tally.check("size", &[pi], || Ok((pi.size() + k.size(), n + 1)))?;
        tally.holds("maximal", &[pi], || {
            if !pi.interweave(&k)?.is_noncrossing() {
                return Ok(false);
            }
            for sigma in &nc {
                if pi.interweave(sigma)?.is_noncrossing() && !sigma.refines(&k)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })?;
    }
    for (pi, sigma) in pairs(&nc) {
        tally.holds("order-reversal", &[pi, sigma], || sigma.kreweras()?.refines(&pi.kreweras()?))?;
    }
    let smaller = enumerate(n.saturating_sub(1), LatticeKind::Noncrossing, false)?;
    for pi in &smaller {
        let above = interval(pi, &Partition::full(pi.n()), LatticeKind::Noncrossing)?;
        let below = interval(&Partition::discrete(pi.n()), &pi.kreweras()?, LatticeKind::Noncrossing)?;
        tally.check("anti-isomorphism", &[pi], || {
            let image: BTreeSet<Partition> = above.iter().map(|s| s.kreweras()).collect::<Result<_, _>>()?;
            Ok((image, below.iter().cloned().collect::<BTreeSet<_>>()))
        })?;
        tally.holds("anti-isomorphism-order", &[pi], || {
            for (a, b) in above.iter().flat_map(|a| above.iter().map(move |b| (a, b))) {
                if a.refines(b)? != b.kreweras()?.refines(&a.kreweras()?)? {
                    return Ok(false);
                }
            }
            Ok(above.len() == below.len())
        })?;
    }
    Ok(())
}

pub fn laws(params: &Params, _: &Drawn, tally: &mut Tally) -> Result<(), Error> {
    let n = params.n;
    for kind in KINDS {
        let lattice = enumerate(n, kind, false)?;
        for a in &lattice {
            tally.check("idempotence", &[a], || Ok(((a.join(a, kind)?, a.meet(a)?), (a.clone(), a.clone()))))?;
            for b in &lattice {
                tally.holds("meet-join", &[a, b], || {
                    let (join, meet) = (a.join(b, kind)?, a.meet(b)?);
                    Ok(kind.admits(&join)
                        && kind.admits(&meet)
                        && join == b.join(a, kind)?
                        && meet == b.meet(a)?
                        && a.meet(&join)? == *a
                        && a.join(&meet, kind)? == *a
                        && a.refines(b)? == (join == *b)
                        && a.refines(&join)?
                        && meet.refines(a)?)
                })?;
            }
        }
    }
    // least upper bound, by scanning every coarsening
    let nc = enumerate(n.min(5), LatticeKind::Noncrossing, false)?;
    for (a, b) in nc.iter().flat_map(|a| nc.iter().map(move |b| (a, b))) {
        tally.holds("nc-join-least", &[a, b], || {
            let join = a.join(b, LatticeKind::Noncrossing)?;
            for c in &nc {
                if a.refines(c)? && b.refines(c)? && !join.refines(c)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })?;
    }
    let full = enumerate(n.saturating_sub(1), LatticeKind::Full, false)?;
    for (rho, sigma) in pairs(&full) {
        tally.holds("quotient-isomorphism", &[rho, sigma], || {
            let q = sigma.quotient(rho)?;
            let upper = interval(rho, sigma, LatticeKind::Full)?;
            let lower = interval(&Partition::discrete(q.n()), &q, LatticeKind::Full)?;
            let image: BTreeSet<Partition> = upper.iter().map(|t| t.quotient(rho)).collect::<Result<_, _>>()?;
            if image != lower.iter().cloned().collect() || upper.len() != lower.len() {
                return Ok(false);
            }
            for (s, t) in upper.iter().flat_map(|s| upper.iter().map(move |t| (s, t))) {
                if s.refines(t)? != s.quotient(rho)?.refines(&t.quotient(rho)?)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })?;
    }
    Ok(())
}
