//! Partitioned moments, free and partial cumulants, and nested cumulants
//! over any [`ProbabilityContext`].
//!
//! An [`Engine`] over [`LatticeKind::Noncrossing`] evaluates the free
//! functionals by extracting interval blocks. Over [`LatticeKind::Full`]
//! it needs a commutative context and multiplies block values directly,
//! which gives the classical moments and cumulants on `Π_n`.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::error::{Error, Result};
use crate::models::{Level, ProbabilityContext};
use crate::partition::{enumerate, interval, LatticeKind, MoebiusCache, Partition};

pub mod classical;
mod reduction;

pub use reduction::Reduction;

/// Which form of a functional to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EvalMode {
    /// Multiplicative recursion over blocks.
    #[default]
    Recursive,
    /// The defining Möbius sum.
    Moebius,
    /// Both, failing with [`Error::CrossCheck`] if they differ.
    CrossCheck,
}

/// Evaluator for the cumulant functionals of one context.
#[derive(Debug)]
pub struct Engine<'c, C> {
    ctx: &'c C,
    kind: LatticeKind,
    mode: EvalMode,
    moebius: MoebiusCache,
    lattices: RefCell<BTreeMap<usize, Rc<Vec<Partition>>>>,
}

impl<'c, C: ProbabilityContext> Engine<'c, C> {
    /// Free functionals on `NC_n`.
    pub fn free(ctx: &'c C) -> Self {
        Self::with_kind(ctx, LatticeKind::Noncrossing)
    }

    /// Classical functionals on `Π_n`; the context must be commutative.
    pub fn classical(ctx: &'c C) -> Result<Self> {
        if !ctx.is_commutative() {
            return Err(Error::Invalid("classical cumulants need a commutative algebra".into()));
        }
        Ok(Self::with_kind(ctx, LatticeKind::Full))
    }

    fn with_kind(ctx: &'c C, kind: LatticeKind) -> Self {
        Engine { ctx, kind, mode: EvalMode::default(), moebius: MoebiusCache::new(), lattices: RefCell::default() }
    }

    pub fn with_mode(mut self, mode: EvalMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn context(&self) -> &'c C {
        self.ctx
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn mode(&self) -> EvalMode {
        self.mode
    }

    pub fn moebius(&self) -> &MoebiusCache {
        &self.moebius
    }

    /// Every partition of `n` points in this engine's lattice.
    pub fn lattice(&self, n: usize) -> Result<Rc<Vec<Partition>>> {
        if let Some(l) = self.lattices.borrow().get(&n) {
            return Ok(l.clone());
        }
        let l = Rc::new(enumerate(n, self.kind, false)?);
        self.lattices.borrow_mut().insert(n, l.clone());
        Ok(l)
    }

    /// `φ_π` (`Outer`) or `ψ_π` (`Inner`).
    pub fn phi_partitioned(&self, pi: &Partition, args: &[C::Elem], level: Level) -> Result<C::Elem> {
        self.check_args(pi, args)?;
        self.moment(pi, args, level)
    }

    /// `C_π = Σ_{σ≤π} φ_σ μ(σ, π)`.
    pub fn free_cumulant(&self, pi: &Partition, args: &[C::Elem], level: Level) -> Result<C::Elem> {
        self.check_args(pi, args)?;
        self.by_mode(
            "cumulant",
            || self.cumulant(pi, args, level),
            || self.moebius_sum(&Partition::discrete(pi.n()), pi, |s| self.moment(s, args, level)),
        )
    }

    /// `C_{ρ,σ} = Σ_{ρ≤π≤σ} φ_π μ(π, σ)`.
    pub fn partial_cumulant(
        &self,
        rho: &Partition,
        sigma: &Partition,
        args: &[C::Elem],
        level: Level,
    ) -> Result<C::Elem> {
        self.check_pair(rho, sigma, args)?;
        self.moebius_sum(rho, sigma, |p| self.moment(p, args, level))
    }

    /// `φ_σ∘ψ_π` for `π ≤ σ`.
    pub fn nested_moment(&self, pi: &Partition, sigma: &Partition, args: &[C::Elem]) -> Result<C::Elem> {
        self.check_pair(pi, sigma, args)?;
        self.nested(pi, sigma, args)
    }

    /// `φ_σ∘C^ψ_π = Σ_{τ≤π} φ_σ∘ψ_τ μ(τ, π)`.
    pub fn nested_semicumulant(&self, pi: &Partition, sigma: &Partition, args: &[C::Elem]) -> Result<C::Elem> {
        self.check_pair(pi, sigma, args)?;
        self.by_mode(
            "semicumulant",
            || self.semicumulant(pi, sigma, args),
            || self.semicumulant_by_moebius(pi, sigma, args),
        )
    }

    /// `C^φ_σ∘C^ψ_π = Σ_{π≤ρ≤σ} φ_ρ∘C^ψ_π μ(ρ, σ)`.
    pub fn nested_cumulant(&self, pi: &Partition, sigma: &Partition, args: &[C::Elem]) -> Result<C::Elem> {
        self.check_pair(pi, sigma, args)?;
        self.by_mode(
            "nested cumulant",
            || self.nested_cumulant_rec(pi, sigma, args),
            || self.moebius_sum(pi, sigma, |rho| self.semicumulant_by_moebius(pi, rho, args)),
        )
    }

    fn check_args(&self, p: &Partition, args: &[C::Elem]) -> Result<()> {
        self.kind.check(p)?;
        if args.len() != p.n() {
            return Err(Error::Dimension { left: args.len(), right: p.n() });
        }
        args.iter().try_for_each(|a| self.ctx.validate(a))
    }

    fn check_pair(&self, lower: &Partition, upper: &Partition, args: &[C::Elem]) -> Result<()> {
        self.check_args(upper, args)?;
        self.kind.check(lower)?;
        lower.ensure_refines(upper)
    }

    fn by_mode(
        &self,
        what: &'static str,
        recursive: impl FnOnce() -> Result<C::Elem>,
        moebius: impl FnOnce() -> Result<C::Elem>,
    ) -> Result<C::Elem> {
        match self.mode {
            EvalMode::Recursive => recursive(),
            EvalMode::Moebius => moebius(),
            EvalMode::CrossCheck => {
                let a = recursive()?;
                if a == moebius()? {
                    Ok(a)
                } else {
                    Err(Error::CrossCheck(what))
                }
            }
        }
    }

    /// `Σ_{lower≤p≤upper} f(p) μ(p, upper)`.
    fn moebius_sum(
        &self,
        lower: &Partition,
        upper: &Partition,
        mut f: impl FnMut(&Partition) -> Result<C::Elem>,
    ) -> Result<C::Elem> {
        let mut total = self.ctx.zero();
        for p in interval(lower, upper, self.kind)? {
            let mu = self.moebius.value(&p, upper, self.kind)?;
            if mu != 0 {
                total = self.ctx.add(&total, &self.ctx.scale(&crate::algebra::int(mu), &f(&p)?));
            }
        }
        Ok(total)
    }

    /// Folds a value for every block of `p` into the arguments and returns
    /// the final value. `f` receives the original indices of the block and
    /// its current arguments.
    fn reduce(
        &self,
        p: &Partition,
        args: &[C::Elem],
        mut f: impl FnMut(&[usize], &[C::Elem]) -> Result<C::Elem>,
    ) -> Result<C::Elem> {
        match self.kind {
            LatticeKind::Noncrossing => {
                let mut r = Reduction::new(p, args.to_vec());
                while let Some(span) = r.first() {
                    let value = f(r.points(span.clone()), r.args(span.clone()))?;
                    r.extract(self.ctx, span, value);
                }
                Ok(r.finish(self.ctx))
            }
            LatticeKind::Full => {
                let mut total = self.ctx.one();
                for block in p.blocks() {
                    let block_args: Vec<C::Elem> = block.iter().map(|&i| args[i].clone()).collect();
                    total = self.ctx.mul(&total, &f(&block, &block_args)?);
                }
                Ok(total)
            }
        }
    }

    fn moment(&self, p: &Partition, args: &[C::Elem], level: Level) -> Result<C::Elem> {
        self.reduce(p, args, |_, block| self.ctx.expect(level, &self.ctx.product(block)))
    }

    fn cumulant(&self, p: &Partition, args: &[C::Elem], level: Level) -> Result<C::Elem> {
        self.reduce(p, args, |_, block| self.full_cumulant(block, level))
    }

    // C_n = E(X_1⋯X_n) − Σ_{π<1̂} C_π
    fn full_cumulant(&self, args: &[C::Elem], level: Level) -> Result<C::Elem> {
        let mut total = self.ctx.expect(level, &self.ctx.product(args))?;
        for p in self.lattice(args.len())?.iter().filter(|p| !p.is_full()) {
            total = self.ctx.sub(&total, &self.cumulant(p, args, level)?);
        }
        Ok(total)
    }

    fn nested(&self, pi: &Partition, sigma: &Partition, args: &[C::Elem]) -> Result<C::Elem> {
        self.reduce(sigma, args, |points, block| {
            let inner = self.moment(&pi.restrict(points), block, Level::Inner)?;
            self.ctx.expect(Level::Outer, &inner)
        })
    }

    fn semicumulant(&self, pi: &Partition, sigma: &Partition, args: &[C::Elem]) -> Result<C::Elem> {
        self.reduce(sigma, args, |points, block| {
            let inner = self.cumulant(&pi.restrict(points), block, Level::Inner)?;
            self.ctx.expect(Level::Outer, &inner)
        })
    }

    fn semicumulant_by_moebius(&self, pi: &Partition, sigma: &Partition, args: &[C::Elem]) -> Result<C::Elem> {
        self.moebius_sum(&Partition::discrete(pi.n()), pi, |tau| self.nested(tau, sigma, args))
    }

    fn nested_cumulant_rec(&self, pi: &Partition, sigma: &Partition, args: &[C::Elem]) -> Result<C::Elem> {
        self.reduce(sigma, args, |points, block| self.full_nested_cumulant(&pi.restrict(points), block))
    }

    // C^φ_n∘C^ψ_π = φ∘C^ψ_π − Σ_{π≤ρ<1̂} C^φ_ρ∘C^ψ_π
    fn full_nested_cumulant(&self, pi: &Partition, args: &[C::Elem]) -> Result<C::Elem> {
        let full = Partition::full(args.len());
        let mut total = self.semicumulant(pi, &full, args)?;
        for rho in interval(pi, &full, self.kind)?.iter().filter(|r| !r.is_full()) {
            total = self.ctx.sub(&total, &self.nested_cumulant_rec(pi, rho, args)?);
        }
        Ok(total)
    }
}

/// Rewrites `b_0 X_1 b_1 ⋯ X_n b_n` as arguments `(b_0 X_1, b_1 X_2, …,
/// b_{n−1} X_n b_n)`.
pub fn absorb_coefficients<C: ProbabilityContext>(
    ctx: &C,
    coeffs: &[C::Elem],
    args: &[C::Elem],
) -> Result<Vec<C::Elem>> {
    if coeffs.len() != args.len() + 1 {
        return Err(Error::Dimension { left: coeffs.len(), right: args.len() + 1 });
    }
    let mut out: Vec<C::Elem> = coeffs.iter().zip(args).map(|(b, x)| ctx.mul(b, x)).collect();
    match out.last_mut() {
        Some(last) => *last = ctx.mul(last, &coeffs[args.len()]),
        None => return Ok(Vec::new()),
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
