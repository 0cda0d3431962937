//! Classical moments and cumulants of polynomials in independent random
//! variables, conditioned or not on a subset of them.

use alloc::vec::Vec;

use super::Engine;
use crate::algebra::{Poly, Rational};
use crate::error::{Error, Result};
use crate::models::{ClassicalSpec, ConditionalContext, Level, ProbabilityContext};
use crate::partition::Partition;

fn scalar(p: Poly) -> Result<Rational> {
    p.as_constant().ok_or_else(|| Error::Invalid("expectation is not a constant".into()))
}

fn unconditioned(spec: &ClassicalSpec) -> Result<ConditionalContext<'_>> {
    spec.conditioned_on(&[])
}

/// `m_π = ∏_j E[∏_{i∈π_j} X_i]`.
pub fn classical_m(spec: &ClassicalSpec, pi: &Partition, polys: &[Poly]) -> Result<Rational> {
    let ctx = unconditioned(spec)?;
    scalar(Engine::classical(&ctx)?.phi_partitioned(pi, polys, Level::Outer)?)
}

/// `κ_π = Σ_{τ≤π} m_τ μ(τ, π)` on `Π_n`.
pub fn classical_kappa(spec: &ClassicalSpec, pi: &Partition, polys: &[Poly]) -> Result<Rational> {
    let ctx = unconditioned(spec)?;
    scalar(Engine::classical(&ctx)?.free_cumulant(pi, polys, Level::Outer)?)
}

/// `κ_π(· | F)` with `F` generated by the variables named in `keep`; a
/// polynomial in those variables.
pub fn classical_kappa_conditional(
    spec: &ClassicalSpec,
    pi: &Partition,
    polys: &[Poly],
    keep: &[&str],
) -> Result<Poly> {
    let ctx = spec.conditioned_on(keep)?;
    Engine::classical(&ctx)?.free_cumulant(pi, polys, Level::Inner)
}

/// `κ_σ∘κ^F_π` by its defining double Möbius sum.
pub fn classical_nested_kappa(
    spec: &ClassicalSpec,
    sigma: &Partition,
    pi: &Partition,
    polys: &[Poly],
    keep: &[&str],
) -> Result<Rational> {
    let ctx = spec.conditioned_on(keep)?;
    let engine = Engine::classical(&ctx)?.with_mode(super::EvalMode::Moebius);
    scalar(engine.nested_cumulant(pi, sigma, polys)?)
}

/// `κ_σ∘κ^F_π = κ_{σ/π}(κ^F_{|b|}(X_i : i∈b) : b∈π)`.
pub fn classical_nested_kappa_closed(
    spec: &ClassicalSpec,
    sigma: &Partition,
    pi: &Partition,
    polys: &[Poly],
    keep: &[&str],
) -> Result<Rational> {
    let ctx = spec.conditioned_on(keep)?;
    let engine = Engine::classical(&ctx)?;
    let quotient = sigma.quotient(pi)?;
    if polys.len() != pi.n() {
        return Err(Error::Dimension { left: polys.len(), right: pi.n() });
    }
    let conditional = pi
        .blocks()
        .iter()
        .map(|b| {
            let args: Vec<Poly> = b.iter().map(|&i| polys[i].clone()).collect();
            engine.free_cumulant(&Partition::full(b.len()), &args, Level::Inner)
        })
        .collect::<Result<Vec<_>>>()?;
    debug_assert!(conditional.iter().all(|q| ctx.lies_in(Level::Inner, q)));
    scalar(engine.free_cumulant(&quotient, &conditional, Level::Outer)?)
}
