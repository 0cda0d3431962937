use nccumulant::engine::Engine;
use nccumulant::models::{Level, NcPoly, PointAlgebra, ProbabilityContext, TensorModel};
use nccumulant::{Error, Rational};

use super::matrix::{families, free_spec};
use super::Setup;
use crate::data::{nums, rationals};
use crate::random::Draw;
use crate::report::{Drawn, Params, Tally};

/// One free family, `n` quadratic polynomials `a_i` in it, a state on
/// `d` points and `n` point functions `b_i`.
pub fn draw(setup: &Setup<'_>, draw: &mut Draw) -> Result<Drawn, Error> {
    let (n, dim) = (setup.params.n, setup.params.dim);
    let families = families(setup, draw, &["a"]);
    let words = (0..n).map(|_| nums(&draw.sequence(3))).collect();
    let points = (0..n).map(|_| nums(&draw.sequence(dim))).collect();
    let weights = nums(&draw.weights(dim));
    Ok(Drawn { families, words, points, weights, ..Drawn::default() })
}

fn constant(p: NcPoly) -> Result<Rational, Error> {
    p.as_constant().ok_or_else(|| Error::Invalid("expected a scalar".into()))
}

/// For simple tensors `a_i ⊗ b_i` and `π ≤ σ`:
/// `ψ_σ∘φ̃_π = φ_π(a)ψ_σ(b)`, `ψ_σ∘C^φ̃_π = C^φ_π(a)ψ_σ(b)` and
/// `C^ψ_σ∘C^φ̃_π = C^φ_π(a)C^ψ_{π,σ}(b)`.
pub fn verify(params: &Params, drawn: &Drawn, tally: &mut Tally) -> Result<(), Error> {
    let free = free_spec(params, drawn)?;
    let points = PointAlgebra::new(rationals(&drawn.weights))?;
    let t = TensorModel::new(free.clone(), points.clone());
    let a: Vec<NcPoly> = drawn.words.iter().map(|w| NcPoly::univariate(0, &rationals(w))).collect();
    let b: Vec<Vec<Rational>> = drawn.points.iter().map(|p| rationals(p)).collect();
    let z = a.iter().zip(&b).map(|(a, b)| t.simple(a, b)).collect::<Result<Vec<_>, _>>()?;
    let (ea, eb, et) = (Engine::free(&free), Engine::free(&points), Engine::free(&t));
    let scalar = |c: Rational| t.scale(&c, &t.one());

    for k in 1..=params.n.min(z.len()) {
        let (a, b, z) = (&a[..k], &b[..k], &z[..k]);
        let nc = et.lattice(k)?;
        for pi in nc.iter() {
            let phi_a = constant(ea.phi_partitioned(pi, a, Level::Outer)?)?;
            let c_a = constant(ea.free_cumulant(pi, a, Level::Outer)?)?;
            for sigma in nc.iter().filter(|s| pi.refines(s).unwrap_or(false)) {
                let psi_b = eb.phi_partitioned(sigma, b, Level::Outer)?[0].clone();
                tally.check("nested-moment", &[pi, sigma], || {
                    Ok((et.nested_moment(pi, sigma, z)?, scalar(&phi_a * &psi_b)))
                })?;
                tally.check("semicumulant", &[pi, sigma], || {
                    Ok((et.nested_semicumulant(pi, sigma, z)?, scalar(&c_a * &psi_b)))
                })?;
                tally.check("nested-cumulant", &[pi, sigma], || {
                    let partial = eb.partial_cumulant(pi, sigma, b, Level::Outer)?[0].clone();
                    Ok((et.nested_cumulant(pi, sigma, z)?, scalar(&c_a * partial)))
                })?;
            }
        }
    }
    Ok(())
}
