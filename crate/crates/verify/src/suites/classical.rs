use nccumulant::algebra::{int, Poly};
use nccumulant::engine::classical::{classical_kappa, classical_nested_kappa, classical_nested_kappa_closed};
use nccumulant::engine::Engine;
use nccumulant::models::Level;
use nccumulant::partition::enumerate;
use nccumulant::{Error, LatticeKind, Partition, Rational};

use super::matrix::{classical_spec, variables};
use super::Setup;
use crate::data;
use crate::random::Draw;
use crate::report::{Drawn, Params, Tally};

/// Variables, `n` polynomials of degree at most two, and the first
/// variable as the conditioning σ-field.
pub fn draw(setup: &Setup<'_>, draw: &mut Draw) -> Result<Drawn, Error> {
    let variables = variables(setup, draw);
    let polys = (0..setup.params.n).map(|_| data::poly_data(&draw.quadratic(variables.len()))).collect();
    let keep = variables.iter().take(1).map(|v| v.name.clone()).collect();
    Ok(Drawn { variables, polys, keep, ..Drawn::default() })
}

pub fn verify(params: &Params, drawn: &Drawn, tally: &mut Tally) -> Result<(), Error> {
    let spec = classical_spec(params, drawn)?;
    let polys: Vec<Poly> = drawn.polys.iter().map(data::poly).collect();
    let keep: Vec<&str> = drawn.keep.iter().map(String::as_str).collect();
    let ctx = spec.conditioned_on(&keep)?;
    let engine = Engine::classical(&ctx)?;
    for k in 1..=params.n.min(polys.len()) {
        let x = &polys[..k];
        let lattice = enumerate(k, LatticeKind::Full, false)?;
        let full = Partition::full(k);
        tally.check("classical-brillinger", &[&full], || {
            let mut right = Rational::from_integer(0.into());
            for pi in &lattice {
                right += classical_nested_kappa(&spec, &full, pi, x, &keep)?;
            }
            Ok((classical_kappa(&spec, &full, x)?, right))
        })?;
        for pi in &lattice {
            tally.check("blockwise", &[pi], || {
                let mut right = Rational::from_integer(1.into());
                for b in pi.blocks() {
                    let args: Vec<Poly> = b.iter().map(|&i| x[i].clone()).collect();
                    right *= classical_kappa(&spec, &Partition::full(b.len()), &args)?;
                }
                Ok((classical_kappa(&spec, pi, x)?, right))
            })?;
            for sigma in lattice.iter().filter(|s| pi.refines(s).unwrap_or(false)) {
                tally.check("nested-closed-form", &[pi, sigma], || {
                    Ok((
                        classical_nested_kappa(&spec, sigma, pi, x, &keep)?,
                        classical_nested_kappa_closed(&spec, sigma, pi, x, &keep)?,
                    ))
                })?;
                tally.check("cumulants-of-products", &[pi, sigma], || {
                    let products: Vec<Poly> = pi
                        .blocks()
                        .iter()
                        .map(|b| b.iter().fold(Poly::constant(int(1)), |acc, &i| acc * &x[i]))
                        .collect();
                    let left = engine.partial_cumulant(pi, sigma, x, Level::Outer)?;
                    Ok((left, engine.free_cumulant(&sigma.quotient(pi)?, &products, Level::Outer)?))
                })?;
            }
        }
    }
    Ok(())
}
