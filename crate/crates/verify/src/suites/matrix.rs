use std::collections::BTreeMap;

use nccumulant::algebra::{Matrix, Poly};
use nccumulant::engine::{Engine, EvalMode, Reduction};
use nccumulant::models::{
    ClassicalSpec, FactorizationModel, Level, MatrixModel, NcPoly, PointAlgebra, ProbabilityContext, ScalarFreeSpec,
    TensorModel,
};
use nccumulant::partition::interval;
use nccumulant::{Error, LatticeKind, Partition, Rational};

use super::Setup;
use crate::data::{self, nums, rationals, FamilyEntry, VariableEntry};
use crate::random::Draw;
use crate::report::{Drawn, Params, Tally};

type M = Matrix<Poly>;

const NC: LatticeKind = LatticeKind::Noncrossing;
const LEVELS: [(Level, &str); 2] = [(Level::Outer, "φ"), (Level::Inner, "ψ")];

pub(super) fn variables(setup: &Setup<'_>, draw: &mut Draw) -> Vec<VariableEntry> {
    match setup.spec {
        Some(s) if !s.variables.is_empty() => s.variables.clone(),
        _ => ["u", "v", "w"]
            .iter()
            .map(|&name| VariableEntry { name: name.into(), moments: nums(&draw.sequence(setup.params.max_order)) })
            .collect(),
    }
}

pub(super) fn families(setup: &Setup<'_>, draw: &mut Draw, names: &[&str]) -> Vec<FamilyEntry> {
    match setup.spec {
        Some(s) if !s.families.is_empty() => s.families.clone(),
        _ => names
            .iter()
            .map(|&name| FamilyEntry { name: name.into(), cumulants: nums(&draw.sequence(setup.params.max_order)) })
            .collect(),
    }
}

pub(super) fn classical_spec(params: &Params, drawn: &Drawn) -> Result<ClassicalSpec, Error> {
    ClassicalSpec::new(
        drawn.variables.iter().map(|v| (v.name.clone(), rationals(&v.moments))).collect(),
        params.max_order,
    )
}

pub(super) fn free_spec(params: &Params, drawn: &Drawn) -> Result<ScalarFreeSpec, Error> {
    ScalarFreeSpec::new(
        drawn.families.iter().map(|f| (f.name.clone(), rationals(&f.cumulants))).collect(),
        params.max_order,
    )
}

/// Variables plus `n` random `d×d` matrices with affine entries.
pub fn draw_arguments(setup: &Setup<'_>, draw: &mut Draw) -> Result<Drawn, Error> {
    let variables = variables(setup, draw);
    let matrices =
        (0..setup.params.n).map(|_| data::matrix_data(&draw.poly_matrix(setup.params.dim, variables.len()))).collect();
    Ok(Drawn { variables, matrices, ..Drawn::default() })
}

fn matrix_model(params: &Params, drawn: &Drawn) -> Result<MatrixModel, Error> {
    let args = drawn.matrices.iter().map(data::matrix).collect::<Result<Vec<_>, _>>()?;
    MatrixModel::new(classical_spec(params, drawn)?, params.dim, args)
}

fn sum<'a, C: ProbabilityContext>(ctx: &C, items: impl IntoIterator<Item = &'a C::Elem>) -> C::Elem
where
    C::Elem: 'a,
{
    items.into_iter().fold(ctx.zero(), |acc, x| ctx.add(&acc, x))
}

fn comparable(lattice: &[Partition]) -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for a in lattice {
        for b in lattice {
            if a.refines(b).unwrap_or(false) {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

pub fn moment_cumulant(params: &Params, drawn: &Drawn, tally: &mut Tally) -> Result<(), Error> {
    let m = matrix_model(params, drawn)?;
    let e = Engine::free(&m);
    for k in 1..=params.n {
        let x = &m.generators()[..k];
        let nc = e.lattice(k)?;
        for (level, name) in LEVELS {
            let mut cumulants = BTreeMap::new();
            for pi in nc.iter() {
                cumulants.insert(pi.clone(), e.free_cumulant(pi, x, level)?);
            }
            for sigma in nc.iter() {
                tally.check(&format!("moment-cumulant-{name}"), &[sigma], || {
                    let below = interval(&Partition::discrete(k), sigma, NC)?;
                    Ok((e.phi_partitioned(sigma, x, level)?, sum(&m, below.iter().map(|p| &cumulants[p]))))
                })?;
            }
        }
    }
    Ok(())
}

pub fn free_brillinger(params: &Params, drawn: &Drawn, tally: &mut Tally) -> Result<(), Error> {
    let m = matrix_model(params, drawn)?;
    let e = Engine::free(&m);
    for k in 1..=params.n {
        let x = &m.generators()[..k];
        let nc = e.lattice(k)?;
        let full = Partition::full(k);
        let pairs = comparable(&nc);
        let mut semi = BTreeMap::new();
        let mut nested = BTreeMap::new();
        for (pi, sigma) in &pairs {
            semi.insert((pi.clone(), sigma.clone()), e.nested_semicumulant(pi, sigma, x)?);
            nested.insert((pi.clone(), sigma.clone()), e.nested_cumulant(pi, sigma, x)?);
        }
        tally.check("brillinger", &[&full], || {
            let right = sum(&m, nc.iter().map(|s| &nested[&(s.clone(), full.clone())]));
            Ok((e.free_cumulant(&full, x, Level::Outer)?, right))
        })?;
        for sigma in nc.iter() {
            tally.check("generalized-moment-cumulant", &[sigma], || {
                let below = interval(&Partition::discrete(k), sigma, NC)?;
                let right = sum(&m, below.iter().map(|p| &semi[&(p.clone(), sigma.clone())]));
                Ok((e.phi_partitioned(sigma, x, Level::Outer)?, right))
            })?;
        }
        for (pi, sigma) in &pairs {
            tally.check("nested-moebius-consistency", &[pi, sigma], || {
                let between = interval(pi, sigma, NC)?;
                let right = sum(&m, between.iter().map(|r| &nested[&(pi.clone(), r.clone())]));
                Ok((semi[&(pi.clone(), sigma.clone())].clone(), right))
            })?;
        }
    }
    Ok(())
}

fn block_products<C: ProbabilityContext>(ctx: &C, rho: &Partition, x: &[C::Elem]) -> Vec<C::Elem> {
    rho.blocks().iter().map(|b| ctx.product(b.iter().map(|&i| &x[i]))).collect()
}

pub fn partial_cumulants(params: &Params, drawn: &Drawn, tally: &mut Tally) -> Result<(), Error> {
    let m = matrix_model(params, drawn)?;
    let e = Engine::free(&m);
    for k in 1..=params.n {
        let x = &m.generators()[..k];
        let nc = e.lattice(k)?;
        let pairs = comparable(&nc);
        for (level, name) in LEVELS {
            let mut cumulants = BTreeMap::new();
            for tau in nc.iter() {
                cumulants.insert(tau.clone(), e.free_cumulant(tau, x, level)?);
            }
            for (rho, sigma) in &pairs {
                tally.check(&format!("join-formula-{name}"), &[rho, sigma], || {
                    let mut right = m.zero();
                    for tau in nc.iter() {
                        if tau.join(rho, NC)? == *sigma {
                            right = m.add(&right, &cumulants[tau]);
                        }
                    }
                    Ok((e.partial_cumulant(rho, sigma, x, level)?, right))
                })?;
                if rho.is_interval_partition() {
                    tally.check(&format!("cumulant-of-products-{name}"), &[rho, sigma], || {
                        let products = block_products(&m, rho, x);
                        Ok((
                            e.partial_cumulant(rho, sigma, x, level)?,
                            e.free_cumulant(&sigma.quotient(rho)?, &products, level)?,
                        ))
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn parse(s: &str) -> Partition {
    s.parse().expect("literal partition")
}

pub fn examples(params: &Params, drawn: &Drawn, tally: &mut Tally) -> Result<(), Error> {
    if params.n != 8 {
        return Err(Error::Invalid("the examples use exactly eight arguments (n = 8)".into()));
    }
    let m = matrix_model(params, drawn)?;
    let e = Engine::free(&m);
    let x = m.generators();
    let psi = |a: &M| m.expect(Level::Inner, a);
    let phi = |a: &M| m.expect(Level::Outer, a);
    let c2 = |level: Level, a: &M, b: &M| -> Result<M, Error> {
        let ab = m.expect(level, &m.mul(a, b))?;
        Ok(m.sub(&ab, &m.mul(&m.expect(level, a)?, &m.expect(level, b)?)))
    };
    let c4 = |a: &[M]| -> Result<M, Error> {
        let full = Partition::full(4);
        Engine::free(&m).with_mode(EvalMode::Moebius).free_cumulant(&full, a, Level::Inner)
    };

    let pi = parse("{1,2,7,8}{3,4}{5,6}");
    let sigma = parse("{1,2,7,8}{3,4,5,6}");
    tally.check("example-2-psi", &[&pi], || {
        let want =
            psi(&m.product([&x[0], &x[1], &psi(&m.mul(&x[2], &x[3]))?, &psi(&m.mul(&x[4], &x[5]))?, &x[6], &x[7]]))?;
        Ok((e.phi_partitioned(&pi, x, Level::Inner)?, want))
    })?;
    tally.check("example-2-nested-moment", &[&pi, &sigma], || {
        let middle = phi(&m.mul(&psi(&m.mul(&x[2], &x[3]))?, &psi(&m.mul(&x[4], &x[5]))?))?;
        let want = phi(&psi(&m.product([&x[0], &x[1], &middle, &x[6], &x[7]]))?)?;
        Ok((e.nested_moment(&pi, &sigma, x)?, want))
    })?;
    tally.check("example-2-semicumulant", &[&pi, &sigma], || {
        let middle = phi(&m.mul(&c2(Level::Inner, &x[2], &x[3])?, &c2(Level::Inner, &x[4], &x[5])?))?;
        let want = phi(&c4(&[x[0].clone(), x[1].clone(), m.mul(&middle, &x[6]), x[7].clone()])?)?;
        Ok((e.nested_semicumulant(&pi, &sigma, x)?, want))
    })?;
    tally.check("example-2-nested-cumulant", &[&pi, &sigma], || {
        let middle = c2(Level::Outer, &c2(Level::Inner, &x[2], &x[3])?, &c2(Level::Inner, &x[4], &x[5])?)?;
        let want = phi(&c4(&[x[0].clone(), x[1].clone(), m.mul(&middle, &x[6]), x[7].clone()])?)?;
        Ok((e.nested_cumulant(&pi, &sigma, x)?, want))
    })?;

    let pi3 = parse("{1,3}{2}");
    let full3 = Partition::full(3);
    tally.check("example-3", &[&pi3, &full3], || {
        let shifted = m.mul(&m.sub(&psi(&x[1])?, &phi(&x[1])?), &x[2]);
        let want = phi(&c2(Level::Inner, &x[0], &shifted)?)?;
        Ok((e.nested_cumulant(&pi3, &full3, &x[..3])?, want))
    })?;

    // interval ρ: nested cumulants are outer cumulants of the inner block cumulants
    let x4 = &x[..4];
    let nc4 = e.lattice(4)?;
    for (rho, sigma) in comparable(&nc4).iter().filter(|(r, _)| r.is_interval_partition()) {
        tally.check("example-1", &[rho, sigma], || {
            let inner = rho
                .blocks()
                .iter()
                .map(|b| {
                    let args: Vec<M> = b.iter().map(|&i| x4[i].clone()).collect();
                    e.free_cumulant(&Partition::full(b.len()), &args, Level::Inner)
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok((e.nested_cumulant(rho, sigma, x4)?, e.free_cumulant(&sigma.quotient(rho)?, &inner, Level::Outer)?))
        })?;
    }
    Ok(())
}

/// Values of a reduction over every order of interval-block extraction.
pub fn all_orders<C, F>(ctx: &C, r: Reduction<C::Elem>, eval: &F, out: &mut Vec<C::Elem>) -> Result<(), Error>
where
    C: ProbabilityContext,
    F: Fn(&[usize], &[C::Elem]) -> Result<C::Elem, Error>,
{
    if r.is_done() {
        let v = r.finish(ctx);
        if !out.contains(&v) {
            out.push(v);
        }
        return Ok(());
    }
    for span in r.candidates() {
        let value = eval(r.points(span.clone()), r.args(span.clone()))?;
        let mut next = r.clone();
        next.extract(ctx, span, value);
        all_orders(ctx, next, eval, out)?;
    }
    Ok(())
}

pub fn confluence(params: &Params, drawn: &Drawn, tally: &mut Tally) -> Result<(), Error> {
    let m = matrix_model(params, drawn)?;
    let rec = Engine::free(&m);
    let moeb = Engine::free(&m).with_mode(EvalMode::Moebius);
    for k in 1..=params.n {
        let x = &m.generators()[..k];
        let nc = rec.lattice(k)?;
        for pi in nc.iter() {
            tally.check("extraction-order-psi", &[pi], || {
                let mut got = Vec::new();
                all_orders(
                    &m,
                    Reduction::new(pi, x.to_vec()),
                    &|_, b| m.expect(Level::Inner, &m.product(b)),
                    &mut got,
                )?;
                Ok((got, vec![rec.phi_partitioned(pi, x, Level::Inner)?]))
            })?;
            for (level, name) in LEVELS {
                tally.check(&format!("cumulant-recursion-{name}"), &[pi], || {
                    Ok((rec.free_cumulant(pi, x, level)?, moeb.free_cumulant(pi, x, level)?))
                })?;
            }
        }
        for (pi, sigma) in comparable(&nc) {
            tally.check("extraction-order-nested", &[&pi, &sigma], || {
                let eval = |pts: &[usize], b: &[M]| {
                    m.expect(Level::Outer, &rec.phi_partitioned(&pi.restrict(pts), b, Level::Inner)?)
                };
                let mut got = Vec::new();
                all_orders(&m, Reduction::new(&sigma, x.to_vec()), &eval, &mut got)?;
                Ok((got, vec![rec.nested_moment(&pi, &sigma, x)?]))
            })?;
            tally.check("semicumulant-recursion", &[&pi, &sigma], || {
                Ok((rec.nested_semicumulant(&pi, &sigma, x)?, moeb.nested_semicumulant(&pi, &sigma, x)?))
            })?;
            tally.check("nested-cumulant-recursion", &[&pi, &sigma], || {
                Ok((rec.nested_cumulant(&pi, &sigma, x)?, moeb.nested_cumulant(&pi, &sigma, x)?))
            })?;
        }
    }
    Ok(())
}

/// `n` random elements for each of the matrix, factorization and tensor
/// models, with coefficient matrices and point functions.
pub fn draw_model_laws(setup: &Setup<'_>, draw: &mut Draw) -> Result<Drawn, Error> {
    let (n, dim) = (setup.params.n, setup.params.dim);
    let variables = variables(setup, draw);
    let families = families(setup, draw, &["x"]);
    let matrices = (0..n).map(|_| data::matrix_data(&draw.poly_matrix(dim, variables.len()))).collect();
    let coefficients = (0..2 * n).map(|_| data::scalar_matrix_data(&draw.matrix(dim))).collect();
    let words = (0..n).map(|_| nums(&draw.sequence(3))).collect();
    let points = (0..n).map(|_| nums(&draw.sequence(dim))).collect();
    let weights = nums(&draw.weights(dim));
    Ok(Drawn { variables, families, matrices, coefficients, words, points, weights, ..Drawn::default() })
}

pub fn model_laws(params: &Params, drawn: &Drawn, tally: &mut Tally) -> Result<(), Error> {
    let m = matrix_model(params, drawn)?;
    let none: &[&Partition] = &[];
    tally.check("matrix-unital", none, || {
        Ok(((m.psi(&m.one())?, m.phi(&m.one())?), (Matrix::identity(params.dim), Rational::from_integer(1.into()))))
    })?;
    let b: Vec<Matrix<Rational>> = drawn.coefficients.iter().map(data::scalar_matrix).collect::<Result<_, _>>()?;
    if b.len() < 2 * m.generators().len() {
        return Err(Error::Invalid("model-laws needs two coefficient matrices per element".into()));
    }
    for (j, x) in m.generators().iter().enumerate() {
        let (b1, b2) = (&b[2 * j], &b[2 * j + 1]);
        tally.check(&format!("matrix-tower-{j}"), none, || Ok((m.phi(&m.expect(Level::Inner, x)?)?, m.phi(x)?)))?;
        tally.check(&format!("matrix-bimodule-{j}"), none, || {
            let sandwiched = m.product([&m.embed(b1), x, &m.embed(b2)]);
            Ok((m.psi(&sandwiched)?, b1.mul(&m.psi(x)?)?.mul(b2)?))
        })?;
        tally.check(&format!("matrix-centered-{j}"), none, || {
            let (c_in, c_out) = (m.centered(Level::Inner, x)?, m.centered(Level::Outer, x)?);
            Ok((
                (m.psi(&c_in)?.is_zero(), m.phi(&c_out)?, m.centered(Level::Outer, &c_out)?),
                (true, Rational::from_integer(0.into()), c_out.clone()),
            ))
        })?;
    }

    let f = FactorizationModel::new(free_spec(params, drawn)?, params.dim)?;
    let g = f.generator(0);
    for (j, coeffs) in drawn.words.iter().enumerate() {
        let y = coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, &g), &f.scale(&c.0, &f.one())));
        let (b1, b2) = (f.b(b[2 * j].clone()), f.b(b[2 * j + 1].clone()));
        let z = f.product([&y, &b1, &y]);
        tally.check(&format!("factorization-tower-{j}"), none, || {
            Ok((f.expect(Level::Outer, &f.expect(Level::Inner, &z)?)?, f.expect(Level::Outer, &z)?))
        })?;
        tally.check(&format!("factorization-bimodule-{j}"), none, || {
            let left = f.expect(Level::Inner, &f.product([&b2, &z, &b1]))?;
            Ok((left, f.product([&b2, &f.expect(Level::Inner, &z)?, &b1])))
        })?;
    }

    let t = TensorModel::new(free_spec(params, drawn)?, PointAlgebra::new(rationals(&drawn.weights))?);
    for (j, (coeffs, pts)) in drawn.words.iter().zip(&drawn.points).enumerate() {
        let z = t.simple(&NcPoly::univariate(0, &rationals(coeffs)), &rationals(pts))?;
        let zz = t.mul(&z, &z);
        tally.check(&format!("tensor-tower-{j}"), none, || {
            Ok((t.expect(Level::Outer, &t.expect(Level::Inner, &zz)?)?, t.expect(Level::Outer, &zz)?))
        })?;
    }
    Ok(())
}
