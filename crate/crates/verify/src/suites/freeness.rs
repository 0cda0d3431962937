use nccumulant::algebra::Matrix;
use nccumulant::engine::Engine;
use nccumulant::models::{AltPoly, FactorizationModel, Level, NcPoly, ProbabilityContext};
use nccumulant::{Error, Partition, Rational};

use super::matrix::{families, free_spec};
use super::Setup;
use crate::data::{self, nums, rationals};
use crate::random::Draw;
use crate::report::{Drawn, Params, Tally};

const ALTERNATING: usize = 6;

/// Two free families and affine elements `c₀ + c₁g` of each, two per
/// position (one per family).
pub fn draw_scalar(setup: &Setup<'_>, draw: &mut Draw) -> Result<Drawn, Error> {
    let families = families(setup, draw, &["a", "b"]);
    let positions = setup.params.n.max(ALTERNATING);
    let words = (0..2 * positions).map(|_| nums(&draw.sequence(2))).collect();
    Ok(Drawn { families, words, ..Drawn::default() })
}

pub fn scalar(params: &Params, drawn: &Drawn, tally: &mut Tally) -> Result<(), Error> {
    let s = free_spec(params, drawn)?;
    if s.names().len() < 2 {
        return Err(Error::Invalid("the freeness suite needs two families".into()));
    }
    let positions = drawn.words.len() / 2;
    let elem = |i: usize, f: usize| NcPoly::univariate(f as u8, &rationals(&drawn.words[2 * i + f]));
    let e = Engine::free(&s);
    let zero = NcPoly::constant(Rational::from_integer(0.into()));

    for k in 2..=params.n.min(positions) {
        for mask in 1..(1u32 << k) - 1 {
            let fams: Vec<usize> = (0..k).map(|i| (mask >> i) as usize & 1).collect();
            let pattern = Partition::from_labels(&fams)?;
            tally.check("mixed-cumulant", &[&pattern], || {
                let x: Vec<NcPoly> = fams.iter().enumerate().map(|(i, &f)| elem(i, f)).collect();
                Ok((e.free_cumulant(&Partition::full(k), &x, Level::Outer)?, zero.clone()))
            })?;
        }
    }

    for len in 1..=ALTERNATING.min(positions).min(s.max_order()) {
        for start in 0..2 {
            let fams: Vec<usize> = (0..len).map(|i| (start + i) % 2).collect();
            let pattern = Partition::from_labels(&fams)?;
            tally.check("alternating-centered", &[&pattern], || {
                let y = fams.iter().enumerate().map(|(i, &f)| s.centered(Level::Outer, &elem(i, f))).collect::<Result<
                    Vec<_>,
                    _,
                >>(
                )?;
                Ok((s.expect(Level::Outer, &s.product(&y))?, zero.clone()))
            })?;
        }
    }

    for k in 1..=params.n.min(positions) {
        let full = Partition::full(k);
        tally.check("product-formula", &[&full], || {
            let products: Vec<NcPoly> = (0..k).map(|i| elem(i, 0).mul(&elem(i, 1))).collect();
            let interleaved: Vec<NcPoly> = (0..k).flat_map(|i| [elem(i, 0), elem(i, 1)]).collect();
            let mut right = zero.clone();
            for pi in e.lattice(k)?.iter() {
                let woven = pi.interweave(&pi.kreweras()?)?;
                right = right.add(&e.free_cumulant(&woven, &interleaved, Level::Outer)?);
            }
            Ok((e.free_cumulant(&full, &products, Level::Outer)?, right))
        })?;
    }
    Ok(())
}

/// One generator family, affine elements `α_i + β_i x`, arbitrary
/// coefficients `b_0..b_n` and trace-free coefficients `c_0..c_n`.
pub fn draw_factorization(setup: &Setup<'_>, draw: &mut Draw) -> Result<Drawn, Error> {
    let (n, dim) = (setup.params.n, setup.params.dim);
    let families = families(setup, draw, &["x"]);
    let words = (0..n).map(|_| nums(&draw.sequence(2))).collect();
    let mut coefficients: Vec<_> = (0..=n).map(|_| data::scalar_matrix_data(&draw.matrix(dim))).collect();
    coefficients.extend((0..=n).map(|_| data::scalar_matrix_data(&draw.centered_matrix(dim))));
    Ok(Drawn { families, words, coefficients, ..Drawn::default() })
}

pub fn factorization(params: &Params, drawn: &Drawn, tally: &mut Tally) -> Result<(), Error> {
    let f = FactorizationModel::new(free_spec(params, drawn)?, params.dim)?;
    let n = params.n.min(drawn.words.len());
    let coeffs: Vec<Matrix<Rational>> = drawn.coefficients.iter().map(data::scalar_matrix).collect::<Result<_, _>>()?;
    if coeffs.len() != 2 * (drawn.words.len() + 1) {
        return Err(Error::Invalid("expected 2(n+1) coefficient matrices".into()));
    }
    let (b, c) = coeffs.split_at(coeffs.len() / 2);
    let b: Vec<AltPoly> = b.iter().map(|m| f.b(m.clone())).collect();
    let c: Vec<AltPoly> = c.iter().map(|m| f.b(m.clone())).collect();
    let g = f.generator(0);
    let y: Vec<AltPoly> = drawn
        .words
        .iter()
        .map(|w| {
            let w = rationals(w);
            f.add(&f.scale(&w[0], &f.one()), &f.scale(&w[1], &g))
        })
        .collect();
    let e = Engine::free(&f);

    for len in 1..=n {
        let marker = Partition::full(len);
        let centered = y[..len].iter().map(|x| f.centered(Level::Outer, x)).collect::<Result<Vec<_>, _>>()?;
        tally.check("alternating-centered", &[&marker], || {
            let mut word = c[0].clone();
            for (i, x) in centered.iter().enumerate() {
                word = f.product([&word, x, &c[i + 1]]);
            }
            Ok((f.expect(Level::Outer, &word)?, f.zero()))
        })?;
        tally.check("alternating-centered-bare", &[&marker], || {
            let mut word = centered[0].clone();
            for (i, x) in centered.iter().enumerate().skip(1) {
                word = f.product([&word, &c[i], x]);
            }
            Ok((f.expect(Level::Outer, &word)?, f.zero()))
        })?;
    }

    for k in 1..=n {
        let full = Partition::full(k);
        let args: Vec<AltPoly> = (0..k).map(|i| if i + 1 < k { f.mul(&g, &b[i + 1]) } else { g.clone() }).collect();
        let inner = e.free_cumulant(&full, &args, Level::Inner)?;
        tally.check("factorization-rule", &[&full], || {
            let mut scalar = f.free().cumulant(0, k)?;
            for bi in &b[1..k] {
                scalar *= f.phi_b(&bi.as_b().expect("coefficient"));
            }
            Ok((inner.clone(), f.scale(&scalar, &f.one())))
        })?;
        // with coefficients from C the two levels agree
        let scalars: Vec<AltPoly> = (0..k)
            .map(|i| if i + 1 < k { f.scale(&f.phi_b(&b[i + 1].as_b().expect("coefficient")), &g) } else { g.clone() })
            .collect();
        tally.check("inner-equals-outer", &[&full], || {
            Ok((e.free_cumulant(&full, &scalars, Level::Inner)?, e.free_cumulant(&full, &scalars, Level::Outer)?))
        })?;

        let with_b: Vec<AltPoly> = (0..k).map(|i| f.mul(&y[i], &b[i + 1])).collect();
        let interleaved: Vec<AltPoly> = (0..k).flat_map(|i| [y[i].clone(), b[i + 1].clone()]).collect();
        for pi in e.lattice(k)?.iter() {
            tally.check("interweaved-kreweras", &[pi], || {
                let woven = pi.interweave(&pi.kreweras()?)?;
                Ok((e.nested_cumulant(pi, &full, &with_b)?, e.free_cumulant(&woven, &interleaved, Level::Outer)?))
            })?;
        }
    }
    Ok(())
}
