use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::classical::*;
use super::*;
use crate::algebra::{int, rational, Matrix, Poly, Rational};
use crate::models::{ClassicalSpec, MatrixModel};

type M = Matrix<Poly>;

fn spec(order: usize) -> ClassicalSpec {
    let u: Vec<Rational> = [0, 1, 0, 3, 0, 15, 0, 105].iter().map(|&x| int(x)).collect();
    let v: Vec<Rational> = (1..=8).map(|k| rational(k as i64 + 1, 2)).collect();
    ClassicalSpec::new(vec![(String::from("u"), u), (String::from("v"), v)], order).unwrap()
}

fn model() -> MatrixModel {
    MatrixModel::new(spec(8), 2, vec![]).unwrap()
}

fn c(x: i64) -> Poly {
    Poly::constant(int(x))
}

// a small zoo of non-commuting random matrices
fn args(n: usize) -> Vec<M> {
    let (u, v) = (Poly::var(0), Poly::var(1));
    let zoo = [
        [u.clone(), c(1), c(0), v.clone()],
        [c(2), v.clone(), u.clone(), c(-1)],
        [v.clone() + &c(1), c(0), c(1), u.clone()],
        [u.clone(), u.clone(), c(-1), c(3)],
        [c(1), c(2), v.clone(), u.clone() + &v],
    ];
    (0..n)
        .map(|k| {
            let e = &zoo[k % zoo.len()];
            Matrix::from_rows(vec![vec![e[0].clone(), e[1].clone()], vec![e[2].clone(), e[3].clone()]]).unwrap()
        })
        .collect()
}

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn psi(m: &MatrixModel, x: &M) -> M {
    m.expect(Level::Inner, x).unwrap()
}

fn phi(m: &MatrixModel, x: &M) -> M {
    m.expect(Level::Outer, x).unwrap()
}

fn prod(m: &MatrixModel, xs: &[&M]) -> M {
    m.product(xs.iter().copied())
}

fn c2(m: &MatrixModel, level: Level, x: &M, y: &M) -> M {
    let e = |a: &M| m.expect(level, a).unwrap();
    m.sub(&e(&m.mul(x, y)), &m.mul(&e(x), &e(y)))
}

#[test]
fn partitioned_moment_examples() {
    let m = model();
    let e = Engine::free(&m);
    let x = args(3);
    assert_eq!(e.phi_partitioned(&p("{1,2}"), &x[..2], Level::Inner).unwrap(), psi(&m, &m.mul(&x[0], &x[1])));
    let nested = psi(&m, &prod(&m, &[&x[0], &psi(&m, &x[1]), &x[2]]));
    assert_eq!(e.phi_partitioned(&p("{1,3}{2}"), &x, Level::Inner).unwrap(), nested);
    let terminal = psi(&m, &m.mul(&x[0], &psi(&m, &m.mul(&x[1], &x[2]))));
    assert_eq!(e.phi_partitioned(&p("{1}{2,3}"), &x, Level::Inner).unwrap(), terminal);
    assert_eq!(e.phi_partitioned(&Partition::discrete(0), &[], Level::Inner).unwrap(), m.one());
}

#[test]
fn rejects_bad_input() {
    let m = model();
    let e = Engine::free(&m);
    let x = args(4);
    assert!(matches!(e.phi_partitioned(&p("{1,3}{2,4}"), &x, Level::Inner), Err(Error::Crossing(_))));
    assert!(matches!(e.phi_partitioned(&p("{1,2}"), &x, Level::Inner), Err(Error::Dimension { .. })));
    assert!(matches!(e.nested_moment(&p("{1,2,3,4}"), &p("{1,2}{3,4}"), &x), Err(Error::Order { .. })));
    assert!(Engine::classical(&m).is_err());
}

fn orders<C, F>(ctx: &C, r: Reduction<C::Elem>, eval: &F, out: &mut Vec<C::Elem>)
where
    C: ProbabilityContext,
    F: Fn(&[usize], &[C::Elem]) -> C::Elem,
{
    if r.is_done() {
        out.push(r.finish(ctx));
        return;
    }
    for span in r.candidates() {
        let mut next = r.clone();
        let value = eval(r.points(span.clone()), r.args(span.clone()));
        next.extract(ctx, span, value);
        orders(ctx, next, eval, out);
    }
}

#[test]
fn extraction_order_is_irrelevant() {
    let m = model();
    let e = Engine::free(&m);
    for n in 1..=4 {
        let x = args(n);
        for pi in enumerate(n, LatticeKind::Noncrossing, false).unwrap() {
            let want = e.phi_partitioned(&pi, &x, Level::Inner).unwrap();
            let mut got = Vec::new();
            orders(&m, Reduction::new(&pi, x.clone()), &|_, b| psi(&m, &m.product(b)), &mut got);
            assert!(got.iter().all(|g| *g == want), "ψ_π for {pi}");

            for sigma in enumerate(n, LatticeKind::Noncrossing, false).unwrap() {
                if !pi.refines(&sigma).unwrap() {
                    continue;
                }
                let want = e.nested_moment(&pi, &sigma, &x).unwrap();
                let eval =
                    |pts: &[usize], b: &[M]| phi(&m, &e.phi_partitioned(&pi.restrict(pts), b, Level::Inner).unwrap());
                let mut got = Vec::new();
                orders(&m, Reduction::new(&sigma, x.clone()), &eval, &mut got);
                assert!(got.iter().all(|g| *g == want), "φ_σ∘ψ_π for {pi} ≤ {sigma}");
            }
        }
    }
}

#[test]
fn cumulant_examples() {
    let m = model();
    let e = Engine::free(&m).with_mode(EvalMode::CrossCheck);
    let x = args(3);
    assert_eq!(e.free_cumulant(&p("{1}"), &x[..1], Level::Inner).unwrap(), psi(&m, &x[0]));
    assert_eq!(e.free_cumulant(&p("{1}"), &x[..1], Level::Outer).unwrap(), phi(&m, &x[0]));
    for level in [Level::Inner, Level::Outer] {
        assert_eq!(e.free_cumulant(&p("{1,2}"), &x[..2], level).unwrap(), c2(&m, level, &x[0], &x[1]));
    }
    let folded = [x[0].clone(), m.mul(&psi(&m, &x[1]), &x[2])];
    assert_eq!(
        e.free_cumulant(&p("{1,3}{2}"), &x, Level::Inner).unwrap(),
        c2(&m, Level::Inner, &folded[0], &folded[1])
    );
}

#[test]
fn recursion_agrees_with_moebius_inversion() {
    let m = model();
    let e = Engine::free(&m).with_mode(EvalMode::CrossCheck);
    for n in 1..=4 {
        let x = args(n);
        let nc = enumerate(n, LatticeKind::Noncrossing, false).unwrap();
        for pi in &nc {
            e.free_cumulant(pi, &x, Level::Inner).unwrap();
            e.free_cumulant(pi, &x, Level::Outer).unwrap();
            for sigma in nc.iter().filter(|s| pi.refines(s).unwrap()) {
                e.nested_semicumulant(pi, sigma, &x).unwrap();
                e.nested_cumulant(pi, sigma, &x).unwrap();
            }
        }
    }
}

#[test]
fn partial_cumulant_endpoints() {
    let m = model();
    let e = Engine::free(&m);
    let x = args(4);
    for sigma in enumerate(4, LatticeKind::Noncrossing, false).unwrap() {
        let zero = Partition::discrete(4);
        assert_eq!(e.partial_cumulant(&zero, &sigma, &x, Level::Inner), e.free_cumulant(&sigma, &x, Level::Inner));
        assert_eq!(e.partial_cumulant(&sigma, &sigma, &x, Level::Inner), e.phi_partitioned(&sigma, &x, Level::Inner));
    }
    let products = [m.mul(&x[0], &x[1]), m.mul(&x[2], &x[3])];
    assert_eq!(
        e.partial_cumulant(&p("{1,2}{3,4}"), &Partition::full(4), &x, Level::Outer).unwrap(),
        c2(&m, Level::Outer, &products[0], &products[1])
    );
}

#[test]
fn nested_examples_with_eight_arguments() {
    let m = model();
    let e = Engine::free(&m).with_mode(EvalMode::CrossCheck);
    let x = args(8);
    let pi = p("{1,2,7,8}{3,4}{5,6}");
    let sigma = p("{1,2,7,8}{3,4,5,6}");

    let want = psi(
        &m,
        &prod(&m, &[&x[0], &x[1], &psi(&m, &m.mul(&x[2], &x[3])), &psi(&m, &m.mul(&x[4], &x[5])), &x[6], &x[7]]),
    );
    assert_eq!(e.phi_partitioned(&pi, &x, Level::Inner).unwrap(), want);

    let middle = phi(&m, &m.mul(&psi(&m, &m.mul(&x[2], &x[3])), &psi(&m, &m.mul(&x[4], &x[5]))));
    let want = phi(&m, &psi(&m, &prod(&m, &[&x[0], &x[1], &middle, &x[6], &x[7]])));
    assert_eq!(e.nested_moment(&pi, &sigma, &x).unwrap(), want);

    let c4 = |a: &[M]| e.free_cumulant(&Partition::full(4), a, Level::Inner).unwrap();
    let (k34, k56) = (c2(&m, Level::Inner, &x[2], &x[3]), c2(&m, Level::Inner, &x[4], &x[5]));
    let middle = phi(&m, &m.mul(&k34, &k56));
    let want = phi(&m, &c4(&[x[0].clone(), x[1].clone(), m.mul(&middle, &x[6]), x[7].clone()]));
    assert_eq!(e.nested_semicumulant(&pi, &sigma, &x).unwrap(), want);

    let middle = c2(&m, Level::Outer, &k34, &k56);
    let want = phi(&m, &c4(&[x[0].clone(), x[1].clone(), m.mul(&middle, &x[6]), x[7].clone()]));
    assert_eq!(e.nested_cumulant(&pi, &sigma, &x).unwrap(), want);
}

#[test]
fn nested_cumulant_not_expressible_by_inner_cumulants() {
    let m = model();
    let e = Engine::free(&m).with_mode(EvalMode::CrossCheck);
    let x = args(3);
    let shifted = m.mul(&m.sub(&psi(&m, &x[1]), &phi(&m, &x[1])), &x[2]);
    let want = phi(&m, &c2(&m, Level::Inner, &x[0], &shifted));
    assert_eq!(e.nested_cumulant(&p("{1,3}{2}"), &Partition::full(3), &x).unwrap(), want);
}

#[test]
fn nested_trivial_cases() {
    let m = model();
    let e = Engine::free(&m);
    let x = args(3);
    let full = Partition::full(3);
    assert_eq!(e.nested_moment(&full, &full, &x).unwrap(), phi(&m, &m.product(&x)));
    assert_eq!(e.nested_moment(&p("{1}"), &p("{1}"), &x[..1]).unwrap(), phi(&m, &x[0]));
    let zero = Partition::discrete(3);
    let psis: Vec<M> = x.iter().map(|a| psi(&m, a)).collect();
    for sigma in enumerate(3, LatticeKind::Noncrossing, false).unwrap() {
        assert_eq!(e.nested_semicumulant(&zero, &sigma, &x), e.phi_partitioned(&sigma, &psis, Level::Outer));
    }
    assert_eq!(
        e.nested_semicumulant(&p("{1,2}"), &p("{1,2}"), &x[..2]).unwrap(),
        phi(&m, &c2(&m, Level::Inner, &x[0], &x[1]))
    );
    assert_eq!(e.nested_cumulant(&full, &full, &x), e.nested_semicumulant(&full, &full, &x));
}

#[test]
fn coefficients_are_absorbed() {
    let m = model();
    let x = args(2);
    let b: Vec<M> = [1, 2, 3].iter().map(|&k| Matrix::scalar(c(k), 2)).collect();
    let absorbed = absorb_coefficients(&m, &b, &x).unwrap();
    assert_eq!(absorbed[0], m.mul(&b[0], &x[0]));
    assert_eq!(absorbed[1], prod(&m, &[&b[1], &x[1], &b[2]]));
    assert!(absorb_coefficients(&m, &b[..2], &x).is_err());
}

fn classical_args() -> Vec<Poly> {
    let (u, v) = (Poly::var(0), Poly::var(1));
    vec![u.clone() + &v, &u * &v, v.pow(2) - &u, u.clone() + &c(2)]
}

#[test]
fn classical_examples() {
    let s = spec(8);
    let x = classical_args();
    let ex = |q: &Poly| s.expect(q).unwrap();
    assert_eq!(classical_kappa(&s, &p("{1}"), &x[..1]).unwrap(), ex(&x[0]));
    let want = ex(&(&x[0] * &x[1])) - ex(&x[0]) * ex(&x[1]);
    assert_eq!(classical_kappa(&s, &p("{1,2}"), &x[..2]).unwrap(), want);
    let u = Poly::var(0);
    assert_eq!(classical_kappa(&s, &p("{1,2}"), &[u.clone(), u]).unwrap(), int(1));
    assert_eq!(classical_m(&s, &p("{1,3}{2}"), &x[..3]).unwrap(), ex(&(&x[0] * &x[2])) * ex(&x[1]));
}

#[test]
fn classical_cumulants_factor_over_blocks() {
    let s = spec(8);
    let x = classical_args();
    for pi in enumerate(4, LatticeKind::Full, false).unwrap() {
        let product: Rational = pi
            .blocks()
            .iter()
            .map(|b| {
                let a: Vec<Poly> = b.iter().map(|&i| x[i].clone()).collect();
                classical_kappa(&s, &Partition::full(b.len()), &a).unwrap()
            })
            .product();
        assert_eq!(classical_kappa(&s, &pi, &x).unwrap(), product, "{pi}");
    }
}

#[test]
fn total_covariance() {
    let s = spec(8);
    let x = classical_args();
    let full = Partition::full(2);
    let zero = Partition::discrete(2);
    let total = classical_kappa(&s, &full, &x[..2]).unwrap();
    let a = classical_nested_kappa(&s, &full, &full, &x[..2], &["u"]).unwrap();
    let b = classical_nested_kappa(&s, &full, &zero, &x[..2], &["u"]).unwrap();
    assert_eq!(total, a.clone() + b.clone());
    let cond = classical_kappa_conditional(&s, &full, &x[..2], &["u"]).unwrap();
    assert_eq!(a, s.expect(&cond).unwrap());
    let keep = s.conditioned_on(&["u"]).unwrap();
    let ce: Vec<Poly> = x[..2].iter().map(|q| keep.expect(Level::Inner, q).unwrap()).collect();
    assert_eq!(b, classical_kappa(&s, &full, &ce).unwrap());
}

#[test]
fn classical_nested_closed_form() {
    let s = spec(8);
    let x = classical_args();
    let lattice = enumerate(4, LatticeKind::Full, false).unwrap();
    for pi in &lattice {
        for sigma in lattice.iter().filter(|q| pi.refines(q).unwrap()) {
            assert_eq!(
                classical_nested_kappa(&s, sigma, pi, &x, &["v"]),
                classical_nested_kappa_closed(&s, sigma, pi, &x, &["v"]),
                "{pi} ≤ {sigma}"
            );
        }
    }
}
