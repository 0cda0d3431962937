//! Identity suites. Each suite draws its model data from a seed, then
//! evaluates every instance of its identities at the requested bound.

use std::time::Instant;

use nccumulant::Error;

use crate::data::SpecFile;
use crate::random::Draw;
use crate::report::{CheckReport, Drawn, Params, Status, Tally};

mod classical;
mod freeness;
mod lattice;
mod matrix;
mod tensor;

/// What a suite may read while drawing its data.
#[derive(Debug, Clone, Copy)]
pub struct Setup<'a> {
    pub params: &'a Params,
    pub spec: Option<&'a SpecFile>,
}

type DrawFn = fn(&Setup<'_>, &mut Draw) -> Result<Drawn, Error>;
type VerifyFn = fn(&Params, &Drawn, &mut Tally) -> Result<(), Error>;

pub struct Suite {
    pub id: &'static str,
    pub summary: &'static str,
    /// Bound used by `check-all`.
    pub default_n: usize,
    /// Largest bound accepted.
    pub max_n: usize,
    /// Whether the suite draws random model data.
    pub randomized: bool,
    draw: DrawFn,
    verify: VerifyFn,
}

fn nothing(_: &Setup<'_>, _: &mut Draw) -> Result<Drawn, Error> {
    Ok(Drawn::default())
}

pub static SUITES: &[Suite] = &[
    Suite {
        id: "lattice-counts",
        summary: "|NC_k| = Catalan(k) for k ≤ n and |Π_k| = Bell(k) for k ≤ n − 2",
        default_n: 8,
        max_n: 10,
        randomized: false,
        draw: nothing,
        verify: lattice::counts,
    },
    Suite {
        id: "lattice-laws",
        summary: "meet/join laws in Π_n and NC_n; [ρ,σ] ≅ [0̂, σ/ρ] in Π_(n−1)",
        default_n: 5,
        max_n: 6,
        randomized: false,
        draw: nothing,
        verify: lattice::laws,
    },
    Suite {
        id: "moebius",
        summary: "μ(0̂,1̂) in NC_k (k ≤ n) and Π_k (k ≤ n − 1); Σ_ρ μ(ρ,σ) = δ on NC_(n−2) and Π_(n−3)",
        default_n: 7,
        max_n: 8,
        randomized: false,
        draw: nothing,
        verify: lattice::moebius,
    },
    Suite {
        id: "kreweras",
        summary: "size identity, maximality and order reversal on NC_n; interval anti-isomorphism on NC_(n−1)",
        default_n: 6,
        max_n: 7,
        randomized: false,
        draw: nothing,
        verify: lattice::kreweras,
    },
    Suite {
        id: "model-laws",
        summary: "unitality, tower property and bimodularity of ψ, φ on 50 random elements per model",
        default_n: 50,
        max_n: 500,
        randomized: true,
        draw: matrix::draw_model_laws,
        verify: matrix::model_laws,
    },
    Suite {
        id: "moment-cumulant",
        summary: "φ_σ = Σ_{π≤σ} C_π for σ ∈ NC_k, k ≤ n, at both levels of the matrix model",
        default_n: 5,
        max_n: 6,
        randomized: true,
        draw: matrix::draw_arguments,
        verify: matrix::moment_cumulant,
    },
    Suite {
        id: "free-brillinger",
        summary: "C_k^φ = Σ_σ C_k^φ∘C_σ^ψ, generalized moment-cumulant formula and nested Möbius consistency, k ≤ n",
        default_n: 4,
        max_n: 5,
        randomized: true,
        draw: matrix::draw_arguments,
        verify: matrix::free_brillinger,
    },
    Suite {
        id: "partial-cumulants",
        summary: "C_{ρ,σ} = Σ_{τ∨ρ=σ} C_τ for ρ ≤ σ in NC_k, k ≤ n; interval ρ gives cumulants of products",
        default_n: 5,
        max_n: 6,
        randomized: true,
        draw: matrix::draw_arguments,
        verify: matrix::partial_cumulants,
    },
    Suite {
        id: "examples",
        summary: "closed forms of the nested functionals for the eight-point and three-point examples",
        default_n: 8,
        max_n: 8,
        randomized: true,
        draw: matrix::draw_arguments,
        verify: matrix::examples,
    },
    Suite {
        id: "confluence",
        summary: "extraction-order independence and recursion/Möbius agreement, k ≤ n",
        default_n: 4,
        max_n: 5,
        randomized: true,
        draw: matrix::draw_arguments,
        verify: matrix::confluence,
    },
    Suite {
        id: "classical-brillinger",
        summary: "κ_k = Σ_π κ_k∘κ^F_π, nested closed form, partial-cumulant rearrangement on Π_k, k ≤ n",
        default_n: 4,
        max_n: 5,
        randomized: true,
        draw: classical::draw,
        verify: classical::verify,
    },
    Suite {
        id: "freeness",
        summary: "mixed cumulants and alternating centred moments vanish; product-cumulant formula, k ≤ n",
        default_n: 4,
        max_n: 5,
        randomized: true,
        draw: freeness::draw_scalar,
        verify: freeness::scalar,
    },
    Suite {
        id: "freeness-characterization",
        summary: "factorization model: centred alternating words, C^ψ = C^φ for scalar coefficients, C_k^φ∘C_π^ψ = C^φ_{π∪̃K(π)}, k ≤ n",
        default_n: 4,
        max_n: 5,
        randomized: true,
        draw: freeness::draw_factorization,
        verify: freeness::factorization,
    },
    Suite {
        id: "tensor",
        summary: "nested functionals of simple tensors a⊗b factor for all π ≤ σ in NC_k, k ≤ n",
        default_n: 4,
        max_n: 5,
        randomized: true,
        draw: tensor::draw,
        verify: tensor::verify,
    },
];

pub fn find(id: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.id == id)
}

impl Suite {
    pub fn default_params(&self) -> Params {
        Params { n: self.default_n, dim: crate::data::DEFAULT_DIMENSION, max_order: crate::data::DEFAULT_MAX_ORDER }
    }

    /// Draws the model data for `seed` and checks every instance.
    pub fn run(&self, params: &Params, seed: u64, spec: Option<&SpecFile>) -> CheckReport {
        let start = Instant::now();
        let drawn = self.check_params(params).and_then(|()| (self.draw)(&Setup { params, spec }, &mut Draw::new(seed)));
        match drawn {
            Ok(drawn) => self.evaluate(params, seed, drawn, Tally::new(), start),
            Err(e) => self.report(params, seed, Drawn::default(), Tally::new(), Err(e), start),
        }
    }

    /// Evaluates a report's recorded data again; only the witness instance
    /// if it has one.
    pub fn replay(&self, report: &CheckReport) -> CheckReport {
        let tally = report.witness.clone().map_or_else(Tally::new, Tally::replaying);
        self.evaluate(&report.params, report.seed, report.drawn.clone(), tally, Instant::now())
    }

    fn check_params(&self, params: &Params) -> Result<(), Error> {
        if params.n > self.max_n {
            return Err(Error::Capacity { what: format!("bound n for {}", self.id), limit: self.max_n });
        }
        if params.dim == 0 {
            return Err(Error::Invalid("dimension must be positive".into()));
        }
        Ok(())
    }

    fn evaluate(&self, params: &Params, seed: u64, drawn: Drawn, mut tally: Tally, start: Instant) -> CheckReport {
        let outcome = self.check_params(params).and_then(|()| (self.verify)(params, &drawn, &mut tally));
        self.report(params, seed, drawn, tally, outcome, start)
    }

    fn report(
        &self,
        params: &Params,
        seed: u64,
        drawn: Drawn,
        tally: Tally,
        outcome: Result<(), Error>,
        start: Instant,
    ) -> CheckReport {
        let (status, error) = match (&outcome, &tally.failure) {
            (Err(e), _) => (Status::Error, Some(e.to_string())),
            (Ok(()), Some(_)) => (Status::Fail, None),
            (Ok(()), None) => (Status::Pass, None),
        };
        CheckReport {
            id: self.id.into(),
            params: params.clone(),
            seed,
            status,
            instances: tally.instances,
            witness: tally.failure,
            error,
            drawn,
            wall_time_ms: start.elapsed().as_millis() as u64,
        }
    }
}

/// Runs every suite at its default bound, in parallel.
pub fn run_all(seed: u64, dim: usize, max_order: usize, spec: Option<&SpecFile>) -> Vec<CheckReport> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = SUITES
            .iter()
            .map(|suite| {
                let params = Params { n: suite.default_n, dim, max_order };
                scope.spawn(move || suite.run(&params, seed, spec))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    })
}
