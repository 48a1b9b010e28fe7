//! Numerical verification of Hermite-Hadamard-type inequalities for m-convex
//! and (alpha, m)-convex functions via Riemann-Liouville fractional
//! integrals.
//!
//! The crate computes left- and right-sided Riemann-Liouville integrals with
//! singularity-absorbing substitutions, certifies convexity-class hypotheses
//! on grids, and checks every inequality and integral identity against
//! independently computed sides. A CLI (`fracineq`) exposes single checks,
//! parameter sweeps, seeded counterexample fuzzing, and a closed-form
//! proof-fact suite.
//!
//! Modules follow the pipeline:
//!
//! - [`expr`]: expression parsing, symbolic differentiation, evaluation
//! - [`quad`]: adaptive Gauss-Legendre panel engine
//! - [`specfun`]: Gamma, Beta, incomplete Beta
//! - [`fracint`]: fractional integrals and moment integrals (two routes)
//! - [`convexity`]: hypothesis certification with witnesses
//! - [`theorems`]: one checker per inequality/identity
//! - [`cli`]: command front-end, reproducible fuzz/sweep harnesses

pub mod cli;
pub mod convexity;
pub mod expr;
pub mod fracint;
pub mod quad;
pub mod rng;
pub mod specfun;
pub mod theorems;

use quad::QuadError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(#[from] expr::ParseError),
    #[error("evaluation error: {0}")]
    Eval(#[from] expr::EvalError),
    #[error("differentiation error: {0}")]
    Diff(#[from] expr::DiffError),
    #[error("domain error: {0}")]
    Domain(#[from] specfun::DomainError),
    #[error("quadrature error: {0}")]
    Quad(QuadError),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

// Integrand evaluation failures inside the panel engine surface as plain
// evaluation errors; only genuine quadrature conditions stay under Quad.
impl From<QuadError> for Error {
    fn from(e: QuadError) -> Error {
        match e {
            QuadError::Eval(ev) => Error::Eval(ev),
            other => Error::Quad(other),
        }
    }
}
