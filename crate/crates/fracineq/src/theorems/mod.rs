//! One checker per inequality/identity. Every checker certifies its
//! hypotheses first (failures short-circuit to `hypotheses_unmet`, since the
//! inequalities are conditional), computes both sides through independent
//! routes, and emits a structured [`CheckReport`].

mod alpha_m;
mod classical;
mod facts;
mod fractional;

pub use alpha_m::{check_cor_3_1, check_cor_3_2, check_thm_3_1, check_thm_3_2};
pub use classical::{check_hh_classical, check_thm_1_1, check_thm_1_2};
pub use facts::run_proof_fact_suite;
pub use fractional::{check_cor_2_1, check_lemma_1_1, check_thm_2_1, check_thm_2_2, check_thm_2_3};

use crate::convexity::Certificate;
use crate::expr::FunctionSpec;
use crate::fracint::{rl_left, rl_right, FracParams, QuadSettings};
use crate::quad::QuadError;
use crate::{specfun, Error};

use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TheoremId {
    #[serde(rename = "HH")]
    Hh,
    #[serde(rename = "T1_1")]
    T1_1,
    #[serde(rename = "T1_2")]
    T1_2,
    #[serde(rename = "L1_1")]
    L1_1,
    #[serde(rename = "T2_1a")]
    T2_1a,
    #[serde(rename = "T2_1b")]
    T2_1b,
    #[serde(rename = "T2_2")]
    T2_2,
    #[serde(rename = "C2_1")]
    C2_1,
    #[serde(rename = "T2_3")]
    T2_3,
    #[serde(rename = "T3_1a")]
    T3_1a,
    #[serde(rename = "T3_1b")]
    T3_1b,
    #[serde(rename = "C3_1")]
    C3_1,
    #[serde(rename = "T3_2")]
    T3_2,
    #[serde(rename = "C3_2")]
    C3_2,
    #[serde(rename = "FACTS")]
    Facts,
}

impl TheoremId {
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Hh => "HH",
            TheoremId::T1_1 => "T1_1",
            TheoremId::T1_2 => "T1_2",
            TheoremId::L1_1 => "L1_1",
            TheoremId::T2_1a => "T2_1a",
            TheoremId::T2_1b => "T2_1b",
            TheoremId::T2_2 => "T2_2",
            TheoremId::C2_1 => "C2_1",
            TheoremId::T2_3 => "T2_3",
            TheoremId::T3_1a => "T3_1a",
            TheoremId::T3_1b => "T3_1b",
            TheoremId::C3_1 => "C3_1",
            TheoremId::T3_2 => "T3_2",
            TheoremId::C3_2 => "C3_2",
            TheoremId::Facts => "FACTS",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Violated,
    HypothesesUnmet,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Violated => "violated",
            Status::HypothesesUnmet => "hypotheses_unmet",
            Status::Inconclusive => "inconclusive",
        }
    }

    /// Process exit status for the CLI contract.
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Verified => 0,
            Status::Violated => 2,
            Status::HypothesesUnmet => 3,
            Status::Inconclusive => 4,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HypothesisEntry {
    pub name: String,
    pub certificate: Certificate,
}

/// Structured verdict for one theorem instance.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub theorem_id: TheoremId,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs` for inequalities, `|lhs - rhs|` for identities.
    pub margin: f64,
    pub status: Status,
    pub hypotheses: Vec<HypothesisEntry>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub(crate) fn unmet(
        id: TheoremId,
        hypotheses: Vec<HypothesisEntry>,
        notes: Vec<String>,
    ) -> CheckReport {
        CheckReport {
            theorem_id: id,
            lhs: f64::NAN,
            rhs: f64::NAN,
            margin: f64::NAN,
            status: Status::HypothesesUnmet,
            hypotheses,
            notes,
        }
    }

    pub(crate) fn inconclusive(
        id: TheoremId,
        hypotheses: Vec<HypothesisEntry>,
        note: String,
    ) -> CheckReport {
        CheckReport {
            theorem_id: id,
            lhs: f64::NAN,
            rhs: f64::NAN,
            margin: f64::NAN,
            status: Status::Inconclusive,
            hypotheses,
            notes: vec![note],
        }
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn inequality(
        id: TheoremId,
        lhs: f64,
        rhs: f64,
        hypotheses: Vec<HypothesisEntry>,
        mut notes: Vec<String>,
        check_tol: f64,
        replay: String,
        discrepancy_candidate: bool,
    ) -> CheckReport {
        let margin = rhs - lhs;
        let status = if margin >= -check_tol {
            Status::Verified
        } else {
            Status::Violated
        };
        if status == Status::Violated {
            if discrepancy_candidate {
                notes.push("paper-discrepancy-candidate".into());
            }
            notes.push(replay);
        }
        CheckReport {
            theorem_id: id,
            lhs,
            rhs,
            margin,
            status,
            hypotheses,
            notes,
        }
    }

    pub(crate) fn identity(
        id: TheoremId,
        lhs: f64,
        rhs: f64,
        hypotheses: Vec<HypothesisEntry>,
        mut notes: Vec<String>,
        check_tol: f64,
        replay: String,
    ) -> CheckReport {
        let margin = (lhs - rhs).abs();
        let status = if margin <= check_tol {
            Status::Verified
        } else {
            Status::Violated
        };
        if status == Status::Violated {
            notes.push(replay);
        }
        CheckReport {
            theorem_id: id,
            lhs,
            rhs,
            margin,
            status,
            hypotheses,
            notes,
        }
    }
}

pub(crate) fn all_hold(hypotheses: &[HypothesisEntry]) -> bool {
    hypotheses.iter().all(|h| h.certificate.holds)
}

/// Replay command line for machine re-execution of a verdict.
pub(crate) fn replay_line(theorem: &str, f: &FunctionSpec, params: &[(&str, f64)]) -> String {
    let mut line = format!(
        "replay: fracineq check --theorem {theorem} --f \"{}\"",
        f.source_text
    );
    for (name, value) in params {
        line.push_str(&format!(" --{name} {value}"));
    }
    line
}

pub(crate) enum QuadOutcome {
    Value(f64),
    Inconclusive(String),
}

/// Absorb quadrature non-convergence into an inconclusive verdict; all other
/// errors propagate.
pub(crate) fn absorb_quad(r: Result<f64, Error>) -> Result<QuadOutcome, Error> {
    match r {
        Ok(v) => Ok(QuadOutcome::Value(v)),
        Err(Error::Quad(QuadError::NonConvergence {
            best,
            residual,
            subdivisions,
        })) => Ok(QuadOutcome::Inconclusive(format!(
            "quadrature non-convergence: best estimate {best:e}, residual {residual:e} after {subdivisions} subdivisions"
        ))),
        Err(e) => Err(e),
    }
}

macro_rules! quad_val {
    ($res:expr, $id:expr, $hyps:expr) => {
        match crate::theorems::absorb_quad($res)? {
            crate::theorems::QuadOutcome::Value(v) => v,
            crate::theorems::QuadOutcome::Inconclusive(note) => {
                return Ok(crate::theorems::CheckReport::inconclusive($id, $hyps, note))
            }
        }
    };
}
pub(crate) use quad_val;

/// Signed trapezoid defect
/// (f(a)+f(b))/2 - Gamma(alpha+1)/(2 (b-a)^alpha) [J_{a+} f(b) + J_{b-} f(a)].
pub(crate) fn trapezoid_defect(
    f: &FunctionSpec,
    a: f64,
    b: f64,
    alpha: f64,
    s: &QuadSettings,
) -> Result<f64, Error> {
    let p = FracParams::new(alpha, a, b)?;
    let jl = rl_left(f, &p, b, s)?;
    let jr = rl_right(f, &p, a, s)?;
    let g = specfun::gamma(alpha + 1.0)?.value;
    let fa = f.evaluate(a)?;
    let fb = f.evaluate(b)?;
    Ok((fa + fb) / 2.0 - g / (2.0 * (b - a).powf(alpha)) * (jl + jr))
}

/// Grid positivity certificate for the "positive function" hypotheses. The
/// tolerance admits f >= 0 with zeros (e.g. x^2 at 0).
pub(crate) fn certify_positive(
    f: &FunctionSpec,
    a: f64,
    b: f64,
    grid_n: usize,
    tol: f64,
) -> Result<Certificate, Error> {
    let xs = crate::convexity::linspace(a, b, grid_n);
    let mut worst = f64::NEG_INFINITY;
    let mut witness = None;
    for &x in &xs {
        let v = f.evaluate(x)?;
        let defect = -v;
        if defect > worst {
            worst = defect;
        }
        if witness.is_none() && defect > tol * (1.0 + v.abs()) {
            witness = Some((x, 0.0, 0.0));
        }
    }
    Ok(Certificate {
        holds: witness.is_none(),
        witness,
        max_violation: worst,
        grid_size: grid_n,
    })
}

pub(crate) fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<(), Error> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(msg()))
    }
}

pub(crate) fn require_interval(a: f64, b: f64) -> Result<(), Error> {
    require(a.is_finite() && b.is_finite() && 0.0 <= a && a < b, || {
        format!("interval must satisfy 0 <= a < b with finite endpoints, got a = {a}, b = {b}")
    })
}

pub(crate) fn require_m(m: f64) -> Result<(), Error> {
    require(m.is_finite() && 0.0 < m && m <= 1.0, || {
        format!("m = {m} must lie in (0, 1]")
    })
}

pub(crate) fn require_alpha(alpha: f64) -> Result<(), Error> {
    require(alpha.is_finite() && alpha > 0.0, || {
        format!("alpha = {alpha} must be > 0")
    })
}

pub(crate) fn require_alpha_unit(alpha: f64, name: &str) -> Result<(), Error> {
    require(alpha.is_finite() && alpha > 0.0 && alpha <= 1.0, || {
        format!("{name} = {alpha} must lie in (0, 1]")
    })
}

pub(crate) fn require_q(q: f64) -> Result<(), Error> {
    require(q.is_finite() && q >= 1.0, || format!("q = {q} must be >= 1"))
}

/// |f'|^q as an evaluable function spec (abs is never differentiated).
pub(crate) fn abs_deriv_pow_q(f: &FunctionSpec, q: f64) -> Result<FunctionSpec, Error> {
    let fp = f.differentiate()?;
    Ok(FunctionSpec::from_ast(crate::expr::pow(
        crate::expr::Ast::Abs(Box::new(fp.ast)),
        q,
    )))
}
