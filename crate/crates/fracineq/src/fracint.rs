//! Riemann-Liouville fractional integrals and the unit-interval moment
//! integrals the inequality checkers are built on.
//!
//! The RL kernel singularity is absorbed exactly by the power substitution
//! t = x - (x-a) s^(1/alpha), which turns the left-sided integral into
//! ((x-a)^alpha / (alpha Gamma(alpha))) int_0^1 f(x - (x-a) s^(1/alpha)) ds
//! with a bounded integrand; the right-sided operator uses the mirrored
//! substitution. The t^(alpha-1) moment weight is absorbed the same way by
//! t = s^(1/alpha), giving a second, independent route to the same
//! quantities for cross-checking.

use crate::expr::{EvalError, FunctionSpec};
use crate::specfun;
use crate::{quad, Error};

/// Fractional order and interval endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracParams {
    pub alpha: f64,
    pub a: f64,
    pub b: f64,
}

impl FracParams {
    /// `alpha > 0` and `a <= b`, all finite. `a == b` is allowed as the
    /// degenerate case where every integral is 0.
    pub fn new(alpha: f64, a: f64, b: f64) -> Result<FracParams, Error> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::Precondition(format!(
                "fractional order alpha = {alpha} must be finite and > 0"
            )));
        }
        if !(a.is_finite() && b.is_finite() && a <= b) {
            return Err(Error::Precondition(format!(
                "interval [{a}, {b}] must be finite with a <= b"
            )));
        }
        Ok(FracParams { alpha, a, b })
    }
}

/// Tolerances, subdivision limits, and grid densities for every numeric
/// procedure in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSettings {
    /// Absolute quadrature tolerance.
    pub abs_tol: f64,
    /// Panel-split budget per integral.
    pub max_subdivisions: usize,
    /// Gauss-Legendre points per panel.
    pub panel_order: usize,
    /// Points per axis for convexity-certification grids.
    pub cert_grid_n: usize,
    /// Defect tolerance for hypothesis certification.
    pub cert_tol: f64,
    /// Verdict tolerance for the theorem checkers, one order above abs_tol.
    pub check_tol: f64,
}

impl Default for QuadSettings {
    fn default() -> Self {
        QuadSettings {
            abs_tol: 1e-10,
            max_subdivisions: 2000,
            panel_order: 15,
            cert_grid_n: 64,
            cert_tol: 1e-9,
            check_tol: 1e-8,
        }
    }
}

impl QuadSettings {
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.abs_tol.is_finite() && self.abs_tol > 0.0) {
            return Err(Error::Precondition("abs_tol must be > 0".into()));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::Precondition("max_subdivisions must be >= 1".into()));
        }
        if self.panel_order < 2 {
            return Err(Error::Precondition("panel_order must be >= 2".into()));
        }
        if self.cert_grid_n < 2 {
            return Err(Error::Precondition("cert_grid_n must be >= 2".into()));
        }
        if !(self.cert_tol > 0.0 && self.check_tol > 0.0) {
            return Err(Error::Precondition(
                "cert_tol and check_tol must be > 0".into(),
            ));
        }
        Ok(())
    }

    fn run<F>(&self, f: F, lo: f64, hi: f64) -> Result<f64, Error>
    where
        F: Fn(f64) -> Result<f64, EvalError>,
    {
        Ok(quad::integrate(f, lo, hi, self.abs_tol, self.max_subdivisions, self.panel_order)?.value)
    }
}

/// Parameterization of the four affine images in the sum inequality's proof.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// f(ta + m(1-t)b)
    A,
    /// f((1-t)a + mtb)
    B,
    /// f(tb + m(1-t)a)
    C,
    /// f((1-t)b + mta)
    D,
}

impl Orientation {
    pub fn affine(self, t: f64, a: f64, b: f64, m: f64) -> f64 {
        match self {
            Orientation::A => t * a + m * (1.0 - t) * b,
            Orientation::B => (1.0 - t) * a + m * t * b,
            Orientation::C => t * b + m * (1.0 - t) * a,
            Orientation::D => (1.0 - t) * b + m * t * a,
        }
    }

    pub const ALL: [Orientation; 4] = [
        Orientation::A,
        Orientation::B,
        Orientation::C,
        Orientation::D,
    ];
}

/// Left-sided Riemann-Liouville integral J_{a+}^alpha f evaluated at `x`.
pub fn rl_left(
    f: &FunctionSpec,
    p: &FracParams,
    x: f64,
    s: &QuadSettings,
) -> Result<f64, Error> {
    if !(p.a <= x && x <= p.b) {
        return Err(Error::Precondition(format!(
            "evaluation point x = {x} must lie in [{}, {}]",
            p.a, p.b
        )));
    }
    let len = x - p.a;
    if len == 0.0 {
        return Ok(0.0);
    }
    let inv_alpha = 1.0 / p.alpha;
    let integral = s.run(|u| f.evaluate(x - len * u.powf(inv_alpha)), 0.0, 1.0)?;
    let scale = len.powf(p.alpha) / (p.alpha * specfun::gamma(p.alpha)?.value);
    Ok(scale * integral)
}

/// Right-sided Riemann-Liouville integral J_{b-}^alpha f evaluated at `x`.
pub fn rl_right(
    f: &FunctionSpec,
    p: &FracParams,
    x: f64,
    s: &QuadSettings,
) -> Result<f64, Error> {
    if !(p.a <= x && x <= p.b) {
        return Err(Error::Precondition(format!(
            "evaluation point x = {x} must lie in [{}, {}]",
            p.a, p.b
        )));
    }
    let len = p.b - x;
    if len == 0.0 {
        return Ok(0.0);
    }
    let inv_alpha = 1.0 / p.alpha;
    let integral = s.run(|u| f.evaluate(x + len * u.powf(inv_alpha)), 0.0, 1.0)?;
    let scale = len.powf(p.alpha) / (p.alpha * specfun::gamma(p.alpha)?.value);
    Ok(scale * integral)
}

/// int_0^1 t^(alpha-1) f(affine(t)) dt with the weight absorbed by
/// t = s^(1/alpha). Deliberately shares no code with `rl_left`/`rl_right`
/// beyond the panel engine, so the two routes can oracle each other.
pub fn t_moment(
    f: &FunctionSpec,
    a: f64,
    b: f64,
    m: f64,
    alpha: f64,
    orientation: Orientation,
    s: &QuadSettings,
) -> Result<f64, Error> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::Precondition(format!(
            "fractional order alpha = {alpha} must be finite and > 0"
        )));
    }
    let inv_alpha = 1.0 / alpha;
    let integral = s.run(
        |u| f.evaluate(orientation.affine(u.powf(inv_alpha), a, b, m)),
        0.0,
        1.0,
    )?;
    Ok(integral / alpha)
}

/// int_0^1 |(1-t)^alpha - t^alpha| g(t) dt, split exactly at the kernel's
/// zero t = 1/2.
pub fn kink_integral<G>(g: G, alpha: f64, s: &QuadSettings) -> Result<f64, Error>
where
    G: Fn(f64) -> Result<f64, EvalError>,
{
    kink_parts(&g, alpha, s, true)
}

/// Signed variant int_0^1 [(1-t)^alpha - t^alpha] g(t) dt, for the identity
/// check.
pub fn kink_integral_signed<G>(g: G, alpha: f64, s: &QuadSettings) -> Result<f64, Error>
where
    G: Fn(f64) -> Result<f64, EvalError>,
{
    kink_parts(&g, alpha, s, false)
}

fn kink_parts<G>(g: &G, alpha: f64, s: &QuadSettings, absolute: bool) -> Result<f64, Error>
where
    G: Fn(f64) -> Result<f64, EvalError>,
{
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::Precondition(format!(
            "fractional order alpha = {alpha} must be finite and > 0"
        )));
    }
    let kernel = |t: f64| (1.0 - t).powf(alpha) - t.powf(alpha);
    // On [0, 1/2] the kernel is >= 0, on [1/2, 1] it is <= 0.
    let lower = s.run(|t| Ok(kernel(t) * g(t)?), 0.0, 0.5)?;
    let upper = s.run(|t| Ok(kernel(t) * g(t)?), 0.5, 1.0)?;
    Ok(if absolute { lower - upper } else { lower + upper })
}

/// Plain adaptive integral of a parsed function, the generic route the
/// classical (alpha = 1) checks reduce to.
pub fn integral(f: &FunctionSpec, a: f64, b: f64, s: &QuadSettings) -> Result<f64, Error> {
    s.run(|t| f.evaluate(t), a, b)
}
