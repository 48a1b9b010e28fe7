//! Numerical certification of the hypothesis classes: m-convexity,
//! (alpha, m)-convexity, and decreasing |f'|.
//!
//! Certification scans the defining inequality on a dense grid and runs one
//! local pattern-search refinement around the worst grid point before
//! declaring the class membership to hold. A "holds" verdict is grid
//! evidence; a "fails" verdict is definitive, since the returned witness is
//! re-evaluated through an independent code path before it is reported.

use crate::expr::{EvalError, FunctionSpec};
use crate::Error;

pub const DEFAULT_GRID_N: usize = 64;
pub const DEFAULT_TOL: f64 = 1e-9;

/// Convexity-class parameters. The Hoelder conjugate `p` is always derived
/// from `q`, never set independently; it is `None` at q = 1 where it is
/// undefined.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ClassParams {
    pub m: f64,
    pub alpha1: f64,
    pub q: f64,
    pub p: Option<f64>,
}

impl ClassParams {
    pub fn new(m: f64, alpha1: f64, q: f64) -> Result<ClassParams, Error> {
        if !(m.is_finite() && m > 0.0 && m <= 1.0) {
            return Err(Error::Precondition(format!("m = {m} must lie in (0, 1]")));
        }
        if !(alpha1.is_finite() && alpha1 > 0.0 && alpha1 <= 1.0) {
            return Err(Error::Precondition(format!(
                "alpha1 = {alpha1} must lie in (0, 1]"
            )));
        }
        if !(q.is_finite() && q >= 1.0) {
            return Err(Error::Precondition(format!("q = {q} must be >= 1")));
        }
        let p = if q > 1.0 { Some(q / (q - 1.0)) } else { None };
        Ok(ClassParams { m, alpha1, q, p })
    }
}

/// Outcome of a hypothesis certification.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Certificate {
    pub holds: bool,
    /// Violating (x, y, t) when `holds` is false. For the decreasing-|f'|
    /// check the triple is (x_i, x_{i+1}, 0).
    pub witness: Option<(f64, f64, f64)>,
    pub max_violation: f64,
    pub grid_size: usize,
}

/// Defect of the (alpha1, m)-convexity inequality at one point, evaluated
/// directly from the definition. This is the independent path used to
/// confirm witnesses found by the grid scan.
pub fn class_defect(
    f: &FunctionSpec,
    m: f64,
    alpha1: f64,
    x: f64,
    y: f64,
    t: f64,
) -> Result<f64, EvalError> {
    let lhs = f.evaluate(t * x + m * (1.0 - t) * y)?;
    let w = t.powf(alpha1);
    let rhs = w * f.evaluate(x)? + m * (1.0 - w) * f.evaluate(y)?;
    Ok(lhs - rhs)
}

// Defects are compared against tol scaled by the magnitude of the bound, so
// certification is not dominated by rounding noise when f is large.
fn scaled_tol(tol: f64, bound_magnitude: f64) -> f64 {
    tol * (1.0 + bound_magnitude.abs())
}

/// Certify `f(tx + m(1-t)y) <= t f(x) + m(1-t) f(y)` on `[0, B]^2 x [0, 1]`.
pub fn certify_m_convex(
    f: &FunctionSpec,
    big_b: f64,
    m: f64,
    grid_n: usize,
    tol: f64,
) -> Result<Certificate, Error> {
    certify_class_on(f, 0.0, big_b, m, 1.0, grid_n, tol)
}

/// Certify `f(tx + m(1-t)y) <= t^alpha1 f(x) + m(1 - t^alpha1) f(y)`.
pub fn certify_alpha_m_convex(
    f: &FunctionSpec,
    big_b: f64,
    params: &ClassParams,
    grid_n: usize,
    tol: f64,
) -> Result<Certificate, Error> {
    certify_class_on(f, 0.0, big_b, params.m, params.alpha1, grid_n, tol)
}

/// Grid certification over an arbitrary box `[lo, hi]^2 x [0, 1]`; the
/// `lo = 0` case is the class definition, `m = alpha1 = 1` over `[a, b]` is
/// plain convexity.
pub fn certify_class_on(
    f: &FunctionSpec,
    lo: f64,
    hi: f64,
    m: f64,
    alpha1: f64,
    grid_n: usize,
    tol: f64,
) -> Result<Certificate, Error> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::Precondition(format!(
            "certification domain [{lo}, {hi}] must be finite and non-degenerate"
        )));
    }
    if grid_n < 2 {
        return Err(Error::Precondition("grid_n must be >= 2".into()));
    }

    let xs = linspace(lo, hi, grid_n);
    let ts = linspace(0.0, 1.0, grid_n);
    let mut fx = Vec::with_capacity(grid_n);
    for &x in &xs {
        fx.push(f.evaluate(x)?);
    }
    let tw: Vec<f64> = ts.iter().map(|t| t.powf(alpha1)).collect();

    let mut worst = f64::NEG_INFINITY;
    let mut worst_excess = f64::NEG_INFINITY;
    let mut arg = (xs[0], xs[0], 0.0);
    for (k, &t) in ts.iter().enumerate() {
        let w = tw[k];
        for (i, &x) in xs.iter().enumerate() {
            let wx = w * fx[i];
            for (j, &y) in xs.iter().enumerate() {
                let bound = wx + m * (1.0 - w) * fx[j];
                let mid = f.evaluate(t * x + m * (1.0 - t) * y)?;
                let defect = mid - bound;
                let excess = defect - scaled_tol(tol, bound);
                if excess > worst_excess {
                    worst_excess = excess;
                    worst = defect;
                    arg = (x, y, t);
                }
            }
        }
    }

    // One local refinement pass around the worst grid point before a
    // positive verdict.
    let cell = (hi - lo) / (grid_n - 1) as f64;
    let tcell = 1.0 / (grid_n - 1) as f64;
    let refined = refine_worst(f, lo, hi, m, alpha1, arg, cell, tcell)?;
    let (r_defect, r_arg) = refined;
    if r_defect > worst {
        worst = r_defect;
        arg = r_arg;
    }

    // Decision via the independent defect path at the candidate witness.
    let confirmed = class_defect(f, m, alpha1, arg.0, arg.1, arg.2)?;
    let w = arg.2.powf(alpha1);
    let bound_mag = w * f.evaluate(arg.0)? + m * (1.0 - w) * f.evaluate(arg.1)?;
    if confirmed > scaled_tol(tol, bound_mag) {
        Ok(Certificate {
            holds: false,
            witness: Some(arg),
            max_violation: confirmed,
            grid_size: grid_n,
        })
    } else {
        Ok(Certificate {
            holds: true,
            witness: None,
            max_violation: worst,
            grid_size: grid_n,
        })
    }
}

/// Compass pattern search maximizing the defect near the worst grid point.
#[allow(clippy::too_many_arguments)]
fn refine_worst(
    f: &FunctionSpec,
    lo: f64,
    hi: f64,
    m: f64,
    alpha1: f64,
    start: (f64, f64, f64),
    cell: f64,
    tcell: f64,
) -> Result<(f64, (f64, f64, f64)), Error> {
    let mut best = start;
    let mut best_defect = class_defect(f, m, alpha1, best.0, best.1, best.2)?;
    let mut hx = cell;
    let mut ht = tcell;
    for _ in 0..24 {
        let mut improved = false;
        let candidates = [
            (best.0 + hx, best.1, best.2),
            (best.0 - hx, best.1, best.2),
            (best.0, best.1 + hx, best.2),
            (best.0, best.1 - hx, best.2),
            (best.0, best.1, best.2 + ht),
            (best.0, best.1, best.2 - ht),
        ];
        for (x, y, t) in candidates {
            if !(lo..=hi).contains(&x) || !(lo..=hi).contains(&y) || !(0.0..=1.0).contains(&t) {
                continue;
            }
            let d = class_defect(f, m, alpha1, x, y, t)?;
            if d > best_defect {
                best_defect = d;
                best = (x, y, t);
                improved = true;
            }
        }
        if !improved {
            hx *= 0.5;
            ht *= 0.5;
        }
    }
    Ok((best_defect, best))
}

/// Certify that |f'| is non-increasing on `[a, b]` on a `grid_n`-point grid.
pub fn certify_decreasing_abs_derivative(
    f: &FunctionSpec,
    a: f64,
    b: f64,
    grid_n: usize,
) -> Result<Certificate, Error> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::Precondition(format!(
            "interval [{a}, {b}] must be finite and non-degenerate"
        )));
    }
    if grid_n < 2 {
        return Err(Error::Precondition("grid_n must be >= 2".into()));
    }
    let fp = f.differentiate()?;
    let xs = linspace(a, b, grid_n);
    let mut prev = fp.evaluate(xs[0])?.abs();
    let mut worst = f64::NEG_INFINITY;
    let mut witness = None;
    for pair in xs.windows(2) {
        let next = fp.evaluate(pair[1])?.abs();
        let defect = next - prev;
        if defect > worst {
            worst = defect;
        }
        if witness.is_none() && defect > scaled_tol(DEFAULT_TOL, prev) {
            witness = Some((pair[0], pair[1], 0.0));
        }
        prev = next;
    }
    Ok(Certificate {
        holds: witness.is_none(),
        witness,
        max_violation: worst,
        grid_size: grid_n,
    })
}

pub(crate) fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo + step * i as f64
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::FunctionSpec;

    #[test]
    fn square_is_m_convex_on_unit_interval() {
        let f = FunctionSpec::parse("x^2").unwrap();
        for &m in &[0.25, 0.5, 1.0] {
            let c = certify_m_convex(&f, 1.0, m, 32, DEFAULT_TOL).unwrap();
            assert!(c.holds, "m = {m}: {c:?}");
            assert!(c.witness.is_none());
        }
    }

    #[test]
    fn negated_square_fails_with_confirmed_witness() {
        let f = FunctionSpec::parse("-x^2").unwrap();
        let c = certify_m_convex(&f, 2.0, 1.0, 32, DEFAULT_TOL).unwrap();
        assert!(!c.holds);
        let (x, y, t) = c.witness.expect("witness required on failure");
        // Independent recomputation confirms the defect; the worst point
        // of -x^2 sits near (0, 2, 1/2) where the defect is 1.
        let d = class_defect(&f, 1.0, 1.0, x, y, t).unwrap();
        assert!(d > DEFAULT_TOL);
        assert!((c.max_violation - 1.0).abs() < 0.05, "{c:?}");
    }

    #[test]
    fn linear_through_origin_is_tight() {
        let f = FunctionSpec::parse("2*x").unwrap();
        for &m in &[0.3, 0.7, 1.0] {
            let c = certify_m_convex(&f, 1.5, m, 24, DEFAULT_TOL).unwrap();
            assert!(c.holds);
            assert!(c.max_violation.abs() < 1e-12, "{c:?}");
        }
    }

    #[test]
    fn alpha1_equal_one_reduces_to_m_convexity() {
        let fns = ["x^2", "-x^2", "exp(x) - 1", "x^3 + 2*x"];
        for text in fns {
            let f = FunctionSpec::parse(text).unwrap();
            let params = ClassParams::new(0.6, 1.0, 1.0).unwrap();
            let am = certify_alpha_m_convex(&f, 1.5, &params, 24, DEFAULT_TOL).unwrap();
            let mc = certify_m_convex(&f, 1.5, 0.6, 24, DEFAULT_TOL).unwrap();
            assert_eq!(am.holds, mc.holds, "{text}");
            if !am.holds {
                assert_eq!(am.witness, mc.witness, "{text}");
            }
        }
    }

    #[test]
    fn square_is_not_half_one_convex() {
        // x^2 fails (1/2, 1)-convexity: at x=0, y=1, t=1/4 the bound is
        // 1 - sqrt(t) = 1/2 but f(3/4) = 9/16.
        let f = FunctionSpec::parse("x^2").unwrap();
        let params = ClassParams::new(1.0, 0.5, 1.0).unwrap();
        let c = certify_alpha_m_convex(&f, 1.0, &params, 32, DEFAULT_TOL).unwrap();
        assert!(!c.holds);
        let (x, y, t) = c.witness.unwrap();
        assert!(class_defect(&f, 1.0, 0.5, x, y, t).unwrap() > DEFAULT_TOL);
    }

    #[test]
    fn square_is_alpha_m_convex_on_unit_box_when_certified() {
        // Spec probe: grid verification with refinement for a family of
        // (alpha1, m) pairs where x^2 on [0,1] does satisfy the inequality.
        let f = FunctionSpec::parse("x^2").unwrap();
        for &(alpha1, m) in &[(1.0, 1.0), (1.0, 0.5), (0.9, 0.2)] {
            let params = ClassParams::new(m, alpha1, 1.0).unwrap();
            let c = certify_alpha_m_convex(&f, 1.0, &params, 32, DEFAULT_TOL).unwrap();
            let expect_holds = check_exhaustively(&f, m, alpha1);
            assert_eq!(c.holds, expect_holds, "alpha1={alpha1} m={m} {c:?}");
        }
    }

    // Brute-force oracle on a much denser grid, written independently of
    // the certifier.
    fn check_exhaustively(f: &FunctionSpec, m: f64, alpha1: f64) -> bool {
        let n = 150;
        for i in 0..=n {
            for j in 0..=n {
                for k in 0..=n {
                    let x = i as f64 / n as f64;
                    let y = j as f64 / n as f64;
                    let t = k as f64 / n as f64;
                    if class_defect(f, m, alpha1, x, y, t).unwrap() > 1e-9 {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn decreasing_derivative_checks() {
        let f = FunctionSpec::parse("4*x - x^2").unwrap();
        let c = certify_decreasing_abs_derivative(&f, 0.0, 1.0, 64).unwrap();
        assert!(c.holds, "{c:?}");

        let g = FunctionSpec::parse("x^2").unwrap();
        let c = certify_decreasing_abs_derivative(&g, 0.0, 1.0, 64).unwrap();
        assert!(!c.holds);
        let (x0, x1, _) = c.witness.unwrap();
        assert!(x0 < x1 && x0 < 0.05, "witness at the first grid pair");

        let lin = FunctionSpec::parse("3*x + 1").unwrap();
        let c = certify_decreasing_abs_derivative(&lin, 0.0, 1.0, 64).unwrap();
        assert!(c.holds);
        assert!(c.max_violation.abs() < 1e-14);
    }

    #[test]
    fn convex_with_nonpositive_origin_is_m_convex_for_all_m() {
        // Members of K_m(b): convex with f(0) <= 0.
        let fns = ["x^2", "x^3", "exp(x) - 1", "x^2 + 3*x", "x^(3/2)"];
        for text in fns {
            let f = FunctionSpec::parse(text).unwrap();
            for &m in &[0.2, 0.5, 0.8, 1.0] {
                let c = certify_m_convex(&f, 2.0, m, 24, DEFAULT_TOL).unwrap();
                assert!(c.holds, "{text} with m = {m}: {c:?}");
            }
        }
    }

    #[test]
    fn class_params_derive_conjugate() {
        let p = ClassParams::new(0.5, 1.0, 2.0).unwrap();
        assert_eq!(p.p, Some(2.0));
        let p = ClassParams::new(0.5, 1.0, 4.0).unwrap();
        assert!((p.p.unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert!(1.0 / p.p.unwrap() + 1.0 / p.q - 1.0 == 0.0 || (1.0 / p.p.unwrap() + 1.0 / p.q - 1.0).abs() < 1e-15);
        let p = ClassParams::new(0.5, 1.0, 1.0).unwrap();
        assert_eq!(p.p, None);
        assert!(ClassParams::new(0.0, 1.0, 1.0).is_err());
        assert!(ClassParams::new(0.5, 1.2, 1.0).is_err());
        assert!(ClassParams::new(0.5, 1.0, 0.5).is_err());
    }

    #[test]
    fn eval_error_carries_offending_point() {
        let f = FunctionSpec::parse("ln(x - 2)").unwrap();
        let err = certify_m_convex(&f, 1.0, 1.0, 8, DEFAULT_TOL).unwrap_err();
        match err {
            crate::Error::Eval(e) => {
                let msg = e.to_string();
                assert!(msg.contains("ln"), "{msg}");
            }
            other => panic!("expected eval error, got {other:?}"),
        }
    }
}
