//! Classical (non-fractional) Hermite-Hadamard-type checks.

use super::*;
use crate::convexity::certify_class_on;
use crate::fracint::integral;

/// Classical Hermite-Hadamard:
/// f((a+b)/2) <= mean of f over [a,b] <= (f(a)+f(b))/2 for convex f.
/// The report carries the middle term against the tighter side.
pub fn check_hh_classical(
    f: &FunctionSpec,
    a: f64,
    b: f64,
    s: &QuadSettings,
) -> Result<CheckReport, Error> {
    require(a.is_finite() && b.is_finite() && a < b, || {
        format!("interval must satisfy a < b, got a = {a}, b = {b}")
    })?;
    let id = TheoremId::Hh;
    let cert = certify_class_on(f, a, b, 1.0, 1.0, s.cert_grid_n, s.cert_tol)?;
    let hyps = vec![HypothesisEntry {
        name: "convex".into(),
        certificate: cert,
    }];
    if !all_hold(&hyps) {
        return Ok(CheckReport::unmet(id, hyps, vec![]));
    }

    let mid = f.evaluate(0.5 * (a + b))?;
    let mean = quad_val!(integral(f, a, b, s), id, hyps.clone()) / (b - a);
    let ends = 0.5 * (f.evaluate(a)? + f.evaluate(b)?);
    let lower_margin = mean - mid;
    let upper_margin = ends - mean;
    let notes = vec![
        format!("midpoint <= mean margin: {lower_margin}"),
        format!("mean <= endpoint-average margin: {upper_margin}"),
    ];
    let (lhs, rhs) = if lower_margin <= upper_margin {
        (mid, mean)
    } else {
        (mean, ends)
    };
    let replay = replay_line("HH", f, &[("a", a), ("b", b)]);
    Ok(CheckReport::inequality(
        id,
        lhs,
        rhs,
        hyps,
        notes,
        s.check_tol,
        replay,
        false,
    ))
}

/// Mean of f over [a,b] bounded by min of the two m-weighted endpoint
/// averages.
pub fn check_thm_1_1(
    f: &FunctionSpec,
    a: f64,
    b: f64,
    m: f64,
    s: &QuadSettings,
) -> Result<CheckReport, Error> {
    require_interval(a, b)?;
    require_m(m)?;
    let id = TheoremId::T1_1;
    let cert = crate::convexity::certify_m_convex(f, b / m, m, s.cert_grid_n, s.cert_tol)?;
    let hyps = vec![HypothesisEntry {
        name: format!("m-convex on [0, {}]", b / m),
        certificate: cert,
    }];
    if !all_hold(&hyps) {
        return Ok(CheckReport::unmet(id, hyps, vec![]));
    }

    let lhs = quad_val!(integral(f, a, b, s), id, hyps.clone()) / (b - a);
    let avg_ab = 0.5 * (f.evaluate(a)? + m * f.evaluate(b / m)?);
    let avg_ba = 0.5 * (f.evaluate(b)? + m * f.evaluate(a / m)?);
    let rhs = avg_ab.min(avg_ba);
    let notes = vec![format!(
        "endpoint averages: (f(a)+m f(b/m))/2 = {avg_ab}, (f(b)+m f(a/m))/2 = {avg_ba}"
    )];
    let replay = replay_line("T1_1", f, &[("a", a), ("b", b), ("m", m)]);
    Ok(CheckReport::inequality(
        id,
        lhs,
        rhs,
        hyps,
        notes,
        s.check_tol,
        replay,
        false,
    ))
}

/// Averaged pair of means over [a, mb] and [ma, b] bounded by the endpoint
/// average.
pub fn check_thm_1_2(
    f: &FunctionSpec,
    a: f64,
    b: f64,
    m: f64,
    s: &QuadSettings,
) -> Result<CheckReport, Error> {
    require_interval(a, b)?;
    require_m(m)?;
    require(m * b > a, || {
        format!("degenerate interval: mb = {} must exceed a = {a}", m * b)
    })?;
    let id = TheoremId::T1_2;
    let cert = crate::convexity::certify_m_convex(f, b, m, s.cert_grid_n, s.cert_tol)?;
    let hyps = vec![HypothesisEntry {
        name: format!("m-convex on [0, {b}]"),
        certificate: cert,
    }];
    if !all_hold(&hyps) {
        return Ok(CheckReport::unmet(id, hyps, vec![]));
    }

    let mean_upper = quad_val!(integral(f, a, m * b, s), id, hyps.clone()) / (m * b - a);
    let mean_lower = quad_val!(integral(f, m * a, b, s), id, hyps.clone()) / (b - m * a);
    let lhs = (mean_upper + mean_lower) / (m + 1.0);
    let rhs = 0.5 * (f.evaluate(a)? + f.evaluate(b)?);
    let replay = replay_line("T1_2", f, &[("a", a), ("b", b), ("m", m)]);
    Ok(CheckReport::inequality(
        id,
        lhs,
        rhs,
        hyps,
        vec![],
        s.check_tol,
        replay,
        false,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::FunctionSpec;
    use crate::fracint::QuadSettings;

    fn s() -> QuadSettings {
        QuadSettings {
            cert_grid_n: 32,
            ..QuadSettings::default()
        }
    }

    #[test]
    fn hh_square_brackets_one_third() {
        let f = FunctionSpec::parse("x^2").unwrap();
        let r = check_hh_classical(&f, 0.0, 1.0, &s()).unwrap();
        assert_eq!(r.status, Status::Verified);
        // tighter side is midpoint (1/4) vs mean (1/3): margin 1/12 < 1/6
        assert!((r.lhs - 0.25).abs() < 1e-10);
        assert!((r.rhs - 1.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn hh_linear_has_zero_margin() {
        let f = FunctionSpec::parse("3*x - 1").unwrap();
        let r = check_hh_classical(&f, 0.0, 2.0, &s()).unwrap();
        assert_eq!(r.status, Status::Verified);
        assert!(r.margin.abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn hh_concave_is_gated() {
        let f = FunctionSpec::parse("-x^2").unwrap();
        let r = check_hh_classical(&f, 0.0, 1.0, &s()).unwrap();
        assert_eq!(r.status, Status::HypothesesUnmet);
        assert!(r.hypotheses[0].certificate.witness.is_some());
        assert!(r.lhs.is_nan());
    }

    #[test]
    fn thm_1_1_square_oracles() {
        let f = FunctionSpec::parse("x^2").unwrap();
        // m = 1: 1/3 <= 1/2
        let r = check_thm_1_1(&f, 0.0, 1.0, 1.0, &s()).unwrap();
        assert_eq!(r.status, Status::Verified);
        assert!((r.lhs - 1.0 / 3.0).abs() < 1e-10);
        assert!((r.rhs - 0.5).abs() < 1e-12);
        // m = 1/2: rhs = min{(0 + (1/2) f(2))/2, (1 + 0)/2} = 1/2
        let r = check_thm_1_1(&f, 0.0, 1.0, 0.5, &s()).unwrap();
        assert_eq!(r.status, Status::Verified);
        assert!((r.rhs - 0.5).abs() < 1e-12, "{r:?}");
    }

    #[test]
    fn thm_1_1_linear_through_origin_is_tight() {
        let f = FunctionSpec::parse("2*x").unwrap();
        let r = check_thm_1_1(&f, 0.0, 1.0, 1.0, &s()).unwrap();
        assert_eq!(r.status, Status::Verified);
        assert!(r.margin.abs() < 1e-9);
    }

    #[test]
    fn thm_1_2_closed_forms() {
        let f = FunctionSpec::parse("x^2").unwrap();
        // m = 1: lhs = (1/2)(1/3 + 1/3) = 1/3 <= 1/2
        let r = check_thm_1_2(&f, 0.0, 1.0, 1.0, &s()).unwrap();
        assert_eq!(r.status, Status::Verified);
        assert!((r.lhs - 1.0 / 3.0).abs() < 1e-10);
        // m = 1/2: lhs = (2/3)[2 int_0^(1/2) x^2 + int_0^1 x^2] = 5/18
        let r = check_thm_1_2(&f, 0.0, 1.0, 0.5, &s()).unwrap();
        assert_eq!(r.status, Status::Verified);
        assert!((r.lhs - 5.0 / 18.0).abs() < 1e-10, "{r:?}");
        assert!((r.rhs - 0.5).abs() < 1e-12);
    }

    #[test]
    fn thm_1_2_rejects_degenerate_interval() {
        let f = FunctionSpec::parse("x^2").unwrap();
        let err = check_thm_1_2(&f, 0.9, 1.0, 0.5, &s()).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn negated_square_is_gated_with_witness() {
        let f = FunctionSpec::parse("-x^2").unwrap();
        for checker in [check_thm_1_1, check_thm_1_2] {
            let r = checker(&f, 0.0, 1.0, 1.0, &s()).unwrap();
            assert_eq!(r.status, Status::HypothesesUnmet);
            let w = r.hypotheses[0].certificate.witness.unwrap();
            let d = crate::convexity::class_defect(&f, 1.0, 1.0, w.0, w.1, w.2).unwrap();
            assert!(d > s().cert_tol);
        }
    }
}
