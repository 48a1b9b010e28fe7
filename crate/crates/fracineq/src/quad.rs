//! Adaptive composite Gauss-Legendre quadrature.
//!
//! A panel's error is estimated by comparing its single-rule value against
//! the sum of its two half-panel values; the panel with the worst estimate
//! is bisected until the summed estimate drops below the absolute tolerance.
//! Worst-first refinement keeps endpoint singularities from starving the
//! rest of the interval of subdivision budget.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::expr::EvalError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuadError {
    #[error("quadrature did not converge: best estimate {best:e}, residual {residual:e} after {subdivisions} subdivisions")]
    NonConvergence {
        best: f64,
        residual: f64,
        subdivisions: usize,
    },
    #[error("integrand returned a non-finite value at t = {t}")]
    NonFiniteIntegrand { t: f64 },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    /// Conservative estimate from the bisection comparisons, not a rigorous
    /// enclosure.
    pub error_est: f64,
    pub subdivisions: usize,
}

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1], by Newton
/// iteration on the Legendre recurrence. Rules are cached per order.
type RuleCache = Mutex<HashMap<usize, Arc<Vec<(f64, f64)>>>>;

fn rule(order: usize) -> Arc<Vec<(f64, f64)>> {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut cache = cache.lock().expect("rule cache poisoned");
    cache
        .entry(order)
        .or_insert_with(|| Arc::new(legendre_rule(order)))
        .clone()
}

fn legendre_rule(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 2, "panel order must be at least 2");
    let mut out = vec![(0.0, 0.0); n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_eval(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[i] = (-x, w);
        out[n - 1 - i] = (x, w);
    }
    out
}

/// P_n(x) and P_n'(x) via the three-term recurrence.
fn legendre_eval(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    err: f64,
    // half-panel values; each becomes a child's coarse value on split
    left_half: f64,
    right_half: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Integrate `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_subdivisions: usize,
    order: usize,
) -> Result<QuadResult, QuadError>
where
    F: Fn(f64) -> Result<f64, EvalError>,
{
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            error_est: 0.0,
            subdivisions: 0,
        });
    }
    if a > b {
        let mut r = integrate(f, b, a, tol, max_subdivisions, order)?;
        r.value = -r.value;
        return Ok(r);
    }
    let rule = rule(order);
    let gl = |lo: f64, hi: f64| -> Result<f64, QuadError> {
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        let mut acc = 0.0;
        for &(xi, wi) in rule.iter() {
            let t = mid + half * xi;
            let v = f(t)?;
            if !v.is_finite() {
                return Err(QuadError::NonFiniteIntegrand { t });
            }
            acc += wi * v;
        }
        Ok(acc * half)
    };
    let make_panel = |lo: f64, hi: f64, coarse: f64| -> Result<Panel, QuadError> {
        let mid = 0.5 * (lo + hi);
        let left = gl(lo, mid)?;
        let right = gl(mid, hi)?;
        let fine = left + right;
        Ok(Panel {
            lo,
            hi,
            value: fine,
            err: (fine - coarse).abs(),
            left_half: left,
            right_half: right,
        })
    };

    let coarse = gl(a, b)?;
    let root = make_panel(a, b, coarse)?;
    let mut total_value = root.value;
    let mut total_err = root.err;
    let mut stuck_err = 0.0;
    let mut heap = BinaryHeap::new();
    heap.push(root);
    let mut subdivisions = 0usize;

    while total_err + stuck_err > tol {
        let worst = match heap.pop() {
            Some(p) => p,
            None => {
                return Err(QuadError::NonConvergence {
                    best: total_value,
                    residual: stuck_err,
                    subdivisions,
                })
            }
        };
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi || subdivisions >= max_subdivisions {
            if subdivisions >= max_subdivisions {
                return Err(QuadError::NonConvergence {
                    best: total_value,
                    residual: total_err + stuck_err,
                    subdivisions,
                });
            }
            // Panel width is at the rounding limit; its estimate is
            // irreducible.
            total_err -= worst.err;
            if total_err < 0.0 {
                total_err = 0.0;
            }
            stuck_err += worst.err;
            continue;
        }
        subdivisions += 1;
        let left = make_panel(worst.lo, mid, worst.left_half)?;
        let right = make_panel(mid, worst.hi, worst.right_half)?;
        total_value += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        if total_err < 0.0 {
            total_err = 0.0;
        }
        heap.push(left);
        heap.push(right);
    }

    Ok(QuadResult {
        value: total_value,
        error_est: total_err + stuck_err,
        subdivisions,
    })
}

/// Convenience wrapper for integrands that cannot fail.
pub fn integrate_fn<F>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_subdivisions: usize,
    order: usize,
) -> Result<QuadResult, QuadError>
where
    F: Fn(f64) -> f64,
{
    integrate(|t| Ok(f(t)), a, b, tol, max_subdivisions, order)
}
