//! Adaptive one-dimensional quadrature, singular-kernel integration for
//! power-law weights, and an independent reference integrator.
//!
//! The main engine is a globally adaptive Gauss-Kronrod 7-15 scheme: the
//! interval with the largest local error estimate is bisected until the
//! summed estimate meets the requested tolerance. Endpoint singularities of
//! the form `(b-t)^(alpha-1)` / `(t-a)^(alpha-1)` with `alpha < 1` are
//! removed by the substitution `u = (b-t)^alpha` (mirrored on the right),
//! which turns the weighted integrand into a bounded one.
//!
//! [`reference_integrate`] is a deliberately separate code path (composite
//! midpoint sums plus Richardson extrapolation) used as an oracle in tests;
//! it shares no machinery with [`integrate`].
//!
//! Integrand closures must be side-effect free: they may be re-evaluated in
//! any order and, in sweeps, from multiple threads.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BinaryHeap;

/// Absolute/relative stopping criterion and evaluation budget for the
/// adaptive integrators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_evals: usize,
}

impl Tolerance {
    pub fn new(abs_tol: f64, rel_tol: f64, max_evals: usize) -> Result<Self> {
        let t = Tolerance {
            abs_tol,
            rel_tol,
            max_evals,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::Domain(format!("abs_tol must be > 0, got {}", self.abs_tol)));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::Domain(format!("rel_tol must be > 0, got {}", self.rel_tol)));
        }
        if self.max_evals < 15 {
            return Err(Error::Domain(format!(
                "max_evals must be at least 15 (one Gauss-Kronrod panel), got {}",
                self.max_evals
            )));
        }
        Ok(())
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_evals: 200_000,
        }
    }
}

/// Integral value together with the accumulated error estimate and the
/// number of integrand evaluations spent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: f64,
    pub err_estimate: f64,
    pub n_evals: usize,
}

/// Which endpoint kernel `integrate_singular` applies.
///
/// `Left` is the kernel of the left-sided Riemann-Liouville operator,
/// `(b-t)^(alpha-1)`, singular at the *upper* endpoint when `alpha < 1`;
/// `Right` is `(t-a)^(alpha-1)`, singular at the lower endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelSide {
    Left,
    Right,
}

// Gauss-Kronrod 7-15 nodes and weights (positive half, centre last),
// carried at full published precision.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One Gauss-Kronrod 7-15 panel. Returns (value, error estimate, resabs).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);

    let fc = f(c);
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    let mut resabs = WGK[7] * fc.abs();

    for (j, &x) in XGK.iter().enumerate().take(7) {
        let dx = h * x;
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }

    let value = resk * h;
    let err = ((resk - resg) * h).abs();
    if !value.is_finite() {
        return Err(Error::Domain(format!(
            "integrand produced a non-finite sample on [{a}, {b}]"
        )));
    }
    Ok((value, err, resabs * h.abs()))
}

#[derive(Debug)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    resabs: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Adaptive integration of `f` over `[a, b]`.
///
/// Bisects the segment with the worst local error until the summed estimate
/// drops below `max(abs_tol, rel_tol * |value|)` or the evaluation budget is
/// exhausted, in which case [`Error::Convergence`] carries the best estimate.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: &Tolerance) -> Result<QuadResult> {
    tol.validate()?;
    if a >= b || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!(
            "integration interval must satisfy a < b with finite endpoints, got [{a}, {b}]"
        )));
    }

    let (value, err, resabs) = gk15(&f, a, b)?;
    let mut n_evals = 15usize;
    let mut heap = BinaryHeap::new();
    heap.push(Segment {
        a,
        b,
        value,
        err,
        resabs,
    });
    let mut done: Vec<Segment> = Vec::new();

    let mut total = value;
    let mut total_err = err;
    let mut total_resabs = resabs;

    loop {
        let target = tol.abs_tol.max(tol.rel_tol * total.abs());
        // Below this floor the estimate is dominated by rounding noise and
        // further bisection cannot help.
        let floor = 50.0 * f64::EPSILON * total_resabs;
        if total_err <= target || total_err <= floor {
            break;
        }
        let worst = match heap.pop() {
            Some(s) => s,
            None => break, // every segment is at its refinement limit
        };
        let mid = 0.5 * (worst.a + worst.b);
        let too_narrow = (worst.b - worst.a).abs() <= 4.0 * f64::EPSILON * (1.0 + mid.abs());
        if too_narrow {
            done.push(worst);
            continue;
        }
        if n_evals + 30 > tol.max_evals {
            heap.push(worst);
            let (v, e) = finish(&mut heap, &mut done);
            return Err(Error::Convergence {
                value: v,
                err_estimate: e,
                n_evals,
            });
        }
        let (lv, le, lr) = gk15(&f, worst.a, mid)?;
        let (rv, re, rr) = gk15(&f, mid, worst.b)?;
        n_evals += 30;

        total += lv + rv - worst.value;
        total_err += le + re - worst.err;
        total_resabs += lr + rr - worst.resabs;

        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: lv,
            err: le,
            resabs: lr,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: rv,
            err: re,
            resabs: rr,
        });
    }

    let (value, err_estimate) = finish(&mut heap, &mut done);
    Ok(QuadResult {
        value,
        err_estimate,
        n_evals,
    })
}

/// Re-sum all segments left-to-right for a reproducible final value.
fn finish(heap: &mut BinaryHeap<Segment>, done: &mut Vec<Segment>) -> (f64, f64) {
    let mut segs: Vec<Segment> = heap.drain().collect();
    segs.append(done);
    segs.sort_by(|s, t| s.a.total_cmp(&t.a));
    let value = segs.iter().map(|s| s.value).sum();
    let err = segs.iter().map(|s| s.err).sum();
    (value, err)
}

/// Integration of `f` against an endpoint power kernel.
///
/// Computes `∫_a^b (b-t)^(alpha-1) f(t) dt` for [`KernelSide::Left`] and
/// `∫_a^b (t-a)^(alpha-1) f(t) dt` for [`KernelSide::Right`].
///
/// For `alpha < 1` the kernel is integrable but unbounded; the substitution
/// `u = (b-t)^alpha` (resp. `u = (t-a)^alpha`) yields
/// `(1/alpha) ∫_0^{(b-a)^alpha} f(b - u^(1/alpha)) du`, a bounded integrand
/// handled by the ordinary adaptive scheme. For `alpha >= 1` the weighted
/// integrand is continuous and is integrated directly.
pub fn integrate_singular<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    alpha: f64,
    side: KernelSide,
    tol: &Tolerance,
) -> Result<QuadResult> {
    if alpha <= 0.0 || !alpha.is_finite() {
        return Err(Error::Domain(format!("kernel exponent alpha must be > 0, got {alpha}")));
    }
    if a >= b || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!(
            "integration interval must satisfy a < b with finite endpoints, got [{a}, {b}]"
        )));
    }

    if alpha == 1.0 {
        return integrate(f, a, b, tol);
    }

    if alpha > 1.0 {
        let g = |t: f64| match side {
            KernelSide::Left => (b - t).powf(alpha - 1.0) * f(t),
            KernelSide::Right => (t - a).powf(alpha - 1.0) * f(t),
        };
        return integrate(g, a, b, tol);
    }

    // alpha < 1: removed singularity. The result is scaled by 1/alpha, so
    // the inner absolute tolerance is tightened by alpha.
    let upper = (b - a).powf(alpha);
    let inv = 1.0 / alpha;
    let g = |u: f64| match side {
        KernelSide::Left => f(b - u.powf(inv)),
        KernelSide::Right => f(a + u.powf(inv)),
    };
    let inner_tol = Tolerance {
        abs_tol: tol.abs_tol * alpha,
        rel_tol: tol.rel_tol,
        max_evals: tol.max_evals,
    };
    let inner = integrate(g, 0.0, upper, &inner_tol)?;
    Ok(QuadResult {
        value: inner.value / alpha,
        err_estimate: inner.err_estimate / alpha,
        n_evals: inner.n_evals,
    })
}

/// Reference integrator: composite midpoint sums on `2^levels` panels with
/// Richardson extrapolation over the last three refinement levels.
///
/// This is the test oracle for the adaptive engine. It intentionally shares
/// no code with [`integrate`]. Panics on misuse (`a >= b`, `levels < 3`) or
/// on a non-finite sample; oracle failures should be loud.
pub fn reference_integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, levels: u32) -> f64 {
    assert!(a < b, "reference_integrate: need a < b, got [{a}, {b}]");
    assert!(levels >= 3, "reference_integrate: need levels >= 3, got {levels}");
    assert!(levels < 28, "reference_integrate: levels {levels} would need 2^{levels} samples");

    let midpoint_sum = |level: u32| -> f64 {
        let n = 1u64 << level;
        let h = (b - a) / n as f64;
        let mut acc = 0.0;
        for i in 0..n {
            let x = a + (i as f64 + 0.5) * h;
            let fx = f(x);
            assert!(fx.is_finite(), "reference_integrate: non-finite sample at x = {x}");
            acc += fx;
        }
        acc * h
    };

    let m0 = midpoint_sum(levels - 2);
    let m1 = midpoint_sum(levels - 1);
    let m2 = midpoint_sum(levels);

    // Midpoint error expands in even powers of h; two Richardson steps
    // cancel the h^2 and h^4 terms.
    let r1 = (4.0 * m1 - m0) / 3.0;
    let r2 = (4.0 * m2 - m1) / 3.0;
    (16.0 * r2 - r1) / 15.0
}
