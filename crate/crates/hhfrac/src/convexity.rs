//! Empirical certifiers for convexity, s-convexity (second sense), and
//! m-convexity.
//!
//! Certification is falsification-only: a `holds` verdict means no
//! counterexample was found on an exhaustive `grid_n³` tensor grid over
//! `(x, y, t)` plus a batch of seeded random triples — it is evidence, not a
//! proof. A `violated` verdict carries a concrete witness that re-evaluates
//! to a violation beyond the certifier tolerance.
//!
//! Random samples come from a counter-based generator (splitmix64 keyed by
//! `(seed, index)`), so verdicts are deterministic for a given
//! `(grid_n, seed)` and independent of evaluation order.

use crate::error::{Error, Result};
use crate::fracint::Interval;
use crate::funcspec::FuncSpec;
use serde::{Deserialize, Serialize};

/// Number of seeded random triples checked in addition to the tensor grid.
pub const RANDOM_SAMPLES: usize = 10_000;

/// Default tensor-grid resolution per axis.
pub const DEFAULT_GRID_N: usize = 33;

/// Outcome of a certification run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexityVerdict {
    pub holds: bool,
    pub witness: Option<Witness>,
    pub samples_checked: usize,
}

/// A concrete counterexample: the defining inequality fails at
/// `(x, y, t)` by `violation` (beyond the absorbing tolerance).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub x: f64,
    pub y: f64,
    pub t: f64,
    pub violation: f64,
}

fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn unit_f64(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// The i-th random triple for `seed`, independent of all other indices.
fn random_triple(seed: u64, i: usize) -> (f64, f64, f64) {
    let base = seed ^ (i as u64).wrapping_mul(0xA076_1D64_78BD_642F);
    (
        unit_f64(splitmix64(base)),
        unit_f64(splitmix64(base.wrapping_add(1))),
        unit_f64(splitmix64(base.wrapping_add(2))),
    )
}

/// Violation tolerance absorbing floating-point noise: a candidate only
/// counts as a counterexample if `lhs - rhs > 1e-12 + 1e-9·|rhs|`.
fn violation_tol(rhs: f64) -> f64 {
    1e-12 + 1e-9 * rhs.abs()
}

/// Scan the tensor grid and the random batch for the worst violation of
/// `f(mix(x,y,t)) <= bound(x,y,t)`. `x, y` range over `iv`, `t` over [0,1].
fn falsify(
    f: &dyn Fn(f64) -> f64,
    mix: &dyn Fn(f64, f64, f64) -> f64,
    bound: &dyn Fn(f64, f64, f64) -> f64,
    iv: Interval,
    grid_n: usize,
    n_random: usize,
    seed: u64,
) -> ConvexityVerdict {
    let mut worst: Option<Witness> = None;
    let mut samples = 0usize;

    let probe = |x: f64, y: f64, t: f64, worst: &mut Option<Witness>| {
        let lhs = f(mix(x, y, t));
        let rhs = bound(x, y, t);
        let v = lhs - rhs;
        if v > violation_tol(rhs) && worst.is_none_or(|w| v > w.violation) {
            *worst = Some(Witness {
                x,
                y,
                t,
                violation: v,
            });
        }
    };

    let step = iv.length() / (grid_n - 1) as f64;
    for i in 0..grid_n {
        let x = iv.a() + step * i as f64;
        for j in 0..grid_n {
            let y = iv.a() + step * j as f64;
            for k in 0..grid_n {
                let t = k as f64 / (grid_n - 1) as f64;
                probe(x, y, t, &mut worst);
                samples += 1;
            }
        }
    }
    for i in 0..n_random {
        let (u, v, t) = random_triple(seed, i);
        let x = iv.a() + iv.length() * u;
        let y = iv.a() + iv.length() * v;
        probe(x, y, t, &mut worst);
        samples += 1;
    }

    ConvexityVerdict {
        holds: worst.is_none(),
        witness: worst,
        samples_checked: samples,
    }
}

fn validate_common(f: &FuncSpec, iv: Interval, grid_n: usize) -> Result<()> {
    if grid_n < 3 {
        return Err(Error::Domain(format!("grid_n must be at least 3, got {grid_n}")));
    }
    if !f.covers(iv) {
        return Err(Error::Domain(format!(
            "{} is not defined on all of {iv}",
            f.spec_str()
        )));
    }
    Ok(())
}

/// Check `f(t·x + (1-t)·y) <= t^s f(x) + (1-t)^s f(y)` on `iv ⊂ [0, ∞)` for
/// fixed `s` in (0, 1].
pub fn check_s_convex(
    f: &FuncSpec,
    s: f64,
    iv: Interval,
    grid_n: usize,
    seed: u64,
) -> Result<ConvexityVerdict> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::Domain(format!("s must lie in (0, 1], got {s}")));
    }
    if iv.a() < 0.0 {
        return Err(Error::Domain(format!(
            "s-convexity is defined on [0, ∞); interval {iv} reaches below zero"
        )));
    }
    validate_common(f, iv, grid_n)?;
    if s == 1.0 {
        // bit-identical to the ordinary convexity check
        return check_convex(f, iv, grid_n, seed);
    }
    Ok(falsify(
        &|x| f.eval(x),
        &|x, y, t| t * x + (1.0 - t) * y,
        &|x, y, t| t.powf(s) * f.eval(x) + (1.0 - t).powf(s) * f.eval(y),
        iv,
        grid_n,
        RANDOM_SAMPLES,
        seed,
    ))
}

/// Check `f(t·x + m(1-t)·y) <= t f(x) + m(1-t) f(y)` on `iv = [0, b]` for
/// fixed `m` in (0, 1].
pub fn check_m_convex(
    f: &FuncSpec,
    m: f64,
    iv: Interval,
    grid_n: usize,
    seed: u64,
) -> Result<ConvexityVerdict> {
    if !(m > 0.0 && m <= 1.0) {
        return Err(Error::Domain(format!("m must lie in (0, 1], got {m}")));
    }
    if iv.a() != 0.0 {
        return Err(Error::Domain(format!(
            "m-convexity is defined on an interval [0, b]; got {iv}"
        )));
    }
    validate_common(f, iv, grid_n)?;
    Ok(falsify(
        &|x| f.eval(x),
        &|x, y, t| t * x + m * (1.0 - t) * y,
        &|x, y, t| t * f.eval(x) + m * (1.0 - t) * f.eval(y),
        iv,
        grid_n,
        RANDOM_SAMPLES,
        seed,
    ))
}

/// Ordinary convexity; identical to [`check_s_convex`] with `s = 1`.
pub fn check_convex(f: &FuncSpec, iv: Interval, grid_n: usize, seed: u64) -> Result<ConvexityVerdict> {
    validate_common(f, iv, grid_n)?;
    Ok(falsify(
        &|x| f.eval(x),
        &|x, y, t| t * x + (1.0 - t) * y,
        &|x, y, t| t * f.eval(x) + (1.0 - t) * f.eval(y),
        iv,
        grid_n,
        RANDOM_SAMPLES,
        seed,
    ))
}

/// Falsification for an arbitrary function given as a closure; used by the
/// sweep harness to certify derived functions such as |f'|^q. Same grid and
/// tolerance scheme as [`check_s_convex`].
pub(crate) fn falsify_s_convex_fn(
    g: &dyn Fn(f64) -> f64,
    s: f64,
    iv: Interval,
    grid_n: usize,
    n_random: usize,
    seed: u64,
) -> ConvexityVerdict {
    let weight = move |t: f64| if s == 1.0 { t } else { t.powf(s) };
    falsify(
        g,
        &|x, y, t| t * x + (1.0 - t) * y,
        &|x, y, t| weight(t) * g(x) + weight(1.0 - t) * g(y),
        iv,
        grid_n,
        n_random,
        seed,
    )
}

/// Closure-based m-convexity falsification for the sweep harness.
pub(crate) fn falsify_m_convex_fn(
    g: &dyn Fn(f64) -> f64,
    m: f64,
    iv: Interval,
    grid_n: usize,
    n_random: usize,
    seed: u64,
) -> ConvexityVerdict {
    falsify(
        g,
        &|x, y, t| t * x + m * (1.0 - t) * y,
        &|x, y, t| t * g(x) + m * (1.0 - t) * g(y),
        iv,
        grid_n,
        n_random,
        seed,
    )
}
