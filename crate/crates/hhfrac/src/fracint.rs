//! Riemann-Liouville fractional integral operators.
//!
//! For order `alpha > 0`,
//!
//! ```text
//! J_{a+}^alpha f(x) = (1/Γ(alpha)) ∫_a^x (x-t)^(alpha-1) f(t) dt,   x > a
//! J_{b-}^alpha f(x) = (1/Γ(alpha)) ∫_x^b (t-x)^(alpha-1) f(t) dt,   x < b
//! ```
//!
//! At `alpha = 1` both reduce to the ordinary integral. The order-zero
//! operator is the identity `f(x)`; it is exposed through
//! [`FracOrder::identity`] and short-circuited exactly, since the
//! `alpha -> 0` limit is not reachable by quadrature.

use crate::error::{Error, Result};
use crate::quadrature::{integrate_singular, KernelSide, Tolerance};
use crate::specfun::{gamma, PositiveReal};
use serde::{Deserialize, Serialize};

/// A closed interval `[a, b]` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if a.is_finite() && b.is_finite() && a < b {
            Ok(Interval { a, b })
        } else {
            Err(Error::Domain(format!(
                "interval requires finite a < b, got [{a}, {b}]"
            )))
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = Error;
    fn try_from(v: [f64; 2]) -> Result<Self> {
        Interval::new(v[0], v[1])
    }
}

impl From<Interval> for [f64; 2] {
    fn from(iv: Interval) -> Self {
        [iv.a, iv.b]
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

/// Fractional integration order: `alpha > 0`, or the exact identity order.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FracOrder(f64);

impl FracOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha.is_finite() {
            Ok(FracOrder(alpha))
        } else {
            Err(Error::Domain(format!(
                "fractional order must be finite and > 0, got {alpha}"
            )))
        }
    }

    /// The order-zero operator, i.e. the identity `J^0 f = f`.
    pub fn identity() -> Self {
        FracOrder(0.0)
    }

    pub fn is_identity(&self) -> bool {
        self.0 == 0.0
    }

    pub fn get(&self) -> f64 {
        self.0
    }
}

/// Left-sided operator `J_{a+}^alpha f(x)` for `x > a`.
pub fn rl_left<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    order: FracOrder,
    x: f64,
    tol: &Tolerance,
) -> Result<f64> {
    if order.is_identity() {
        return Ok(f(x));
    }
    if x.is_nan() || x <= a {
        return Err(Error::Domain(format!(
            "left Riemann-Liouville integral needs x > a, got a = {a}, x = {x}"
        )));
    }
    let alpha = order.get();
    let weighted = integrate_singular(f, a, x, alpha, KernelSide::Left, tol)?;
    Ok(weighted.value / gamma(PositiveReal::new(alpha)?))
}

/// Right-sided operator `J_{b-}^alpha f(x)` for `x < b`.
pub fn rl_right<F: Fn(f64) -> f64>(
    f: F,
    b: f64,
    order: FracOrder,
    x: f64,
    tol: &Tolerance,
) -> Result<f64> {
    if order.is_identity() {
        return Ok(f(x));
    }
    if x.is_nan() || x >= b {
        return Err(Error::Domain(format!(
            "right Riemann-Liouville integral needs x < b, got b = {b}, x = {x}"
        )));
    }
    let alpha = order.get();
    let weighted = integrate_singular(f, x, b, alpha, KernelSide::Right, tol)?;
    Ok(weighted.value / gamma(PositiveReal::new(alpha)?))
}
