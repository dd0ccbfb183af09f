//! Riemann-Liouville fractional integrals and a numerical audit bench for
//! Hermite-Hadamard-type inequalities over s-convex and m-convex functions.
//!
//! Where a bound's printed form differs from the form its own proof
//! establishes, the evaluators in [`bounds`] compute both and report signed
//! margins for each; the [`sweep`] harness counts, over parameter grids,
//! where the printed forms fail and checks that the proof-consistent forms
//! never do. Supporting layers: [`specfun`] (Gamma/Beta/incomplete Beta),
//! [`quadrature`] (adaptive Gauss-Kronrod with singular-kernel handling and
//! an independent reference integrator), [`fracint`] (the fractional
//! operators), and [`convexity`] (empirical class certification with
//! counterexample witnesses).
//!
//! The narrative guide lives in `book/`; its Rust snippets run as doctests
//! of this crate, so guide and API stay in sync.

pub mod bounds;
#[cfg(doctest)]
mod book;
pub mod convexity;
pub mod error;
pub mod fracint;
pub mod funcspec;
pub mod quadrature;
pub mod specfun;
pub mod sweep;

pub use bounds::{BoundVariant, CellInputs, EvalCtx, InequalityReport, Term, TheoremId, Verdict};
pub use error::{Error, Result};
pub use fracint::{FracOrder, Interval};
pub use funcspec::{ClassKnowledge, Family, FuncSpec};
pub use quadrature::{QuadResult, Tolerance};
pub use specfun::PositiveReal;
pub use sweep::{
    run_sweep, sharpness_search, SharpnessQuery, SharpnessRecord, SweepConfig, SweepReport,
};
