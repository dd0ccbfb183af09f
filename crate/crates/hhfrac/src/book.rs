//! Keeps the guide honest: every Rust snippet in `book/src/*.md` is
//! compiled and run by `cargo test --doc`, so the book cannot drift from
//! the API. The items below exist only during doctest collection.

#[doc = include_str!("../../../book/src/introduction.md")]
pub struct GuideIntroduction;

#[doc = include_str!("../../../book/src/special-functions.md")]
pub struct GuideSpecialFunctions;

#[doc = include_str!("../../../book/src/quadrature.md")]
pub struct GuideQuadrature;

#[doc = include_str!("../../../book/src/fractional-integrals.md")]
pub struct GuideFractionalIntegrals;

#[doc = include_str!("../../../book/src/convexity.md")]
pub struct GuideConvexity;

#[doc = include_str!("../../../book/src/inequalities.md")]
pub struct GuideInequalities;

#[doc = include_str!("../../../book/src/sweeps.md")]
pub struct GuideSweeps;
