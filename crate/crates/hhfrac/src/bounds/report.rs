//! Report types shared by every inequality evaluator.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Identifier of an audited inequality or identity.
///
/// * `E1` — classical midpoint/mean/endpoint chain for convex functions
/// * `e13` — the s-convex chain with constants `2^(s-1)` and `1/(s+1)`
/// * `e14` — trapezoid-gap bound for s-convex `|f'|^q`
/// * `T1` — fractional version of `e13` (two right-hand variants)
/// * `L1` — exact fractional trapezoid identity
/// * `T2` — fractional version of `e14` (two right-hand variants)
/// * `h1` — fractional chain for m-convex functions (two right-hand variants)
/// * `kk` — classical m-convex chain (the `h1` chain at order 1)
/// * `h2` — symmetrised two-point mean bound for m-convex functions
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "E1")]
    E1,
    #[serde(rename = "e13")]
    E13,
    #[serde(rename = "e14")]
    E14,
    #[serde(rename = "T1")]
    T1,
    #[serde(rename = "L1")]
    L1,
    #[serde(rename = "T2")]
    T2,
    #[serde(rename = "h1")]
    H1,
    #[serde(rename = "kk")]
    Kk,
    #[serde(rename = "h2")]
    H2,
}

impl TheoremId {
    pub const ALL: [TheoremId; 9] = [
        TheoremId::E1,
        TheoremId::E13,
        TheoremId::E14,
        TheoremId::T1,
        TheoremId::L1,
        TheoremId::T2,
        TheoremId::H1,
        TheoremId::Kk,
        TheoremId::H2,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::E1 => "E1",
            TheoremId::E13 => "e13",
            TheoremId::E14 => "e14",
            TheoremId::T1 => "T1",
            TheoremId::L1 => "L1",
            TheoremId::T2 => "T2",
            TheoremId::H1 => "h1",
            TheoremId::Kk => "kk",
            TheoremId::H2 => "h2",
        }
    }

    /// Theorems whose printed right-hand side differs from the one their
    /// own proof establishes; these carry both [`BoundVariant`] forms.
    pub fn has_variants(&self) -> bool {
        matches!(self, TheoremId::T1 | TheoremId::T2 | TheoremId::H1)
    }

    /// `L1` is an identity, not an inequality chain.
    pub fn is_identity(&self) -> bool {
        matches!(self, TheoremId::L1)
    }
}

impl std::fmt::Display for TheoremId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for TheoremId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .iter()
            .copied()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown theorem id `{s}` (expected one of E1, e13, e14, T1, L1, T2, h1, kk, h2)"
                ))
            })
    }
}

/// Which right-hand-side formula a verdict refers to: the bound exactly as
/// printed (`AsStated`) or the bound the proof actually establishes
/// (`ProofConsistent`). For theorems without a display/proof mismatch the
/// two coincide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundVariant {
    #[serde(rename = "as-stated")]
    AsStated,
    #[serde(rename = "proof-consistent")]
    ProofConsistent,
}

impl BoundVariant {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundVariant::AsStated => "as-stated",
            BoundVariant::ProofConsistent => "proof-consistent",
        }
    }
}

impl std::fmt::Display for BoundVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for BoundVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "as-stated" => Ok(BoundVariant::AsStated),
            "proof-consistent" => Ok(BoundVariant::ProofConsistent),
            _ => Err(Error::Parse(format!(
                "unknown variant `{s}` (expected `as-stated` or `proof-consistent`)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "holds")]
    Holds,
    #[serde(rename = "violated")]
    Violated,
    #[serde(rename = "equality-within-tol")]
    EqualityWithinTol,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::EqualityWithinTol => "equality-within-tol",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A named scalar: a term of the inequality chain or a margin between
/// consecutive terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub name: String,
    pub value: f64,
}

impl Term {
    pub fn new(name: &str, value: f64) -> Self {
        Term {
            name: name.to_string(),
            value,
        }
    }
}

/// The grid coordinates of one evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellInputs {
    pub f: String,
    pub a: f64,
    pub b: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
}

impl CellInputs {
    pub fn new(f: &str, a: f64, b: f64) -> Self {
        CellInputs {
            f: f.to_string(),
            a,
            b,
            alpha: None,
            s: None,
            m: None,
            q: None,
        }
    }
}

impl std::fmt::Display for CellInputs {
    fn fmt(&self, w: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(w, "f={} [{}, {}]", self.f, self.a, self.b)?;
        if let Some(v) = self.alpha {
            write!(w, " alpha={v}")?;
        }
        if let Some(v) = self.s {
            write!(w, " s={v}")?;
        }
        if let Some(v) = self.m {
            write!(w, " m={v}")?;
        }
        if let Some(v) = self.q {
            write!(w, " q={v}")?;
        }
        Ok(())
    }
}

/// Full record of one inequality evaluation: every term of the chain (for
/// theorems with two right-hand variants, both), the margins between
/// consecutive terms, and the verdict for the chosen variant.
///
/// Margins follow the convention `later term - earlier term`, so a chain
/// holds exactly when all of its margins are `>= -tol_used`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub theorem: TheoremId,
    pub inputs: CellInputs,
    pub variant: BoundVariant,
    pub terms: Vec<Term>,
    pub margins: Vec<Term>,
    pub verdict: Verdict,
    pub tol_used: f64,
    /// Sampled nonnegativity of `f` where the theorem asks for a positive
    /// function; recorded, never enforced.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positive_on_domain: Option<bool>,
}

impl InequalityReport {
    pub fn term(&self, name: &str) -> Option<f64> {
        self.terms.iter().find(|t| t.name == name).map(|t| t.value)
    }

    pub fn margin(&self, name: &str) -> Option<f64> {
        self.margins.iter().find(|t| t.name == name).map(|t| t.value)
    }

    /// The margins the verdict was computed from: all margins except the
    /// ones belonging to the variant *not* chosen.
    pub fn verdict_margins(&self) -> Vec<&Term> {
        let other = match self.variant {
            BoundVariant::AsStated => "proof_consistent",
            BoundVariant::ProofConsistent => "as_stated",
        };
        self.margins.iter().filter(|m| !m.name.contains(other)).collect()
    }

    /// Smallest margin among the verdict-relevant ones.
    pub fn min_margin(&self) -> f64 {
        self.verdict_margins()
            .iter()
            .map(|t| t.value)
            .fold(f64::INFINITY, f64::min)
    }
}

/// `tol = scale * max(1, |terms|_inf)`: verdicts are scale-aware so that
/// intervals of very different magnitude are judged consistently.
pub(crate) fn verdict_tol(scale: f64, terms: &[Term]) -> f64 {
    let linf = terms.iter().map(|t| t.value.abs()).fold(0.0, f64::max);
    scale * linf.max(1.0)
}

pub(crate) fn verdict_from_margins(margins: &[f64], tol: f64) -> Verdict {
    if margins.iter().any(|&m| m < -tol) {
        Verdict::Violated
    } else if margins.iter().all(|&m| m.abs() <= tol) {
        Verdict::EqualityWithinTol
    } else {
        Verdict::Holds
    }
}
