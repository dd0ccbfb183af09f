//! Configuration-driven sweeps over theorems × functions × parameter grids,
//! plus the sharpness search.
//!
//! A sweep enumerates its grid cells in a fixed canonical order
//! (theorem → variant → function → interval → alpha → s → m → q), resolves
//! each cell's preconditions through the family labels (falling back to the
//! empirical certifier where the labels are silent), evaluates the admissible
//! cells — in parallel if a rayon pool is installed — and aggregates in the
//! canonical order. Two runs with the same config produce byte-identical
//! JSON; parallel and serial runs agree because cells are independent and
//! the reduction order is fixed.

use crate::bounds::{
    evaluate, theorem_params, BoundVariant, CellInputs, EvalCtx, InequalityReport, TheoremId,
    Verdict,
};
use crate::convexity::{self, DEFAULT_GRID_N, RANDOM_SAMPLES};
use crate::error::{Error, Result};
use crate::fracint::Interval;
use crate::funcspec::{ClassKnowledge, FuncSpec};
use crate::quadrature::Tolerance;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::io::Write;

fn default_theorems() -> Vec<TheoremId> {
    TheoremId::ALL.to_vec()
}

/// A corpus spanning the certified classes: powers on both sides of the
/// convex/concave divide, quadratics with and without a sign change, lines
/// through and off the origin, an exponential, and an unlabelled polynomial
/// that exercises the runtime certifier.
fn default_functions() -> Vec<String> {
    [
        "power:0.5",
        "power:1.5",
        "power:2",
        "power:3",
        "quadratic:0,0,1",
        "quadratic:-1,0,1",
        "affine:0,1",
        "affine:1,2",
        "exp:1",
        "poly:0,1,1",
    ]
    .map(str::to_string)
    .to_vec()
}

fn default_alpha_grid() -> Vec<f64> {
    vec![0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0]
}

fn default_s_grid() -> Vec<f64> {
    vec![0.1, 0.25, 0.5, 0.75, 0.9]
}

fn default_m_grid() -> Vec<f64> {
    vec![0.25, 0.5, 0.75, 1.0]
}

fn default_q_grid() -> Vec<f64> {
    vec![1.0, 1.5, 2.0, 3.0]
}

fn default_intervals() -> Vec<Interval> {
    vec![
        Interval::new(0.0, 1.0).unwrap(),
        Interval::new(0.5, 2.0).unwrap(),
        Interval::new(1.0, 3.0).unwrap(),
    ]
}

fn default_variants() -> Vec<BoundVariant> {
    vec![BoundVariant::AsStated, BoundVariant::ProofConsistent]
}

/// Sweep configuration. Every field has a default, so `{}` is a valid
/// config; explicitly empty grids are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default = "default_theorems")]
    pub theorems: Vec<TheoremId>,
    #[serde(default = "default_functions")]
    pub functions: Vec<String>,
    #[serde(default = "default_alpha_grid")]
    pub alpha_grid: Vec<f64>,
    #[serde(default = "default_s_grid")]
    pub s_grid: Vec<f64>,
    #[serde(default = "default_m_grid")]
    pub m_grid: Vec<f64>,
    #[serde(default = "default_q_grid")]
    pub q_grid: Vec<f64>,
    #[serde(default = "default_intervals")]
    pub intervals: Vec<Interval>,
    #[serde(default = "default_variants")]
    pub variants: Vec<BoundVariant>,
    #[serde(default)]
    pub seed: u64,
    /// Override of the quadrature tolerance used inside the evaluators.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quad_tol: Option<Tolerance>,
    /// Override of the verdict tolerance scale (default 1e-8).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict_tol_scale: Option<f64>,
    /// Default output paths; CLI flags take precedence.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<String>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            theorems: default_theorems(),
            functions: default_functions(),
            alpha_grid: default_alpha_grid(),
            s_grid: default_s_grid(),
            m_grid: default_m_grid(),
            q_grid: default_q_grid(),
            intervals: default_intervals(),
            variants: default_variants(),
            seed: 0,
            quad_tol: None,
            verdict_tol_scale: None,
            out: None,
            csv: None,
        }
    }
}

impl SweepConfig {
    pub fn from_json(json: &str) -> Result<Self> {
        let config: SweepConfig =
            serde_json::from_str(json).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let non_empty: [(&str, bool); 8] = [
            ("theorems", self.theorems.is_empty()),
            ("functions", self.functions.is_empty()),
            ("alpha_grid", self.alpha_grid.is_empty()),
            ("s_grid", self.s_grid.is_empty()),
            ("m_grid", self.m_grid.is_empty()),
            ("q_grid", self.q_grid.is_empty()),
            ("intervals", self.intervals.is_empty()),
            ("variants", self.variants.is_empty()),
        ];
        for (name, empty) in non_empty {
            if empty {
                return Err(Error::Config(format!("`{name}` must not be empty")));
            }
        }
        for &alpha in &self.alpha_grid {
            if !(alpha > 0.0 && alpha.is_finite()) {
                return Err(Error::Config(format!("alpha_grid entries must be > 0, got {alpha}")));
            }
        }
        for &s in &self.s_grid {
            // The default grids keep s strictly inside (0, 1); s = 1 is
            // admitted for reduction-style sweeps, where the s-convex
            // chains collapse to their classical forms.
            if !(s > 0.0 && s <= 1.0) {
                return Err(Error::Config(format!("s_grid entries must lie in (0, 1], got {s}")));
            }
        }
        for &m in &self.m_grid {
            if !(m > 0.0 && m <= 1.0) {
                return Err(Error::Config(format!("m_grid entries must lie in (0, 1], got {m}")));
            }
        }
        for &q in &self.q_grid {
            if !(q >= 1.0 && q.is_finite()) {
                return Err(Error::Config(format!("q_grid entries must be >= 1, got {q}")));
            }
        }
        for f in &self.functions {
            FuncSpec::parse(f)?;
        }
        if let Some(t) = &self.quad_tol {
            t.validate()?;
        }
        if let Some(scale) = self.verdict_tol_scale {
            if !(scale > 0.0 && scale.is_finite()) {
                return Err(Error::Config(format!(
                    "verdict_tol_scale must be > 0, got {scale}"
                )));
            }
        }
        Ok(())
    }

    pub fn eval_ctx(&self) -> EvalCtx {
        let mut ctx = EvalCtx::default();
        if let Some(t) = self.quad_tol {
            ctx.quad_tol = t;
        }
        if let Some(scale) = self.verdict_tol_scale {
            ctx.verdict_tol_scale = scale;
        }
        ctx
    }
}

/// A cell whose preconditions failed, with the reason it was not evaluated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedCell {
    pub theorem: TheoremId,
    pub variant: BoundVariant,
    pub cell: CellInputs,
    pub reason: String,
}

/// Worst (most negative) margin seen for one (theorem, variant), with the
/// margin's name and the cell it occurred in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorstMargin {
    pub value: f64,
    pub margin: String,
    pub cell: CellInputs,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremSummary {
    pub theorem: TheoremId,
    pub variant: BoundVariant,
    pub evaluated: usize,
    pub holds: usize,
    pub violated: usize,
    pub equality: usize,
    pub skipped: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub worst_margin: Option<WorstMargin>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepStats {
    pub cells_planned: usize,
    pub cells_evaluated: usize,
    pub cells_skipped: usize,
    pub certifications_run: usize,
}

/// Complete outcome of a sweep: the echoed config, per-(theorem, variant)
/// summaries, skip log, and every per-cell report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub summary: Vec<TheoremSummary>,
    pub stats: SweepStats,
    pub skipped: Vec<SkippedCell>,
    pub reports: Vec<InequalityReport>,
}

#[derive(Debug, Clone)]
struct PendingCell {
    theorem: TheoremId,
    variant: BoundVariant,
    f_idx: usize,
    iv: Interval,
    alpha: Option<f64>,
    s: Option<f64>,
    m: Option<f64>,
    q: Option<f64>,
}

impl PendingCell {
    fn cell_inputs(&self, funcs: &[FuncSpec]) -> CellInputs {
        let mut c = CellInputs::new(funcs[self.f_idx].spec_str(), self.iv.a(), self.iv.b());
        c.alpha = self.alpha;
        c.s = self.s;
        c.m = self.m;
        c.q = self.q;
        c
    }
}

fn enumerate_cells(config: &SweepConfig) -> Vec<PendingCell> {
    let mut cells = Vec::new();
    let opt = |grid: &[f64], used: bool| -> Vec<Option<f64>> {
        if used {
            grid.iter().copied().map(Some).collect()
        } else {
            vec![None]
        }
    };
    for &theorem in &config.theorems {
        let variants: Vec<BoundVariant> = if theorem.has_variants() {
            config.variants.clone()
        } else {
            vec![BoundVariant::AsStated]
        };
        let (use_alpha, use_s, use_m, use_q) = theorem_params(theorem);
        for &variant in &variants {
            for f_idx in 0..config.functions.len() {
                for &iv in &config.intervals {
                    for &alpha in &opt(&config.alpha_grid, use_alpha) {
                        for &s in &opt(&config.s_grid, use_s) {
                            for &m in &opt(&config.m_grid, use_m) {
                                for &q in &opt(&config.q_grid, use_q) {
                                    cells.push(PendingCell {
                                        theorem,
                                        variant,
                                        f_idx,
                                        iv,
                                        alpha,
                                        s,
                                        m,
                                        q,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    cells
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum CertKey {
    Convex(usize, u64, u64),
    SConvex(usize, u64, u64, u64),
    MConvex(usize, u64, u64),
    DerivSConvex(usize, u64, u64, u64, u64),
}

/// Resolve whether cell preconditions admit evaluation. `Ok(None)` means
/// admissible; `Ok(Some(reason))` means skip.
struct Gatekeeper<'c> {
    funcs: &'c [FuncSpec],
    seed: u64,
    cache: HashMap<CertKey, Option<String>>,
    certifications: usize,
}

impl<'c> Gatekeeper<'c> {
    fn new(funcs: &'c [FuncSpec], seed: u64) -> Self {
        Gatekeeper {
            funcs,
            seed,
            cache: HashMap::new(),
            certifications: 0,
        }
    }

    fn check(&mut self, cell: &PendingCell) -> Option<String> {
        let f = &self.funcs[cell.f_idx];
        let iv = cell.iv;
        if !f.covers(iv) {
            return Some(format!("{} is not defined on all of {iv}", f.spec_str()));
        }
        match cell.theorem {
            TheoremId::E1 => self.gate_convex(cell.f_idx, iv),
            TheoremId::E13 | TheoremId::T1 => {
                if iv.a() < 0.0 {
                    return Some(format!("interval {iv} reaches below zero"));
                }
                self.gate_s_convex(cell.f_idx, cell.s.unwrap(), iv)
            }
            TheoremId::E14 | TheoremId::T2 => {
                if iv.a() < 0.0 {
                    return Some(format!("interval {iv} reaches below zero"));
                }
                if !f.has_derivative_on(iv) {
                    return Some(format!("{} has no usable derivative on {iv}", f.spec_str()));
                }
                self.gate_deriv_s_convex(cell.f_idx, cell.q.unwrap(), cell.s.unwrap(), iv)
            }
            TheoremId::L1 => {
                if !f.has_derivative_on(iv) {
                    return Some(format!("{} has no usable derivative on {iv}", f.spec_str()));
                }
                None
            }
            TheoremId::H1 | TheoremId::Kk => {
                if iv.a() < 0.0 {
                    return Some(format!("interval {iv} reaches below zero"));
                }
                let m = cell.m.unwrap();
                let upper = iv.b() / m;
                let span = Interval::new(m * iv.a(), upper).expect("m²a < b");
                if !f.covers(span) {
                    return Some(format!(
                        "{} is not defined on [{}, {}] (needs f(b/m))",
                        f.spec_str(),
                        span.a(),
                        span.b()
                    ));
                }
                self.gate_m_convex(cell.f_idx, m, upper)
            }
            TheoremId::H2 => {
                if iv.a() < 0.0 {
                    return Some(format!("interval {iv} reaches below zero"));
                }
                let m = cell.m.unwrap();
                let span = Interval::new(m * iv.a(), iv.b()).expect("ma < b");
                if !f.covers(span) {
                    return Some(format!(
                        "{} is not defined on [{}, {}]",
                        f.spec_str(),
                        span.a(),
                        span.b()
                    ));
                }
                self.gate_m_convex(cell.f_idx, m, iv.b())
            }
        }
    }

    fn gate_convex(&mut self, f_idx: usize, iv: Interval) -> Option<String> {
        let key = CertKey::Convex(f_idx, iv.a().to_bits(), iv.b().to_bits());
        if let Some(hit) = self.cache.get(&key) {
            return hit.clone();
        }
        let f = &self.funcs[f_idx];
        let out = match f.known_convex_on(iv) {
            ClassKnowledge::Yes => None,
            ClassKnowledge::No => Some(format!("{} is not convex on {iv}", f.spec_str())),
            ClassKnowledge::Unknown => {
                self.certifications += 1;
                let v = convexity::check_convex(f, iv, DEFAULT_GRID_N, self.seed)
                    .expect("gates already validated the domain");
                if v.holds {
                    None
                } else {
                    Some(format!(
                        "{} is not convex on {iv} (certifier witness at x={}, y={}, t={})",
                        f.spec_str(),
                        v.witness.unwrap().x,
                        v.witness.unwrap().y,
                        v.witness.unwrap().t
                    ))
                }
            }
        };
        self.cache.insert(key, out.clone());
        out
    }

    fn gate_s_convex(&mut self, f_idx: usize, s: f64, iv: Interval) -> Option<String> {
        let key = CertKey::SConvex(f_idx, s.to_bits(), iv.a().to_bits(), iv.b().to_bits());
        if let Some(hit) = self.cache.get(&key) {
            return hit.clone();
        }
        let f = &self.funcs[f_idx];
        let out = match f.known_s_convex_on(s, iv) {
            ClassKnowledge::Yes => None,
            ClassKnowledge::No => Some(format!(
                "{} is not s-convex (s={s}) on {iv}",
                f.spec_str()
            )),
            ClassKnowledge::Unknown => {
                self.certifications += 1;
                let v = convexity::check_s_convex(f, s, iv, DEFAULT_GRID_N, self.seed)
                    .expect("gates already validated the domain");
                if v.holds {
                    None
                } else {
                    Some(format!(
                        "{} failed s-convexity certification (s={s}) on {iv}",
                        f.spec_str()
                    ))
                }
            }
        };
        self.cache.insert(key, out.clone());
        out
    }

    fn gate_m_convex(&mut self, f_idx: usize, m: f64, upper: f64) -> Option<String> {
        let key = CertKey::MConvex(f_idx, m.to_bits(), upper.to_bits());
        if let Some(hit) = self.cache.get(&key) {
            return hit.clone();
        }
        let f = &self.funcs[f_idx];
        let out = match f.known_m_convex_on(m, upper) {
            ClassKnowledge::Yes => None,
            ClassKnowledge::No => Some(format!(
                "{} is not m-convex (m={m}) on [0, {upper}]",
                f.spec_str()
            )),
            ClassKnowledge::Unknown => {
                self.certifications += 1;
                let iv = Interval::new(0.0, upper).expect("upper > 0");
                let g = |x: f64| f.eval(x);
                let v = convexity::falsify_m_convex_fn(
                    &g,
                    m,
                    iv,
                    DEFAULT_GRID_N,
                    RANDOM_SAMPLES,
                    self.seed,
                );
                if v.holds {
                    None
                } else {
                    Some(format!(
                        "{} failed m-convexity certification (m={m}) on [0, {upper}]",
                        f.spec_str()
                    ))
                }
            }
        };
        self.cache.insert(key, out.clone());
        out
    }

    fn gate_deriv_s_convex(&mut self, f_idx: usize, q: f64, s: f64, iv: Interval) -> Option<String> {
        let key = CertKey::DerivSConvex(
            f_idx,
            q.to_bits(),
            s.to_bits(),
            iv.a().to_bits(),
            iv.b().to_bits(),
        );
        if let Some(hit) = self.cache.get(&key) {
            return hit.clone();
        }
        let f = &self.funcs[f_idx];
        let out = match f.known_deriv_q_s_convex_on(q, s, iv) {
            ClassKnowledge::Yes => None,
            ClassKnowledge::No => Some(format!(
                "|{}'|^{q} is not s-convex (s={s}) on {iv}",
                f.spec_str()
            )),
            ClassKnowledge::Unknown => {
                self.certifications += 1;
                let g = |x: f64| f.deriv(x).abs().powf(q);
                let v = convexity::falsify_s_convex_fn(
                    &g,
                    s,
                    iv,
                    DEFAULT_GRID_N,
                    RANDOM_SAMPLES,
                    self.seed,
                );
                if v.holds {
                    None
                } else {
                    Some(format!(
                        "|{}'|^{q} failed s-convexity certification (s={s}) on {iv}",
                        f.spec_str()
                    ))
                }
            }
        };
        self.cache.insert(key, out.clone());
        out
    }
}

/// Run the full sweep described by `config`.
///
/// Deterministic given the config (grids, corpus, seed); cells are
/// independent, so an installed rayon pool changes only the wall time,
/// never the report.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    config.validate()?;
    let funcs: Vec<FuncSpec> = config
        .functions
        .iter()
        .map(|s| FuncSpec::parse(s))
        .collect::<Result<_>>()?;
    let ctx = config.eval_ctx();

    let cells = enumerate_cells(config);
    let cells_planned = cells.len();

    // Serial gate pass: label lookups plus (cached) empirical certification.
    let mut gate = Gatekeeper::new(&funcs, config.seed);
    let mut ready: Vec<PendingCell> = Vec::new();
    let mut skipped: Vec<SkippedCell> = Vec::new();
    for cell in cells {
        match gate.check(&cell) {
            None => ready.push(cell),
            Some(reason) => skipped.push(SkippedCell {
                theorem: cell.theorem,
                variant: cell.variant,
                cell: cell.cell_inputs(&funcs),
                reason,
            }),
        }
    }
    let certifications_run = gate.certifications;

    // Parallel evaluation in canonical order.
    let outcomes: Vec<std::result::Result<InequalityReport, Box<SkippedCell>>> = ready
        .par_iter()
        .map(|cell| {
            evaluate(
                cell.theorem,
                cell.variant,
                &funcs[cell.f_idx],
                cell.iv,
                cell.alpha,
                cell.s,
                cell.m,
                cell.q,
                &ctx,
            )
            .map_err(|e| {
                Box::new(SkippedCell {
                    theorem: cell.theorem,
                    variant: cell.variant,
                    cell: cell.cell_inputs(&funcs),
                    reason: format!("evaluation error: {e}"),
                })
            })
        })
        .collect();

    let mut reports = Vec::with_capacity(outcomes.len());
    for outcome in outcomes {
        match outcome {
            Ok(report) => reports.push(report),
            Err(skip) => skipped.push(*skip),
        }
    }

    let summary = summarize(config, &reports, &skipped);
    let stats = SweepStats {
        cells_planned,
        cells_evaluated: reports.len(),
        cells_skipped: skipped.len(),
        certifications_run,
    };
    Ok(SweepReport {
        config: config.clone(),
        summary,
        stats,
        skipped,
        reports,
    })
}

fn summarize(
    config: &SweepConfig,
    reports: &[InequalityReport],
    skipped: &[SkippedCell],
) -> Vec<TheoremSummary> {
    let mut out = Vec::new();
    for &theorem in &config.theorems {
        let variants: Vec<BoundVariant> = if theorem.has_variants() {
            config.variants.clone()
        } else {
            vec![BoundVariant::AsStated]
        };
        for variant in variants {
            let mut summary = TheoremSummary {
                theorem,
                variant,
                evaluated: 0,
                holds: 0,
                violated: 0,
                equality: 0,
                skipped: skipped
                    .iter()
                    .filter(|s| s.theorem == theorem && s.variant == variant)
                    .count(),
                worst_margin: None,
            };
            for r in reports
                .iter()
                .filter(|r| r.theorem == theorem && r.variant == variant)
            {
                summary.evaluated += 1;
                match r.verdict {
                    Verdict::Holds => summary.holds += 1,
                    Verdict::Violated => summary.violated += 1,
                    Verdict::EqualityWithinTol => summary.equality += 1,
                }
                if let Some(worst) = r
                    .verdict_margins()
                    .iter()
                    .min_by(|a, b| a.value.total_cmp(&b.value))
                {
                    let replace = summary
                        .worst_margin
                        .as_ref()
                        .is_none_or(|w| worst.value < w.value);
                    if replace {
                        summary.worst_margin = Some(WorstMargin {
                            value: worst.value,
                            margin: worst.name.clone(),
                            cell: r.inputs.clone(),
                        });
                    }
                }
            }
            out.push(summary);
        }
    }
    out
}

impl SweepReport {
    /// Compact JSON encoding; byte-identical across runs with the same
    /// config.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }

    pub fn from_json(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Config(e.to_string()))
    }

    /// CSV with one row per (theorem, variant, cell). Columns that do not
    /// apply to a theorem are left empty; `rhs` and the margins are the
    /// chosen variant's.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(
            w,
            "theorem,variant,f,a,b,alpha,s,m,q,lhs,mid,rhs,margin_lhs_mid,margin_mid_rhs,margin,residual,verdict,tol_used"
        )?;
        for r in &self.reports {
            writeln!(w, "{}", csv_row(r))?;
        }
        Ok(())
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x}")).unwrap_or_default()
}

/// RFC-4180 quoting; function specs contain commas.
fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn csv_row(r: &InequalityReport) -> String {
    let variant_suffix = match r.variant {
        BoundVariant::AsStated => "as_stated",
        BoundVariant::ProofConsistent => "proof_consistent",
    };
    let lhs = r.term("lhs").or_else(|| r.term("lhs_identity"));
    let mid = r.term("mid");
    let rhs = r
        .term("rhs")
        .or_else(|| r.term(&format!("rhs_{variant_suffix}")))
        .or_else(|| r.term("rhs_identity"));
    let margin_lhs_mid = r.margin("lhs_mid");
    let margin_mid_rhs = r
        .margin("mid_rhs")
        .or_else(|| r.margin(&format!("mid_rhs_{variant_suffix}")));
    let margin = r
        .margin("margin")
        .or_else(|| r.margin(&format!("margin_{variant_suffix}")));
    let residual = r.margin("residual");
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.theorem,
        r.variant,
        csv_escape(&r.inputs.f),
        r.inputs.a,
        r.inputs.b,
        fmt_opt(r.inputs.alpha),
        fmt_opt(r.inputs.s),
        fmt_opt(r.inputs.m),
        fmt_opt(r.inputs.q),
        fmt_opt(lhs),
        fmt_opt(mid),
        fmt_opt(rhs),
        fmt_opt(margin_lhs_mid),
        fmt_opt(margin_mid_rhs),
        fmt_opt(margin),
        fmt_opt(residual),
        r.verdict,
        r.tol_used,
    )
}

// ---------------------------------------------------------------------
// Sharpness search
// ---------------------------------------------------------------------

/// Query for [`sharpness_search`]: a function family whose arguments may
/// bind sweep variables (`power:s` makes the exponent track the s-grid),
/// an interval, and the grids applicable to the theorem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharpnessQuery {
    pub theorem: TheoremId,
    pub family: String,
    pub interval: Interval,
    #[serde(default = "default_alpha_grid")]
    pub alpha_grid: Vec<f64>,
    #[serde(default = "default_s_grid")]
    pub s_grid: Vec<f64>,
    #[serde(default = "default_m_grid")]
    pub m_grid: Vec<f64>,
    #[serde(default = "default_q_grid")]
    pub q_grid: Vec<f64>,
    #[serde(default = "default_variant")]
    pub variant: BoundVariant,
    #[serde(default)]
    pub seed: u64,
}

fn default_variant() -> BoundVariant {
    BoundVariant::AsStated
}

impl SharpnessQuery {
    /// A query with the default grids; grids the theorem does not consume
    /// are ignored.
    pub fn new(theorem: TheoremId, family: &str, interval: Interval) -> Self {
        SharpnessQuery {
            theorem,
            family: family.to_string(),
            interval,
            alpha_grid: default_alpha_grid(),
            s_grid: default_s_grid(),
            m_grid: default_m_grid(),
            q_grid: default_q_grid(),
            variant: default_variant(),
            seed: 0,
        }
    }
}

/// Result of a sharpness search: the minimal margin against the outermost
/// bound over the grid, and where it was attained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharpnessRecord {
    pub theorem: TheoremId,
    pub variant: BoundVariant,
    pub evaluated: usize,
    pub skipped: usize,
    pub min_margin: f64,
    pub at: CellInputs,
}

/// Substitute bound variables into a family template, e.g. `power:s` with
/// `s = 0.5` becomes `power:0.5`.
fn instantiate_family(
    template: &str,
    alpha: Option<f64>,
    s: Option<f64>,
    m: Option<f64>,
    q: Option<f64>,
) -> Result<FuncSpec> {
    let (body, dom) = match template.split_once('@') {
        None => (template, None),
        Some((b, d)) => (b, Some(d)),
    };
    let (name, args) = body
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("expected `family:args`, got `{template}`")))?;
    let mut parts = Vec::new();
    for arg in args.split(',') {
        let arg = arg.trim();
        let bound = match arg {
            "alpha" => alpha,
            "s" => s,
            "m" => m,
            "q" => q,
            _ => {
                parts.push(arg.to_string());
                continue;
            }
        };
        match bound {
            Some(v) => parts.push(format!("{v}")),
            None => {
                return Err(Error::Parse(format!(
                    "family `{template}` binds `{arg}`, which this theorem does not sweep"
                )))
            }
        }
    }
    let mut spec = format!("{name}:{}", parts.join(","));
    if let Some(d) = dom {
        spec.push('@');
        spec.push_str(d);
    }
    FuncSpec::parse(&spec)
}

/// The margin against the outermost (rhs) bound of the chosen variant.
fn rhs_margin(r: &InequalityReport) -> Result<f64> {
    let suffix = match r.variant {
        BoundVariant::AsStated => "as_stated",
        BoundVariant::ProofConsistent => "proof_consistent",
    };
    r.margin("mid_rhs")
        .or_else(|| r.margin(&format!("mid_rhs_{suffix}")))
        .or_else(|| r.margin("margin"))
        .or_else(|| r.margin(&format!("margin_{suffix}")))
        .ok_or_else(|| {
            Error::Domain(format!("theorem {} has no rhs margin to minimize", r.theorem))
        })
}

/// Scan the applicable grid for the minimal rhs margin of `theorem` with
/// the (possibly parameter-bound) function family.
pub fn sharpness_search(query: &SharpnessQuery, ctx: &EvalCtx) -> Result<SharpnessRecord> {
    if query.theorem.is_identity() {
        return Err(Error::Domain(
            "the identity has no rhs margin; sharpness needs an inequality".into(),
        ));
    }
    let (use_alpha, use_s, use_m, use_q) = theorem_params(query.theorem);
    let opt = |grid: &[f64], used: bool| -> Vec<Option<f64>> {
        if used {
            grid.iter().copied().map(Some).collect()
        } else {
            vec![None]
        }
    };

    let mut best: Option<(f64, CellInputs)> = None;
    let mut evaluated = 0usize;
    let mut skipped = 0usize;

    for &alpha in &opt(&query.alpha_grid, use_alpha) {
        for &s in &opt(&query.s_grid, use_s) {
            for &m in &opt(&query.m_grid, use_m) {
                for &q in &opt(&query.q_grid, use_q) {
                    let f = instantiate_family(&query.family, alpha, s, m, q)?;
                    let mut gate = Gatekeeper::new(std::slice::from_ref(&f), query.seed);
                    let cell = PendingCell {
                        theorem: query.theorem,
                        variant: query.variant,
                        f_idx: 0,
                        iv: query.interval,
                        alpha,
                        s,
                        m,
                        q,
                    };
                    if gate.check(&cell).is_some() {
                        skipped += 1;
                        continue;
                    }
                    let report = match evaluate(
                        query.theorem,
                        query.variant,
                        &f,
                        query.interval,
                        alpha,
                        s,
                        m,
                        q,
                        ctx,
                    ) {
                        Ok(r) => r,
                        Err(_) => {
                            skipped += 1;
                            continue;
                        }
                    };
                    evaluated += 1;
                    let margin = rhs_margin(&report)?;
                    if best.as_ref().is_none_or(|(b, _)| margin < *b) {
                        best = Some((margin, report.inputs.clone()));
                    }
                }
            }
        }
    }

    let (min_margin, at) = best.ok_or_else(|| {
        Error::Domain("sharpness search had no admissible cells".into())
    })?;
    Ok(SharpnessRecord {
        theorem: query.theorem,
        variant: query.variant,
        evaluated,
        skipped,
        min_margin,
        at,
    })
}

#[cfg(test)]
mod tests;
