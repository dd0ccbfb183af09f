//! Acceptance suite: the project's release gates, one test per criterion.
//!
//! Each gate prints `ACCEPTANCE <n> PASS — <claim>` on success (visible with
//! `cargo test --test acceptance -- --nocapture`); a failure panics with the
//! offending values. Tolerances are pinned here, not configurable.

use hhfrac::bounds::{
    evaluate, eval_hh_classical, eval_hh_mconvex_classical, eval_hh_sconvex, eval_kirmaci,
    BoundVariant, EvalCtx, TheoremId, Verdict,
};
use hhfrac::fracint::{rl_left, rl_right, FracOrder, Interval};
use hhfrac::funcspec::FuncSpec;
use hhfrac::quadrature::{integrate, Tolerance};
use hhfrac::specfun::{beta, gamma, inc_beta, PositiveReal};
use hhfrac::sweep::{run_sweep, sharpness_search, SharpnessQuery, SweepConfig, SweepReport};
use std::sync::OnceLock;
use std::time::Instant;

fn pr(v: f64) -> PositiveReal {
    PositiveReal::new(v).unwrap()
}

fn ord(alpha: f64) -> FracOrder {
    FracOrder::new(alpha).unwrap()
}

fn iv(a: f64, b: f64) -> Interval {
    Interval::new(a, b).unwrap()
}

/// One full default sweep shared by the gates that inspect it.
fn default_sweep() -> &'static SweepReport {
    static SWEEP: OnceLock<SweepReport> = OnceLock::new();
    SWEEP.get_or_init(|| run_sweep(&SweepConfig::default()).expect("default sweep runs"))
}

#[test]
fn criterion_1_rl_power_rule() {
    let started = Instant::now();
    let tol = Tolerance::default();
    let mut cases = 0;
    for &p in &[0.0, 1.0, 2.0, 3.0] {
        for &alpha in &[0.5, 1.0, 1.5, 2.0] {
            for &x in &[0.5, 1.0, 2.0] {
                let got = rl_left(|t| t.powf(p), 0.0, ord(alpha), x, &tol).unwrap();
                let want = gamma(pr(p + 1.0)) / gamma(pr(p + alpha + 1.0)) * x.powf(p + alpha);
                let rel = ((got - want) / want).abs();
                assert!(
                    rel <= 1e-8,
                    "power rule off at p={p} alpha={alpha} x={x}: rel err {rel}"
                );
                cases += 1;
            }
        }
    }
    assert_eq!(cases, 48);
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}, budget 5 s");
    println!(
        "ACCEPTANCE 1 PASS — RL power rule within 1e-8 relative on 48 cases ({:.2} s)",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_2_classical_reduction_at_order_one() {
    let tol = Tolerance::default();
    let config = SweepConfig::default();
    let mut cells = 0;
    for spec in &config.functions {
        let f = FuncSpec::parse(spec).unwrap();
        for &interval in &config.intervals {
            if !f.covers(interval) {
                continue;
            }
            let (a, b) = (interval.a(), interval.b());
            let plain = integrate(|x| f.eval(x), a, b, &tol).unwrap().value;
            let left = rl_left(|x| f.eval(x), a, ord(1.0), b, &tol).unwrap();
            let right = rl_right(|x| f.eval(x), b, ord(1.0), a, &tol).unwrap();
            assert!(
                (left - plain).abs() <= 1e-10,
                "{spec} on {interval}: J_a+ {left} vs plain {plain}"
            );
            assert!(
                (right - plain).abs() <= 1e-10,
                "{spec} on {interval}: J_b- {right} vs plain {plain}"
            );
            cells += 1;
        }
    }
    println!(
        "ACCEPTANCE 2 PASS — both RL operators reduce to the plain integral within 1e-10 \
         on {cells} corpus cells"
    );
}

#[test]
fn criterion_3_lemma_identity_across_the_grid() {
    let started = Instant::now();
    let config = SweepConfig {
        theorems: vec![TheoremId::L1],
        ..SweepConfig::default()
    };
    let report = run_sweep(&config).unwrap();
    assert!(
        report.stats.cells_evaluated >= 100,
        "only {} identity cells",
        report.stats.cells_evaluated
    );
    for r in &report.reports {
        let resid = r.margin("residual").unwrap().abs();
        assert!(resid <= 1e-9, "residual {resid} at {}", r.inputs);
        assert_eq!(r.verdict, Verdict::EqualityWithinTol, "at {}", r.inputs);
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}, budget 30 s");
    println!(
        "ACCEPTANCE 3 PASS — trapezoid identity residual <= 1e-9 on {} cells ({:.2} s)",
        report.stats.cells_evaluated,
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_4_remark_reductions() {
    let ctx = EvalCtx::default();
    let intervals = [iv(0.0, 1.0), iv(0.5, 2.0)];
    let mut compared = 0;

    // fractional s-convex chain at order 1 == classical s-convex chain
    let s_pairs: [(&str, &[f64]); 3] = [
        ("quadratic:0,0,1", &[0.1, 0.25, 0.5, 0.75, 0.9]),
        ("exp:1", &[0.1, 0.25, 0.5, 0.75, 0.9]),
        ("power:0.5", &[0.1, 0.25, 0.5]),
    ];
    for (spec, s_grid) in s_pairs {
        let f = FuncSpec::parse(spec).unwrap();
        for &interval in &intervals {
            for &s in s_grid {
                let frac = evaluate(
                    TheoremId::T1,
                    BoundVariant::AsStated,
                    &f,
                    interval,
                    Some(1.0),
                    Some(s),
                    None,
                    None,
                    &ctx,
                )
                .unwrap();
                let classical = eval_hh_sconvex(&f, interval, s, &ctx).unwrap();
                for (frac_name, classical_name) in [
                    ("lhs", "lhs"),
                    ("mid", "mid"),
                    ("rhs_as_stated", "rhs"),
                    ("rhs_proof_consistent", "rhs"),
                ] {
                    let a = frac.term(frac_name).unwrap();
                    let b = classical.term(classical_name).unwrap();
                    assert!(
                        (a - b).abs() <= 1e-9,
                        "{spec} {interval} s={s}: {frac_name} {a} vs {classical_name} {b}"
                    );
                }
                compared += 1;
            }
        }
    }

    // fractional trapezoid bound at order 1 == classical trapezoid bound
    for spec in ["quadratic:0,0,1", "power:2", "exp:1", "affine:1,2"] {
        let f = FuncSpec::parse(spec).unwrap();
        for &interval in &intervals {
            for &s in &[0.1, 0.5, 0.9] {
                for &q in &[1.0, 1.5, 2.0, 3.0] {
                    let frac = evaluate(
                        TheoremId::T2,
                        BoundVariant::ProofConsistent,
                        &f,
                        interval,
                        Some(1.0),
                        Some(s),
                        None,
                        Some(q),
                        &ctx,
                    )
                    .unwrap();
                    let classical = eval_kirmaci(&f, interval, s, q, &ctx).unwrap();
                    let dl = (frac.term("lhs").unwrap() - classical.term("lhs").unwrap()).abs();
                    let dr = (frac.term("rhs_proof_consistent").unwrap()
                        - classical.term("rhs").unwrap())
                    .abs();
                    assert!(dl <= 1e-9, "{spec} {interval} s={s} q={q}: lhs diff {dl}");
                    assert!(dr <= 1e-9, "{spec} {interval} s={s} q={q}: rhs diff {dr}");
                    compared += 1;
                }
            }
        }
    }

    // classical m-convex chain at m = 1 == classical chain
    for spec in ["quadratic:0,0,1", "power:2", "exp:1", "affine:0,1", "poly:0,1,1"] {
        let f = FuncSpec::parse(spec).unwrap();
        for &interval in &intervals {
            let kk = eval_hh_mconvex_classical(&f, interval, 1.0, &ctx).unwrap();
            let e1 = eval_hh_classical(&f, interval, &ctx).unwrap();
            for name in ["lhs", "mid", "rhs"] {
                let a = kk.term(name).unwrap();
                let b = e1.term(name).unwrap();
                assert!((a - b).abs() <= 1e-9, "{spec} {interval}: {name} {a} vs {b}");
            }
            compared += 1;
        }
    }

    println!(
        "ACCEPTANCE 4 PASS — order-1 and m=1 reductions agree term-by-term within 1e-9 \
         ({compared} comparisons)"
    );
}

#[test]
fn criterion_5_proof_consistent_bounds_hold_across_the_sweep() {
    let report = default_sweep();
    let audited = [
        TheoremId::T1,
        TheoremId::T2,
        TheoremId::H1,
        TheoremId::Kk,
        TheoremId::H2,
    ];
    let mut evaluated = 0;
    for summary in &report.summary {
        if !audited.contains(&summary.theorem) {
            continue;
        }
        // For kk and h2 the printed and proved forms coincide, recorded
        // under the as-stated label; for the others audit the
        // proof-consistent variant.
        let relevant = if summary.theorem.has_variants() {
            summary.variant == BoundVariant::ProofConsistent
        } else {
            true
        };
        if !relevant {
            continue;
        }
        assert_eq!(
            summary.violated, 0,
            "{} [{}] has violations: {:?}",
            summary.theorem, summary.variant, summary.worst_margin
        );
        evaluated += summary.evaluated;
    }
    // And every relevant report's margins clear the scale-aware floor.
    for r in &report.reports {
        if !audited.contains(&r.theorem) {
            continue;
        }
        if r.theorem.has_variants() && r.variant != BoundVariant::ProofConsistent {
            continue;
        }
        assert!(
            r.min_margin() >= -r.tol_used,
            "margin {} below -{} at {} ({})",
            r.min_margin(),
            r.tol_used,
            r.inputs,
            r.theorem
        );
    }
    assert!(evaluated > 0);
    println!(
        "ACCEPTANCE 5 PASS — proof-consistent bounds hold with zero violations across \
         {evaluated} certified sweep cells"
    );
}

#[test]
fn criterion_6_printed_bound_falsification_reproduces() {
    // The pinned counterexample cell.
    let f = FuncSpec::parse("affine:0,1").unwrap();
    let report = evaluate(
        TheoremId::T1,
        BoundVariant::AsStated,
        &f,
        iv(0.0, 1.0),
        Some(2.0),
        Some(1.0),
        None,
        None,
        &EvalCtx::default(),
    )
    .unwrap();
    let mid = report.term("mid").unwrap();
    let rhs = report.term("rhs_as_stated").unwrap();
    let margin = report.margin("mid_rhs_as_stated").unwrap();
    assert!((mid - 0.5).abs() <= 1e-9, "mid {mid}");
    assert!((rhs - 0.25).abs() <= 1e-9, "rhs {rhs}");
    assert!((margin + 0.25).abs() <= 1e-9, "margin {margin}");
    assert_eq!(report.verdict, Verdict::Violated);

    // And the default sweep independently records printed-bound violations
    // for this theorem at orders above 1.
    let sweep = default_sweep();
    let in_sweep = sweep
        .reports
        .iter()
        .filter(|r| {
            r.theorem == TheoremId::T1
                && r.variant == BoundVariant::AsStated
                && r.verdict == Verdict::Violated
                && r.inputs.alpha.is_some_and(|a| a > 1.0)
        })
        .count();
    assert!(in_sweep >= 1, "sweep found no printed-bound violations at alpha > 1");
    println!(
        "ACCEPTANCE 6 PASS — printed bound falsified: mid 0.5 vs rhs 0.25 at the pinned cell; \
         {in_sweep} sweep violations at alpha > 1"
    );
}

#[test]
fn criterion_7_endpoint_constant_is_sharp() {
    for &s in &[0.25, 0.5, 0.75] {
        let query = SharpnessQuery {
            s_grid: vec![s],
            ..SharpnessQuery::new(TheoremId::E13, "power:s", iv(0.0, 1.0))
        };
        let record = sharpness_search(&query, &EvalCtx::default()).unwrap();
        assert_eq!(record.evaluated, 1);
        assert!(
            record.min_margin.abs() <= 1e-9,
            "s={s}: margin {} not at the sharp constant",
            record.min_margin
        );
    }
    println!(
        "ACCEPTANCE 7 PASS — endpoint constant attained within 1e-9 by x^s at s in {{0.25, 0.5, 0.75}}"
    );
}

#[test]
fn criterion_8_proof_internal_constants() {
    let quad_tol = Tolerance {
        abs_tol: 1e-12,
        rel_tol: 1e-12,
        max_evals: 200_000,
    };
    for &alpha in &SweepConfig::default().alpha_grid {
        let got = integrate(
            |t: f64| ((1.0 - t).powf(alpha) - t.powf(alpha)).abs(),
            0.0,
            1.0,
            &quad_tol,
        )
        .unwrap()
        .value;
        let want = 2.0 / (alpha + 1.0) * (1.0 - 0.5f64.powf(alpha));
        assert!(
            (got - want).abs() <= 1e-10,
            "kernel mass at alpha={alpha}: {got} vs {want}"
        );
    }

    let n = 20;
    for i in 0..n {
        let x = i as f64 / (n - 1) as f64;
        for j in 0..n {
            let p = 0.3 + 3.5 * j as f64 / (n - 1) as f64;
            for k in 0..n {
                let q = 0.3 + 3.5 * k as f64 / (n - 1) as f64;
                let lhs =
                    inc_beta(x, pr(p), pr(q)).unwrap() + inc_beta(1.0 - x, pr(q), pr(p)).unwrap();
                let rhs = beta(pr(p), pr(q));
                assert!(
                    (lhs - rhs).abs() <= 1e-12 * rhs.max(1.0),
                    "reflection off at x={x} p={p} q={q}: {lhs} vs {rhs}"
                );
            }
        }
    }
    println!(
        "ACCEPTANCE 8 PASS — kernel-mass constant within 1e-10 on the alpha grid; \
         incomplete-beta reflection within 1e-12 on a 20x20x20 grid"
    );
}

#[test]
fn criterion_9_sweep_json_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    std::fs::write(&config, "{}").unwrap();
    let out1 = dir.path().join("a.json");
    let out2 = dir.path().join("b.json");
    for out in [&out1, &out2] {
        let status = std::process::Command::new(env!("CARGO_BIN_EXE_hhfrac"))
            .args([
                "sweep",
                "--config",
                config.to_str().unwrap(),
                "--out",
                out.to_str().unwrap(),
            ])
            .status()
            .unwrap();
        assert!(status.success());
    }
    let a = std::fs::read(&out1).unwrap();
    let b = std::fs::read(&out2).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b, "repeated sweeps must serialize identically");
    println!(
        "ACCEPTANCE 9 PASS — repeated default sweeps produce byte-identical JSON ({} bytes)",
        a.len()
    );
}
