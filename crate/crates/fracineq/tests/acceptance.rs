//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! Tolerances are pinned in the assertions; run with `--nocapture` to see
//! the per-criterion lines (the test names themselves carry the verdicts
//! either way).

use fracineq::cli::{run_fuzz, FuzzConfig, TheoremSelector, FUZZ_DEFAULT_GRID_N};
use fracineq::convexity::{certify_m_convex, class_defect};
use fracineq::expr::FunctionSpec;
use fracineq::fracint::{rl_left, rl_right, t_moment, FracParams, Orientation, QuadSettings};
use fracineq::rng::SplitMix64;
use fracineq::specfun::gamma;
use fracineq::theorems::{
    check_lemma_1_1, check_thm_1_1, check_thm_1_2, check_thm_2_1, check_thm_2_3,
    run_proof_fact_suite, Status,
};
use std::time::Instant;

#[allow(clippy::excessive_precision)]
const SQRT_PI: f64 = 1.7724538509055160273;

/// Differentiable corpus shared by the identity and reduction criteria.
const CORPUS: [&str; 8] = [
    "x^2",
    "x^3",
    "4*x - x^2",
    "exp(x)",
    "exp(2*x)/(1 + x)",
    "x",
    "1 + x + x^2",
    "x^(3/2)",
];

fn settings() -> QuadSettings {
    QuadSettings::default()
}

#[test]
fn acceptance_1_identity_suite() {
    let start = Instant::now();
    let s = settings();
    let alphas = [0.25, 0.5, 0.75, 1.0, 1.5, 2.0];
    for text in CORPUS {
        let f = FunctionSpec::parse(text).unwrap();
        for &alpha in &alphas {
            let r = check_lemma_1_1(&f, 0.0, 1.0, alpha, &s).unwrap();
            assert!(
                r.margin <= 1e-8,
                "residual {} for f = {text}, alpha = {alpha}",
                r.margin
            );
            assert_eq!(r.status, Status::Verified, "f = {text}, alpha = {alpha}");
        }
    }
    // pinned instance: both sides of (x^2, [0,1], alpha = 1/2) equal 2/15
    let f = FunctionSpec::parse("x^2").unwrap();
    let r = check_lemma_1_1(&f, 0.0, 1.0, 0.5, &s).unwrap();
    assert!((r.lhs - 2.0 / 15.0).abs() <= 1e-9, "lhs = {}", r.lhs);
    assert!((r.rhs - 2.0 / 15.0).abs() <= 1e-9, "rhs = {}", r.rhs);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "identity suite took {elapsed:?}");
    println!("ACCEPTANCE 1 (identity suite, 8 functions x 6 orders, residual <= 1e-8): PASS ({elapsed:?})");
}

#[test]
fn acceptance_2_proof_fact_suite() {
    let start = Instant::now();
    let alphas = [0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0];
    let alpha1s = [0.25, 0.5, 0.75, 1.0];
    let reports = run_proof_fact_suite(&alphas, &alpha1s, &settings()).unwrap();
    let mut off_diagonal_asymmetries = 0;
    for r in &reports {
        let tag = &r.notes[0];
        assert_eq!(r.status, Status::Verified, "{tag}: {r:?}");
        if tag.starts_with("fact=vi ") {
            let sym_note = &r.notes[1];
            if sym_note.contains("informational asymmetry") {
                off_diagonal_asymmetries += 1;
                let value: f64 = sym_note
                    .split_whitespace()
                    .find_map(|w| w.parse().ok())
                    .expect("asymmetry value in note");
                assert!(value > 1e-10, "off-diagonal asymmetry should be nonzero: {sym_note}");
            }
        }
    }
    assert!(off_diagonal_asymmetries > 0, "expected asymmetry reports off the diagonal");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "fact suite took {elapsed:?}");
    println!(
        "ACCEPTANCE 2 (facts i-v, vii at 1e-10; vi diagonal exact, {off_diagonal_asymmetries} informational asymmetries): PASS ({elapsed:?})"
    );
}

#[test]
fn acceptance_3_reduction_coherence() {
    let s = settings();
    let (a, b) = (0.5, 1.5);
    let mut compared = 0;
    for text in CORPUS {
        let f = FunctionSpec::parse(text).unwrap();
        for &m in &[1.0, 0.5] {
            // Thm 2.1 at alpha = 1 against (1.1)
            let t21 = check_thm_2_1(&f, a, b, m, 1.0, &s).unwrap();
            let t11 = check_thm_1_1(&f, a, b, m, &s).unwrap();
            if t21.status == Status::HypothesesUnmet || t11.status == Status::HypothesesUnmet {
                // coherent gating: the shared m-convexity certificate fails
                // for both or positivity fails for 2.1 alone
                assert!(
                    t21.status == Status::HypothesesUnmet,
                    "{text} m={m}: T1_1 unmet but T2_1 proceeded"
                );
            } else {
                assert!(
                    (t21.lhs - t11.lhs).abs() <= 1e-9,
                    "{text} m={m}: lhs {} vs {}",
                    t21.lhs,
                    t11.lhs
                );
                // T1_1's rhs is the min of the two averages; T2_1 reports the
                // binding side, whose rhs at alpha = 1 is that same min
                assert!(
                    (t21.rhs - t11.rhs).abs() <= 1e-9,
                    "{text} m={m}: rhs {} vs {}",
                    t21.rhs,
                    t11.rhs
                );
                compared += 1;
            }

            // Thm 2.3 at alpha = 1 against (1.2): both sides are exactly
            // twice the (1.2) sides
            let t23 = check_thm_2_3(&f, a, b, m, 1.0, &s).unwrap();
            let t12 = check_thm_1_2(&f, a, b, m, &s).unwrap();
            if t23.status != Status::HypothesesUnmet && t12.status != Status::HypothesesUnmet {
                assert!(
                    (t23.lhs / 2.0 - t12.lhs).abs() <= 1e-9,
                    "{text} m={m}: scaled lhs {} vs {}",
                    t23.lhs / 2.0,
                    t12.lhs
                );
                assert!((t23.rhs / 2.0 - t12.rhs).abs() <= 1e-9);
            } else {
                assert_eq!(t23.status, t12.status, "{text} m={m}: gating disagrees");
            }
        }
    }
    assert!(compared >= 6, "too few certified comparisons: {compared}");
    println!("ACCEPTANCE 3 (alpha=1 reductions agree to 1e-9 on {compared} certified corpus cases): PASS");
}

#[test]
fn acceptance_4_closed_form_fractional_integrals() {
    let s = settings();
    let f = FunctionSpec::parse("x^2").unwrap();
    let p = FracParams::new(0.5, 0.0, 1.0).unwrap();
    let v = rl_left(&f, &p, 1.0, &s).unwrap();
    let oracle = 16.0 / (15.0 * SQRT_PI);
    assert!((v - oracle).abs() <= 1e-9, "rl_left = {v}, closed form = {oracle}");

    let mut rng = SplitMix64::new(0xACCE9);
    for trial in 0..20 {
        let c = rng.uniform(0.1, 5.0);
        let a = rng.uniform(0.0, 2.0);
        let b = a + rng.uniform(0.1, 2.0);
        let alpha = rng.uniform(0.1, 2.0);
        let cf = FunctionSpec::parse(&format!("{c}")).unwrap();
        let p = FracParams::new(alpha, a, b).unwrap();
        let got = rl_left(&cf, &p, b, &s).unwrap();
        let expected = c * (b - a).powf(alpha) / gamma(alpha + 1.0).unwrap().value;
        assert!(
            (got - expected).abs() <= 1e-10,
            "trial {trial}: c={c} a={a} b={b} alpha={alpha}: {got} vs {expected}"
        );
    }
    println!("ACCEPTANCE 4 (closed-form RL integrals: 16/(15 sqrt(pi)) +- 1e-9, 20 constant cases +- 1e-10): PASS");
}

#[test]
fn acceptance_5_cross_oracle() {
    let s = settings();
    let mut rng = SplitMix64::new(0xC0550);
    let mut checked = 0;
    while checked < 50 {
        let c1 = rng.uniform(0.0, 3.0);
        let c2 = rng.uniform(0.0, 3.0);
        let p1 = rng.uniform(1.0, 3.0);
        let f = FunctionSpec::parse(&format!("{c1}*x^{p1} + {c2}*x^2")).unwrap();
        let a = rng.uniform(0.0, 1.0);
        let b = a + rng.uniform(0.2, 2.0);
        let m = 1.0 - 0.8 * rng.next_f64();
        if m * b <= a {
            continue;
        }
        let alpha = 0.1 + 1.9 * rng.next_f64();
        // certified instance: the family is convex with f(0) = 0
        let cert = certify_m_convex(&f, b / m, m, 12, 1e-9).unwrap();
        assert!(cert.holds, "family member failed certification: {}", f.source_text);

        let g = gamma(alpha).unwrap().value;
        let upper = FracParams::new(alpha, a, m * b).unwrap();
        let lower = FracParams::new(alpha, m * a, b).unwrap();
        let scale_ab = g * (m * b - a).powf(-alpha);
        let scale_ba = g * (b - m * a).powf(-alpha);
        let pairs = [
            (Orientation::A, scale_ab * rl_left(&f, &upper, m * b, &s).unwrap()),
            (Orientation::B, scale_ab * rl_right(&f, &upper, a, &s).unwrap()),
            (Orientation::C, scale_ba * rl_right(&f, &lower, m * a, &s).unwrap()),
            (Orientation::D, scale_ba * rl_left(&f, &lower, b, &s).unwrap()),
        ];
        for (o, rl_route) in pairs {
            let moment = t_moment(&f, a, b, m, alpha, o, &s).unwrap();
            assert!(
                (moment - rl_route).abs() <= 1e-8,
                "{o:?}: f={} a={a} b={b} m={m} alpha={alpha}: {moment} vs {rl_route}",
                f.source_text
            );
        }
        checked += 1;
    }
    println!("ACCEPTANCE 5 (t_moment vs RL cross-oracle <= 1e-8 on 50 certified instances, all orientations): PASS");
}

#[test]
fn acceptance_6_fuzz_soundness_10k() {
    let start = Instant::now();
    let summary = run_fuzz(&FuzzConfig {
        trials: 10_000,
        seed: 42,
        theorems: TheoremSelector::ALL.to_vec(),
        settings: QuadSettings {
            cert_grid_n: FUZZ_DEFAULT_GRID_N,
            ..QuadSettings::default()
        },
    })
    .unwrap();
    let elapsed = start.elapsed();
    for t in &summary.tallies {
        if matches!(
            t.theorem,
            "HH" | "T1_1" | "T1_2" | "L1_1" | "T2_1" | "T2_2" | "C2_1" | "T2_3"
        ) {
            assert_eq!(
                t.violated, 0,
                "{} reported violations on certified inputs: {t:?}",
                t.theorem
            );
        }
    }
    // any T3 violations must carry their discrepancy note and replay line
    assert_eq!(
        summary.violations_missing_note, 0,
        "violated verdicts missing paper-discrepancy-candidate notes"
    );
    assert_eq!(summary.min_margin.len(), 10);
    for inst in &summary.min_margin {
        assert!(inst.replay.starts_with("fracineq check --theorem"));
    }
    assert!(
        elapsed.as_secs_f64() < 300.0,
        "10k fuzz trials took {elapsed:?}, budget is 5 minutes single-threaded"
    );
    println!(
        "ACCEPTANCE 6 (10,000 seeded trials, zero violated on m-convex theorems, notes intact): PASS ({elapsed:?})"
    );
}

#[test]
fn acceptance_7_hypothesis_gating() {
    let s = settings();
    let xsq = FunctionSpec::parse("x^2").unwrap();
    // |f'| = 2x is increasing, so the defect-bound hypotheses fail
    let r = fracineq::theorems::check_thm_3_2(&xsq, 0.0, 1.0, 1.0, 1.0, 1.0, 1.0, &s).unwrap();
    assert_eq!(r.status, Status::HypothesesUnmet);
    assert_ne!(r.status, Status::Violated);

    // -x^2 fails every m-convexity gate with an independently verified witness
    let neg = FunctionSpec::parse("-x^2").unwrap();
    for m in [1.0, 0.5] {
        let r = check_thm_1_1(&neg, 0.0, 1.0, m, &s).unwrap();
        assert_eq!(r.status, Status::HypothesesUnmet);
        let cert = &r.hypotheses[0].certificate;
        let (x, y, t) = cert.witness.expect("failed certificate carries a witness");
        let defect = class_defect(&neg, m, 1.0, x, y, t).unwrap();
        assert!(
            defect > s.cert_tol,
            "witness defect {defect} does not exceed tolerance"
        );
    }
    println!("ACCEPTANCE 7 (gating: x^2 under T3_2 and -x^2 under T1_1 are hypotheses_unmet with verified witnesses): PASS");
}

#[test]
fn acceptance_8_determinism() {
    let bin = env!("CARGO_BIN_EXE_fracineq");
    let fuzz_args = [
        "fuzz", "--trials", "150", "--seed", "7", "--format", "csv",
    ];
    let sweep_args = [
        "sweep", "--theorem", "T2_2", "--f", "x^2", "--a", "0", "--b", "1", "--m", "1",
        "--alpha", "0.1:1.0:0.1", "--q", "1:2:1",
    ];
    for args in [&fuzz_args[..], &sweep_args[..]] {
        let run = |_: usize| {
            let out = std::process::Command::new(bin)
                .args(args)
                .output()
                .expect("binary runs");
            assert!(out.status.code().is_some());
            out.stdout
        };
        let first = run(0);
        let second = run(1);
        assert_eq!(first, second, "output differs between runs of {args:?}");
        assert!(!first.is_empty());
    }
    println!("ACCEPTANCE 8 (fuzz and sweep reruns are byte-identical): PASS");
}

#[test]
fn acceptance_9_parser_and_derivative() {
    // 50 deterministically generated expressions from the convex family
    // plus random polynomials; central finite differences at 100 points.
    let mut rng = SplitMix64::new(0x9A85E);
    for k in 0..50 {
        let text = if k % 2 == 0 {
            format!(
                "{}*x^{} + {}*x^{} + {}*(exp({}*x) - 1)",
                rng.uniform(0.0, 5.0),
                rng.uniform(1.0, 4.0),
                rng.uniform(0.0, 5.0),
                rng.uniform(1.0, 4.0),
                rng.uniform(0.0, 5.0),
                rng.uniform(0.1, 2.0),
            )
        } else {
            format!(
                "({} + {}*x)*x^{} - {}*x",
                rng.uniform(0.0, 3.0),
                rng.uniform(0.0, 3.0),
                rng.uniform(1.0, 3.0),
                rng.uniform(0.0, 3.0),
            )
        };
        let f = FunctionSpec::parse(&text).unwrap();
        let fp = f.differentiate().unwrap();
        let h = 1e-5;
        for j in 0..100 {
            let x = 0.1 + 1.9 * (j as f64 + rng.next_f64()) / 100.0;
            let fd = (f.evaluate(x + h).unwrap() - f.evaluate(x - h).unwrap()) / (2.0 * h);
            let dv = fp.evaluate(x).unwrap();
            assert!(
                (fd - dv).abs() <= 1e-6 * (1.0 + dv.abs()),
                "f = {text}, x = {x}: fd {fd} vs {dv}"
            );
        }
    }

    // 10-case malformed corpus with exact byte offsets
    let cases: [(&str, usize); 10] = [
        ("", 0),
        ("1 +", 3),
        ("(x", 2),
        ("x^", 2),
        ("foo(x)", 0),
        ("x 2", 2),
        ("exp", 3),
        ("*x", 0),
        ("x + $", 4),
        ("(x + 1", 6),
    ];
    for (text, offset) in cases {
        let err = FunctionSpec::parse(text).unwrap_err();
        assert_eq!(err.offset(), offset, "case `{text}`: {err}");
    }
    println!("ACCEPTANCE 9 (derivative vs finite differences <= 1e-6 on 50 expressions; 10 malformed cases pin byte offsets): PASS");
}
