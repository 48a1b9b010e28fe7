//! Seeded randomized counterexample search.
//!
//! Each trial draws a convex function with f(0) = 0 (so it is an m-convex
//! candidate for every m), a random configuration, and runs every selected
//! checker whose preconditions apply. Hypotheses are certified inside the
//! checkers, so a reported violation always sits on certified inputs.
//! The draw order per trial is fixed; identical (trials, seed, theorems,
//! settings) reproduce the summary byte for byte.

use super::{run_checker, ScalarParams, TheoremSelector};
use crate::expr::{Ast, FunctionSpec};
use crate::fracint::QuadSettings;
use crate::rng::SplitMix64;
use crate::theorems::Status;
use crate::Error;

use serde::Serialize;

/// Coarser certification grid than the library default; 10k-trial runs stay
/// in budget while grid soundness is still backed by the refinement pass.
pub const FUZZ_DEFAULT_GRID_N: usize = 16;

#[derive(Debug, Clone)]
pub struct FuzzConfig {
    pub trials: u64,
    pub seed: u64,
    pub theorems: Vec<TheoremSelector>,
    pub settings: QuadSettings,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremTally {
    pub theorem: &'static str,
    pub verified: u64,
    pub violated: u64,
    pub hypotheses_unmet: u64,
    pub inconclusive: u64,
    /// Trials whose drawn configuration fails the theorem's preconditions
    /// (e.g. mb <= a, or q = 1 for the Hoelder corollary).
    pub skipped: u64,
    pub errors: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_error: Option<String>,
}

impl TheoremTally {
    fn new(theorem: &'static str) -> TheoremTally {
        TheoremTally {
            theorem,
            verified: 0,
            violated: 0,
            hypotheses_unmet: 0,
            inconclusive: 0,
            skipped: 0,
            errors: 0,
            first_error: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MinMarginInstance {
    pub margin: f64,
    pub theorem: String,
    pub status: Status,
    pub replay: String,
}

#[derive(Debug, Clone)]
pub struct FuzzSummary {
    pub trials: u64,
    pub seed: u64,
    pub tallies: Vec<TheoremTally>,
    /// The k = 10 smallest finite margins over all verified/violated runs.
    pub min_margin: Vec<MinMarginInstance>,
    /// Replay lines for violated verdicts (capped).
    pub violation_examples: Vec<String>,
    /// Violated verdicts missing their paper-discrepancy-candidate note;
    /// expected to stay 0.
    pub violations_missing_note: u64,
}

struct Drawn {
    f: FunctionSpec,
    params: ScalarParams,
}

/// One trial's configuration. Consumes a fixed number of draws.
fn draw(rng: &mut SplitMix64) -> Drawn {
    let c1 = rng.uniform(0.0, 5.0);
    let c2 = rng.uniform(0.0, 5.0);
    let c3 = rng.uniform(0.0, 5.0);
    let p1 = rng.uniform(1.0, 4.0);
    let p2 = rng.uniform(1.0, 4.0);
    let lambda = rng.uniform(0.1, 2.0);
    // c1 x^p1 + c2 x^p2 + c3 (exp(lambda x) - 1): convex on [0, inf) with
    // f(0) = 0, hence an m-convex candidate for every m in (0, 1].
    let ast = Ast::Add(
        Box::new(Ast::Add(
            Box::new(Ast::Mul(
                Box::new(Ast::Const(c1)),
                Box::new(Ast::Pow(Box::new(Ast::Var), p1)),
            )),
            Box::new(Ast::Mul(
                Box::new(Ast::Const(c2)),
                Box::new(Ast::Pow(Box::new(Ast::Var), p2)),
            )),
        )),
        Box::new(Ast::Mul(
            Box::new(Ast::Const(c3)),
            Box::new(Ast::Sub(
                Box::new(Ast::Exp(Box::new(Ast::Mul(
                    Box::new(Ast::Const(lambda)),
                    Box::new(Ast::Var),
                )))),
                Box::new(Ast::Const(1.0)),
            )),
        )),
    );
    let f = FunctionSpec::from_ast(ast);

    let a = 2.9 * rng.next_f64();
    let b = a + 0.1 + (3.0 - a - 0.1) * rng.next_f64();
    let m = rng.unit_right_closed();
    let alpha1 = rng.unit_right_closed();
    let alpha = 2.0 * rng.unit_right_closed();
    let q = rng.uniform(1.0, 4.0);
    Drawn {
        f,
        params: ScalarParams {
            a,
            b,
            m,
            alpha,
            alpha1,
            q,
        },
    }
}

/// Preconditions the drawn configuration must satisfy for a checker to
/// apply; gaps are tallied as skipped rather than errors.
fn applicable(sel: TheoremSelector, p: &ScalarParams) -> bool {
    match sel {
        TheoremSelector::T1_2 | TheoremSelector::T2_3 => p.m * p.b > p.a,
        TheoremSelector::C2_1 => p.q > 1.0 && p.alpha <= 1.0,
        TheoremSelector::C3_1 | TheoremSelector::C3_2 => p.alpha <= 1.0,
        _ => true,
    }
}

fn replay_for(sel: TheoremSelector, f: &FunctionSpec, p: &ScalarParams) -> String {
    let mut line = format!(
        "fracineq check --theorem {} --f \"{}\"",
        sel.name(),
        f.source_text
    );
    for name in sel.required_params() {
        line.push_str(&format!(" --{name} {}", p.get(name)));
    }
    line
}

pub fn run_fuzz(cfg: &FuzzConfig) -> Result<FuzzSummary, Error> {
    let mut rng = SplitMix64::new(cfg.seed);
    let mut tallies: Vec<TheoremTally> = cfg
        .theorems
        .iter()
        .map(|t| TheoremTally::new(t.name()))
        .collect();
    // (margin, trial, theorem order) keys keep the top-k selection total
    // and deterministic.
    let mut margins: Vec<(f64, u64, usize, MinMarginInstance)> = Vec::new();
    let mut violation_examples = Vec::new();
    let mut violations_missing_note = 0u64;

    for trial in 0..cfg.trials {
        let drawn = draw(&mut rng);
        for (ti, &sel) in cfg.theorems.iter().enumerate() {
            if !applicable(sel, &drawn.params) {
                tallies[ti].skipped += 1;
                continue;
            }
            match run_checker(sel, &drawn.f, &drawn.params, &cfg.settings) {
                Ok(report) => {
                    match report.status {
                        Status::Verified => tallies[ti].verified += 1,
                        Status::Violated => {
                            tallies[ti].violated += 1;
                            let replay = replay_for(sel, &drawn.f, &drawn.params);
                            if !report
                                .notes
                                .iter()
                                .any(|n| n.contains("paper-discrepancy-candidate"))
                            {
                                violations_missing_note += 1;
                            }
                            if violation_examples.len() < 20 {
                                violation_examples.push(format!(
                                    "{} margin={} {}",
                                    report.theorem_id, report.margin, replay
                                ));
                            }
                        }
                        Status::HypothesesUnmet => tallies[ti].hypotheses_unmet += 1,
                        Status::Inconclusive => tallies[ti].inconclusive += 1,
                    }
                    // Identity checks are excluded: their margin is an
                    // agreement residual, so a small value means the
                    // opposite of "close to violation".
                    if matches!(report.status, Status::Verified | Status::Violated)
                        && report.margin.is_finite()
                        && sel != TheoremSelector::L1_1
                    {
                        margins.push((
                            report.margin,
                            trial,
                            ti,
                            MinMarginInstance {
                                margin: report.margin,
                                theorem: report.theorem_id.as_str().to_string(),
                                status: report.status,
                                replay: replay_for(sel, &drawn.f, &drawn.params),
                            },
                        ));
                        // keep the buffer small
                        if margins.len() > 64 {
                            sort_margins(&mut margins);
                            margins.truncate(10);
                        }
                    }
                }
                Err(e) => {
                    tallies[ti].errors += 1;
                    if tallies[ti].first_error.is_none() {
                        tallies[ti].first_error = Some(e.to_string());
                    }
                }
            }
        }
    }

    sort_margins(&mut margins);
    margins.truncate(10);
    Ok(FuzzSummary {
        trials: cfg.trials,
        seed: cfg.seed,
        tallies,
        min_margin: margins.into_iter().map(|(_, _, _, inst)| inst).collect(),
        violation_examples,
        violations_missing_note,
    })
}

fn sort_margins(margins: &mut [(f64, u64, usize, MinMarginInstance)]) {
    margins.sort_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then(a.1.cmp(&b.1))
            .then(a.2.cmp(&b.2))
    });
}
