use std::collections::BTreeMap;

use rand::Rng;

use crate::constraints::{metric_from_pi, PiParameters, Sign};
use crate::ring::{RatFunc, Symbol};

use super::{ricci_scalar, ConventionConfig, CurvatureError};

fn pi_symbols() -> [Symbol; 5] {
    ["pi1", "pi2", "pi3", "pi4", "pi5"].map(Symbol::new)
}

/// The closed-form body of the Ricci scalar on the classical family:
/// `-½π₂² - ½π₃² + 5π₂π₃ - π₂²π₅ - π₃²π₅ - 2π₂π₃π₅ - 4π₁π₄ + 4π₁π₄π₅ ± 6π₅`.
pub fn closed_form_ricci_body(p: &[RatFunc; 5], sign: Sign) -> RatFunc {
    let [p1, p2, p3, p4, p5] = p;
    let q = |n, d| RatFunc::from_ratio(n, d);
    let terms = [
        q(-1, 2) * p2.clone() * p2.clone(),
        q(-1, 2) * p3.clone() * p3.clone(),
        q(5, 1) * p2.clone() * p3.clone(),
        q(-1, 1) * p2.clone() * p2.clone() * p5.clone(),
        q(-1, 1) * p3.clone() * p3.clone() * p5.clone(),
        q(-2, 1) * p2.clone() * p3.clone() * p5.clone(),
        q(-4, 1) * p1.clone() * p4.clone(),
        q(4, 1) * p1.clone() * p4.clone() * p5.clone(),
        RatFunc::from_int(6 * sign.value()) * p5.clone(),
    ];
    terms.into_iter().fold(RatFunc::zero(), |a, b| a + b)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    /// Symbolically equal to the closed form.
    ExactMatch,
    /// Equal to minus the closed form.
    OppositeSign,
    /// Equal to the closed form of the other branch.
    BranchSwap,
    /// None of the above.
    Mismatch,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::ExactMatch => "exact_match",
            Verdict::OppositeSign => "near_miss_sign",
            Verdict::BranchSwap => "near_miss_branch",
            Verdict::Mismatch => "mismatch",
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct ScanRow {
    pub config: ConventionConfig,
    pub branch: Sign,
    /// Samples at which the engine agrees with the closed form.
    pub sample_matches: usize,
    pub samples: usize,
    pub verdict: Verdict,
    pub engine_body: RatFunc,
    /// `engine - closed form`, symbolically.
    pub residual: RatFunc,
    /// Coefficient of `π₅` in the engine body at `π₁ = … = π₄ = 0`.
    pub pi5_slope: RatFunc,
}

#[derive(Clone, PartialEq, Debug)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
}

impl ScanReport {
    pub fn exact_matches(&self) -> impl Iterator<Item = &ScanRow> {
        self.rows.iter().filter(|r| r.verdict == Verdict::ExactMatch)
    }
}

fn symbolic_pi() -> [RatFunc; 5] {
    pi_symbols().map(RatFunc::var)
}

/// Symbolic body of the scalar curvature of the π-metric.
pub fn engine_ricci_body(conv: ConventionConfig, branch: Sign) -> Result<RatFunc, CurvatureError> {
    let g = metric_from_pi(&PiParameters { pi: symbolic_pi() }, branch);
    Ok(ricci_scalar(&g, conv)?.body)
}

/// Compares every convention on both branches against the closed form at
/// `samples` random rational points, then symbolically.
pub fn convention_scan(samples: usize, rng: &mut impl Rng) -> Result<ScanReport, CurvatureError> {
    let syms = pi_symbols();
    let points: Vec<BTreeMap<Symbol, RatFunc>> = (0..samples)
        .map(|_| {
            syms.iter()
                .map(|&s| (s, RatFunc::from_ratio(rng.gen_range(-12..=12), rng.gen_range(1..=6))))
                .collect()
        })
        .collect();
    let mut rows = Vec::new();
    for conv in ConventionConfig::all() {
        for branch in Sign::BOTH {
            let engine = engine_ricci_body(conv, branch)?;
            let closed = closed_form_ricci_body(&symbolic_pi(), branch);
            let eval = |x: &RatFunc, p: &BTreeMap<Symbol, RatFunc>| x.substitute(p).expect("polynomial");
            let sample_matches = points.iter().filter(|p| eval(&engine, p) == eval(&closed, p)).count();
            let verdict = if engine == closed {
                Verdict::ExactMatch
            } else if engine == -&closed {
                Verdict::OppositeSign
            } else if engine == closed_form_ricci_body(&symbolic_pi(), branch.flip()) {
                Verdict::BranchSwap
            } else {
                Verdict::Mismatch
            };
            let slice: BTreeMap<Symbol, RatFunc> = syms[..4].iter().map(|&s| (s, RatFunc::zero())).collect();
            let on_pi5 = engine.substitute(&slice).expect("polynomial");
            let pi5_slope = on_pi5
                .coeffs_in(syms[4])
                .and_then(|c| c.get(1).cloned())
                .unwrap_or_default();
            rows.push(ScanRow {
                config: conv,
                branch,
                sample_matches,
                samples,
                verdict,
                residual: &engine - &closed,
                engine_body: engine,
                pi5_slope,
            });
        }
    }
    Ok(ScanReport { rows })
}
