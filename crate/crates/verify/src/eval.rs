//! Runs a user-supplied frame through one operation.

use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;

use supertime::actions::{berezin_reduce, build_action, ActionForm, VierbeinParams};
use supertime::constraints::pi_parameters;
use supertime::parser::parse_vierbein;
use supertime::superspace::standard_superfield;
use supertime::supermatrix::GradingToggle;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum What {
    /// sdet(E^M_A)
    Sdet,
    /// g_MN from the inverse frame, left grading toggle
    Metric,
    /// π₁ … π₅
    Pi,
    /// Superspace action density with the frame's own weight
    Action,
    /// Berezin-integrated component Lagrangian
    Reduce,
}

/// Reads `arg` as a file when such a file exists, else as the literal itself.
pub fn load_source(arg: &str) -> Result<String> {
    let p = Path::new(arg);
    if !arg.trim_start().starts_with('[') && p.is_file() {
        return std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()));
    }
    Ok(arg.to_string())
}

pub fn eval_frame(e: &VierbeinParams, what: What) -> Result<String> {
    Ok(match what {
        What::Sdet => e.sdet()?.to_string(),
        What::Metric => {
            let w = e.matrix()?.sinv()?;
            w.vierbein_to_metric(GradingToggle::Left)?.to_string()
        }
        What::Pi => pi_parameters(e)
            .pi
            .iter()
            .enumerate()
            .map(|(k, p)| format!("pi{} = {p}", k + 1))
            .collect::<Vec<_>>()
            .join("\n"),
        What::Action => build_action(e, &standard_superfield(), ActionForm::TimeKinetic, None)?.to_string(),
        What::Reduce => {
            let d = build_action(e, &standard_superfield(), ActionForm::TimeKinetic, None)?;
            berezin_reduce(&d)?.to_string()
        }
    })
}

pub fn eval(src: &str, what: What) -> Result<String> {
    let e = parse_vierbein(src)?;
    eval_frame(&e, what)
}
