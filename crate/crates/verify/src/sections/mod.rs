mod algebra;
mod cpi;
mod curvature;
mod nogo;
mod osp;
mod qpi;

use supertime::ring::RatFunc;

pub use algebra::{FOCK_PAIRS, MATRIX_SAMPLES};
pub use cpi::FREE_PARAMETERS;
pub use curvature::SCAN_SAMPLES;

use crate::{Ctx, Entry, Section};

pub(crate) fn run(s: Section, ctx: &mut Ctx) -> Vec<Entry> {
    match s {
        Section::Algebra => algebra::run(ctx),
        Section::Osp => osp::run(),
        Section::Cpi => cpi::run(ctx),
        Section::Nogo => nogo::run(),
        Section::Qpi => qpi::run(ctx),
        Section::Curvature => curvature::run(ctx),
        Section::All => unreachable!("expanded by the caller"),
    }
}

/// `"0"` when every residual vanishes, otherwise the nonzero ones.
fn residuals(rs: &[(String, RatFunc)]) -> String {
    let bad: Vec<String> = rs
        .iter()
        .filter(|(_, r)| !r.is_zero())
        .map(|(n, r)| format!("{n}: {r}"))
        .collect();
    if bad.is_empty() {
        "0".into()
    } else {
        bad.join("; ")
    }
}
