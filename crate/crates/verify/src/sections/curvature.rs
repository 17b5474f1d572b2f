use supertime::curvature::{convention_scan, closed_form_ricci_body, ricci_scalar, ConventionConfig};
use supertime::ring::RatFunc;
use supertime::supermatrix::SuperMatrix;

use crate::{Ctx, Entry, Status};

/// Random π points per configuration.
pub const SCAN_SAMPLES: usize = 20;

pub(super) fn run(ctx: &mut Ctx) -> Vec<Entry> {
    let mut out = Vec::new();
    for conv in ConventionConfig::all() {
        let id = format!("curvature.flat.{conv}");
        let relation = "scalar curvature of the flat metric vanishes";
        out.push(match ricci_scalar(&SuperMatrix::eta(), conv) {
            Ok(r) => Entry::new(id, relation, Status::of(r.scalar.is_zero()))
                .expected(0)
                .actual(&r.scalar),
            Err(e) => Entry::errored(id, relation, e),
        });
    }
    let report = match convention_scan(SCAN_SAMPLES, &mut ctx.rng) {
        Ok(r) => r,
        Err(e) => {
            out.push(Entry::errored("curvature.scan", "convention scan", e));
            return out;
        }
    };
    let pis: [RatFunc; 5] = ["pi1", "pi2", "pi3", "pi4", "pi5"].map(RatFunc::sym);
    for row in report.rows.iter().filter(|r| ctx.signs.contains(&r.branch)) {
        out.push(
            Entry::new(
                format!("curvature.scan.{}.{}", row.config, row.branch.name()),
                "body of the scalar curvature of the pi-metric against the closed form",
                Status::ReportOnly,
            )
            .expected(closed_form_ricci_body(&pis, row.branch))
            .actual(&row.engine_body)
            .notes(format!(
                "verdict {}; {}/{} samples agree; pi5 coefficient {}; residual {}",
                row.verdict.name(),
                row.sample_matches,
                row.samples,
                row.pi5_slope,
                row.residual
            )),
        );
    }
    let exact = report.exact_matches().count();
    out.push(
        Entry::new("curvature.scan.summary", "configurations matching the closed form exactly", Status::ReportOnly)
            .actual(format!("{exact} of {} rows", report.rows.len())),
    );
    out
}
