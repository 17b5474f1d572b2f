use supertime::actions::{
    berezin_reduce, build_action, cpi_reference, kinetic_dtdt, ActionForm, VierbeinParams,
};
use supertime::constraints::{
    classical_frame, cpi_constraints, cpi_families, frame_symbols, free_parameter_count, metric_from_pi,
    pi_parameters, verify_family, SolutionFamily,
};
use supertime::parser::parse_expr;
use supertime::superspace::{partial, standard_superfield};
use supertime::supermatrix::{GradedIndex, GradingToggle};

use super::residuals;
use crate::{Ctx, Entry, Status};

/// Independent count of free frame parameters on the classical family.
pub const FREE_PARAMETERS: usize = 10;

/// The classical component Lagrangian written out by hand.
pub const CPI_LAGRANGIAN: &str = "i*(i*x'*lambda' + c'*cbar' - i*lambda*V' - V''*c*cbar)";

pub(super) fn run(ctx: &mut Ctx) -> Vec<Entry> {
    let x = standard_superfield();
    let mut out = vec![reference(&x)];
    let fams: Vec<SolutionFamily> = cpi_families().into_iter().filter(|f| ctx.signs.contains(&f.sign)).collect();
    for f in &fams {
        out.extend(family(f, ctx));
    }
    let xt = partial(GradedIndex::T, &x);
    let dtdt = &xt * &xt;
    for &sign in &ctx.signs {
        let k = kinetic_dtdt(&classical_frame(sign), &x);
        out.push(
            Entry::new(
                format!("cpi.kinetic.{}", sign.name()),
                "D_tX D_tX = d_tX d_tX when alpha = beta = 0 and a = +-1",
                Status::of(k.full == dtdt && k.residual.is_zero()),
            )
            .expected(&dtdt)
            .actual(&k.full),
        );
    }
    let k = kinetic_dtdt(&VierbeinParams::generic(), &x);
    out.push(
        Entry::new(
            "cpi.kinetic.generic_residual",
            "D_tX D_tX minus the three-term expansion for a generic frame",
            Status::ReportOnly,
        )
        .actual(&k.residual)
        .notes("vanishes when alpha*beta = 0"),
    );
    out
}

fn reference(x: &supertime::grassmann::SuperNumber) -> Entry {
    let relation = "Berezin reduction of the unit-weight action equals the classical Lagrangian";
    let want = parse_expr(CPI_LAGRANGIAN).expect("literal parses");
    let got = cpi_reference(x).total();
    Entry::new("cpi.lagrangian.reference", relation, Status::of(got == want))
        .expected(&want)
        .actual(&got)
}

fn family(f: &SolutionFamily, ctx: &mut Ctx) -> Vec<Entry> {
    let tag = format!("{}.{}", f.sign.name(), f.case.name());
    let mut out = Vec::new();
    let sys = cpi_constraints(&classical_frame(f.sign), f.sign);
    let relation = "solution family satisfies the classical constraint system";
    out.push(match verify_family(f, &sys) {
        Ok(chk) => Entry::new(format!("cpi.family.{tag}"), relation, Status::of(chk.holds()))
            .expected(0)
            .actual(residuals(&chk.residuals))
            .notes(bindings_note(f)),
        Err(e) => Entry::errored(format!("cpi.family.{tag}"), relation, e),
    });
    let v = match f.vierbein() {
        Ok(v) => v,
        Err(e) => {
            out.push(Entry::errored(format!("cpi.sdet.{tag}"), "frame assembles", e));
            return out;
        }
    };
    let relation = "assembled frame has unit superdeterminant";
    out.push(match v.sdet() {
        Ok(d) => Entry::new(format!("cpi.sdet.{tag}"), relation, Status::of(d.is_one()))
            .expected(1)
            .actual(&d),
        Err(e) => Entry::errored(format!("cpi.sdet.{tag}"), relation, e),
    });
    out.extend(metric(&v, f, &tag));
    let relation = "free frame parameters left by the constraint system";
    out.push(
        match free_parameter_count(&sys, &frame_symbols(), Some(f), 4, &mut ctx.rng) {
            Ok(n) => Entry::new(format!("cpi.free_parameters.{tag}"), relation, Status::of(n == FREE_PARAMETERS))
                .expected(FREE_PARAMETERS)
                .actual(n)
                .notes(format!("{} frame symbols, {} equations", frame_symbols().len(), sys.equations.len())),
            Err(e) => Entry::errored(format!("cpi.free_parameters.{tag}"), relation, e),
        },
    );
    let relation = "the family's action reduces to the classical Lagrangian";
    let x = standard_superfield();
    let reduced = build_action(&v, &x, ActionForm::TimeKinetic, None)
        .and_then(|d| berezin_reduce(&d));
    out.push(match reduced {
        Ok(l) => {
            let want = cpi_reference(&x);
            let diff = l.diff(&want);
            Entry::new(format!("cpi.action.{tag}"), relation, Status::of(diff.is_empty()))
                .expected(&want)
                .actual(&l)
        }
        Err(e) => Entry::errored(format!("cpi.action.{tag}"), relation, e),
    });
    out
}

fn metric(v: &VierbeinParams, f: &SolutionFamily, tag: &str) -> Vec<Entry> {
    let relation = "metric from the inverse frame equals the pi-form, left grading toggle";
    let want = metric_from_pi(&pi_parameters(v), f.sign);
    let w = match v.matrix().and_then(|m| m.sinv()) {
        Ok(w) => w,
        Err(e) => return vec![Entry::errored(format!("cpi.metric.{tag}"), relation, e)],
    };
    let mut out = Vec::new();
    for toggle in [GradingToggle::Left, GradingToggle::Right] {
        let id = match toggle {
            GradingToggle::Left => format!("cpi.metric.{tag}"),
            GradingToggle::Right => format!("cpi.metric_right_toggle.{tag}"),
        };
        let e = match w.vierbein_to_metric(toggle) {
            Ok(g) => {
                let same = g == want;
                match toggle {
                    GradingToggle::Left => Entry::new(id, relation, Status::of(same)),
                    GradingToggle::Right => Entry::new(
                        id,
                        "metric from the inverse frame under the right grading toggle",
                        Status::ReportOnly,
                    )
                    .notes(if same { "matches the pi-form" } else { "differs from the pi-form" }),
                }
                .expected(&want)
                .actual(&g)
            }
            Err(err) => Entry::errored(id, relation, err),
        };
        out.push(e);
    }
    out
}

fn bindings_note(f: &SolutionFamily) -> String {
    f.bindings
        .iter()
        .map(|(s, v)| format!("{s} = {v}"))
        .collect::<Vec<_>>()
        .join(", ")
}
