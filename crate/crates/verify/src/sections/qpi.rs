use supertime::actions::{
    build_action, epsilon_limits, lagrangian_bracket, regularized_weight, ActionForm, EpsilonLimits, WeightSource,
};
use supertime::constraints::{
    classical_frame, qpi_constraints, qpi_families, qpi_special_derived, qpi_special_printed, sign_pairing_check,
    verify_family, ConstraintSystem, QpiFamilyKind, SolutionFamily,
};
use supertime::grassmann::SuperNumber;
use supertime::parser::parse_expr;
use supertime::ring::RatFunc;
use supertime::superspace::standard_superfield;

use super::residuals;
use crate::{Ctx, Entry, Status};

/// Inverse of the regularized weight, written out by hand.
pub const WEIGHT_INVERSE: &str = "1/eps + i*thetabar*theta/(eps^2*hbar)";

pub(super) fn run(ctx: &mut Ctx) -> Vec<Entry> {
    let x = standard_superfield();
    let mut out = weight_inverse();
    for &sign in &ctx.signs {
        let e = classical_frame(sign);
        out.push(split(&e, &x, sign.name()));
        out.push(systems(sign));
        out.push(pairing(sign));
        let relation = "eps -> 0 reduction with the regularized weight equals (1/hbar)[x'x'/2 - V]";
        match epsilon_limits(&e, &x, WeightSource::Regularized) {
            Ok(lim) => {
                out.push(
                    Entry::new(format!("qpi.limit_eps0.{}", sign.name()), relation, Status::of(lim.zero_vs_qpi.is_empty()))
                        .expected(supertime::actions::qpi_reference())
                        .actual(&lim.at_zero)
                        .notes(diff_note(&lim.zero_vs_qpi.terms())),
                );
                out.push(eps1(format!("qpi.limit_eps1.regularized.{}", sign.name()), &lim, "regularized weight eps - i*thetabar*theta/hbar"));
            }
            Err(err) => out.push(Entry::errored(format!("qpi.limit_eps0.{}", sign.name()), relation, err)),
        }
    }
    for f in qpi_families(QpiFamilyKind::Printed).iter().filter(|f| ctx.signs.contains(&f.sign)) {
        out.extend(printed_family(f, &x));
    }
    for f in qpi_families(QpiFamilyKind::Corrected).iter().filter(|f| ctx.signs.contains(&f.sign)) {
        out.push(corrected_family(f));
    }
    out
}

fn weight_inverse() -> Vec<Entry> {
    let w = regularized_weight();
    let want = parse_expr(WEIGHT_INVERSE).expect("literal parses");
    let relation = "inverse of eps - i*thetabar*theta/hbar";
    match w.inv() {
        Ok(inv) => {
            let prod = &w * &inv;
            vec![
                Entry::new("qpi.weight.inverse", relation, Status::of(inv == want))
                    .expected(&want)
                    .actual(&inv),
                Entry::new("qpi.weight.product", "weight times its inverse is 1", Status::of(prod.is_one()))
                    .expected(1)
                    .actual(&prod),
            ]
        }
        Err(e) => vec![Entry::errored("qpi.weight.inverse", relation, e)],
    }
}

fn split(e: &supertime::actions::VierbeinParams, x: &SuperNumber, tag: &str) -> Entry {
    let relation = "regularized action splits as i*eps*L + thetabar*theta*L/hbar";
    let w = regularized_weight();
    let br = lagrangian_bracket(e, x, ActionForm::TimeKinetic);
    let ie = &RatFunc::i() * &RatFunc::sym("eps");
    let hinv = RatFunc::sym("hbar").inv().expect("nonzero symbol");
    let want = &br.scale(&ie) + &(&SuperNumber::thetabar_theta() * &br).scale(&hinv);
    match build_action(e, x, ActionForm::TimeKinetic, Some(&w)) {
        Ok(d) => Entry::new(format!("qpi.action_split.{tag}"), relation, Status::of(d == want))
            .expected(&want)
            .actual(&d),
        Err(err) => Entry::errored(format!("qpi.action_split.{tag}"), relation, err),
    }
}

fn render_system(s: &ConstraintSystem) -> String {
    s.equations
        .iter()
        .map(|e| format!("{}: {} = {}", e.name, e.lhs, e.rhs))
        .collect::<Vec<_>>()
        .join("; ")
}

fn systems(sign: supertime::constraints::Sign) -> Entry {
    let e = classical_frame(sign);
    let printed = qpi_special_printed(&e, sign);
    let entry = Entry::new(
        format!("qpi.special_system.{}", sign.name()),
        "special-case system as printed versus as derived",
        Status::ReportOnly,
    )
    .expected(render_system(&printed));
    match qpi_special_derived(&e, sign) {
        Ok(d) => entry
            .actual(render_system(&d))
            .notes("the printed system swaps the right-hand sides of the body and soul equations"),
        Err(err) => entry.actual(format!("error: {err}")),
    }
}

fn pairing(sign: supertime::constraints::Sign) -> Entry {
    let relation = "same-sign pairing of the q and soul conditions reproduces the target weight";
    match sign_pairing_check(sign) {
        Ok(outs) => {
            let ok = outs.iter().all(|o| o.system_satisfied && o.reproduces_weight == o.same_sign);
            let actual = outs
                .iter()
                .map(|o| {
                    format!(
                        "{}: satisfied = {}, reproduces weight = {}",
                        if o.same_sign { "same sign" } else { "opposite sign" },
                        o.system_satisfied,
                        o.reproduces_weight
                    )
                })
                .collect::<Vec<_>>()
                .join("; ");
            Entry::new(format!("qpi.pairing.{}", sign.name()), relation, Status::of(ok)).actual(actual)
        }
        Err(e) => Entry::errored(format!("qpi.pairing.{}", sign.name()), relation, e),
    }
}

fn eps1(id: String, lim: &EpsilonLimits, source: &str) -> Entry {
    Entry::new(id, format!("eps -> 1 reduction against the classical Lagrangian, {source}"), Status::ReportOnly)
        .actual(&lim.at_one)
        .notes(diff_note(&lim.one_vs_cpi.terms()))
}

fn diff_note(terms: &[String]) -> String {
    if terms.is_empty() {
        "no difference".into()
    } else {
        format!("difference: {}", terms.join(" + "))
    }
}

fn printed_family(f: &SolutionFamily, x: &SuperNumber) -> Vec<Entry> {
    let tag = format!("{}.{}", f.sign.name(), f.case.name());
    let e = classical_frame(f.sign);
    let mut out = Vec::new();
    let printed = qpi_special_printed(&e, f.sign);
    let relation = "printed quantum family satisfies the printed special-case system";
    out.push(match verify_family(f, &printed) {
        Ok(chk) => Entry::new(format!("qpi.family.printed.{tag}"), relation, Status::of(chk.holds()))
            .expected(0)
            .actual(residuals(&chk.residuals)),
        Err(err) => Entry::errored(format!("qpi.family.printed.{tag}"), relation, err),
    });
    if let Ok(derived) = qpi_special_derived(&e, f.sign) {
        if let Ok(chk) = verify_family(f, &derived) {
            out.push(
                Entry::new(
                    format!("qpi.family.printed_vs_derived.{tag}"),
                    "printed quantum family against the derived special-case system",
                    Status::ReportOnly,
                )
                .expected(0)
                .actual(residuals(&chk.residuals))
                .notes("residual vanishes only at eps = 0"),
            );
        }
    }
    let v = match f.vierbein() {
        Ok(v) => v,
        Err(err) => {
            out.push(Entry::errored(format!("qpi.family_weight.printed.{tag}"), "frame assembles", err));
            return out;
        }
    };
    if let Ok(w) = v.weight() {
        out.push(
            Entry::new(
                format!("qpi.family_weight.printed.{tag}"),
                "action weight of the printed quantum family",
                Status::ReportOnly,
            )
            .expected(regularized_weight())
            .actual(&w),
        );
    }
    if let Ok(lim) = epsilon_limits(&v, x, WeightSource::Frame) {
        out.push(eps1(format!("qpi.limit_eps1.frame.{tag}"), &lim, "the printed family's own weight"));
        out.push(
            Entry::new(
                format!("qpi.limit_eps0.frame.{tag}"),
                "eps -> 0 reduction with the printed family's own weight against (1/hbar)[x'x'/2 - V]",
                Status::ReportOnly,
            )
            .actual(&lim.at_zero)
            .notes(diff_note(&lim.zero_vs_qpi.terms())),
        );
    }
    out
}

fn corrected_family(f: &SolutionFamily) -> Entry {
    let tag = format!("{}.{}", f.sign.name(), f.case.name());
    let id = format!("qpi.family.corrected.{tag}");
    let relation = "corrected quantum family satisfies the derived system and has weight eps - i*thetabar*theta/hbar";
    let run = || -> Result<(bool, String, SuperNumber), Box<dyn std::error::Error>> {
        let derived = qpi_special_derived(&classical_frame(f.sign), f.sign)?;
        let chk = verify_family(f, &derived)?;
        let v = f.vierbein()?;
        let full = qpi_constraints(&v, f.sign, f.sign)?.is_satisfied_by(&Default::default())?;
        let w = v.weight()?;
        Ok((chk.holds() && full && w == regularized_weight(), residuals(&chk.residuals), w))
    };
    match run() {
        Ok((ok, res, w)) => Entry::new(id, relation, Status::of(ok))
            .expected(regularized_weight())
            .actual(&w)
            .notes(format!("derived-system residual {res}")),
        Err(e) => Entry::errored(id, relation, e),
    }
}
