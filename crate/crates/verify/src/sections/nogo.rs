use supertime::actions::VierbeinParams;
use supertime::constraints::{
    odd_kinetic_conditions, odd_kinetic_infeasibility, relaxed_system_witness, InfeasibilityCertificate, Witness,
};

use crate::{Entry, Status};

pub(super) fn run() -> Vec<Entry> {
    let mut out = Vec::new();
    let conds: Vec<String> = odd_kinetic_conditions(&VierbeinParams::generic())
        .into_iter()
        .map(|(n, v, t)| format!("{n}: {v} = {t}"))
        .collect();
    out.push(
        Entry::new(
            "nogo.conditions",
            "conditions for the odd kinetic term to reproduce d_tX d_tX with unit weight",
            Status::ReportOnly,
        )
        .actual(conds.join("; ")),
    );
    let relation = "odd kinetic form admits no frame: certificate revalidates";
    match odd_kinetic_infeasibility(true) {
        Some(cert) => {
            let ok = cert.witnesses.len() == 2 && cert.revalidate();
            out.push(
                Entry::new("nogo.certificate", relation, Status::of(ok))
                    .expected("2 witnesses, revalidated")
                    .actual(format!("{} witnesses, revalidated = {}", cert.witnesses.len(), cert.revalidate()))
                    .notes(cert.witnesses.iter().map(render).collect::<Vec<_>>().join("; ")),
            );
            for w in &cert.witnesses {
                out.push(witness(w));
            }
        }
        None => out.push(Entry::new("nogo.certificate", relation, Status::Fail).actual("no certificate")),
    }
    let (sys, binding) = relaxed_system_witness();
    let ok = sys.is_satisfied_by(&binding).unwrap_or(false);
    out.push(
        Entry::new(
            "nogo.relaxed_system",
            "dropping the two witnessed conditions leaves a satisfiable system",
            Status::of(ok),
        )
        .actual(
            binding
                .iter()
                .map(|(s, v)| format!("{s} = {v}"))
                .collect::<Vec<_>>()
                .join(", "),
        ),
    );
    out
}

fn witness(w: &Witness) -> Entry {
    let single = InfeasibilityCertificate {
        witnesses: vec![w.clone()],
    };
    let (id, relation) = match w {
        Witness::ZeroBodyRequiredInvertible { .. } => (
            "nogo.witness.odd_product",
            "gamma*delta has zero body yet must equal 1",
        ),
        Witness::SingularUnderConstraint { .. } => (
            "nogo.witness.singular_block",
            "imposing cd - be = 0 makes the odd block singular, so a/(be - dc) is undefined",
        ),
    };
    Entry::new(id, relation, Status::of(single.revalidate())).actual(render(w))
}

fn render(w: &Witness) -> String {
    match w {
        Witness::ZeroBodyRequiredInvertible { name, value } => {
            format!("{name}: {value} has body 0 and is not invertible")
        }
        Witness::SingularUnderConstraint { imposed, det } => {
            let imp: Vec<String> = imposed.iter().map(|(k, v)| format!("{k} = {v}")).collect();
            format!("with {} the odd block determinant is {det}", imp.join(", "))
        }
    }
}
