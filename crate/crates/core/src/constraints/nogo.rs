use std::collections::BTreeMap;

use crate::actions::{even_entry, VierbeinParams};
use crate::grassmann::SuperNumber;
use crate::ring::RatFunc;
use crate::supermatrix::SupermatrixError;

use super::{s, sym, ConstraintSystem, Equation};

/// Conditions for `D_θX D_θ̄X = ∂_tX ∂_tX`, with each coefficient kept as a
/// superfield so that body and soul can be inspected.
pub fn odd_kinetic_conditions(e: &VierbeinParams) -> Vec<(&'static str, SuperNumber, SuperNumber)> {
    vec![
        ("gamma_delta", &e.gamma * &e.delta, SuperNumber::one()),
        ("gamma_d_minus_delta_b", &(&e.gamma * &e.d) - &(&e.delta * &e.b), SuperNumber::zero()),
        ("gamma_e_minus_delta_c", &(&e.gamma * &e.e) - &(&e.delta * &e.c), SuperNumber::zero()),
        ("cd_minus_be", &(&e.c * &e.d) - &(&e.b * &e.e), SuperNumber::zero()),
    ]
}

/// One mechanically checkable reason the conditions are inconsistent.
#[derive(Clone, PartialEq, Debug)]
pub enum Witness {
    /// A product of two odd elements has zero body but must equal `1`.
    ZeroBodyRequiredInvertible { name: String, value: SuperNumber },
    /// Imposing `cd - be = 0` makes the odd-odd block singular, so the
    /// weight `a/(be - dc)` is undefined.
    SingularUnderConstraint { imposed: BTreeMap<String, String>, det: SuperNumber },
}

#[derive(Clone, PartialEq, Debug)]
pub struct InfeasibilityCertificate {
    pub witnesses: Vec<Witness>,
}

impl InfeasibilityCertificate {
    /// Recomputes every witness from scratch.
    pub fn revalidate(&self) -> bool {
        !self.witnesses.is_empty()
            && self.witnesses.iter().all(|w| match w {
                Witness::ZeroBodyRequiredInvertible { value, .. } => {
                    let gen = VierbeinParams::generic();
                    value.body().is_zero() && (&gen.gamma * &gen.delta) == *value && value.inv().is_err()
                }
                Witness::SingularUnderConstraint { det, .. } => {
                    let e = singular_frame();
                    det.is_zero()
                        && matches!(e.sdet(), Err(SupermatrixError::SingularOddBlock { .. }))
                        && e.weight().is_err()
                }
            })
    }
}

/// Generic frame with `b` solved from `cd - be = 0` (`e_B ≠ 0`).
fn singular_frame() -> VierbeinParams {
    let eb = sym("e_B");
    let cd = &sym("c_B") * &sym("d_B");
    let b_b = cd.div(&eb).expect("symbolic");
    let b_s = (&(&(&(&sym("c_S") * &sym("d_B")) + &(&sym("c_B") * &sym("d_S"))) * &eb) - &(&cd * &sym("e_S")))
        .div(&(&eb * &eb))
        .expect("symbolic");
    VierbeinParams {
        b: even_entry(b_b, b_s),
        ..VierbeinParams::generic()
    }
}

/// Proves that no frame makes the odd kinetic term reproduce `∂_tX∂_tX`
/// with unit weight. Without `with_weight` only the kinetic conditions are
/// used.
pub fn odd_kinetic_infeasibility(with_weight: bool) -> Option<InfeasibilityCertificate> {
    let e = VierbeinParams::generic();
    let mut witnesses = Vec::new();
    for (name, value, target) in odd_kinetic_conditions(&e) {
        if !target.body().is_zero() && value.body().is_zero() {
            witnesses.push(Witness::ZeroBodyRequiredInvertible {
                name: name.into(),
                value,
            });
        }
    }
    if with_weight {
        let f = singular_frame();
        let det = &(&f.b * &f.e) - &(&f.d * &f.c);
        if det.is_zero() && f.sdet().is_err() {
            let imposed = [("b", &f.b)]
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect();
            witnesses.push(Witness::SingularUnderConstraint { imposed, det });
        }
    }
    (!witnesses.is_empty()).then_some(InfeasibilityCertificate { witnesses })
}

/// The subsystem left after dropping `γδ = 1` and `cd - be = 0`, with a
/// binding that satisfies it.
pub fn relaxed_system_witness() -> (ConstraintSystem, BTreeMap<crate::ring::Symbol, RatFunc>) {
    let e = VierbeinParams {
        a: even_entry(sym("a_B"), RatFunc::zero()),
        alpha: SuperNumber::zero(),
        beta: SuperNumber::zero(),
        ..VierbeinParams::generic()
    };
    let conds = odd_kinetic_conditions(&e);
    let mut eqs = Vec::new();
    for (name, value, _) in conds.iter().filter(|(n, _, _)| matches!(*n, "gamma_d_minus_delta_b" | "gamma_e_minus_delta_c")) {
        for (mask, c) in value.terms() {
            eqs.push(Equation::new(format!("{name}[{mask}]"), c.clone(), RatFunc::zero()));
        }
    }
    // sdet = a/(be - cd) = 1 once α = β = 0
    let det = &(&e.b * &e.e) - &(&e.c * &e.d);
    let w = &e.a - &det;
    for (mask, c) in w.terms() {
        eqs.push(Equation::new(format!("sdet[{mask}]"), c.clone(), RatFunc::zero()));
    }
    let one = RatFunc::one;
    let zero = RatFunc::zero;
    let binding = [
        ("a_B", one()),
        ("b_B", one()),
        ("e_B", one()),
        ("b_S", zero()),
        ("c_B", zero()),
        ("c_S", zero()),
        ("d_B", zero()),
        ("d_S", zero()),
        ("e_S", zero()),
        ("gamma_th", zero()),
        ("gamma_thb", zero()),
        ("delta_th", zero()),
        ("delta_thb", zero()),
    ]
    .into_iter()
    .map(|(n, v)| (s(n), v))
    .collect();
    (ConstraintSystem::new("odd_kinetic.relaxed", eqs), binding)
}
