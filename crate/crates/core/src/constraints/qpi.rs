use std::collections::BTreeMap;

use crate::actions::{even_entry, VierbeinParams};
use crate::grassmann::SuperNumber;
use crate::ring::RatFunc;

use super::{
    classical_frame, frame_symbols, s, split_even, sym, ConstraintError, ConstraintSystem, EbCase,
    Equation, Sign, SolutionFamily,
};

/// `p`, `q`, `r` defined by `B D⁻¹ C = p θ̄θ` and `det(D)⁻¹ = q + r θ̄θ`.
#[derive(Clone, PartialEq, Debug)]
pub struct QpiQuantities {
    pub p: RatFunc,
    pub q: RatFunc,
    pub r: RatFunc,
    pub det_d: SuperNumber,
}

impl QpiQuantities {
    pub fn of(e: &VierbeinParams) -> Result<Self, ConstraintError> {
        let det = &(&e.b * &e.e) - &(&e.c * &e.d);
        let di = det.inv().map_err(|_| crate::supermatrix::SupermatrixError::SingularOddBlock {
            det: det.to_string(),
        })?;
        let bracket = &(&e.alpha * &(&(&e.e * &e.gamma) - &(&e.c * &e.delta)))
            - &(&e.beta * &(&(&e.d * &e.gamma) - &(&e.b * &e.delta)));
        let (_, p) = split_even(&(&di * &bracket));
        let (q, r) = split_even(&di);
        Ok(Self { p, q, r, det_d: det })
    }
}

fn eps() -> RatFunc {
    sym("eps")
}

fn i_over_hbar() -> RatFunc {
    &RatFunc::i() * &sym("hbar").inv().expect("nonzero")
}

/// Right-hand side `i/(ε²ħ)` of the soul condition.
fn soul_target() -> RatFunc {
    i_over_hbar().div(&(&eps() * &eps())).expect("nonzero")
}

/// The conditions for `sdet(E^M_A) = 1/ε + iθ̄θ/(ε²ħ)` with `a = ±1 + a_S θ̄θ`.
/// `soul_sign` is the sign in front of the soul bracket; the consistent
/// choice equals `sign`.
pub fn qpi_constraints(e: &VierbeinParams, sign: Sign, soul_sign: Sign) -> Result<ConstraintSystem, ConstraintError> {
    let qq = QpiQuantities::of(e)?;
    let (a_b, a_s) = split_even(&e.a);
    let ep = eps();
    let bracket = &(&a_s - &qq.p).div(&ep)? + &qq.r;
    let (db, ds) = split_even(&qq.det_d);
    Ok(ConstraintSystem::new(
        format!("qpi.{}.{}", sign.name(), if sign == soul_sign { "same" } else { "opposite" }),
        vec![
            Equation::new("a_body", a_b, sign.rat()),
            Equation::new("q", qq.q.clone(), sign.rat().div(&ep)?),
            Equation::new("soul", &soul_sign.rat() * &bracket, soul_target()),
            Equation::new("det_body", db, &sign.rat() * &ep),
            Equation::new("det_soul", ds, &(&(-&ep) * &ep) * &qq.r),
        ],
    ))
}

/// The special case `a_S = α = β = 0` as printed: body `∓i/ħ`, soul `±ε`.
pub fn qpi_special_printed(e: &VierbeinParams, sign: Sign) -> ConstraintSystem {
    let (db, ds) = split_even(&(&(&e.b * &e.e) - &(&e.c * &e.d)));
    ConstraintSystem::new(
        format!("qpi.special.printed.{}", sign.name()),
        vec![
            Equation::new("body", db, &(-&sign.rat()) * &i_over_hbar()),
            Equation::new("soul", ds, &sign.rat() * &eps()),
        ],
    )
}

/// The special case `a_S = α = β = 0` derived from [`qpi_constraints`]:
/// with `p = 0` the `q` condition fixes the body of `det D` and the soul
/// condition fixes `r`, hence the soul of `det D`.
pub fn qpi_special_derived(e: &VierbeinParams, sign: Sign) -> Result<ConstraintSystem, ConstraintError> {
    let ep = eps();
    let q_req = sign.rat().div(&ep)?;
    let body_req = q_req.inv()?;
    // sign · (0/ε - 0/ε + r) = i/(ε²ħ)
    let r_req = soul_target().div(&sign.rat())?;
    let soul_req = &(-&(&body_req * &body_req)) * &r_req;
    let (db, ds) = split_even(&(&(&e.b * &e.e) - &(&e.c * &e.d)));
    Ok(ConstraintSystem::new(
        format!("qpi.special.derived.{}", sign.name()),
        vec![Equation::new("body", db, body_req), Equation::new("soul", ds, soul_req)],
    ))
}

/// Which closed form of the ε-family to build.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QpiFamilyKind {
    /// With the `(1 - ε) i/ħ` term as printed.
    Printed,
    /// With `i/ħ` in place of `(1 - ε) i/ħ`, solving the derived system.
    Corrected,
}

impl QpiFamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            QpiFamilyKind::Printed => "printed",
            QpiFamilyKind::Corrected => "corrected",
        }
    }
}

pub fn qpi_families(kind: QpiFamilyKind) -> Vec<SolutionFamily> {
    let ih = i_over_hbar();
    let extra = match kind {
        QpiFamilyKind::Printed => &(&RatFunc::one() - &eps()) * &ih,
        QpiFamilyKind::Corrected => ih,
    };
    let mut out = Vec::new();
    for sign in Sign::BOTH {
        let pm = sign.rat();
        let pe = &pm * &eps();
        for case in EbCase::BOTH {
            let mut b = BTreeMap::new();
            let bound: &[&str] = match case {
                EbCase::Nonzero => {
                    let eb = sym("e_B");
                    let cd = &sym("c_B") * &sym("d_B");
                    b.insert(s("b_B"), (&pe + &cd).div(&eb).expect("symbolic e_B"));
                    let top = -(pe.clone() * sym("e_S")) - cd.clone() * sym("e_S")
                        + sym("c_B") * sym("d_S") * eb.clone()
                        + sym("c_S") * sym("d_B") * eb.clone()
                        - pm.clone() * extra.clone() * eb.clone();
                    b.insert(s("b_S"), top.div(&(&eb * &eb)).expect("symbolic e_B"));
                    &["b_B", "b_S"]
                }
                EbCase::Zero => {
                    let db = sym("d_B");
                    b.insert(s("e_B"), RatFunc::zero());
                    b.insert(s("c_B"), (-&pe).div(&db).expect("symbolic d_B"));
                    let top = &(&(&pe * &sym("d_S")) + &(&(&sym("b_B") * &db) * &sym("e_S")))
                        + &(&(&pm * &extra) * &db);
                    b.insert(s("c_S"), top.div(&(&db * &db)).expect("symbolic d_B"));
                    &["e_B", "c_B", "c_S"]
                }
            };
            let free = frame_symbols()
                .into_iter()
                .filter(|x| !bound.contains(&x.name()))
                .chain([s("eps"), s("hbar")])
                .collect();
            out.push(SolutionFamily {
                name: format!("qpi.{}.{}.{}", kind.name(), sign.name(), case.name()),
                sign,
                case,
                bindings: b,
                free_symbols: free,
            });
        }
    }
    out
}

/// Result of testing one sign pairing of the `q` and soul conditions.
#[derive(Clone, PartialEq, Debug)]
pub struct PairingOutcome {
    pub sign: Sign,
    pub same_sign: bool,
    /// The witness frame satisfies the system built with this pairing.
    pub system_satisfied: bool,
    /// The witness frame has `sdet(E^M_A) = 1/ε + iθ̄θ/(ε²ħ)`.
    pub reproduces_weight: bool,
}

/// For each pairing, builds the frame `b_B = ±ε`, `e_B = 1`, `c = d = 0`
/// with `b_S` solved from that pairing's soul condition, and checks it
/// against the target superdeterminant.
pub fn sign_pairing_check(sign: Sign) -> Result<Vec<PairingOutcome>, ConstraintError> {
    let target = even_entry(eps().inv()?, soul_target());
    let mut out = Vec::new();
    for soul_sign in [sign, sign.flip()] {
        // r = soul_sign · i/(ε²ħ), and soul(det D) = b_S = -ε² r
        let b_s = &(-&soul_sign.rat()) * &i_over_hbar();
        let e = VierbeinParams {
            b: even_entry(&sign.rat() * &eps(), b_s),
            c: SuperNumber::zero(),
            d: SuperNumber::zero(),
            e: SuperNumber::one(),
            ..classical_frame(sign)
        };
        let sys = qpi_constraints(&e, sign, soul_sign)?;
        out.push(PairingOutcome {
            sign,
            same_sign: soul_sign == sign,
            system_satisfied: sys.is_satisfied_by(&BTreeMap::new())?,
            reproduces_weight: e.sdet()? == target,
        });
    }
    Ok(out)
}
