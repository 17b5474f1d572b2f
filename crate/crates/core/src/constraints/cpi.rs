use std::collections::BTreeMap;

use crate::actions::VierbeinParams;
use crate::grassmann::{Generator, SuperNumber};
use crate::ring::RatFunc;
use crate::supermatrix::SuperMatrix;

use super::{s, split_even, sym, ConstraintSystem, EbCase, Equation, Sign, SolutionFamily};

/// `be - cd = ±1`, split into body and soul.
pub fn cpi_constraints(e: &VierbeinParams, sign: Sign) -> ConstraintSystem {
    let det = &(&e.b * &e.e) - &(&e.c * &e.d);
    let (body, soul) = split_even(&det);
    ConstraintSystem::new(
        format!("cpi.det.{}", sign.name()),
        vec![
            Equation::new("body", body, sign.rat()),
            Equation::new("soul", soul, RatFunc::zero()),
        ],
    )
}

/// The closed-form solutions of [`cpi_constraints`], one per sign and case.
pub fn cpi_families() -> Vec<SolutionFamily> {
    let mut out = Vec::new();
    for sign in Sign::BOTH {
        let pm = sign.rat();
        for case in EbCase::BOTH {
            let mut b = BTreeMap::new();
            let bound: &[&str] = match case {
                EbCase::Nonzero => {
                    let eb = sym("e_B");
                    let cd = &sym("c_B") * &sym("d_B");
                    b.insert(s("b_B"), (&pm + &cd).div(&eb).expect("symbolic e_B"));
                    let top = -(pm.clone() * sym("e_S")) - cd.clone() * sym("e_S")
                        + sym("c_B") * sym("d_S") * eb.clone()
                        + sym("c_S") * sym("d_B") * eb.clone();
                    b.insert(s("b_S"), top.div(&(&eb * &eb)).expect("symbolic e_B"));
                    &["b_B", "b_S"]
                }
                EbCase::Zero => {
                    let db = sym("d_B");
                    b.insert(s("e_B"), RatFunc::zero());
                    b.insert(s("c_B"), (-&pm).div(&db).expect("symbolic d_B"));
                    let top = &(&pm * &sym("d_S")) + &(&(&sym("b_B") * &db) * &sym("e_S"));
                    b.insert(s("c_S"), top.div(&(&db * &db)).expect("symbolic d_B"));
                    &["e_B", "c_B", "c_S"]
                }
            };
            let free = super::frame_symbols()
                .into_iter()
                .filter(|x| !bound.contains(&x.name()))
                .collect();
            out.push(SolutionFamily {
                name: format!("cpi.{}.{}", sign.name(), case.name()),
                sign,
                case,
                bindings: b,
                free_symbols: free,
            });
        }
    }
    out
}

/// The five combinations of frame components that parametrize the
/// classical metric.
#[derive(Clone, PartialEq, Debug)]
pub struct PiParameters {
    pub pi: [RatFunc; 5],
}

fn odd_parts(x: &SuperNumber) -> (RatFunc, RatFunc) {
    (
        x.coeff_of(&[Generator::theta()]),
        x.coeff_of(&[Generator::thetabar()]),
    )
}

pub fn pi_parameters(e: &VierbeinParams) -> PiParameters {
    let (g_th, g_thb) = odd_parts(&e.gamma);
    let (d_th, d_thb) = odd_parts(&e.delta);
    let (bb, cb, db, eb) = (e.b.body(), e.c.body(), e.d.body(), e.e.body());
    PiParameters {
        pi: [
            &(&g_th * &eb) - &(&d_th * &cb),
            &(&g_thb * &eb) - &(&d_thb * &cb),
            &(&d_th * &bb) - &(&g_th * &db),
            &(&d_thb * &bb) - &(&g_thb * &db),
            &(&g_thb * &d_th) - &(&g_th * &d_thb),
        ],
    }
}

/// The closed-form classical metric in terms of the π-parameters, with the
/// upper (`Plus`) or lower sign.
pub fn metric_from_pi(p: &PiParameters, sign: Sign) -> SuperMatrix {
    let pm = sign.rat();
    let th = SuperNumber::theta();
    let tb = SuperNumber::thetabar();
    let lin = |x: &RatFunc, y: &RatFunc| &th.scale(x) + &tb.scale(y);
    let [p1, p2, p3, p4, p5] = &p.pi;
    let row_t1 = lin(p1, p2).scale(&pm);
    let row_t2 = lin(p3, p4).scale(&pm);
    let off = &SuperNumber::scalar(pm.clone()) + &SuperNumber::thetabar_theta().scale(&(&pm * p5));
    SuperMatrix::new([
        [SuperNumber::one(), -&row_t1, -&row_t2],
        [row_t1, SuperNumber::zero(), -&off],
        [row_t2, off, SuperNumber::zero()],
    ])
    .expect("metric entries have consistent parity")
}
