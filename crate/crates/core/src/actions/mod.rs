//! Reparametrization-invariant superspace actions and their component
//! Lagrangians.

mod lagrangian;
mod vierbein;

pub use lagrangian::{berezin_reduce, ComponentLagrangian, LagrangianDiff};
pub use vierbein::{even_entry, odd_entry, VierbeinParams};

use thiserror::Error;

use crate::grassmann::{GrassmannError, SuperNumber};
use crate::ring::{RatFunc, RingError, Symbol};
use crate::superspace::{compose_potential, partial};
use crate::supermatrix::{GradedIndex, SupermatrixError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionsError {
    #[error(transparent)]
    Supermatrix(#[from] SupermatrixError),
    #[error(transparent)]
    Grassmann(#[from] GrassmannError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("reduced Lagrangian still depends on theta or thetabar: {expr}")]
    NotComponent { expr: String },
}

/// A kinetic term computed in full next to its closed-form expansion.
#[derive(Clone, PartialEq, Debug)]
pub struct KineticExpansion {
    pub full: SuperNumber,
    pub printed: SuperNumber,
    /// `full - printed`.
    pub residual: SuperNumber,
}

impl KineticExpansion {
    fn new(full: SuperNumber, printed: SuperNumber) -> Self {
        let residual = &full - &printed;
        Self {
            full,
            printed,
            residual,
        }
    }
}

fn derivs(x: &SuperNumber) -> [SuperNumber; 3] {
    GradedIndex::ALL.map(|m| partial(m, x))
}

fn two(x: &SuperNumber) -> SuperNumber {
    x.scale(&RatFunc::from_int(2))
}

/// `D_tX D_tX` against `a²∂_tX∂_tX + 2aα∂_tX∂_θX + 2aβ∂_tX∂_θ̄X`.
pub fn kinetic_dtdt(e: &VierbeinParams, x: &SuperNumber) -> KineticExpansion {
    let dx = e.covariant_dt().apply(x);
    let [xt, xth, xtb] = derivs(x);
    let printed = &(&(&(&e.a * &e.a) * &(&xt * &xt)) + &two(&(&(&e.a * &e.alpha) * &(&xt * &xth))))
        + &two(&(&(&e.a * &e.beta) * &(&xt * &xtb)));
    KineticExpansion::new(&dx * &dx, printed)
}

/// `D_θX D_θ̄X` against
/// `γδ(∂_tX)² + (γd - δb)∂_tX∂_θX + (γe - δc)∂_tX∂_θ̄X + (cd - be)∂_θ̄X∂_θX`.
pub fn kinetic_dtheta_dthetabar(e: &VierbeinParams, x: &SuperNumber) -> KineticExpansion {
    let full = &e.covariant_dtheta().apply(x) * &e.covariant_dthetabar().apply(x);
    let [xt, xth, xtb] = derivs(x);
    let k1 = &e.gamma * &e.delta;
    let k2 = &(&e.gamma * &e.d) - &(&e.delta * &e.b);
    let k3 = &(&e.gamma * &e.e) - &(&e.delta * &e.c);
    let k4 = &(&e.c * &e.d) - &(&e.b * &e.e);
    let printed = &(&(&(&k1 * &(&xt * &xt)) + &(&k2 * &(&xt * &xth))) + &(&k3 * &(&xt * &xtb)))
        + &(&k4 * &(&xtb * &xth));
    KineticExpansion::new(full, printed)
}

/// Which kinetic operator enters the action.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ActionForm {
    /// `½ D_tX D_tX`.
    TimeKinetic,
    /// `½ D_θX D_θ̄X`.
    OddKinetic,
}

/// The bracket `½K - V(X)` of the action.
pub fn lagrangian_bracket(e: &VierbeinParams, x: &SuperNumber, form: ActionForm) -> SuperNumber {
    let k = match form {
        ActionForm::TimeKinetic => kinetic_dtdt(e, x).full,
        ActionForm::OddKinetic => kinetic_dtheta_dthetabar(e, x).full,
    };
    &k.scale(&RatFunc::from_ratio(1, 2)) - &compose_potential(x)
}

/// The superdensity `i E [½K - V(X)]`. `E` is the frame's weight unless
/// `weight_override` is given.
pub fn build_action(
    e: &VierbeinParams,
    x: &SuperNumber,
    form: ActionForm,
    weight_override: Option<&SuperNumber>,
) -> Result<SuperNumber, ActionsError> {
    let w = match weight_override {
        Some(w) => w.clone(),
        None => e.weight()?,
    };
    Ok((&w * &lagrangian_bracket(e, x, form)).scale(&RatFunc::i()))
}

/// `ε - iθ̄θ/ħ`.
pub fn regularized_weight() -> SuperNumber {
    let c = &(-&RatFunc::i()) * &RatFunc::sym("hbar").inv().expect("hbar is a nonzero symbol");
    even_entry(RatFunc::sym("eps"), c)
}

/// Classical reference: the reduction of the identity frame with unit weight.
pub fn cpi_reference(x: &SuperNumber) -> ComponentLagrangian {
    let dens = build_action(&VierbeinParams::identity(), x, ActionForm::TimeKinetic, None)
        .expect("identity frame is invertible");
    berezin_reduce(&dens).expect("reduction of a superdensity")
}

/// Quantum reference weight `(1/ħ)[½x'x' - V]`.
pub fn qpi_reference() -> ComponentLagrangian {
    let xp = RatFunc::sym("x'");
    let body = &(&(&xp * &xp) * &RatFunc::from_ratio(1, 2)) - &RatFunc::sym("V");
    ComponentLagrangian::new(RatFunc::sym("hbar").inv().expect("nonzero"), SuperNumber::scalar(body))
}

/// How the weight of an ε-dependent family is obtained.
#[derive(Clone, PartialEq, Debug)]
pub enum WeightSource {
    /// Use `ε - iθ̄θ/ħ` regardless of the frame.
    Regularized,
    /// Use the frame's own `sdet(E^M_A)⁻¹`.
    Frame,
}

/// Both ends of the ε interpolation and their diffs against the references.
#[derive(Clone, PartialEq, Debug)]
pub struct EpsilonLimits {
    pub reduced: ComponentLagrangian,
    pub at_zero: ComponentLagrangian,
    pub at_one: ComponentLagrangian,
    pub zero_vs_qpi: LagrangianDiff,
    pub one_vs_cpi: LagrangianDiff,
}

pub fn epsilon_limits(
    family: &VierbeinParams,
    x: &SuperNumber,
    source: WeightSource,
) -> Result<EpsilonLimits, ActionsError> {
    let w = match source {
        WeightSource::Regularized => regularized_weight(),
        WeightSource::Frame => family.weight()?,
    };
    let dens = build_action(family, x, ActionForm::TimeKinetic, Some(&w))?;
    let reduced = berezin_reduce(&dens)?;
    let eps = Symbol::new("eps");
    let at_zero = reduced.subst1(eps, &RatFunc::zero())?;
    let at_one = reduced.subst1(eps, &RatFunc::one())?;
    let zero_vs_qpi = at_zero.diff(&qpi_reference());
    let one_vs_cpi = at_one.diff(&cpi_reference(x));
    Ok(EpsilonLimits {
        reduced,
        at_zero,
        at_one,
        zero_vs_qpi,
        one_vs_cpi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::matrep::represent;
    use crate::grassmann::{Generator, SuperNumber};
    use crate::ring::GaussRat;
    use crate::superspace::standard_superfield;

    fn s(n: &str) -> SuperNumber {
        SuperNumber::sym(n)
    }

    fn classical(sign: i64) -> VierbeinParams {
        VierbeinParams {
            a: SuperNumber::int(sign),
            alpha: SuperNumber::zero(),
            beta: SuperNumber::zero(),
            ..VierbeinParams::generic()
        }
    }

    #[test]
    fn covariant_dt_of_identity_is_dt() {
        let d = VierbeinParams::identity().covariant_dt();
        assert_eq!(d.coeffs, [SuperNumber::one(), SuperNumber::zero(), SuperNumber::zero()]);
    }

    #[test]
    fn classical_kinetic_term() {
        let x = standard_superfield();
        let xt = partial(GradedIndex::T, &x);
        for sign in [1, -1] {
            let k = kinetic_dtdt(&classical(sign), &x);
            assert_eq!(k.full, &xt * &xt);
            assert!(k.residual.is_zero());
        }
    }

    #[test]
    fn generic_kinetic_residual_is_the_alpha_beta_cross_term() {
        let x = standard_superfield();
        let e = VierbeinParams::generic();
        let k = kinetic_dtdt(&e, &x);
        let [_, xth, xtb] = derivs(&x);
        let want = -&two(&(&(&e.alpha * &e.beta) * &(&xth * &xtb)));
        assert_eq!(k.residual, want);
    }

    #[test]
    fn odd_kinetic_expansion_is_exact() {
        let x = standard_superfield();
        assert!(kinetic_dtheta_dthetabar(&VierbeinParams::generic(), &x).residual.is_zero());
        let k = kinetic_dtheta_dthetabar(&VierbeinParams::identity(), &x);
        let [_, xth, xtb] = derivs(&x);
        assert_eq!(k.full, -(&xtb * &xth));
    }

    #[test]
    fn weight_matches_inverse_frame() {
        let e = VierbeinParams::generic();
        let inv = e.matrix().unwrap().sinv().unwrap();
        assert_eq!(inv.sdet().unwrap(), e.weight().unwrap());
    }

    #[test]
    fn classical_lagrangian_by_hand() {
        let x = standard_superfield();
        let l = cpi_reference(&x);
        let g = |n| Generator::lookup(n).unwrap();
        let i = SuperNumber::i();
        let inner = &(&(&(&i * &(&s("x'") * &s("lambda'"))) + &SuperNumber::product_of(&[g("c'"), g("cbar'")]))
            - &(&i * &(&s("lambda") * &s("V'"))))
            - &(&s("V''") * &SuperNumber::product_of(&[g("c"), g("cbar")]));
        assert_eq!(l.total(), &i * &inner);
    }

    #[test]
    fn squares_agree_with_fock_oracle() {
        // soul of ∂_tX at numeric jets, squared both ways
        let g = |n| Generator::lookup(n).unwrap();
        let gens = [Generator::theta(), Generator::thetabar(), g("c'"), g("cbar'")];
        crate::grassmann::with_order(&gens, || {
            let x = standard_superfield();
            let xt = partial(GradedIndex::T, &x).soul();
            let bind = std::collections::BTreeMap::from([
                (Symbol::new("lambda'"), RatFunc::from_ratio(3, 7)),
                (Symbol::new("x'"), RatFunc::from_int(5)),
            ]);
            let xt = xt.substitute(&bind).unwrap();
            let sq = &xt * &xt;
            let m = represent(&xt, 4).unwrap();
            let m2 = m.mul(&m);
            for mask in 0..16u64 {
                let want = sq.coeff(mask).as_constant().unwrap();
                assert_eq!(m2.get(mask as usize, 0), &want);
            }
            assert_ne!(m2.get(0b1111, 0), &GaussRat::zero());
        });
    }

    #[test]
    fn regularized_action_splits() {
        let x = standard_superfield();
        let e = classical(1);
        let w = regularized_weight();
        let dens = build_action(&e, &x, ActionForm::TimeKinetic, Some(&w)).unwrap();
        let br = lagrangian_bracket(&e, &x, ActionForm::TimeKinetic);
        let ie = &RatFunc::i() * &RatFunc::sym("eps");
        let hinv = RatFunc::sym("hbar").inv().unwrap();
        let want = &br.scale(&ie) + &(&SuperNumber::thetabar_theta() * &br).scale(&hinv);
        assert_eq!(dens, want);
        let inv = w.inv().unwrap();
        let eps = RatFunc::sym("eps");
        let want_inv = even_entry(eps.inv().unwrap(), &RatFunc::i() * &(&(&eps * &eps) * &RatFunc::sym("hbar")).inv().unwrap());
        assert_eq!(inv, want_inv);
    }

    #[test]
    fn quantum_limit_of_regularized_weight() {
        let x = standard_superfield();
        let lim = epsilon_limits(&classical(1), &x, WeightSource::Regularized).unwrap();
        assert!(lim.zero_vs_qpi.is_empty(), "{:?}", lim.zero_vs_qpi);
        assert!(!lim.one_vs_cpi.is_empty());
    }
}
