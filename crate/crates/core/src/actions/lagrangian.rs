use std::fmt;

use crate::grassmann::{Generator, SuperNumber};
use crate::ring::{RatFunc, RingError, Symbol};

use super::ActionsError;

/// A θ-free Lagrangian in the field jets, kept as `prefactor · body`.
#[derive(Clone, PartialEq, Debug)]
pub struct ComponentLagrangian {
    pub prefactor: RatFunc,
    pub body: SuperNumber,
}

/// Terms by which two component Lagrangians differ.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct LagrangianDiff {
    /// `left - right`.
    pub residual: SuperNumber,
}

impl LagrangianDiff {
    pub fn is_empty(&self) -> bool {
        self.residual.is_zero()
    }

    /// The differing monomials, one per entry.
    pub fn terms(&self) -> Vec<String> {
        self.residual
            .id_terms()
            .into_iter()
            .map(|(ids, c)| {
                let gens: Vec<Generator> = ids
                    .iter()
                    .map(|&i| {
                        (0..crate::grassmann::MAX_GENERATORS as u32)
                            .map(Generator::at_position)
                            .find(|g| g.id() == i)
                            .expect("known id")
                    })
                    .collect();
                SuperNumber::product_of(&gens).scale(&c).to_string()
            })
            .collect()
    }
}

impl ComponentLagrangian {
    pub fn new(prefactor: RatFunc, body: SuperNumber) -> Self {
        Self { prefactor, body }
    }

    pub fn total(&self) -> SuperNumber {
        self.body.scale(&self.prefactor)
    }

    pub fn subst1(&self, s: Symbol, v: &RatFunc) -> Result<Self, RingError> {
        Ok(Self::new(RatFunc::one(), self.total().subst1(s, v)?))
    }

    pub fn diff(&self, other: &ComponentLagrangian) -> LagrangianDiff {
        LagrangianDiff {
            residual: &self.total() - &other.total(),
        }
    }
}

impl fmt::Display for ComponentLagrangian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prefactor.is_one() {
            write!(f, "{}", self.body)
        } else {
            write!(f, "({})*({})", self.prefactor, self.body)
        }
    }
}

/// `∫ dθ dθ̄` of a superdensity.
pub fn berezin_reduce(density: &SuperNumber) -> Result<ComponentLagrangian, ActionsError> {
    let out = density.integrate_theta();
    let odd = Generator::theta().bit() | Generator::thetabar().bit();
    if out.support() & odd != 0 {
        return Err(ActionsError::NotComponent {
            expr: out.to_string(),
        });
    }
    Ok(ComponentLagrangian::new(RatFunc::one(), out))
}
