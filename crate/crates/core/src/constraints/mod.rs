//! Body/soul constraint systems on the frame entries, their closed-form
//! solution families, and parameter counting.

mod cpi;
mod nogo;
mod qpi;

pub use cpi::{cpi_constraints, cpi_families, metric_from_pi, pi_parameters, PiParameters};
pub use nogo::{
    odd_kinetic_conditions, odd_kinetic_infeasibility, relaxed_system_witness, InfeasibilityCertificate, Witness,
};
pub use qpi::{
    qpi_constraints, qpi_families, qpi_special_derived, qpi_special_printed, sign_pairing_check,
    PairingOutcome, QpiFamilyKind, QpiQuantities,
};

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::actions::{ActionsError, VierbeinParams};
use crate::grassmann::{GrassmannError, SuperNumber};
use crate::ring::{linalg, RatFunc, RingError, Symbol};
use crate::supermatrix::SupermatrixError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstraintError {
    #[error("equations are dependent at every sampled point (rank {rank} < {equations})")]
    RankDeficient { rank: usize, equations: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Supermatrix(#[from] SupermatrixError),
    #[error(transparent)]
    Grassmann(#[from] GrassmannError),
    #[error(transparent)]
    Actions(#[from] ActionsError),
}

/// Choice of the upper or lower sign in a `±` relation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn rat(self) -> RatFunc {
        RatFunc::from_int(self.value())
    }

    pub fn name(self) -> &'static str {
        match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Which denominator the closed form divides by.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum EbCase {
    /// `e_B ≠ 0`: solve for `b_B`, `b_S`.
    Nonzero,
    /// `e_B = 0`: solve for `c_B`, `c_S`.
    Zero,
}

impl EbCase {
    pub const BOTH: [EbCase; 2] = [EbCase::Nonzero, EbCase::Zero];

    pub fn name(self) -> &'static str {
        match self {
            EbCase::Nonzero => "eB_nonzero",
            EbCase::Zero => "eB_zero",
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Equation {
    pub name: String,
    pub lhs: RatFunc,
    pub rhs: RatFunc,
}

impl Equation {
    pub fn new(name: impl Into<String>, lhs: RatFunc, rhs: RatFunc) -> Self {
        Self {
            name: name.into(),
            lhs,
            rhs,
        }
    }

    pub fn residual(&self) -> RatFunc {
        &self.lhs - &self.rhs
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} = {}", self.name, self.lhs, self.rhs)
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct ConstraintSystem {
    pub tag: String,
    pub equations: Vec<Equation>,
}

impl ConstraintSystem {
    pub fn new(tag: impl Into<String>, equations: Vec<Equation>) -> Self {
        Self {
            tag: tag.into(),
            equations,
        }
    }

    /// Residual of every equation after substitution.
    pub fn residuals(&self, bindings: &BTreeMap<Symbol, RatFunc>) -> Result<Vec<(String, RatFunc)>, RingError> {
        self.equations
            .iter()
            .map(|e| Ok((e.name.clone(), e.residual().substitute(bindings)?)))
            .collect()
    }

    pub fn is_satisfied_by(&self, bindings: &BTreeMap<Symbol, RatFunc>) -> Result<bool, RingError> {
        Ok(self.residuals(bindings)?.iter().all(|(_, r)| r.is_zero()))
    }

    /// Jacobian of the residuals with respect to `params`.
    pub fn jacobian(&self, params: &[Symbol]) -> Vec<Vec<RatFunc>> {
        self.equations
            .iter()
            .map(|e| {
                let r = e.residual();
                params.iter().map(|&s| r.derivative(s)).collect()
            })
            .collect()
    }
}

/// A closed-form solution: bindings for some symbols in terms of the rest.
#[derive(Clone, PartialEq, Debug)]
pub struct SolutionFamily {
    pub name: String,
    pub sign: Sign,
    pub case: EbCase,
    pub bindings: BTreeMap<Symbol, RatFunc>,
    pub free_symbols: Vec<Symbol>,
}

/// Outcome of substituting a family into a system.
#[derive(Clone, PartialEq, Debug)]
pub struct FamilyCheck {
    pub family: String,
    pub system: String,
    pub residuals: Vec<(String, RatFunc)>,
}

impl FamilyCheck {
    pub fn holds(&self) -> bool {
        self.residuals.iter().all(|(_, r)| r.is_zero())
    }
}

pub fn verify_family(f: &SolutionFamily, s: &ConstraintSystem) -> Result<FamilyCheck, RingError> {
    Ok(FamilyCheck {
        family: f.name.clone(),
        system: s.tag.clone(),
        residuals: s.residuals(&f.bindings)?,
    })
}

/// The twelve frame components left once `a = ±1` and `α = β = 0`.
pub fn frame_symbols() -> Vec<Symbol> {
    [
        "gamma_th", "gamma_thb", "delta_th", "delta_thb", "b_B", "b_S", "c_B", "c_S", "d_B", "d_S", "e_B",
        "e_S",
    ]
    .iter()
    .map(|n| Symbol::new(n))
    .collect()
}

/// The frame with `a = ±1`, `α = β = 0` and every other entry generic.
pub fn classical_frame(sign: Sign) -> VierbeinParams {
    VierbeinParams {
        a: SuperNumber::int(sign.value()),
        alpha: SuperNumber::zero(),
        beta: SuperNumber::zero(),
        ..VierbeinParams::generic()
    }
}

impl SolutionFamily {
    /// The classical frame with this family's bindings applied.
    pub fn vierbein(&self) -> Result<VierbeinParams, RingError> {
        classical_frame(self.sign).substitute(&self.bindings)
    }

    /// Rational point of the family: free symbols drawn from `rng`, then
    /// the bound symbols evaluated.
    pub fn sample(&self, rng: &mut impl Rng) -> Result<BTreeMap<Symbol, RatFunc>, RingError> {
        loop {
            let mut point: BTreeMap<Symbol, RatFunc> = BTreeMap::new();
            for &s in &self.free_symbols {
                let n = rng.gen_range(-9i64..=9);
                let d = rng.gen_range(1i64..=5);
                point.insert(s, RatFunc::from_ratio(n, d));
            }
            let mut ok = true;
            let mut full = point.clone();
            for (&s, v) in &self.bindings {
                match v.substitute(&point) {
                    Ok(x) => {
                        full.insert(s, x);
                    }
                    Err(RingError::PoleAtSubstitution { .. }) => {
                        ok = false;
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
            if ok {
                return Ok(full);
            }
        }
    }
}

/// `total - rank(J)` where `J` is the Jacobian at up to `samples` random
/// points of `family`; the largest rank seen is used.
pub fn free_parameter_count(
    system: &ConstraintSystem,
    params: &[Symbol],
    family: Option<&SolutionFamily>,
    samples: usize,
    rng: &mut impl Rng,
) -> Result<usize, ConstraintError> {
    let n_eq = system.equations.len();
    if n_eq == 0 {
        return Ok(params.len());
    }
    let jac = system.jacobian(params);
    let mut best = 0;
    for _ in 0..samples.max(1) {
        let point = match family {
            Some(f) => f.sample(rng)?,
            None => params
                .iter()
                .map(|&s| (s, RatFunc::from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5))))
                .collect(),
        };
        let Ok(numeric) = jac
            .iter()
            .map(|row| row.iter().map(|x| x.substitute(&point)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
        else {
            continue;
        };
        best = best.max(linalg::rank(&numeric));
        if best == n_eq {
            return Ok(params.len() - n_eq);
        }
    }
    Err(ConstraintError::RankDeficient {
        rank: best,
        equations: n_eq,
    })
}

pub(crate) fn sym(n: &str) -> RatFunc {
    RatFunc::sym(n)
}

pub(crate) fn s(n: &str) -> Symbol {
    Symbol::new(n)
}

/// `(body, θ̄θ-coefficient)` of an even element that has no single-θ part.
pub(crate) fn split_even(x: &SuperNumber) -> (RatFunc, RatFunc) {
    let th = crate::grassmann::Generator::theta();
    let tb = crate::grassmann::Generator::thetabar();
    (x.body(), x.coeff_of(&[tb, th]))
}
