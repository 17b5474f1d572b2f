use std::collections::BTreeMap;

use crate::grassmann::{Parity, SuperNumber};
use crate::ring::{RatFunc, RingError, Symbol};
use crate::superspace::DiffOperator;
use crate::supermatrix::{SuperMatrix, SupermatrixError};

/// Entries of the frame `E^M_A`, laid out as
///
/// ```text
/// a      alpha  beta
/// gamma  b      c
/// delta  d      e
/// ```
///
/// with rows the flat index `A` and columns the curved index `M`.
#[derive(Clone, PartialEq, Debug)]
pub struct VierbeinParams {
    pub a: SuperNumber,
    pub alpha: SuperNumber,
    pub beta: SuperNumber,
    pub gamma: SuperNumber,
    pub b: SuperNumber,
    pub c: SuperNumber,
    pub delta: SuperNumber,
    pub d: SuperNumber,
    pub e: SuperNumber,
}

/// `X_B + X_S θ̄θ`.
pub fn even_entry(body: RatFunc, soul: RatFunc) -> SuperNumber {
    &SuperNumber::scalar(body) + &SuperNumber::thetabar_theta().scale(&soul)
}

/// `X_θ θ + X_θ̄ θ̄`.
pub fn odd_entry(th: RatFunc, thb: RatFunc) -> SuperNumber {
    &SuperNumber::theta().scale(&th) + &SuperNumber::thetabar().scale(&thb)
}

fn sym_even(root: &str) -> SuperNumber {
    even_entry(RatFunc::sym(&format!("{root}_B")), RatFunc::sym(&format!("{root}_S")))
}

fn sym_odd(root: &str) -> SuperNumber {
    odd_entry(RatFunc::sym(&format!("{root}_th")), RatFunc::sym(&format!("{root}_thb")))
}

impl VierbeinParams {
    /// Every entry a fresh symbol split into body/soul or θ/θ̄ parts.
    pub fn generic() -> Self {
        Self {
            a: sym_even("a"),
            alpha: sym_odd("alpha"),
            beta: sym_odd("beta"),
            gamma: sym_odd("gamma"),
            b: sym_even("b"),
            c: sym_even("c"),
            delta: sym_odd("delta"),
            d: sym_even("d"),
            e: sym_even("e"),
        }
    }

    pub fn identity() -> Self {
        Self::from_matrix(&SuperMatrix::identity())
    }

    pub fn from_matrix(m: &SuperMatrix) -> Self {
        let g = |i, j| m.at(i, j).clone();
        Self {
            a: g(0, 0),
            alpha: g(0, 1),
            beta: g(0, 2),
            gamma: g(1, 0),
            b: g(1, 1),
            c: g(1, 2),
            delta: g(2, 0),
            d: g(2, 1),
            e: g(2, 2),
        }
    }

    /// Checks parities: `a … e` even, `alpha … delta` odd.
    pub fn validated(self) -> Result<Self, SupermatrixError> {
        self.matrix()?;
        Ok(self)
    }

    pub fn matrix(&self) -> Result<SuperMatrix, SupermatrixError> {
        SuperMatrix::new(self.raw().entries().clone())
    }

    pub fn entries(&self) -> [(&'static str, &SuperNumber); 9] {
        [
            ("a", &self.a),
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("gamma", &self.gamma),
            ("b", &self.b),
            ("c", &self.c),
            ("delta", &self.delta),
            ("d", &self.d),
            ("e", &self.e),
        ]
    }

    pub fn map(&self, f: impl Fn(&SuperNumber) -> SuperNumber) -> Self {
        Self {
            a: f(&self.a),
            alpha: f(&self.alpha),
            beta: f(&self.beta),
            gamma: f(&self.gamma),
            b: f(&self.b),
            c: f(&self.c),
            delta: f(&self.delta),
            d: f(&self.d),
            e: f(&self.e),
        }
    }

    pub fn substitute(&self, bindings: &BTreeMap<Symbol, RatFunc>) -> Result<Self, RingError> {
        Ok(Self::from_matrix(&self.raw().substitute(bindings)?))
    }

    fn raw(&self) -> SuperMatrix {
        SuperMatrix::unchecked([
            [self.a.clone(), self.alpha.clone(), self.beta.clone()],
            [self.gamma.clone(), self.b.clone(), self.c.clone()],
            [self.delta.clone(), self.d.clone(), self.e.clone()],
        ])
    }

    /// Superdeterminant of `E^M_A`.
    pub fn sdet(&self) -> Result<SuperNumber, SupermatrixError> {
        self.matrix()?.sdet()
    }

    /// The action weight `sdet(E^A_M) = sdet(E^M_A)⁻¹`.
    pub fn weight(&self) -> Result<SuperNumber, SupermatrixError> {
        Ok(self.sdet()?.inv()?)
    }

    /// `D_A = E^M_A ∂_M` for the flat index in `row`.
    fn covariant(&self, row: [&SuperNumber; 3]) -> DiffOperator {
        DiffOperator::new(row[0].clone(), row[1].clone(), row[2].clone())
    }

    pub fn covariant_dt(&self) -> DiffOperator {
        self.covariant([&self.a, &self.alpha, &self.beta])
    }

    pub fn covariant_dtheta(&self) -> DiffOperator {
        self.covariant([&self.gamma, &self.b, &self.c])
    }

    pub fn covariant_dthetabar(&self) -> DiffOperator {
        self.covariant([&self.delta, &self.d, &self.e])
    }

    /// True when every entry has the parity its position requires.
    pub fn is_consistent(&self) -> bool {
        self.entries().iter().enumerate().all(|(k, (_, x))| {
            let want = if matches!(k, 0 | 4 | 5 | 7 | 8) { Parity::Even } else { Parity::Odd };
            x.is_zero() || x.parity() == Some(want)
        })
    }
}
