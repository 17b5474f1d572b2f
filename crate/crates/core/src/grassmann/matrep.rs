//! Faithful matrix representation of the Grassmann algebra on `n` generators
//! by fermionic creation operators on a `2^n`-dimensional Fock space.
//!
//! It shares no code with the product in [`SuperNumber`] and serves as an
//! independent check of sign conventions.

use std::collections::BTreeMap;

use crate::ring::{GaussRat, RatFunc, RingError, Symbol};

use super::number::{bits, SuperNumber};

/// Dense square matrix over the Gaussian rationals.
#[derive(Clone, PartialEq, Debug)]
pub struct FockMatrix {
    dim: usize,
    data: Vec<GaussRat>,
}

impl FockMatrix {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            data: vec![GaussRat::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.data[i * dim + i] = GaussRat::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &GaussRat {
        &self.data[row * self.dim + col]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(GaussRat::is_zero)
    }

    /// Creation operator for mode `k` out of `n`.
    pub fn creation(n: u32, k: u32) -> Self {
        let dim = 1usize << n;
        let mut m = Self::zero(dim);
        for s in 0..dim {
            if s & (1 << k) != 0 {
                continue;
            }
            let below = (s & ((1 << k) - 1)).count_ones();
            let v = if below.is_multiple_of(2) {
                GaussRat::one()
            } else {
                -&GaussRat::one()
            };
            m.data[(s | (1 << k)) * dim + s] = v;
        }
        m
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.dim;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &o.data[k * n + j];
                    if !b.is_zero() {
                        out.data[i * n + j] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

/// Image of `x` when the generators at positions `0..n` act as creation
/// operators. Returns `None` if a coefficient is not a constant or `x` uses
/// a position `>= n`.
pub fn represent(x: &SuperNumber, n: u32) -> Option<FockMatrix> {
    let dim = 1usize << n;
    let mut out = FockMatrix::zero(dim);
    for (mask, c) in x.terms() {
        if mask >> n != 0 {
            return None;
        }
        let c = c.as_constant()?;
        let mut m = FockMatrix::identity(dim);
        for p in bits(mask) {
            m = m.mul(&FockMatrix::creation(n, p));
        }
        out = out.add(&m.scale(&c));
    }
    Some(out)
}

/// Substitutes exact numeric values for every scalar symbol, then
/// represents the result on `n` modes.
pub fn to_matrix_rep(
    x: &SuperNumber,
    bindings: &BTreeMap<Symbol, GaussRat>,
    n: u32,
) -> Result<Option<FockMatrix>, RingError> {
    let numeric: BTreeMap<Symbol, RatFunc> = bindings
        .iter()
        .map(|(&s, v)| (s, RatFunc::constant(v.clone())))
        .collect();
    let y = x.substitute(&numeric)?;
    Ok(represent(&y, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn creation_operators_anticommute() {
        let n = 3;
        for j in 0..n {
            for k in 0..n {
                let (a, b) = (FockMatrix::creation(n, j), FockMatrix::creation(n, k));
                assert!(a.mul(&b).add(&b.mul(&a)).is_zero());
            }
        }
    }

    #[test]
    fn representation_is_faithful_on_basis() {
        let x = &SuperNumber::theta() * &SuperNumber::thetabar();
        let m = represent(&x, 2).unwrap();
        assert!(!m.is_zero());
        assert_eq!(m.get(3, 0), &GaussRat::one());
    }

    #[test]
    fn numeric_bindings_and_poles() {
        let eps = Symbol::new("eps");
        let x = SuperNumber::scalar(RatFunc::var(eps).inv().unwrap());
        let mut b = BTreeMap::new();
        b.insert(eps, GaussRat::from_int(2));
        let m = to_matrix_rep(&x, &b, 1).unwrap().unwrap();
        assert_eq!(m.get(0, 0), &GaussRat::from_ratio(1, 2));
        b.insert(eps, GaussRat::zero());
        assert!(matches!(to_matrix_rep(&x, &b, 1), Err(RingError::PoleAtSubstitution { .. })));
    }
}
