//! First-order super-differential operators `A^t ∂_t + A^θ ∂_θ + A^θ̄ ∂_θ̄`.

use std::collections::BTreeMap;
use std::fmt;

use crate::grassmann::{Generator, Parity, SuperNumber};
use crate::ring::{linalg, RatFunc, Symbol};
use crate::supermatrix::GradedIndex;

use super::jets::total_dt;
use super::SuperspaceError;

/// `∂_M f`, with `∂_t` the total time derivative and the odd directions
/// acting as left derivatives.
pub fn partial(m: GradedIndex, f: &SuperNumber) -> SuperNumber {
    match m {
        GradedIndex::T => total_dt(f),
        GradedIndex::Theta => f.left_derive(Generator::theta()),
        GradedIndex::Thetabar => f.left_derive(Generator::thetabar()),
    }
}

#[derive(Clone, PartialEq, Debug, Default)]
pub struct DiffOperator {
    /// Coefficients of `∂_t`, `∂_θ`, `∂_θ̄`.
    pub coeffs: [SuperNumber; 3],
}

impl DiffOperator {
    pub fn new(t: SuperNumber, theta: SuperNumber, thetabar: SuperNumber) -> Self {
        Self {
            coeffs: [t, theta, thetabar],
        }
    }

    pub fn coeff(&self, m: GradedIndex) -> &SuperNumber {
        &self.coeffs[m.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(SuperNumber::is_zero)
    }

    /// Overall parity, or `None` if mixed.
    pub fn parity(&self) -> Option<Parity> {
        let mut found: Option<Parity> = None;
        for m in GradedIndex::ALL {
            let c = self.coeff(m);
            if c.is_zero() {
                continue;
            }
            let p = c.parity()?.add(m.parity());
            match found {
                Some(q) if q != p => return None,
                _ => found = Some(p),
            }
        }
        Some(found.unwrap_or(Parity::Even))
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        Self {
            coeffs: self.coeffs.clone().map(|x| x.scale(c)),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            coeffs: std::array::from_fn(|i| &self.coeffs[i] + &o.coeffs[i]),
        }
    }

    pub fn apply(&self, f: &SuperNumber) -> SuperNumber {
        GradedIndex::ALL.iter().fold(SuperNumber::zero(), |acc, &m| {
            let c = self.coeff(m);
            if c.is_zero() {
                acc
            } else {
                &acc + &(c * &partial(m, f))
            }
        })
    }

    /// `D1∘D2` split into its first-order part and the coefficients of the
    /// canonical second-order monomials `∂_M ∂_N` (`M ≤ N`, no odd squares).
    fn compose(&self, o: &Self) -> (DiffOperator, BTreeMap<(GradedIndex, GradedIndex), SuperNumber>) {
        let mut first = DiffOperator::default();
        let mut second: BTreeMap<(GradedIndex, GradedIndex), SuperNumber> = BTreeMap::new();
        for m in GradedIndex::ALL {
            let a = self.coeff(m);
            if a.is_zero() {
                continue;
            }
            for n in GradedIndex::ALL {
                let b = o.coeff(n);
                if b.is_zero() {
                    continue;
                }
                first.coeffs[n.index()] = &first.coeffs[n.index()] + &(a * &partial(m, b));
                // ∂_M (B ∂_N f) ⊃ (-1)^{|M||B|} B ∂_M ∂_N f
                let bp = b.parity().unwrap_or(Parity::Even);
                let mut term = a * b;
                if m.parity().sign_with(bp) < 0 {
                    term = -term;
                }
                let (key, flip) = if m <= n {
                    ((m, n), false)
                } else {
                    ((n, m), m.parity().sign_with(n.parity()) < 0)
                };
                if key.0 == key.1 && key.0.parity() == Parity::Odd {
                    continue;
                }
                if flip {
                    term = -term;
                }
                let e = second.entry(key).or_default();
                *e = &*e + &term;
            }
        }
        (first, second)
    }

    /// Graded commutator `D1∘D2 - (-1)^{|D1||D2|} D2∘D1`.
    pub fn graded_bracket(&self, o: &Self) -> Result<DiffOperator, SuperspaceError> {
        let p1 = self.parity().ok_or(SuperspaceError::NotHomogeneous)?;
        let p2 = o.parity().ok_or(SuperspaceError::NotHomogeneous)?;
        let sign = RatFunc::from_int(-p1.sign_with(p2));
        let (f12, s12) = self.compose(o);
        let (f21, s21) = o.compose(self);
        for key in s12.keys().chain(s21.keys()) {
            let zero = SuperNumber::zero();
            let a = s12.get(key).unwrap_or(&zero);
            let b = s21.get(key).unwrap_or(&zero);
            if !(a + &b.scale(&sign)).is_zero() {
                return Err(SuperspaceError::NotFirstOrder {
                    index: format!("{}{}", key.0, key.1),
                });
            }
        }
        Ok(f12.add(&f21.scale(&sign)))
    }

    /// Expands `self` as `Σ kᵢ basis[i]` with `t`-independent scalar `kᵢ`.
    pub fn expand_in(&self, basis: &[DiffOperator]) -> Option<Vec<RatFunc>> {
        let t = Symbol::new("t");
        // One equation per (∂ index, generator mask, power of t).
        let mut rows: BTreeMap<(usize, u64, usize), (Vec<RatFunc>, RatFunc)> = BTreeMap::new();
        let mut push = |op: &DiffOperator, col: Option<usize>| {
            for (i, c) in op.coeffs.iter().enumerate() {
                for (mask, k) in c.terms() {
                    let pieces = k.coeffs_in(t)?;
                    for (deg, piece) in pieces.into_iter().enumerate() {
                        let row = rows
                            .entry((i, mask, deg))
                            .or_insert_with(|| (vec![RatFunc::zero(); basis.len()], RatFunc::zero()));
                        match col {
                            Some(j) => row.0[j] = &row.0[j] + &piece,
                            None => row.1 = &row.1 + &piece,
                        }
                    }
                }
            }
            Some(())
        };
        for (j, b) in basis.iter().enumerate() {
            push(b, Some(j))?;
        }
        push(self, None)?;
        let (a, rhs): (Vec<_>, Vec<_>) = rows.into_values().unzip();
        if a.is_empty() {
            return Some(vec![RatFunc::zero(); basis.len()]);
        }
        linalg::solve(&a, &rhs)
    }
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = GradedIndex::ALL
            .iter()
            .filter(|m| !self.coeff(**m).is_zero())
            .map(|m| format!("({})*d_{}", self.coeff(*m), m))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
