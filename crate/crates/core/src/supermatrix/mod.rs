//! Graded 3×3 matrices over the supertime indices `(t, θ, θ̄)`.

use std::fmt;

use thiserror::Error;

use crate::grassmann::{GrassmannError, Parity, SuperNumber};
use crate::ring::{RatFunc, RingError, Symbol};

use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SupermatrixError {
    #[error("entry ({row}, {col}) has parity inconsistent with its indices")]
    GradingMismatch { row: GradedIndex, col: GradedIndex },
    #[error("odd-odd block is singular: det = {det}")]
    SingularOddBlock { det: String },
    #[error("{block} block is not invertible")]
    SingularBlock { block: &'static str },
    #[error(transparent)]
    Grassmann(#[from] GrassmannError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// One of the three supertime directions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum GradedIndex {
    T,
    Theta,
    Thetabar,
}

impl GradedIndex {
    pub const ALL: [GradedIndex; 3] = [GradedIndex::T, GradedIndex::Theta, GradedIndex::Thetabar];

    pub fn parity(self) -> Parity {
        match self {
            GradedIndex::T => Parity::Even,
            _ => Parity::Odd,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            GradedIndex::T => "t",
            GradedIndex::Theta => "theta",
            GradedIndex::Thetabar => "thetabar",
        }
    }
}

impl fmt::Display for GradedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Which index carries the grading factor when building a metric from a frame.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GradingToggle {
    /// `(-1)^((1+|B|)|N|)` on the right pair of indices.
    Right,
    /// `(-1)^((1+|A|)|M|)` on the left pair.
    Left,
}

impl GradingToggle {
    pub fn name(self) -> &'static str {
        match self {
            GradingToggle::Right => "right",
            GradingToggle::Left => "left",
        }
    }
}

/// A 3×3 supermatrix with even rows/columns first: entry `(M, N)` has parity
/// `|M| + |N|`.
#[derive(Clone, PartialEq, Debug)]
pub struct SuperMatrix {
    e: [[SuperNumber; 3]; 3],
}

/// The `1|2` block split of a [`SuperMatrix`].
#[derive(Clone, PartialEq, Debug)]
pub struct BlockDecomp {
    pub a: SuperNumber,
    pub b: [SuperNumber; 2],
    pub c: [SuperNumber; 2],
    pub d: [[SuperNumber; 2]; 2],
}

impl SuperMatrix {
    /// Builds a matrix, checking the parity of every entry.
    pub fn new(e: [[SuperNumber; 3]; 3]) -> Result<Self, SupermatrixError> {
        for r in GradedIndex::ALL {
            for c in GradedIndex::ALL {
                let x = &e[r.index()][c.index()];
                let want = r.parity().add(c.parity());
                if !x.is_zero() && x.parity() != Some(want) {
                    return Err(SupermatrixError::GradingMismatch { row: r, col: c });
                }
            }
        }
        Ok(Self { e })
    }

    pub(crate) fn unchecked(e: [[SuperNumber; 3]; 3]) -> Self {
        Self { e }
    }

    pub fn identity() -> Self {
        Self::unchecked(std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { SuperNumber::one() } else { SuperNumber::zero() })
        }))
    }

    pub fn zero() -> Self {
        Self::unchecked(Default::default())
    }

    /// Flat metric: `η_tt = 1`, `η_θθ̄ = -1`, `η_θ̄θ = 1`.
    pub fn eta() -> Self {
        let mut m = Self::zero();
        m.e[0][0] = SuperNumber::one();
        m.e[1][2] = SuperNumber::int(-1);
        m.e[2][1] = SuperNumber::int(1);
        m
    }

    pub fn get(&self, r: GradedIndex, c: GradedIndex) -> &SuperNumber {
        &self.e[r.index()][c.index()]
    }

    pub fn at(&self, r: usize, c: usize) -> &SuperNumber {
        &self.e[r][c]
    }

    pub fn entries(&self) -> &[[SuperNumber; 3]; 3] {
        &self.e
    }

    pub fn blocks(&self) -> BlockDecomp {
        let e = &self.e;
        BlockDecomp {
            a: e[0][0].clone(),
            b: [e[0][1].clone(), e[0][2].clone()],
            c: [e[1][0].clone(), e[2][0].clone()],
            d: [[e[1][1].clone(), e[1][2].clone()], [e[2][1].clone(), e[2][2].clone()]],
        }
    }

    pub fn from_blocks(b: &BlockDecomp) -> Result<Self, SupermatrixError> {
        Self::new([
            [b.a.clone(), b.b[0].clone(), b.b[1].clone()],
            [b.c[0].clone(), b.d[0][0].clone(), b.d[0][1].clone()],
            [b.c[1].clone(), b.d[1][0].clone(), b.d[1][1].clone()],
        ])
    }

    pub fn map(&self, f: impl Fn(&SuperNumber) -> SuperNumber) -> Self {
        Self::unchecked(std::array::from_fn(|i| std::array::from_fn(|j| f(&self.e[i][j]))))
    }

    pub fn try_map<E>(&self, f: impl Fn(&SuperNumber) -> Result<SuperNumber, E>) -> Result<Self, E> {
        let mut out = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                out.e[i][j] = f(&self.e[i][j])?;
            }
        }
        Ok(out)
    }

    pub fn substitute(&self, b: &BTreeMap<Symbol, RatFunc>) -> Result<Self, RingError> {
        self.try_map(|x| x.substitute(b))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Row-column product with factor order preserved.
    pub fn smul(&self, o: &SuperMatrix) -> SuperMatrix {
        Self::unchecked(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..3).fold(SuperNumber::zero(), |acc, k| &acc + &(&self.e[i][k] * &o.e[k][j]))
            })
        }))
    }

    /// Ordinary determinant of the odd-odd block; its entries are even.
    pub fn det_d(&self) -> SuperNumber {
        let e = &self.e;
        &(&e[1][1] * &e[2][2]) - &(&e[1][2] * &e[2][1])
    }

    fn inv_d(&self) -> Result<[[SuperNumber; 2]; 2], SupermatrixError> {
        let det = self.det_d();
        let di = det.inv().map_err(|_| SupermatrixError::SingularOddBlock {
            det: det.to_string(),
        })?;
        let e = &self.e;
        Ok([
            [&e[2][2] * &di, -(&e[1][2] * &di)],
            [-(&e[2][1] * &di), &e[1][1] * &di],
        ])
    }

    /// `A - B D⁻¹ C`.
    fn schur_a(&self, dinv: &[[SuperNumber; 2]; 2]) -> SuperNumber {
        let e = &self.e;
        let mut acc = e[0][0].clone();
        for i in 0..2 {
            for j in 0..2 {
                acc = &acc - &(&(&e[0][1 + i] * &dinv[i][j]) * &e[1 + j][0]);
            }
        }
        acc
    }

    /// Superdeterminant `det(A - B D⁻¹ C) · det(D)⁻¹`.
    pub fn sdet(&self) -> Result<SuperNumber, SupermatrixError> {
        let dinv = self.inv_d()?;
        let di = self.det_d().inv()?;
        Ok(&self.schur_a(&dinv) * &di)
    }

    /// Block inverse.
    pub fn sinv(&self) -> Result<SuperMatrix, SupermatrixError> {
        let e = &self.e;
        let ainv = e[0][0]
            .inv()
            .map_err(|_| SupermatrixError::SingularBlock { block: "even-even" })?;
        let dinv = self
            .inv_d()
            .map_err(|_| SupermatrixError::SingularBlock { block: "odd-odd" })?;
        let s_a = self
            .schur_a(&dinv)
            .inv()
            .map_err(|_| SupermatrixError::SingularBlock { block: "even-even complement" })?;
        // D - C A⁻¹ B
        let mut sd: [[SuperNumber; 2]; 2] = Default::default();
        for i in 0..2 {
            for j in 0..2 {
                sd[i][j] = &e[1 + i][1 + j] - &(&(&e[1 + i][0] * &ainv) * &e[0][1 + j]);
            }
        }
        let det = &(&sd[0][0] * &sd[1][1]) - &(&sd[0][1] * &sd[1][0]);
        let di = det
            .inv()
            .map_err(|_| SupermatrixError::SingularBlock { block: "odd-odd complement" })?;
        let sd_inv = [
            [&sd[1][1] * &di, -(&sd[0][1] * &di)],
            [-(&sd[1][0] * &di), &sd[0][0] * &di],
        ];
        let mut out = Self::zero();
        out.e[0][0] = s_a.clone();
        for j in 0..2 {
            // -A⁻¹ B (D - C A⁻¹ B)⁻¹
            let v = (0..2).fold(SuperNumber::zero(), |acc, k| &acc + &(&e[0][1 + k] * &sd_inv[k][j]));
            out.e[0][1 + j] = -(&ainv * &v);
        }
        for i in 0..2 {
            // -D⁻¹ C (A - B D⁻¹ C)⁻¹
            let v = (0..2).fold(SuperNumber::zero(), |acc, k| &acc + &(&dinv[i][k] * &e[1 + k][0]));
            out.e[1 + i][0] = -(&v * &s_a);
            for j in 0..2 {
                out.e[1 + i][1 + j] = sd_inv[i][j].clone();
            }
        }
        Ok(out)
    }

    /// Metric from a frame `W[M][A] = E^A_M`:
    /// `g_MN = Σ E^A_M η_AB σ E^B_N` with the sign `σ` placed per `toggle`.
    pub fn vierbein_to_metric(&self, toggle: GradingToggle) -> Result<SuperMatrix, SupermatrixError> {
        let w = Self::new(self.e.clone())?;
        let eta = Self::eta();
        let mut g = Self::zero();
        for m in GradedIndex::ALL {
            for n in GradedIndex::ALL {
                let mut acc = SuperNumber::zero();
                for a in GradedIndex::ALL {
                    for b in GradedIndex::ALL {
                        let h = eta.get(a, b);
                        if h.is_zero() {
                            continue;
                        }
                        let odd = match toggle {
                            GradingToggle::Right => (1 + b.parity().bit()) * n.parity().bit(),
                            GradingToggle::Left => (1 + a.parity().bit()) * m.parity().bit(),
                        } % 2
                            == 1;
                        let term = &(&w.get(m, a).clone() * h) * w.get(n, b);
                        acc = if odd { &acc - &term } else { &acc + &term };
                    }
                }
                g.e[m.index()][n.index()] = acc;
            }
        }
        Ok(g)
    }
}

impl fmt::Display for SuperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.e.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
