//! Graded Levi-Civita curvature of supertime metrics, with the sign
//! placements exposed as a finite set of conventions.

mod scan;

pub use scan::{convention_scan, closed_form_ricci_body, ScanReport, ScanRow, Verdict};

use std::fmt;

use thiserror::Error;

use crate::grassmann::{Generator, SuperNumber};
use crate::ring::RatFunc;
use crate::superspace::total_dt;
use crate::supermatrix::{GradedIndex, SuperMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurvatureError {
    #[error("metric is not invertible: {reason}")]
    SingularMetric { reason: String },
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum RicciSlot {
    First,
    Second,
}

/// One choice of every sign placement that the construction leaves open.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ConventionConfig {
    /// Grading factor `(-1)^|N|` (right) or `(-1)^|M|` (left) turning
    /// `g_MN` into a graded-symmetric `G_MN`.
    pub metric: Side,
    /// Side from which odd derivatives act.
    pub derivative: Side,
    /// Riemann slot traced to form the Ricci tensor.
    pub ricci: RicciSlot,
    /// Overall sign of the scalar.
    pub negate: bool,
}

impl ConventionConfig {
    pub fn all() -> Vec<ConventionConfig> {
        let mut out = Vec::with_capacity(16);
        for metric in [Side::Left, Side::Right] {
            for derivative in [Side::Left, Side::Right] {
                for ricci in [RicciSlot::First, RicciSlot::Second] {
                    for negate in [false, true] {
                        out.push(ConventionConfig {
                            metric,
                            derivative,
                            ricci,
                            negate,
                        });
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for ConventionConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: Side| if s == Side::Left { "L" } else { "R" };
        write!(
            f,
            "g{}.d{}.ric{}.{}",
            side(self.metric),
            side(self.derivative),
            if self.ricci == RicciSlot::First { 1 } else { 2 },
            if self.negate { "neg" } else { "pos" }
        )
    }
}

fn bit(m: GradedIndex) -> usize {
    m.parity().bit() as usize
}

fn sgn(x: &SuperNumber, odd: bool) -> SuperNumber {
    if odd {
        -x
    } else {
        x.clone()
    }
}

/// `∂_M f` from the configured side.
pub fn derivative(m: GradedIndex, f: &SuperNumber, side: Side) -> SuperNumber {
    let g = match m {
        GradedIndex::T => return total_dt(f),
        GradedIndex::Theta => Generator::theta(),
        GradedIndex::Thetabar => Generator::thetabar(),
    };
    let left = f.left_derive(g);
    match side {
        Side::Left => left,
        Side::Right => {
            // f ∂⃖ = (-1)^(|f|+1) ∂f on each term
            let mut out = SuperNumber::zero();
            for (mask, c) in f.terms() {
                let term = SuperNumber::from_term(mask, c.clone());
                let d = term.left_derive(g);
                out = &out + &sgn(&d, mask.count_ones() % 2 == 0);
            }
            out
        }
    }
}

/// A metric `g_MN` together with the graded-symmetric `G_MN` and its inverse.
#[derive(Clone, PartialEq, Debug)]
pub struct SuperMetric {
    pub g: SuperMatrix,
    pub graded: SuperMatrix,
    pub inverse: SuperMatrix,
}

impl SuperMetric {
    pub fn new(g: SuperMatrix, side: Side) -> Result<Self, CurvatureError> {
        let mut e: [[SuperNumber; 3]; 3] = Default::default();
        for m in GradedIndex::ALL {
            for n in GradedIndex::ALL {
                let odd = match side {
                    Side::Right => bit(n),
                    Side::Left => bit(m),
                } == 1;
                e[m.index()][n.index()] = sgn(g.get(m, n), odd);
            }
        }
        let graded = SuperMatrix::new(e).map_err(|err| CurvatureError::SingularMetric {
            reason: err.to_string(),
        })?;
        let inverse = graded.sinv().map_err(|err| CurvatureError::SingularMetric {
            reason: err.to_string(),
        })?;
        Ok(Self { g, graded, inverse })
    }
}

type Gamma = [[[SuperNumber; 3]; 3]; 3];

/// `Γ_MN^Q` indexed `[M][N][Q]`.
pub fn christoffel(g: &SuperMatrix, conv: ConventionConfig) -> Result<Gamma, CurvatureError> {
    let met = SuperMetric::new(g.clone(), conv.metric)?;
    Ok(christoffel_of(&met, conv))
}

fn christoffel_of(met: &SuperMetric, conv: ConventionConfig) -> Gamma {
    let d = |i: GradedIndex, f: &SuperNumber| derivative(i, f, conv.derivative);
    let gg = |a: GradedIndex, b: GradedIndex| met.graded.get(a, b);
    let half = RatFunc::from_ratio(1, 2);
    let mut lower: Gamma = Default::default();
    for m in GradedIndex::ALL {
        for n in GradedIndex::ALL {
            for p in GradedIndex::ALL {
                let a = d(m, gg(n, p));
                let b = sgn(&d(n, gg(m, p)), bit(m) * bit(n) == 1);
                let c = sgn(&d(p, gg(m, n)), bit(p) * (bit(m) + bit(n)) % 2 == 1);
                lower[m.index()][n.index()][p.index()] = (&(&a + &b) - &c).scale(&half);
            }
        }
    }
    let mut out: Gamma = Default::default();
    for m in 0..3 {
        for n in 0..3 {
            for q in 0..3 {
                out[m][n][q] = (0..3).fold(SuperNumber::zero(), |acc, p| {
                    &acc + &(&lower[m][n][p] * met.inverse.at(p, q))
                });
            }
        }
    }
    out
}

/// Scalar curvature and its body.
#[derive(Clone, PartialEq, Debug)]
pub struct CurvatureResult {
    pub config: ConventionConfig,
    pub scalar: SuperNumber,
    pub body: RatFunc,
}

pub fn ricci_scalar(g: &SuperMatrix, conv: ConventionConfig) -> Result<CurvatureResult, CurvatureError> {
    let met = SuperMetric::new(g.clone(), conv.metric)?;
    let gam = christoffel_of(&met, conv);
    let d = |i: GradedIndex, f: &SuperNumber| derivative(i, f, conv.derivative);
    let idx = GradedIndex::ALL;
    let riemann = |m: GradedIndex, n: GradedIndex, p: GradedIndex, s: GradedIndex| {
        let (mi, ni, pi, si) = (m.index(), n.index(), p.index(), s.index());
        let half = |a: GradedIndex, ai: usize, b: GradedIndex, bi: usize| {
            let mut acc = d(a, &gam[bi][pi][si]);
            for q in idx {
                let odd = bit(a) * (bit(b) + bit(p) + bit(q)) % 2 == 1;
                acc = &acc + &sgn(&(&gam[bi][pi][q.index()] * &gam[ai][q.index()][si]), odd);
            }
            acc
        };
        let first = half(m, mi, n, ni);
        let second = half(n, ni, m, mi);
        &first - &sgn(&second, bit(m) * bit(n) == 1)
    };
    let mut ric: [[SuperNumber; 3]; 3] = Default::default();
    for a in idx {
        for p in idx {
            ric[a.index()][p.index()] = idx.iter().fold(SuperNumber::zero(), |acc, &k| {
                let r = match conv.ricci {
                    RicciSlot::First => riemann(k, a, p, k),
                    RicciSlot::Second => riemann(a, k, p, k),
                };
                &acc + &r
            });
        }
    }
    let mut scalar = SuperNumber::zero();
    for n in idx {
        for p in idx {
            let t = &ric[n.index()][p.index()] * met.inverse.get(p, n);
            scalar = &scalar + &sgn(&t, bit(n) == 1);
        }
    }
    if conv.negate {
        scalar = -scalar;
    }
    let body = scalar.body();
    Ok(CurvatureResult {
        config: conv,
        scalar,
        body,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraints::{metric_from_pi, PiParameters, Sign};

    fn pis(v: [i64; 5]) -> PiParameters {
        PiParameters {
            pi: v.map(RatFunc::from_int),
        }
    }

    #[test]
    fn sixteen_configs() {
        let all = ConventionConfig::all();
        assert_eq!(all.len(), 16);
        let names: std::collections::BTreeSet<String> = all.iter().map(|c| c.to_string()).collect();
        assert_eq!(names.len(), 16);
    }

    #[test]
    fn flat_metric_is_flat() {
        for conv in ConventionConfig::all() {
            let eta = SuperMatrix::eta();
            let r = ricci_scalar(&eta, conv).unwrap();
            assert!(r.scalar.is_zero());
            let gam = christoffel(&eta, conv).unwrap();
            assert!(gam.iter().flatten().flatten().all(SuperNumber::is_zero));
        }
    }

    #[test]
    fn lower_pair_symmetry() {
        let g = metric_from_pi(&pis([1, -2, 3, 1, 2]), Sign::Plus);
        for conv in ConventionConfig::all() {
            let gam = christoffel(&g, conv).unwrap();
            for m in GradedIndex::ALL {
                for n in GradedIndex::ALL {
                    for q in 0..3 {
                        let a = &gam[m.index()][n.index()][q];
                        let b = &gam[n.index()][m.index()][q];
                        assert_eq!(*a, sgn(b, bit(m) * bit(n) == 1), "{conv} {m}{n}");
                    }
                }
            }
        }
    }

    #[test]
    fn inverse_is_exact() {
        let g = metric_from_pi(&pis([2, 1, -1, 3, 5]), Sign::Minus);
        for side in [Side::Left, Side::Right] {
            let m = SuperMetric::new(g.clone(), side).unwrap();
            assert!(m.graded.smul(&m.inverse).is_identity());
        }
    }

    #[test]
    fn zero_body_metric_is_rejected() {
        let mut e: [[SuperNumber; 3]; 3] = Default::default();
        e[0][0] = SuperNumber::thetabar_theta();
        e[1][2] = SuperNumber::int(-1);
        e[2][1] = SuperNumber::one();
        let g = SuperMatrix::new(e).unwrap();
        let conv = ConventionConfig::all()[0];
        assert!(matches!(ricci_scalar(&g, conv), Err(CurvatureError::SingularMetric { .. })));
    }

    #[test]
    fn right_derivative_signs() {
        let x = &SuperNumber::theta() * &SuperNumber::thetabar();
        assert_eq!(derivative(GradedIndex::Theta, &x, Side::Right), -SuperNumber::thetabar());
        assert_eq!(derivative(GradedIndex::Thetabar, &x, Side::Right), SuperNumber::theta());
    }
}
