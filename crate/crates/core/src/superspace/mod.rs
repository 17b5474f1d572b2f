//! Functions on supertime, field jets, first-order operators and the
//! orthosymplectic generators.

mod jets;
mod operator;

pub use jets::{dt_scalar, dt_symbol, total_dt};
pub use operator::{partial, DiffOperator};

use thiserror::Error;

use crate::grassmann::{Generator, SuperNumber};
use crate::ring::{RatFunc, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuperspaceError {
    #[error("second-order part survives in the bracket at d_{index}")]
    NotFirstOrder { index: String },
    #[error("operator is not parity-homogeneous")]
    NotHomogeneous,
    #[error("{name} has the wrong parity for a {role} component")]
    ParityMismatch { name: String, role: &'static str },
}

fn sym(n: &str) -> SuperNumber {
    SuperNumber::sym(n)
}

/// The invariant interval `t² - 2θ̄θ`.
pub fn interval() -> SuperNumber {
    &sym("t").pow(2) - &SuperNumber::thetabar_theta().scale(&RatFunc::from_int(2))
}

/// The five generators `X₁ … X₅` that annihilate [`interval`].
pub fn osp_generators() -> [DiffOperator; 5] {
    let th = SuperNumber::theta();
    let tb = SuperNumber::thetabar();
    let t = sym("t");
    let z = SuperNumber::zero;
    let half = RatFunc::from_ratio(1, 2);
    let r = &RatFunc::sym(crate::ring::SQRT2) * &half;
    [
        DiffOperator::new(z(), -&tb, z()),
        DiffOperator::new(z(), z(), th.clone()),
        DiffOperator::new(z(), th.scale(&half), (-&tb).scale(&half)),
        DiffOperator::new((-&tb).scale(&r), t.scale(&r), z()),
        DiffOperator::new(th.scale(&r), z(), t.scale(&r)),
    ]
}

/// `x + θc + θ̄c̄ + iθ̄θλ` for the given jet names.
pub fn superfield(x: &str, c: &str, cbar: &str, lambda: &str) -> Result<SuperNumber, SuperspaceError> {
    let even = |n: &str, role| {
        if Generator::lookup(n).is_some() {
            return Err(SuperspaceError::ParityMismatch { name: n.into(), role });
        }
        Ok(SuperNumber::scalar(RatFunc::var(Symbol::new(n))))
    };
    let odd = |n: &str, role| {
        Generator::lookup(n)
            .filter(|g| *g != Generator::theta() && *g != Generator::thetabar())
            .map(SuperNumber::generator)
            .ok_or(SuperspaceError::ParityMismatch { name: n.into(), role })
    };
    let (xs, ls) = (even(x, "body")?, even(lambda, "auxiliary")?);
    let (cs, cbs) = (odd(c, "ghost")?, odd(cbar, "antighost")?);
    let th = SuperNumber::theta();
    let tb = SuperNumber::thetabar();
    Ok(&(&(&xs + &(&th * &cs)) + &(&tb * &cbs))
        + &(&SuperNumber::thetabar_theta() * &ls).scale(&RatFunc::i()))
}

/// The superfield built on `x`, `c`, `cbar`, `lambda`.
pub fn standard_superfield() -> SuperNumber {
    superfield("x", "c", "cbar", "lambda").expect("builtin jets")
}

/// `V(X) = Σ V⁽ᵏ⁾ (X - x)ᵏ / k!`, evaluated at the body of `X`. The series
/// terminates because `X - x` is nilpotent.
pub fn compose_potential(x: &SuperNumber) -> SuperNumber {
    let soul = x.soul();
    let mut out = SuperNumber::zero();
    let mut pw = SuperNumber::one();
    let mut name = String::from("V");
    let mut fact = 1i64;
    let mut k = 0i64;
    while !pw.is_zero() {
        let v = Symbol::lookup(&name).expect("potential jets register on demand");
        out = &out + &pw.scale(&(&RatFunc::var(v) * &RatFunc::from_ratio(1, fact)));
        k += 1;
        fact *= k;
        name.push('\'');
        pw = &pw * &soul;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::supermatrix::GradedIndex;

    #[test]
    fn generators_annihilate_interval() {
        let f = interval();
        for x in osp_generators() {
            assert!(x.apply(&f).is_zero(), "{x}");
        }
    }

    #[test]
    fn x3_on_theta() {
        let x3 = &osp_generators()[2];
        assert_eq!(x3.apply(&SuperNumber::theta()), SuperNumber::theta().scale(&RatFunc::from_ratio(1, 2)));
    }

    #[test]
    fn parities() {
        use crate::grassmann::Parity::*;
        let ps: Vec<_> = osp_generators().iter().map(|x| x.parity().unwrap()).collect();
        assert_eq!(ps, vec![Even, Even, Even, Odd, Odd]);
    }

    #[test]
    fn closure_of_brackets() {
        let gens = osp_generators();
        for a in &gens {
            for b in &gens {
                let br = a.graded_bracket(b).unwrap();
                assert!(br.expand_in(&gens).is_some(), "[{a}, {b}] = {br}");
            }
        }
        assert!(gens[0].graded_bracket(&gens[0]).unwrap().is_zero());
    }

    #[test]
    fn mixed_parity_is_rejected() {
        let d = DiffOperator::new(SuperNumber::theta(), SuperNumber::theta(), SuperNumber::zero());
        assert!(matches!(d.graded_bracket(&d), Err(SuperspaceError::NotHomogeneous)));
    }

    #[test]
    fn superfield_components() {
        let x = standard_superfield();
        assert_eq!(x.coeff_of(&[Generator::thetabar(), Generator::theta()]), RatFunc::i() * RatFunc::sym("lambda"));
        let c = SuperNumber::generator(Generator::lookup("c").unwrap());
        let lam_tb = &(&SuperNumber::thetabar() * &sym("lambda")).scale(&RatFunc::i());
        assert_eq!(partial(GradedIndex::Theta, &x), &c - lam_tb);
        let no_aux = superfield("x", "c", "cbar", "eps").unwrap().subst1(Symbol::new("eps"), &RatFunc::zero()).unwrap();
        assert_eq!(partial(GradedIndex::Theta, &no_aux), c);
        assert!(superfield("c", "c", "cbar", "lambda").is_err());
        let dx = partial(GradedIndex::T, &x);
        assert_eq!(dx.body(), RatFunc::sym("x'"));
    }

    #[test]
    fn potential_expansion() {
        let v = compose_potential(&standard_superfield());
        assert_eq!(v.body(), RatFunc::sym("V"));
        let c = Generator::lookup("c").unwrap();
        let cb = Generator::lookup("cbar").unwrap();
        let want = &(&SuperNumber::i() * &(&sym("lambda") * &sym("V'")))
            - &(&SuperNumber::product_of(&[cb, c]) * &sym("V''"));
        let got = v.berezin_integrate(&[Generator::theta(), Generator::thetabar()]);
        assert_eq!(got, want);
    }
}
