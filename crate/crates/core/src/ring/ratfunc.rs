//! Canonical multivariate rational functions over ℚ(i)(sqrt2).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gaussian::GaussRat;
use super::poly::{gcd, Monomial, Poly};
use super::symbol::Symbol;
use super::RingError;

/// `numerator / denominator` in lowest terms.
///
/// The denominator is monic and free of `sqrt2`, and shares no factor with
/// the numerator, so `==` is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        Self {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussRat::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::constant(GaussRat::from_ratio(n, d))
    }

    pub fn i() -> Self {
        Self::constant(GaussRat::i())
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn var(s: Symbol) -> Self {
        Self::from_poly(Poly::var(s))
    }

    /// Variable by name; registers the name if needed.
    pub fn sym(name: &str) -> Self {
        Self::var(Symbol::new(name))
    }

    pub fn from_poly(p: Poly) -> Self {
        Self {
            num: p,
            den: Poly::one(),
        }
    }

    /// Builds `num / den` in canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self, RingError> {
        if den.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(mut num: Poly, mut den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.has_sqrt2() {
            let conj = den.sqrt2_conjugate();
            num = &num * &conj;
            den = &den * &conj;
        }
        if !den.is_constant() && !num.is_constant() {
            let g = if num.has_sqrt2() {
                let (n0, n1) = num.split_sqrt2();
                gcd(&gcd(&n0, &n1), &den)
            } else {
                gcd(&num, &den)
            };
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        let lc = den.leading().expect("nonzero denominator").1.clone();
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero leading coefficient");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Self { num, den }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<GaussRat> {
        if self.num.is_zero() {
            return Some(GaussRat::zero());
        }
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n * &d.inv()?)
    }

    pub fn vars(&self) -> BTreeSet<Symbol> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.num.contains(s) || self.den.contains(s)
    }

    pub fn inv(&self) -> Result<Self, RingError> {
        if self.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &RatFunc) -> Result<Self, RingError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to `s`.
    pub fn derivative(&self, s: Symbol) -> Self {
        if !self.contains(s) {
            return Self::zero();
        }
        let dn = self.num.derivative(s);
        let dd = self.den.derivative(s);
        let top = &(&dn * &self.den) - &(&self.num * &dd);
        Self::normalize(top, &self.den * &self.den)
    }

    /// Simultaneous substitution of symbols by rational functions.
    pub fn substitute(&self, bindings: &BTreeMap<Symbol, RatFunc>) -> Result<Self, RingError> {
        if !self.vars().iter().any(|s| bindings.contains_key(s)) {
            return Ok(self.clone());
        }
        let n = subst_poly(&self.num, bindings);
        let d = subst_poly(&self.den, bindings);
        if d.is_zero() {
            return Err(RingError::PoleAtSubstitution {
                expr: self.to_string(),
            });
        }
        Ok(&n * &d.inv()?)
    }

    /// Substitutes a single symbol.
    pub fn subst1(&self, s: Symbol, value: &RatFunc) -> Result<Self, RingError> {
        let mut b = BTreeMap::new();
        b.insert(s, value.clone());
        self.substitute(&b)
    }

    /// Exact numeric value; every variable must be bound.
    pub fn eval(&self, value: &impl Fn(Symbol) -> Option<GaussRat>) -> Result<GaussRat, RingError> {
        let unbound = || RingError::Unbound {
            expr: self.to_string(),
        };
        let n = self.num.eval(value).ok_or_else(unbound)?;
        let d = self.den.eval(value).ok_or_else(unbound)?;
        let dinv = d.inv().ok_or_else(|| RingError::PoleAtSubstitution {
            expr: self.to_string(),
        })?;
        Ok(&n * &dinv)
    }

    /// Coefficients in powers of `s`; the denominator must not involve `s`.
    pub fn coeffs_in(&self, s: Symbol) -> Option<Vec<RatFunc>> {
        if self.den.contains(s) {
            return None;
        }
        Some(
            self.num
                .coeffs_in(s)
                .into_iter()
                .map(|c| Self::normalize(c, self.den.clone()))
                .collect(),
        )
    }
}

fn subst_poly(p: &Poly, bindings: &BTreeMap<Symbol, RatFunc>) -> RatFunc {
    let mut powers: BTreeMap<(Symbol, u32), RatFunc> = BTreeMap::new();
    let mut acc = RatFunc::zero();
    for (m, c) in p.terms() {
        let mut kept = Vec::new();
        let mut factor = RatFunc::constant(c.clone());
        for &(s, e) in m.pairs() {
            match bindings.get(&s) {
                Some(val) => {
                    let pw = powers.entry((s, e)).or_insert_with(|| val.pow(e)).clone();
                    factor = &factor * &pw;
                }
                None => kept.push((s, e)),
            }
        }
        let rest = RatFunc::from_poly(Poly::term(Monomial::from_pairs(kept), GaussRat::one()));
        acc = &acc + &(&factor * &rest);
    }
    acc
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::normalize(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::normalize(num, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        RatFunc::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::from_int(n)
    }
}

impl From<Symbol> for RatFunc {
    fn from(s: Symbol) -> Self {
        RatFunc::var(s)
    }
}

fn is_atom(p: &Poly) -> bool {
    if p.len() != 1 {
        return false;
    }
    let (m, c) = p.leading().expect("single term");
    if m.is_one() {
        return !c.is_compound() && !c.looks_negative() && c.re().is_integer();
    }
    c.is_one() && m.pairs().len() == 1
}

impl RatFunc {
    /// True when the printed form is a single product (no top-level `+`/`-`).
    pub(crate) fn is_single_term(&self) -> bool {
        self.num.len() <= 1
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.len() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if is_atom(&self.den) {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: &str) -> RatFunc {
        RatFunc::sym(n)
    }

    #[test]
    fn add_like_terms() {
        let eps = s("eps");
        assert_eq!(&eps + &eps, RatFunc::from_int(2) * eps.clone());
    }

    #[test]
    fn inverse_cancels() {
        let eps = s("eps");
        assert!((&eps.inv().unwrap() * &eps).is_one());
    }

    #[test]
    fn removes_common_factor() {
        let eps = s("eps");
        let one = RatFunc::one();
        let f = (&(&eps * &eps) - &one).div(&(&eps - &one)).unwrap();
        assert_eq!(f, &eps + &one);
        assert!(f.is_polynomial());
    }

    #[test]
    fn zero_inverse_errors() {
        assert_eq!(RatFunc::zero().inv(), Err(RingError::DivisionByZero));
    }

    #[test]
    fn pole_at_substitution() {
        let eps_sym = Symbol::new("eps");
        let f = s("eps").inv().unwrap();
        let err = f.subst1(eps_sym, &RatFunc::zero()).unwrap_err();
        assert!(matches!(err, RingError::PoleAtSubstitution { .. }));
        let k = &s("eps") * &s("x");
        assert!(k.subst1(eps_sym, &RatFunc::zero()).unwrap().is_zero());
    }

    #[test]
    fn substitution_at_one() {
        // 1/ε + i/(ε²ħ)·s at ε = 1 gives 1 + (i/ħ)·s.
        let (eps, hbar, sv) = (s("eps"), s("hbar"), s("q"));
        let f = &eps.inv().unwrap()
            + &(&RatFunc::i() * &sv).div(&(&(&eps * &eps) * &hbar)).unwrap();
        let g = f.subst1(Symbol::new("eps"), &RatFunc::one()).unwrap();
        let expect = &RatFunc::one() + &(&RatFunc::i() * &sv).div(&hbar).unwrap();
        assert_eq!(g, expect);
    }

    #[test]
    fn sqrt2_rationalized_out_of_denominator() {
        let r = RatFunc::var(Symbol::sqrt2());
        let half_r = r.inv().unwrap();
        assert!(!half_r.denom().has_sqrt2());
        assert_eq!(&half_r * &r, RatFunc::one());
        assert_eq!(&r * &r, RatFunc::from_int(2));
    }

    #[test]
    fn display_is_readable() {
        let f = (&s("x") + &RatFunc::one()).div(&(&s("eps") * &s("hbar"))).unwrap();
        assert_eq!(f.to_string(), "(x + 1)/(eps*hbar)");
        assert_eq!(RatFunc::from_ratio(-1, 2).to_string(), "-1/2");
    }
}
