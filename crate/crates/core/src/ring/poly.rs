//! Sparse multivariate polynomials over ℚ(i).
//!
//! Monomials are ordered graded-lexicographically, with variables compared by
//! [`Symbol`] order. The adjoined `sqrt2` is reduced by `sqrt2^2 = 2` on every
//! product, so polynomials carry it with exponent at most one.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::gaussian::GaussRat;
use super::symbol::Symbol;

/// A power product; exponents are positive and variables sorted.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(s: Symbol) -> Self {
        Monomial(vec![(s, 1)])
    }

    pub fn from_pairs(mut pairs: Vec<(Symbol, u32)>) -> Self {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort_by_key(|a| a.0);
        let mut out: Vec<(Symbol, u32)> = Vec::with_capacity(pairs.len());
        for (s, e) in pairs {
            match out.last_mut() {
                Some((ls, le)) if *ls == s => *le += e,
                _ => out.push((s, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, s: Symbol) -> u32 {
        self.0.iter().find(|&&(v, _)| v == s).map_or(0, |&(_, e)| e)
    }

    pub fn pairs(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(s, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 == s {
                let f = other.0[j].1;
                if f > e {
                    return None;
                }
                if e > f {
                    out.push((s, e - f));
                }
                j += 1;
            } else if j < other.0.len() && other.0[j].0 < s {
                return None;
            } else {
                out.push((s, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        for &(s, e) in &self.0 {
            let f = other.exponent(s);
            if f > 0 {
                out.push((s, e.min(f)));
            }
        }
        Monomial(out)
    }

    fn without(&self, s: Symbol) -> (u32, Monomial) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|&&(v, k)| {
                if v == s {
                    e = k;
                    false
                } else {
                    true
                }
            })
            .copied()
            .collect();
        (e, Monomial(rest))
    }

    /// Applies `sqrt2^2 = 2`; returns the rational factor produced.
    fn reduce_sqrt2(&mut self) -> Option<u32> {
        let pos = self.0.iter().position(|&(s, _)| s.is_sqrt2())?;
        let e = self.0[pos].1;
        if e < 2 {
            return None;
        }
        if e.is_multiple_of(2) {
            self.0.remove(pos);
        } else {
            self.0[pos].1 = 1;
        }
        Some(e / 2)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (a, b) = (&self.0, &other.0);
        for (x, y) in a.iter().zip(b.iter()) {
            match x.0.cmp(&y.0) {
                // `x` has a positive exponent on an earlier variable.
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match x.1.cmp(&y.1) {
                    Ordering::Equal => {}
                    ord => return ord,
                },
            }
        }
        a.len().cmp(&b.len()).reverse()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, &(s, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial in registered symbols with Gaussian-rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(s: Symbol) -> Self {
        Self::term(Monomial::var(s), GaussRat::one())
    }

    pub fn term(m: Monomial, c: GaussRat) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(GaussRat::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<&GaussRat> {
        match self.terms.len() {
            0 => None,
            1 => self.terms.get(&Monomial::one()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || self.as_constant().is_some()
    }

    pub fn constant_term(&self) -> GaussRat {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(GaussRat::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &GaussRat)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, mut m: Monomial, mut c: GaussRat) {
        if c.is_zero() {
            return;
        }
        if let Some(k) = m.reduce_sqrt2() {
            c = c.scale(&BigRational::from_integer(BigInt::from(2u32).pow(k)));
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &GaussRat) -> Poly {
        let mut out = Poly::zero();
        for (tm, tc) in &self.terms {
            out.add_term(tm.mul(m), tc * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn vars(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|&(s, _)| s))
            .collect()
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.terms.keys().any(|m| m.exponent(s) > 0)
    }

    pub fn degree_in(&self, s: Symbol) -> u32 {
        self.terms.keys().map(|m| m.exponent(s)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Coefficients with respect to `s`, indexed by the power of `s`.
    pub fn coeffs_in(&self, s: Symbol) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(s) as usize + 1];
        if self.is_zero() {
            return vec![];
        }
        for (m, c) in &self.terms {
            let (e, rest) = m.without(s);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(s: Symbol, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            let m = Monomial(vec![(s, e as u32)]);
            let m = if e == 0 { Monomial::one() } else { m };
            for (tm, tc) in &c.terms {
                out.add_term(tm.mul(&m), tc.clone());
            }
        }
        out
    }

    pub fn derivative(&self, s: Symbol) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.without(s);
            if e == 0 {
                continue;
            }
            let m2 = rest.mul(&Monomial(if e > 1 { vec![(s, e - 1)] } else { vec![] }));
            out.add_term(m2, c.scale(&BigRational::from_integer(BigInt::from(e))));
        }
        out
    }

    fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        it.fold(first.clone(), |acc, m| acc.gcd(m))
    }

    fn div_monomial(&self, m: &Monomial) -> Poly {
        let mut out = Poly::zero();
        for (tm, c) in &self.terms {
            out.add_term(tm.div(m).expect("monomial content divides"), c.clone());
        }
        out
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, lc)) if lc.is_one() => self.clone(),
            Some((_, lc)) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    /// `d` must be free of `sqrt2`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.inv()?));
        }
        let (lm_d, lc_d) = d.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let lc_inv = lc_d.inv()?;
        let mut r = self.clone();
        let mut q = Poly::zero();
        while let Some((lm_r, lc_r)) = r.leading() {
            let m = lm_r.div(&lm_d)?;
            let c = lc_r * &lc_inv;
            r = &r - &d.mul_term(&m, &c);
            q.add_term(m, c);
        }
        Some(q)
    }

    /// Splits `self = p0 + sqrt2 * p1` with `p0`, `p1` free of `sqrt2`.
    pub fn split_sqrt2(&self) -> (Poly, Poly) {
        let s = Symbol::sqrt2();
        let mut c = self.coeffs_in(s);
        c.resize(2, Poly::zero());
        let p1 = c.pop().unwrap_or_default();
        let p0 = c.pop().unwrap_or_default();
        (p0, p1)
    }

    /// `p0 - sqrt2 * p1` for `self = p0 + sqrt2 * p1`.
    pub fn sqrt2_conjugate(&self) -> Poly {
        let (p0, p1) = self.split_sqrt2();
        &p0 - &(&p1 * &Poly::var(Symbol::sqrt2()))
    }

    pub fn has_sqrt2(&self) -> bool {
        self.contains(Symbol::sqrt2())
    }

    /// Evaluates at a numeric point; `None` if some variable is unbound.
    pub fn eval(&self, value: &impl Fn(Symbol) -> Option<GaussRat>) -> Option<GaussRat> {
        let mut acc = GaussRat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(s, e) in &m.0 {
                t = &t * &value(s)?.pow(e);
            }
            acc += &t;
        }
        Some(acc)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

/// Greatest common divisor, normalized to leading coefficient one.
/// `gcd(0, 0) = 0`. Inputs must be free of `sqrt2`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let (ma, mb) = (a.monomial_content(), b.monomial_content());
    let m = ma.gcd(&mb);
    let a1 = a.div_monomial(&ma);
    let b1 = b.div_monomial(&mb);
    let g = gcd_primitive_monomials(&a1, &b1);
    g.mul_term(&m, &GaussRat::one()).monic()
}

fn gcd_primitive_monomials(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if large.div_exact(small).is_some() {
        return small.monic();
    }
    let (va, vb) = (a.vars(), b.vars());
    if let Some(&v) = va.difference(&vb).next() {
        return gcd(&content_in(a, v), b);
    }
    if let Some(&v) = vb.difference(&va).next() {
        return gcd(a, &content_in(b, v));
    }
    let v = *va.iter().next().expect("non-constant polynomial has a variable");
    let (ca, cb) = (content_in(a, v), content_in(b, v));
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    let g = primitive_prs(&pa, &pb, v);
    (&c * &g).monic()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
fn content_in(p: &Poly, v: Symbol) -> Poly {
    let mut acc = Poly::zero();
    for c in p.coeffs_in(v).iter().rev() {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn primitive_part_in(p: &Poly, v: Symbol) -> Poly {
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides").monic()
}

/// Pseudo-remainder of `f` by `g` in the variable `v`, up to a unit.
fn pseudo_rem(f: &Poly, g: &Poly, v: Symbol) -> Poly {
    let gc = g.coeffs_in(v);
    let m = gc.len() - 1;
    let lc = &gc[m];
    let mut r = f.coeffs_in(v);
    loop {
        while r.last().is_some_and(Poly::is_zero) {
            r.pop();
        }
        if r.len() <= m {
            break;
        }
        let d = r.len() - 1;
        let lr = r[d].clone();
        for c in r.iter_mut() {
            *c = &*c * lc;
        }
        for (j, gj) in gc.iter().enumerate() {
            let idx = j + d - m;
            r[idx] = &r[idx] - &(&lr * gj);
        }
    }
    Poly::from_coeffs_in(v, &r)
}

fn primitive_prs(a: &Poly, b: &Poly, v: Symbol) -> Poly {
    let (mut f, mut g) = if a.degree_in(v) >= b.degree_in(v) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    loop {
        if g.degree_in(v) == 0 {
            return Poly::one();
        }
        let r = pseudo_rem(&f, &g, v);
        if r.is_zero() {
            return primitive_part_in(&g, v);
        }
        f = g;
        g = primitive_part_in(&r, v);
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let body = if m.is_one() {
                c.to_string()
            } else if c.is_one() {
                m.to_string()
            } else if (-c).is_one() {
                format!("-{m}")
            } else {
                format!("{c}*{m}")
            };
            if k == 0 {
                write!(f, "{body}")?;
            } else if let Some(rest) = body.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> Poly {
        Poly::var(Symbol::new(name))
    }

    fn c(n: i64) -> Poly {
        Poly::constant(GaussRat::from_int(n))
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let s = Poly::var(Symbol::sqrt2());
        assert_eq!(&s * &s, c(2));
        assert_eq!(&(&s * &s) * &s, &c(2) * &s);
    }

    #[test]
    fn exact_division() {
        let eps = v("eps");
        let num = &(&eps * &eps) - &c(1);
        let den = &eps - &c(1);
        assert_eq!(num.div_exact(&den), Some(&eps + &c(1)));
        assert_eq!(eps.div_exact(&den), None);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let (x, y) = (v("x"), v("eps"));
        let f = &(&x + &y) * &(&x - &c(2));
        let g = &(&x + &y) * &(&y + &c(3));
        assert_eq!(gcd(&f, &g), (&x + &y).monic());
    }

    #[test]
    fn gcd_multivariate_coprime() {
        let (b, e, cc, d) = (v("b_B"), v("e_B"), v("c_B"), v("d_B"));
        let det = &(&b * &e) - &(&cc * &d);
        let other = &(&b * &b) + &(&d * &e);
        assert!(gcd(&det, &other).is_one());
        let sq = &det * &det;
        assert_eq!(gcd(&sq, &(&det * &other)), det.monic());
    }

    #[test]
    fn monomial_order_is_graded() {
        let x = Monomial::var(Symbol::new("x"));
        let xx = x.mul(&x);
        let eps = Monomial::var(Symbol::new("eps"));
        assert!(xx > eps);
        assert!(eps > x, "eps sorts before x, so it dominates at equal degree");
    }
}
