use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::ring::{RatFunc, RingError, Symbol};

use super::generator::Generator;
use super::GrassmannError;

/// Grading of a homogeneous element.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_bits(n: u32) -> Parity {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn add(self, other: Parity) -> Parity {
        Parity::of_bits(self.bit() + other.bit())
    }

    /// `(-1)^(self * other)`.
    pub fn sign_with(self, other: Parity) -> i64 {
        if self == Parity::Odd && other == Parity::Odd {
            -1
        } else {
            1
        }
    }
}

/// Sign of `m_a · m_b` rewritten in ascending position order.
pub(crate) fn merge_sign(a: u64, b: u64) -> bool {
    let mut count = 0u32;
    let mut rest = b;
    while rest != 0 {
        let y = rest.trailing_zeros();
        rest &= rest - 1;
        if y < 63 {
            count += (a >> (y + 1)).count_ones();
        }
    }
    count % 2 == 1
}

/// An element of the finite Grassmann algebra with rational-function
/// coefficients. Keys are bitmasks over generator positions.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SuperNumber {
    terms: BTreeMap<u64, RatFunc>,
}

/// Body and soul of a [`SuperNumber`].
#[derive(Clone, PartialEq, Debug)]
pub struct BodySoul {
    pub body: RatFunc,
    pub soul: SuperNumber,
}

impl SuperNumber {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(RatFunc::one())
    }

    pub fn scalar(c: RatFunc) -> Self {
        Self::from_term(0, c)
    }

    pub fn int(n: i64) -> Self {
        Self::scalar(RatFunc::from_int(n))
    }

    pub fn sym(name: &str) -> Self {
        Self::scalar(RatFunc::sym(name))
    }

    pub fn i() -> Self {
        Self::scalar(RatFunc::i())
    }

    pub fn generator(g: Generator) -> Self {
        Self::from_term(g.bit(), RatFunc::one())
    }

    pub fn theta() -> Self {
        Self::generator(Generator::theta())
    }

    pub fn thetabar() -> Self {
        Self::generator(Generator::thetabar())
    }

    /// `θ̄θ`, the soul direction used for body/soul splits of even entries.
    pub fn thetabar_theta() -> Self {
        &Self::thetabar() * &Self::theta()
    }

    pub fn from_term(mask: u64, c: RatFunc) -> Self {
        let mut s = Self::zero();
        s.add_term(mask, c);
        s
    }

    /// Product of generators in the written order.
    pub fn product_of(gens: &[Generator]) -> Self {
        gens.iter()
            .fold(Self::one(), |acc, &g| &acc * &Self::generator(g))
    }

    pub(crate) fn add_term(&mut self, mask: u64, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mask) {
            Some(e) => {
                *e = &*e + &c;
                if e.is_zero() {
                    self.terms.remove(&mask);
                }
            }
            None => {
                self.terms.insert(mask, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(RatFunc::is_one)
    }

    /// Terms as `(position mask, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &RatFunc)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mask: u64) -> RatFunc {
        self.terms.get(&mask).cloned().unwrap_or_default()
    }

    /// Coefficient of the given generator product, in the written order.
    pub fn coeff_of(&self, gens: &[Generator]) -> RatFunc {
        let mono = Self::product_of(gens);
        match mono.terms.iter().next() {
            None => RatFunc::zero(),
            Some((&mask, sign)) => &self.coeff(mask) * sign,
        }
    }

    /// Union of all generator positions that occur.
    pub fn support(&self) -> u64 {
        self.terms.keys().fold(0, |acc, m| acc | m)
    }

    pub fn generators(&self) -> Vec<Generator> {
        bits(self.support()).map(Generator::at_position).collect()
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|&m| m == 0)
    }

    pub fn as_scalar(&self) -> Option<RatFunc> {
        self.is_scalar().then(|| self.body())
    }

    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|m| Parity::of_bits(m.count_ones()));
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Some(Parity::Even)
    }

    pub fn is_odd(&self) -> bool {
        self.is_zero() || self.parity() == Some(Parity::Odd)
    }

    pub fn body(&self) -> RatFunc {
        self.coeff(0)
    }

    pub fn soul(&self) -> SuperNumber {
        let mut s = self.clone();
        s.terms.remove(&0);
        s
    }

    pub fn body_soul(&self) -> BodySoul {
        BodySoul {
            body: self.body(),
            soul: self.soul(),
        }
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&m, k)| (m, k * c)).collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        let mut out = Self::zero();
        for (&m, c) in &self.terms {
            out.add_term(m, f(c));
        }
        out
    }

    pub fn try_map_coeffs<E>(&self, f: impl Fn(&RatFunc) -> Result<RatFunc, E>) -> Result<Self, E> {
        let mut out = Self::zero();
        for (&m, c) in &self.terms {
            out.add_term(m, f(c)?);
        }
        Ok(out)
    }

    pub fn substitute(&self, bindings: &BTreeMap<Symbol, RatFunc>) -> Result<Self, RingError> {
        self.try_map_coeffs(|c| c.substitute(bindings))
    }

    pub fn subst1(&self, s: Symbol, v: &RatFunc) -> Result<Self, RingError> {
        self.try_map_coeffs(|c| c.subst1(s, v))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Inverse via the nilpotent series `(1/b) Σ (-s/b)^k`.
    pub fn inv(&self) -> Result<Self, GrassmannError> {
        let b = self.body();
        if b.is_zero() {
            return Err(GrassmannError::ZeroBody {
                value: self.to_string(),
            });
        }
        let binv = b.inv().expect("nonzero body");
        let u = self.soul().scale(&-&binv);
        let mut acc = Self::one();
        let mut pw = Self::one();
        loop {
            pw = &pw * &u;
            if pw.is_zero() {
                break;
            }
            acc = &acc + &pw;
        }
        Ok(acc.scale(&binv))
    }

    /// Left derivative with respect to `g`.
    pub fn left_derive(&self, g: Generator) -> Self {
        let bit = g.bit();
        let below = bit - 1;
        let mut out = Self::zero();
        for (&m, c) in &self.terms {
            if m & bit == 0 {
                continue;
            }
            let sign = (m & below).count_ones() % 2 == 1;
            out.add_term(m & !bit, if sign { -c } else { c.clone() });
        }
        out
    }

    /// Berezin integral over the written measure `∫ dg₁ … dgₖ`; the
    /// rightmost differential acts first.
    pub fn berezin_integrate(&self, measure: &[Generator]) -> Self {
        measure
            .iter()
            .rev()
            .fold(self.clone(), |acc, &g| acc.left_derive(g))
    }

    /// Conventional `∫ dθ dθ̄`, normalized so that `∫ dθ dθ̄ θ̄θ = 1`.
    pub fn integrate_theta(&self) -> Self {
        self.berezin_integrate(&[Generator::theta(), Generator::thetabar()])
    }

    /// Order-independent form: each term's generators listed by ascending id,
    /// with the coefficient sign adjusted accordingly.
    pub fn id_terms(&self) -> Vec<(Vec<u8>, RatFunc)> {
        let mut out: Vec<(Vec<u8>, RatFunc)> = self
            .terms
            .iter()
            .map(|(&m, c)| {
                let ids: Vec<u8> = bits(m).map(|p| Generator::at_position(p).id()).collect();
                let inversions = ids
                    .iter()
                    .enumerate()
                    .map(|(i, a)| ids[i + 1..].iter().filter(|b| a > b).count())
                    .sum::<usize>();
                let mut sorted = ids;
                sorted.sort_unstable();
                (sorted, if inversions % 2 == 1 { -c } else { c.clone() })
            })
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Rebuilds a value from [`id_terms`](Self::id_terms) under the current order.
    pub fn from_id_terms(terms: &[(Vec<u8>, RatFunc)]) -> Self {
        let mut out = Self::zero();
        for (ids, c) in terms {
            let gens: Vec<Generator> = ids.iter().map(|&i| generator_by_id(i)).collect();
            out = &out + &Self::product_of(&gens).scale(c);
        }
        out
    }
}

fn generator_by_id(id: u8) -> Generator {
    // Ids are dense from zero; walk positions to find it.
    (0..super::generator::MAX_GENERATORS as u32)
        .map(Generator::at_position)
        .find(|g| g.id() == id)
        .expect("known generator id")
}

pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros();
            m &= m - 1;
            Some(b)
        }
    })
}

impl<'a> Add<&'a SuperNumber> for &'a SuperNumber {
    type Output = SuperNumber;
    fn add(self, rhs: &SuperNumber) -> SuperNumber {
        let mut out = self.clone();
        for (&m, c) in &rhs.terms {
            out.add_term(m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a SuperNumber> for &'a SuperNumber {
    type Output = SuperNumber;
    fn sub(self, rhs: &SuperNumber) -> SuperNumber {
        let mut out = self.clone();
        for (&m, c) in &rhs.terms {
            out.add_term(m, -c);
        }
        out
    }
}

impl<'a> Mul<&'a SuperNumber> for &'a SuperNumber {
    type Output = SuperNumber;
    fn mul(self, rhs: &SuperNumber) -> SuperNumber {
        let mut acc: BTreeMap<u64, Vec<RatFunc>> = BTreeMap::new();
        for (&ma, ca) in &self.terms {
            for (&mb, cb) in &rhs.terms {
                if ma & mb != 0 {
                    continue;
                }
                let prod = ca * cb;
                let prod = if merge_sign(ma, mb) { -prod } else { prod };
                acc.entry(ma | mb).or_default().push(prod);
            }
        }
        let mut out = SuperNumber::zero();
        for (m, parts) in acc {
            let mut it = parts.into_iter();
            let first = it.next().expect("nonempty");
            let sum = it.fold(first, |a, b| &a + &b);
            out.add_term(m, sum);
        }
        out
    }
}

impl Neg for &SuperNumber {
    type Output = SuperNumber;
    fn neg(self) -> SuperNumber {
        SuperNumber {
            terms: self.terms.iter().map(|(&m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for SuperNumber {
    type Output = SuperNumber;
    fn neg(self) -> SuperNumber {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<SuperNumber> for SuperNumber {
            type Output = SuperNumber;
            fn $m(self, rhs: SuperNumber) -> SuperNumber {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<RatFunc> for SuperNumber {
    fn from(c: RatFunc) -> Self {
        SuperNumber::scalar(c)
    }
}

impl From<i64> for SuperNumber {
    fn from(n: i64) -> Self {
        SuperNumber::int(n)
    }
}

impl fmt::Display for SuperNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<u64> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&m| (m.count_ones(), m.reverse_bits()));
        for (k, m) in keys.iter().enumerate() {
            let c = &self.terms[m];
            let gens = bits(*m)
                .map(|p| Generator::at_position(p).name())
                .collect::<Vec<_>>()
                .join("*");
            let body = if *m == 0 {
                c.to_string()
            } else if c.is_one() {
                gens
            } else if (-c).is_one() {
                format!("-{gens}")
            } else if c.is_single_term() {
                format!("{c}*{gens}")
            } else {
                format!("({c})*{gens}")
            };
            let multi = *m == 0 && !c.is_single_term();
            if k == 0 {
                write!(f, "{body}")?;
            } else if multi {
                write!(f, " + {body}")?;
            } else if let Some(rest) = body.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}
