//! Seeded random inputs for the property-style checks.

use std::collections::BTreeMap;

use rand::Rng;

use supertime::grassmann::{Generator, SuperNumber};
use supertime::ring::{GaussRat, RatFunc, Symbol};
use supertime::supermatrix::SuperMatrix;

/// Small nonzero-denominator rational `n/d`.
pub fn rational(rng: &mut impl Rng) -> RatFunc {
    RatFunc::from_ratio(rng.gen_range(-6..=6), rng.gen_range(1..=5))
}

fn positive(rng: &mut impl Rng) -> GaussRat {
    GaussRat::from_ratio(rng.gen_range(1..=9), rng.gen_range(1..=4))
}

/// Coefficient in `eps`, `hbar`, sometimes with a pole at `eps = -k`.
pub fn coefficient(rng: &mut impl Rng) -> RatFunc {
    let eps = RatFunc::sym("eps");
    let hbar = RatFunc::sym("hbar");
    let mut c = rational(rng) + rational(rng) * eps.clone() + rational(rng) * eps.clone() * hbar;
    if rng.gen_bool(0.5) {
        c = c + RatFunc::i() * rational(rng);
    }
    if rng.gen_bool(0.25) {
        let k = RatFunc::from_int(rng.gen_range(1..=4));
        c = c.div(&(eps + k)).expect("nonzero symbolic denominator");
    }
    c
}

/// Random element on the generators at positions `0..n`.
pub fn supernumber(rng: &mut impl Rng, n: u32) -> SuperNumber {
    let terms = rng.gen_range(1..=6);
    (0..terms).fold(SuperNumber::zero(), |acc, _| {
        let mask: u64 = rng.gen_range(0..(1u64 << n));
        &acc + &SuperNumber::product_of(&gens_of(mask, n)).scale(&coefficient(rng))
    })
}

fn gens_of(mask: u64, n: u32) -> Vec<Generator> {
    (0..n)
        .filter(|p| mask & (1 << p) != 0)
        .map(Generator::at_position)
        .collect()
}

/// Positive rationals for `eps` and `hbar`, so the poles above are avoided.
pub fn bindings(rng: &mut impl Rng) -> BTreeMap<Symbol, GaussRat> {
    BTreeMap::from([(Symbol::new("eps"), positive(rng)), (Symbol::new("hbar"), positive(rng))])
}

/// Graded element of fixed parity with rational coefficients.
fn graded(rng: &mut impl Rng, n: u32, odd: bool) -> SuperNumber {
    let mut x = SuperNumber::zero();
    for _ in 0..rng.gen_range(0..=3) {
        let mask: u64 = rng.gen_range(1..(1u64 << n));
        if (mask.count_ones() % 2 == 1) == odd {
            x = &x + &SuperNumber::product_of(&gens_of(mask, n)).scale(&rational(rng));
        }
    }
    x
}

/// Random graded 3×3 matrix with invertible even blocks.
pub fn invertible_matrix(rng: &mut impl Rng, n: u32) -> SuperMatrix {
    loop {
        let mut ev = || &SuperNumber::scalar(rational(rng)) + &graded(rng, n, false);
        let e = [ev(), ev(), ev(), ev(), ev()];
        let mut od = || graded(rng, n, true);
        let o = [od(), od(), od(), od()];
        let [e0, e1, e2, e3, e4] = e;
        let [o0, o1, o2, o3] = o;
        let m = SuperMatrix::new([[e0, o0, o1], [o2, e1, e2], [o3, e3, e4]]).expect("graded by construction");
        if !m.at(0, 0).body().is_zero() && !m.det_d().body().is_zero() {
            return m;
        }
    }
}
