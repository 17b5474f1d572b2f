use rand::Rng;

use supertime::grassmann::matrep::{represent, to_matrix_rep, FockMatrix};
use supertime::grassmann::SuperNumber;
use supertime::ring::RatFunc;

use crate::random;
use crate::{Ctx, Entry, Status};

/// Generators used by the random checks: θ, θ̄, c, c̄.
const MODES: u32 = 4;
pub const FOCK_PAIRS: usize = 200;
pub const MATRIX_SAMPLES: usize = 100;

pub(super) fn run(ctx: &mut Ctx) -> Vec<Entry> {
    let mut out = inverse_pattern();
    out.push(fock(&mut ctx.rng));
    out.extend(supermatrices(&mut ctx.rng));
    out
}

fn inverse_pattern() -> Vec<Entry> {
    let f: Vec<RatFunc> = (0..4).map(|k| RatFunc::sym(&format!("f{k}"))).collect();
    let (th, tb) = (SuperNumber::theta(), SuperNumber::thetabar());
    let tt = &th * &tb;
    let x = &(&(&SuperNumber::scalar(f[0].clone()) + &th.scale(&f[1])) + &tb.scale(&f[2])) + &tt.scale(&f[3]);
    let relation = "inverse of f0 + f1*theta + f2*thetabar + f3*theta*thetabar";
    let inv = match x.inv() {
        Ok(v) => v,
        Err(e) => return vec![Entry::errored("algebra.inverse.pattern", relation, e)],
    };
    let f0sq = &f[0] * &f[0];
    let minus_over = |c: &RatFunc| -c.div(&f0sq).expect("f0 is a nonzero symbol");
    let want = &(&(&SuperNumber::scalar(f[0].inv().expect("nonzero")) + &th.scale(&minus_over(&f[1])))
        + &tb.scale(&minus_over(&f[2])))
        + &tt.scale(&minus_over(&f[3]));
    let prod = (&x * &inv, &inv * &x);
    vec![
        Entry::new("algebra.inverse.pattern", relation, Status::of(inv == want))
            .expected(&want)
            .actual(&inv),
        Entry::new(
            "algebra.inverse.product",
            "f*inv(f) = inv(f)*f = 1 for generic f with f0 != 0",
            Status::of(prod.0.is_one() && prod.1.is_one()),
        )
        .expected(1)
        .actual(&prod.0),
    ]
}

fn fock(rng: &mut impl Rng) -> Entry {
    let relation = "Fock-space representation is a ring homomorphism at rational bindings";
    let mut agree = 0;
    let mut first_bad = None;
    for k in 0..FOCK_PAIRS {
        let (x, y) = (random::supernumber(rng, MODES), random::supernumber(rng, MODES));
        let b = random::bindings(rng);
        let rep = |v: &SuperNumber| -> Option<FockMatrix> { to_matrix_rep(v, &b, MODES).ok().flatten() };
        let ok = match (rep(&x), rep(&y), rep(&(&x * &y)), rep(&(&x + &y))) {
            (Some(mx), Some(my), Some(mxy), Some(sum)) => mxy == mx.mul(&my) && sum == mx.add(&my),
            _ => false,
        };
        if ok {
            agree += 1;
        } else if first_bad.is_none() {
            first_bad = Some(format!("pair {k}: x = {x}, y = {y}"));
        }
    }
    let unit = represent(&SuperNumber::one(), MODES).expect("constant");
    let ok = agree == FOCK_PAIRS && unit == FockMatrix::identity(1 << MODES);
    Entry::new("algebra.fock.homomorphism", relation, Status::of(ok))
        .expected(format!("{FOCK_PAIRS}/{FOCK_PAIRS} pairs"))
        .actual(format!("{agree}/{FOCK_PAIRS} pairs"))
        .notes(first_bad.unwrap_or_default())
}

fn supermatrices(rng: &mut impl Rng) -> Vec<Entry> {
    let mut mult = 0;
    let mut tried = 0;
    while mult < MATRIX_SAMPLES && tried < 10 * MATRIX_SAMPLES {
        tried += 1;
        let (m, n) = (random::invertible_matrix(rng, MODES), random::invertible_matrix(rng, MODES));
        let mn = m.smul(&n);
        if mn.det_d().body().is_zero() {
            continue;
        }
        match (mn.sdet(), m.sdet(), n.sdet()) {
            (Ok(a), Ok(b), Ok(c)) if a == &b * &c => mult += 1,
            _ => break,
        }
    }
    let mut inv_ok = 0;
    for _ in 0..MATRIX_SAMPLES {
        let m = random::invertible_matrix(rng, MODES);
        let ok = m.sinv().is_ok_and(|w| {
            m.smul(&w).is_identity()
                && w.smul(&m).is_identity()
                && w.sdet().ok() == m.sdet().ok().and_then(|d| d.inv().ok())
        });
        if ok {
            inv_ok += 1;
        }
    }
    vec![
        Entry::new(
            "algebra.sdet.multiplicative",
            "sdet(MN) = sdet(M) sdet(N) on random invertible graded 3x3 matrices",
            Status::of(mult == MATRIX_SAMPLES),
        )
        .expected(format!("{MATRIX_SAMPLES}/{MATRIX_SAMPLES} pairs"))
        .actual(format!("{mult}/{MATRIX_SAMPLES} pairs")),
        Entry::new(
            "algebra.sinv.two_sided",
            "M sinv(M) = sinv(M) M = 1 and sdet(sinv M) = 1/sdet(M)",
            Status::of(inv_ok == MATRIX_SAMPLES),
        )
        .expected(format!("{MATRIX_SAMPLES}/{MATRIX_SAMPLES} matrices"))
        .actual(format!("{inv_ok}/{MATRIX_SAMPLES} matrices")),
    ]
}
