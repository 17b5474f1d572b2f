//! Total time derivative on functions of `t` and field jets.
//!
//! `x`, `lambda` and their primes are time jets. `V`, `V'`, … are
//! derivatives of the potential with respect to `x`, so `d/dt V⁽ᵏ⁾ = V⁽ᵏ⁺¹⁾ x'`.
//! Odd jets `c`, `cbar` prolong to `c'`, `cbar'`.

use crate::grassmann::{bits, Generator, SuperNumber};
use crate::ring::{RatFunc, Symbol};

const TIME_JETS: &[&str] = &["x", "lambda"];
const POTENTIAL: &str = "V";

fn primed(name: &str) -> Symbol {
    Symbol::lookup(&format!("{name}'")).expect("jet roots register their primes")
}

/// `d s / dt` for a single even symbol.
pub fn dt_symbol(s: Symbol) -> RatFunc {
    let name = s.name();
    let root = name.trim_end_matches('\'');
    if name == "t" {
        RatFunc::one()
    } else if TIME_JETS.contains(&root) {
        RatFunc::var(primed(name))
    } else if root == POTENTIAL {
        &RatFunc::var(primed(name)) * &RatFunc::sym("x'")
    } else {
        RatFunc::zero()
    }
}

/// Total time derivative of a scalar coefficient.
pub fn dt_scalar(c: &RatFunc) -> RatFunc {
    c.vars().into_iter().fold(RatFunc::zero(), |acc, s| {
        let rate = dt_symbol(s);
        if rate.is_zero() {
            acc
        } else {
            &acc + &(&c.derivative(s) * &rate)
        }
    })
}

/// Total time derivative of a superfunction.
pub fn total_dt(f: &SuperNumber) -> SuperNumber {
    let mut out = SuperNumber::zero();
    for (mask, c) in f.terms() {
        let gens: Vec<Generator> = bits(mask).map(Generator::at_position).collect();
        let dc = dt_scalar(c);
        if !dc.is_zero() {
            out = &out + &SuperNumber::product_of(&gens).scale(&dc);
        }
        for (k, g) in gens.iter().enumerate() {
            if let Some(gp) = g.prolong() {
                let mut next = gens.clone();
                next[k] = gp;
                out = &out + &SuperNumber::product_of(&next).scale(c);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn potential_chain_rule() {
        let v = SuperNumber::sym("V''");
        assert_eq!(total_dt(&v), &SuperNumber::sym("V'''") * &SuperNumber::sym("x'"));
        assert_eq!(total_dt(&SuperNumber::sym("t").pow(2)), &SuperNumber::int(2) * &SuperNumber::sym("t"));
    }

    #[test]
    fn odd_jets_prolong_in_place() {
        let c = Generator::lookup("c").unwrap();
        let cb = Generator::lookup("cbar").unwrap();
        let x = SuperNumber::product_of(&[c, cb]);
        let cp = Generator::lookup("c'").unwrap();
        let cbp = Generator::lookup("cbar'").unwrap();
        let want = &SuperNumber::product_of(&[cp, cb]) + &SuperNumber::product_of(&[c, cbp]);
        assert_eq!(total_dt(&x), want);
        assert!(total_dt(&SuperNumber::theta()).is_zero());
    }
}
