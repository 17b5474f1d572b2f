//! Interned even indeterminates.
//!
//! Symbols are interned once and never freed. Equality is pointer equality on
//! the interned name; ordering is by name, so the monomial order does not
//! depend on which thread registered a symbol first.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Mutex, OnceLock};

/// Name of the adjoined square root of two, reduced by `sqrt2^2 = 2`.
pub const SQRT2: &str = "sqrt2";

/// Symbols known before any user registration.
const BUILTIN: &[&str] = &[
    "eps", "hbar", "t", SQRT2, "a_B", "a_S", "b_B", "b_S", "c_B", "c_S", "d_B", "d_S", "e_B",
    "e_S", "alpha_th", "alpha_thb", "beta_th", "beta_thb", "gamma_th", "gamma_thb", "delta_th",
    "delta_thb", "pi1", "pi2", "pi3", "pi4", "pi5", "p", "q", "r", "x", "x'", "x''", "lambda",
    "lambda'", "lambda''", "V", "V'", "V''", "V'''",
];

/// Roots whose primed variants (`x'''`, `lambda''''`, …) are registered on demand.
pub(crate) const EVEN_JET_ROOTS: &[&str] = &["x", "lambda", "V"];

fn registry() -> &'static Mutex<HashMap<&'static str, Symbol>> {
    static REG: OnceLock<Mutex<HashMap<&'static str, Symbol>>> = OnceLock::new();
    REG.get_or_init(|| {
        let mut map = HashMap::new();
        for &name in BUILTIN {
            map.insert(name, Symbol(name));
        }
        Mutex::new(map)
    })
}

/// A Grassmann-even scalar indeterminate.
#[derive(Clone, Copy)]
pub struct Symbol(&'static str);

impl Symbol {
    /// Interns `name`, registering it if necessary.
    pub fn new(name: &str) -> Symbol {
        let mut reg = registry().lock().expect("symbol registry poisoned");
        if let Some(s) = reg.get(name) {
            return *s;
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        let sym = Symbol(leaked);
        reg.insert(leaked, sym);
        sym
    }

    /// Looks up an already registered symbol. Primed even jets of a known
    /// root are registered implicitly.
    pub fn lookup(name: &str) -> Option<Symbol> {
        {
            let reg = registry().lock().expect("symbol registry poisoned");
            if let Some(s) = reg.get(name) {
                return Some(*s);
            }
        }
        let root = name.trim_end_matches('\'');
        if root.len() < name.len() && EVEN_JET_ROOTS.contains(&root) {
            return Some(Symbol::new(name));
        }
        None
    }

    pub fn is_registered(name: &str) -> bool {
        Self::lookup(name).is_some()
    }

    pub fn name(&self) -> &'static str {
        self.0
    }

    pub fn sqrt2() -> Symbol {
        Symbol::new(SQRT2)
    }

    pub fn is_sqrt2(&self) -> bool {
        self.0 == SQRT2
    }
}

impl PartialEq for Symbol {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}

impl Eq for Symbol {}

impl Hash for Symbol {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.0.as_ptr() as usize).hash(state);
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        if std::ptr::eq(self.0, other.0) {
            Ordering::Equal
        } else {
            self.0.cmp(other.0)
        }
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_stable() {
        let a = Symbol::new("eps");
        let b = Symbol::lookup("eps").unwrap();
        assert_eq!(a, b);
        assert!(std::ptr::eq(a.name(), b.name()));
    }

    #[test]
    fn unknown_names_are_not_registered() {
        assert!(Symbol::lookup("definitely_not_a_symbol").is_none());
    }

    #[test]
    fn primed_jets_register_on_demand() {
        let s = Symbol::lookup("x''''").unwrap();
        assert_eq!(s.name(), "x''''");
        assert!(Symbol::lookup("eps'").is_none());
    }
}
