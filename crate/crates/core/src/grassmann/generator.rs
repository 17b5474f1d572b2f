//! Odd generators and their total order.
//!
//! Generators are identified by a small integer id. The *position* of a
//! generator in the total order decides canonical term signs; it equals the
//! id unless a different order is installed for the current thread with
//! [`with_order`].

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

pub const MAX_GENERATORS: usize = 64;

const BUILTIN: &[&str] = &[
    "theta", "thetabar", "c", "cbar", "c'", "cbar'", "c''", "cbar''", "c'''", "cbar'''",
];

/// Roots of the odd field jets; primed variants are registered on demand.
const ODD_JET_ROOTS: &[&str] = &["c", "cbar"];

struct Registry {
    names: Vec<&'static str>,
    ids: HashMap<&'static str, u8>,
}

fn registry() -> &'static Mutex<Registry> {
    static REG: OnceLock<Mutex<Registry>> = OnceLock::new();
    REG.get_or_init(|| {
        let mut reg = Registry {
            names: Vec::new(),
            ids: HashMap::new(),
        };
        for &n in BUILTIN {
            let id = reg.names.len() as u8;
            reg.names.push(n);
            reg.ids.insert(n, id);
        }
        Mutex::new(reg)
    })
}

/// A Grassmann-odd generator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(u8);

impl Generator {
    /// Interns `name` as an odd generator.
    ///
    /// # Panics
    ///
    /// Panics when more than [`MAX_GENERATORS`] generators are registered.
    pub fn new(name: &str) -> Generator {
        let mut reg = registry().lock().expect("generator registry poisoned");
        if let Some(&id) = reg.ids.get(name) {
            return Generator(id);
        }
        assert!(reg.names.len() < MAX_GENERATORS, "too many odd generators");
        let id = reg.names.len() as u8;
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        reg.names.push(leaked);
        reg.ids.insert(leaked, id);
        Generator(id)
    }

    /// Looks up a registered generator; primed ghost jets register on demand.
    pub fn lookup(name: &str) -> Option<Generator> {
        {
            let reg = registry().lock().expect("generator registry poisoned");
            if let Some(&id) = reg.ids.get(name) {
                return Some(Generator(id));
            }
        }
        let root = name.trim_end_matches('\'');
        if root.len() < name.len() && ODD_JET_ROOTS.contains(&root) {
            return Some(Generator::new(name));
        }
        None
    }

    pub fn theta() -> Generator {
        Generator(0)
    }

    pub fn thetabar() -> Generator {
        Generator(1)
    }

    pub fn id(self) -> u8 {
        self.0
    }

    pub fn name(self) -> &'static str {
        registry().lock().expect("generator registry poisoned").names[self.0 as usize]
    }

    /// Position in the current thread's order.
    pub fn position(self) -> u32 {
        ORDER.with(|o| o.borrow().pos_of[self.0 as usize] as u32)
    }

    pub fn bit(self) -> u64 {
        1u64 << self.position()
    }

    /// The generator occupying `pos` in the current order.
    pub fn at_position(pos: u32) -> Generator {
        ORDER.with(|o| Generator(o.borrow().id_at[pos as usize]))
    }

    /// Time derivative of an odd jet (`c → c'`); `None` for θ, θ̄ and other
    /// non-jet generators.
    pub fn prolong(self) -> Option<Generator> {
        let name = self.name();
        let root = name.trim_end_matches('\'');
        if ODD_JET_ROOTS.contains(&root) {
            Some(Generator::new(&format!("{name}'")))
        } else {
            None
        }
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

struct Order {
    pos_of: [u8; MAX_GENERATORS],
    id_at: [u8; MAX_GENERATORS],
}

impl Order {
    fn identity() -> Self {
        let mut pos_of = [0u8; MAX_GENERATORS];
        for (i, p) in pos_of.iter_mut().enumerate() {
            *p = i as u8;
        }
        Order {
            pos_of,
            id_at: pos_of,
        }
    }

    fn leading(first: &[Generator]) -> Self {
        let mut id_at = Vec::with_capacity(MAX_GENERATORS);
        id_at.extend(first.iter().map(|g| g.0));
        for id in 0..MAX_GENERATORS as u8 {
            if !id_at.contains(&id) {
                id_at.push(id);
            }
        }
        let mut o = Order::identity();
        for (pos, &id) in id_at.iter().enumerate() {
            o.id_at[pos] = id;
            o.pos_of[id as usize] = pos as u8;
        }
        o
    }
}

thread_local! {
    static ORDER: RefCell<Order> = RefCell::new(Order::identity());
}

/// Runs `f` with `first` placed at the front of the generator order, in the
/// given sequence, and the remaining generators after them by id.
///
/// Values built inside `f` must not escape it except through
/// order-independent forms such as [`SuperNumber::id_terms`](super::SuperNumber::id_terms).
pub fn with_order<R>(first: &[Generator], f: impl FnOnce() -> R) -> R {
    let prev = ORDER.with(|o| o.replace(Order::leading(first)));
    struct Restore(Option<Order>);
    impl Drop for Restore {
        fn drop(&mut self) {
            if let Some(prev) = self.0.take() {
                ORDER.with(|o| *o.borrow_mut() = prev);
            }
        }
    }
    let _guard = Restore(Some(prev));
    f()
}
