//! Replays the supertime derivations as a list of checks.

pub mod eval;
pub mod random;
pub mod report;
mod sections;

use std::collections::BTreeMap;

use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use supertime::constraints::Sign;

pub use report::{Entry, Header, Report, Status};
pub use sections::{FOCK_PAIRS, FREE_PARAMETERS, MATRIX_SAMPLES, SCAN_SAMPLES};

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Section {
    Algebra,
    Osp,
    Cpi,
    Nogo,
    Qpi,
    Curvature,
    All,
}

impl Section {
    pub const EACH: [Section; 6] = [
        Section::Algebra,
        Section::Osp,
        Section::Cpi,
        Section::Nogo,
        Section::Qpi,
        Section::Curvature,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Section::Algebra => "algebra",
            Section::Osp => "osp",
            Section::Cpi => "cpi",
            Section::Nogo => "nogo",
            Section::Qpi => "qpi",
            Section::Curvature => "curvature",
            Section::All => "all",
        }
    }

    fn expand(self) -> Vec<Section> {
        match self {
            Section::All => Section::EACH.to_vec(),
            s => vec![s],
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Branch {
    Plus,
    Minus,
    Both,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
            Branch::Both => "both",
        }
    }

    pub fn signs(self) -> Vec<Sign> {
        match self {
            Branch::Plus => vec![Sign::Plus],
            Branch::Minus => vec![Sign::Minus],
            Branch::Both => Sign::BOTH.to_vec(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Options {
    pub section: Section,
    pub branch: Branch,
    pub seed: u64,
}

/// Default seed when neither `--seed` nor `VERIFY_SEED` is given.
pub const DEFAULT_SEED: u64 = 7;

/// Conventions fixed by the engine, echoed in every report header.
pub fn conventions() -> BTreeMap<String, String> {
    [
        ("action_weight", "inverse superdeterminant of E^M_A"),
        ("frame_layout", "rows flat index, columns curved index"),
        ("grading_toggle", "left"),
        ("berezin_measure", "integral of thetabar*theta is 1"),
        ("derivatives", "left"),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v.to_string()))
    .collect()
}

struct Ctx {
    signs: Vec<Sign>,
    rng: ChaCha8Rng,
}

/// Each section draws from its own stream so results do not depend on
/// which sections run alongside it.
fn section_rng(seed: u64, s: Section) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(s as u64 + 1);
    rng
}

/// Runs the requested sections concurrently and merges their entries in
/// check-id order.
pub fn run(opts: Options) -> Report {
    let sections = opts.section.expand();
    let mut entries: Vec<Entry> = std::thread::scope(|scope| {
        let handles: Vec<_> = sections
            .iter()
            .map(|&s| {
                let mut ctx = Ctx {
                    signs: opts.branch.signs(),
                    rng: section_rng(opts.seed, s),
                };
                scope.spawn(move || sections::run(s, &mut ctx))
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("section thread panicked"))
            .collect()
    });
    entries.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    Report {
        header: Header {
            section: opts.section.name().into(),
            branch: opts.branch.name().into(),
            seed: opts.seed,
            convention: conventions(),
        },
        entries,
    }
}
