//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Every comparison is exact equality of canonical forms; there is no
//! numerical tolerance anywhere.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use supertime_verify::{
    run, Branch, Entry, Options, Report, Section, Status, FOCK_PAIRS, FREE_PARAMETERS, MATRIX_SAMPLES,
    SCAN_SAMPLES,
};

const SEED: u64 = 7;
/// Exact arithmetic: residuals must be identically zero.
const TOLERANCE: u32 = 0;
const MAX_WALL_CLOCK: Duration = Duration::from_secs(60);
const MIN_FOCK_PAIRS: usize = 200;
const MIN_MATRICES: usize = 100;
const MAX_CONFIGS: usize = 16;
const PI_SAMPLES: usize = 20;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    problems: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self { problems: Vec::new() }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.problems.push(what.into());
        }
    }

    /// The entry exists and has `status`.
    fn status(&mut self, r: &Report, id: &str, status: Status) -> Option<Entry> {
        match r.get(id) {
            Some(e) if e.status == status => Some(e.clone()),
            Some(e) => {
                self.problems.push(format!(
                    "{id} is {} (expected {}): actual {}",
                    e.status.name(),
                    status.name(),
                    e.actual
                ));
                None
            }
            None => {
                self.problems.push(format!("{id} missing"));
                None
            }
        }
    }

    /// Every entry under `prefix` has `status`, and there are `count` of them.
    fn all(&mut self, r: &Report, prefix: &str, count: usize, status: Status) {
        let es: Vec<&Entry> = r.matching(prefix).collect();
        self.require(es.len() == count, format!("{prefix}*: {} entries, expected {count}", es.len()));
        for e in es {
            if e.status != status {
                self.problems.push(format!(
                    "{} is {} (expected {}): actual {}",
                    e.check_id,
                    e.status.name(),
                    status.name(),
                    e.actual
                ));
            }
        }
    }
}

fn branches(r: &Report, prefix: &str, f: &mut Outcome, status: Status) {
    for sign in ["plus", "minus"] {
        for case in ["eB_nonzero", "eB_zero"] {
            f.status(r, &format!("{prefix}.{sign}.{case}"), status);
        }
    }
}

fn grassmann(r: &Report) -> Outcome {
    let mut o = Outcome::new();
    o.status(r, "algebra.inverse.pattern", Status::Pass);
    o.status(r, "algebra.inverse.product", Status::Pass);
    o.require(FOCK_PAIRS >= MIN_FOCK_PAIRS, format!("only {FOCK_PAIRS} Fock pairs"));
    if let Some(e) = o.status(r, "algebra.fock.homomorphism", Status::Pass) {
        o.require(e.actual == format!("{FOCK_PAIRS}/{FOCK_PAIRS} pairs"), e.actual);
    }
    o
}

fn supermatrix(r: &Report) -> Outcome {
    let mut o = Outcome::new();
    o.require(MATRIX_SAMPLES >= MIN_MATRICES, format!("only {MATRIX_SAMPLES} matrices"));
    o.status(r, "algebra.sdet.multiplicative", Status::Pass);
    o.status(r, "algebra.sinv.two_sided", Status::Pass);
    o
}

fn osp(r: &Report) -> Outcome {
    let mut o = Outcome::new();
    o.all(r, "osp.annihilate.", 5, Status::Pass);
    o.all(r, "osp.closure.", 15, Status::Pass);
    o.all(r, "osp.structure.", 15, Status::ReportOnly);
    o
}

fn cpi(r: &Report) -> Outcome {
    let mut o = Outcome::new();
    branches(r, "cpi.family", &mut o, Status::Pass);
    branches(r, "cpi.sdet", &mut o, Status::Pass);
    branches(r, "cpi.metric", &mut o, Status::Pass);
    branches(r, "cpi.free_parameters", &mut o, Status::Pass);
    o.status(r, "cpi.kinetic.plus", Status::Pass);
    o.status(r, "cpi.kinetic.minus", Status::Pass);
    o.require(FREE_PARAMETERS == 10, "free-parameter target is not 10");
    for e in r.matching("cpi.free_parameters.") {
        o.require(e.actual == "10", format!("{}: {}", e.check_id, e.actual));
    }
    o.require(
        r.header.convention.get("grading_toggle").map(String::as_str) == Some("left"),
        "selected grading toggle not recorded",
    );
    o
}

fn nogo(r: &Report) -> Outcome {
    let mut o = Outcome::new();
    o.status(r, "nogo.certificate", Status::Pass);
    o.status(r, "nogo.witness.odd_product", Status::Pass);
    o.status(r, "nogo.witness.singular_block", Status::Pass);
    o
}

fn qpi(r: &Report) -> Outcome {
    let mut o = Outcome::new();
    o.status(r, "qpi.weight.inverse", Status::Pass);
    o.status(r, "qpi.weight.product", Status::Pass);
    branches(r, "qpi.family.printed", &mut o, Status::Pass);
    for sign in ["plus", "minus"] {
        o.status(r, &format!("qpi.action_split.{sign}"), Status::Pass);
        o.status(r, &format!("qpi.limit_eps0.{sign}"), Status::Pass);
        if let Some(e) = o.status(r, &format!("qpi.limit_eps1.regularized.{sign}"), Status::ReportOnly) {
            o.require(e.notes.starts_with("difference: "), format!("{}: no diff emitted", e.check_id));
        }
    }
    o
}

fn curvature(r: &Report) -> Outcome {
    let mut o = Outcome::new();
    o.all(r, "curvature.flat.", MAX_CONFIGS, Status::Pass);
    o.all(r, "curvature.scan.g", 2 * MAX_CONFIGS, Status::ReportOnly);
    o.require(SCAN_SAMPLES == PI_SAMPLES, format!("{SCAN_SAMPLES} samples per configuration"));
    for e in r.matching("curvature.scan.g") {
        let ok = e.expected.as_deref().is_some_and(|x| x.contains("6*pi5"))
            && e.notes.starts_with("verdict ")
            && e.notes.contains(&format!("/{PI_SAMPLES} samples agree"))
            && e.notes.contains("residual ");
        o.require(ok, format!("{}: incomplete row", e.check_id));
    }
    o.status(r, "curvature.scan.summary", Status::ReportOnly);
    o
}

fn determinism(first: &str, started: Instant) -> Outcome {
    let mut o = Outcome::new();
    for _ in 0..2 {
        let again = run(all()).to_json_lines();
        o.require(again == first, "run(all) output differs between runs");
    }
    let elapsed = started.elapsed();
    o.require(elapsed < MAX_WALL_CLOCK, format!("took {elapsed:?}"));
    o
}

fn all() -> Options {
    Options {
        section: Section::All,
        branch: Branch::Both,
        seed: SEED,
    }
}

fn main() -> ExitCode {
    let started = Instant::now();
    let report = run(all());
    let json = report.to_json_lines();
    let criteria: [Criterion; 8] = [
        ("Grassmann core", Box::new(|| grassmann(&report))),
        ("supermatrix", Box::new(|| supermatrix(&report))),
        ("OSp(1,2)", Box::new(|| osp(&report))),
        ("classical path integral", Box::new(|| cpi(&report))),
        ("odd kinetic no-go", Box::new(|| nogo(&report))),
        ("quantum path integral", Box::new(|| qpi(&report))),
        ("curvature", Box::new(|| curvature(&report))),
        ("determinism and runtime", Box::new(|| determinism(&json, started))),
    ];
    println!("acceptance: seed {SEED}, tolerance {TOLERANCE} (exact)");
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let out = check();
        if out.problems.is_empty() {
            println!("criterion {} ({name}): PASS", k + 1);
        } else {
            failed += 1;
            println!("criterion {} ({name}): FAIL", k + 1);
            for p in &out.problems {
                println!("    {p}");
            }
        }
    }
    println!("acceptance: {} of 8 criteria pass", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
