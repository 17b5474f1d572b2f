use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    /// Computed but not adjudicated; never fails a run.
    #[serde(rename = "report-only")]
    ReportOnly,
}

impl Status {
    pub fn of(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::ReportOnly => "report-only",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Entry {
    pub check_id: String,
    /// What was checked, in words.
    pub relation: String,
    pub status: Status,
    pub expected: Option<String>,
    pub actual: String,
    pub notes: String,
}

impl Entry {
    pub fn new(check_id: impl Into<String>, relation: impl Into<String>, status: Status) -> Self {
        Self {
            check_id: check_id.into(),
            relation: relation.into(),
            status,
            expected: None,
            actual: String::new(),
            notes: String::new(),
        }
    }

    pub fn expected(mut self, e: impl ToString) -> Self {
        self.expected = Some(e.to_string());
        self
    }

    pub fn actual(mut self, a: impl ToString) -> Self {
        self.actual = a.to_string();
        self
    }

    pub fn notes(mut self, n: impl Into<String>) -> Self {
        self.notes = n.into();
        self
    }

    /// A check that could not be carried out because a computation errored.
    pub fn errored(check_id: impl Into<String>, relation: impl Into<String>, err: impl std::fmt::Display) -> Self {
        Self::new(check_id, relation, Status::Fail).actual(format!("error: {err}"))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Header {
    pub section: String,
    pub branch: String,
    pub seed: u64,
    pub convention: BTreeMap<String, String>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Report {
    pub header: Header,
    pub entries: Vec<Entry>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub report_only: usize,
}

impl Report {
    pub fn tally(&self) -> Tally {
        let mut t = Tally::default();
        for e in &self.entries {
            match e.status {
                Status::Pass => t.pass += 1,
                Status::Fail => t.fail += 1,
                Status::ReportOnly => t.report_only += 1,
            }
        }
        t
    }

    pub fn has_failures(&self) -> bool {
        self.entries.iter().any(|e| e.status == Status::Fail)
    }

    pub fn get(&self, check_id: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.check_id == check_id)
    }

    /// Entries whose id starts with `prefix`.
    pub fn matching<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Entry> + 'a {
        self.entries.iter().filter(move |e| e.check_id.starts_with(prefix))
    }

    /// Header line, then one JSON object per entry.
    pub fn to_json_lines(&self) -> String {
        let mut out = serde_json::to_string(&self.header).expect("header serializes");
        out.push('\n');
        for e in &self.entries {
            out.push_str(&serde_json::to_string(e).expect("entry serializes"));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let h = &self.header;
        let mut out = String::new();
        let _ = writeln!(out, "section {}  branch {}  seed {}", h.section, h.branch, h.seed);
        for (k, v) in &h.convention {
            let _ = writeln!(out, "convention {k} = {v}");
        }
        let _ = writeln!(out);
        let width = self.entries.iter().map(|e| e.check_id.len()).max().unwrap_or(0);
        for e in &self.entries {
            let _ = writeln!(out, "{:<11} {:<width$}  {}", e.status.name().to_uppercase(), e.check_id, e.relation);
            if let Some(x) = &e.expected {
                let _ = writeln!(out, "{:11} {:width$}  expected: {x}", "", "");
            }
            if !e.actual.is_empty() {
                let _ = writeln!(out, "{:11} {:width$}  actual:   {}", "", "", e.actual);
            }
            if !e.notes.is_empty() {
                let _ = writeln!(out, "{:11} {:width$}  notes:    {}", "", "", e.notes);
            }
        }
        let t = self.tally();
        let _ = writeln!(out, "\n{} pass, {} fail, {} report-only", t.pass, t.fail, t.report_only);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report() -> Report {
        Report {
            header: Header {
                section: "all".into(),
                branch: "both".into(),
                seed: 3,
                convention: BTreeMap::from([("k".to_string(), "v".to_string())]),
            },
            entries: vec![
                Entry::new("a.one", "first", Status::Pass).expected(1).actual(1),
                Entry::new("a.two", "second", Status::ReportOnly).actual("x"),
                Entry::new("b.one", "third", Status::Fail).actual(0).notes("why"),
            ],
        }
    }

    #[test]
    fn tally_and_failures() {
        let r = report();
        assert_eq!(r.tally(), Tally { pass: 1, fail: 1, report_only: 1 });
        assert!(r.has_failures());
        assert_eq!(r.matching("a.").count(), 2);
        assert_eq!(r.get("b.one").unwrap().notes, "why");
    }

    #[test]
    fn json_lines_shape() {
        let text = report().to_json_lines();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], r#"{"section":"all","branch":"both","seed":3,"convention":{"k":"v"}}"#);
        assert!(lines[2].contains(r#""status":"report-only""#));
        assert!(lines[2].contains(r#""expected":null"#));
    }

    #[test]
    fn text_table_lists_every_entry() {
        let t = report().to_text();
        assert!(t.contains("PASS        a.one"));
        assert!(t.contains("REPORT-ONLY a.two"));
        assert!(t.ends_with("1 pass, 1 fail, 1 report-only\n"));
    }
}
