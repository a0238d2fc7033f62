use std::fmt::Write as _;

/// Ordered so that `max` picks the worse outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Outcome {
    Pass,
    Inconclusive,
    Fail,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Inconclusive => "inconclusive",
            Outcome::Fail => "fail",
        }
    }

    pub fn from_bool(ok: bool) -> Outcome {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Inconclusive => 2,
            Outcome::Fail => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Text,
    Structured,
}

/// One structured line: task id, n, r, verdict, flag, witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub n: Option<usize>,
    pub r: Option<usize>,
    pub verdict: String,
    pub flag: String,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub text: String,
    pub record: Option<Record>,
}

#[derive(Clone, Debug)]
pub struct TaskReport {
    pub id: String,
    pub kind: &'static str,
    pub lines: Vec<Line>,
    pub outcome: Outcome,
}

impl TaskReport {
    pub fn new(id: &str, kind: &'static str) -> TaskReport {
        TaskReport { id: id.to_string(), kind, lines: Vec::new(), outcome: Outcome::Pass }
    }

    /// Text-only line.
    pub fn note(&mut self, text: impl Into<String>) {
        for l in text.into().lines() {
            self.lines.push(Line { text: l.to_string(), record: None });
        }
    }

    pub fn record(&mut self, text: impl Into<String>, rec: Record) {
        self.lines.push(Line { text: text.into(), record: Some(rec) });
    }

    /// A named assertion; its outcome folds into the task outcome.
    pub fn check(&mut self, name: &str, outcome: Outcome, detail: impl Into<String>) {
        let detail = detail.into();
        let text = if detail.is_empty() {
            format!("check {name}: {}", outcome.as_str())
        } else {
            format!("check {name}: {} ({detail})", outcome.as_str())
        };
        let rec = Record { n: None, r: None, verdict: format!("check:{name}"), flag: outcome.as_str().into(), witness: detail };
        self.record(text, rec);
        self.outcome = self.outcome.max(outcome);
    }

    /// A check reported for one step `n` (and size `r`).
    pub fn check_at(&mut self, name: &str, n: usize, r: Option<usize>, outcome: Outcome, detail: impl Into<String>) {
        let detail = detail.into();
        let rtext = r.map(|r| format!(", r={r}")).unwrap_or_default();
        let text = if detail.is_empty() {
            format!("check {name} (n={n}{rtext}): {}", outcome.as_str())
        } else {
            format!("check {name} (n={n}{rtext}): {} ({detail})", outcome.as_str())
        };
        let rec = Record { n: Some(n), r, verdict: format!("check:{name}"), flag: outcome.as_str().into(), witness: detail };
        self.record(text, rec);
        self.outcome = self.outcome.max(outcome);
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub title: Option<String>,
    pub seed: u64,
    pub tasks: Vec<TaskReport>,
}

fn field(s: &str) -> String {
    if s.is_empty() {
        "-".to_string()
    } else {
        s.replace(['\t', '\n'], " ")
    }
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

impl Report {
    pub fn outcome(&self) -> Outcome {
        self.tasks.iter().map(|t| t.outcome).max().unwrap_or(Outcome::Pass)
    }

    pub fn exit_code(&self) -> i32 {
        self.outcome().exit_code()
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Text => self.render_text(),
            ReportFormat::Structured => self.render_structured(),
        }
    }

    fn render_text(&self) -> String {
        let mut s = String::new();
        if let Some(t) = &self.title {
            let _ = writeln!(s, "scenario: {t}");
        }
        let _ = writeln!(s, "seed: {}", self.seed);
        for t in &self.tasks {
            let _ = writeln!(s, "\n== {} ({}) ==", t.id, t.kind);
            for l in t.lines.iter().filter(|l| !l.text.is_empty()) {
                let _ = writeln!(s, "{}", l.text);
            }
            let _ = writeln!(s, "-> {}", t.outcome.as_str());
        }
        let _ = writeln!(s, "\nresult: {}", self.outcome().as_str());
        s
    }

    /// Tab-separated `task  n  r  verdict  flag  witness`; `-` marks an empty field and every
    /// task ends with an `outcome` record.
    fn render_structured(&self) -> String {
        let mut s = String::from("task\tn\tr\tverdict\tflag\twitness\n");
        for t in &self.tasks {
            for rec in t.lines.iter().filter_map(|l| l.record.as_ref()) {
                let _ = writeln!(s, "{}\t{}\t{}\t{}\t{}\t{}", t.id, opt(rec.n), opt(rec.r), field(&rec.verdict), field(&rec.flag), field(&rec.witness));
            }
            let _ = writeln!(s, "{}\t-\t-\toutcome\t{}\t-", t.id, t.outcome.as_str());
        }
        s
    }
}
