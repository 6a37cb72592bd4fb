//! Check reports: one row per verified statement, serialized as JSON, CSV or text.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub degree: Option<usize>,
    pub statement: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    pub paper_ref: String,
}

impl Row {
    pub fn new(
        degree: Option<usize>,
        statement: impl Into<String>,
        expected: impl ToString,
        computed: impl ToString,
        pass: bool,
        paper_ref: impl Into<String>,
    ) -> Self {
        Self {
            degree,
            statement: statement.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            pass,
            paper_ref: paper_ref.into(),
        }
    }

    /// A row comparing two values for equality.
    pub fn eq<T: PartialEq + ToString>(
        degree: Option<usize>,
        statement: impl Into<String>,
        expected: T,
        computed: T,
        paper_ref: impl Into<String>,
    ) -> Self {
        let pass = expected == computed;
        Self::new(
            degree,
            statement,
            expected.to_string(),
            computed.to_string(),
            pass,
            paper_ref,
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub config: serde_json::Value,
    pub rows: Vec<Row>,
    pub summary: Summary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl Format {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "json" => Some(Self::Json),
            "csv" => Some(Self::Csv),
            "text" => Some(Self::Text),
            _ => None,
        }
    }
}

impl Report {
    pub fn new(suite: impl Into<String>, config: serde_json::Value) -> Self {
        Self {
            suite: suite.into(),
            config,
            rows: Vec::new(),
            summary: Summary::default(),
        }
    }

    pub fn push(&mut self, row: Row) {
        self.rows.push(row);
        self.refresh();
    }

    pub fn extend(&mut self, rows: impl IntoIterator<Item = Row>) {
        self.rows.extend(rows);
        self.refresh();
    }

    fn refresh(&mut self) {
        let passed = self.rows.iter().filter(|r| r.pass).count();
        self.summary = Summary {
            total: self.rows.len(),
            passed,
            failed: self.rows.len() - passed,
        };
    }

    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = String::from("degree,statement,expected,computed,pass,paper_ref\n");
                for r in &self.rows {
                    let deg = r.degree.map(|d| d.to_string()).unwrap_or_default();
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{},{}",
                        deg,
                        csv_field(&r.statement),
                        csv_field(&r.expected),
                        csv_field(&r.computed),
                        r.pass,
                        csv_field(&r.paper_ref)
                    );
                }
                s
            }
            Format::Text => {
                let mut s = format!("suite {}\n", self.suite);
                for r in &self.rows {
                    let deg = r
                        .degree
                        .map(|d| format!("d={d:<4}"))
                        .unwrap_or_else(|| "      ".into());
                    let mark = if r.pass { "ok  " } else { "FAIL" };
                    let _ = writeln!(
                        s,
                        "{mark} {deg} {}: expected {}, computed {}",
                        r.statement, r.expected, r.computed
                    );
                }
                let _ = writeln!(
                    s,
                    "{} of {} checks passed",
                    self.summary.passed, self.summary.total
                );
                s
            }
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_tracks_rows() {
        let mut r = Report::new("demo", serde_json::json!({"p": 3}));
        r.push(Row::eq(Some(2), "dimension", 1, 1, "invariant ring"));
        r.push(Row::eq(None, "sign", -1, 1, "product law"));
        assert_eq!(
            r.summary,
            Summary {
                total: 2,
                passed: 1,
                failed: 1
            }
        );
        assert!(!r.all_pass());
        assert!(r
            .render(Format::Csv)
            .contains("\n2,dimension,1,1,true,invariant ring\n"));
        let back: Report = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(back, r);
    }
}
