use serde_json::json;
use std::fmt::Write as _;
use std::time::Duration;

/// One named verdict with its witness or certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub time: Option<Duration>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), passed, detail: detail.into(), time: None }
    }

    pub fn timed(mut self, time: Duration) -> Check {
        self.time = Some(time);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    JsonLines,
}

/// Checks in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Wall times are written only when `timings` is set, so that the
    /// default output is byte-identical across runs.
    pub fn render(&self, format: Format, timings: bool) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let time = c.time.filter(|_| timings);
            match format {
                Format::Text => {
                    let verdict = if c.passed { "yes" } else { "no" };
                    let _ = write!(out, "{}: {verdict}", c.name);
                    if !c.detail.is_empty() {
                        let _ = write!(out, ", {}", c.detail);
                    }
                    if let Some(t) = time {
                        let _ = write!(out, " [{} ms]", t.as_millis());
                    }
                    out.push('\n');
                }
                Format::JsonLines => {
                    let mut v = json!({ "check": c.name, "passed": c.passed, "detail": c.detail });
                    if let Some(t) = time {
                        v["ms"] = json!(t.as_millis() as u64);
                    }
                    let _ = writeln!(out, "{v}");
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_both_formats() {
        let mut r = Report::default();
        r.push(Check::new("iso", true, "carrier size 4"));
        r.push(Check::new("key lemma", false, "").timed(Duration::from_millis(7)));
        assert!(!r.passed());
        assert_eq!(r.render(Format::Text, false), "iso: yes, carrier size 4\nkey lemma: no\n");
        assert_eq!(r.render(Format::Text, true), "iso: yes, carrier size 4\nkey lemma: no [7 ms]\n");
        assert_eq!(
            r.render(Format::JsonLines, false),
            "{\"check\":\"iso\",\"detail\":\"carrier size 4\",\"passed\":true}\n{\"check\":\"key lemma\",\"detail\":\"\",\"passed\":false}\n"
        );
    }
}
