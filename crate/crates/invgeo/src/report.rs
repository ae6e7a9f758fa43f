//! Structured report documents.
//!
//! A report is an ordered list of sections, each an ordered list of string
//! key/value entries. Serialization is deterministic: identical reports give
//! byte-identical text and JSON.
//!
//! Text layout: a `[section]` header per section, then one `key = value`
//! line per entry, with two special cases: the `checks` section renders as
//! a single `key: value, key: value` line, and `sectional` keys render as
//! `sec(X^Y)`.

use std::fmt::Write as _;

use serde_json::Value;

use crate::error::GeometryError;

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub sections: Vec<Section>,
}

#[derive(Debug, Clone)]
pub struct Section {
    pub name: String,
    pub entries: Vec<(String, String)>,
}

impl Section {
    pub fn new(name: impl Into<String>) -> Self {
        Section {
            name: name.into(),
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.entries.push((key.into(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, section: Section) {
        self.sections.push(section);
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.section(section).and_then(|s| s.get(key))
    }

    /// Deterministic structured text.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, section) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            let _ = writeln!(out, "[{}]", section.name);
            if section.name == "checks" {
                let line = section
                    .entries
                    .iter()
                    .map(|(k, v)| format!("{k}: {v}"))
                    .collect::<Vec<_>>()
                    .join(", ");
                let _ = writeln!(out, "{line}");
            } else {
                for (k, v) in &section.entries {
                    if section.name == "sectional" {
                        let _ = writeln!(out, "sec({k}) = {v}");
                    } else {
                        let _ = writeln!(out, "{k} = {v}");
                    }
                }
            }
        }
        out
    }

    /// Deterministic JSON: one object per section, in section order.
    pub fn to_json(&self) -> String {
        fn escape(s: &str) -> String {
            let mut out = String::with_capacity(s.len());
            for c in s.chars() {
                match c {
                    '"' => out.push_str("\\\""),
                    '\\' => out.push_str("\\\\"),
                    '\n' => out.push_str("\\n"),
                    '\t' => out.push_str("\\t"),
                    '\r' => out.push_str("\\r"),
                    c if (c as u32) < 0x20 => {
                        let _ = write!(out, "\\u{:04x}", c as u32);
                    }
                    c => out.push(c),
                }
            }
            out
        }
        let mut out = String::from("{");
        for (i, section) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "\n  \"{}\": {{", escape(&section.name));
            for (j, (k, v)) in section.entries.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                let _ = write!(out, "\n    \"{}\": \"{}\"", escape(k), escape(v));
            }
            out.push_str("\n  }");
        }
        out.push_str("\n}");
        if self.sections.is_empty() {
            return "{}".to_string();
        }
        out
    }

    /// Parses a JSON report document back into sections.
    pub fn from_json(text: &str) -> Result<Report, GeometryError> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| GeometryError::Report(e.to_string()))?;
        let Value::Object(map) = value else {
            return Err(GeometryError::Report("top level must be an object".into()));
        };
        let mut report = Report::new();
        for (name, inner) in map {
            let Value::Object(entries) = inner else {
                return Err(GeometryError::Report(format!(
                    "section `{name}` must be an object"
                )));
            };
            let mut section = Section::new(name);
            for (k, v) in entries {
                let Value::String(s) = v else {
                    return Err(GeometryError::Report(format!(
                        "entry `{k}` must be a string"
                    )));
                };
                section.push(k, s);
            }
            report.push(section);
        }
        Ok(report)
    }

    fn sorted_pairs(&self) -> Vec<(String, Vec<(String, String)>)> {
        let mut sections: Vec<(String, Vec<(String, String)>)> = self
            .sections
            .iter()
            .map(|s| {
                let mut entries = s.entries.clone();
                entries.sort();
                (s.name.clone(), entries)
            })
            .collect();
        sections.sort();
        sections
    }
}

/// Order-insensitive equality: serialization order is presentation, the
/// entries are the data.
impl PartialEq for Report {
    fn eq(&self, other: &Self) -> bool {
        self.sorted_pairs() == other.sorted_pairs()
    }
}

impl Eq for Report {}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut report = Report::new();
        let mut checks = Section::new("checks");
        checks.push("antisymmetry", "ok");
        checks.push("jacobi", "ok");
        report.push(checks);
        let mut sectional = Section::new("sectional");
        sectional.push("Z^W", "2*z2^2");
        report.push(sectional);
        let mut ricci = Section::new("ricci");
        ricci.push("XX", "-1/2*theta1^2 - 1/2*theta2^2 - 6*z2^2");
        report.push(ricci);
        report
    }

    #[test]
    fn empty_report_is_fixed() {
        assert_eq!(Report::new().to_text(), "");
        assert_eq!(Report::new().to_json(), "{}");
    }

    #[test]
    fn text_layout() {
        let text = sample().to_text();
        assert!(text.contains("[checks]\nantisymmetry: ok, jacobi: ok\n"));
        assert!(text.contains("sec(Z^W) = 2*z2^2"));
        assert!(text.contains("XX = -1/2*theta1^2 - 1/2*theta2^2 - 6*z2^2"));
    }

    #[test]
    fn json_round_trip() {
        let report = sample();
        let json = report.to_json();
        let parsed = Report::from_json(&json).unwrap();
        assert_eq!(parsed, report);
        // and a second serialization of the parse is stable
        assert_eq!(Report::from_json(&parsed.to_json()).unwrap(), report);
    }

    #[test]
    fn json_rejects_non_schema() {
        assert!(Report::from_json("[]").is_err());
        assert!(Report::from_json("{\"a\": 3}").is_err());
        assert!(Report::from_json("{\"a\": {\"k\": 3}}").is_err());
        assert!(Report::from_json("not json").is_err());
    }

    #[test]
    fn determinism() {
        let a = sample();
        assert_eq!(a.to_text(), sample().to_text());
        assert_eq!(a.to_json(), sample().to_json());
    }
}
