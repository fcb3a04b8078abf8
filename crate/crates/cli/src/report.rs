//! Report documents: a titled list of labelled rows rendered as markdown,
//! CSV or JSON. Rendering is a pure function of the document, so a fixed
//! invocation always produces byte-identical output.

use clap::ValueEnum;
use serde::Serialize;

/// Output formats accepted by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Markdown table.
    Md,
    /// RFC-4180 style CSV with a header row.
    Csv,
    /// Pretty-printed JSON: `{title, rows: [{label, value, note}]}`.
    Json,
}

/// One labelled report cell. `value` is pre-formatted text so the document
/// controls its own precision; `note` carries context (units, caveats).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub label: String,
    pub value: String,
    pub note: String,
}

/// A titled report: the unit every subcommand emits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDoc {
    pub title: String,
    pub rows: Vec<ReportRow>,
}

impl ReportDoc {
    pub fn new(title: impl Into<String>) -> Self {
        ReportDoc {
            title: title.into(),
            rows: Vec::new(),
        }
    }

    /// Append a row.
    pub fn push(
        &mut self,
        label: impl Into<String>,
        value: impl Into<String>,
        note: impl Into<String>,
    ) {
        self.rows.push(ReportRow {
            label: label.into(),
            value: value.into(),
            note: note.into(),
        });
    }

    /// Render in the requested format. All formats end with a newline.
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Md => self.to_markdown(),
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }

    /// A level-one heading followed by a three-column table.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("# ");
        out.push_str(&self.title);
        out.push_str("\n\n| Label | Value | Note |\n|---|---|---|\n");
        for row in &self.rows {
            out.push_str("| ");
            out.push_str(&escape_md(&row.label));
            out.push_str(" | ");
            out.push_str(&escape_md(&row.value));
            out.push_str(" | ");
            out.push_str(&escape_md(&row.note));
            out.push_str(" |\n");
        }
        out
    }

    /// Header `label,value,note` followed by one record per row. The title
    /// travels as a leading comment line so the document stays one file.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("# ");
        out.push_str(&self.title);
        out.push_str("\nlabel,value,note\n");
        for row in &self.rows {
            out.push_str(&escape_csv(&row.label));
            out.push(',');
            out.push_str(&escape_csv(&row.value));
            out.push(',');
            out.push_str(&escape_csv(&row.note));
            out.push('\n');
        }
        out
    }

    /// Stable schema: `{title, rows: [{label, value, note}]}`.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }
}

fn escape_md(cell: &str) -> String {
    cell.replace('|', "\\|").replace('\n', " ")
}

fn escape_csv(cell: &str) -> String {
    if cell.contains(',') || cell.contains('"') || cell.contains('\n') {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

/// Fixed-precision decimal formatting (the only float-to-text path used in
/// reports, so output stays byte-stable).
pub fn fmt_f(x: f64, decimals: usize) -> String {
    format!("{x:.decimals$}")
}

/// Format a fraction as a percentage with the given number of decimals.
pub fn fmt_pct(x: f64, decimals: usize) -> String {
    format!("{:.decimals$}%", 100.0 * x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ReportDoc {
        let mut doc = ReportDoc::new("sample");
        doc.push("plain", "1.00", "unit");
        doc.push("with, comma", "a|b", "multi\nline");
        doc
    }

    #[test]
    fn markdown_escapes_pipes_and_newlines() {
        let md = sample().to_markdown();
        assert!(md.starts_with("# sample\n\n| Label | Value | Note |"));
        assert!(md.contains("| a\\|b |"));
        assert!(md.contains("| multi line |"));
    }

    #[test]
    fn csv_quotes_only_when_needed() {
        let csv = sample().to_csv();
        assert!(csv.contains("plain,1.00,unit\n"));
        assert!(csv.contains("\"with, comma\",a|b,\"multi\nline\"\n"));
    }

    #[test]
    fn json_round_trips_with_the_documented_schema() {
        let json = sample().to_json();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["title"], "sample");
        assert_eq!(value["rows"][1]["label"], "with, comma");
        assert_eq!(value["rows"][1]["note"], "multi\nline");
    }

    #[test]
    fn rendering_is_deterministic() {
        let doc = sample();
        for format in [OutputFormat::Md, OutputFormat::Csv, OutputFormat::Json] {
            assert_eq!(doc.render(format), doc.render(format));
        }
    }

    #[test]
    fn float_formatting_is_fixed_precision() {
        assert_eq!(fmt_f(1.0 / 3.0, 4), "0.3333");
        assert_eq!(fmt_f(-2.5, 0), "-2");
        assert_eq!(fmt_pct(0.451188, 1), "45.1%");
    }
}
