use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Floating-point columns and the number of significant digits they carry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumericRendering {
    pub precision: u32,
    pub columns: Vec<String>,
}

/// One command result: a table of exact values rendered as normalized strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Columns whose cells parse back to the exact coefficient they render.
    pub exact_columns: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub numeric: Option<NumericRendering>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub status: Option<Status>,
}

impl OutputRecord {
    pub fn new(command: &str, columns: &[&str]) -> OutputRecord {
        OutputRecord {
            command: command.into(),
            parameters: BTreeMap::new(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            exact_columns: Vec::new(),
            numeric: None,
            status: None,
        }
    }

    pub fn param(mut self, k: &str, v: impl ToString) -> Self {
        self.parameters.insert(k.into(), v.to_string());
        self
    }

    pub fn exact(mut self, cols: &[&str]) -> Self {
        self.exact_columns = cols.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Cells of the named column.
    pub fn cells(&self, name: &str) -> Vec<&str> {
        match self.column(name) {
            Some(i) => self.rows.iter().map(|r| r[i].as_str()).collect(),
            None => Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Some(Status::Fail)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.render_table(),
            Format::Json => serde_json::to_string_pretty(self).expect("serializable") + "\n",
            Format::Csv => self.render_csv(),
        }
    }

    fn render_table(&self) -> String {
        let mut out = format!("# {}", self.command);
        for (k, v) in &self.parameters {
            out.push_str(&format!(" {k}={v}"));
        }
        out.push('\n');
        let mut width: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for r in &self.rows {
            for (w, c) in width.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let s: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
            s.join("  ").trim_end().to_string() + "\n"
        };
        out.push_str(&line(&self.columns));
        out.push_str(&line(&width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>()));
        for r in &self.rows {
            out.push_str(&line(r));
        }
        if let Some(s) = self.status {
            out.push_str(match s {
                Status::Pass => "# status: pass\n",
                Status::Fail => "# status: FAIL\n",
            });
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
    }
}

/// Fixed significant-digit rendering for the numeric columns.
pub fn fmt_float(x: f64, precision: u32) -> String {
    format!("{:.*e}", precision.saturating_sub(1) as usize, x)
}
