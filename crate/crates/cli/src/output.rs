//! Versioned CSV tables and plain-text reports.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::CliError;

/// In-memory CSV table whose first line is `# schema=<name> v1`.
#[derive(Debug, Clone)]
pub struct CsvTable {
    pub schema: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(schema: &'static str, columns: &[&'static str]) -> Self {
        Self { schema, columns: columns.to_vec(), rows: vec![] }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut s = format!("# schema={} v1\n{}\n", self.schema, self.columns.join(","));
        for r in &self.rows {
            let _ = writeln!(s, "{}", r.join(","));
        }
        s
    }
}

/// Full-precision number; empty for missing values.
pub fn num(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else {
        format!("{v:?}")
    }
}

pub fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

/// Files produced by a command, written only after the command succeeds.
#[derive(Debug, Default)]
pub struct Outputs {
    pub files: Vec<(String, String)>,
}

impl Outputs {
    pub fn csv(&mut self, name: &str, t: &CsvTable) {
        self.files.push((name.to_string(), t.render()));
    }

    pub fn text(&mut self, name: &str, body: String) {
        self.files.push((name.to_string(), body));
    }

    pub fn write_all(&self, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
        std::fs::create_dir_all(dir)?;
        let mut paths = vec![];
        for (name, body) in &self.files {
            let p = dir.join(name);
            std::fs::write(&p, body)?;
            paths.push(p);
        }
        Ok(paths)
    }
}
