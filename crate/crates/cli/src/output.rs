//! Table rendering and atomic file output.

use std::io::Write;
use std::path::Path;

use catdecay::format::sig17;

#[derive(Debug, Clone, Copy)]
pub enum Cell {
    Int(u64),
    Num(f64),
}

impl Cell {
    fn render(self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Num(v) => sig17(v),
        }
    }
}

pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.render()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// `{"columns": [..], "rows": [[..], ..]}`
    pub fn to_json(&self) -> String {
        let columns: Vec<String> = self.columns.iter().map(|c| json_string(c)).collect();
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|row| format!("[{}]", row.iter().map(|c| c.render()).collect::<Vec<_>>().join(",")))
            .collect();
        format!("{{\"columns\":[{}],\"rows\":[{}]}}\n", columns.join(","), rows.join(","))
    }
}

pub fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

/// Writes through a sibling temp file and renames it into place, so a failed
/// run never leaves a partial file behind.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
