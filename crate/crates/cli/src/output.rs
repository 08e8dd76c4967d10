use std::fmt;

use serde::Serialize;

pub const TOOL: &str = "purify";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Header embedded in every output.
#[derive(Debug, Serialize)]
pub struct Meta<'a, C: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub schema: String,
    pub seed: u64,
    pub config: &'a C,
}

impl<'a, C: Serialize> Meta<'a, C> {
    pub fn new(command: &'static str, seed: u64, config: &'a C) -> Self {
        Self {
            tool: TOOL,
            version: VERSION,
            command,
            schema: format!("{command}/v1"),
            seed,
            config,
        }
    }

    /// `#`-prefixed lines placed above a CSV header.
    pub fn csv_preamble(&self) -> String {
        let config = serde_json::to_string(self.config).expect("config serializes");
        format!(
            "# {} {} {}\n# schema: {}\n# seed: {}\n# config: {}\n",
            self.tool, self.version, self.command, self.schema, self.seed, config
        )
    }
}

#[derive(Serialize)]
struct Document<'a, C: Serialize, P: Serialize> {
    meta: &'a Meta<'a, C>,
    #[serde(flatten)]
    payload: &'a P,
}

pub fn json<C: Serialize, P: Serialize>(meta: &Meta<'_, C>, payload: &P) -> String {
    let mut s =
        serde_json::to_string_pretty(&Document { meta, payload }).expect("payload serializes");
    s.push('\n');
    s
}

/// CSV text with the metadata preamble.
pub fn csv<C: Serialize>(meta: &Meta<'_, C>, header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    let body = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8");
    meta.csv_preamble() + &body
}

/// Plain text report: a title line and aligned `key  value` rows.
pub struct TextTable {
    title: String,
    rows: Vec<(String, String)>,
}

impl TextTable {
    pub fn new(title: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, key: impl Into<String>, value: impl fmt::Display) -> &mut Self {
        self.rows.push((key.into(), value.to_string()));
        self
    }
}

impl fmt::Display for TextTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        let width = self.rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.rows {
            writeln!(f, "  {k:<width$}  {v}")?;
        }
        Ok(())
    }
}

/// `Some(x)` as its shortest round-trip form, `None` as an empty field.
pub fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// Like [`opt`] but for human-readable tables.
pub fn na<T: fmt::Display>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_else(|| "N/A".into())
}
