//! Deterministic CSV and JSON rendering.
//!
//! Every file starts with the command line that produced it and the fully
//! resolved configuration. In CSV these are `#` comment lines ahead of the
//! header row. Floats are printed with 17 significant digits so values
//! round-trip exactly.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{Map, Value};

use crate::chain::ChainSeries;
use crate::config::Config;
use crate::coupling::CouplingProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Float(x) => format_float(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => quote(s),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Float(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Int(i) => Value::from(*i),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Float)
    }
}

impl From<i64> for Cell {
    fn from(i: i64) -> Self {
        Cell::Int(i)
    }
}

impl From<u32> for Cell {
    fn from(i: u32) -> Self {
        Cell::Int(i64::from(i))
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

/// 17 significant digits in scientific notation.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Where a table came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    /// Canonical command line; excludes flags that cannot change results.
    pub command: String,
    pub config: Config,
}

/// A rectangular result table with optional scalar metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
    metadata: Vec<(String, Value)>,
}

impl Table {
    pub fn new<S: AsRef<str>>(columns: &[S]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.as_ref().to_string()).collect(),
            rows: Vec::new(),
            metadata: Vec::new(),
        }
    }

    /// # Panics
    /// If the row width differs from the header.
    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn add_metadata<V: serde::Serialize>(&mut self, key: &str, value: V) {
        let value = serde_json::to_value(value).expect("metadata serializes");
        self.metadata.push((key.to_string(), value));
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| &r[i]).collect())
    }

    pub fn render(&self, format: Format, provenance: &Provenance) -> String {
        match format {
            Format::Csv => self.to_csv(provenance),
            Format::Json => self.to_json(provenance),
        }
    }

    pub fn to_csv(&self, provenance: &Provenance) -> String {
        let mut out = String::new();
        writeln!(out, "# command: {}", provenance.command).unwrap();
        writeln!(out, "# config:").unwrap();
        for line in provenance.config.to_toml().lines() {
            if line.is_empty() {
                out.push_str("#\n");
            } else {
                writeln!(out, "#   {line}").unwrap();
            }
        }
        for (key, value) in &self.metadata {
            writeln!(out, "# {key}: {value}").unwrap();
        }
        out.push_str(&self.columns.iter().map(|c| quote(c)).collect::<Vec<_>>().join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.iter().map(Cell::csv).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, provenance: &Provenance) -> String {
        let mut root = Map::new();
        root.insert("command".into(), Value::from(provenance.command.as_str()));
        root.insert(
            "config".into(),
            serde_json::to_value(&provenance.config).expect("config serializes"),
        );
        for (key, value) in &self.metadata {
            root.insert(key.clone(), value.clone());
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, cell)| (c.clone(), cell.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        root.insert("rows".into(), Value::Array(rows));
        let mut s = serde_json::to_string_pretty(&Value::Object(root)).expect("json serializes");
        s.push('\n');
        s
    }
}

/// Columns `n, I_perp_hz, method, rho_B, B_eff_tesla`, with the material,
/// control point and grid echoed as metadata.
pub fn profile_table(profile: &CouplingProfile) -> Table {
    let mut t = Table::new(&["n", "I_perp_hz", "method", "rho_B", "B_eff_tesla"]);
    let method = profile.method.to_string();
    for (&n, &v) in profile.separations.iter().zip(&profile.values) {
        t.push(vec![
            n.into(),
            v.into(),
            method.as_str().into(),
            profile.rho_b.into(),
            profile.b_eff.into(),
        ]);
    }
    t.add_metadata("material_si", profile.material);
    t.add_metadata("control_si", profile.control);
    t.add_metadata("B_eff_tesla", profile.b_eff);
    t.add_metadata("rho_B", profile.rho_b);
    t.add_metadata("prefactor_hz", profile.prefactor);
    if let Some(grid) = &profile.grid {
        t.add_metadata("grid", grid);
    }
    t
}

/// Columns `time_s, p_1..p_N, fidelity, concurrence`. Sites are labelled
/// from 1.
pub fn chain_table(series: &ChainSeries) -> Table {
    let n = series.populations.first().map_or(0, Vec::len);
    let mut columns = vec!["time_s".to_string()];
    columns.extend((1..=n).map(|i| format!("p_{i}")));
    columns.push("fidelity".into());
    columns.push("concurrence".into());
    let mut t = Table::new(&columns);
    for (k, &time) in series.times.iter().enumerate() {
        let mut row: Vec<Cell> = vec![time.into()];
        row.extend(series.populations[k].iter().map(|&p| Cell::from(p)));
        row.push(series.fidelity[k].into());
        row.push(series.concurrence[k].into());
        t.push(row);
    }
    t.add_metadata("from_site", series.from + 1);
    t.add_metadata("to_site", series.to + 1);
    t.add_metadata("sector", series.sector);
    t
}
