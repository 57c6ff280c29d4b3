//! Parameter sweeps over (Q, Γ₀) producing rectangular numeric tables.
//!
//! A sweep is described by a [`SweepSpec`], read from a flat JSON object
//! and/or command-line overrides. Grid points are independent and run on a
//! dedicated worker pool; rows are assembled in grid order (Γ₀ outer, Q
//! inner, then time), so the output does not depend on the worker count.
//!
//! Numeric lists accept a JSON array, a single number, a comma-separated
//! string `"1,3"` or an inclusive range `"start:stop:step"`.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::correlations;
use crate::dephasing::DephasingChannel;
use crate::error::{Error, Result};
use crate::magnetometry;
use crate::nonmarkov::{self, TimeWindow};
use crate::state;

pub const TOOL_NAME: &str = env!("CARGO_PKG_NAME");
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    NmScan,
    CorrSeries,
    QfiSeries,
    StateDump,
}

impl Mode {
    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| Error::spec_field("mode", format!("unknown mode `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::spec_field("format", format!("expected csv or json, got `{other}`"))),
        }
    }
}

/// A number list as written in a spec file or on the command line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumList {
    One(f64),
    Many(Vec<f64>),
    Text(String),
}

impl NumList {
    pub fn expand(&self, field: &str) -> Result<Vec<f64>> {
        match self {
            NumList::One(x) => Ok(vec![*x]),
            NumList::Many(v) => Ok(v.clone()),
            NumList::Text(s) => parse_list(s).map_err(|m| Error::spec_field(field, m)),
        }
    }
}

fn parse_number(s: &str) -> std::result::Result<f64, String> {
    s.trim().parse::<f64>().map_err(|_| format!("`{}` is not a number", s.trim()))
}

fn parse_list(s: &str) -> std::result::Result<Vec<f64>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, step] = parts[..] else {
            return Err(format!("range `{s}` must look like start:stop:step"));
        };
        let (start, stop, step) = (parse_number(start)?, parse_number(stop)?, parse_number(step)?);
        if !(step > 0.0) || !(stop >= start) {
            return Err(format!("range `{s}` needs step > 0 and stop >= start"));
        }
        let n = ((stop - start) / step + 1e-9).floor() as usize;
        return Ok((0..=n).map(|k| start + k as f64 * step).collect());
    }
    s.split(',').map(parse_number).collect()
}

/// Every field optional; used for spec files and for flag overrides.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialSpec {
    pub mode: Option<Mode>,
    pub q_values: Option<NumList>,
    pub gamma0_values: Option<NumList>,
    pub b: Option<f64>,
    pub theta: Option<f64>,
    pub t_max: Option<f64>,
    pub n_grid: Option<usize>,
    pub output_path: Option<PathBuf>,
    pub format: Option<Format>,
    pub parallel: Option<usize>,
}

impl PartialSpec {
    /// Parses a flat JSON object, reporting the line of syntax or type errors.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Spec {
            message: e.to_string(),
            line: Some(e.line()),
            field: None,
        })
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// Fields set in `other` replace those in `self`.
    pub fn merge(self, other: PartialSpec) -> PartialSpec {
        PartialSpec {
            mode: other.mode.or(self.mode),
            q_values: other.q_values.or(self.q_values),
            gamma0_values: other.gamma0_values.or(self.gamma0_values),
            b: other.b.or(self.b),
            theta: other.theta.or(self.theta),
            t_max: other.t_max.or(self.t_max),
            n_grid: other.n_grid.or(self.n_grid),
            output_path: other.output_path.or(self.output_path),
            format: other.format.or(self.format),
            parallel: other.parallel.or(self.parallel),
        }
    }
}

/// A validated sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub mode: Mode,
    pub q_values: Vec<f64>,
    pub gamma0_values: Vec<f64>,
    pub b: f64,
    pub theta: f64,
    /// `None` means 100/Γ₀ for each cutoff.
    pub t_max: Option<f64>,
    pub n_grid: usize,
    #[serde(skip)]
    pub output_path: Option<PathBuf>,
    pub format: Format,
    #[serde(skip)]
    pub parallel: Option<usize>,
}

impl SweepSpec {
    pub const DEFAULT_B: f64 = 1.0;
    pub const DEFAULT_THETA: f64 = std::f64::consts::FRAC_PI_2;

    pub fn from_partial(p: PartialSpec) -> Result<Self> {
        let mode = p.mode.ok_or_else(|| Error::spec_field("mode", "no mode given"))?;
        let q_values = p.q_values.ok_or_else(|| Error::spec_field("q_values", "missing"))?.expand("q_values")?;
        let gamma0_values = p
            .gamma0_values
            .ok_or_else(|| Error::spec_field("gamma0_values", "missing"))?
            .expand("gamma0_values")?;
        let spec = SweepSpec {
            mode,
            q_values,
            gamma0_values,
            b: p.b.unwrap_or(Self::DEFAULT_B),
            theta: p.theta.unwrap_or(Self::DEFAULT_THETA),
            t_max: p.t_max,
            n_grid: p.n_grid.unwrap_or(TimeWindow::DEFAULT_N_GRID),
            output_path: p.output_path,
            format: p.format.unwrap_or_default(),
            parallel: p.parallel,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if self.q_values.is_empty() {
            return Err(Error::spec_field("q_values", "list is empty"));
        }
        if self.gamma0_values.is_empty() {
            return Err(Error::spec_field("gamma0_values", "list is empty"));
        }
        if let Some(q) = self.q_values.iter().find(|q| !(**q >= 0.0 && q.is_finite())) {
            return Err(Error::spec_field("q_values", format!("Q must be finite and >= 0, got {q}")));
        }
        if let Some(g) = self.gamma0_values.iter().find(|g| !(**g > 0.0 && g.is_finite())) {
            return Err(Error::spec_field("gamma0_values", format!("gamma0 must be finite and > 0, got {g}")));
        }
        if !(self.b >= 0.0 && self.b.is_finite()) {
            return Err(Error::spec_field("b", format!("field must be finite and >= 0, got {}", self.b)));
        }
        if !self.theta.is_finite() {
            return Err(Error::spec_field("theta", "angle must be finite"));
        }
        let series = self.mode != Mode::NmScan;
        match self.t_max {
            Some(t) if !(t.is_finite() && (t > 0.0 || (series && t == 0.0))) => {
                return Err(Error::spec_field("t_max", format!("horizon must be finite and > 0, got {t}")));
            }
            _ => {}
        }
        let min_grid = if series { 1 } else { 16 };
        if self.n_grid < min_grid {
            return Err(Error::spec_field("n_grid", format!("need at least {min_grid} grid points, got {}", self.n_grid)));
        }
        if self.parallel == Some(0) {
            return Err(Error::spec_field("parallel", "worker count must be >= 1"));
        }
        Ok(())
    }

    /// Flat JSON echo of the fields that determine the table contents.
    pub fn echo(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }

    fn horizon(&self, gamma0: f64) -> f64 {
        self.t_max.unwrap_or(100.0 / gamma0)
    }

    fn time_grid(&self, gamma0: f64) -> Vec<f64> {
        let t_max = self.horizon(gamma0);
        let n = self.n_grid;
        if n == 1 {
            return vec![0.0];
        }
        (0..n).map(|k| if k + 1 == n { t_max } else { t_max * k as f64 / (n - 1) as f64 }).collect()
    }

    fn window(&self, gamma0: f64) -> Result<TimeWindow> {
        TimeWindow::new(self.horizon(gamma0), self.n_grid, TimeWindow::DEFAULT_REFINE_TOL)
    }

    fn points(&self) -> Vec<(f64, f64)> {
        self.gamma0_values
            .iter()
            .flat_map(|&g| self.q_values.iter().map(move |&q| (q, g)))
            .collect()
    }
}

/// Reads an optional spec file and applies flag overrides on top.
pub fn parse_spec(path: Option<&Path>, overrides: PartialSpec) -> Result<SweepSpec> {
    let base = match path {
        Some(p) => PartialSpec::from_file(p)?,
        None => PartialSpec::default(),
    };
    SweepSpec::from_partial(base.merge(overrides))
}

/// Parses a spec from JSON text (e.g. the echo in a table's metadata).
pub fn parse_spec_str(text: &str) -> Result<SweepSpec> {
    SweepSpec::from_partial(PartialSpec::from_json(text)?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableMeta {
    pub tool: String,
    pub version: String,
    pub spec: serde_json::Value,
    pub wall_time_s: Option<f64>,
}

/// Column names plus row-major data.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub meta: TableMeta,
}

impl SeriesTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    /// Rejects ragged rows and NaN/Inf entries.
    pub fn check(&self) -> Result<()> {
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != self.columns.len() {
                return Err(Error::Spec {
                    message: format!("row {i} has {} values for {} columns", row.len(), self.columns.len()),
                    line: None,
                    field: None,
                });
            }
            if let Some(k) = row.iter().position(|x| !x.is_finite()) {
                return Err(Error::NonFinite {
                    column: self.columns[k].clone(),
                    row: i,
                });
            }
        }
        Ok(())
    }

    /// CSV with `#` metadata lines; values use 17 significant digits.
    /// Wall time is left out so identical specs give identical bytes.
    pub fn to_csv(&self) -> Result<String> {
        self.check()?;
        let mut out = String::new();
        writeln!(out, "# tool: {} {}", self.meta.tool, self.meta.version).unwrap();
        writeln!(out, "# spec: {}", self.meta.spec).unwrap();
        writeln!(out, "{}", self.columns.join(",")).unwrap();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:.16e}")).collect();
            writeln!(out, "{}", cells.join(",")).unwrap();
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Result<String> {
        self.check()?;
        let doc = serde_json::json!({
            "meta": self.meta,
            "columns": self.columns,
            "rows": self.rows,
        });
        Ok(serde_json::to_string_pretty(&doc).expect("table serializes"))
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    /// Writes to `path`, or to stdout when `path` is `None`.
    pub fn write(&self, path: Option<&Path>, format: Format) -> Result<()> {
        let text = self.render(format)?;
        match path {
            Some(p) => std::fs::write(p, text).map_err(|source| Error::Io {
                path: p.to_path_buf(),
                source,
            }),
            None => std::io::stdout().write_all(text.as_bytes()).map_err(|source| Error::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
        }
    }
}

/// Extracts the echoed spec from CSV produced by [`SeriesTable::to_csv`].
pub fn spec_from_csv(csv: &str) -> Result<SweepSpec> {
    let line = csv
        .lines()
        .take_while(|l| l.starts_with('#'))
        .find_map(|l| l.strip_prefix("# spec: "))
        .ok_or_else(|| Error::spec_field("spec", "no `# spec:` line in table"))?;
    parse_spec_str(line)
}

fn pool(spec: &SweepSpec) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = spec.parallel {
        b = b.num_threads(n);
    }
    b.build().map_err(|e| Error::spec_field("parallel", e.to_string()))
}

/// Runs `point` for every (Q, Γ₀) in grid order and concatenates the rows.
fn sweep_rows<F>(spec: &SweepSpec, point: F) -> Result<Vec<Vec<f64>>>
where
    F: Fn(f64, f64) -> Result<Vec<Vec<f64>>> + Sync,
{
    let points = spec.points();
    let blocks: Vec<Vec<Vec<f64>>> =
        pool(spec)?.install(|| points.par_iter().map(|&(q, g)| point(q, g)).collect::<Result<_>>())?;
    Ok(blocks.into_iter().flatten().collect())
}

fn table(spec: &SweepSpec, columns: &[&str], rows: Vec<Vec<f64>>, started: Instant) -> Result<SeriesTable> {
    let t = SeriesTable {
        columns: columns.iter().map(|c| c.to_string()).collect(),
        rows,
        meta: TableMeta {
            tool: TOOL_NAME.to_string(),
            version: TOOL_VERSION.to_string(),
            spec: serde_json::to_value(spec).expect("spec serializes"),
            wall_time_s: Some(started.elapsed().as_secs_f64()),
        },
    };
    t.check()?;
    Ok(t)
}

fn channel(spec: &SweepSpec, q: f64, g: f64) -> Result<DephasingChannel> {
    DephasingChannel::from_params(q, g, spec.b)
}

pub fn run_nm_scan(spec: &SweepSpec) -> Result<SeriesTable> {
    let started = Instant::now();
    let rows = sweep_rows(spec, |q, g| {
        let ch = channel(spec, q, g)?;
        let w = spec.window(g)?;
        let n_blp = nonmarkov::blp(&ch, &w)?;
        let n_lpp = nonmarkov::lpp(&ch, &w)?;
        let flag = if n_blp > nonmarkov::ZERO_THRESHOLD { 1.0 } else { 0.0 };
        Ok(vec![vec![q, g, n_blp, n_lpp, flag]])
    })?;
    table(spec, &["Q", "gamma0", "n_blp", "n_lpp", "critical_flag"], rows, started)
}

pub fn run_corr_series(spec: &SweepSpec) -> Result<SeriesTable> {
    let started = Instant::now();
    let rows = sweep_rows(spec, |q, g| {
        let ch = channel(spec, q, g)?;
        spec.time_grid(g)
            .into_iter()
            .map(|t| {
                let a = ch.alpha(t)?;
                let r = correlations::report(&state::evolved_x_state(spec.theta, a)?)?;
                Ok(vec![q, g, t, a, r.concurrence, r.discord, r.lqu, r.tnd, r.coherence_l1])
            })
            .collect()
    })?;
    let cols = ["Q", "gamma0", "t", "alpha", "concurrence", "discord", "lqu", "tnd", "coherence"];
    table(spec, &cols, rows, started)
}

pub fn run_qfi_series(spec: &SweepSpec) -> Result<SeriesTable> {
    let started = Instant::now();
    let rows = sweep_rows(spec, |q, g| {
        let ch = channel(spec, q, g)?;
        spec.time_grid(g)
            .into_iter()
            .map(|t| {
                let s = magnetometry::qfi_sample(&ch, spec.theta, t)?;
                Ok(vec![q, g, t, s.f_closed, s.f_general, s.rel_gap])
            })
            .collect()
    })?;
    table(spec, &["Q", "gamma0", "t", "f_closed", "f_general", "rel_gap"], rows, started)
}

pub fn run_state_dump(spec: &SweepSpec) -> Result<SeriesTable> {
    let started = Instant::now();
    let rows = sweep_rows(spec, |q, g| {
        let ch = channel(spec, q, g)?;
        spec.time_grid(g)
            .into_iter()
            .map(|t| {
                let a = ch.alpha(t)?;
                let m = state::evolved_x_state(spec.theta, a)?.to_matrix();
                let mut row = vec![q, g, t, a];
                for entry in m.iter().flatten() {
                    row.push(entry.re);
                    row.push(entry.im);
                }
                Ok(row)
            })
            .collect()
    })?;
    let mut cols: Vec<String> = ["Q", "gamma0", "t", "alpha"].iter().map(|c| c.to_string()).collect();
    for i in 1..=4 {
        for j in 1..=4 {
            cols.push(format!("rho{i}{j}_re"));
            cols.push(format!("rho{i}{j}_im"));
        }
    }
    let names: Vec<&str> = cols.iter().map(String::as_str).collect();
    table(spec, &names, rows, started)
}

pub fn run(spec: &SweepSpec) -> Result<SeriesTable> {
    match spec.mode {
        Mode::NmScan => run_nm_scan(spec),
        Mode::CorrSeries => run_corr_series(spec),
        Mode::QfiSeries => run_qfi_series(spec),
        Mode::StateDump => run_state_dump(spec),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(json: &str) -> Result<SweepSpec> {
        parse_spec_str(json)
    }

    #[test]
    fn list_syntax() {
        assert_eq!(parse_list("1,3").unwrap(), vec![1.0, 3.0]);
        assert_eq!(parse_list("0:1:0.25").unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(parse_list("0:4:0.05").unwrap().len(), 81);
        assert!(parse_list("0:1").is_err());
        assert!(parse_list("1:0:0.1").is_err());
        assert!(parse_list("a,b").is_err());
    }

    #[test]
    fn spec_errors_name_line_and_field() {
        let e = spec("{\n \"mode\": \"nm-scan\",\n \"q_values\": [1],\n \"bogus\": 2\n}").unwrap_err();
        assert!(matches!(e, Error::Spec { line: Some(4), .. }), "{e:?}");
        let e = spec(r#"{"mode": "nm-scan", "q_values": [], "gamma0_values": [1]}"#).unwrap_err();
        assert!(matches!(e, Error::Spec { field: Some(ref f), .. } if f == "q_values"), "{e:?}");
        let e = spec(r#"{"mode": "nm-scan", "q_values": [1], "gamma0_values": [0]}"#).unwrap_err();
        assert!(matches!(e, Error::Spec { field: Some(ref f), .. } if f == "gamma0_values"));
        assert!(spec(r#"{"mode": "fit", "q_values": [1], "gamma0_values": [1]}"#).is_err());
    }

    #[test]
    fn overrides_win() {
        let base = PartialSpec::from_json(r#"{"mode": "nm-scan", "q_values": "1,2", "gamma0_values": 1, "b": 2}"#).unwrap();
        let flags = PartialSpec {
            b: Some(0.5),
            q_values: Some(NumList::Text("3".into())),
            ..Default::default()
        };
        let s = SweepSpec::from_partial(base.merge(flags)).unwrap();
        assert_eq!(s.b, 0.5);
        assert_eq!(s.q_values, vec![3.0]);
        assert_eq!(s.gamma0_values, vec![1.0]);
        assert_eq!(s.theta, std::f64::consts::FRAC_PI_2);
    }

    #[test]
    fn single_markovian_point() {
        let s = spec(r#"{"mode": "nm-scan", "q_values": [1], "gamma0_values": [1], "n_grid": 256}"#).unwrap();
        let t = run(&s).unwrap();
        assert_eq!(t.rows, vec![vec![1.0, 1.0, 0.0, 0.0, 0.0]]);
    }

    #[test]
    fn one_point_series_is_the_initial_state() {
        let s = spec(r#"{"mode": "corr-series", "q_values": [3], "gamma0_values": [1], "n_grid": 1}"#).unwrap();
        let t = run(&s).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.column("concurrence").unwrap()[0], 1.0);
        assert_eq!(t.column("coherence").unwrap()[0], 1.0);
    }

    #[test]
    fn non_finite_rows_are_rejected() {
        let t = SeriesTable {
            columns: vec!["a".into(), "b".into()],
            rows: vec![vec![1.0, 2.0], vec![f64::NAN, 0.0]],
            meta: TableMeta {
                tool: TOOL_NAME.into(),
                version: TOOL_VERSION.into(),
                spec: serde_json::Value::Null,
                wall_time_s: None,
            },
        };
        assert!(matches!(t.to_csv(), Err(Error::NonFinite { row: 1, .. })));
    }

    #[test]
    fn echo_round_trips() {
        let s = spec(r#"{"mode": "qfi-series", "q_values": "0.5:1.5:0.5", "gamma0_values": [0.01, 1.6], "t_max": 3, "n_grid": 8, "format": "json", "parallel": 3}"#).unwrap();
        let back = parse_spec_str(&s.echo()).unwrap();
        assert_eq!(back.q_values, s.q_values);
        assert_eq!(back.gamma0_values, s.gamma0_values);
        assert_eq!((back.mode, back.b, back.theta, back.t_max, back.n_grid, back.format), (s.mode, s.b, s.theta, s.t_max, s.n_grid, s.format));
    }
}
