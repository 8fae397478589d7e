//! Run reports and their canonical serialization.
//!
//! Reports must be byte-identical across repeated runs with the same
//! configuration, so serialization is hand-rolled: keys are emitted in
//! sorted order and floats are printed at 17 significant digits, which
//! round-trips every f64 exactly. Wall time lives on the in-memory report
//! for console output but never enters the serialized forms.

use std::collections::BTreeMap;
use std::time::Duration;

use crate::error::{Error, Result};
use crate::intertwine::PropertyReport;

/// Typed configuration values for scenarios.
#[derive(Clone, Debug, PartialEq)]
pub enum ConfigValue {
    Int(usize),
    Float(f64),
    Text(String),
}

impl ConfigValue {
    /// Parse "k=v" right-hand sides: integer first, then float, then text.
    pub fn parse(raw: &str) -> ConfigValue {
        if let Ok(i) = raw.parse::<usize>() {
            return ConfigValue::Int(i);
        }
        if let Ok(f) = raw.parse::<f64>() {
            return ConfigValue::Float(f);
        }
        ConfigValue::Text(raw.to_string())
    }

    pub fn type_name(&self) -> &'static str {
        match self {
            ConfigValue::Int(_) => "int",
            ConfigValue::Float(_) => "float",
            ConfigValue::Text(_) => "text",
        }
    }

    pub fn as_usize(&self) -> Option<usize> {
        match self {
            ConfigValue::Int(i) => Some(*i),
            _ => None,
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            ConfigValue::Float(f) => Some(*f),
            ConfigValue::Int(i) => Some(*i as f64),
            _ => None,
        }
    }
}

pub type Config = BTreeMap<String, ConfigValue>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Upper,
    Lower,
}

/// A named residual bound carried by the scenario registry. Scalable
/// bounds respond to ISOSPEC_TOL_SCALE (upper limits multiply, lower
/// limits divide); structural bounds such as decay slopes do not.
#[derive(Clone, Copy, Debug)]
pub struct Bound {
    pub key: &'static str,
    pub kind: BoundKind,
    pub limit: f64,
    pub scalable: bool,
}

impl Bound {
    pub const fn upper(key: &'static str, limit: f64) -> Self {
        Bound {
            key,
            kind: BoundKind::Upper,
            limit,
            scalable: true,
        }
    }

    pub const fn lower(key: &'static str, limit: f64) -> Self {
        Bound {
            key,
            kind: BoundKind::Lower,
            limit,
            scalable: true,
        }
    }

    pub const fn structural_upper(key: &'static str, limit: f64) -> Self {
        Bound {
            key,
            kind: BoundKind::Upper,
            limit,
            scalable: false,
        }
    }

    pub const fn structural_lower(key: &'static str, limit: f64) -> Self {
        Bound {
            key,
            kind: BoundKind::Lower,
            limit,
            scalable: false,
        }
    }

    pub fn effective_limit(&self, tol_scale: f64) -> f64 {
        if !self.scalable {
            return self.limit;
        }
        match self.kind {
            BoundKind::Upper => self.limit * tol_scale,
            BoundKind::Lower => self.limit / tol_scale,
        }
    }
}

/// One evaluated bound.
#[derive(Clone, Debug)]
pub struct BoundOutcome {
    pub key: String,
    pub kind: BoundKind,
    pub limit: f64,
    pub effective_limit: f64,
    pub value: f64,
    pub pass: bool,
}

/// Everything a scenario run produced.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub scenario: String,
    pub config: Config,
    pub dims: BTreeMap<String, usize>,
    pub residuals: BTreeMap<String, f64>,
    pub statuses: BTreeMap<String, String>,
    pub bounds: Vec<BoundOutcome>,
    pub pairs: Vec<(String, PropertyReport)>,
    /// Per-grid-point rows; emitted in the CSV form only.
    pub grid: Vec<(String, f64)>,
    pub pass: bool,
    /// Console-only; never serialized, so reports stay byte-identical.
    pub wall: Duration,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

/// 17 significant digits: lossless for f64 and format-stable.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{:.16e}", x)
    } else {
        "null".to_string()
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

fn config_value_json(v: &ConfigValue) -> String {
    match v {
        ConfigValue::Int(i) => i.to_string(),
        ConfigValue::Float(f) => format_float(*f),
        ConfigValue::Text(t) => format!("\"{}\"", escape(t)),
    }
}

fn property_report_json(report: &PropertyReport, out: &mut String) {
    out.push('{');
    out.push_str(&format!("\"deflated\":{},\"gamma\":[", report.deflated));
    for (i, g) in report.gamma.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!(
            "{{\"eps\":{},\"mapped_norm\":{},\"n\":{},\"residual\":{}}}",
            format_float(g.eps),
            format_float(g.mapped_norm),
            g.n,
            format_float(g.residual)
        ));
    }
    out.push_str("],");
    out.push_str(&format!(
        "\"n1_min_singular\":{},\"n1_spectral_norm\":{},",
        format_float(report.n1_min_singular),
        format_float(report.n1_spectral_norm)
    ));
    out.push_str(&format!(
        "\"pass\":{{\"alpha\":{},\"beta\":{},\"gamma\":{}}},",
        report.pass_alpha, report.pass_beta, report.pass_gamma
    ));
    out.push_str(&format!(
        "\"r_alpha\":{},\"r_beta\":{},\"r_beta_strong\":{},\"r_commutant\":{},",
        format_float(report.r_alpha),
        format_float(report.r_beta),
        format_float(report.r_beta_strong),
        format_float(report.r_commutant)
    ));
    out.push_str(&format!(
        "\"tolerances\":{{\"commutant_rel\":{},\"cyclic_rel\":{},\"invert_rel\":{},\"vanish_rel\":{}}}",
        format_float(report.tolerances.commutant_rel),
        format_float(report.tolerances.cyclic_rel),
        format_float(report.tolerances.invert_rel),
        format_float(report.tolerances.vanish_rel)
    ));
    out.push('}');
}

/// Canonical JSON: sorted keys, fixed float format, no whitespace.
pub fn report_to_json(report: &RunReport) -> String {
    let mut out = String::new();
    out.push('{');
    out.push_str("\"bounds\":[");
    let mut bounds: Vec<&BoundOutcome> = report.bounds.iter().collect();
    bounds.sort_by(|a, b| a.key.cmp(&b.key));
    for (i, b) in bounds.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!(
            "{{\"effective_limit\":{},\"key\":\"{}\",\"kind\":\"{}\",\"limit\":{},\"pass\":{},\"value\":{}}}",
            format_float(b.effective_limit),
            escape(&b.key),
            match b.kind {
                BoundKind::Upper => "upper",
                BoundKind::Lower => "lower",
            },
            format_float(b.limit),
            b.pass,
            format_float(b.value)
        ));
    }
    out.push_str("],\"config\":{");
    for (i, (k, v)) in report.config.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!("\"{}\":{}", escape(k), config_value_json(v)));
    }
    out.push_str("},\"dims\":{");
    for (i, (k, v)) in report.dims.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!("\"{}\":{}", escape(k), v));
    }
    out.push_str("},\"pairs\":{");
    let mut pairs: Vec<&(String, PropertyReport)> = report.pairs.iter().collect();
    pairs.sort_by(|a, b| a.0.cmp(&b.0));
    for (i, (label, pr)) in pairs.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!("\"{}\":", escape(label)));
        property_report_json(pr, &mut out);
    }
    out.push_str(&format!("}},\"pass\":{},\"residuals\":{{", report.pass));
    for (i, (k, v)) in report.residuals.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!("\"{}\":{}", escape(k), format_float(*v)));
    }
    out.push_str("},\"scenario\":\"");
    out.push_str(&escape(&report.scenario));
    out.push_str("\",\"statuses\":{");
    for (i, (k, v)) in report.statuses.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!("\"{}\":\"{}\"", escape(k), escape(v)));
    }
    out.push_str("}}");
    out
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Flat CSV with a fixed six-column schema; gamma records emit one row
/// per surviving n.
pub fn report_to_csv(report: &RunReport) -> String {
    let mut out = String::from("scenario,section,key,value,limit,pass\n");
    let scen = csv_field(&report.scenario);
    let bound_for =
        |key: &str| -> Option<&BoundOutcome> { report.bounds.iter().find(|b| b.key == key) };
    for (k, v) in &report.residuals {
        let (limit, pass) = match bound_for(k) {
            Some(b) => (format_float(b.effective_limit), b.pass.to_string()),
            None => (String::new(), String::new()),
        };
        out.push_str(&format!(
            "{scen},residual,{},{},{},{}\n",
            csv_field(k),
            format_float(*v),
            limit,
            pass
        ));
    }
    for (k, v) in &report.statuses {
        out.push_str(&format!(
            "{scen},status,{},{},,\n",
            csv_field(k),
            csv_field(v)
        ));
    }
    for (k, v) in &report.dims {
        out.push_str(&format!("{scen},dim,{},{},,\n", csv_field(k), v));
    }
    let mut pairs: Vec<&(String, PropertyReport)> = report.pairs.iter().collect();
    pairs.sort_by(|a, b| a.0.cmp(&b.0));
    for (label, pr) in pairs {
        for g in &pr.gamma {
            out.push_str(&format!(
                "{scen},gamma:{},{},{},,\n",
                csv_field(label),
                g.n,
                format_float(g.residual)
            ));
        }
    }
    for (key, value) in &report.grid {
        out.push_str(&format!(
            "{scen},grid,{},{},,\n",
            csv_field(key),
            format_float(*value)
        ));
    }
    out
}

/// Write a serialized report, surfacing I/O failures with path context.
pub fn emit_report(report: &RunReport, format: ReportFormat, path: &std::path::Path) -> Result<()> {
    let body = match format {
        ReportFormat::Json => report_to_json(report),
        ReportFormat::Csv => report_to_csv(report),
    };
    std::fs::write(path, body).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(Error::Config(format!(
                "unknown report format '{other}' (expected json or csv)"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_report() -> RunReport {
        let mut residuals = BTreeMap::new();
        residuals.insert("r_alpha_rel".to_string(), 3.5e-15);
        residuals.insert("h2_closed_form_rel".to_string(), 0.0);
        let mut statuses = BTreeMap::new();
        statuses.insert("note".to_string(), "all good".to_string());
        let mut config = BTreeMap::new();
        config.insert("dim".to_string(), ConfigValue::Int(40));
        config.insert("q".to_string(), ConfigValue::Float(0.5));
        let mut dims = BTreeMap::new();
        dims.insert("dim".to_string(), 40);
        RunReport {
            scenario: "sample".to_string(),
            config,
            dims,
            residuals,
            statuses,
            bounds: vec![BoundOutcome {
                key: "r_alpha_rel".to_string(),
                kind: BoundKind::Upper,
                limit: 1e-10,
                effective_limit: 1e-10,
                value: 3.5e-15,
                pass: true,
            }],
            pairs: vec![],
            grid: vec![],
            pass: true,
            wall: Duration::from_millis(7),
        }
    }

    #[test]
    fn json_is_deterministic() {
        let r = sample_report();
        assert_eq!(report_to_json(&r), report_to_json(&r));
        let mut r2 = sample_report();
        r2.wall = Duration::from_secs(100);
        // wall time never reaches the serialization
        assert_eq!(report_to_json(&r), report_to_json(&r2));
    }

    #[test]
    fn csv_is_deterministic_and_has_schema_header() {
        let r = sample_report();
        let csv = report_to_csv(&r);
        assert!(csv.starts_with("scenario,section,key,value,limit,pass\n"));
        assert_eq!(csv, report_to_csv(&r));
    }

    #[test]
    fn float_format_is_lossless() {
        for x in [
            0.0,
            -0.0,
            1.0,
            std::f64::consts::E,
            1.686e-8,
            -3.999_312e17,
            f64::MIN_POSITIVE,
        ] {
            let s = format_float(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{x} -> {s}");
        }
    }

    #[test]
    fn config_value_parsing() {
        assert_eq!(ConfigValue::parse("40"), ConfigValue::Int(40));
        assert_eq!(ConfigValue::parse("0.5"), ConfigValue::Float(0.5));
        assert_eq!(
            ConfigValue::parse("boson"),
            ConfigValue::Text("boson".to_string())
        );
    }

    #[test]
    fn tolerance_scaling_direction() {
        let up = Bound::upper("x", 1e-10);
        assert_eq!(up.effective_limit(10.0), 1e-9);
        let low = Bound::lower("y", 0.01);
        assert_eq!(low.effective_limit(10.0), 0.001);
        let slope = Bound::structural_upper("s", -0.6);
        assert_eq!(slope.effective_limit(10.0), -0.6);
    }

    #[test]
    fn json_parses_as_json() {
        let r = sample_report();
        let text = report_to_json(&r);
        let v: serde_json::Value = serde_json::from_str(&text).expect("valid json");
        assert_eq!(v["scenario"], "sample");
        assert_eq!(v["pass"], true);
        assert!(v["residuals"]["r_alpha_rel"].as_f64().unwrap() > 0.0);
    }
}
