//! Rendering shared by every command: one row model feeding the table and
//! CSV streams, and serde structs feeding JSON. All three are deterministic
//! for identical inputs; the only run-dependent record is the generated-at
//! stamp, and callers omit it to get byte-identical output.

use ncphase_core::phase::ExperimentParams;
use ncphase_core::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct Row {
    pub section: String,
    pub key: String,
    pub value: String,
    pub unit: &'static str,
}

impl Row {
    pub fn new(
        section: impl Into<String>,
        key: impl Into<String>,
        value: String,
        unit: &'static str,
    ) -> Self {
        Self {
            section: section.into(),
            key: key.into(),
            value,
            unit,
        }
    }

    pub fn number(
        section: impl Into<String>,
        key: impl Into<String>,
        value: f64,
        unit: &'static str,
    ) -> Self {
        Self::new(section, key, fmt_f64(value), unit)
    }

    pub fn text(
        section: impl Into<String>,
        key: impl Into<String>,
        value: impl Into<String>,
    ) -> Self {
        Self::new(section, key, value.into(), "")
    }
}

/// Full double precision in scientific notation; 17 significant digits
/// round-trip any f64.
pub fn fmt_f64(value: f64) -> String {
    format!("{value:.16e}")
}

pub fn scenario_rows(params: &ExperimentParams<f64>, theta_source: &str) -> Vec<Row> {
    vec![
        Row::number("scenario", "a", params.a(), "m"),
        Row::number("scenario", "b0", params.b0(), "T"),
        Row::number("scenario", "x0", params.x0(), "m"),
        Row::number("scenario", "y0", params.y0(), "m"),
        Row::number("scenario", "v", params.v(), "m/s"),
        Row::number("scenario", "epsilon", params.epsilon(), "rad"),
        Row::number("scenario", "theta", params.theta(), "m^2"),
        Row::text("scenario", "theta-source", theta_source),
    ]
}

pub fn render_table(rows: &[Row], generated_at: Option<&str>) -> String {
    let key_width = rows.iter().map(|r| r.key.len()).max().unwrap_or(0);
    // Prose values (notes) overflow their cell instead of widening every
    // numeric column; 26 covers any formatted f64.
    let value_width = rows
        .iter()
        .map(|r| r.value.len())
        .filter(|&len| len <= 26)
        .max()
        .unwrap_or(0);

    let mut out = String::new();
    if let Some(stamp) = generated_at {
        out.push_str(&format!("generated-at {stamp}\n"));
    }
    let mut current = "";
    for row in rows {
        if row.section != current {
            if !current.is_empty() || generated_at.is_some() {
                out.push('\n');
            }
            out.push_str(&format!("[{}]\n", row.section));
            current = &row.section;
        }
        let mut line = format!(
            "  {:<key_width$}  {:<value_width$}  {}",
            row.key, row.value, row.unit
        );
        while line.ends_with(' ') {
            line.pop();
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// RFC-4180 records with a header row and CRLF line endings. Values are
/// quoted only when they contain a delimiter, which none of the emitted
/// keys or units ever do.
pub fn render_csv(rows: &[Row], generated_at: Option<&str>) -> String {
    let mut out = String::from("section,key,value,unit\r\n");
    if let Some(stamp) = generated_at {
        out.push_str(&format!("meta,generated-at,{},\r\n", csv_field(stamp)));
    }
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{}\r\n",
            csv_field(&row.section),
            csv_field(&row.key),
            csv_field(&row.value),
            csv_field(row.unit)
        ));
    }
    out
}

fn csv_field(raw: &str) -> String {
    if raw.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_owned()
    }
}

/// Ratio cells render N/A when the denominator vanished.
pub fn fmt_ratio<T: Scalar>(ratio: Option<T>) -> String {
    match ratio {
        Some(r) => fmt_f64(r.as_f64()),
        None => "N/A".to_owned(),
    }
}

#[derive(serde::Serialize)]
struct Envelope<'a, R: serde::Serialize> {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    generated_at: Option<&'a str>,
    scenario: &'a ExperimentParams<f64>,
    theta_source: &'static str,
    result: R,
}

/// One top-level object per command; field order is declaration order, so
/// the schema is stable across runs and releases.
pub fn to_json<R: serde::Serialize>(
    command: &'static str,
    generated_at: Option<&str>,
    scenario: &ExperimentParams<f64>,
    theta_source: &'static str,
    result: R,
) -> String {
    let envelope = Envelope {
        command,
        generated_at,
        scenario,
        theta_source,
        result,
    };
    serde_json::to_string_pretty(&envelope).expect("report types serialize")
}
