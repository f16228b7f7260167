//! Machine-readable reports and the flattened text rendering.
//!
//! A report serializes losslessly: JSON round-trips byte-for-byte after
//! canonical re-emission, and the text format is the exact field-by-field
//! flattening of the same JSON, so both formats carry identical information.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use fdgw_core::{GenusCondition, Reason, Target, Verdict, VerdictStatus, WitnessStratum};

/// The genus a report answers for: a specific genus or "all".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenusField {
    All,
    Genus(i64),
}

impl Serialize for GenusField {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            GenusField::All => s.serialize_str("all"),
            GenusField::Genus(g) => s.serialize_i64(*g),
        }
    }
}

impl<'de> Deserialize<'de> for GenusField {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        match &v {
            Value::String(s) if s == "all" => Ok(GenusField::All),
            Value::Number(n) => n
                .as_i64()
                .map(GenusField::Genus)
                .ok_or_else(|| serde::de::Error::custom("genus out of range")),
            _ => Err(serde::de::Error::custom(r#"genus must be an integer or "all""#)),
        }
    }
}

/// The target a verdict was computed for.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TargetDescription {
    Hypersurface {
        n: i64,
        d: i64,
        general: bool,
        fermat: bool,
        conical: Option<i64>,
    },
    ProjBundle {
        n: i64,
        r: i64,
        a: Vec<i64>,
    },
    Threefold {
        id: String,
    },
}

impl TargetDescription {
    pub fn of_target(t: &Target) -> Self {
        match t {
            Target::Hypersurface(h) => TargetDescription::Hypersurface {
                n: h.n,
                d: h.d,
                general: h.attrs.general,
                fermat: h.attrs.fermat,
                conical: h.attrs.conical.map(|c| c.t_line_family),
            },
            Target::ProjBundle(b) => TargetDescription::ProjBundle {
                n: b.n,
                r: b.r,
                a: b.a.clone(),
            },
        }
    }
}

/// Verdict body without the witness; the stratum lives in
/// `Report.witness_detail`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictBody {
    pub status: VerdictStatus,
    pub genus_condition: GenusCondition,
    pub reasons: Vec<Reason>,
}

/// One verdict invocation, ready for emission.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub target: TargetDescription,
    pub genus: GenusField,
    pub verdict: VerdictBody,
    pub witness_detail: Option<WitnessStratum>,
    pub timings_ms: i64,
}

impl Report {
    pub fn new(
        target: TargetDescription,
        genus: GenusField,
        verdict: Verdict,
        timings_ms: i64,
    ) -> Self {
        Report {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            target,
            genus,
            verdict: VerdictBody {
                status: verdict.status,
                genus_condition: verdict.genus_condition,
                reasons: verdict.reasons,
            },
            witness_detail: verdict.witness,
            timings_ms,
        }
    }

    pub fn exit_code(&self) -> i32 {
        status_exit_code(self.verdict.status)
    }
}

pub fn status_exit_code(status: VerdictStatus) -> i32 {
    match status {
        VerdictStatus::Holds => 0,
        VerdictStatus::Fails => 10,
        VerdictStatus::Unknown => 20,
    }
}

/// Flattens a JSON value into `path = value` lines, preserving field order.
pub fn flatten_lines(value: &Value) -> Vec<String> {
    let mut lines = Vec::new();
    flatten_into("", value, &mut lines);
    lines
}

fn flatten_into(path: &str, value: &Value, out: &mut Vec<String>) {
    match value {
        Value::Object(map) => {
            if map.is_empty() {
                out.push(format!("{path} = {{}}"));
            }
            for (key, v) in map {
                let next = if path.is_empty() {
                    key.clone()
                } else {
                    format!("{path}.{key}")
                };
                flatten_into(&next, v, out);
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push(format!("{path} = []"));
            }
            for (i, v) in items.iter().enumerate() {
                flatten_into(&format!("{path}[{i}]"), v, out);
            }
        }
        leaf => out.push(format!("{path} = {leaf}")),
    }
}

/// Renders any serializable payload in the requested format: canonical JSON,
/// or its exact flattening as text.
pub fn render<T: Serialize>(payload: &T, format: OutputFormat) -> anyhow::Result<String> {
    let value = serde_json::to_value(payload)?;
    Ok(match format {
        OutputFormat::Json => serde_json::to_string_pretty(&value)?,
        OutputFormat::Text => flatten_lines(&value).join("\n"),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}
