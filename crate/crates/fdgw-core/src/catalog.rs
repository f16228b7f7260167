//! The curated Fano threefold catalog.
//!
//! Entries record exact declared geometric facts (divisor types, Fujita
//! invariants, line-family data) together with rule-pattern tags consumed by
//! the verdict engine.  The tool never derives these facts from equations:
//! missing or unknown attributes push the verdict to Unknown rather than a
//! guess.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::exact::Rational;

/// Mori's classification of exceptional divisors on smooth Fano threefolds,
/// extended with two catalog-only markers for non-exceptional divisors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MoriType {
    /// Blow-up along a smooth curve.
    E1,
    /// Blow-up at a smooth point.
    E2,
    /// Polarized surface (Q, O(1,1)), Q a smooth quadric.
    E3,
    /// Polarized surface (Q, O(1)), Q a quadric cone.
    E4,
    /// Polarized surface (P^2, O(1)).
    E5,
    /// Not exceptional, but swept out by anticanonical lines.
    SweptByLines,
    /// No special structure declared.
    None,
}

impl MoriType {
    /// Exceptional types whose Fujita invariant is forced to be at least 2.
    pub fn is_high_fujita_exceptional(self) -> bool {
        matches!(self, MoriType::E1 | MoriType::E3 | MoriType::E4 | MoriType::E5)
    }
}

impl fmt::Display for MoriType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MoriType::E1 => "E1",
            MoriType::E2 => "E2",
            MoriType::E3 => "E3",
            MoriType::E4 => "E4",
            MoriType::E5 => "E5",
            MoriType::SweptByLines => "SweptByLines",
            MoriType::None => "None",
        };
        f.write_str(s)
    }
}

/// An exact named fact attached to a divisor, e.g. that the dominant conic
/// family pairs to zero against it, or the genus of a section curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExtraFact {
    Bool(bool),
    Int(i64),
}

/// Declared data for one divisor on a catalog threefold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorAttr {
    pub mori_type: MoriType,
    pub fujita: Rational,
    pub swept_by_anticanonical_lines: bool,
    #[serde(default)]
    pub extra: BTreeMap<String, ExtraFact>,
}

impl DivisorAttr {
    pub fn extra_bool(&self, key: &str) -> Option<bool> {
        match self.extra.get(key) {
            Some(ExtraFact::Bool(b)) => Some(*b),
            _ => None,
        }
    }

    pub fn extra_int(&self, key: &str) -> Option<i64> {
        match self.extra.get(key) {
            Some(ExtraFact::Int(v)) => Some(*v),
            _ => None,
        }
    }
}

/// Whether some (equivalently, a general) point of the threefold lies on a
/// positive-dimensional family of anticanonical lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointLineFamily {
    pub exists_1param_family_through_point: bool,
}

/// One curated Fano threefold with its declared divisor data and the
/// rule patterns its verdict rests on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThreefoldEntry {
    pub id: String,
    pub description: String,
    pub divisors: Vec<DivisorAttr>,
    pub point_line_family: Option<PointLineFamily>,
    pub verdict_hints: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogFile {
    entries: Vec<ThreefoldEntry>,
}

/// Rule-pattern tags the verdict engine understands.
pub const KNOWN_HINTS: &[&str] = &[
    "E5_rigid_section",
    "conical_point_comb",
    "E1_section_comb",
    "holds_despite_fujita2",
];

/// Bundled entry identifiers used by tests and the default catalog listing.
pub const ID_CUBIC_THREEFOLD: &str = "cubic_threefold";
pub const ID_BUNDLE_O2_P2: &str = "proj_bundle_o2_p2";
pub const ID_BUNDLE_O11_P1XP1: &str = "proj_bundle_o11_p1xp1";
pub const ID_BLOWUP_P3_QUADRIC_CUBIC: &str = "blowup_P3_quadric_cubic";
pub const ID_CONICAL_QUARTIC_THREEFOLD: &str = "conical_quartic_threefold";

static BUNDLED_JSON: &str = include_str!("../data/threefolds.json");
static BUNDLED: OnceLock<Vec<ThreefoldEntry>> = OnceLock::new();

/// The catalog shipped with the tool.
pub fn bundled_catalog() -> &'static [ThreefoldEntry] {
    BUNDLED.get_or_init(|| {
        parse_catalog(BUNDLED_JSON, "<bundled>").expect("bundled catalog is valid")
    })
}

pub fn bundled_entry(id: &str) -> Option<&'static ThreefoldEntry> {
    bundled_catalog().iter().find(|e| e.id == id)
}

/// Loads and validates a catalog file.  Schema violations are reported with
/// the JSON path of the offending field.
pub fn load_catalog(path: impl AsRef<Path>) -> Result<Vec<ThreefoldEntry>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| CoreError::Catalog {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_catalog(&text, &path.display().to_string())
}

/// Parses catalog JSON from a string; `origin` labels error messages.
pub fn parse_catalog(text: &str, origin: &str) -> Result<Vec<ThreefoldEntry>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: CatalogFile =
        serde_path_to_error::deserialize(de).map_err(|e| CoreError::Catalog {
            path: origin.to_string(),
            message: format!("at {}: {}", e.path(), e.inner()),
        })?;
    validate_entries(&file.entries, origin)?;
    Ok(file.entries)
}

fn validate_entries(entries: &[ThreefoldEntry], origin: &str) -> Result<()> {
    let mut seen = std::collections::BTreeSet::new();
    let two = Rational::integer(2);
    for (i, entry) in entries.iter().enumerate() {
        let at = |msg: String| CoreError::Catalog {
            path: origin.to_string(),
            message: format!("entries[{i}] ({}): {msg}", entry.id),
        };
        if entry.id.is_empty() {
            return Err(at("empty id".into()));
        }
        if !seen.insert(entry.id.clone()) {
            return Err(at("duplicate id".into()));
        }
        for hint in &entry.verdict_hints {
            if !KNOWN_HINTS.contains(&hint.as_str()) {
                return Err(at(format!("unknown verdict hint {hint:?}")));
            }
        }
        for (j, div) in entry.divisors.iter().enumerate() {
            if div.mori_type.is_high_fujita_exceptional() && div.fujita.as_ratio() < two.as_ratio()
            {
                return Err(at(format!(
                    "divisors[{j}]: {} divisors have Fujita invariant >= 2, declared {}",
                    div.mori_type, div.fujita
                )));
            }
        }
    }
    Ok(())
}
