//! JSON curve specification files.

use serde::Deserialize;

use symtau_core::cycle_tables::CoverDatum;
use symtau_core::tau_engine::{CurveSpec, DeclaredCover, PencilDatum, TriState};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DocumentError {
    #[error("malformed spec: {0}")]
    Syntax(String),
    #[error("{key}: {reason}")]
    Key { key: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flag {
    Yes,
    No,
    #[default]
    Unknown,
}

impl From<Flag> for TriState {
    fn from(f: Flag) -> Self {
        match f {
            Flag::Yes => TriState::Yes,
            Flag::No => TriState::No,
            Flag::Unknown => TriState::Unknown,
        }
    }
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PencilEntry {
    pub degree: i64,
    #[serde(default = "yes")]
    pub base_point_free: bool,
    #[serde(default)]
    pub gamma_irreducible: Flag,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverEntry {
    pub degree: i64,
    pub target_genus: i64,
    #[serde(default)]
    pub target_has_g12: bool,
    #[serde(default)]
    pub factors_through: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub genus: i64,
    #[serde(default)]
    pub pencils: Vec<PencilEntry>,
    #[serde(default)]
    pub covers: Vec<CoverEntry>,
    #[serde(default)]
    pub hyperelliptic: Flag,
    #[serde(default)]
    pub bielliptic: Flag,
    #[serde(default)]
    pub effective_classes: Vec<(i64, i64)>,
}

/// Top-level keys accepted in a spec file.
pub const TOP_LEVEL_KEYS: [&str; 6] = ["genus", "pencils", "covers", "hyperelliptic", "bielliptic", "effective_classes"];

impl SpecDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Syntax(e.to_string()))
    }

    pub fn to_curve_spec(&self) -> Result<CurveSpec, DocumentError> {
        let mut spec = CurveSpec::new(self.genus)
            .hyperelliptic(self.hyperelliptic.into())
            .bielliptic(self.bielliptic.into());
        for p in &self.pencils {
            spec = spec.with_pencil(PencilDatum {
                d: p.degree,
                base_point_free: p.base_point_free,
                gamma_irreducible: p.gamma_irreducible.into(),
            });
        }
        for (index, c) in self.covers.iter().enumerate() {
            let datum = CoverDatum::new(c.degree, c.target_genus)
                .map_err(|e| DocumentError::Key { key: format!("covers[{index}]"), reason: e.to_string() })?;
            spec = spec.with_cover(DeclaredCover {
                datum,
                target_has_g12: c.target_has_g12,
                factors_through: c.factors_through,
            });
        }
        spec.effective_classes = self.effective_classes.clone();
        Ok(spec)
    }
}
