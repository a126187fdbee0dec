//! Instance file format: structured JSON with exact rationals as strings.
//!
//! Fields: `n`, `r`, `g_basis` (list of rows), optional `chi`, optional
//! `alpha`. At least one of `chi`/`alpha` must be present; when both are,
//! they must be consistent.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use goldie_core::arrangement::ArrangementSpec;
use goldie_core::linalg::RatMatrix;
use goldie_core::rat::{fmt_rat, parse_rat, Rat};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    pub r: usize,
    pub g_basis: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<String>>,
}

pub struct LoadedInstance {
    pub spec: ArrangementSpec,
    pub alpha: Option<Vec<Rat>>,
}

fn parse_vec(raw: &[String], what: &str) -> Result<Vec<Rat>, CliError> {
    raw.iter()
        .map(|s| parse_rat(s).map_err(|e| CliError::validation(format!("{what}: {e}"))))
        .collect()
}

pub fn load(path: &Path) -> Result<LoadedInstance, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::validation(format!("cannot read {}: {e}", path.display())))?;
    let file: InstanceFile = serde_json::from_str(&text)
        .map_err(|e| CliError::validation(format!("bad instance file {}: {e}", path.display())))?;
    from_file(&file)
}

pub fn from_file(file: &InstanceFile) -> Result<LoadedInstance, CliError> {
    let mut rows = Vec::with_capacity(file.g_basis.len());
    for row in &file.g_basis {
        rows.push(parse_vec(row, "g_basis")?);
    }
    let g = RatMatrix::from_rows(rows).map_err(CliError::Core)?;
    let alpha = file
        .alpha
        .as_ref()
        .map(|raw| parse_vec(raw, "alpha"))
        .transpose()?;
    let spec = match (&file.chi, &alpha) {
        (Some(raw_chi), maybe_alpha) => {
            let chi = parse_vec(raw_chi, "chi")?;
            let spec = ArrangementSpec::new(file.n, file.r, g, chi).map_err(CliError::Core)?;
            if let Some(a) = maybe_alpha {
                if a.len() != file.n {
                    return Err(CliError::validation("alpha has wrong length".into()));
                }
                if !spec.fiber_membership(a) {
                    return Err(CliError::validation(
                        "alpha does not satisfy the fiber equation of chi".into(),
                    ));
                }
            }
            spec
        }
        (None, Some(a)) => {
            ArrangementSpec::from_alpha(file.n, file.r, g, a).map_err(CliError::Core)?
        }
        (None, None) => {
            return Err(CliError::validation(
                "instance needs chi or alpha to determine the character".into(),
            ))
        }
    };
    Ok(LoadedInstance { spec, alpha })
}

/// The alpha field is mandatory for every analysis command.
pub fn require_alpha(inst: &LoadedInstance) -> Result<&[Rat], CliError> {
    inst.alpha
        .as_deref()
        .ok_or_else(|| CliError::validation("instance file has no alpha".into()))
}

/// Echo of the effective instance (chi always materialized) for reports.
pub fn echo(spec: &ArrangementSpec, alpha: &[Rat]) -> InstanceFile {
    InstanceFile {
        n: spec.n(),
        r: spec.r(),
        g_basis: (0..spec.g_matrix().rows())
            .map(|r| spec.g_matrix().row(r).iter().map(fmt_rat).collect())
            .collect(),
        chi: Some(spec.chi().iter().map(fmt_rat).collect()),
        alpha: Some(alpha.iter().map(fmt_rat).collect()),
    }
}
