//! Batch manifest: the list of (generator, sample) runs with their input
//! files and evaluation boxes, plus optional catalog/recipe paths shared by
//! every run.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use vxm::io::GLOBAL_GENERATOR;

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatchManifest {
    #[serde(default)]
    pub catalog: Option<PathBuf>,
    #[serde(default)]
    pub recipes: Option<PathBuf>,
    pub runs: Vec<Run>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Run {
    pub generator: String,
    pub sample: u32,
    pub grid: PathBuf,
    pub changes: PathBuf,
    /// x0,y0,z0,x1,y1,z1 (max exclusive); omitted means the whole grid.
    #[serde(default)]
    pub r#box: Option<[usize; 6]>,
}

impl BatchManifest {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
        let manifest: BatchManifest = serde_json::from_slice(&bytes)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        manifest.validate(path)?;
        Ok(manifest)
    }

    /// Uniqueness of (generator, sample) and resolvability of every path.
    /// Run files that exist but fail to parse are per-run failures later;
    /// missing files reject the whole manifest here.
    fn validate(&self, manifest_path: &Path) -> Result<(), CliError> {
        if self.runs.is_empty() {
            return Err(CliError::Validation(format!(
                "{}: manifest has no runs",
                manifest_path.display()
            )));
        }
        let mut seen: BTreeSet<(&str, u32)> = BTreeSet::new();
        for run in &self.runs {
            if run.generator.is_empty() || run.generator.contains(',') {
                return Err(CliError::Validation(format!(
                    "invalid generator id {:?}",
                    run.generator
                )));
            }
            if run.generator == GLOBAL_GENERATOR {
                return Err(CliError::Validation(format!(
                    "generator id {GLOBAL_GENERATOR:?} is reserved for pooled summary rows"
                )));
            }
            if !seen.insert((run.generator.as_str(), run.sample)) {
                return Err(CliError::Validation(format!(
                    "duplicate run ({}, {})",
                    run.generator, run.sample
                )));
            }
            for path in [&run.grid, &run.changes] {
                if !path.is_file() {
                    return Err(CliError::Validation(format!(
                        "run ({}, {}): file not found: {}",
                        run.generator,
                        run.sample,
                        path.display()
                    )));
                }
            }
        }
        for path in [&self.catalog, &self.recipes].into_iter().flatten() {
            if !path.is_file() {
                return Err(CliError::Validation(format!(
                    "file not found: {}",
                    path.display()
                )));
            }
        }
        Ok(())
    }
}
