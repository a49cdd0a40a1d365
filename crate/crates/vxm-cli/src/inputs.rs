//! File loading with path-annotated errors and the catalog/recipe
//! resolution chain: explicit flag, then manifest entry, then the
//! VXM_CATALOG environment variable, then the embedded 1.12.2 data.

use std::path::{Path, PathBuf};

use vxm::defaults;
use vxm::io;
use vxm::model::{BlockCatalog, BoundingBox, ChangeSet, Coord, RecipeGraph, VoxelGrid};

use crate::error::CliError;

pub const CATALOG_ENV: &str = "VXM_CATALOG";

pub fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::io(path, e))
}

pub fn load_grid(path: &Path) -> Result<VoxelGrid, CliError> {
    io::parse_grid(&read(path)?).map_err(|e| CliError::in_file(path, e))
}

pub fn load_changeset(path: &Path, grid: &VoxelGrid) -> Result<ChangeSet, CliError> {
    io::parse_changeset(&read(path)?, grid).map_err(|e| CliError::in_file(path, e))
}

pub fn load_catalog(
    flag: Option<&Path>,
    manifest_path: Option<&Path>,
) -> Result<BlockCatalog, CliError> {
    let env_path = std::env::var_os(CATALOG_ENV).map(PathBuf::from);
    let path = flag.or(manifest_path).or(env_path.as_deref());
    match path {
        Some(path) => io::parse_catalog(&read(path)?).map_err(|e| CliError::in_file(path, e)),
        None => Ok(defaults::catalog().clone()),
    }
}

pub fn load_recipes(
    flag: Option<&Path>,
    manifest_path: Option<&Path>,
    catalog: &BlockCatalog,
) -> Result<RecipeGraph, CliError> {
    match flag.or(manifest_path) {
        Some(path) => {
            io::parse_recipes(&read(path)?, catalog).map_err(|e| CliError::in_file(path, e))
        }
        None => Ok(defaults::recipes().clone()),
    }
}

/// `x0,y0,z0,x1,y1,z1`, max exclusive.
pub fn parse_box(spec: &str) -> Result<BoundingBox, CliError> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 6 {
        return Err(CliError::Validation(format!(
            "box must be x0,y0,z0,x1,y1,z1, found {spec:?}"
        )));
    }
    let mut values = [0usize; 6];
    for (slot, part) in values.iter_mut().zip(&parts) {
        *slot = part.trim().parse().map_err(|_| {
            CliError::Validation(format!("invalid box coordinate {part:?}"))
        })?;
    }
    BoundingBox::new(
        Coord::new(values[0], values[1], values[2]),
        Coord::new(values[3], values[4], values[5]),
    )
    .map_err(CliError::from)
}

pub fn write_output(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(|e| CliError::io(path, e)),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
