//! Core immutable data model: grids, palettes, catalogs, changesets and the
//! surface-block primitive.
//!
//! Grids, catalogs and changesets never change after construction, so any
//! number of evaluators may read them concurrently.

mod catalog;
mod changeset;
mod grid;
mod palette;
mod recipes;
mod surface;

pub use catalog::{BlockCatalog, BlockEntry, BlockFlags, Category, CategorySet};
pub use changeset::{ChangeSet, Edit};
pub use grid::{BoundingBox, Coord, VoxelGrid};
pub use palette::{BlockTypeId, Palette};
pub use recipes::RecipeGraph;
pub use surface::{collect_surface_blocks, is_surface_block, SurfaceScan};

use thiserror::Error;

/// Validation failures in the data model.
#[derive(Debug, Error)]
pub enum ModelError {
    #[error("coordinate ({x}, {y}, {z}) outside grid of size {sx}x{sy}x{sz}")]
    OutOfBounds {
        x: usize,
        y: usize,
        z: usize,
        sx: usize,
        sy: usize,
        sz: usize,
    },
    #[error("bounding box {0} does not satisfy min < max on every axis")]
    EmptyBox(String),
    #[error("bounding box {bbox} exceeds grid of size {sx}x{sy}x{sz}")]
    BoxOutOfBounds {
        bbox: String,
        sx: usize,
        sy: usize,
        sz: usize,
    },
    #[error("duplicate palette name {0:?}")]
    DuplicateName(String),
    #[error("palette ids not contiguous from 0: missing id {0}")]
    NonContiguousIds(u16),
    #[error("duplicate palette id {0}")]
    DuplicateId(u16),
    #[error("block id {0} not present in palette")]
    UnknownId(u16),
    #[error("block name {0:?} not present in {1}")]
    UnknownBlock(String, &'static str),
    #[error("block {0:?} is flagged empty but also {1}")]
    EmptyConflict(String, &'static str),
    #[error("palette must resolve to exactly one empty block, found {0}")]
    EmptyCount(usize),
    #[error("grid cell stream has {got} cells, expected {expected}")]
    CellCount { got: usize, expected: usize },
    #[error("grid dimensions must be positive, got {0}x{1}x{2}")]
    ZeroDimension(usize, usize, usize),
    #[error("recipe graph contains a cycle: {}", .0.join(" -> "))]
    RecipeCycle(Vec<String>),
    #[error("changeset edit at ({x}, {y}, {z}) lies outside the settlement bounding box")]
    EditOutsideBox { x: usize, y: usize, z: usize },
}
