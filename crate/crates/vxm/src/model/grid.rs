use std::fmt;

use super::{BlockTypeId, ModelError, Palette};

/// A block position. Grid coordinates are non-negative; y is up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coord {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl Coord {
    pub const fn new(x: usize, y: usize, z: usize) -> Self {
        Self { x, y, z }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Axis-aligned region, `min` inclusive and `max` exclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundingBox {
    min: Coord,
    max: Coord,
}

impl BoundingBox {
    pub fn new(min: Coord, max: Coord) -> Result<Self, ModelError> {
        if min.x >= max.x || min.y >= max.y || min.z >= max.z {
            return Err(ModelError::EmptyBox(format!("{min}..{max}")));
        }
        Ok(Self { min, max })
    }

    pub fn min(&self) -> Coord {
        self.min
    }

    pub fn max(&self) -> Coord {
        self.max
    }

    pub fn contains(&self, c: Coord) -> bool {
        c.x >= self.min.x
            && c.x < self.max.x
            && c.y >= self.min.y
            && c.y < self.max.y
            && c.z >= self.min.z
            && c.z < self.max.z
    }

    pub fn volume(&self) -> usize {
        (self.max.x - self.min.x) * (self.max.y - self.min.y) * (self.max.z - self.min.z)
    }

    /// Error unless the box lies fully inside the grid.
    pub fn check_within(&self, grid: &VoxelGrid) -> Result<(), ModelError> {
        if self.max.x > grid.size_x() || self.max.y > grid.size_y() || self.max.z > grid.size_z() {
            return Err(ModelError::BoxOutOfBounds {
                bbox: format!("{}..{}", self.min, self.max),
                sx: grid.size_x(),
                sy: grid.size_y(),
                sz: grid.size_z(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for BoundingBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.min, self.max)
    }
}

/// Dense 3D lattice of block-type ids with a named palette. Immutable after
/// construction.
///
/// Cells are stored y-major: the linear index of `(x, y, z)` is
/// `y * (size_x * size_z) + z * size_x + x`.
#[derive(Debug, Clone)]
pub struct VoxelGrid {
    size_x: usize,
    size_y: usize,
    size_z: usize,
    cells: Vec<BlockTypeId>,
    palette: Palette,
}

impl VoxelGrid {
    pub fn new(
        size_x: usize,
        size_y: usize,
        size_z: usize,
        cells: Vec<BlockTypeId>,
        palette: Palette,
    ) -> Result<Self, ModelError> {
        if size_x == 0 || size_y == 0 || size_z == 0 {
            return Err(ModelError::ZeroDimension(size_x, size_y, size_z));
        }
        let volume = size_x
            .checked_mul(size_y)
            .and_then(|v| v.checked_mul(size_z))
            .ok_or(ModelError::CellCount {
                got: cells.len(),
                expected: usize::MAX,
            })?;
        if cells.len() != volume {
            return Err(ModelError::CellCount {
                got: cells.len(),
                expected: volume,
            });
        }
        for &id in &cells {
            if !palette.contains_id(id) {
                return Err(ModelError::UnknownId(id.0));
            }
        }
        Ok(Self {
            size_x,
            size_y,
            size_z,
            cells,
            palette,
        })
    }

    /// Grid filled with a single block type.
    pub fn filled(
        size_x: usize,
        size_y: usize,
        size_z: usize,
        fill: BlockTypeId,
        palette: Palette,
    ) -> Result<Self, ModelError> {
        let volume = size_x * size_y * size_z;
        Self::new(size_x, size_y, size_z, vec![fill; volume], palette)
    }

    pub fn size_x(&self) -> usize {
        self.size_x
    }

    pub fn size_y(&self) -> usize {
        self.size_y
    }

    pub fn size_z(&self) -> usize {
        self.size_z
    }

    pub fn volume(&self) -> usize {
        self.cells.len()
    }

    pub fn palette(&self) -> &Palette {
        &self.palette
    }

    pub fn cells(&self) -> &[BlockTypeId] {
        &self.cells
    }

    /// The whole grid as a bounding box.
    pub fn bounds(&self) -> BoundingBox {
        BoundingBox {
            min: Coord::new(0, 0, 0),
            max: Coord::new(self.size_x, self.size_y, self.size_z),
        }
    }

    #[inline]
    pub fn in_bounds(&self, x: usize, y: usize, z: usize) -> bool {
        x < self.size_x && y < self.size_y && z < self.size_z
    }

    #[inline]
    pub fn linear_index(&self, x: usize, y: usize, z: usize) -> usize {
        y * (self.size_x * self.size_z) + z * self.size_x + x
    }

    /// Inverse of [`linear_index`](Self::linear_index).
    #[inline]
    pub fn coord_of(&self, index: usize) -> Coord {
        let plane = self.size_x * self.size_z;
        let y = index / plane;
        let rem = index % plane;
        Coord::new(rem % self.size_x, y, rem / self.size_x)
    }

    /// Block id at a coordinate, or `OutOfBounds`.
    pub fn block_at(&self, x: usize, y: usize, z: usize) -> Result<BlockTypeId, ModelError> {
        if !self.in_bounds(x, y, z) {
            return Err(ModelError::OutOfBounds {
                x,
                y,
                z,
                sx: self.size_x,
                sy: self.size_y,
                sz: self.size_z,
            });
        }
        Ok(self.cells[self.linear_index(x, y, z)])
    }

    /// Unchecked read for hot loops; callers guarantee bounds.
    #[inline]
    pub fn get(&self, x: usize, y: usize, z: usize) -> BlockTypeId {
        self.cells[self.linear_index(x, y, z)]
    }
}
