use super::{BlockCatalog, BlockFlags, BoundingBox, Coord, ModelError, VoxelGrid};

/// True iff the block is solid and the two positions directly above it are
/// empty, i.e. a standable position. Positions above the top of the grid
/// count as empty.
pub fn is_surface_block(
    grid: &VoxelGrid,
    catalog: &BlockCatalog,
    x: usize,
    y: usize,
    z: usize,
) -> Result<bool, ModelError> {
    if !grid.in_bounds(x, y, z) {
        return Err(ModelError::OutOfBounds {
            x,
            y,
            z,
            sx: grid.size_x(),
            sy: grid.size_y(),
            sz: grid.size_z(),
        });
    }
    let flags = BlockFlags::bind(grid.palette(), catalog)?;
    let scan = SurfaceScan::new(grid, &flags);
    Ok(scan.is_surface(x, y, z))
}

/// All surface blocks inside the box, in canonical linear-index order
/// (ascending y, then z, then x).
pub fn collect_surface_blocks(
    grid: &VoxelGrid,
    catalog: &BlockCatalog,
    bbox: BoundingBox,
) -> Result<Vec<Coord>, ModelError> {
    bbox.check_within(grid)?;
    let flags = BlockFlags::bind(grid.palette(), catalog)?;
    Ok(SurfaceScan::new(grid, &flags).collect(bbox))
}

/// Surface test over a grid with pre-bound flags. Shared by the spatial
/// metrics so the flag tables are built once per evaluation.
pub struct SurfaceScan<'a> {
    grid: &'a VoxelGrid,
    flags: &'a BlockFlags,
}

impl<'a> SurfaceScan<'a> {
    pub fn new(grid: &'a VoxelGrid, flags: &'a BlockFlags) -> Self {
        Self { grid, flags }
    }

    /// Caller guarantees (x, y, z) is in bounds.
    #[inline]
    pub fn is_surface(&self, x: usize, y: usize, z: usize) -> bool {
        let cells = self.grid.cells();
        let idx = self.grid.linear_index(x, y, z);
        if !self.flags.is_solid(cells[idx]) {
            return false;
        }
        let plane = self.grid.size_x() * self.grid.size_z();
        let sy = self.grid.size_y();
        (y + 1 >= sy || self.flags.is_empty_block(cells[idx + plane]))
            && (y + 2 >= sy || self.flags.is_empty_block(cells[idx + 2 * plane]))
    }

    /// Surface blocks in the box, canonical order. The box must lie inside
    /// the grid.
    pub fn collect(&self, bbox: BoundingBox) -> Vec<Coord> {
        let mut out = Vec::new();
        let (min, max) = (bbox.min(), bbox.max());
        let cells = self.grid.cells();
        let plane = self.grid.size_x() * self.grid.size_z();
        let sy = self.grid.size_y();
        for y in min.y..max.y {
            for z in min.z..max.z {
                let row = self.grid.linear_index(min.x, y, z);
                for (dx, &id) in cells[row..row + (max.x - min.x)].iter().enumerate() {
                    if !self.flags.is_solid(id) {
                        continue;
                    }
                    let idx = row + dx;
                    let above_clear = (y + 1 >= sy
                        || self.flags.is_empty_block(cells[idx + plane]))
                        && (y + 2 >= sy || self.flags.is_empty_block(cells[idx + 2 * plane]));
                    if above_clear {
                        out.push(Coord::new(min.x + dx, y, z));
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{BlockEntry, BlockTypeId, Palette};
    use std::collections::BTreeMap;

    fn catalog() -> BlockCatalog {
        let mut m = BTreeMap::new();
        m.insert("air".to_string(), BlockEntry { empty: true, ..Default::default() });
        m.insert("stone".to_string(), BlockEntry { solid: true, ..Default::default() });
        m.insert("water".to_string(), BlockEntry::default()); // liquid: not solid
        BlockCatalog::new(m).unwrap()
    }

    fn palette() -> Palette {
        Palette::from_names(["air", "stone", "water"]).unwrap()
    }

    const AIR: BlockTypeId = BlockTypeId(0);
    const STONE: BlockTypeId = BlockTypeId(1);
    const WATER: BlockTypeId = BlockTypeId(2);

    fn grid_from(
        size: (usize, usize, usize),
        blocks: &[(usize, usize, usize, BlockTypeId)],
    ) -> VoxelGrid {
        let mut cells = vec![AIR; size.0 * size.1 * size.2];
        let tmp = VoxelGrid::filled(size.0, size.1, size.2, AIR, palette()).unwrap();
        for &(x, y, z, id) in blocks {
            cells[tmp.linear_index(x, y, z)] = id;
        }
        VoxelGrid::new(size.0, size.1, size.2, cells, palette()).unwrap()
    }

    #[test]
    fn stone_under_two_air_is_surface() {
        let g = grid_from((1, 3, 1), &[(0, 0, 0, STONE)]);
        assert!(is_surface_block(&g, &catalog(), 0, 0, 0).unwrap());
    }

    #[test]
    fn air_is_not_surface() {
        let g = grid_from((1, 3, 1), &[]);
        assert!(!is_surface_block(&g, &catalog(), 0, 0, 0).unwrap());
    }

    #[test]
    fn one_air_gap_is_not_enough() {
        let g = grid_from((1, 3, 1), &[(0, 0, 0, STONE), (0, 2, 0, STONE)]);
        assert!(!is_surface_block(&g, &catalog(), 0, 0, 0).unwrap());
    }

    #[test]
    fn water_is_not_standable() {
        let g = grid_from((1, 3, 1), &[(0, 0, 0, WATER)]);
        assert!(!is_surface_block(&g, &catalog(), 0, 0, 0).unwrap());
    }

    #[test]
    fn grid_ceiling_counts_as_empty() {
        // Top layer: both above-positions are out of bounds.
        let g = grid_from((1, 3, 1), &[(0, 2, 0, STONE)]);
        assert!(is_surface_block(&g, &catalog(), 0, 2, 0).unwrap());
        // One position below the top: one in-bounds air + one out of bounds.
        let g = grid_from((1, 3, 1), &[(0, 1, 0, STONE)]);
        assert!(is_surface_block(&g, &catalog(), 0, 1, 0).unwrap());
    }

    #[test]
    fn out_of_bounds_query_rejected() {
        let g = grid_from((2, 2, 2), &[]);
        assert!(is_surface_block(&g, &catalog(), 2, 0, 0).is_err());
    }

    #[test]
    fn flat_floor_count() {
        let mut blocks = Vec::new();
        for x in 0..3 {
            for z in 0..3 {
                blocks.push((x, 0, z, STONE));
            }
        }
        let g = grid_from((3, 4, 3), &blocks);
        let got = collect_surface_blocks(&g, &catalog(), g.bounds()).unwrap();
        assert_eq!(got.len(), 9);
    }

    #[test]
    fn fully_solid_grid_has_no_surface() {
        let g = VoxelGrid::filled(4, 4, 4, STONE, palette()).unwrap();
        // Top two layers see out-of-bounds (empty) above them.
        let got = collect_surface_blocks(&g, &catalog(), g.bounds()).unwrap();
        assert_eq!(got.len(), 16, "only the top layer is standable");
        assert!(got.iter().all(|c| c.y == 3));
    }

    #[test]
    fn canonical_order() {
        let g = grid_from((2, 4, 2), &[(1, 0, 0, STONE), (0, 0, 0, STONE), (0, 1, 1, STONE)]);
        let got = collect_surface_blocks(&g, &catalog(), g.bounds()).unwrap();
        assert_eq!(
            got,
            vec![Coord::new(0, 0, 0), Coord::new(1, 0, 0), Coord::new(0, 1, 1)]
        );
    }
}
