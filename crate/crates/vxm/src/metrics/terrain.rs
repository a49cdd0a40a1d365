use std::fmt;

use crate::model::{BlockCatalog, BlockFlags, BoundingBox, Coord, SurfaceScan, VoxelGrid};

use super::MetricError;

/// Horizontal ground axis a surface projection runs along.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Z,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Z => "z",
        })
    }
}

/// Surface blocks per block of box volume. Counts environment surface
/// blocks as well as generator-placed ones.
pub fn density(
    grid: &VoxelGrid,
    catalog: &BlockCatalog,
    bbox: BoundingBox,
) -> Result<f64, MetricError> {
    bbox.check_within(grid)?;
    let flags = BlockFlags::bind(grid.palette(), catalog)?;
    let surface = SurfaceScan::new(grid, &flags).collect(bbox);
    Ok(surface.len() as f64 / bbox.volume() as f64)
}

/// Fraction of box cells that are not empty.
pub fn filling_ratio(
    grid: &VoxelGrid,
    catalog: &BlockCatalog,
    bbox: BoundingBox,
) -> Result<f64, MetricError> {
    bbox.check_within(grid)?;
    let flags = BlockFlags::bind(grid.palette(), catalog)?;
    Ok(filling_with(grid, &flags, bbox))
}

pub(super) fn filling_with(grid: &VoxelGrid, flags: &BlockFlags, bbox: BoundingBox) -> f64 {
    let (min, max) = (bbox.min(), bbox.max());
    let cells = grid.cells();
    let mut filled = 0usize;
    for y in min.y..max.y {
        for z in min.z..max.z {
            let row = grid.linear_index(min.x, y, z);
            filled += cells[row..row + (max.x - min.x)]
                .iter()
                .filter(|&&id| !flags.is_empty_block(id))
                .count();
        }
    }
    filled as f64 / bbox.volume() as f64
}

/// Mean squared vertical distance of the surface blocks from their least
/// squares line, projecting (x, y, z) onto (a, y) with a = x or a = z.
/// Duplicate projected points are kept.
pub fn linearity(
    grid: &VoxelGrid,
    catalog: &BlockCatalog,
    bbox: BoundingBox,
    axis: Axis,
) -> Result<f64, MetricError> {
    bbox.check_within(grid)?;
    let flags = BlockFlags::bind(grid.palette(), catalog)?;
    let surface = SurfaceScan::new(grid, &flags).collect(bbox);
    linearity_of_surface(&surface, axis)
}

/// The regression runs on integer accumulators, so the residual is bit-for-
/// bit invariant under rigid translation of the surface set.
pub(super) fn linearity_of_surface(surface: &[Coord], axis: Axis) -> Result<f64, MetricError> {
    let n = surface.len();
    if n < 2 {
        return Err(MetricError::Degenerate("linearity", "fewer than 2 surface blocks"));
    }
    let abscissa = |c: &Coord| match axis {
        Axis::X => c.x as i128,
        Axis::Z => c.z as i128,
    };
    let first = abscissa(&surface[0]);
    if surface.iter().all(|c| abscissa(c) == first) {
        return Err(MetricError::Degenerate("linearity", "all abscissa values equal"));
    }
    let (mut sum_a, mut sum_y, mut sum_aa, mut sum_ay, mut sum_yy) = (0i128, 0i128, 0i128, 0i128, 0i128);
    for c in surface {
        let a = abscissa(c);
        let y = c.y as i128;
        sum_a += a;
        sum_y += y;
        sum_aa += a * a;
        sum_ay += a * y;
        sum_yy += y * y;
    }
    let n_i = n as i128;
    // Centered sums scaled by n: saa = n·Σ(a−ā)², etc. All exact integers.
    let saa = n_i * sum_aa - sum_a * sum_a;
    let say = n_i * sum_ay - sum_a * sum_y;
    let syy = n_i * sum_yy - sum_y * sum_y;
    let residual = (syy as f64 - (say as f64) * (say as f64) / saa as f64) / (n_i * n_i) as f64;
    Ok(residual.max(0.0))
}

/// Maximal set of surface blocks at one height, 4-connected in the
/// horizontal plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Platform {
    pub height: usize,
    /// Member coordinates in canonical linear-index order.
    pub members: Vec<Coord>,
}

impl Platform {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Partition of all surface blocks in the box into platforms, by flood fill.
/// Platforms are ordered by their first member in canonical order.
pub fn platform_decomposition(
    grid: &VoxelGrid,
    catalog: &BlockCatalog,
    bbox: BoundingBox,
) -> Result<Vec<Platform>, MetricError> {
    bbox.check_within(grid)?;
    let flags = BlockFlags::bind(grid.palette(), catalog)?;
    let surface = SurfaceScan::new(grid, &flags).collect(bbox);
    Ok(platforms_of_surface(&surface, bbox))
}

/// Mean platform size: surface-block count divided by platform count.
pub fn platform_size(
    grid: &VoxelGrid,
    catalog: &BlockCatalog,
    bbox: BoundingBox,
) -> Result<f64, MetricError> {
    bbox.check_within(grid)?;
    let flags = BlockFlags::bind(grid.palette(), catalog)?;
    let surface = SurfaceScan::new(grid, &flags).collect(bbox);
    if surface.is_empty() {
        return Err(MetricError::Degenerate("platform_size", "no surface blocks in box"));
    }
    let platforms = platforms_of_surface(&surface, bbox);
    Ok(surface.len() as f64 / platforms.len() as f64)
}

pub(super) fn platforms_of_surface(surface: &[Coord], bbox: BoundingBox) -> Vec<Platform> {
    let min = bbox.min();
    let width = bbox.max().x - min.x;
    let depth = bbox.max().z - min.z;
    let height = bbox.max().y - min.y;
    let plane = width * depth;
    let local = |c: Coord| (c.y - min.y) * plane + (c.z - min.z) * width + (c.x - min.x);

    let mut member = Bitset::new(plane * height);
    for &c in surface {
        member.set(local(c));
    }
    let mut visited = Bitset::new(plane * height);

    let mut platforms = Vec::new();
    for &start in surface {
        if visited.get(local(start)) {
            continue;
        }
        let mut members = Vec::new();
        let mut stack = vec![start];
        visited.set(local(start));
        while let Some(c) = stack.pop() {
            members.push(c);
            let mut push = |n: Coord| {
                let key = local(n);
                if member.get(key) && !visited.get(key) {
                    visited.set(key);
                    stack.push(n);
                }
            };
            if c.x > min.x {
                push(Coord::new(c.x - 1, c.y, c.z));
            }
            if c.x + 1 < bbox.max().x {
                push(Coord::new(c.x + 1, c.y, c.z));
            }
            if c.z > min.z {
                push(Coord::new(c.x, c.y, c.z - 1));
            }
            if c.z + 1 < bbox.max().z {
                push(Coord::new(c.x, c.y, c.z + 1));
            }
        }
        members.sort_unstable_by_key(|c| (c.y, c.z, c.x));
        platforms.push(Platform { height: start.y, members });
    }
    platforms
}

struct Bitset(Vec<u64>);

impl Bitset {
    fn new(bits: usize) -> Self {
        Self(vec![0; bits.div_ceil(64)])
    }

    #[inline]
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{BlockEntry, BlockTypeId, Palette};
    use std::collections::BTreeMap;

    const AIR: BlockTypeId = BlockTypeId(0);
    const STONE: BlockTypeId = BlockTypeId(1);

    fn catalog() -> BlockCatalog {
        let mut m = BTreeMap::new();
        m.insert("air".to_string(), BlockEntry { empty: true, ..Default::default() });
        m.insert("stone".to_string(), BlockEntry { solid: true, ..Default::default() });
        BlockCatalog::new(m).unwrap()
    }

    fn palette() -> Palette {
        Palette::from_names(["air", "stone"]).unwrap()
    }

    fn grid_with(size: (usize, usize, usize), solid: &[(usize, usize, usize)]) -> VoxelGrid {
        let mut cells = vec![AIR; size.0 * size.1 * size.2];
        let probe = VoxelGrid::filled(size.0, size.1, size.2, AIR, palette()).unwrap();
        for &(x, y, z) in solid {
            cells[probe.linear_index(x, y, z)] = STONE;
        }
        VoxelGrid::new(size.0, size.1, size.2, cells, palette()).unwrap()
    }

    fn floor(size: usize, y: usize) -> Vec<(usize, usize, usize)> {
        let mut v = Vec::new();
        for x in 0..size {
            for z in 0..size {
                v.push((x, y, z));
            }
        }
        v
    }

    #[test]
    fn empty_grid_density_zero() {
        let g = grid_with((4, 4, 4), &[]);
        assert_eq!(density(&g, &catalog(), g.bounds()).unwrap(), 0.0);
    }

    #[test]
    fn floor_density() {
        // 4x4 stone floor at y=0 inside a 4x4x4 box: 16 / 64.
        let g = grid_with((4, 4, 4), &floor(4, 0));
        assert_eq!(density(&g, &catalog(), g.bounds()).unwrap(), 0.25);
    }

    #[test]
    fn solid_box_under_solid_ceiling_density_zero() {
        // Box capped by ≥2 solid layers above it: nothing standable inside.
        let g = VoxelGrid::filled(4, 6, 4, STONE, palette()).unwrap();
        let bbox = BoundingBox::new(Coord::new(0, 0, 0), Coord::new(4, 4, 4)).unwrap();
        assert_eq!(density(&g, &catalog(), bbox).unwrap(), 0.0);
    }

    #[test]
    fn filling_ratio_extremes_and_half() {
        let g = VoxelGrid::filled(4, 4, 4, STONE, palette()).unwrap();
        assert_eq!(filling_ratio(&g, &catalog(), g.bounds()).unwrap(), 1.0);
        let g = grid_with((4, 4, 4), &[]);
        assert_eq!(filling_ratio(&g, &catalog(), g.bounds()).unwrap(), 0.0);
        let mut lower_half = Vec::new();
        for y in 0..2 {
            for x in 0..4 {
                for z in 0..4 {
                    lower_half.push((x, y, z));
                }
            }
        }
        let g = grid_with((4, 4, 4), &lower_half);
        assert_eq!(filling_ratio(&g, &catalog(), g.bounds()).unwrap(), 0.5);
    }

    #[test]
    fn removing_blocks_lowers_filling_ratio() {
        let solid = floor(4, 0);
        let g_full = grid_with((4, 4, 4), &solid);
        let g_less = grid_with((4, 4, 4), &solid[..10]);
        let full = filling_ratio(&g_full, &catalog(), g_full.bounds()).unwrap();
        let less = filling_ratio(&g_less, &catalog(), g_less.bounds()).unwrap();
        assert_eq!(full - less, 6.0 / 64.0);
    }

    #[test]
    fn exact_plane_has_zero_residual() {
        // Terrain columns rising along x: top surface at y = 2x + 3.
        let mut solid = Vec::new();
        for x in 0..5 {
            for z in 0..4 {
                for y in 0..=(2 * x + 3) {
                    solid.push((x, y, z));
                }
            }
        }
        let g = grid_with((5, 16, 4), &solid);
        assert_eq!(linearity(&g, &catalog(), g.bounds(), Axis::X).unwrap(), 0.0);
    }

    #[test]
    fn three_point_residual() {
        // Heights 0, 1, 0 along x: hand-solved least squares leaves 2/9.
        let g = grid_with((3, 4, 1), &[(0, 0, 0), (1, 0, 0), (1, 1, 0), (2, 0, 0)]);
        let got = linearity(&g, &catalog(), g.bounds(), Axis::X).unwrap();
        assert!((got - 2.0 / 9.0).abs() < 1e-12, "got {got}");
    }

    #[test]
    fn single_point_is_degenerate() {
        let g = grid_with((3, 4, 3), &[(1, 0, 1)]);
        assert!(matches!(
            linearity(&g, &catalog(), g.bounds(), Axis::X),
            Err(MetricError::Degenerate("linearity", _))
        ));
    }

    #[test]
    fn constant_abscissa_is_degenerate() {
        let g = grid_with((3, 4, 3), &[(1, 0, 0), (1, 0, 1), (1, 0, 2)]);
        assert!(linearity(&g, &catalog(), g.bounds(), Axis::X).is_err());
        // Along z the same points do spread out.
        assert!(linearity(&g, &catalog(), g.bounds(), Axis::Z).is_ok());
    }

    #[test]
    fn flat_floor_is_one_platform() {
        let g = grid_with((3, 4, 3), &floor(3, 0));
        let platforms = platform_decomposition(&g, &catalog(), g.bounds()).unwrap();
        assert_eq!(platforms.len(), 1);
        assert_eq!(platforms[0].size(), 9);
        assert_eq!(platform_size(&g, &catalog(), g.bounds()).unwrap(), 9.0);
    }

    #[test]
    fn disjoint_floors_are_two_platforms() {
        let mut solid = Vec::new();
        for (x0, y) in [(0usize, 0usize), (4, 5)] {
            for x in x0..x0 + 2 {
                for z in 0..2 {
                    solid.push((x, y, z));
                }
            }
        }
        let g = grid_with((6, 8, 6), &solid);
        let platforms = platform_decomposition(&g, &catalog(), g.bounds()).unwrap();
        assert_eq!(platforms.len(), 2);
        assert!(platforms.iter().all(|p| p.size() == 4));
        assert_eq!(platform_size(&g, &catalog(), g.bounds()).unwrap(), 4.0);
    }

    #[test]
    fn equal_height_but_detached_by_diagonal() {
        // Diagonal neighbors are not 4-adjacent.
        let g = grid_with((4, 4, 4), &[(0, 0, 0), (1, 0, 1)]);
        let platforms = platform_decomposition(&g, &catalog(), g.bounds()).unwrap();
        assert_eq!(platforms.len(), 2);
    }

    #[test]
    fn mean_of_sizes_nine_and_one() {
        let mut solid = floor(3, 0);
        solid.push((5, 3, 5)); // lone pillar top
        solid.push((5, 2, 5));
        let g = grid_with((7, 7, 7), &solid);
        let platforms = platform_decomposition(&g, &catalog(), g.bounds()).unwrap();
        let mut sizes: Vec<usize> = platforms.iter().map(Platform::size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 9]);
        assert_eq!(platform_size(&g, &catalog(), g.bounds()).unwrap(), 5.0);
    }

    #[test]
    fn no_surface_is_degenerate_for_platform_size() {
        let g = grid_with((3, 3, 3), &[]);
        assert!(matches!(
            platform_size(&g, &catalog(), g.bounds()),
            Err(MetricError::Degenerate("platform_size", _))
        ));
    }
}
