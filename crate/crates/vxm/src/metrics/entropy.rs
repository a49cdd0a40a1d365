use std::collections::HashMap;
use std::fmt;

use crate::model::{BlockCatalog, BlockFlags, BlockTypeId, VoxelGrid};

use super::{MetricError, Settlement};

/// Which positions anchor the adjacent-type pairs: every cell of the
/// evaluation box, or only the positions the generator changed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntropyScope {
    Level,
    Settlement,
}

impl fmt::Display for EntropyScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntropyScope::Level => "level",
            EntropyScope::Settlement => "settlement",
        })
    }
}

/// Mean over the three axes of the conditional entropy of the block type one
/// step along the axis, given the type at the anchor position.
///
/// Pairs where either block is empty are ignored. The anchor ranges over the
/// scope; the successor is read wherever the step lands, as long as it is
/// still inside the grid. Axes without a single countable pair contribute
/// 0 bits; if no axis has one, the error is `NoPairs`.
pub fn conditional_entropy(
    s: &Settlement,
    catalog: &BlockCatalog,
    scope: EntropyScope,
) -> Result<f64, MetricError> {
    conditional_entropy_axes(s, catalog, scope).map(axis_mean)
}

/// Per-axis entropies in x, y, z order.
pub fn conditional_entropy_axes(
    s: &Settlement,
    catalog: &BlockCatalog,
    scope: EntropyScope,
) -> Result<[f64; 3], MetricError> {
    let flags = BlockFlags::bind(s.grid().palette(), catalog)?;
    entropy_axes_with(s, &flags, scope)
}

pub(super) fn axis_mean(axes: [f64; 3]) -> f64 {
    (axes[0] + axes[1] + axes[2]) / 3.0
}

pub(super) fn entropy_axes_with(
    s: &Settlement,
    flags: &BlockFlags,
    scope: EntropyScope,
) -> Result<[f64; 3], MetricError> {
    let grid = s.grid();
    let strides = [
        (1usize, grid.size_x()),                  // +x
        (grid.size_x() * grid.size_z(), grid.size_y()), // +y
        (grid.size_x(), grid.size_z()),           // +z
    ];
    let axis_of = |i: usize| match i {
        0 => 0, // x
        1 => 1, // y
        _ => 2, // z
    };

    let mut axes = [0.0f64; 3];
    let mut any_pairs = false;
    for (i, &(stride, extent)) in strides.iter().enumerate() {
        let mut counts = PairCounts::new(flags.palette_len());
        match scope {
            EntropyScope::Level => {
                count_level_pairs(grid, flags, s, stride, extent, i, &mut counts)
            }
            EntropyScope::Settlement => {
                count_settlement_pairs(grid, flags, s, stride, extent, i, &mut counts)
            }
        }
        if counts.total > 0 {
            any_pairs = true;
            axes[axis_of(i)] = counts.conditional_entropy();
        }
    }
    if !any_pairs {
        return Err(MetricError::NoPairs(scope));
    }
    Ok(axes)
}

fn count_level_pairs(
    grid: &VoxelGrid,
    flags: &BlockFlags,
    s: &Settlement,
    stride: usize,
    extent: usize,
    axis: usize,
    counts: &mut PairCounts,
) {
    let bbox = s.bbox();
    let (min, max) = (bbox.min(), bbox.max());
    let cells = grid.cells();
    for y in min.y..max.y {
        for z in min.z..max.z {
            let row = grid.linear_index(min.x, y, z);
            for x in min.x..max.x {
                // The successor may leave the box but not the grid.
                let coord_along = match axis {
                    0 => x,
                    1 => y,
                    _ => z,
                };
                if coord_along + 1 >= extent {
                    continue;
                }
                let idx = row + (x - min.x);
                let t = cells[idx];
                if flags.is_empty_block(t) {
                    continue;
                }
                let t2 = cells[idx + stride];
                if flags.is_empty_block(t2) {
                    continue;
                }
                counts.add(t, t2);
            }
        }
    }
}

fn count_settlement_pairs(
    grid: &VoxelGrid,
    flags: &BlockFlags,
    s: &Settlement,
    stride: usize,
    extent: usize,
    axis: usize,
    counts: &mut PairCounts,
) {
    let cells = grid.cells();
    for edit in s.changes().edits() {
        let pos = edit.pos;
        let coord_along = match axis {
            0 => pos.x,
            1 => pos.y,
            _ => pos.z,
        };
        if coord_along + 1 >= extent {
            continue;
        }
        let idx = grid.linear_index(pos.x, pos.y, pos.z);
        let t = cells[idx];
        if flags.is_empty_block(t) {
            continue;
        }
        let t2 = cells[idx + stride];
        if flags.is_empty_block(t2) {
            continue;
        }
        counts.add(t, t2);
    }
}

/// Joint counts of (anchor type, successor type). Dense table for ordinary
/// palettes, hash map beyond that.
struct PairCounts {
    n: usize,
    dense: Option<Vec<u32>>,
    sparse: HashMap<(u16, u16), u32>,
    total: u64,
}

const DENSE_PALETTE_LIMIT: usize = 1024;

impl PairCounts {
    fn new(palette_len: usize) -> Self {
        let dense = (palette_len <= DENSE_PALETTE_LIMIT)
            .then(|| vec![0u32; palette_len * palette_len]);
        Self {
            n: palette_len,
            dense,
            sparse: HashMap::new(),
            total: 0,
        }
    }

    #[inline]
    fn add(&mut self, t: BlockTypeId, t2: BlockTypeId) {
        self.total += 1;
        match &mut self.dense {
            Some(table) => table[t.index() * self.n + t2.index()] += 1,
            None => *self.sparse.entry((t.0, t2.0)).or_insert(0) += 1,
        }
    }

    /// H(successor | anchor) = Σ_t P(t)·H(successor | t), in bits.
    ///
    /// Terms are sorted before summing so the result does not depend on
    /// palette id assignment (label invariance, bit for bit).
    fn conditional_entropy(&self) -> f64 {
        let mut rows: HashMap<u16, Vec<u32>> = HashMap::new();
        match &self.dense {
            Some(table) => {
                for t in 0..self.n {
                    let row: Vec<u32> = table[t * self.n..(t + 1) * self.n]
                        .iter()
                        .copied()
                        .filter(|&c| c > 0)
                        .collect();
                    if !row.is_empty() {
                        rows.insert(t as u16, row);
                    }
                }
            }
            None => {
                for (&(t, _), &c) in &self.sparse {
                    rows.entry(t).or_default().push(c);
                }
            }
        }
        let mut terms: Vec<(u64, f64)> = rows
            .into_values()
            .map(|mut row| {
                row.sort_unstable_by(|a, b| b.cmp(a));
                let n_t: u64 = row.iter().map(|&c| c as u64).sum();
                let h_t: f64 = row
                    .iter()
                    .map(|&c| {
                        let p = c as f64 / n_t as f64;
                        -p * p.log2()
                    })
                    .sum();
                (n_t, h_t)
            })
            .collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
        terms
            .iter()
            .map(|&(n_t, h_t)| (n_t as f64 / self.total as f64) * h_t)
            .sum()
    }
}
