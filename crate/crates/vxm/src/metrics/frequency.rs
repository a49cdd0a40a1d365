use crate::model::{BlockCatalog, BlockFlags, BlockTypeId, Category};

use super::{MetricError, Settlement};

/// Ratio of added blocks belonging to the category to all added blocks.
/// An added block in several categories contributes to each of them.
pub fn frequency_metric(
    s: &Settlement,
    catalog: &BlockCatalog,
    category: Category,
) -> Result<f64, MetricError> {
    let flags = BlockFlags::bind(s.grid().palette(), catalog)?;
    let stats = scan_changes(s, &flags);
    if stats.added == 0 {
        return Err(MetricError::EmptySettlement);
    }
    let idx = Category::ALL.iter().position(|c| *c == category).unwrap();
    Ok(stats.category_counts[idx] as f64 / stats.added as f64)
}

/// Number of distinct non-empty block types among the added blocks.
pub fn block_type_count(s: &Settlement, catalog: &BlockCatalog) -> Result<u32, MetricError> {
    let flags = BlockFlags::bind(s.grid().palette(), catalog)?;
    Ok(scan_changes(s, &flags).distinct_types.len() as u32)
}

/// Single pass over the changeset shared by the frequency metrics, block
/// type count, and relation to environment.
pub(super) struct ChangeStats {
    pub added: u64,
    pub category_counts: [u64; 5],
    /// Distinct non-empty `after` types, in id order.
    pub distinct_types: Vec<BlockTypeId>,
}

impl ChangeStats {
    pub fn ratios(&self) -> [f64; 5] {
        self.category_counts.map(|c| c as f64 / self.added as f64)
    }
}

pub(super) fn scan_changes(s: &Settlement, flags: &BlockFlags) -> ChangeStats {
    let mut added = 0u64;
    let mut category_counts = [0u64; 5];
    let mut seen = vec![false; flags.palette_len()];
    for edit in s.changes().added(flags) {
        added += 1;
        for (i, category) in Category::ALL.into_iter().enumerate() {
            if flags.in_category(edit.after, category) {
                category_counts[i] += 1;
            }
        }
        seen[edit.after.index()] = true;
    }
    let distinct_types = seen
        .iter()
        .enumerate()
        .filter(|(_, &s)| s)
        .map(|(i, _)| BlockTypeId(i as u16))
        .collect();
    ChangeStats {
        added,
        category_counts,
        distinct_types,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{
        BlockEntry, CategorySet, ChangeSet, Coord, Edit, Palette, VoxelGrid,
    };
    use std::collections::BTreeMap;

    const AIR: BlockTypeId = BlockTypeId(0);
    const STONE: BlockTypeId = BlockTypeId(1);
    const TORCH: BlockTypeId = BlockTypeId(2);
    const PLANKS: BlockTypeId = BlockTypeId(3);

    fn catalog() -> BlockCatalog {
        let mut m = BTreeMap::new();
        m.insert("air".to_string(), BlockEntry { empty: true, ..Default::default() });
        m.insert("stone".to_string(), BlockEntry { solid: true, ..Default::default() });
        m.insert(
            "torch".to_string(),
            BlockEntry {
                categories: CategorySet::of(&[
                    Category::Light,
                    Category::Functional,
                    Category::Aesthetic,
                ]),
                ..Default::default()
            },
        );
        m.insert("planks".to_string(), BlockEntry { solid: true, ..Default::default() });
        BlockCatalog::new(m).unwrap()
    }

    fn settlement(edits: Vec<Edit>) -> Settlement {
        let palette = Palette::from_names(["air", "stone", "torch", "planks"]).unwrap();
        let grid = VoxelGrid::filled(12, 12, 12, AIR, palette).unwrap();
        let changes = ChangeSet::from_edits(edits, &grid).unwrap();
        let bbox = grid.bounds();
        Settlement::new(grid, changes, bbox, "test", 0).unwrap()
    }

    fn place(n: usize, id: BlockTypeId, offset: usize) -> Vec<Edit> {
        (0..n)
            .map(|i| {
                let k = offset + i;
                Edit {
                    pos: Coord::new(k % 12, (k / 144) % 12, (k / 12) % 12),
                    before: AIR,
                    after: id,
                }
            })
            .collect()
    }

    #[test]
    fn torch_ratio() {
        // 100 added blocks of which 5 are torches.
        let mut edits = place(95, STONE, 0);
        edits.extend(place(5, TORCH, 95));
        let s = settlement(edits);
        let light = frequency_metric(&s, &catalog(), Category::Light).unwrap();
        assert_eq!(light, 0.05);
        // Torch is also functional, so that ratio is at least as large.
        let functional = frequency_metric(&s, &catalog(), Category::Functional).unwrap();
        assert!(functional >= 0.05);
        let food = frequency_metric(&s, &catalog(), Category::Food).unwrap();
        assert_eq!(food, 0.0);
    }

    #[test]
    fn empty_settlement_is_an_error() {
        let s = settlement(vec![]);
        assert!(matches!(
            frequency_metric(&s, &catalog(), Category::Light),
            Err(MetricError::EmptySettlement)
        ));
    }

    #[test]
    fn removals_do_not_count() {
        let mut edits = place(10, STONE, 0);
        edits.push(Edit { pos: Coord::new(11, 11, 11), before: STONE, after: AIR });
        let s = settlement(edits);
        let light = frequency_metric(&s, &catalog(), Category::Light).unwrap();
        assert_eq!(light, 0.0);
        assert_eq!(block_type_count(&s, &catalog()).unwrap(), 1);
    }

    #[test]
    fn distinct_type_count() {
        let mut edits = place(2, STONE, 0);
        edits.extend(place(1, TORCH, 2));
        edits.extend(place(1, PLANKS, 3));
        let s = settlement(edits);
        assert_eq!(block_type_count(&s, &catalog()).unwrap(), 3);
    }

    #[test]
    fn empty_changeset_counts_zero_types() {
        let s = settlement(vec![]);
        assert_eq!(block_type_count(&s, &catalog()).unwrap(), 0);
    }
}
