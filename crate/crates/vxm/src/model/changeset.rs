use std::collections::HashMap;

use super::{BlockFlags, BlockTypeId, Coord, ModelError, VoxelGrid};

/// One generator edit: the block at `pos` went from `before` to `after`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edit {
    pub pos: Coord,
    pub before: BlockTypeId,
    pub after: BlockTypeId,
}

/// Ordered record of generator edits. Together with the surrounding terrain
/// grid this defines the settlement: "added blocks" are the edits whose
/// final state is non-empty.
///
/// At most one edit is kept per coordinate; when the raw log touches a
/// coordinate several times only the final record is observable, so the last
/// edit wins and the collapse count is reported.
#[derive(Debug, Clone, Default)]
pub struct ChangeSet {
    edits: Vec<Edit>,
    collapsed: usize,
}

impl ChangeSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Validate raw edits against a grid (bounds and palette ids) and
    /// collapse duplicates, last write winning. Edit order follows the first
    /// occurrence of each coordinate.
    pub fn from_edits(raw: Vec<Edit>, grid: &VoxelGrid) -> Result<Self, ModelError> {
        let mut edits: Vec<Edit> = Vec::with_capacity(raw.len());
        let mut slot_of: HashMap<usize, usize> = HashMap::with_capacity(raw.len());
        let mut collapsed = 0usize;
        for edit in raw {
            let Coord { x, y, z } = edit.pos;
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
            for id in [edit.before, edit.after] {
                if !grid.palette().contains_id(id) {
                    return Err(ModelError::UnknownId(id.0));
                }
            }
            let key = grid.linear_index(x, y, z);
            match slot_of.get(&key) {
                Some(&slot) => {
                    edits[slot] = edit;
                    collapsed += 1;
                }
                None => {
                    slot_of.insert(key, edits.len());
                    edits.push(edit);
                }
            }
        }
        Ok(Self { edits, collapsed })
    }

    pub fn edits(&self) -> &[Edit] {
        &self.edits
    }

    /// How many raw records were dropped by last-write collapsing.
    pub fn collapsed_duplicates(&self) -> usize {
        self.collapsed
    }

    pub fn len(&self) -> usize {
        self.edits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edits.is_empty()
    }

    /// Edits whose final state is a real block. Pure removals (`after` is
    /// the empty block) are not part of any metric numerator or denominator.
    pub fn added<'a>(&'a self, flags: &'a BlockFlags) -> impl Iterator<Item = &'a Edit> {
        self.edits.iter().filter(|e| !flags.is_empty_block(e.after))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{BlockCatalog, BlockEntry, CategorySet, Palette};
    use std::collections::BTreeMap;

    fn grid() -> VoxelGrid {
        let palette = Palette::from_names(["air", "stone"]).unwrap();
        VoxelGrid::filled(4, 4, 4, BlockTypeId(0), palette).unwrap()
    }

    fn flags(grid: &VoxelGrid) -> BlockFlags {
        let mut m = BTreeMap::new();
        m.insert(
            "air".to_string(),
            BlockEntry { empty: true, ..Default::default() },
        );
        m.insert(
            "stone".to_string(),
            BlockEntry { solid: true, ..Default::default() },
        );
        let catalog = BlockCatalog::new(m).unwrap();
        let _ = CategorySet::EMPTY;
        BlockFlags::bind(grid.palette(), &catalog).unwrap()
    }

    fn edit(x: usize, y: usize, z: usize, before: u16, after: u16) -> Edit {
        Edit {
            pos: Coord::new(x, y, z),
            before: BlockTypeId(before),
            after: BlockTypeId(after),
        }
    }

    #[test]
    fn empty_input_is_empty() {
        let cs = ChangeSet::from_edits(vec![], &grid()).unwrap();
        assert!(cs.is_empty());
        assert_eq!(cs.collapsed_duplicates(), 0);
    }

    #[test]
    fn last_write_wins() {
        let cs = ChangeSet::from_edits(
            vec![edit(1, 1, 1, 0, 1), edit(1, 1, 1, 1, 0)],
            &grid(),
        )
        .unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs.edits()[0].after, BlockTypeId(0));
        assert_eq!(cs.collapsed_duplicates(), 1);
    }

    #[test]
    fn out_of_bounds_edit_rejected() {
        let err = ChangeSet::from_edits(vec![edit(4, 0, 0, 0, 1)], &grid());
        assert!(matches!(err, Err(ModelError::OutOfBounds { x: 4, .. })));
    }

    #[test]
    fn added_excludes_removals() {
        let g = grid();
        let cs = ChangeSet::from_edits(
            vec![edit(0, 0, 0, 0, 1), edit(1, 0, 0, 1, 0), edit(2, 0, 0, 0, 1)],
            &g,
        )
        .unwrap();
        let f = flags(&g);
        assert_eq!(cs.added(&f).count(), 2);
    }
}
