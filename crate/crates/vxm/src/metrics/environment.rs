use std::collections::HashMap;

use crate::model::{BlockCatalog, BlockFlags, BlockTypeId, RecipeGraph};

use super::{frequency, MetricError, Settlement};

/// Sum of crafting-chain scores over the distinct block types placed by the
/// generator.
///
/// A crafted type contributes the number of crafted block types in its
/// ingredient closure (itself included, each counted once) — the blocks that
/// had to be crafted on the way from raw materials. It contributes 0 when
/// some ingredient is unobtainable: an ingredient counts as obtainable when
/// it is present anywhere in the final grid, is a mined material (treated as
/// always available), or can itself be crafted from obtainable ingredients.
/// Raw types contribute nothing.
pub fn relation_to_environment(
    s: &Settlement,
    catalog: &BlockCatalog,
    recipes: &RecipeGraph,
) -> Result<u32, MetricError> {
    let flags = BlockFlags::bind(s.grid().palette(), catalog)?;
    let stats = frequency::scan_changes(s, &flags);
    Ok(relation_with(s, &flags, catalog, recipes, &stats.distinct_types))
}

pub(super) fn relation_with(
    s: &Settlement,
    flags: &BlockFlags,
    catalog: &BlockCatalog,
    recipes: &RecipeGraph,
    settlement_types: &[BlockTypeId],
) -> u32 {
    if settlement_types.is_empty() {
        return 0;
    }
    // One pass over the final grid: which palette ids occur at all.
    let mut present = vec![false; flags.palette_len()];
    for &id in s.grid().cells() {
        present[id.index()] = true;
    }
    let palette = s.grid().palette();
    let in_grid = |name: &str| palette.id(name).map(|id| present[id.index()]).unwrap_or(false);
    let is_mined = |name: &str| catalog.get(name).map(|e| e.mined).unwrap_or(false);
    let resolver = Resolver {
        recipes,
        present: &in_grid,
        mined: &is_mined,
        satisfiable: std::cell::RefCell::new(HashMap::new()),
    };
    let mut score = 0u32;
    for &type_id in settlement_types {
        let name = palette.name(type_id).expect("settlement type id is in palette");
        score += resolver.contribution(name);
    }
    score
}

struct Resolver<'a> {
    recipes: &'a RecipeGraph,
    present: &'a dyn Fn(&str) -> bool,
    mined: &'a dyn Fn(&str) -> bool,
    satisfiable: std::cell::RefCell<HashMap<String, bool>>,
}

impl Resolver<'_> {
    fn contribution(&self, name: &str) -> u32 {
        if !self.recipes.is_crafted(name) {
            return 0;
        }
        let all_satisfiable = self
            .recipes
            .ingredients(name)
            .iter()
            .all(|ing| self.ingredient_satisfiable(ing));
        if !all_satisfiable {
            return 0;
        }
        self.crafted_closure_size(name)
    }

    /// Obtainable: in the grid, mined, or craftable from obtainable parts.
    /// The recipe graph is acyclic so the recursion terminates.
    fn ingredient_satisfiable(&self, name: &str) -> bool {
        if let Some(&known) = self.satisfiable.borrow().get(name) {
            return known;
        }
        let result = (self.present)(name)
            || (self.mined)(name)
            || (self.recipes.is_crafted(name)
                && self
                    .recipes
                    .ingredients(name)
                    .iter()
                    .all(|ing| self.ingredient_satisfiable(ing)));
        self.satisfiable.borrow_mut().insert(name.to_string(), result);
        result
    }

    /// Distinct crafted block types in the ingredient closure, target
    /// included.
    fn crafted_closure_size(&self, name: &str) -> u32 {
        let mut visited: Vec<&str> = Vec::new();
        let mut stack = vec![name];
        let mut crafted = 0u32;
        while let Some(node) = stack.pop() {
            if visited.contains(&node) {
                continue;
            }
            visited.push(node);
            if self.recipes.is_crafted(node) {
                crafted += 1;
                for ing in self.recipes.ingredients(node) {
                    stack.push(ing);
                }
            }
        }
        crafted
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{
        BlockEntry, ChangeSet, Coord, Edit, Palette, VoxelGrid,
    };
    use std::collections::BTreeMap;

    const AIR: BlockTypeId = BlockTypeId(0);
    const WOOD: BlockTypeId = BlockTypeId(1);
    const CHEST: BlockTypeId = BlockTypeId(2);
    const DIRT: BlockTypeId = BlockTypeId(3);
    const IRON_BARS: BlockTypeId = BlockTypeId(4);

    fn catalog(iron_mined: bool) -> BlockCatalog {
        let mut m = BTreeMap::new();
        m.insert("air".to_string(), BlockEntry { empty: true, ..Default::default() });
        for name in ["wood", "chest", "dirt", "planks", "iron_bars"] {
            m.insert(name.to_string(), BlockEntry { solid: true, ..Default::default() });
        }
        m.insert(
            "iron_ore".to_string(),
            BlockEntry { solid: true, mined: iron_mined, ..Default::default() },
        );
        BlockCatalog::new(m).unwrap()
    }

    fn recipes(catalog: &BlockCatalog) -> RecipeGraph {
        let mut entries = BTreeMap::new();
        entries.insert("chest".to_string(), vec!["planks".to_string()]);
        entries.insert("planks".to_string(), vec!["wood".to_string()]);
        entries.insert("iron_bars".to_string(), vec!["iron_ore".to_string()]);
        RecipeGraph::new(entries, catalog).unwrap()
    }

    /// Grid with the given environment blocks plus the placed settlement
    /// blocks, each settlement block recorded as an edit.
    fn settlement(environment: &[BlockTypeId], placed: &[BlockTypeId]) -> Settlement {
        let palette =
            Palette::from_names(["air", "wood", "chest", "dirt", "iron_bars", "iron_ore"]).unwrap();
        let mut cells = vec![AIR; 8 * 8 * 8];
        for (i, &id) in environment.iter().enumerate() {
            cells[i] = id;
        }
        let mut edits = Vec::new();
        for (i, &id) in placed.iter().enumerate() {
            cells[64 + i] = id; // layer y=1, away from the environment row
            edits.push(Edit {
                pos: Coord::new(i % 8, 1, i / 8),
                before: AIR,
                after: id,
            });
        }
        let grid = VoxelGrid::new(8, 8, 8, cells, palette).unwrap();
        let changes = ChangeSet::from_edits(edits, &grid).unwrap();
        let bbox = grid.bounds();
        Settlement::new(grid, changes, bbox, "test", 0).unwrap()
    }

    #[test]
    fn chest_with_wood_scores_two() {
        let cat = catalog(false);
        let s = settlement(&[WOOD], &[CHEST]);
        assert_eq!(relation_to_environment(&s, &cat, &recipes(&cat)).unwrap(), 2);
    }

    #[test]
    fn raw_blocks_score_zero() {
        let cat = catalog(false);
        let s = settlement(&[], &[DIRT, DIRT, DIRT]);
        assert_eq!(relation_to_environment(&s, &cat, &recipes(&cat)).unwrap(), 0);
    }

    #[test]
    fn chest_without_wood_scores_zero() {
        let cat = catalog(false);
        let s = settlement(&[], &[CHEST]);
        assert_eq!(relation_to_environment(&s, &cat, &recipes(&cat)).unwrap(), 0);
    }

    #[test]
    fn mined_ingredient_is_always_available() {
        // No iron ore anywhere in the grid.
        let cat = catalog(true);
        let s = settlement(&[], &[IRON_BARS]);
        assert_eq!(relation_to_environment(&s, &cat, &recipes(&cat)).unwrap(), 1);
        // Without the mined flag the ingredient is unobtainable.
        let cat = catalog(false);
        let s = settlement(&[], &[IRON_BARS]);
        assert_eq!(relation_to_environment(&s, &cat, &recipes(&cat)).unwrap(), 0);
    }

    #[test]
    fn intermediate_presence_satisfies() {
        // Planks in the environment, no wood: chest still craftable, still
        // counts its whole chain.
        let palette =
            Palette::from_names(["air", "wood", "chest", "dirt", "iron_bars", "iron_ore", "planks"])
                .unwrap();
        let mut cells = vec![AIR; 8 * 8 * 8];
        cells[0] = BlockTypeId(6); // planks
        cells[64] = CHEST;
        let grid = VoxelGrid::new(8, 8, 8, cells, palette).unwrap();
        let edits = vec![Edit { pos: Coord::new(0, 1, 0), before: AIR, after: CHEST }];
        let changes = ChangeSet::from_edits(edits, &grid).unwrap();
        let bbox = grid.bounds();
        let s = Settlement::new(grid, changes, bbox, "test", 0).unwrap();
        let cat = catalog(false);
        assert_eq!(relation_to_environment(&s, &cat, &recipes(&cat)).unwrap(), 2);
    }

    #[test]
    fn types_counted_once_regardless_of_quantity() {
        let cat = catalog(false);
        let s = settlement(&[WOOD], &[CHEST, CHEST, CHEST]);
        assert_eq!(relation_to_environment(&s, &cat, &recipes(&cat)).unwrap(), 2);
    }
}
