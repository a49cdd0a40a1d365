use std::collections::BTreeMap;

use super::{BlockCatalog, ModelError};

/// Directed acyclic crafting dependencies: each block name maps to the block
/// types consumed to craft it. An absent or empty ingredient list marks a
/// raw, naturally occurring block.
#[derive(Debug, Clone, Default)]
pub struct RecipeGraph {
    ingredients: BTreeMap<String, Vec<String>>,
}

impl RecipeGraph {
    /// Validate that every name resolves in the catalog and that the graph
    /// is acyclic. The cycle error names the offending chain.
    pub fn new(
        entries: BTreeMap<String, Vec<String>>,
        catalog: &BlockCatalog,
    ) -> Result<Self, ModelError> {
        for (block, ingredients) in &entries {
            if catalog.get(block).is_none() {
                return Err(ModelError::UnknownBlock(block.clone(), "catalog"));
            }
            for ing in ingredients {
                if catalog.get(ing).is_none() {
                    return Err(ModelError::UnknownBlock(ing.clone(), "catalog"));
                }
            }
        }
        let graph = Self { ingredients: entries };
        graph.check_acyclic()?;
        Ok(graph)
    }

    fn check_acyclic(&self) -> Result<(), ModelError> {
        // Iterative DFS, three-color. 0 = unvisited, 1 = on stack, 2 = done.
        let mut state: BTreeMap<&str, u8> = BTreeMap::new();
        for start in self.ingredients.keys() {
            if state.get(start.as_str()).copied().unwrap_or(0) != 0 {
                continue;
            }
            let mut path: Vec<&str> = vec![start];
            let mut cursors: Vec<usize> = vec![0];
            state.insert(start, 1);
            while let Some(&node) = path.last() {
                let children = self.ingredients(node);
                let cursor = cursors.last_mut().unwrap();
                if *cursor < children.len() {
                    let child = children[*cursor].as_str();
                    *cursor += 1;
                    match state.get(child).copied().unwrap_or(0) {
                        0 => {
                            state.insert(child, 1);
                            path.push(child);
                            cursors.push(0);
                        }
                        1 => {
                            let from = path.iter().position(|&n| n == child).unwrap_or(0);
                            let mut cycle: Vec<String> =
                                path[from..].iter().map(|s| s.to_string()).collect();
                            cycle.push(child.to_string());
                            return Err(ModelError::RecipeCycle(cycle));
                        }
                        _ => {}
                    }
                } else {
                    state.insert(node, 2);
                    path.pop();
                    cursors.pop();
                }
            }
        }
        Ok(())
    }

    /// Ingredient list for a block; empty for raw blocks and unknown names.
    pub fn ingredients(&self, block: &str) -> &[String] {
        self.ingredients
            .get(block)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    /// A block is crafted when it has at least one ingredient.
    pub fn is_crafted(&self, block: &str) -> bool {
        !self.ingredients(block).is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[String])> {
        self.ingredients.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }
}
