//! Embedded default block catalog and recipe graph for game version 1.12.2:
//! the air block plus 252 placeable block types, with category labels,
//! standability, and the mined-material flag, and a block-level crafting
//! graph. Callers may always supply their own files instead.

use std::sync::OnceLock;

use crate::io;
use crate::model::{BlockCatalog, RecipeGraph};

const CATALOG_TEXT: &str = include_str!("../data/catalog-1.12.2.csv");
const RECIPES_TEXT: &str = include_str!("../data/recipes-1.12.2.csv");

pub fn catalog() -> &'static BlockCatalog {
    static CATALOG: OnceLock<BlockCatalog> = OnceLock::new();
    CATALOG.get_or_init(|| {
        io::parse_catalog(CATALOG_TEXT.as_bytes()).expect("embedded catalog is valid")
    })
}

pub fn recipes() -> &'static RecipeGraph {
    static RECIPES: OnceLock<RecipeGraph> = OnceLock::new();
    RECIPES.get_or_init(|| {
        io::parse_recipes(RECIPES_TEXT.as_bytes(), catalog()).expect("embedded recipes are valid")
    })
}

pub fn catalog_text() -> &'static str {
    CATALOG_TEXT
}

pub fn recipes_text() -> &'static str {
    RECIPES_TEXT
}
