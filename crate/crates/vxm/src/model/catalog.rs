use std::collections::BTreeMap;
use std::fmt;

use super::{BlockTypeId, ModelError, Palette};

/// Domain categories a block may belong to. A block can be in several at
/// once (a torch is light, functional and aesthetic).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Category {
    Light,
    Defense,
    Functional,
    Aesthetic,
    Food,
}

impl Category {
    pub const ALL: [Category; 5] = [
        Category::Light,
        Category::Defense,
        Category::Functional,
        Category::Aesthetic,
        Category::Food,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Category::Light => "light",
            Category::Defense => "defense",
            Category::Functional => "functional",
            Category::Aesthetic => "aesthetic",
            Category::Food => "food",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Category::ALL.into_iter().find(|c| c.name() == name)
    }

    fn bit(self) -> u8 {
        match self {
            Category::Light => 1 << 0,
            Category::Defense => 1 << 1,
            Category::Functional => 1 << 2,
            Category::Aesthetic => 1 << 3,
            Category::Food => 1 << 4,
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Set of categories, packed into a byte.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CategorySet(u8);

impl CategorySet {
    pub const EMPTY: CategorySet = CategorySet(0);

    pub fn of(categories: &[Category]) -> Self {
        let mut s = Self::EMPTY;
        for &c in categories {
            s.insert(c);
        }
        s
    }

    pub fn insert(&mut self, c: Category) {
        self.0 |= c.bit();
    }

    #[inline]
    pub fn contains(self, c: Category) -> bool {
        self.0 & c.bit() != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Category> {
        Category::ALL.into_iter().filter(move |c| self.contains(*c))
    }
}

/// Per-block-type domain knowledge: category memberships, whether a player
/// can stand on it, whether it counts as empty space, and whether it is a
/// mined material treated as always obtainable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BlockEntry {
    pub categories: CategorySet,
    pub solid: bool,
    pub empty: bool,
    pub mined: bool,
}

/// Catalog of block entries keyed by name. Grids reference it through their
/// palette; see [`BlockFlags`].
#[derive(Debug, Clone)]
pub struct BlockCatalog {
    entries: BTreeMap<String, BlockEntry>,
}

impl BlockCatalog {
    /// Validates that empty blocks are never solid and carry no categories.
    pub fn new(entries: BTreeMap<String, BlockEntry>) -> Result<Self, ModelError> {
        for (name, entry) in &entries {
            if entry.empty && entry.solid {
                return Err(ModelError::EmptyConflict(name.clone(), "solid"));
            }
            if entry.empty && !entry.categories.is_empty() {
                return Err(ModelError::EmptyConflict(name.clone(), "categorized"));
            }
        }
        Ok(Self { entries })
    }

    pub fn get(&self, name: &str) -> Option<&BlockEntry> {
        self.entries.get(name)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in name order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &BlockEntry)> {
        self.entries.iter().map(|(n, e)| (n.as_str(), e))
    }

    /// Number of non-empty (placeable) block types.
    pub fn placeable_count(&self) -> usize {
        self.entries.values().filter(|e| !e.empty).count()
    }
}

/// Catalog entries resolved against one grid's palette, as flat id-indexed
/// tables. This is what the metric scans read: an array index per cell
/// instead of a name lookup.
#[derive(Debug, Clone)]
pub struct BlockFlags {
    solid: Vec<bool>,
    mined: Vec<bool>,
    categories: Vec<CategorySet>,
    empty_id: BlockTypeId,
}

impl BlockFlags {
    /// Resolve every palette name in the catalog. Fails on names the catalog
    /// does not know, and unless exactly one palette entry is empty (the air
    /// block).
    pub fn bind(palette: &Palette, catalog: &BlockCatalog) -> Result<Self, ModelError> {
        let n = palette.len();
        let mut solid = vec![false; n];
        let mut mined = vec![false; n];
        let mut categories = vec![CategorySet::EMPTY; n];
        let mut empty_ids = Vec::new();
        for (name, id) in palette.iter() {
            let entry = catalog
                .get(name)
                .ok_or_else(|| ModelError::UnknownBlock(name.to_string(), "catalog"))?;
            solid[id.index()] = entry.solid;
            mined[id.index()] = entry.mined;
            categories[id.index()] = entry.categories;
            if entry.empty {
                empty_ids.push(id);
            }
        }
        if empty_ids.len() != 1 {
            return Err(ModelError::EmptyCount(empty_ids.len()));
        }
        Ok(Self {
            solid,
            mined,
            categories,
            empty_id: empty_ids[0],
        })
    }

    #[inline]
    pub fn is_solid(&self, id: BlockTypeId) -> bool {
        self.solid[id.index()]
    }

    #[inline]
    pub fn is_empty_block(&self, id: BlockTypeId) -> bool {
        id == self.empty_id
    }

    #[inline]
    pub fn is_mined(&self, id: BlockTypeId) -> bool {
        self.mined[id.index()]
    }

    #[inline]
    pub fn in_category(&self, id: BlockTypeId, c: Category) -> bool {
        self.categories[id.index()].contains(c)
    }

    pub fn empty_id(&self) -> BlockTypeId {
        self.empty_id
    }

    pub fn palette_len(&self) -> usize {
        self.solid.len()
    }
}
