use std::collections::HashMap;
use std::fmt;

use super::ModelError;

/// Index into a grid's palette. Plain integer on the wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockTypeId(pub u16);

impl BlockTypeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for BlockTypeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Bijective mapping between block names and the ids stored in a grid.
/// Ids are contiguous from 0.
#[derive(Debug, Clone)]
pub struct Palette {
    names: Vec<String>,
    ids: HashMap<String, BlockTypeId>,
}

impl Palette {
    /// Build a palette from (name, id) pairs. Ids must be unique and cover
    /// `0..pairs.len()`; names must be unique.
    pub fn from_pairs(pairs: Vec<(String, u16)>) -> Result<Self, ModelError> {
        let n = pairs.len();
        let mut names: Vec<Option<String>> = vec![None; n];
        let mut ids = HashMap::with_capacity(n);
        for (name, id) in pairs {
            if ids.contains_key(&name) {
                return Err(ModelError::DuplicateName(name));
            }
            let slot = names
                .get_mut(id as usize)
                .ok_or(ModelError::NonContiguousIds(id))?;
            if slot.is_some() {
                return Err(ModelError::DuplicateId(id));
            }
            *slot = Some(name.clone());
            ids.insert(name, BlockTypeId(id));
        }
        let names = names
            .into_iter()
            .enumerate()
            .map(|(i, slot)| slot.ok_or(ModelError::NonContiguousIds(i as u16)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { names, ids })
    }

    /// Palette with names assigned ids in order of appearance.
    pub fn from_names<I, S>(names: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let pairs = names
            .into_iter()
            .enumerate()
            .map(|(i, name)| (name.into(), i as u16))
            .collect();
        Self::from_pairs(pairs)
    }

    pub fn id(&self, name: &str) -> Option<BlockTypeId> {
        self.ids.get(name).copied()
    }

    pub fn name(&self, id: BlockTypeId) -> Option<&str> {
        self.names.get(id.index()).map(|s| s.as_str())
    }

    pub fn contains_id(&self, id: BlockTypeId) -> bool {
        id.index() < self.names.len()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Entries in id order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, BlockTypeId)> {
        self.names
            .iter()
            .enumerate()
            .map(|(i, name)| (name.as_str(), BlockTypeId(i as u16)))
    }
}
