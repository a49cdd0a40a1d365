//! Catalog format: `name,categories,solid,empty,mined` with a header line,
//! categories pipe-separated. Recipe format: `block,ingredients` with a
//! header line, ingredients pipe-separated, empty for raw blocks.

use std::collections::BTreeMap;

use crate::model::{BlockCatalog, BlockEntry, Category, CategorySet, ModelError, RecipeGraph};

use super::{decode_utf8, lines, ParseError};

pub const CATALOG_HEADER: &str = "name,categories,solid,empty,mined";
pub const RECIPES_HEADER: &str = "block,ingredients";

pub fn parse_catalog(bytes: &[u8]) -> Result<BlockCatalog, ParseError> {
    let text = decode_utf8(bytes)?;
    let mut rows = lines(text);
    expect_header(rows.next(), CATALOG_HEADER)?;

    let mut entries: BTreeMap<String, BlockEntry> = BTreeMap::new();
    let mut line_of: BTreeMap<String, usize> = BTreeMap::new();
    for (line_no, line) in rows {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(ParseError::LineFormat {
                line: line_no,
                msg: format!("expected 5 fields, found {}", fields.len()),
            });
        }
        let name = fields[0].trim();
        if name.is_empty() || name.contains('|') {
            return Err(ParseError::LineFormat {
                line: line_no,
                msg: format!("invalid block name {name:?}"),
            });
        }
        if entries.contains_key(name) {
            return Err(ParseError::LineFormat {
                line: line_no,
                msg: format!("duplicate block name {name:?}"),
            });
        }
        let mut categories = CategorySet::EMPTY;
        for cat in fields[1].split('|').map(str::trim).filter(|c| !c.is_empty()) {
            match Category::from_name(cat) {
                Some(c) => categories.insert(c),
                None => {
                    return Err(ParseError::LineFormat {
                        line: line_no,
                        msg: format!("unknown category {cat:?}"),
                    })
                }
            }
        }
        let flag = |s: &str, field: &str| match s.trim() {
            "0" => Ok(false),
            "1" => Ok(true),
            other => Err(ParseError::LineFormat {
                line: line_no,
                msg: format!("{field} must be 0 or 1, found {other:?}"),
            }),
        };
        entries.insert(
            name.to_string(),
            BlockEntry {
                categories,
                solid: flag(fields[2], "solid")?,
                empty: flag(fields[3], "empty")?,
                mined: flag(fields[4], "mined")?,
            },
        );
        line_of.insert(name.to_string(), line_no);
    }

    BlockCatalog::new(entries).map_err(|e| match &e {
        ModelError::EmptyConflict(name, _) => ParseError::LineFormat {
            line: line_of.get(name).copied().unwrap_or(1),
            msg: e.to_string(),
        },
        _ => ParseError::LineFormat { line: 1, msg: e.to_string() },
    })
}

pub fn parse_recipes(bytes: &[u8], catalog: &BlockCatalog) -> Result<RecipeGraph, ParseError> {
    let text = decode_utf8(bytes)?;
    let mut rows = lines(text);
    expect_header(rows.next(), RECIPES_HEADER)?;

    let mut entries: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut line_of: BTreeMap<String, usize> = BTreeMap::new();
    for (line_no, line) in rows {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 2 {
            return Err(ParseError::LineFormat {
                line: line_no,
                msg: format!("expected 2 fields block,ingredients, found {}", fields.len()),
            });
        }
        let block = fields[0].trim();
        if block.is_empty() {
            return Err(ParseError::LineFormat {
                line: line_no,
                msg: "empty block name".to_string(),
            });
        }
        if entries.contains_key(block) {
            return Err(ParseError::LineFormat {
                line: line_no,
                msg: format!("duplicate recipe for {block:?}"),
            });
        }
        if catalog.get(block).is_none() {
            return Err(ParseError::UnknownBlock { line: line_no, name: format!("{block:?}") });
        }
        let mut ingredients = Vec::new();
        for ing in fields[1].split('|').map(str::trim).filter(|c| !c.is_empty()) {
            if catalog.get(ing).is_none() {
                return Err(ParseError::UnknownBlock { line: line_no, name: format!("{ing:?}") });
            }
            ingredients.push(ing.to_string());
        }
        entries.insert(block.to_string(), ingredients);
        line_of.insert(block.to_string(), line_no);
    }

    RecipeGraph::new(entries, catalog).map_err(|e| match e {
        ModelError::RecipeCycle(cycle) => {
            let line = cycle
                .iter()
                .filter_map(|n| line_of.get(n))
                .min()
                .copied()
                .unwrap_or(1);
            ParseError::Cycle { line, cycle }
        }
        other => ParseError::LineFormat { line: 1, msg: other.to_string() },
    })
}

fn expect_header(row: Option<(usize, &str)>, expected: &str) -> Result<(), ParseError> {
    match row {
        Some((_, line)) if line.trim() == expected => Ok(()),
        Some((line_no, line)) => Err(ParseError::LineFormat {
            line: line_no,
            msg: format!("expected header {expected:?}, found {line:?}"),
        }),
        None => Err(ParseError::LineFormat {
            line: 1,
            msg: format!("missing header {expected:?}"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_catalog() -> BlockCatalog {
        parse_catalog(
            b"name,categories,solid,empty,mined\n\
              air,,0,1,0\n\
              wood,,1,0,0\n\
              planks,,1,0,0\n\
              chest,functional,1,0,0\n\
              torch,light|functional|aesthetic,0,0,0\n",
        )
        .unwrap()
    }

    #[test]
    fn catalog_parses_flags_and_categories() {
        let cat = small_catalog();
        assert_eq!(cat.len(), 5);
        let torch = cat.get("torch").unwrap();
        assert!(torch.categories.contains(Category::Light));
        assert!(torch.categories.contains(Category::Aesthetic));
        assert!(!torch.solid);
        let air = cat.get("air").unwrap();
        assert!(air.empty);
        assert_eq!(cat.placeable_count(), 4);
    }

    #[test]
    fn catalog_rejects_unknown_category() {
        let err = parse_catalog(b"name,categories,solid,empty,mined\nx,shiny,1,0,0\n").unwrap_err();
        assert!(matches!(err, ParseError::LineFormat { line: 2, .. }), "{err}");
    }

    #[test]
    fn catalog_rejects_solid_empty_block() {
        let err = parse_catalog(b"name,categories,solid,empty,mined\nvoid,,1,1,0\n").unwrap_err();
        assert!(matches!(err, ParseError::LineFormat { line: 2, .. }), "{err}");
    }

    #[test]
    fn catalog_rejects_wrong_header() {
        let err = parse_catalog(b"block,category\n").unwrap_err();
        assert!(matches!(err, ParseError::LineFormat { line: 1, .. }));
    }

    #[test]
    fn recipes_chain_parses() {
        let cat = small_catalog();
        let recipes = parse_recipes(
            b"block,ingredients\nchest,planks\nplanks,wood\nwood,\n",
            &cat,
        )
        .unwrap();
        assert!(recipes.is_crafted("chest"));
        assert!(!recipes.is_crafted("wood"));
    }

    #[test]
    fn recipe_cycle_names_the_cycle() {
        let cat = small_catalog();
        let err = parse_recipes(b"block,ingredients\nwood,planks\nplanks,wood\n", &cat).unwrap_err();
        match err {
            ParseError::Cycle { line, cycle } => {
                assert_eq!(line, 2); // first participating definition
                assert!(cycle.contains(&"wood".to_string()));
                assert!(cycle.contains(&"planks".to_string()));
            }
            other => panic!("expected cycle error, got {other}"),
        }
    }

    #[test]
    fn recipe_unknown_ingredient() {
        let cat = small_catalog();
        let err = parse_recipes(b"block,ingredients\nchest,iron\n", &cat).unwrap_err();
        assert!(matches!(err, ParseError::UnknownBlock { line: 2, .. }), "{err}");
    }
}
