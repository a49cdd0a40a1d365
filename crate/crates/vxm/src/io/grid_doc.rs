//! The grid snapshot document: a JSON object with fields `format` ("vxl"),
//! `version` (1), `size` ({x, y, z}), `palette` (name → id, ids contiguous
//! from 0) and `blocks` (run-length pairs `[id, run]` covering the cells in
//! canonical linear order, ascending y, then z, then x).
//!
//! The air-heavy grids compress well under RLE and the text stays
//! inspectable and diffable. The serializer is canonical: fixed field
//! order, palette sorted by id, maximal runs, one run per line.

use std::fmt::Write as _;

use crate::model::{BlockTypeId, Palette, VoxelGrid};

use super::reader::Reader;
use super::{ParseError, TextPos};

/// Largest accepted cell count; keeps a hostile header from allocating
/// unbounded memory before the block stream is even read.
const MAX_CELLS: u64 = 1 << 28;

pub fn parse_grid(bytes: &[u8]) -> Result<VoxelGrid, ParseError> {
    let mut r = Reader::new(bytes);

    let mut format_tag: Option<String> = None;
    let mut version: Option<u64> = None;
    let mut size: Option<(u64, u64, u64)> = None;
    let mut palette: Option<(Palette, TextPos)> = None;
    let mut blocks: Option<(Vec<BlockTypeId>, TextPos)> = None;
    let mut volume: Option<u64> = None;

    let doc_pos = {
        r.skip_ws();
        r.pos()
    };

    r.parse_object(|r, key, key_pos| {
        let duplicate = |field: &str| ParseError::Format {
            pos: key_pos,
            msg: format!("duplicate field {field:?}"),
        };
        match key.as_str() {
            "format" => {
                if format_tag.is_some() {
                    return Err(duplicate("format"));
                }
                let pos = {
                    r.skip_ws();
                    r.pos()
                };
                let tag = r.parse_string()?;
                if tag != "vxl" {
                    return Err(ParseError::Format {
                        pos,
                        msg: format!("unsupported format tag {tag:?}, expected \"vxl\""),
                    });
                }
                format_tag = Some(tag);
            }
            "version" => {
                if version.is_some() {
                    return Err(duplicate("version"));
                }
                let pos = {
                    r.skip_ws();
                    r.pos()
                };
                let v = r.parse_uint()?;
                if v != 1 {
                    return Err(ParseError::Format {
                        pos,
                        msg: format!("unsupported version {v}, expected 1"),
                    });
                }
                version = Some(v);
            }
            "size" => {
                if size.is_some() {
                    return Err(duplicate("size"));
                }
                let (dims, pos) = parse_size(r)?;
                let vol = dims.0.checked_mul(dims.1).and_then(|v| v.checked_mul(dims.2));
                match vol {
                    Some(v) if v <= MAX_CELLS => volume = Some(v),
                    _ => {
                        return Err(ParseError::Format {
                            pos,
                            msg: format!(
                                "grid volume {}x{}x{} exceeds the supported maximum of {MAX_CELLS} cells",
                                dims.0, dims.1, dims.2
                            ),
                        })
                    }
                }
                size = Some(dims);
            }
            "palette" => {
                if palette.is_some() {
                    return Err(duplicate("palette"));
                }
                r.skip_ws();
                let pos = r.pos();
                palette = Some((parse_palette(r)?, pos));
            }
            "blocks" => {
                if blocks.is_some() {
                    return Err(duplicate("blocks"));
                }
                let (palette, _) = palette.as_ref().ok_or(ParseError::Format {
                    pos: key_pos,
                    msg: "\"blocks\" must come after \"palette\"".to_string(),
                })?;
                let expected = volume.ok_or(ParseError::Format {
                    pos: key_pos,
                    msg: "\"blocks\" must come after \"size\"".to_string(),
                })?;
                r.skip_ws();
                let pos = r.pos();
                blocks = Some((parse_blocks(r, palette, expected)?, pos));
            }
            other => {
                return Err(ParseError::Format {
                    pos: key_pos,
                    msg: format!("unknown field {other:?}"),
                })
            }
        }
        Ok(())
    })?;
    r.expect_end()?;

    let missing = |field: &str| ParseError::Format {
        pos: doc_pos,
        msg: format!("missing field {field:?}"),
    };
    format_tag.ok_or_else(|| missing("format"))?;
    version.ok_or_else(|| missing("version"))?;
    let (sx, sy, sz) = size.ok_or_else(|| missing("size"))?;
    let (palette, palette_pos) = palette.ok_or_else(|| missing("palette"))?;
    let (cells, _) = blocks.ok_or_else(|| missing("blocks"))?;

    VoxelGrid::new(sx as usize, sy as usize, sz as usize, cells, palette).map_err(|e| {
        ParseError::Format { pos: palette_pos, msg: e.to_string() }
    })
}

fn parse_size(r: &mut Reader) -> Result<((u64, u64, u64), TextPos), ParseError> {
    r.skip_ws();
    let obj_pos = r.pos();
    let mut dims: [Option<u64>; 3] = [None, None, None];
    r.parse_object(|r, key, key_pos| {
        let slot = match key.as_str() {
            "x" => 0,
            "y" => 1,
            "z" => 2,
            other => {
                return Err(ParseError::Format {
                    pos: key_pos,
                    msg: format!("unknown size field {other:?}"),
                })
            }
        };
        if dims[slot].is_some() {
            return Err(ParseError::Format {
                pos: key_pos,
                msg: format!("duplicate size field {:?}", key),
            });
        }
        r.skip_ws();
        let pos = r.pos();
        let v = r.parse_uint()?;
        if v == 0 {
            return Err(ParseError::Format {
                pos,
                msg: "grid dimensions must be positive".to_string(),
            });
        }
        dims[slot] = Some(v);
        Ok(())
    })?;
    match dims {
        [Some(x), Some(y), Some(z)] => Ok(((x, y, z), obj_pos)),
        _ => Err(ParseError::Format {
            pos: obj_pos,
            msg: "size must declare x, y and z".to_string(),
        }),
    }
}

fn parse_palette(r: &mut Reader) -> Result<Palette, ParseError> {
    r.skip_ws();
    let obj_pos = r.pos();
    let mut entries: Vec<(String, u16, TextPos)> = Vec::new();
    r.parse_object(|r, name, key_pos| {
        if entries.iter().any(|(n, _, _)| *n == name) {
            return Err(ParseError::Palette {
                pos: key_pos,
                msg: format!("duplicate palette name {name:?}"),
            });
        }
        r.skip_ws();
        let id_pos = r.pos();
        let id = r.parse_uint()?;
        if id > u16::MAX as u64 {
            return Err(ParseError::Palette {
                pos: id_pos,
                msg: format!("palette id {id} exceeds the maximum of {}", u16::MAX),
            });
        }
        if let Some((other, _, _)) = entries.iter().find(|(_, i, _)| *i as u64 == id) {
            return Err(ParseError::Palette {
                pos: id_pos,
                msg: format!("palette id {id} already assigned to {other:?}"),
            });
        }
        entries.push((name, id as u16, key_pos));
        Ok(())
    })?;
    let pairs = entries.iter().map(|(n, i, _)| (n.clone(), *i)).collect();
    Palette::from_pairs(pairs).map_err(|e| ParseError::Palette {
        pos: obj_pos,
        msg: e.to_string(),
    })
}

fn parse_blocks(
    r: &mut Reader,
    palette: &Palette,
    expected: u64,
) -> Result<Vec<BlockTypeId>, ParseError> {
    let mut cells: Vec<BlockTypeId> = Vec::with_capacity(expected as usize);
    let mut end_pos = r.pos();
    r.parse_array(|r, run_pos| {
        r.expect(b'[')?;
        let id = r.parse_uint()?;
        r.expect(b',')?;
        let run = r.parse_uint()?;
        r.expect(b']')?;
        if id > u16::MAX as u64 || !palette.contains_id(BlockTypeId(id as u16)) {
            return Err(ParseError::Format {
                pos: run_pos,
                msg: format!("block id {id} is not in the palette"),
            });
        }
        if run == 0 {
            return Err(ParseError::Format {
                pos: run_pos,
                msg: "run length must be positive".to_string(),
            });
        }
        let new_len = cells.len() as u64 + run;
        if new_len > expected {
            return Err(ParseError::Length {
                pos: run_pos,
                msg: format!(
                    "run of {run} overruns the grid: {new_len} cells, size declares {expected}"
                ),
            });
        }
        cells.extend(std::iter::repeat_n(BlockTypeId(id as u16), run as usize));
        end_pos = r.pos();
        Ok(())
    })?;
    if (cells.len() as u64) < expected {
        return Err(ParseError::Length {
            pos: end_pos,
            msg: format!(
                "block stream ends at {} cells, size declares {expected}",
                cells.len()
            ),
        });
    }
    Ok(cells)
}

/// Canonical text form of a grid. `parse_grid(serialize_grid(g))` restores
/// `g` exactly, and serializing again yields identical bytes.
pub fn serialize_grid(grid: &VoxelGrid) -> String {
    let mut out = String::new();
    out.push_str("{\n  \"format\": \"vxl\",\n  \"version\": 1,\n");
    let _ = writeln!(
        out,
        "  \"size\": {{ \"x\": {}, \"y\": {}, \"z\": {} }},",
        grid.size_x(),
        grid.size_y(),
        grid.size_z()
    );
    out.push_str("  \"palette\": {\n");
    let n = grid.palette().len();
    for (name, id) in grid.palette().iter() {
        let _ = write!(out, "    {}: {}", escape_string(name), id.0);
        out.push_str(if id.index() + 1 < n { ",\n" } else { "\n" });
    }
    out.push_str("  },\n  \"blocks\": [\n");
    let mut runs: Vec<(u16, u64)> = Vec::new();
    for &cell in grid.cells() {
        match runs.last_mut() {
            Some((id, run)) if *id == cell.0 => *run += 1,
            _ => runs.push((cell.0, 1)),
        }
    }
    for (i, (id, run)) in runs.iter().enumerate() {
        let _ = write!(out, "    [{id}, {run}]");
        out.push_str(if i + 1 < runs.len() { ",\n" } else { "\n" });
    }
    out.push_str("  ]\n}\n");
    out
}

fn escape_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
