//! Changeset format: one edit per line, `x,y,z,before,after`, ids from the
//! grid's palette. Streamable and order-preserving, so last-write collapsing
//! behaves like replaying the generator's log.

use crate::model::{BlockTypeId, ChangeSet, Coord, Edit, VoxelGrid};

use super::{decode_utf8, lines, ParseError};

pub fn parse_changeset(bytes: &[u8], grid: &VoxelGrid) -> Result<ChangeSet, ParseError> {
    let text = decode_utf8(bytes)?;
    let mut raw = Vec::new();
    for (line_no, line) in lines(text) {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(ParseError::LineFormat {
                line: line_no,
                msg: format!("expected 5 fields x,y,z,before,after, found {}", fields.len()),
            });
        }
        let coord = |s: &str, name: &str| -> Result<usize, ParseError> {
            s.trim().parse().map_err(|_| ParseError::LineFormat {
                line: line_no,
                msg: format!("invalid {name} coordinate {s:?}"),
            })
        };
        let block = |s: &str, name: &str| -> Result<BlockTypeId, ParseError> {
            let id: u16 = s.trim().parse().map_err(|_| ParseError::LineFormat {
                line: line_no,
                msg: format!("invalid {name} block id {s:?}"),
            })?;
            if !grid.palette().contains_id(BlockTypeId(id)) {
                return Err(ParseError::UnknownBlock {
                    line: line_no,
                    name: format!("id {id}"),
                });
            }
            Ok(BlockTypeId(id))
        };
        let (x, y, z) = (coord(fields[0], "x")?, coord(fields[1], "y")?, coord(fields[2], "z")?);
        if !grid.in_bounds(x, y, z) {
            return Err(ParseError::Bounds {
                line: line_no,
                msg: format!(
                    "edit at ({x}, {y}, {z}) outside grid of size {}x{}x{}",
                    grid.size_x(),
                    grid.size_y(),
                    grid.size_z()
                ),
            });
        }
        raw.push(Edit {
            pos: Coord::new(x, y, z),
            before: block(fields[3], "before")?,
            after: block(fields[4], "after")?,
        });
    }
    // Bounds and ids were checked per line, so this cannot fail.
    Ok(ChangeSet::from_edits(raw, grid).expect("edits validated line by line"))
}

/// Canonical text form: one `x,y,z,before,after` line per edit.
pub fn serialize_changeset(changes: &ChangeSet) -> String {
    let mut out = String::new();
    for edit in changes.edits() {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            edit.pos.x, edit.pos.y, edit.pos.z, edit.before.0, edit.after.0
        ));
    }
    out
}
