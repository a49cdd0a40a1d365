//! Judge score format: comma-separated with the header
//! `generator,judge,year,adaptability,functionality,narrative,aesthetic`.
//! One row per (generator, judge), category scores in [0, 10].

use super::{decode_utf8, lines, ParseError};

pub const SCORES_HEADER: &str = "generator,judge,year,adaptability,functionality,narrative,aesthetic";

/// One judge's verdict on one generator.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreRecord {
    pub generator: String,
    pub judge: String,
    pub year: i32,
    pub adaptability: f64,
    pub functionality: f64,
    pub narrative: f64,
    pub aesthetic: f64,
}

impl ScoreRecord {
    pub fn categories(&self) -> [f64; 4] {
        [self.adaptability, self.functionality, self.narrative, self.aesthetic]
    }
}

pub fn parse_scores(bytes: &[u8]) -> Result<Vec<ScoreRecord>, ParseError> {
    let text = decode_utf8(bytes)?;
    let mut rows = lines(text);
    match rows.next() {
        Some((_, line)) if line.trim() == SCORES_HEADER => {}
        Some((line_no, line)) => {
            return Err(ParseError::LineFormat {
                line: line_no,
                msg: format!("expected header {SCORES_HEADER:?}, found {line:?}"),
            })
        }
        None => {
            return Err(ParseError::LineFormat {
                line: 1,
                msg: format!("missing header {SCORES_HEADER:?}"),
            })
        }
    }

    let mut records = Vec::new();
    for (line_no, line) in rows {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(ParseError::LineFormat {
                line: line_no,
                msg: format!("expected 7 fields, found {}", fields.len()),
            });
        }
        let name = |s: &str, field: &str| -> Result<String, ParseError> {
            let s = s.trim();
            if s.is_empty() {
                return Err(ParseError::LineFormat {
                    line: line_no,
                    msg: format!("empty {field}"),
                });
            }
            Ok(s.to_string())
        };
        let year: i32 = fields[2].trim().parse().map_err(|_| ParseError::LineFormat {
            line: line_no,
            msg: format!("invalid year {:?}", fields[2]),
        })?;
        let score = |s: &str, field: &str| -> Result<f64, ParseError> {
            let s = s.trim();
            if s.is_empty() {
                return Err(ParseError::LineFormat {
                    line: line_no,
                    msg: format!("missing {field} score"),
                });
            }
            let v: f64 = s.parse().map_err(|_| ParseError::LineFormat {
                line: line_no,
                msg: format!("invalid {field} score {s:?}"),
            })?;
            if !v.is_finite() || !(0.0..=10.0).contains(&v) {
                return Err(ParseError::Range {
                    line: line_no,
                    msg: format!("{field} score {v} outside [0, 10]"),
                });
            }
            Ok(v)
        };
        records.push(ScoreRecord {
            generator: name(fields[0], "generator")?,
            judge: name(fields[1], "judge")?,
            year,
            adaptability: score(fields[3], "adaptability")?,
            functionality: score(fields[4], "functionality")?,
            narrative: score(fields[5], "narrative")?,
            aesthetic: score(fields[6], "aesthetic")?,
        });
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rows() {
        let data = b"generator,judge,year,adaptability,functionality,narrative,aesthetic\n\
                     gen_a,judge1,2020,5,6.5,7,8\n\
                     gen_a,judge2,2020,4,4,4,4\n";
        let records = parse_scores(data).unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(records[0].functionality, 6.5);
        assert_eq!(records[0].year, 2020);
    }

    #[test]
    fn score_above_ten_is_range_error() {
        let data = b"generator,judge,year,adaptability,functionality,narrative,aesthetic\n\
                     gen_a,judge1,2020,5,6,7,11\n";
        let err = parse_scores(data).unwrap_err();
        assert!(matches!(err, ParseError::Range { line: 2, .. }), "{err}");
    }

    #[test]
    fn missing_category_rejected() {
        let data = b"generator,judge,year,adaptability,functionality,narrative,aesthetic\n\
                     gen_a,judge1,2020,5,6,,8\n";
        let err = parse_scores(data).unwrap_err();
        assert!(matches!(err, ParseError::LineFormat { line: 2, .. }), "{err}");
    }

    #[test]
    fn header_required() {
        assert!(parse_scores(b"gen_a,judge1,2020,5,6,7,8\n").is_err());
    }
}
