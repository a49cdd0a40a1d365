//! Pull reader for the JSON-shaped grid documents, tracking byte offsets and
//! line/column so every fault can be located exactly. Detects duplicate
//! object keys, which the grid format forbids.

use super::{ParseError, TextPos};

pub(super) struct Reader<'a> {
    bytes: &'a [u8],
    offset: usize,
    line: usize,
    column: usize,
}

impl<'a> Reader<'a> {
    pub fn new(bytes: &'a [u8]) -> Self {
        Self { bytes, offset: 0, line: 1, column: 1 }
    }

    pub fn pos(&self) -> TextPos {
        TextPos { offset: self.offset, line: self.line, column: self.column }
    }

    pub fn format_err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Format { pos: self.pos(), msg: msg.into() }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.offset).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.offset += 1;
        if b == b'\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(b)
    }

    pub fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\r' | b'\n')) {
            self.bump();
        }
    }

    pub fn expect(&mut self, byte: u8) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b) if b == byte => {
                self.bump();
                Ok(())
            }
            Some(b) => Err(self.format_err(format!(
                "expected {:?}, found {:?}",
                byte as char, b as char
            ))),
            None => Err(self.format_err(format!("expected {:?}, found end of input", byte as char))),
        }
    }

    /// Consume the byte if present (after whitespace).
    pub fn eat(&mut self, byte: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(byte) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect_end(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(b) => Err(self.format_err(format!("trailing content starting with {:?}", b as char))),
        }
    }

    /// JSON string with the full escape set.
    pub fn parse_string(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        if self.peek() != Some(b'"') {
            return Err(self.format_err("expected string"));
        }
        self.bump();
        let mut out = String::new();
        loop {
            let start = self.pos();
            match self.bump() {
                None => return Err(ParseError::Format { pos: start, msg: "unterminated string".into() }),
                Some(b'"') => return Ok(out),
                Some(b'\\') => match self.bump() {
                    Some(b'"') => out.push('"'),
                    Some(b'\\') => out.push('\\'),
                    Some(b'/') => out.push('/'),
                    Some(b'b') => out.push('\u{8}'),
                    Some(b'f') => out.push('\u{c}'),
                    Some(b'n') => out.push('\n'),
                    Some(b'r') => out.push('\r'),
                    Some(b't') => out.push('\t'),
                    Some(b'u') => {
                        let hi = self.parse_hex4(start)?;
                        let ch = if (0xD800..0xDC00).contains(&hi) {
                            // Surrogate pair.
                            if self.bump() != Some(b'\\') || self.bump() != Some(b'u') {
                                return Err(ParseError::Format {
                                    pos: start,
                                    msg: "unpaired surrogate escape".into(),
                                });
                            }
                            let lo = self.parse_hex4(start)?;
                            if !(0xDC00..0xE000).contains(&lo) {
                                return Err(ParseError::Format {
                                    pos: start,
                                    msg: "invalid low surrogate".into(),
                                });
                            }
                            let code = 0x10000 + ((hi - 0xD800) << 10) + (lo - 0xDC00);
                            char::from_u32(code)
                        } else {
                            char::from_u32(hi)
                        };
                        out.push(ch.ok_or_else(|| ParseError::Format {
                            pos: start,
                            msg: "escape is not a valid character".into(),
                        })?);
                    }
                    _ => {
                        return Err(ParseError::Format {
                            pos: start,
                            msg: "invalid escape sequence".into(),
                        })
                    }
                },
                Some(b) if b < 0x20 => {
                    return Err(ParseError::Format {
                        pos: start,
                        msg: "unescaped control character in string".into(),
                    })
                }
                Some(b) if b < 0x80 => out.push(b as char),
                Some(b) => {
                    // Re-decode the multi-byte UTF-8 sequence.
                    let len = match b {
                        0xC0..=0xDF => 2,
                        0xE0..=0xEF => 3,
                        0xF0..=0xF7 => 4,
                        _ => {
                            return Err(ParseError::Format {
                                pos: start,
                                msg: "invalid UTF-8 in string".into(),
                            })
                        }
                    };
                    let mut buf = vec![b];
                    for _ in 1..len {
                        buf.push(self.bump().ok_or_else(|| ParseError::Format {
                            pos: start,
                            msg: "truncated UTF-8 in string".into(),
                        })?);
                    }
                    let s = std::str::from_utf8(&buf).map_err(|_| ParseError::Format {
                        pos: start,
                        msg: "invalid UTF-8 in string".into(),
                    })?;
                    out.push_str(s);
                }
            }
        }
    }

    fn parse_hex4(&mut self, start: TextPos) -> Result<u32, ParseError> {
        let mut v = 0u32;
        for _ in 0..4 {
            let d = self
                .bump()
                .and_then(|b| (b as char).to_digit(16))
                .ok_or_else(|| ParseError::Format {
                    pos: start,
                    msg: "invalid \\u escape".into(),
                })?;
            v = v * 16 + d;
        }
        Ok(v)
    }

    /// Non-negative integer, strict JSON (no leading zeros, sign,
    /// fraction or exponent — the grid format has no use for them).
    pub fn parse_uint(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos();
        let mut digits = 0usize;
        let mut value: u64 = 0;
        while let Some(b @ b'0'..=b'9') = self.peek() {
            self.bump();
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as u64))
                .ok_or_else(|| ParseError::Format {
                    pos: start,
                    msg: "integer too large".into(),
                })?;
            digits += 1;
        }
        if digits == 0 {
            return Err(ParseError::Format { pos: start, msg: "expected integer".into() });
        }
        if digits > 1 && value < 10u64.pow(digits as u32 - 1) {
            return Err(ParseError::Format { pos: start, msg: "leading zeros not allowed".into() });
        }
        Ok(value)
    }

    /// Iterate `key: <value parsed by f>` members of an object. The opening
    /// brace must not be consumed yet. Duplicate keys go to `on_duplicate`
    /// error construction by the caller via the returned key list.
    pub fn parse_object<F>(&mut self, mut field: F) -> Result<(), ParseError>
    where
        F: FnMut(&mut Self, String, TextPos) -> Result<(), ParseError>,
    {
        self.expect(b'{')?;
        if self.eat(b'}') {
            return Ok(());
        }
        loop {
            self.skip_ws();
            let key_pos = self.pos();
            let key = self.parse_string()?;
            self.expect(b':')?;
            field(self, key, key_pos)?;
            if self.eat(b',') {
                continue;
            }
            self.expect(b'}')?;
            return Ok(());
        }
    }

    /// Iterate elements of an array with the element start position.
    pub fn parse_array<F>(&mut self, mut element: F) -> Result<(), ParseError>
    where
        F: FnMut(&mut Self, TextPos) -> Result<(), ParseError>,
    {
        self.expect(b'[')?;
        if self.eat(b']') {
            return Ok(());
        }
        loop {
            self.skip_ws();
            let pos = self.pos();
            element(self, pos)?;
            if self.eat(b',') {
                continue;
            }
            self.expect(b']')?;
            return Ok(());
        }
    }
}
