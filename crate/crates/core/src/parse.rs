//! Shared cursor for the three recursive-descent parsers. Whitespace is
//! insignificant outside tokens and all parsers reject trailing garbage.

use std::fmt;

/// Syntax error with the byte position of the offending character and a
/// description of what was expected there.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct SyntaxError {
    pub position: usize,
    pub expected: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at {}: expected {}", self.position, self.expected)
    }
}

pub(crate) struct Cursor<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(input: &'a str) -> Self {
        Cursor { input, pos: 0 }
    }

    pub fn error(&self, expected: impl Into<String>) -> SyntaxError {
        SyntaxError { position: self.pos, expected: expected.into() }
    }

    pub fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    pub fn peek(&self) -> Option<char> {
        self.input[self.pos..].chars().next()
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    /// Consumes `tok` (after skipping whitespace) or fails.
    pub fn expect(&mut self, tok: &str) -> Result<(), SyntaxError> {
        self.skip_ws();
        if self.input[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            Ok(())
        } else {
            Err(self.error(format!("{tok:?}")))
        }
    }

    /// Consumes `tok` if present (after skipping whitespace).
    pub fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.input[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    /// Parses a decimal natural number.
    pub fn nat(&mut self) -> Result<u32, SyntaxError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("a decimal index"));
        }
        self.input[start..self.pos]
            .parse()
            .map_err(|_| SyntaxError { position: start, expected: "a smaller index".into() })
    }

    /// Fails unless only whitespace remains.
    pub fn finish(&mut self) -> Result<(), SyntaxError> {
        self.skip_ws();
        if self.pos == self.input.len() {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }
}
