//! Text formats.
//!
//! ```text
//! EXPR   := CYCLE*                       cycle notation, whitespace ignored
//! CYCLE  := '(' INT (',' INT)* ')' SHIFT?
//! SHIFT  := '[' INT ']'
//! WINDOW := 'w:[' INT (',' INT)* ']'
//! ```
//!
//! `id` is also accepted for the identity. Monoid elements join simples with
//! `·` (or `.`), annular partitions separate blocks with `/` and mark periodic
//! blocks with a trailing `*`, Artin words are tokens `s3` / `S3`.

use crate::error::{Error, Result};
use crate::perm::{Cycle, CycleExpr, PeriodicPermutation};

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Self {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.pos, msg)
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.bytes.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(self.error("expected integer"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse::<i64>()
            .map_err(|e| Error::parse(start, e.to_string()))
    }

    fn int_list(&mut self, close: u8) -> Result<Vec<i64>> {
        let mut out = vec![self.int()?];
        while self.eat(b',') {
            out.push(self.int()?);
        }
        self.expect(close)?;
        Ok(out)
    }
}

pub fn parse_cycle_expr(s: &str) -> Result<CycleExpr> {
    let mut cur = Cursor::new(s);
    let mut cycles = Vec::new();
    while !cur.at_end() {
        cur.expect(b'(')?;
        let entries = cur.int_list(b')')?;
        let shift = if cur.eat(b'[') {
            let h = cur.int()?;
            cur.expect(b']')?;
            h
        } else {
            0
        };
        cycles.push(Cycle { entries, shift });
    }
    Ok(CycleExpr { cycles })
}

pub fn parse_permutation(n: usize, s: &str) -> Result<PeriodicPermutation> {
    if n == 0 {
        return Err(Error::ZeroPeriod);
    }
    let trimmed = s.trim();
    if trimmed == "id" {
        return Ok(PeriodicPermutation::identity(n));
    }
    if let Some(rest) = trimmed.strip_prefix("w:") {
        let mut cur = Cursor::new(rest);
        cur.expect(b'[')?;
        let window = cur.int_list(b']')?;
        if !cur.at_end() {
            return Err(cur.error("trailing input after window"));
        }
        if window.len() != n {
            return Err(Error::WindowLength {
                expected: n,
                got: window.len(),
            });
        }
        return PeriodicPermutation::from_window(&window);
    }
    PeriodicPermutation::from_cycles(n, &parse_cycle_expr(trimmed)?)
}

/// Splits a monoid element on `·` or `.` and parses each simple.
pub fn parse_factor_list(n: usize, s: &str) -> Result<Vec<PeriodicPermutation>> {
    let s = s.trim();
    if s.is_empty() || s == "1" {
        return Ok(Vec::new());
    }
    s.split(['·', '.'])
        .map(|part| parse_permutation(n, part))
        .collect()
}

/// One letter of an Artin word: generator index and exponent sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

pub fn parse_artin_word(s: &str) -> Result<Vec<Letter>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for token in s.split_whitespace() {
        let pos = s[offset..].find(token).map_or(offset, |p| p + offset);
        offset = pos + token.len();
        let (inverse, digits) = match token.as_bytes()[0] {
            b's' => (false, &token[1..]),
            b'S' => (true, &token[1..]),
            _ => return Err(Error::parse(pos, format!("bad generator token '{token}'"))),
        };
        let index = digits
            .parse::<usize>()
            .map_err(|_| Error::parse(pos, format!("bad generator token '{token}'")))?;
        out.push(Letter { index, inverse });
    }
    Ok(out)
}

pub fn format_artin_word(word: &[Letter]) -> String {
    word.iter()
        .map(|l| format!("{}{}", if l.inverse { 'S' } else { 's' }, l.index))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Raw block from the partition text form: integers plus the periodic marker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawBlock {
    pub elements: Vec<i64>,
    pub periodic: bool,
}

pub fn parse_partition_blocks(s: &str) -> Result<Vec<RawBlock>> {
    let mut cur = Cursor::new(s);
    let mut blocks = Vec::new();
    if cur.at_end() {
        return Ok(blocks);
    }
    loop {
        cur.expect(b'{')?;
        let elements = if cur.eat(b'}') {
            Vec::new()
        } else {
            cur.int_list(b'}')?
        };
        let periodic = cur.eat(b'*');
        if !elements.is_empty() {
            blocks.push(RawBlock { elements, periodic });
        }
        if cur.at_end() {
            break;
        }
        cur.expect(b'/')?;
    }
    Ok(blocks)
}
