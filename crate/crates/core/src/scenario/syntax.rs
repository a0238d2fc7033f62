//! Block syntax of scenario files.
//!
//! ```text
//! # comment
//! seed = 7
//! ring R = plain { vars = [x, y, z], relations = [x*z, y*z] }
//! module K = residue { ring = R }
//! task betti = resolve {
//!     module = K
//!     n_max = 5
//! }
//! ```
//!
//! Entries inside `{}` are separated by commas or newlines. Anything that is not a block or
//! a list is a scalar: the raw text up to the next separator, so polynomials need no quoting.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(String),
    List(Vec<Node>),
    /// `kind { ... }` or a bare `{ ... }`.
    Block(Option<String>, Vec<Entry>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Node {
    pub pos: Pos,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub pos: Pos,
    pub key: String,
    pub value: Node,
}

/// `keyword name = value`, or `keyword = value` for file-level settings.
#[derive(Clone, Debug, PartialEq)]
pub struct Statement {
    pub pos: Pos,
    pub keyword: String,
    pub name: Option<String>,
    pub value: Node,
}

pub fn parse_error(pos: Pos, msg: impl Into<String>) -> Error {
    Error::Parse { line: pos.line, col: pos.col, msg: msg.into() }
}

struct Cursor {
    chars: Vec<char>,
    i: usize,
    line: usize,
    col: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '.'
}

impl Cursor {
    fn new(src: &str) -> Self {
        Cursor { chars: src.chars().collect(), i: 0, line: 1, col: 1 }
    }

    fn pos(&self) -> Pos {
        Pos { line: self.line, col: self.col }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.i += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    /// Skips blanks and comments; newlines too when `lines` is set.
    fn skip(&mut self, lines: bool) {
        while let Some(c) = self.peek() {
            match c {
                ' ' | '\t' | '\r' => {
                    self.bump();
                }
                '\n' if lines => {
                    self.bump();
                }
                '#' => {
                    while self.peek().is_some_and(|c| c != '\n') {
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(parse_error(self.pos(), format!("expected '{want}', found '{c}'"))),
            None => Err(parse_error(self.pos(), format!("expected '{want}', found end of file"))),
        }
    }

    fn ident(&mut self) -> Result<String> {
        let start = self.pos();
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|&c| is_ident_char(c)) {
            s.push(c);
            self.bump();
        }
        if s.is_empty() {
            return Err(match self.peek() {
                Some(c) => parse_error(start, format!("expected a name, found '{c}'")),
                None => parse_error(start, "expected a name, found end of file"),
            });
        }
        Ok(s)
    }

    fn value(&mut self) -> Result<Node> {
        self.skip(false);
        let pos = self.pos();
        match self.peek() {
            Some('{') => Ok(Node { pos, value: Value::Block(None, self.block()?) }),
            Some('[') => Ok(Node { pos, value: Value::List(self.list()?) }),
            Some('"') => {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        Some('"') => break,
                        Some('\n') | None => return Err(parse_error(pos, "unterminated string")),
                        Some(c) => s.push(c),
                    }
                }
                Ok(Node { pos, value: Value::Scalar(s) })
            }
            _ => {
                let mut s = String::new();
                while let Some(c) = self.peek() {
                    if matches!(c, ',' | ']' | '}' | '\n' | '#' | '{') {
                        break;
                    }
                    s.push(c);
                    self.bump();
                }
                let text = s.trim().to_string();
                if self.peek() == Some('{') {
                    if text.is_empty() || !text.chars().all(is_ident_char) {
                        return Err(parse_error(pos, format!("'{text}' is not a block kind")));
                    }
                    return Ok(Node { pos, value: Value::Block(Some(text), self.block()?) });
                }
                if text.is_empty() {
                    return Err(parse_error(pos, "expected a value"));
                }
                Ok(Node { pos, value: Value::Scalar(text) })
            }
        }
    }

    /// Free text up to a newline or comment.
    fn rest_of_line(&mut self) -> Result<Node> {
        let pos = self.pos();
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if matches!(c, '\n' | '#') {
                break;
            }
            s.push(c);
            self.bump();
        }
        let text = s.trim().to_string();
        if text.is_empty() {
            return Err(parse_error(pos, "expected a value"));
        }
        Ok(Node { pos, value: Value::Scalar(text) })
    }

    fn block(&mut self) -> Result<Vec<Entry>> {
        let open = self.pos();
        self.expect('{')?;
        let mut entries: Vec<Entry> = Vec::new();
        loop {
            self.skip(true);
            while self.peek() == Some(',') {
                self.bump();
                self.skip(true);
            }
            match self.peek() {
                Some('}') => {
                    self.bump();
                    return Ok(entries);
                }
                None => return Err(parse_error(open, "unclosed '{'")),
                _ => {}
            }
            let pos = self.pos();
            let key = self.ident()?;
            if entries.iter().any(|e| e.key == key) {
                return Err(parse_error(pos, format!("duplicate key '{key}'")));
            }
            self.skip(false);
            self.expect('=')?;
            let value = self.value()?;
            entries.push(Entry { pos, key, value });
            self.skip(false);
            match self.peek() {
                Some(',' | '\n' | '}') => {}
                Some(c) => return Err(parse_error(self.pos(), format!("unexpected '{c}' after value"))),
                None => return Err(parse_error(open, "unclosed '{'")),
            }
        }
    }

    fn list(&mut self) -> Result<Vec<Node>> {
        let open = self.pos();
        self.expect('[')?;
        let mut items = Vec::new();
        self.skip(true);
        if self.peek() == Some(']') {
            self.bump();
            return Ok(items);
        }
        loop {
            self.skip(true);
            items.push(self.value()?);
            self.skip(true);
            match self.peek() {
                Some(',') => {
                    self.bump();
                }
                Some(']') => {
                    self.bump();
                    return Ok(items);
                }
                Some(c) => return Err(parse_error(self.pos(), format!("expected ',' or ']', found '{c}'"))),
                None => return Err(parse_error(open, "unclosed '['")),
            }
        }
    }
}

pub fn parse_statements(src: &str) -> Result<Vec<Statement>> {
    let mut cur = Cursor::new(src);
    let mut out = Vec::new();
    loop {
        cur.skip(true);
        if cur.peek().is_none() {
            return Ok(out);
        }
        let pos = cur.pos();
        let keyword = cur.ident()?;
        cur.skip(false);
        let name = if cur.peek() == Some('=') {
            None
        } else {
            Some(cur.ident()?)
        };
        cur.skip(false);
        cur.expect('=')?;
        cur.skip(false);
        let value = if keyword == "title" && name.is_none() && cur.peek() != Some('"') {
            cur.rest_of_line()?
        } else {
            cur.value()?
        };
        cur.skip(false);
        match cur.peek() {
            None | Some('\n') => {}
            Some(c) => return Err(parse_error(cur.pos(), format!("unexpected '{c}' after statement"))),
        }
        out.push(Statement { pos, keyword, name, value });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_lists_scalars() {
        let src = "seed = 3\nring R = plain { vars = [x, y], relations = [x^2 - 1/2*y^2, x*y] } # tail\n\
                   task t = minors {\n  module = M\n\n  expect_cycle = [[x], [y]]\n}\n";
        let st = parse_statements(src).unwrap();
        assert_eq!(st.len(), 3);
        assert_eq!(st[0].name, None);
        assert_eq!(st[0].value.value, Value::Scalar("3".into()));
        let Value::Block(Some(kind), entries) = &st[1].value.value else { panic!() };
        assert_eq!(kind, "plain");
        let Value::List(rels) = &entries[1].value.value else { panic!() };
        assert_eq!(rels[0].value, Value::Scalar("x^2 - 1/2*y^2".into()));
        let Value::Block(_, entries) = &st[2].value.value else { panic!() };
        assert_eq!(entries[1].pos, Pos { line: 6, col: 3 });
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_statements("ring R = { vars = [x, y }").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, col: 25, .. }), "{err}");
        let err = parse_statements("ring R = {\n  vars = [x]\n  vars = [y]\n}").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, col: 3, .. }), "{err}");
        let err = parse_statements("task t = resolve { n_max = }").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, col: 28, .. }), "{err}");
        assert!(parse_statements("").unwrap().is_empty());
    }
}
