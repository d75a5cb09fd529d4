//! Tokens shared by every text format. `#` starts a comment that runs
//! to the end of the line.

use std::fmt;

use thiserror::Error;

use crate::syntax::Name;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Tok {
    /// Letters, digits and underscores.
    Word(String),
    /// A double-quoted string; always a name, never a keyword.
    Quoted(String),
    Sym(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::Quoted(q) => write!(f, "{q:?}"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
#[error("line {line}, column {col}: expected {expected}, found {found}")]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub expected: String,
    pub found: String,
}

/// Longest symbols first so that prefixes do not shadow them.
const SYMBOLS: &[&str] = &[
    "-||-", "->", "=>", "==", "|-", ":=", "(", ")", "[", "]", "{", "}", "<", ">", ",", ";", ":", ".", "*", "+", "-",
    "/", "=", "|", "&",
];

pub fn lex(src: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (tline, tcol) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_alphanumeric() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Token { tok: Tok::Word(chars[start..i].iter().collect()), line: tline, col: tcol });
            continue;
        }
        if c == '"' {
            let mut s = String::new();
            i += 1;
            col += 1;
            loop {
                match chars.get(i) {
                    None | Some('\n') => {
                        return Err(SyntaxError {
                            line: tline,
                            col: tcol,
                            expected: "closing quote".into(),
                            found: "end of line".into(),
                        })
                    }
                    Some('"') => {
                        i += 1;
                        col += 1;
                        break;
                    }
                    Some('\\') if i + 1 < chars.len() => {
                        s.push(chars[i + 1]);
                        i += 2;
                        col += 2;
                    }
                    Some(&ch) => {
                        s.push(ch);
                        i += 1;
                        col += 1;
                    }
                }
            }
            out.push(Token { tok: Tok::Quoted(s), line: tline, col: tcol });
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 4)].iter().collect();
        match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            Some(sym) => {
                i += sym.len();
                col += sym.len();
                out.push(Token { tok: Tok::Sym(sym), line: tline, col: tcol });
            }
            None => {
                return Err(SyntaxError { line: tline, col: tcol, expected: "a token".into(), found: format!("`{c}`") })
            }
        }
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

/// A cursor over tokens with the helpers every parser needs.
pub struct Cursor {
    toks: Vec<Token>,
    pos: usize,
}

impl Cursor {
    pub fn new(src: &str) -> Result<Self, SyntaxError> {
        Ok(Cursor { toks: lex(src)?, pos: 0 })
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    pub fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    pub fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn error(&self, expected: impl Into<String>) -> SyntaxError {
        let t = &self.toks[self.pos];
        SyntaxError { line: t.line, col: t.col, expected: expected.into(), found: t.tok.to_string() }
    }

    pub fn at_eof(&self) -> bool {
        self.toks[self.pos].tok == Tok::Eof
    }

    pub fn at_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(t) if *t == s)
    }

    /// True when the next token is the unquoted keyword `kw`.
    pub fn at_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Word(w) if w == kw)
    }

    pub fn eat_sym(&mut self, s: &str) -> bool {
        if self.at_sym(s) {
            self.advance();
            true
        } else {
            false
        }
    }

    pub fn eat_kw(&mut self, kw: &str) -> bool {
        if self.at_kw(kw) {
            self.advance();
            true
        } else {
            false
        }
    }

    pub fn expect_sym(&mut self, s: &str) -> Result<(), SyntaxError> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.error(format!("`{s}`")))
        }
    }

    pub fn expect_kw(&mut self, kw: &str) -> Result<(), SyntaxError> {
        if self.eat_kw(kw) {
            Ok(())
        } else {
            Err(self.error(format!("`{kw}`")))
        }
    }

    /// A bare word that is not reserved, or any quoted string.
    pub fn name(&mut self) -> Result<Name, SyntaxError> {
        match self.peek().clone() {
            Tok::Word(w) if !crate::syntax::is_reserved(&w) => {
                self.advance();
                Ok(Name::from(w))
            }
            Tok::Quoted(q) => {
                self.advance();
                Ok(Name::from(q))
            }
            _ => Err(self.error("a name")),
        }
    }

    pub fn at_name(&self) -> bool {
        match self.peek() {
            Tok::Word(w) => !crate::syntax::is_reserved(w),
            Tok::Quoted(_) => true,
            _ => false,
        }
    }

    pub fn expect_eof(&self) -> Result<(), SyntaxError> {
        if self.at_eof() {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    /// Parses `item (sep item)*`, allowing an empty list when `close` follows.
    pub fn list<T>(
        &mut self,
        sep: &str,
        close: &str,
        mut item: impl FnMut(&mut Self) -> Result<T, SyntaxError>,
    ) -> Result<Vec<T>, SyntaxError> {
        let mut out = Vec::new();
        if self.at_sym(close) {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if !self.eat_sym(sep) {
                return Ok(out);
            }
        }
    }
}
