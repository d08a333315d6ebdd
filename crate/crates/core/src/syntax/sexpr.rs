use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SExpr {
    Atom(String),
    List(Vec<SExpr>),
}

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("empty input")]
    Empty,
    #[error("{pos}: unclosed parenthesis")]
    Unclosed { pos: Pos },
    #[error("{pos}: unexpected `)`")]
    UnexpectedClose { pos: Pos },
    #[error("{pos}: unexpected input after expression")]
    Trailing { pos: Pos },
}

impl SExpr {
    pub fn atom(s: impl Into<String>) -> Self {
        SExpr::Atom(s.into())
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            SExpr::Atom(s) => Some(s),
            SExpr::List(_) => None,
        }
    }

    pub fn as_list(&self) -> Option<&[SExpr]> {
        match self {
            SExpr::List(items) => Some(items),
            SExpr::Atom(_) => None,
        }
    }

    /// The list's leading atom, if any.
    pub fn head_atom(&self) -> Option<&str> {
        self.as_list()?.first()?.as_atom()
    }
}

impl fmt::Display for SExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SExpr::Atom(s) => f.write_str(s),
            SExpr::List(items) => {
                f.write_str("(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str(")")
            }
        }
    }
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

impl Reader<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.col = 1;
        } else {
            self.pos.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == ';' {
                while self.chars.peek().is_some_and(|&c| c != '\n') {
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    /// Reads one expression; `None` at end of input.
    fn read(&mut self) -> Result<Option<SExpr>, SyntaxError> {
        self.skip_trivia();
        let start = self.pos;
        match self.chars.peek() {
            None => Ok(None),
            Some(')') => Err(SyntaxError::UnexpectedClose { pos: start }),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.chars.peek() {
                        None => return Err(SyntaxError::Unclosed { pos: start }),
                        Some(')') => {
                            self.bump();
                            return Ok(Some(SExpr::List(items)));
                        }
                        Some(_) => items.push(self.read()?.expect("input is not exhausted")),
                    }
                }
            }
            Some(_) => {
                let mut s = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    s.push(c);
                    self.bump();
                }
                Ok(Some(SExpr::Atom(s)))
            }
        }
    }
}

fn reader(src: &str) -> Reader<'_> {
    Reader { chars: src.chars().peekable(), pos: Pos { line: 1, col: 1 } }
}

/// Every top-level expression in `src`.
pub fn parse_all(src: &str) -> Result<Vec<SExpr>, SyntaxError> {
    let mut r = reader(src);
    let mut out = Vec::new();
    while let Some(e) = r.read()? {
        out.push(e);
    }
    Ok(out)
}

/// Exactly one expression.
pub fn parse_one(src: &str) -> Result<SExpr, SyntaxError> {
    let mut r = reader(src);
    let e = r.read()?.ok_or(SyntaxError::Empty)?;
    r.skip_trivia();
    if r.chars.peek().is_some() {
        return Err(SyntaxError::Trailing { pos: r.pos });
    }
    Ok(e)
}
