//! Minimal s-expression reader shared by the knot and link-term grammars.
//!
//! Atoms are maximal runs of characters other than whitespace and
//! parentheses. `;` starts a comment that runs to end of line. Every node
//! carries the byte span it was read from so that later stages can report
//! source locations.

use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

/// 1-based line and column of a byte offset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

impl Span {
    pub fn location(&self, source: &str) -> Location {
        let upto = &source[..self.start.min(source.len())];
        let line = upto.matches('\n').count() + 1;
        let column = upto.rfind('\n').map_or(upto.len(), |i| upto.len() - i - 1) + 1;
        Location { line, column }
    }

    pub fn text<'a>(&self, source: &'a str) -> &'a str {
        &source[self.start..self.end.min(source.len())]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SexpKind {
    Atom(String),
    List(Vec<Sexp>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sexp {
    pub kind: SexpKind,
    pub span: Span,
}

impl Sexp {
    pub fn as_atom(&self) -> Option<&str> {
        match &self.kind {
            SexpKind::Atom(a) => Some(a),
            SexpKind::List(_) => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexp]> {
        match &self.kind {
            SexpKind::List(items) => Some(items),
            SexpKind::Atom(_) => None,
        }
    }

    /// Head atom of a list, e.g. `cab` for `(cab 2 3 U)`.
    pub fn head(&self) -> Option<&str> {
        self.as_list()
            .and_then(|items| items.first())
            .and_then(Sexp::as_atom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at {location}: `{snippet}`")]
pub struct ParseError {
    pub message: String,
    pub location: Location,
    pub snippet: String,
}

impl ParseError {
    pub fn at(source: &str, span: Span, message: impl Into<String>) -> Self {
        let mut snippet = span.text(source).to_string();
        if snippet.len() > 60 {
            let cut = (0..=60)
                .rev()
                .find(|&i| snippet.is_char_boundary(i))
                .unwrap_or(0);
            snippet.truncate(cut);
            snippet.push_str("...");
        }
        ParseError {
            message: message.into(),
            location: span.location(source),
            snippet,
        }
    }
}

struct Reader<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn skip_trivia(&mut self) {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() {
            match bytes[self.pos] {
                b';' => {
                    while self.pos < bytes.len() && bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn read(&mut self) -> Result<Sexp, ParseError> {
        self.skip_trivia();
        let start = self.pos;
        let rest = &self.src[self.pos..];
        let Some(c) = rest.chars().next() else {
            return Err(ParseError::at(
                self.src,
                Span { start, end: start },
                "unexpected end of input",
            ));
        };
        match c {
            '(' => {
                self.pos += 1;
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.src[self.pos..].chars().next() {
                        None => {
                            return Err(ParseError::at(
                                self.src,
                                Span {
                                    start,
                                    end: self.pos,
                                },
                                "unclosed `(`",
                            ))
                        }
                        Some(')') => {
                            self.pos += 1;
                            break;
                        }
                        Some(_) => items.push(self.read()?),
                    }
                }
                Ok(Sexp {
                    kind: SexpKind::List(items),
                    span: Span {
                        start,
                        end: self.pos,
                    },
                })
            }
            ')' => Err(ParseError::at(
                self.src,
                Span {
                    start,
                    end: start + 1,
                },
                "unexpected `)`",
            )),
            _ => {
                let len = rest
                    .find(|ch: char| ch.is_whitespace() || ch == '(' || ch == ')' || ch == ';')
                    .unwrap_or(rest.len());
                self.pos += len;
                Ok(Sexp {
                    kind: SexpKind::Atom(rest[..len].to_string()),
                    span: Span {
                        start,
                        end: self.pos,
                    },
                })
            }
        }
    }
}

/// Reads exactly one s-expression; trailing non-comment input is an error.
pub fn parse(source: &str) -> Result<Sexp, ParseError> {
    let mut reader = Reader {
        src: source,
        pos: 0,
    };
    let sexp = reader.read()?;
    reader.skip_trivia();
    if reader.pos < source.len() {
        return Err(ParseError::at(
            source,
            Span {
                start: reader.pos,
                end: source.len(),
            },
            "trailing input after expression",
        ));
    }
    Ok(sexp)
}

/// Parses an integer atom, reporting the atom's location otherwise.
pub(crate) fn int_atom(source: &str, sexp: &Sexp, what: &str) -> Result<i64, ParseError> {
    sexp.as_atom()
        .and_then(|a| a.parse::<i64>().ok())
        .ok_or_else(|| ParseError::at(source, sexp.span, format!("expected integer {what}")))
}
