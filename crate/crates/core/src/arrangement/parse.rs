use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::config::{ConfigCircle, ConfigPiece, PieceConfiguration};
use super::{Arrangement, ArrangementError, Circle, Piece};

/// Parses the bracket grammar: root `{ C* }`, non-root piece `( C* )`,
/// circle `[ piece* ]`. Validity is not checked.
pub fn parse_arrangement(text: &str) -> Result<Arrangement, ArrangementError> {
    let mut p = Parser::new(text, false);
    let root = p.document()?;
    Ok(Arrangement::new(strip(root)))
}

/// Parses the configuration grammar: the bracket grammar where a piece may
/// be prefixed `*` (relevant) and a circle suffixed `!` (essential). A
/// non-root piece suffixed `!`, as in `( ... )!`, has an essential outer
/// circle.
pub fn parse_configuration(text: &str) -> Result<PieceConfiguration, ArrangementError> {
    let mut p = Parser::new(text, true);
    let root = p.document()?;
    Ok(PieceConfiguration::new(root))
}

fn strip(piece: ConfigPiece) -> Piece {
    Piece {
        circles: piece
            .circles
            .into_iter()
            .map(|c| Circle {
                children: c.children.into_iter().map(strip).collect(),
            })
            .collect(),
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    flags: bool,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, flags: bool) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
            flags,
        }
    }

    fn error(&self, message: String) -> ArrangementError {
        ArrangementError::Syntax {
            offset: self.pos,
            message,
        }
    }

    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<(), ArrangementError> {
        match self.peek() {
            Some(b) if b == byte => {
                self.pos += 1;
                Ok(())
            }
            Some(b) => Err(self.error(format!("expected `{}`, found `{}`", byte as char, b as char))),
            None => Err(self.error(format!("expected `{}`, found end of input", byte as char))),
        }
    }

    fn flag(&mut self, byte: u8) -> Result<bool, ArrangementError> {
        if self.peek() != Some(byte) {
            return Ok(false);
        }
        if !self.flags {
            return Err(self.error(format!("`{}` is only allowed in configurations", byte as char)));
        }
        self.pos += 1;
        Ok(true)
    }

    fn document(&mut self) -> Result<ConfigPiece, ArrangementError> {
        let relevant = self.flag(b'*')?;
        self.expect(b'{')?;
        let circles = self.circles(b'}')?;
        self.expect(b'}')?;
        if self.peek() == Some(b'!') {
            return Err(self.error("the root piece has no outer circle to flag".into()));
        }
        if let Some(b) = self.peek() {
            return Err(self.error(format!("trailing input `{}`", b as char)));
        }
        Ok(ConfigPiece {
            relevant,
            outer_essential: false,
            circles,
        })
    }

    fn circles(&mut self, close: u8) -> Result<Vec<ConfigCircle>, ArrangementError> {
        let mut circles = Vec::new();
        loop {
            match self.peek() {
                Some(b'[') => {
                    self.pos += 1;
                    let mut children = Vec::new();
                    while self.peek() != Some(b']') {
                        if self.peek().is_none() {
                            return Err(self.error("unclosed circle `[`".into()));
                        }
                        children.push(self.piece()?);
                    }
                    self.pos += 1;
                    let essential = self.flag(b'!')?;
                    circles.push(ConfigCircle {
                        essential,
                        children,
                    });
                }
                Some(b) if b == close => return Ok(circles),
                Some(b) => return Err(self.error(format!("unexpected `{}` in piece", b as char))),
                None => return Err(self.error(format!("expected `{}`, found end of input", close as char))),
            }
        }
    }

    fn piece(&mut self) -> Result<ConfigPiece, ArrangementError> {
        let relevant = self.flag(b'*')?;
        match self.peek() {
            Some(b'(') => self.pos += 1,
            Some(b'{') => return Err(self.error("`{` marks the root piece and may appear only once".into())),
            Some(b) => return Err(self.error(format!("expected a piece `(`, found `{}`", b as char))),
            None => return Err(self.error("expected a piece, found end of input".into())),
        }
        let circles = self.circles(b')')?;
        self.expect(b')')?;
        let outer_essential = self.flag(b'!')?;
        Ok(ConfigPiece {
            relevant,
            outer_essential,
            circles,
        })
    }
}
