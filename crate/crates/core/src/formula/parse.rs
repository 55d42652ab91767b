//! ASCII formula syntax.
//!
//! ```text
//! iff    := imp ('<->' imp)*
//! imp    := or ('->' or)*
//! or     := and ('|' and)*
//! and    := unary ('&' unary)*
//! unary  := '~' unary | modal unary | atom | '(' iff ')'
//! modal  := '<D{' agents '}>' | '[D{' agents '}]' | '<K' agent '>' | '[K' agent ']'
//! atom   := '@' agent | 'T' | 'F' | atom-name
//! ```
//!
//! All binary connectives associate to the left.

use thiserror::Error;

use super::{Formula, FormulaError, Group, Signature, TopPolicy};
use crate::complex::AgentId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown agent `{agent}` at byte {position}")]
    UnknownAgent { agent: String, position: usize },
    #[error("unknown atom `{atom}` at byte {position}")]
    UnknownAtom { atom: String, position: usize },
    #[error("empty agent group at byte {0}")]
    EmptyGroup(usize),
    #[error("constant at byte {position}: {source}")]
    Constant {
        position: usize,
        #[source]
        source: FormulaError,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Iff,
    Implies,
    Or,
    And,
    Not,
    At,
    LParen,
    RParen,
    LAngle,
    RAngle,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::End => "end of input".into(),
        other => format!("{other:?}"),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = if text[i..].starts_with("<->") {
            i += 3;
            Tok::Iff
        } else if text[i..].starts_with("->") {
            i += 2;
            Tok::Implies
        } else if c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' {
            while i < bytes.len()
                && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'')
            {
                i += 1;
            }
            Tok::Ident(text[start..i].to_owned())
        } else {
            i += 1;
            match c {
                b'|' => Tok::Or,
                b'&' => Tok::And,
                b'~' => Tok::Not,
                b'@' => Tok::At,
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b'<' => Tok::LAngle,
                b'>' => Tok::RAngle,
                b'[' => Tok::LBracket,
                b']' => Tok::RBracket,
                b'{' => Tok::LBrace,
                b'}' => Tok::RBrace,
                b',' => Tok::Comma,
                _ => {
                    let ch = text[start..].chars().next().unwrap_or('?');
                    return Err(ParseError::Syntax {
                        position: start,
                        message: format!("unexpected character `{ch}`"),
                    });
                }
            }
        };
        out.push((tok, start));
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    sig: &'a Signature,
    policy: TopPolicy,
}

/// Parses `text` into a core formula, elaborating every abbreviation.
pub fn parse(text: &str, sig: &Signature, policy: TopPolicy) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        sig,
        policy,
    };
    let f = p.iff()?;
    match p.peek() {
        Tok::End => Ok(f),
        t => Err(p.error(format!("unexpected {}", describe(t)))),
    }
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: String) -> ParseError {
        ParseError::Syntax {
            position: self.offset(),
            message,
        }
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!(
                "expected {}, found {}",
                describe(&want),
                describe(self.peek())
            )))
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.implies()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            let g = self.implies()?;
            f = Formula::iff(f, g);
        }
        Ok(f)
    }

    fn implies(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.or()?;
        while *self.peek() == Tok::Implies {
            self.bump();
            let g = self.or()?;
            f = Formula::implies(f, g);
        }
        Ok(f)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let g = self.and()?;
            f = Formula::or(f, g);
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let g = self.unary()?;
            f = Formula::and(f, g);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let at = self.offset();
        match self.bump() {
            Tok::Not => Ok(Formula::not(self.unary()?)),
            Tok::LParen => {
                let f = self.iff()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::LAngle => {
                let group = self.modality_group(Tok::RAngle)?;
                Ok(Formula::diamond(group, self.unary()?))
            }
            Tok::LBracket => {
                let group = self.modality_group(Tok::RBracket)?;
                Ok(Formula::boxed(group, self.unary()?))
            }
            Tok::At => {
                let at = self.offset();
                match self.bump() {
                    Tok::Ident(name) => Ok(Formula::Global(self.agent(name, at)?)),
                    t => Err(ParseError::Syntax {
                        position: at,
                        message: format!("expected agent after `@`, found {}", describe(&t)),
                    }),
                }
            }
            Tok::Ident(name) if name == "T" => self.top(at),
            Tok::Ident(name) if name == "F" => Ok(Formula::not(self.top(at)?)),
            Tok::Ident(name) => match self.sig.atom(&name) {
                Some(atom) => Ok(Formula::Local(atom.clone())),
                None => Err(ParseError::UnknownAtom {
                    atom: name,
                    position: at,
                }),
            },
            t => Err(ParseError::Syntax {
                position: at,
                message: format!("expected a formula, found {}", describe(&t)),
            }),
        }
    }

    fn top(&self, position: usize) -> Result<Formula, ParseError> {
        self.sig
            .top(self.policy)
            .map_err(|source| ParseError::Constant { position, source })
    }

    fn agent(&self, name: String, position: usize) -> Result<AgentId, ParseError> {
        let agent = AgentId(name);
        if self.sig.has_agent(&agent) {
            Ok(agent)
        } else {
            Err(ParseError::UnknownAgent {
                agent: agent.0,
                position,
            })
        }
    }

    /// After the opening `<` or `[`: `D{a,b}` or `K a`, then the closing token.
    fn modality_group(&mut self, close: Tok) -> Result<Group, ParseError> {
        let at = self.offset();
        let group = match self.bump() {
            Tok::Ident(kw) if kw == "K" => {
                let at = self.offset();
                match self.bump() {
                    Tok::Ident(name) => Group::singleton(self.agent(name, at)?),
                    t => {
                        return Err(ParseError::Syntax {
                            position: at,
                            message: format!("expected agent after `K`, found {}", describe(&t)),
                        })
                    }
                }
            }
            Tok::Ident(kw) if kw == "D" => {
                self.expect(Tok::LBrace)?;
                let brace = self.offset();
                let mut agents = Vec::new();
                if *self.peek() != Tok::RBrace {
                    loop {
                        let at = self.offset();
                        match self.bump() {
                            Tok::Ident(name) => agents.push(self.agent(name, at)?),
                            t => {
                                return Err(ParseError::Syntax {
                                    position: at,
                                    message: format!("expected agent, found {}", describe(&t)),
                                })
                            }
                        }
                        if *self.peek() == Tok::Comma {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                }
                self.expect(Tok::RBrace)?;
                Group::new(agents).ok_or(ParseError::EmptyGroup(brace))?
            }
            t => {
                return Err(ParseError::Syntax {
                    position: at,
                    message: format!("expected `K` or `D` in modality, found {}", describe(&t)),
                })
            }
        };
        self.expect(close)?;
        Ok(group)
    }
}
