//! The `.lp` format for ground normal programs:
//! `head :- b1, ..., bn, not c1, ..., not cm.` and facts `head.`

use std::fmt::Write;

use super::{strip_comment, SourceDiagnostic};
use crate::program::{AtomTerm, Clause, GroundProgram};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    LParen,
    RParen,
    Comma,
    Dot,
    If,
    Other(char),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Vec<(Pos, Tok)> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let chars: Vec<char> = strip_comment(raw).chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let pos = Pos {
                line: idx + 1,
                column: i + 1,
            };
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_alphanumeric() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((pos, Tok::Word(chars[start..i].iter().collect())));
                continue;
            }
            let tok = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                '.' => Tok::Dot,
                ':' if chars.get(i + 1) == Some(&'-') => {
                    i += 1;
                    Tok::If
                }
                other => Tok::Other(other),
            };
            out.push((pos, tok));
            i += 1;
        }
    }
    out
}

fn is_variable(w: &str) -> bool {
    w.starts_with(|c: char| c.is_ascii_uppercase() || c == '_')
}

struct Parser {
    toks: Vec<(Pos, Tok)>,
    pos: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> Pos {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err(&self, msg: impl Into<String>) -> SourceDiagnostic {
        let p = self.here();
        SourceDiagnostic::new(p.line, p.column, msg)
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn constant(&mut self, what: &str) -> Result<String, SourceDiagnostic> {
        match self.peek() {
            Some(Tok::Word(w)) if is_variable(w) => {
                Err(self.err(format!("variables not allowed: `{w}`")))
            }
            Some(Tok::Word(w)) => {
                let w = w.clone();
                self.bump();
                Ok(w)
            }
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    fn atom(&mut self) -> Result<AtomTerm, SourceDiagnostic> {
        let pred = match self.peek() {
            Some(Tok::Word(w)) if w.starts_with(|c: char| c.is_ascii_digit()) => {
                return Err(self.err(format!("malformed atom: predicate `{w}` starts with a digit")))
            }
            _ => self.constant("an atom")?,
        };
        let mut args = Vec::new();
        if self.peek() == Some(&Tok::LParen) {
            self.bump();
            loop {
                args.push(self.constant("a constant argument")?);
                match self.peek() {
                    Some(Tok::Comma) => self.bump(),
                    Some(Tok::RParen) => {
                        self.bump();
                        break;
                    }
                    _ => return Err(self.err("malformed atom: expected `,` or `)`")),
                }
            }
        }
        Ok(AtomTerm {
            predicate: pred,
            args,
        })
    }

    fn clause(&mut self) -> Result<Clause, SourceDiagnostic> {
        let head = self.atom()?;
        let mut clause = Clause::fact(head);
        match self.peek() {
            Some(Tok::Dot) => {
                self.bump();
                return Ok(clause);
            }
            Some(Tok::If) => self.bump(),
            _ => return Err(self.err("expected `:-` or `.`")),
        }
        loop {
            let negated = matches!(self.peek(), Some(Tok::Word(w)) if w == "not")
                && matches!(self.toks.get(self.pos + 1), Some((_, Tok::Word(_))));
            if negated {
                self.bump();
            }
            let a = self.atom()?;
            if negated {
                clause.neg_body.insert(a);
            } else {
                clause.pos_body.insert(a);
            }
            match self.peek() {
                Some(Tok::Comma) => self.bump(),
                Some(Tok::Dot) => {
                    self.bump();
                    return Ok(clause);
                }
                _ => return Err(self.err("expected `,` or `.`")),
            }
        }
    }

    /// Skips past the next `.` after an error.
    fn recover(&mut self) {
        while let Some(t) = self.peek() {
            let dot = *t == Tok::Dot;
            self.bump();
            if dot {
                break;
            }
        }
    }
}

fn end_pos(text: &str) -> Pos {
    let lines: Vec<&str> = text.lines().collect();
    match lines.last() {
        Some(l) => Pos {
            line: lines.len(),
            column: l.chars().count() + 1,
        },
        None => Pos { line: 1, column: 1 },
    }
}

pub fn parse_program(text: &str) -> Result<GroundProgram, Vec<SourceDiagnostic>> {
    let mut p = Parser {
        toks: lex(text),
        pos: 0,
        end: end_pos(text),
    };
    let mut clauses = Vec::new();
    let mut diags = Vec::new();
    while p.peek().is_some() {
        match p.clause() {
            Ok(c) => clauses.push(c),
            Err(d) => {
                diags.push(d);
                p.recover();
            }
        }
    }
    if diags.is_empty() {
        Ok(GroundProgram::new(clauses))
    } else {
        Err(diags)
    }
}

/// Parses a single ground atom such as `defeasibly(neg_p)`.
pub fn parse_atom(text: &str) -> Result<AtomTerm, SourceDiagnostic> {
    let mut p = Parser {
        toks: lex(text),
        pos: 0,
        end: end_pos(text),
    };
    let a = p.atom()?;
    if p.peek().is_some() {
        return Err(p.err("unexpected input after atom"));
    }
    Ok(a)
}

/// One clause per line, in program order.
pub fn render_program(program: &GroundProgram) -> String {
    let mut out = String::new();
    for c in &program.clauses {
        let _ = writeln!(out, "{c}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_loop() {
        let p = parse_program("a :- not b.\nb :- not a.").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(
            p.clauses[0],
            Clause::new(AtomTerm::prop("a"), [], [AtomTerm::prop("b")])
        );
    }

    #[test]
    fn compound_atoms() {
        let p = parse_program("defeasibly(neg_p) :- not definitely(p).").unwrap();
        assert_eq!(p.len(), 1);
        let c = &p.clauses[0];
        assert_eq!(c.head, AtomTerm::new("defeasibly", ["neg_p"]));
        assert!(c.pos_body.is_empty());
        assert_eq!(c.neg_body.len(), 1);

        let p = parse_program("overruled(r1,p) :- defeasibly(q), not defeated(r2, neg_p).").unwrap();
        assert_eq!(p.clauses[0].head.args, ["r1", "p"]);
    }

    #[test]
    fn variables_rejected() {
        let err = parse_program("a :- X.").unwrap_err();
        assert_eq!((err[0].line, err[0].column), (1, 6));
        assert!(err[0].message.contains("variables not allowed"));
        assert!(parse_program("p(X).").unwrap_err()[0]
            .message
            .contains("variables not allowed"));
    }

    #[test]
    fn malformed_atoms() {
        assert!(parse_program("p(a.").is_err());
        assert!(parse_program("p :- .").is_err());
        assert!(parse_program("p").is_err());
        let err = parse_program("ok.\np(,).\nq :- r").unwrap_err();
        assert_eq!(err.len(), 2);
        assert_eq!(err[0].line, 2);
    }

    #[test]
    fn atom_named_not() {
        // `not` alone (not followed by an atom) is an ordinary atom.
        let p = parse_program("a :- not.").unwrap();
        assert!(p.clauses[0].pos_body.contains(&AtomTerm::prop("not")));
    }

    #[test]
    fn render_round_trip() {
        assert_eq!(render_program(&GroundProgram::default()), "");
        let text = "a :- not b.\nb :- not a.\n";
        let p = parse_program(text).unwrap();
        assert_eq!(render_program(&p), text);
        let c = "h(x, y) :- b, a, not z, not c.";
        let rendered = render_program(&parse_program(c).unwrap());
        assert_eq!(rendered, "h(x, y) :- a, b, not c, not z.\n");
    }

    #[test]
    fn parse_single_atom() {
        assert_eq!(parse_atom("definitely(neg_q)").unwrap(), AtomTerm::new("definitely", ["neg_q"]));
        assert!(parse_atom("a b").is_err());
    }
}
