//! The `.dfl` theory format, one statement per line:
//!
//! ```text
//! % comment
//! fact emu.
//! r1: emu -> bird.
//! r2: bird => flies.
//! r3: heavy ~> ~flies.
//! r4: => ~p.
//! r2 > r3.
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use super::{strip_comment, SourceDiagnostic};
use crate::theory::{is_identifier, DefeasibleTheory, Literal, Rule, RuleKind, RESERVED_PREFIX};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Tilde,
    Comma,
    Dot,
    Colon,
    Arrow(RuleKind),
    Gt,
    BadArrow(String),
    Other(char),
}

fn is_op_char(c: char) -> bool {
    matches!(c, '-' | '=' | '>' | '<' | '~')
}

fn lex(line: &str) -> Vec<(usize, Tok)> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphanumeric() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((col, Tok::Word(chars[start..i].iter().collect())));
        } else if c == '~' && chars.get(i + 1) != Some(&'>') {
            out.push((col, Tok::Tilde));
            i += 1;
        } else if is_op_char(c) {
            let start = i;
            while i < chars.len() && is_op_char(chars[i]) {
                i += 1;
            }
            let op: String = chars[start..i].iter().collect();
            let tok = match op.as_str() {
                "->" => Tok::Arrow(RuleKind::Strict),
                "=>" => Tok::Arrow(RuleKind::Defeasible),
                "~>" => Tok::Arrow(RuleKind::Defeater),
                ">" => Tok::Gt,
                _ => Tok::BadArrow(op),
            };
            out.push((col, tok));
        } else {
            out.push((
                col,
                match c {
                    ',' => Tok::Comma,
                    '.' => Tok::Dot,
                    ':' => Tok::Colon,
                    other => Tok::Other(other),
                },
            ));
            i += 1;
        }
    }
    out
}

enum Stmt {
    Fact(Literal, usize),
    Rule(Rule, usize, Vec<(Literal, usize)>),
    Sup(String, usize, String, usize),
}

struct LineParser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    line: usize,
    eol: usize,
}

impl<'a> LineParser<'a> {
    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(c, _)| *c).unwrap_or(self.eol)
    }

    fn err(&self, msg: impl Into<String>) -> SourceDiagnostic {
        SourceDiagnostic::new(self.line, self.col(), msg)
    }

    fn bump(&mut self) -> Option<&'a Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t);
        self.pos += 1;
        t
    }

    fn literal(&mut self) -> Result<(Literal, usize), SourceDiagnostic> {
        let col = self.col();
        let positive = if self.peek() == Some(&Tok::Tilde) {
            self.bump();
            false
        } else {
            true
        };
        let atom_col = self.col();
        match self.peek() {
            Some(Tok::Word(w)) if is_identifier(w) => {
                self.bump();
                Ok((Literal::new(w.clone(), positive), col))
            }
            Some(Tok::Word(w)) => Err(SourceDiagnostic::new(
                self.line,
                atom_col,
                format!("`{w}` is not a valid atom (expected [a-z][a-zA-Z0-9_]*)"),
            )),
            Some(Tok::BadArrow(a)) => Err(self.bad_arrow(a)),
            _ => Err(self.err("expected a literal")),
        }
    }

    fn bad_arrow(&self, a: &str) -> SourceDiagnostic {
        self.err(format!("unknown arrow `{a}` (expected ->, => or ~>)"))
    }

    fn end(&mut self) -> Result<(), SourceDiagnostic> {
        match self.peek() {
            Some(Tok::Dot) => {
                self.bump();
                if self.peek().is_some() {
                    Err(self.err("unexpected input after `.`; one statement per line"))
                } else {
                    Ok(())
                }
            }
            Some(Tok::BadArrow(a)) => Err(self.bad_arrow(a)),
            _ => Err(self.err("expected `.`")),
        }
    }

    fn label(&mut self) -> Result<(String, usize), SourceDiagnostic> {
        let col = self.col();
        match self.peek() {
            Some(Tok::Word(w)) if is_identifier(w) => {
                self.bump();
                Ok((w.clone(), col))
            }
            Some(Tok::Word(w)) => Err(self.err(format!(
                "`{w}` is not a valid label (expected [a-z][a-zA-Z0-9_]*)"
            ))),
            _ => Err(self.err("expected a rule label")),
        }
    }

    fn statement(&mut self) -> Result<Stmt, SourceDiagnostic> {
        let first_col = self.col();
        let (first, second) = (self.toks.first().map(|t| &t.1), self.toks.get(1).map(|t| &t.1));
        match (first, second) {
            (Some(Tok::Word(w)), Some(t)) if w == "fact" && !matches!(t, Tok::Colon | Tok::Gt) => {
                self.bump();
                let (lit, col) = self.literal()?;
                self.end()?;
                Ok(Stmt::Fact(lit, col))
            }
            (Some(Tok::Word(_)), Some(Tok::Gt)) => {
                let (sup, scol) = self.label()?;
                self.bump();
                let (inf, icol) = self.label()?;
                self.end()?;
                Ok(Stmt::Sup(sup, scol, inf, icol))
            }
            (Some(Tok::Word(_)), Some(Tok::Colon)) => {
                let (label, lcol) = self.label()?;
                self.bump();
                let mut body = Vec::new();
                let kind = loop {
                    match self.peek() {
                        Some(Tok::Arrow(k)) => {
                            self.bump();
                            break *k;
                        }
                        Some(Tok::BadArrow(a)) => return Err(self.bad_arrow(a)),
                        Some(Tok::Gt) => return Err(self.bad_arrow(">")),
                        _ => {}
                    }
                    if !body.is_empty() {
                        match self.peek() {
                            Some(Tok::Comma) => {
                                self.bump();
                            }
                            Some(Tok::BadArrow(a)) => return Err(self.bad_arrow(a)),
                            _ => return Err(self.err("expected `,` or an arrow")),
                        }
                    }
                    body.push(self.literal()?);
                };
                let (head, hcol) = self.literal()?;
                self.end()?;
                let mut lits = body.clone();
                lits.push((head.clone(), hcol));
                let rule = Rule::new(label, kind, body.into_iter().map(|(l, _)| l), head);
                Ok(Stmt::Rule(rule, lcol, lits))
            }
            _ => Err(SourceDiagnostic::new(
                self.line,
                first_col,
                "expected `fact <lit>.`, `<label>: <body> <arrow> <lit>.` or `<label> > <label>.`",
            )),
        }
    }
}

/// Parses a `.dfl` theory. On success the result passes
/// [`DefeasibleTheory::validate`].
pub fn parse_theory(text: &str) -> Result<DefeasibleTheory, Vec<SourceDiagnostic>> {
    let mut diags = Vec::new();
    let mut theory = DefeasibleTheory::new();
    let mut label_pos: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    let mut sups: Vec<(String, (usize, usize), String, (usize, usize))> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let code = strip_comment(raw);
        let toks = lex(code);
        if toks.is_empty() {
            continue;
        }
        let mut p = LineParser {
            toks: &toks,
            pos: 0,
            line: line_no,
            eol: code.chars().count() + 1,
        };
        let stmt = match p.statement() {
            Ok(s) => s,
            Err(d) => {
                diags.push(d);
                continue;
            }
        };
        let reserved = |l: &Literal, col: usize, diags: &mut Vec<SourceDiagnostic>| {
            if l.atom().starts_with(RESERVED_PREFIX) {
                diags.push(SourceDiagnostic::new(
                    line_no,
                    col,
                    format!("atom `{}` uses the reserved prefix `{RESERVED_PREFIX}`", l.atom()),
                ));
                true
            } else {
                false
            }
        };
        match stmt {
            Stmt::Fact(l, col) => {
                if !reserved(&l, col, &mut diags) {
                    theory.facts.insert(l);
                }
            }
            Stmt::Rule(rule, lcol, lits) => {
                let mut bad = false;
                for (l, col) in &lits {
                    bad |= reserved(l, *col, &mut diags);
                }
                if label_pos.contains_key(&rule.label) {
                    diags.push(SourceDiagnostic::new(
                        line_no,
                        lcol,
                        format!("duplicate label `{}`", rule.label),
                    ));
                    continue;
                }
                label_pos.insert(rule.label.clone(), (line_no, lcol));
                if !bad {
                    theory.rules.push(rule);
                }
            }
            Stmt::Sup(s, scol, i, icol) => sups.push((s, (line_no, scol), i, (line_no, icol))),
        }
    }

    for (s, spos, i, ipos) in &sups {
        let mut ok = true;
        for (l, (line, col)) in [(s, spos), (i, ipos)] {
            if !label_pos.contains_key(l) {
                diags.push(SourceDiagnostic::new(
                    *line,
                    *col,
                    format!("superiority references unknown label `{l}`"),
                ));
                ok = false;
            }
        }
        if ok {
            theory.sup.insert(s.clone(), i.clone());
        }
    }
    if let Some(cycle) = theory.sup.find_cycle() {
        let next = if cycle.len() > 1 { &cycle[1] } else { &cycle[0] };
        let (line, col) = sups
            .iter()
            .find(|(s, _, i, _)| s == &cycle[0] && i == next)
            .map(|(_, p, _, _)| *p)
            .unwrap_or((1, 1));
        diags.push(SourceDiagnostic::new(
            line,
            col,
            format!("superiority cycle through {}", cycle.join(" > ")),
        ));
    }

    if diags.is_empty() {
        debug_assert!(theory.is_valid());
        Ok(theory)
    } else {
        diags.sort_by_key(|d| (d.line, d.column));
        Err(diags)
    }
}

/// Canonical text: facts, then rules in label order, then superiority
/// pairs, with literals in lexicographic order.
pub fn render_theory(d: &DefeasibleTheory) -> String {
    let mut out = String::new();
    for f in &d.facts {
        let _ = writeln!(out, "fact {f}.");
    }
    let mut rules: Vec<&Rule> = d.rules.iter().collect();
    rules.sort_by(|a, b| a.label.cmp(&b.label));
    for r in rules {
        let _ = writeln!(out, "{r}.");
    }
    let pairs: BTreeSet<_> = d.sup.pairs().collect();
    for (s, i) in pairs {
        let _ = writeln!(out, "{s} > {i}.");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::RuleKind;

    #[test]
    fn parses_fact_and_rule() {
        let d = parse_theory("fact a.\nr1: a => b.").unwrap();
        assert_eq!(d.facts.iter().collect::<Vec<_>>(), [&Literal::pos("a")]);
        assert_eq!(
            d.rules,
            vec![Rule::defeasible("r1", [Literal::pos("a")], Literal::pos("b"))]
        );
        assert!(d.sup.is_empty());
    }

    #[test]
    fn parses_empty_body_and_superiority() {
        let d = parse_theory("r1: => ~p.\nr2: p => p.\nr2 > r1.").unwrap();
        assert_eq!(d.rules[0], Rule::defeasible("r1", [], Literal::neg("p")));
        assert_eq!(d.rules[1], Rule::defeasible("r2", [Literal::pos("p")], Literal::pos("p")));
        assert_eq!(d.sup.pairs().collect::<Vec<_>>(), [("r2", "r1")]);
    }

    #[test]
    fn all_three_arrows() {
        let d = parse_theory("a: x -> y.\nb: x, ~z => y.\nc: ~> ~y. % defeater").unwrap();
        let kinds: Vec<_> = d.rules.iter().map(|r| r.kind).collect();
        assert_eq!(kinds, [RuleKind::Strict, RuleKind::Defeasible, RuleKind::Defeater]);
        assert_eq!(d.rules[1].antecedent.len(), 2);
    }

    #[test]
    fn unknown_arrow_is_positioned() {
        let err = parse_theory("r1: p >> p.").unwrap_err();
        assert_eq!(err.len(), 1);
        assert_eq!((err[0].line, err[0].column), (1, 7));
        assert!(err[0].message.contains("unknown arrow"));
    }

    #[test]
    fn semantic_errors_are_positioned() {
        let err = parse_theory("r1: => p.\nr1: => q.").unwrap_err();
        assert_eq!((err[0].line, err[0].column), (2, 1));
        assert!(err[0].message.contains("duplicate label"));

        let err = parse_theory("r1: neg_x => p.").unwrap_err();
        assert_eq!((err[0].line, err[0].column), (1, 5));
        assert!(err[0].message.contains("reserved prefix"));

        let err = parse_theory("r1: => p.\nr1 > r9.").unwrap_err();
        assert_eq!((err[0].line, err[0].column), (2, 6));
        assert!(err[0].message.contains("unknown label"));

        let err = parse_theory("r1: => p.\nr2: => ~p.\nr1 > r2.\nr2 > r1.").unwrap_err();
        assert!(err[0].message.contains("superiority cycle"));
        assert!(err[0].line >= 3);
    }

    #[test]
    fn label_named_fact_is_a_rule() {
        let d = parse_theory("fact: a => b.\nfact c.").unwrap();
        assert_eq!(d.rules[0].label, "fact");
        assert!(d.facts.contains(&Literal::pos("c")));
    }

    #[test]
    fn missing_dot_and_trailing_input() {
        assert!(parse_theory("fact a").unwrap_err()[0].message.contains("expected `.`"));
        assert!(parse_theory("fact a. fact b.").unwrap_err()[0]
            .message
            .contains("one statement per line"));
    }

    #[test]
    fn render_is_canonical() {
        assert_eq!(render_theory(&DefeasibleTheory::new()), "");
        let d = parse_theory("r2: p => p.\nr1: => ~p.\nr2 > r1.\nfact z.").unwrap();
        assert_eq!(render_theory(&d), "fact z.\nr1: => ~p.\nr2: p => p.\nr2 > r1.\n");
    }

    #[test]
    fn tweety_round_trips() {
        let text = "fact emu.\nr1: emu -> bird.\nr2: bird => flies.\n";
        let d = parse_theory(text).unwrap();
        let rendered = render_theory(&d);
        assert_eq!(rendered, text);
        assert_eq!(parse_theory(&rendered).unwrap(), d);
    }
}
