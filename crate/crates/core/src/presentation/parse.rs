//! Line-oriented relation grammar.
//!
//! ```text
//! relation := sum "=" sum
//! sum      := ["+"|"-"] term (("+"|"-") term)*
//! term     := [coef] word | coef
//! coef     := real literal | "(" complex literal ")"
//! word     := factor+ | "1"
//! factor   := "a" index ["*"]
//! ```
//!
//! `#` starts a comment. A sum consisting of `0` is empty.

use super::{Presentation, Relation, StarWord, Term};
use crate::error::{Error, Result};
use crate::linalg::{c64, C64, ONE};
use crate::literal::{scan_complex, scan_unsigned};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    /// Bare real literal, with its source text.
    Num(f64, String),
    /// Parenthesised complex literal.
    Complex(C64),
    Gen(usize),
    Star,
    Plus,
    Minus,
    Eq,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex_line(text: &str, line: usize) -> Result<Vec<Spanned>> {
    let s = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    // Columns count characters, not bytes.
    let col = |i: usize| text[..i].chars().count() + 1;
    while i < s.len() {
        let b = s[i];
        let column = col(i);
        let push = |out: &mut Vec<Spanned>, tok| out.push(Spanned { tok, line, column });
        match b {
            b'#' => break,
            b' ' | b'\t' | b'\r' => i += 1,
            b'*' => {
                push(&mut out, Tok::Star);
                i += 1;
            }
            b'+' => {
                push(&mut out, Tok::Plus);
                i += 1;
            }
            b'-' => {
                push(&mut out, Tok::Minus);
                i += 1;
            }
            b'=' => {
                push(&mut out, Tok::Eq);
                i += 1;
            }
            b'a' => {
                let start = i + 1;
                let mut j = start;
                while j < s.len() && s[j].is_ascii_digit() {
                    j += 1;
                }
                if j == start {
                    return Err(syntax(line, column, "expected generator index after `a`"));
                }
                let index: usize = text[start..j]
                    .parse()
                    .map_err(|_| syntax(line, column, "generator index too large"))?;
                if index == 0 {
                    return Err(syntax(line, column, "generator indices start at 1"));
                }
                push(&mut out, Tok::Gen(index));
                i = j;
            }
            b'(' => {
                let mut j = i + 1;
                while j < s.len() && s[j] == b' ' {
                    j += 1;
                }
                let (z, end) = scan_complex(s, j)
                    .ok_or_else(|| syntax(line, column, "expected complex literal after `(`"))?;
                let mut k = end;
                while k < s.len() && s[k] == b' ' {
                    k += 1;
                }
                if k >= s.len() || s[k] != b')' {
                    return Err(syntax(line, col(k.min(s.len())), "expected `)`"));
                }
                push(&mut out, Tok::Complex(z));
                i = k + 1;
            }
            b'0'..=b'9' | b'.' => {
                let (v, end) =
                    scan_unsigned(s, i).ok_or_else(|| syntax(line, column, "malformed number"))?;
                push(&mut out, Tok::Num(v, text[i..end].to_string()));
                i = end;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(syntax(line, column, format!("unexpected character `{ch}`")));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    line: usize,
    end_column: usize,
    generator_count: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|s| (s.line, s.column))
            .unwrap_or((self.line, self.end_column))
    }

    fn err(&self, message: impl Into<String>) -> Error {
        let (line, column) = self.here();
        syntax(line, column, message)
    }

    fn word(&mut self) -> Result<StarWord> {
        let mut factors = Vec::new();
        while let Some(Tok::Gen(index)) = self.peek().cloned() {
            let (line, column) = self.here();
            if index > self.generator_count {
                return Err(Error::UnknownGenerator {
                    index,
                    count: self.generator_count,
                    line,
                    column,
                });
            }
            self.pos += 1;
            let star = matches!(self.peek(), Some(Tok::Star));
            if star {
                self.pos += 1;
            }
            factors.push((index - 1, star));
        }
        Ok(StarWord::new(factors))
    }

    fn term(&mut self) -> Result<Term> {
        let coef = match self.peek().cloned() {
            Some(Tok::Num(v, _)) => {
                self.pos += 1;
                Some(c64(v, 0.0))
            }
            Some(Tok::Complex(z)) => {
                self.pos += 1;
                Some(z)
            }
            _ => None,
        };
        match self.peek().cloned() {
            Some(Tok::Gen(_)) => {
                let word = self.word()?;
                Ok(Term::new(coef.unwrap_or(ONE), word))
            }
            Some(Tok::Num(v, _)) if coef.is_some() && v == 1.0 => {
                // `c 1`: explicit unit word after a coefficient.
                self.pos += 1;
                Ok(Term::new(coef.unwrap_or(ONE), StarWord::unit()))
            }
            _ => match coef {
                Some(c) => Ok(Term::new(c, StarWord::unit())),
                None => Err(self.err("expected a term")),
            },
        }
    }

    fn sum(&mut self) -> Result<Vec<Term>> {
        let mut terms = Vec::new();
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -1.0
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                1.0
            }
            _ => 1.0,
        };
        loop {
            let mut t = self.term()?;
            t.coef *= sign;
            terms.push(t);
            sign = match self.peek() {
                Some(Tok::Plus) => 1.0,
                Some(Tok::Minus) => -1.0,
                _ => break,
            };
            self.pos += 1;
        }
        Ok(terms)
    }

    fn relation(&mut self) -> Result<Relation> {
        let lhs = self.sum()?;
        match self.peek() {
            Some(Tok::Eq) => self.pos += 1,
            _ => return Err(self.err("expected `=`")),
        }
        let rhs = self.sum()?;
        if self.pos != self.toks.len() {
            return Err(self.err("unexpected token after relation"));
        }
        let r = Relation::new(lhs, rhs);
        if r.lhs.is_empty() && r.rhs.is_empty() {
            return Err(syntax(self.line, 1, "relation has no non-zero terms"));
        }
        Ok(r)
    }
}

/// Parses relation text, one relation per non-empty line, over generators
/// `a1 … a{generator_count}`.
pub fn parse_relations(text: &str, generator_count: usize) -> Result<Presentation> {
    let mut relations = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let toks = lex_line(line, k + 1)?;
        if toks.is_empty() {
            continue;
        }
        let mut p = Parser {
            toks: &toks,
            pos: 0,
            line: k + 1,
            end_column: line.chars().count() + 1,
            generator_count,
        };
        relations.push(p.relation()?);
    }
    Presentation::new("custom", generator_count, relations)
}

/// Parses a single sum such as `a1 a2 + a2 a1` (no `=`).
pub fn parse_sum(text: &str, generator_count: usize) -> Result<Vec<Term>> {
    let toks = lex_line(text, 1)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        line: 1,
        end_column: text.chars().count() + 1,
        generator_count,
    };
    let terms = p.sum()?;
    if p.pos != toks.len() {
        return Err(p.err("unexpected token after sum"));
    }
    Ok(terms
        .into_iter()
        .filter(|t| t.coef != c64(0.0, 0.0))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{preset, Preset};

    #[test]
    fn parses_disk_relation() {
        let p = parse_relations("a1* a1 + a1 a1* = 1", 1).unwrap();
        assert_eq!(p.relations.len(), 1);
        let r = &p.relations[0];
        assert_eq!(r.lhs.len(), 2);
        assert_eq!(r.lhs[0].word, StarWord::new(vec![(0, true), (0, false)]));
        assert_eq!(r.lhs[1].word, StarWord::new(vec![(0, false), (0, true)]));
        assert_eq!(r.rhs, vec![Term::new(ONE, StarWord::unit())]);
    }

    #[test]
    fn parses_leading_minus_on_rhs() {
        let p = parse_relations("a1* a2 = - a2 a1*", 2).unwrap();
        let r = &p.relations[0];
        assert_eq!(
            r.lhs,
            vec![Term::new(ONE, StarWord::new(vec![(0, true), (1, false)]))]
        );
        assert_eq!(
            r.rhs,
            vec![Term::new(
                c64(-1.0, 0.0),
                StarWord::new(vec![(1, false), (0, true)])
            )]
        );
    }

    #[test]
    fn complex_and_unit_coefficients() {
        let p = parse_relations("(0.3+0.1i) a1 a2 - 2 1 = 0.5 # trailing comment", 2).unwrap();
        let r = &p.relations[0];
        assert_eq!(r.lhs[0].coef, c64(0.3, 0.1));
        assert_eq!(r.lhs[1], Term::new(c64(-2.0, 0.0), StarWord::unit()));
        assert_eq!(r.rhs, vec![Term::new(c64(0.5, 0.0), StarWord::unit())]);
    }

    #[test]
    fn zero_side_is_empty() {
        let p = parse_relations("a1 a1 = 0", 1).unwrap();
        assert!(p.relations[0].rhs.is_empty());
    }

    #[test]
    fn missing_equals_is_syntax_error() {
        match parse_relations("a1 a1", 1) {
            Err(Error::Syntax {
                line: 1, column: 6, ..
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reports_line_and_column() {
        let text = "a1* a1 + a1 a1* = 1\n\n  a1 $ a1 = 0\n";
        match parse_relations(text, 1) {
            Err(Error::Syntax {
                line: 3, column: 6, ..
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_generator() {
        match parse_relations("a1 a3 = 0", 2) {
            Err(Error::UnknownGenerator {
                index: 3,
                count: 2,
                line: 1,
                column: 4,
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_empty_relation_and_junk() {
        assert!(parse_relations("0 = 0", 1).is_err());
        assert!(parse_relations("a1 = = a1", 1).is_err());
        assert!(parse_relations("a = 1", 1).is_err());
        assert!(parse_relations("a0 = 1", 1).is_err());
        assert!(parse_relations("2 3 = 1", 1).is_err());
        assert!(parse_relations("(1+2i a1 = 1", 1).is_err());
        assert!(parse_relations("a1 + = 1", 1).is_err());
    }

    #[test]
    fn preset_corpus_round_trips() {
        let corpus = [
            Preset::Car { d: 3 },
            Preset::Qccr { d: 2, q: 0.3 },
            Preset::Tcar { d: 3, mu: 0.4 },
            Preset::Wtcar { d: 3, mu: 0.7 },
            Preset::Disk { q: -0.5 },
            Preset::Disk { q: -1.0 },
            Preset::DiskNormalized,
            Preset::Wcar { d: 3 },
            Preset::WcarY { y: c64(0.3, -0.2) },
        ];
        for pr in corpus {
            let p = preset(&pr).unwrap();
            let text = p.render();
            let back = parse_relations(&text, p.generator_count).unwrap();
            assert_eq!(back.relations, p.relations, "{text}");
            assert_eq!(back.render(), text);
        }
    }

    #[test]
    fn parse_sum_accepts_expression() {
        let s = parse_sum("a1 a2 + a2 a1", 2).unwrap();
        assert_eq!(s.len(), 2);
        assert!(parse_sum("a1 = a2", 2).is_err());
    }
}
