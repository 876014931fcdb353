//! Lexer and recursive-descent parser. Recursion depth is bounded by the
//! parenthesis nesting limit; `;` and `*` chains are parsed by iteration.

use super::{BordError, Generator, Kind, Pos, Term};

/// Largest accepted input.
pub const MAX_INPUT_BYTES: usize = 64 * 1024;
/// Deepest accepted parenthesis nesting.
pub const MAX_NESTING: usize = 128;

const ATOM_START: [&str; 7] = ["cap", "cup", "mul", "comul", "id", "swap", "("];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Semi,
    Star,
    Open,
    Close,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("{w:?}"),
            Tok::Semi => "\";\"".into(),
            Tok::Star => "\"*\"".into(),
            Tok::Open => "\"(\"".into(),
            Tok::Close => "\")\"".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, BordError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        let tok = match c {
            ';' => Tok::Semi,
            '*' => Tok::Star,
            '(' => Tok::Open,
            ')' => Tok::Close,
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut w = String::new();
                while let Some(&d) = chars.peek() {
                    if !(d.is_ascii_alphanumeric() || d == '_') {
                        break;
                    }
                    w.push(d);
                    chars.next();
                    col += 1;
                }
                out.push((Tok::Word(w), pos));
                continue;
            }
            found => return Err(BordError::Lexical { line, col, found }),
        };
        chars.next();
        col += 1;
        out.push((tok, pos));
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &(Tok, Pos) {
        &self.toks[self.at]
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if t.0 != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &[&'static str]) -> BordError {
        let (tok, pos) = self.peek();
        BordError::Syntax {
            line: pos.line,
            col: pos.col,
            expected: expected.to_vec(),
            found: tok.describe(),
        }
    }

    fn followers(&self) -> Vec<&'static str> {
        let mut v = vec![";", "*"];
        v.push(if self.depth > 0 { ")" } else { "end of input" });
        v
    }

    fn term(&mut self) -> Result<Term, BordError> {
        let mut t = self.factor()?;
        while self.peek().0 == Tok::Semi {
            let (_, pos) = self.bump();
            let rhs = self.factor()?;
            t = Term::join(t, rhs, Kind::Seq, pos);
        }
        Ok(t)
    }

    fn factor(&mut self) -> Result<Term, BordError> {
        let mut t = self.atom()?;
        while self.peek().0 == Tok::Star {
            let (_, pos) = self.bump();
            let rhs = self.atom()?;
            t = Term::join(t, rhs, Kind::Par, pos);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term, BordError> {
        match self.peek().clone() {
            (Tok::Word(w), pos) => match Generator::from_name(&w) {
                Some(g) => {
                    self.bump();
                    Ok(Term::atom_at(g, pos))
                }
                None => Err(self.error(&ATOM_START)),
            },
            (Tok::Open, pos) => {
                if self.depth == MAX_NESTING {
                    return Err(BordError::TooDeep {
                        line: pos.line,
                        col: pos.col,
                        limit: MAX_NESTING,
                    });
                }
                self.bump();
                self.depth += 1;
                let t = self.term()?;
                if self.peek().0 != Tok::Close {
                    return Err(self.error(&[";", "*", ")"]));
                }
                self.bump();
                self.depth -= 1;
                Ok(t)
            }
            _ => Err(self.error(&ATOM_START)),
        }
    }
}

/// Parses a term; see the module documentation for the grammar.
pub fn parse(src: &str) -> Result<Term, BordError> {
    if src.len() > MAX_INPUT_BYTES {
        return Err(BordError::TooLarge {
            len: src.len(),
            limit: MAX_INPUT_BYTES,
        });
    }
    let mut p = Parser {
        toks: lex(src)?,
        at: 0,
        depth: 0,
    };
    let t = p.term()?;
    if p.peek().0 != Tok::Eof {
        let expected = p.followers();
        return Err(p.error(&expected));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bord::Generator::*;

    #[test]
    fn precedence_and_associativity() {
        let a = Term::atom;
        assert_eq!(parse("cap ; cup").unwrap(), Term::seq(a(Cap), a(Cup)));
        assert_eq!(
            parse("id * id ; mul").unwrap(),
            Term::seq(Term::par(a(Id), a(Id)), a(Mul))
        );
        assert_eq!(
            parse("id;id;id").unwrap(),
            Term::seq(Term::seq(a(Id), a(Id)), a(Id))
        );
        assert_eq!(
            parse("id*id*id").unwrap(),
            Term::par(Term::par(a(Id), a(Id)), a(Id))
        );
        assert_eq!(parse(" \n( cap )\t;\ncup ").unwrap(), parse("cap;cup").unwrap());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse("cap ;\n  foo") {
            Err(BordError::Syntax { line, col, expected, found }) => {
                assert_eq!((line, col), (2, 3));
                assert_eq!(expected, ATOM_START.to_vec());
                assert_eq!(found, "\"foo\"");
            }
            other => panic!("{other:?}"),
        }
        match parse("(cap ; cup") {
            Err(BordError::Syntax { expected, found, .. }) => {
                assert_eq!(expected, vec![";", "*", ")"]);
                assert_eq!(found, "end of input");
            }
            other => panic!("{other:?}"),
        }
        match parse("cap cup") {
            Err(BordError::Syntax { col, expected, .. }) => {
                assert_eq!(col, 5);
                assert_eq!(expected, vec![";", "*", "end of input"]);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse(""), Err(BordError::Syntax { .. })));
        assert!(matches!(parse("id ; )"), Err(BordError::Syntax { .. })));
    }

    #[test]
    fn lexical_and_size_errors() {
        assert_eq!(
            parse("cap ; cup!"),
            Err(BordError::Lexical { line: 1, col: 10, found: '!' })
        );
        assert!(matches!(parse("cap ; ∘"), Err(BordError::Lexical { col: 7, .. })));
        let big = "id;".repeat(MAX_INPUT_BYTES / 3 + 1);
        assert!(matches!(parse(&big), Err(BordError::TooLarge { .. })));
        let deep = format!("{}id{}", "(".repeat(MAX_NESTING + 1), ")".repeat(MAX_NESTING + 1));
        assert!(matches!(parse(&deep), Err(BordError::TooDeep { .. })));
        let ok = format!("{}id{}", "(".repeat(MAX_NESTING), ")".repeat(MAX_NESTING));
        assert!(parse(&ok).is_ok());
    }
}
