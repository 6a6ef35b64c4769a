use super::Formula;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    True,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Next,
    Until,
    Before,
    Eventually,
    Always,
    LParen,
    RParen,
}

fn ident_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '#' | '\'' | '.')
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '!' => Tok::Not,
            '&' => Tok::And,
            '|' => Tok::Or,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Tok::Implies
            }
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                i += 2;
                Tok::Iff
            }
            c if ident_char(c) => {
                let start = i;
                while i < chars.len() && ident_char(chars[i]) {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                let tok = match word.as_str() {
                    "true" => Tok::True,
                    "X" => Tok::Next,
                    "U" => Tok::Until,
                    "B" => Tok::Before,
                    "F" => Tok::Eventually,
                    "G" => Tok::Always,
                    _ => Tok::Ident(word),
                };
                out.push((tok, col));
                continue;
            }
            other => return Err(Error::parse(1, col, format!("unexpected character '{other}'"))),
        };
        out.push((tok, col));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula> {
        let l = self.implies()?;
        if self.eat(&Tok::Iff) {
            return Ok(Formula::iff(l, self.iff()?));
        }
        Ok(l)
    }

    fn implies(&mut self) -> Result<Formula> {
        let l = self.or()?;
        if self.eat(&Tok::Implies) {
            return Ok(Formula::implies(l, self.implies()?));
        }
        Ok(l)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut l = self.and()?;
        while self.eat(&Tok::Or) {
            l = Formula::or(l, self.and()?);
        }
        Ok(l)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut l = self.binary_temporal()?;
        while self.eat(&Tok::And) {
            l = Formula::and(l, self.binary_temporal()?);
        }
        Ok(l)
    }

    fn binary_temporal(&mut self) -> Result<Formula> {
        let l = self.unary()?;
        if self.eat(&Tok::Until) {
            return Ok(Formula::until(l, self.binary_temporal()?));
        }
        if self.eat(&Tok::Before) {
            return Ok(Formula::before(l, self.binary_temporal()?));
        }
        Ok(l)
    }

    fn unary(&mut self) -> Result<Formula> {
        let col = self.col();
        let Some(tok) = self.peek().cloned() else {
            return Err(Error::parse(1, col, "unexpected end of formula"));
        };
        self.pos += 1;
        match tok {
            Tok::Not => Ok(Formula::not(self.unary()?)),
            Tok::Next => Ok(Formula::next(self.unary()?)),
            Tok::Eventually => Ok(Formula::eventually(self.unary()?)),
            Tok::Always => Ok(Formula::always(self.unary()?)),
            Tok::True => Ok(Formula::True),
            Tok::Ident(name) => Ok(Formula::Atom(name)),
            Tok::LParen => {
                let inner = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    return Err(Error::parse(1, self.col(), "expected ')'"));
                }
                Ok(inner)
            }
            other => Err(Error::parse(1, col, format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses a formula. Precedence, tightest first: `! X F G`, `U B`
/// (right-associative), `&`, `|`, `->`, `<->`.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end_col: text.chars().count() + 1,
    };
    let f = p.iff()?;
    if p.pos != p.toks.len() {
        return Err(Error::parse(1, p.col(), "trailing input"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn parses_examples() {
        assert_eq!(
            p("G F result"),
            Formula::always(Formula::eventually(Formula::atom("result")))
        );
        assert_eq!(p("a U b U c"), Formula::until(Formula::atom("a"), p("b U c")));
        assert_eq!(p("a & b | c"), Formula::or(p("a & b"), p("c")));
        assert_eq!(p("!a U b"), Formula::until(p("!a"), p("b")));
        assert_eq!(p("a -> b -> c"), Formula::implies(p("a"), p("b -> c")));
        assert_eq!(p("((a))"), p("a"));
        assert_eq!(p("X(a)"), p("X a"));
    }

    #[test]
    fn reports_positions() {
        match parse_formula("a & & b") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("{other:?}"),
        }
        match parse_formula("(a | b") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 7),
            other => panic!("{other:?}"),
        }
        assert!(parse_formula("a $ b").is_err());
        assert!(parse_formula("").is_err());
        assert!(parse_formula("a b").is_err());
    }
}
