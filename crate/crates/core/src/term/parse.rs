use super::Term;
use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Star,
    Backslash,
    Slash,
    Open,
    Close,
    Equals,
    Lin,
    Rin,
    E,
    Ident(String),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Star => "'*'".into(),
            Tok::Backslash => "'\\'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Open => "'('".into(),
            Tok::Close => "')'".into(),
            Tok::Equals => "'='".into(),
            Tok::Lin => "'^l'".into(),
            Tok::Rin => "'^r'".into(),
            Tok::E => "'e'".into(),
            Tok::Ident(s) => format!("variable {s:?}"),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        i += 1;
        let tok = match c {
            c if c.is_whitespace() => continue,
            '*' => Tok::Star,
            '\\' => Tok::Backslash,
            '/' => Tok::Slash,
            '(' => Tok::Open,
            ')' => Tok::Close,
            '=' => Tok::Equals,
            '^' => match chars.get(i) {
                Some((_, 'l')) => {
                    i += 1;
                    Tok::Lin
                }
                Some((_, 'r')) => {
                    i += 1;
                    Tok::Rin
                }
                _ => {
                    return Err(ParseError::Syntax {
                        position: pos + 1,
                        expected: "'l' or 'r' after '^'".into(),
                    })
                }
            },
            c if c.is_ascii_lowercase() => {
                let mut name = String::from(c);
                while let Some(&(_, d)) = chars.get(i) {
                    if !d.is_ascii_lowercase() {
                        break;
                    }
                    name.push(d);
                    i += 1;
                }
                if name == "e" {
                    Tok::E
                } else {
                    Tok::Ident(name)
                }
            }
            other => {
                return Err(ParseError::UnknownSymbol {
                    position: pos,
                    symbol: other,
                })
            }
        };
        out.push((pos, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn error(&self, expected: &str) -> ParseError {
        let found = self
            .peek()
            .map_or_else(|| "end of input".to_string(), Tok::describe);
        ParseError::Syntax {
            position: self.position(),
            expected: format!("{expected}, found {found}"),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.at += 1;
            acc = Term::mul(acc, self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.atom()?;
        loop {
            match self.peek() {
                Some(Tok::Backslash) => {
                    self.at += 1;
                    acc = Term::ldiv(acc, self.atom()?);
                }
                Some(Tok::Slash) => {
                    self.at += 1;
                    acc = Term::rdiv(acc, self.atom()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.primary()?;
        loop {
            match self.peek() {
                Some(Tok::Lin) => acc = Term::lin(acc),
                Some(Tok::Rin) => acc = Term::rin(acc),
                _ => return Ok(acc),
            }
            self.at += 1;
        }
    }

    fn primary(&mut self) -> Result<Term, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.at += 1;
                Ok(Term::Var(name))
            }
            Some(Tok::E) => {
                self.at += 1;
                Ok(Term::E)
            }
            Some(Tok::Open) => {
                self.at += 1;
                let inner = self.term()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(self.error("')'"));
                }
                self.at += 1;
                Ok(inner)
            }
            _ => Err(self.error("variable, 'e' or '('")),
        }
    }
}

fn parser(src: &str) -> Result<Parser, ParseError> {
    Ok(Parser {
        toks: tokenize(src)?,
        at: 0,
        end: src.len(),
    })
}

/// Parses a single term.
pub fn parse(src: &str) -> Result<Term, ParseError> {
    let mut p = parser(src)?;
    let t = p.term()?;
    if p.peek().is_some() {
        return Err(p.error("end of input"));
    }
    Ok(t)
}

/// Parses `term = term`.
pub fn parse_identity(src: &str) -> Result<(Term, Term), ParseError> {
    let mut p = parser(src)?;
    let lhs = p.term()?;
    if p.peek() != Some(&Tok::Equals) {
        return Err(p.error("'='"));
    }
    p.at += 1;
    let rhs = p.term()?;
    if p.peek().is_some() {
        return Err(p.error("end of input"));
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Term {
        Term::var(s)
    }

    #[test]
    fn precedence_examples() {
        assert_eq!(
            parse("x * y \\ z").unwrap(),
            Term::mul(v("x"), Term::ldiv(v("y"), v("z")))
        );
        assert_eq!(parse("e").unwrap(), Term::E);
        assert_eq!(
            parse("(x*y)^r").unwrap(),
            Term::rin(Term::mul(v("x"), v("y")))
        );
        // postfix binds tighter than division
        assert_eq!(
            parse("x / y^l").unwrap(),
            Term::rdiv(v("x"), Term::lin(v("y")))
        );
        // left associativity at equal precedence
        assert_eq!(
            parse("x/y\\z").unwrap(),
            Term::ldiv(Term::rdiv(v("x"), v("y")), v("z"))
        );
        assert_eq!(
            parse("x*y*z").unwrap(),
            Term::mul(Term::mul(v("x"), v("y")), v("z"))
        );
        assert_eq!(parse("x^l^r").unwrap(), Term::rin(Term::lin(v("x"))));
        assert_eq!(parse("ab * ex").unwrap(), Term::mul(v("ab"), v("ex")));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(
            parse("x * ").unwrap_err().position(),
            4,
        );
        assert!(matches!(
            parse("x + y"),
            Err(ParseError::UnknownSymbol { position: 2, symbol: '+' })
        ));
        assert!(matches!(parse("(x*y"), Err(ParseError::Syntax { position: 4, .. })));
        assert!(matches!(parse("x^q"), Err(ParseError::Syntax { position: 2, .. })));
        assert!(matches!(parse("x y"), Err(ParseError::Syntax { position: 2, .. })));
        assert!(parse_identity("x*y").is_err());
        assert!(parse_identity("x = y = z").is_err());
        assert!(matches!(parse("X"), Err(ParseError::UnknownSymbol { .. })));
    }
}
