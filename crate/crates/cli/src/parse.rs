//! Text syntax for polynomial maps: `P; Q` over the variables `x`, `y`.
//!
//! ```text
//! map    := expr ';' expr
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor ('*'? factor)*
//! factor := base ('^' nat)?
//! base   := 'x' | 'y' | int ('/' int)? | '(' expr ')'
//! ```
//!
//! `−` (U+2212) is accepted for `-`. A run of the letters `x`, `y` such as
//! `xy` is a product of variables; any other identifier is rejected.

use num_bigint::BigInt;
use thiserror::Error;

use jacinf_core::algebra::{ExtField, Rational, SparsePoly, Vars};
use jacinf_core::resolution::{xy_vars, PolyMap, ResolutionError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: unknown variable {name}")]
    UnknownVariable { line: usize, col: usize, name: String },
    #[error("{line}:{col}: exponent must be a nonnegative integer literal")]
    BadExponent { line: usize, col: usize },
    #[error("expected two components separated by ';', found {0}")]
    Components(usize),
    #[error("invalid map: {0}")]
    Map(#[from] ResolutionError),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Semi,
    End,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, k) = (line, col);
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' | '−' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ';' => Some(Tok::Semi),
            _ => None,
        };
        if let Some(tok) = simple {
            chars.next();
            col += 1;
            out.push(Spanned { tok, line: l, col: k });
        } else if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push(Spanned { tok: Tok::Int(s.parse().expect("digits")), line: l, col: k });
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_alphanumeric() || **d == '_') {
                s.push(d);
                chars.next();
                col += 1;
            }
            if s.len() > 1 && s.chars().all(|c| c == 'x' || c == 'y') {
                // adjacent variables multiply, e.g. `xy^2`
                out.extend(s.chars().enumerate().map(|(i, c)| Spanned { tok: Tok::Ident(c.into()), line: l, col: k + i }));
            } else {
                out.push(Spanned { tok: Tok::Ident(s), line: l, col: k });
            }
        } else {
            return Err(ParseError::Syntax { line: l, col: k, msg: format!("unexpected character '{c}'") });
        }
    }
    out.push(Spanned { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    field: ExtField,
    vars: Vars,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, at: &Spanned, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax { line: at.line, col: at.col, msg: msg.into() }
    }

    fn expr(&mut self) -> Result<SparsePoly, ParseError> {
        let mut acc = SparsePoly::zero(&self.field, &self.vars);
        let mut negate = match self.peek().tok {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            acc = if negate { acc.sub(&t) } else { acc.add(&t) };
            negate = match self.peek().tok {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(acc),
            };
            self.bump();
        }
    }

    fn term(&mut self) -> Result<SparsePoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::LParen => {}
                _ => return Ok(acc),
            }
            acc = acc.mul(&self.factor()?);
        }
    }

    fn factor(&mut self) -> Result<SparsePoly, ParseError> {
        let base = self.base()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.bump();
        let e = match &at.tok {
            Tok::Int(n) => u32::try_from(n).map_err(|_| self.error(&at, "exponent too large"))?,
            _ => return Err(ParseError::BadExponent { line: at.line, col: at.col }),
        };
        if self.peek().tok == Tok::Slash {
            return Err(ParseError::BadExponent { line: at.line, col: at.col });
        }
        Ok(base.pow(e))
    }

    fn base(&mut self) -> Result<SparsePoly, ParseError> {
        let at = self.bump();
        match at.tok {
            Tok::Ident(ref name) => match self.vars.iter().position(|v| v == name) {
                Some(i) => Ok(SparsePoly::var(&self.field, &self.vars, i)),
                None => Err(ParseError::UnknownVariable { line: at.line, col: at.col, name: name.clone() }),
            },
            Tok::Int(n) => {
                let mut r = Rational::from_integer(n);
                if self.peek().tok == Tok::Slash {
                    self.bump();
                    let d = self.bump();
                    match d.tok {
                        Tok::Int(ref den) if den.sign() != num_bigint::Sign::NoSign => {
                            r /= Rational::from_integer(den.clone());
                        }
                        Tok::Int(_) => return Err(self.error(&d, "zero denominator")),
                        _ => return Err(self.error(&d, "expected a denominator")),
                    }
                }
                Ok(SparsePoly::from_i64(&self.field, &self.vars, 1).scale_rational(&r))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(self.error(&close, "expected ')'"));
                }
                Ok(inner)
            }
            Tok::End => Err(self.error(&at, "unexpected end of input")),
            ref t => Err(self.error(&at, format!("unexpected {}", describe(t)))),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::Star => "'*'",
        Tok::Slash => "'/'",
        Tok::Caret => "'^'",
        Tok::RParen => "')'",
        Tok::Semi => "';'",
        _ => "token",
    }
}

fn parser(src: &str) -> Result<Parser, ParseError> {
    Ok(Parser { toks: lex(src)?, pos: 0, field: ExtField::rationals(), vars: xy_vars() })
}

/// One polynomial in `x`, `y`.
pub fn parse_poly(src: &str) -> Result<SparsePoly, ParseError> {
    let mut p = parser(src)?;
    let out = p.expr()?;
    let end = p.bump();
    if end.tok != Tok::End {
        return Err(p.error(&end, format!("unexpected {}", describe(&end.tok))));
    }
    Ok(out)
}

/// A map `P; Q`.
pub fn parse_map(src: &str) -> Result<PolyMap, ParseError> {
    let mut p = parser(src)?;
    let mut parts = Vec::new();
    loop {
        parts.push(p.expr()?);
        let at = p.bump();
        match at.tok {
            Tok::Semi => continue,
            Tok::End => break,
            ref t => return Err(p.error(&at, format!("unexpected {}", describe(t)))),
        }
    }
    if parts.len() != 2 {
        return Err(ParseError::Components(parts.len()));
    }
    let q = parts.pop().expect("two parts");
    let pp = parts.pop().expect("two parts");
    Ok(PolyMap::new(pp, q)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn graph_map_and_cusp_example() {
        assert_eq!(parse_map("x + y^3; y").unwrap().to_string(), "y^3 + x; y");
        let g = parse_map("2x^3 + x*y; 3x^2 + y").unwrap();
        assert_eq!(g.to_string(), "2*x^3 + x*y; 3*x^2 + y");
        assert_eq!(g.jacobian().to_string(), "y");
    }

    #[test]
    fn implicit_products_and_unicode_minus() {
        assert_eq!(parse_poly("2x y (x − 1)").unwrap().to_string(), "2*x^2*y - 2*x*y");
        assert_eq!(parse_poly("-1/2x^2 + 3/4").unwrap().to_string(), "-1/2*x^2 + 3/4");
        assert_eq!(parse_poly("(x+y)^2 - x^2 - y^2").unwrap().to_string(), "2*x*y");
        assert_eq!(parse_poly("3xy^2x").unwrap().to_string(), "3*x^2*y^2");
        assert_eq!(
            parse_poly("x + xyz").unwrap_err(),
            ParseError::UnknownVariable { line: 1, col: 5, name: "xyz".into() }
        );
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_map("x + z; y").unwrap_err(),
            ParseError::UnknownVariable { line: 1, col: 5, name: "z".into() }
        );
        assert_eq!(parse_map("x;\n y^-1").unwrap_err(), ParseError::BadExponent { line: 2, col: 4 });
        assert_eq!(parse_map("x^1/2; y").unwrap_err(), ParseError::BadExponent { line: 1, col: 3 });
        assert!(matches!(parse_map("x + ; y"), Err(ParseError::Syntax { line: 1, col: 5, .. })));
        assert!(matches!(parse_map("(x; y"), Err(ParseError::Syntax { line: 1, col: 3, .. })));
        assert!(matches!(parse_map("1/0; y"), Err(ParseError::Syntax { .. })));
        assert_eq!(parse_map("x").unwrap_err(), ParseError::Components(1));
        assert_eq!(parse_map("1; 2").unwrap_err(), ParseError::Map(ResolutionError::ConstantMap));
    }

    fn small_poly() -> impl Strategy<Value = SparsePoly> {
        prop::collection::vec((-9i64..=9, 1i64..=5, 0u32..4, 0u32..4), 0..6).prop_map(|terms| {
            let (f, v) = (ExtField::rationals(), xy_vars());
            terms.into_iter().fold(SparsePoly::zero(&f, &v), |acc, (n, d, i, j)| {
                let m = SparsePoly::from_int_terms(&f, &v, &[(1, &[i, j])]);
                acc.add(&m.scale_rational(&jacinf_core::algebra::ratio(n, d)))
            })
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity(p in small_poly()) {
            prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
        }
    }
}
