//! Text parser for polynomial input.
//!
//! Grammar: integer literals, variables `x`,`y`,`z` (coordinates 1-3) or
//! `x1`..`x9`, operators `+ - *`, exponent `^` with a nonnegative integer
//! exponent, and parentheses. Unary minus binds looser than `^`, so `-x^2`
//! is `-(x^2)`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::IntPolynomial;
use crate::{Error, Result};

pub fn parse_polynomial(text: &str, num_vars: usize) -> Result<IntPolynomial> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0, num_vars };
    let poly = p.expr()?;
    match p.peek() {
        None => Ok(poly),
        Some(t) => Err(err(t.pos, "unexpected trailing input")),
    }
}

fn err(position: usize, message: &str) -> Error {
    Error::Parse { position, message: message.to_string() }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Token {
    pos: usize,
    tok: Tok,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let pos = i;
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: BigInt = text[start..i].parse().unwrap();
                out.push(Token { pos, tok: Tok::Int(lit) });
            }
            b'x' => {
                // x followed by a digit 1-9 is an indexed variable
                if i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    let d = bytes[i + 1] - b'0';
                    if d == 0 {
                        return Err(err(pos, "variable index must be 1-9"));
                    }
                    out.push(Token { pos, tok: Tok::Var(d as usize - 1) });
                    i += 2;
                } else {
                    out.push(Token { pos, tok: Tok::Var(0) });
                    i += 1;
                }
            }
            b'y' => {
                out.push(Token { pos, tok: Tok::Var(1) });
                i += 1;
            }
            b'z' => {
                out.push(Token { pos, tok: Tok::Var(2) });
                i += 1;
            }
            b'+' => {
                out.push(Token { pos, tok: Tok::Plus });
                i += 1;
            }
            b'-' => {
                out.push(Token { pos, tok: Tok::Minus });
                i += 1;
            }
            b'*' => {
                out.push(Token { pos, tok: Tok::Star });
                i += 1;
            }
            b'^' => {
                out.push(Token { pos, tok: Tok::Caret });
                i += 1;
            }
            b'(' => {
                out.push(Token { pos, tok: Tok::LParen });
                i += 1;
            }
            b')' => {
                out.push(Token { pos, tok: Tok::RParen });
                i += 1;
            }
            _ => return Err(err(pos, "unexpected character")),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    num_vars: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn end_pos(&self) -> usize {
        self.tokens.last().map(|t| t.pos + 1).unwrap_or(0)
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<IntPolynomial> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t.tok {
                Tok::Plus => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> Result<IntPolynomial> {
        let mut acc = self.factor()?;
        while let Some(t) = self.peek() {
            if t.tok == Tok::Star {
                self.next();
                acc = acc.mul(&self.factor()?);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    // factor := ('-' | '+') factor | power
    fn factor(&mut self) -> Result<IntPolynomial> {
        match self.peek().map(|t| t.tok.clone()) {
            Some(Tok::Minus) => {
                self.next();
                Ok(self.factor()?.neg())
            }
            Some(Tok::Plus) => {
                self.next();
                self.factor()
            }
            _ => self.power(),
        }
    }

    // power := atom ('^' intlit)*
    fn power(&mut self) -> Result<IntPolynomial> {
        let mut acc = self.atom()?;
        while let Some(t) = self.peek() {
            if t.tok != Tok::Caret {
                break;
            }
            self.next();
            let Some(t) = self.next() else {
                return Err(err(self.end_pos(), "expected exponent after '^'"));
            };
            let Tok::Int(e) = t.tok else {
                return Err(err(t.pos, "exponent must be a nonnegative integer literal"));
            };
            let Some(e) = e.to_u32() else {
                return Err(err(t.pos, "exponent overflow"));
            };
            acc = acc.pow(e);
        }
        Ok(acc)
    }

    // atom := intlit | variable | '(' expr ')'
    fn atom(&mut self) -> Result<IntPolynomial> {
        let Some(t) = self.next() else {
            return Err(err(self.end_pos(), "unexpected end of input"));
        };
        match t.tok {
            Tok::Int(v) => Ok(IntPolynomial::constant(self.num_vars, v)),
            Tok::Var(idx) => {
                if idx >= self.num_vars {
                    return Err(err(t.pos, "variable index exceeds the number of variables"));
                }
                Ok(IntPolynomial::variable(self.num_vars, idx))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token { tok: Tok::RParen, .. }) => Ok(inner),
                    Some(t) => Err(err(t.pos, "expected ')'")),
                    None => Err(err(self.end_pos(), "missing ')'")),
                }
            }
            _ => Err(err(t.pos, "expected a number, variable, or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn direct_reading() {
        let f = parse_polynomial("y^2+y+1", 2).unwrap();
        assert_eq!(f.num_terms(), 3);
        assert_eq!(f.coeff(&[0, 2]), BigInt::one());
        assert_eq!(f.coeff(&[0, 1]), BigInt::one());
        assert_eq!(f.coeff(&[0, 0]), BigInt::one());

        let g = parse_polynomial("x^2+x+1", 1).unwrap();
        assert_eq!(g.coeff(&[2]), BigInt::one());
        assert_eq!(g.coeff(&[1]), BigInt::one());
        assert_eq!(g.coeff(&[0]), BigInt::one());
    }

    #[test]
    fn expansion_matches_distributive_law() {
        let f = parse_polynomial("-1+(x+1)*(y^3+y^2+y+1)", 2).unwrap();
        // constant cancels: -1 + 1 = 0; seven terms remain
        assert_eq!(f.num_terms(), 7);
        assert_eq!(f.coeff(&[0, 0]), BigInt::from(0));
        for e in [[1u32, 0], [0, 1], [1, 1], [0, 2], [1, 2], [0, 3], [1, 3]] {
            assert_eq!(f.coeff(&e), BigInt::one(), "missing term {e:?}");
        }
        let by_hand = parse_polynomial("x*y^3+x*y^2+x*y+x+y^3+y^2+y", 2).unwrap();
        assert_eq!(f, by_hand);
    }

    #[test]
    fn unary_minus_binds_looser_than_caret() {
        let a = parse_polynomial("-x^2", 1).unwrap();
        assert_eq!(a.coeff(&[2]), BigInt::from(-1));
        let b = parse_polynomial("0-x^2", 1).unwrap();
        assert_eq!(a, b);
        // double negation and unary plus
        assert_eq!(parse_polynomial("--x", 1).unwrap(), parse_polynomial("x", 1).unwrap());
        assert_eq!(parse_polynomial("+x", 1).unwrap(), parse_polynomial("x", 1).unwrap());
    }

    #[test]
    fn indexed_variables() {
        let f = parse_polynomial("x1*x2^2 - x3", 3).unwrap();
        assert_eq!(f.coeff(&[1, 2, 0]), BigInt::one());
        assert_eq!(f.coeff(&[0, 0, 1]), BigInt::from(-1));
        // x and x1 are the same coordinate
        assert_eq!(parse_polynomial("x - x1", 2).unwrap().num_terms(), 0);
    }

    #[test]
    fn integer_powers_and_parens() {
        let f = parse_polynomial("(x+1)^3", 1).unwrap();
        assert_eq!(f.coeff(&[2]), BigInt::from(3));
        let g = parse_polynomial("2^3", 1).unwrap();
        assert_eq!(g.coeff(&[0]), BigInt::from(8));
        let h = parse_polynomial("x^0", 1).unwrap();
        assert_eq!(h.coeff(&[0]), BigInt::one());
    }

    #[test]
    fn display_round_trips() {
        for (text, vars) in [
            ("y^2+y+1", 2),
            ("x^2+x+1", 1),
            ("-x+2", 1),
            ("x1*x2^2 - x3 + 5", 4),
            ("2*x*y - 3", 2),
            ("0", 1),
        ] {
            let f = parse_polynomial(text, vars).unwrap();
            let rendered = f.to_string();
            let g = parse_polynomial(&rendered, vars).unwrap();
            assert_eq!(f, g, "{text} -> {rendered}");
        }
    }

    #[test]
    fn error_positions() {
        match parse_polynomial("x+ ?", 1) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_polynomial("y", 1) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 0),
            other => panic!("expected variable-range error, got {other:?}"),
        }
        match parse_polynomial("x^(2)", 1) {
            Err(Error::Parse { .. }) => {}
            other => panic!("exponent must be a literal, got {other:?}"),
        }
        match parse_polynomial("x^99999999999999999999", 1) {
            Err(Error::Parse { message, .. }) => assert!(message.contains("overflow")),
            other => panic!("expected overflow error, got {other:?}"),
        }
        assert!(parse_polynomial("(x+1", 1).is_err());
        assert!(parse_polynomial("x^-2", 1).is_err());
        assert!(parse_polynomial("x0", 1).is_err());
    }
}
