//! Lexer shared by the scalar and algebra-element grammars, plus the
//! scalar literal parser.
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor (('*'|'/') factor)*
//! factor   := rational | root | '(' expr ')' | '-' factor
//! root     := 'z' INT ('^' INT)?
//! rational := INT ('/' INT)?
//! ```

use num_bigint::BigInt;

use super::{lcm, CycNum};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

pub struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    peeked: Option<(usize, Token)>,
}

impl<'a> Lexer<'a> {
    pub fn new(src: &'a str) -> Lexer<'a> {
        Lexer { src, pos: 0, peeked: None }
    }

    pub fn error(&self, pos: usize, msg: impl Into<String>) -> Error {
        Error::Syntax { pos, msg: msg.into() }
    }

    fn lex(&mut self) -> Result<(usize, Token)> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&b) = bytes.get(self.pos) else {
            return Ok((start, Token::End));
        };
        let single = match b {
            b'+' => Some(Token::Plus),
            b'-' => Some(Token::Minus),
            b'*' => Some(Token::Star),
            b'/' => Some(Token::Slash),
            b'^' => Some(Token::Caret),
            b'(' => Some(Token::LParen),
            b')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            self.pos += 1;
            return Ok((start, tok));
        }
        if b.is_ascii_digit() {
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let v: BigInt = self.src[start..self.pos].parse().expect("digits");
            return Ok((start, Token::Int(v)));
        }
        if b.is_ascii_alphabetic() || b == b'_' {
            while self.pos < bytes.len() && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_') {
                self.pos += 1;
            }
            return Ok((start, Token::Ident(self.src[start..self.pos].to_string())));
        }
        Err(self.error(start, format!("unexpected character {:?}", b as char)))
    }

    pub fn peek(&mut self) -> Result<&Token> {
        if self.peeked.is_none() {
            self.peeked = Some(self.lex()?);
        }
        Ok(&self.peeked.as_ref().unwrap().1)
    }

    /// Byte offset of the next token.
    pub fn position(&mut self) -> Result<usize> {
        self.peek()?;
        Ok(self.peeked.as_ref().unwrap().0)
    }

    pub fn next_token(&mut self) -> Result<(usize, Token)> {
        match self.peeked.take() {
            Some(t) => Ok(t),
            None => self.lex(),
        }
    }

    pub fn expect(&mut self, want: Token) -> Result<()> {
        let (pos, tok) = self.next_token()?;
        if tok == want {
            Ok(())
        } else {
            Err(self.error(pos, format!("expected {want:?}, found {tok:?}")))
        }
    }

    pub fn expect_int(&mut self) -> Result<BigInt> {
        match self.next_token()? {
            (_, Token::Int(v)) => Ok(v),
            (pos, tok) => Err(self.error(pos, format!("expected integer, found {tok:?}"))),
        }
    }
}

/// If `name` is a root literal `zN`, returns `N`.
pub(crate) fn root_conductor(name: &str) -> Option<u32> {
    let digits = name.strip_prefix('z')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok().filter(|&n: &u32| n > 0)
}

pub(crate) fn small_int(lex: &Lexer, pos: usize, v: &BigInt) -> Result<i64> {
    i64::try_from(v).map_err(|_| lex.error(pos, "integer out of range"))
}

struct ScalarParser<'a> {
    lex: Lexer<'a>,
    conductor: u32,
}

impl ScalarParser<'_> {
    fn expr(&mut self) -> Result<CycNum> {
        let mut acc = self.term()?;
        loop {
            match self.lex.peek()? {
                Token::Plus => {
                    self.lex.next_token()?;
                    acc = acc + self.term()?;
                }
                Token::Minus => {
                    self.lex.next_token()?;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<CycNum> {
        let mut acc = self.factor()?;
        loop {
            match self.lex.peek()? {
                Token::Star => {
                    self.lex.next_token()?;
                    acc = acc * self.factor()?;
                }
                Token::Slash => {
                    self.lex.next_token()?;
                    acc = acc.checked_div(&self.factor()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<CycNum> {
        let (pos, tok) = self.lex.next_token()?;
        match tok {
            Token::Int(v) => Ok(CycNum::from_ratio(v, BigInt::from(1))?),
            Token::Minus => Ok(-self.factor()?),
            Token::LParen => {
                let v = self.expr()?;
                self.lex.expect(Token::RParen)?;
                Ok(v)
            }
            Token::Ident(name) => {
                let n = root_conductor(&name)
                    .ok_or_else(|| self.lex.error(pos, format!("unknown symbol {name:?}")))?;
                self.conductor = lcm(self.conductor, n);
                let mut k = 1i64;
                if *self.lex.peek()? == Token::Caret {
                    self.lex.next_token()?;
                    let p = self.lex.position()?;
                    let e = self.lex.expect_int()?;
                    k = small_int(&self.lex, p, &e)?;
                }
                Ok(CycNum::root_power(n, k))
            }
            other => Err(self.lex.error(pos, format!("unexpected {other:?}"))),
        }
    }
}

/// Parses a scalar literal such as `"z6^2"` or `"(1 - z4)*(1 + z4)"`.
///
/// The value is returned in the ambient conductor, the lcm of every root
/// literal appearing in the text.
pub fn parse_scalar(s: &str) -> Result<CycNum> {
    let mut p = ScalarParser { lex: Lexer::new(s), conductor: 1 };
    let v = p.expr()?;
    let (pos, tok) = p.lex.next_token()?;
    if tok != Token::End {
        return Err(p.lex.error(pos, format!("trailing input {tok:?}")));
    }
    Ok(v.lift(lcm(p.conductor, v.conductor())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(parse_scalar("z6^2").unwrap(), CycNum::zeta(3));
        assert_eq!(parse_scalar("1/2 + 1/2").unwrap(), CycNum::one());
        assert_eq!(parse_scalar("(1 - z4)*(1 + z4)").unwrap(), CycNum::from_int(2));
        assert_eq!(parse_scalar("-z2").unwrap(), CycNum::one());
    }

    #[test]
    fn ambient_conductor_is_lcm() {
        assert_eq!(parse_scalar("z4^2").unwrap().conductor(), 4);
        assert_eq!(parse_scalar("z3 + z4 - z4").unwrap().conductor(), 12);
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_scalar("1 + * 2"), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_scalar("q"), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_scalar("(1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_scalar("1 $"), Err(Error::Syntax { pos: 2, .. })));
        assert_eq!(parse_scalar("1/(z4^2 + 1)"), Err(Error::DivisionByZero));
    }

    #[test]
    fn display_round_trips() {
        for s in ["z6^2", "1/3 - 2*z12^3 + z12", "-7/2", "z5^4 + z5^3", "0"] {
            let v = parse_scalar(s).unwrap();
            let back = parse_scalar(&v.to_string()).unwrap();
            assert_eq!(v, back, "{s} -> {v}");
            assert_eq!(back.to_string(), v.to_string());
        }
    }
}
