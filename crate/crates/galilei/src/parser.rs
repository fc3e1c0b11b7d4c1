//! Recursive-descent parser.
//!
//! ```text
//! sum     := ['-'] tensor (('+' | '-') tensor)*
//! tensor  := product ('(x)' product)*
//! product := power (('*' | '/') power)*
//! power   := atom ('^' nat)?
//! atom    := nat | ident | ident '(' sum (',' sum)* ')'
//!          | '[' sum ',' sum ']' | '(' sum ')'
//! ```

use std::fmt;

use crate::ast::{Ast, Func};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Tensor,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::End => "end of input".into(),
            Tok::Tensor => "`(x)`".into(),
            t => format!("`{}`", t.symbol()),
        }
    }

    fn symbol(&self) -> char {
        match self {
            Tok::Plus => '+',
            Tok::Minus => '-',
            Tok::Star => '*',
            Tok::Slash => '/',
            Tok::Caret => '^',
            Tok::Comma => ',',
            Tok::LParen => '(',
            Tok::RParen => ')',
            Tok::LBracket => '[',
            Tok::RBracket => ']',
            _ => '?',
        }
    }
}

fn is_ident_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_' || c == b'\''
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < b.len() {
        let c = b[k];
        if c.is_ascii_whitespace() {
            k += 1;
            continue;
        }
        let start = k;
        let tok = match c {
            b'0'..=b'9' => {
                while k < b.len() && b[k].is_ascii_digit() {
                    k += 1;
                }
                out.push((Tok::Num(src[start..k].into()), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while k < b.len() && is_ident_char(b[k]) {
                    k += 1;
                }
                out.push((Tok::Ident(src[start..k].into()), start));
                continue;
            }
            b'(' => {
                // `(x)` is the tensor sign; `x` is never a generator name.
                let mut j = k + 1;
                while j < b.len() && b[j].is_ascii_whitespace() {
                    j += 1;
                }
                if j < b.len() && b[j] == b'x' && (j + 1 >= b.len() || !is_ident_char(b[j + 1])) {
                    let mut e = j + 1;
                    while e < b.len() && b[e].is_ascii_whitespace() {
                        e += 1;
                    }
                    if e < b.len() && b[e] == b')' {
                        out.push((Tok::Tensor, start));
                        k = e + 1;
                        continue;
                    }
                }
                Tok::LParen
            }
            b')' => Tok::RParen,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b',' => Tok::Comma,
            _ => {
                let ch = src[k..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    offset: k,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((tok, start));
        k += 1;
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
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

    fn error<T>(&self, what: &str) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.offset(),
            message: format!("expected {what}, found {}", self.peek().describe()),
        })
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.error(&t.describe())
        }
    }

    fn sum(&mut self) -> Result<Ast, ParseError> {
        let mut acc = if *self.peek() == Tok::Minus {
            self.bump();
            Ast::Neg(Box::new(self.tensor()?))
        } else {
            self.tensor()?
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = Ast::Add(Box::new(acc), Box::new(self.tensor()?));
                }
                Tok::Minus => {
                    self.bump();
                    acc = Ast::Sub(Box::new(acc), Box::new(self.tensor()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn tensor(&mut self) -> Result<Ast, ParseError> {
        let mut acc = self.product()?;
        while *self.peek() == Tok::Tensor {
            self.bump();
            acc = Ast::Tensor(Box::new(acc), Box::new(self.product()?));
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Ast, ParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = Ast::Mul(Box::new(acc), Box::new(self.power()?));
                }
                Tok::Slash => {
                    self.bump();
                    acc = Ast::Div(Box::new(acc), Box::new(self.power()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Ast, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        match self.bump() {
            Tok::Num(n) => n.parse::<u32>().map(|e| Ast::Pow(Box::new(base), e)).map_err(|_| {
                ParseError {
                    offset: at,
                    message: format!("exponent `{n}` is too large"),
                }
            }),
            _ => {
                self.pos -= 1;
                self.error("a natural-number exponent")
            }
        }
    }

    fn atom(&mut self) -> Result<Ast, ParseError> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(Ast::Num(n))
            }
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() != Tok::LParen {
                    return Ok(Ast::Ident(name));
                }
                let Some(func) = Func::from_name(&name) else {
                    return self.error("an operator after an identifier");
                };
                self.bump();
                let mut args = vec![self.sum()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    args.push(self.sum()?);
                }
                if args.len() != func.arity() {
                    return Err(ParseError {
                        offset: self.offset(),
                        message: format!(
                            "`{}` takes {} argument(s), got {}",
                            func.name(),
                            func.arity(),
                            args.len()
                        ),
                    });
                }
                self.expect(Tok::RParen)?;
                Ok(Ast::Call(func, args))
            }
            Tok::LBracket => {
                self.bump();
                let x = self.sum()?;
                self.expect(Tok::Comma)?;
                let y = self.sum()?;
                self.expect(Tok::RBracket)?;
                Ok(Ast::Commutator(Box::new(x), Box::new(y)))
            }
            Tok::LParen => {
                self.bump();
                let x = self.sum()?;
                self.expect(Tok::RParen)?;
                Ok(x)
            }
            _ => self.error("an operand"),
        }
    }
}

pub fn parse(src: &str) -> Result<Ast, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let ast = p.sum()?;
    if *p.peek() != Tok::End {
        return p.error("an operator or end of input");
    }
    Ok(ast)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unclosed_bracket_reports_end_offset() {
        let e = parse("[a").unwrap_err();
        assert_eq!(e.offset, 2);
    }

    #[test]
    fn tensor_binds_looser_than_product() {
        let t = parse("v (x) tau + 2*a (x) I").unwrap();
        assert_eq!(t.to_string(), "v (x) tau + 2*a (x) I");
        assert!(matches!(t, Ast::Add(..)));
    }

    #[test]
    fn leading_minus_covers_first_tensor_term() {
        let t = parse("-a*b (x) c").unwrap();
        assert!(matches!(t, Ast::Neg(ref x) if matches!(**x, Ast::Tensor(..))));
    }

    #[test]
    fn printer_keeps_right_nesting() {
        for s in ["a - (b - c)", "a*(b*c)", "(-a)^2", "a + (-b)", "-(-a)", "2/(3*kappa)"] {
            assert_eq!(parse(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn spaced_tensor_sign_and_function_calls() {
        let t = parse("exp((-1/kappa)*H)( x )K").unwrap();
        assert_eq!(t.to_string(), "exp((-1/kappa)*H) (x) K");
        assert!(parse("coshr(1/alpha, P)").is_ok());
        assert!(parse("exp(H, P)").is_err());
    }

    #[test]
    fn stray_characters_are_rejected() {
        assert_eq!(parse("a # b").unwrap_err().offset, 2);
        assert!(parse("a b").is_err());
        assert!(parse("").is_err());
    }
}
