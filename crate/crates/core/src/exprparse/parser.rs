use thiserror::Error;

use super::{BinOp, Constant, Expr, Func, Var};

/// Failure to turn source text into an [`Expr`]. Positions are 0-based byte
/// offsets into the source.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {position}: expected {expected}, found {found}")]
    Syntax {
        position: usize,
        expected: String,
        found: String,
    },
    #[error("unknown identifier `{name}` at offset {position}")]
    UnknownIdentifier { name: String, position: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(v) => format!("number {v}"),
            Tok::Ident(name) => format!("identifier `{name}`"),
            Tok::Op(c) => format!("`{c}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn syntax(position: usize, expected: &str, found: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        position,
        expected: expected.to_string(),
        found: found.into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' | b'-' | b'*' | b'/' | b'^' => {
                out.push((Tok::Op(c as char), i));
                i += 1;
            }
            b'(' => {
                out.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                out.push((Tok::RParen, i));
                i += 1;
            }
            b'0'..=b'9' | b'.' => {
                let start = i;
                let digits = |j: &mut usize| {
                    let s = *j;
                    while *j < bytes.len() && bytes[*j].is_ascii_digit() {
                        *j += 1;
                    }
                    *j - s
                };
                let mut n = digits(&mut i);
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    n += digits(&mut i);
                }
                if n == 0 {
                    return Err(syntax(start, "a digit", "`.`"));
                }
                // Exponent only if it is complete; otherwise the `e` is left
                // for the identifier lexer (and rejected as implicit product).
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if digits(&mut j) > 0 {
                        i = j;
                    }
                }
                let text = &src[start..i];
                let value: f64 = text
                    .parse()
                    .map_err(|_| syntax(start, "a number", format!("`{text}`")))?;
                out.push((Tok::Num(value), start));
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), start));
            }
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(syntax(i, "an operator, operand or parenthesis", format!("`{ch}`")));
            }
        }
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

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, expected: &str) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(self.offset(), expected, self.peek().describe()))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Op('+') => BinOp::Add,
                Tok::Op('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Op('*') => BinOp::Mul,
                Tok::Op('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Op('-') {
            self.bump();
            return Ok(Expr::negate(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if *self.peek() == Tok::Op('^') {
            self.bump();
            let exponent = self.unary()?;
            return Ok(Expr::binary(BinOp::Pow, base, exponent));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let (tok, at) = self.bump();
        match tok {
            Tok::Num(v) => Ok(Expr::Num(v)),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::Ident(name) => match name.as_str() {
                "x" => Ok(Expr::Var(Var::X)),
                "eps" => Ok(Expr::Var(Var::Eps)),
                "pi" => Ok(Expr::Const(Constant::Pi)),
                "e" => Ok(Expr::Const(Constant::E)),
                other => match Func::from_name(other) {
                    Some(func) => {
                        self.expect(Tok::LParen, "`(` after function name")?;
                        let arg = self.expr()?;
                        self.expect(Tok::RParen, "`)` closing the function argument")?;
                        Ok(Expr::call(func, arg))
                    }
                    None => Err(ParseError::UnknownIdentifier { name, position: at }),
                },
            },
            other => Err(syntax(at, "a number, variable, function or `(`", other.describe())),
        }
    }
}

/// Parses expression source text.
pub fn parse(source: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: tokenize(source)?,
        pos: 0,
    };
    let expr = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.offset(), "an operator or end of input", p.peek().describe()));
    }
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_variable() {
        assert_eq!(parse("x").unwrap(), Expr::Var(Var::X));
    }

    #[test]
    fn unary_minus_is_looser_than_power() {
        let want = Expr::negate(Expr::binary(BinOp::Pow, Expr::Var(Var::X), Expr::Num(2.0)));
        assert_eq!(parse("-x^2").unwrap(), want);
    }

    #[test]
    fn power_is_right_associative() {
        let want = Expr::binary(
            BinOp::Pow,
            Expr::Num(2.0),
            Expr::binary(BinOp::Pow, Expr::Num(3.0), Expr::Num(2.0)),
        );
        assert_eq!(parse("2^3^2").unwrap(), want);
    }

    #[test]
    fn subtraction_is_left_associative() {
        let e = parse("10 - 4 - 3").unwrap();
        assert_eq!(e.evaluate(0.0f64, 0.0).unwrap(), 3.0);
    }

    #[test]
    fn exponent_literals() {
        assert_eq!(parse("1e-3").unwrap(), Expr::Num(1e-3));
        assert_eq!(parse("2.5E+2").unwrap(), Expr::Num(250.0));
        assert_eq!(parse(".5").unwrap(), Expr::Num(0.5));
    }

    #[test]
    fn implicit_multiplication_rejected() {
        assert!(matches!(parse("2x"), Err(ParseError::Syntax { position: 1, .. })));
        assert!(matches!(parse("2 e"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("2e"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn unknown_identifier() {
        assert_eq!(
            parse("y + 1"),
            Err(ParseError::UnknownIdentifier {
                name: "y".into(),
                position: 0
            })
        );
        assert!(matches!(parse("foo(x)"), Err(ParseError::UnknownIdentifier { .. })));
    }

    #[test]
    fn malformed_inputs() {
        for src in [
            "", "   ", "(x", "x)", "sin x", "sin()", "1 +", "*2", "x ^", "3 $ 4", "1..2", "+x",
        ] {
            assert!(parse(src).is_err(), "{src:?} should not parse");
        }
    }

    #[test]
    fn error_carries_position_and_expectation() {
        match parse("(1 + 2").unwrap_err() {
            ParseError::Syntax {
                position,
                expected,
                found,
            } => {
                assert_eq!(position, 6);
                assert_eq!(expected, "`)`");
                assert_eq!(found, "end of input");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(parse(" cos ( pi * x ) ").unwrap(), parse("cos(pi*x)").unwrap());
    }
}
