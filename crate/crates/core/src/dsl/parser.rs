use super::ast::{Expr, Func};
use super::ExprError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
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

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(x) => format!("number {x}"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn syntax(offset: usize, message: impl Into<String>) -> ExprError {
    ExprError::Syntax {
        offset,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((Tok::Plus, start)),
            b'-' => out.push((Tok::Minus, start)),
            b'*' => out.push((Tok::Star, start)),
            b'/' => out.push((Tok::Slash, start)),
            b'^' => out.push((Tok::Caret, start)),
            b'(' => out.push((Tok::LParen, start)),
            b')' => out.push((Tok::RParen, start)),
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                // Exponent only when digits follow, so `2*e` style stays intact.
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let text = &src[start..i];
                let value: f64 = text
                    .parse()
                    .map_err(|_| syntax(start, format!("malformed number `{text}`")))?;
                out.push((Tok::Num(value), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character `{ch}`")));
            }
        }
        i += 1;
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
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ExprError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(
                self.offset(),
                format!("expected {what}, found {}", self.peek().describe()),
            ))
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.primary()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let n = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    /// Signed integer constant, right-associative under `^`.
    fn exponent(&mut self) -> Result<i32, ExprError> {
        let start = self.offset();
        let negative = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let base: i64 = match self.peek().clone() {
            Tok::Num(x) if x.fract() == 0.0 && x.abs() <= i32::MAX as f64 => {
                self.bump();
                x as i64
            }
            Tok::LParen => {
                self.bump();
                let inner = self.exponent()?;
                self.expect(Tok::RParen, "`)`")?;
                inner as i64
            }
            other => {
                return Err(syntax(
                    self.offset(),
                    format!("expected integer exponent, found {}", other.describe()),
                ))
            }
        };
        let mut value = if negative { -base } else { base };
        if *self.peek() == Tok::Caret {
            self.bump();
            let e = self.exponent()?;
            value = integer_power(value, e)
                .ok_or_else(|| syntax(start, "exponent does not fold to an integer constant"))?;
        }
        i32::try_from(value).map_err(|_| syntax(start, "exponent out of range"))
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        let offset = self.offset();
        match self.bump() {
            Tok::Num(x) => Ok(Expr::Num(x)),
            Tok::Ident(name) => {
                if *self.peek() == Tok::LParen {
                    let func = Func::from_name(&name)
                        .ok_or(ExprError::UnknownFunction { name, offset })?;
                    self.bump();
                    let arg = self.expr()?;
                    self.expect(Tok::RParen, "`)`")?;
                    Ok(Expr::Call(func, Box::new(arg)))
                } else {
                    Ok(Expr::Var(name))
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            other => Err(syntax(
                offset,
                format!(
                    "expected number, identifier or `(`, found {}",
                    other.describe()
                ),
            )),
        }
    }
}

fn integer_power(base: i64, exp: i32) -> Option<i64> {
    if exp >= 0 {
        base.checked_pow(exp as u32)
    } else {
        match base {
            1 => Some(1),
            -1 => Some(if exp % 2 == 0 { 1 } else { -1 }),
            _ => None,
        }
    }
}

/// Parse an expression.
///
/// Precedence from tightest: `^` (right-assoc, integer constant exponent),
/// unary `-`, `*` `/`, `+` `-` (left-assoc). Function calls need parentheses
/// and there is no implicit multiplication.
pub fn parse(src: &str) -> Result<Expr, ExprError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax(
            p.offset(),
            format!(
                "expected operator or end of input, found {}",
                p.peek().describe()
            ),
        ));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(x: f64) -> Box<Expr> {
        Box::new(Expr::Num(x))
    }
    fn v(s: &str) -> Box<Expr> {
        Box::new(Expr::var(s))
    }

    #[test]
    fn schwarzschild_lapse_shape() {
        let e = parse("-(1 - 2*M/r)").unwrap();
        let want = Expr::Neg(Box::new(Expr::Sub(
            n(1.0),
            Box::new(Expr::Div(Box::new(Expr::Mul(n(2.0), v("M"))), v("r"))),
        )));
        assert_eq!(e, want);
    }

    #[test]
    fn power_binds_tighter_than_product() {
        let e = parse("r^2 * sin(theta)^2").unwrap();
        let want = Expr::Mul(
            Box::new(Expr::Pow(v("r"), 2)),
            Box::new(Expr::Pow(Box::new(Expr::Call(Func::Sin, v("theta"))), 2)),
        );
        assert_eq!(e, want);
    }

    #[test]
    fn unary_minus_is_looser_than_power() {
        assert_eq!(
            parse("-x^2").unwrap(),
            Expr::Neg(Box::new(Expr::Pow(v("x"), 2)))
        );
    }

    #[test]
    fn left_associative_difference() {
        assert_eq!(
            parse("a - b - c").unwrap(),
            Expr::Sub(Box::new(Expr::Sub(v("a"), v("b"))), v("c"))
        );
    }

    #[test]
    fn right_associative_power_folds() {
        assert_eq!(parse("x^2^3").unwrap(), Expr::Pow(v("x"), 8));
        assert_eq!(parse("x^-2").unwrap(), Expr::Pow(v("x"), -2));
        assert_eq!(parse("x^(-1)").unwrap(), Expr::Pow(v("x"), -1));
    }

    #[test]
    fn dangling_operator() {
        match parse("1 +") {
            Err(ExprError::Syntax { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn implicit_multiplication_rejected() {
        assert!(matches!(
            parse("2M"),
            Err(ExprError::Syntax { offset: 1, .. })
        ));
        assert!(matches!(parse("2 x"), Err(ExprError::Syntax { .. })));
    }

    #[test]
    fn non_integer_exponent_rejected() {
        assert!(matches!(parse("x^0.5"), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse("x^y"), Err(ExprError::Syntax { .. })));
    }

    #[test]
    fn unknown_function() {
        match parse("1 + foo(x)") {
            Err(ExprError::UnknownFunction { name, offset }) => {
                assert_eq!(name, "foo");
                assert_eq!(offset, 4);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn scientific_literals() {
        assert_eq!(parse("1.5e-3").unwrap(), Expr::Num(1.5e-3));
        assert_eq!(parse(".5").unwrap(), Expr::Num(0.5));
        assert!(matches!(parse("2e"), Err(ExprError::Syntax { .. })));
    }

    #[test]
    fn unbalanced_parens() {
        assert!(matches!(
            parse("(1 + 2"),
            Err(ExprError::Syntax { offset: 6, .. })
        ));
        assert!(matches!(
            parse("1 + 2)"),
            Err(ExprError::Syntax { offset: 5, .. })
        ));
        assert!(matches!(
            parse("$"),
            Err(ExprError::Syntax { offset: 0, .. })
        ));
    }
}
