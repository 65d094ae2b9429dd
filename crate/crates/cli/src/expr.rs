//! Expression syntax.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := '-' term | factor ('*'? factor)*
//! factor := atom ('^' '-'? INT)*
//! atom   := RATIONAL | VAR | '(' expr ')' | '{' expr ',' expr '}'
//! ```
//!
//! `VAR` is one of `y<k>`, `x<k>`, `Y<k>`, `X<k>`, `Omega<k>`. Whitespace is
//! ignored, and juxtaposition is a product.

use std::fmt;

use polystrata::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarKind {
    LowerY,
    LowerX,
    UpperY,
    UpperX,
    Omega,
}

impl VarKind {
    fn prefix(self) -> &'static str {
        match self {
            VarKind::LowerY => "y",
            VarKind::LowerX => "x",
            VarKind::UpperY => "Y",
            VarKind::UpperX => "X",
            VarKind::Omega => "Omega",
        }
    }

    fn from_prefix(s: &str) -> Option<Self> {
        Some(match s {
            "y" => VarKind::LowerY,
            "x" => VarKind::LowerX,
            "Y" => VarKind::UpperY,
            "X" => VarKind::UpperX,
            "Omega" => VarKind::Omega,
            _ => return None,
        })
    }

    pub fn is_upper(self) -> bool {
        matches!(self, VarKind::UpperY | VarKind::UpperX)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub kind: VarKind,
    pub index: usize,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.prefix(), self.index)
    }
}

/// Literals produced by the parser are never negative; a leading minus is `Neg`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Var(Var),
    Neg(Box<Expr>),
    Sum(Box<Expr>, Box<Expr>),
    Diff(Box<Expr>, Box<Expr>),
    Product(Box<Expr>, Box<Expr>),
    Power(Box<Expr>, i64),
    Bracket(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<Var>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(v) => out.push(*v),
            Expr::Neg(a) | Expr::Power(a, _) => a.collect_vars(out),
            Expr::Sum(a, b) | Expr::Diff(a, b) | Expr::Product(a, b) | Expr::Bracket(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Sum(..) | Expr::Diff(..) => 1,
            Expr::Neg(_) => 2,
            Expr::Product(..) => 3,
            Expr::Power(..) => 4,
            Expr::Num(c) if c.is_negative() => 2,
            Expr::Num(_) | Expr::Var(_) | Expr::Bracket(..) => 5,
        }
    }

    fn show(&self, min: u8, out: &mut String) {
        let wrap = self.precedence() < min;
        if wrap {
            out.push('(');
        }
        match self {
            Expr::Num(c) if !c.is_integer() && min >= 3 && !wrap => {
                out.push('(');
                out.push_str(&c.to_string());
                out.push(')');
            }
            Expr::Num(c) => out.push_str(&c.to_string()),
            Expr::Var(v) => out.push_str(&v.to_string()),
            Expr::Neg(a) => {
                out.push('-');
                a.show(2, out);
            }
            Expr::Sum(a, b) | Expr::Diff(a, b) => {
                a.show(1, out);
                out.push_str(if matches!(self, Expr::Sum(..)) { " + " } else { " - " });
                b.show(2, out);
            }
            Expr::Product(a, b) => {
                a.show(3, out);
                out.push('*');
                b.show(4, out);
            }
            Expr::Power(a, k) => {
                a.show(4, out);
                out.push('^');
                out.push_str(&k.to_string());
            }
            Expr::Bracket(a, b) => {
                out.push('{');
                a.show(1, out);
                out.push_str(", ");
                b.show(1, out);
                out.push('}');
            }
        }
        if wrap {
            out.push(')');
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.show(1, &mut s);
        f.write_str(&s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at offset {offset}: {message}")]
pub struct SyntaxError {
    /// Byte offset into the input.
    pub offset: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(Rational),
    Var(Var),
    Sym(char),
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(c) => format!("number {c}"),
        Tok::Var(v) => format!("variable {v}"),
        Tok::Sym(c) => format!("'{c}'"),
        Tok::End => "end of input".into(),
    }
}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T, SyntaxError> {
    Err(SyntaxError {
        offset,
        message: message.into(),
    })
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let skip_ws = |mut i: usize| {
        while i < b.len() && b[i].is_ascii_whitespace() {
            i += 1;
        }
        i
    };
    let digits = |mut i: usize| {
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        i
    };
    loop {
        i = skip_ws(i);
        let Some(&c) = b.get(i) else {
            out.push((src.len(), Tok::End));
            return Ok(out);
        };
        let start = i;
        if c.is_ascii_digit() {
            let end = digits(i);
            let mut text = src[start..end].to_string();
            i = end;
            let slash = skip_ws(i);
            if b.get(slash) == Some(&b'/') {
                let d0 = skip_ws(slash + 1);
                let d1 = digits(d0);
                if d1 == d0 {
                    return err(d0, "expected a denominator");
                }
                if src[d0..d1].bytes().all(|d| d == b'0') {
                    return err(d0, "zero denominator");
                }
                text.push('/');
                text.push_str(&src[d0..d1]);
                i = d1;
            }
            let value: Rational = text.parse().map_err(|_| SyntaxError {
                offset: start,
                message: format!("bad number {text:?}"),
            })?;
            out.push((start, Tok::Num(value)));
        } else if c.is_ascii_alphabetic() {
            while i < b.len() && b[i].is_ascii_alphabetic() {
                i += 1;
            }
            let name = &src[start..i];
            let Some(kind) = VarKind::from_prefix(name) else {
                return err(start, format!("unknown variable name {name:?}"));
            };
            let end = digits(i);
            if end == i {
                return err(i, format!("expected an index after {name:?}"));
            }
            let index = src[i..end].parse().map_err(|_| SyntaxError {
                offset: i,
                message: "index too large".into(),
            })?;
            i = end;
            out.push((start, Tok::Var(Var { kind, index })));
        } else if "+-*^(){},".contains(c as char) {
            out.push((start, Tok::Sym(c as char)));
            i += 1;
        } else {
            let ch = src[start..].chars().next().unwrap_or('?');
            return err(start, format!("unexpected character {ch:?}"));
        }
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), SyntaxError> {
        if self.eat(c) {
            Ok(())
        } else {
            err(self.offset(), format!("expected '{c}', found {}", describe(self.peek())))
        }
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = Expr::Sum(Box::new(acc), Box::new(self.term()?));
            } else if self.eat('-') {
                acc = Expr::Diff(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.term()?)));
        }
        let mut acc = self.factor()?;
        loop {
            let juxtaposed = matches!(self.peek(), Tok::Num(_) | Tok::Var(_) | Tok::Sym('(' | '{'));
            if !self.eat('*') && !juxtaposed {
                return Ok(acc);
            }
            acc = Expr::Product(Box::new(acc), Box::new(self.factor()?));
        }
    }

    fn factor(&mut self) -> Result<Expr, SyntaxError> {
        let mut acc = self.atom()?;
        while self.eat('^') {
            let neg = self.eat('-');
            let at = self.offset();
            let k = match self.bump() {
                Tok::Num(c) if c.is_integer() => c.to_i64(),
                Tok::Num(_) => return err(at, "exponent must be an integer"),
                t => return err(at, format!("expected an exponent, found {}", describe(&t))),
            };
            let Some(k) = k else {
                return err(at, "exponent too large");
            };
            acc = Expr::Power(Box::new(acc), if neg { -k } else { k });
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        let at = self.offset();
        match self.bump() {
            Tok::Num(c) => Ok(Expr::Num(c)),
            Tok::Var(v) => Ok(Expr::Var(v)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym('{') => {
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect('}')?;
                Ok(Expr::Bracket(Box::new(a), Box::new(b)))
            }
            t => err(at, format!("expected a number, variable, '(' or '{{', found {}", describe(&t))),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        t => err(p.offset(), format!("unexpected {}", describe(t))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(kind: VarKind, index: usize) -> Box<Expr> {
        Box::new(Expr::Var(Var { kind, index }))
    }

    #[test]
    fn juxtaposition_and_precedence() {
        let e = parse_expr("y1^2 x1 - (1/3) Omega1").unwrap();
        let want = Expr::Diff(
            Box::new(Expr::Product(
                Box::new(Expr::Power(var(VarKind::LowerY, 1), 2)),
                var(VarKind::LowerX, 1),
            )),
            Box::new(Expr::Product(
                Box::new(Expr::Num(Rational::new(1, 3))),
                var(VarKind::Omega, 1),
            )),
        );
        assert_eq!(e, want);
        assert_eq!(e.to_string(), "y1^2*x1 - (1/3)*Omega1");
    }

    #[test]
    fn brackets_and_negatives() {
        let e = parse_expr("{x2, y2}").unwrap();
        assert_eq!(e, Expr::Bracket(var(VarKind::LowerX, 2), var(VarKind::LowerY, 2)));
        let e = parse_expr("-Y2^-1 X1").unwrap();
        assert_eq!(e.to_string(), "-Y2^-1*X1");
        assert_eq!(parse_expr("2 / 3").unwrap(), Expr::Num(Rational::new(2, 3)));
    }

    #[test]
    fn error_offsets() {
        assert_eq!(parse_expr("{y1,").unwrap_err().offset, 4);
        assert_eq!(parse_expr("y1 + ").unwrap_err().offset, 5);
        assert_eq!(parse_expr("y1 ) ").unwrap_err().offset, 3);
        assert_eq!(parse_expr("z1").unwrap_err().offset, 0);
        assert_eq!(parse_expr("y").unwrap_err().offset, 1);
        assert_eq!(parse_expr("1/0").unwrap_err().offset, 2);
        assert_eq!(parse_expr("x1^(2)").unwrap_err().offset, 3);
        assert_eq!(parse_expr("x1^1/2").unwrap_err().offset, 3);
        assert!(parse_expr("").is_err());
    }
}
