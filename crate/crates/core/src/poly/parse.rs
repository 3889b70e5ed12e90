//! Expression grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | symbol | '(' expr ')'
//! symbol := ident | ident '[' 'n' (('+' | '-') integer)? ']'
//! ```
//!
//! Parsing produces an [`Expr`] tree; symbols are resolved to variable
//! indices only when the tree is lowered to a [`RationalFunction`].

use num_bigint::BigInt;

use super::polynomial::Vars;
use super::rational::RationalFunction;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// `name[n+offset]`.
    Indexed { name: String, offset: i64 },
    Plain(String),
}

impl Symbol {
    pub fn display_name(&self) -> String {
        match self {
            Symbol::Plain(s) => s.clone(),
            Symbol::Indexed { name, offset } => indexed_name(name, *offset),
        }
    }
}

/// Canonical spelling of `name[n+offset]`.
pub fn indexed_name(name: &str, offset: i64) -> String {
    match offset {
        0 => format!("{name}[n]"),
        o if o > 0 => format!("{name}[n+{o}]"),
        o => format!("{name}[n{o}]"),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Sym(Symbol, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Every symbol occurrence with its byte position.
    pub fn symbols(&self) -> Vec<(Symbol, usize)> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<(Symbol, usize)>) {
        match self {
            Expr::Num(_) => {}
            Expr::Sym(s, p) => out.push((s.clone(), *p)),
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect(out);
                b.collect(out);
            }
        }
    }

    /// Lowers to a rational function over `ctx`; `resolve` maps each symbol
    /// to its variable index.
    pub fn to_rational<F>(&self, ctx: &Vars, resolve: &F) -> Result<RationalFunction>
    where
        F: Fn(&Symbol) -> Option<usize>,
    {
        Ok(match self {
            Expr::Num(n) => RationalFunction::constant(ctx, Scalar::from_integer(n.clone())),
            Expr::Sym(s, _) => {
                let i = resolve(s).ok_or_else(|| Error::UnknownSymbol(s.display_name()))?;
                RationalFunction::var(ctx, i)
            }
            Expr::Neg(a) => -&a.to_rational(ctx, resolve)?,
            Expr::Add(a, b) => &a.to_rational(ctx, resolve)? + &b.to_rational(ctx, resolve)?,
            Expr::Sub(a, b) => &a.to_rational(ctx, resolve)? - &b.to_rational(ctx, resolve)?,
            Expr::Mul(a, b) => &a.to_rational(ctx, resolve)? * &b.to_rational(ctx, resolve)?,
            Expr::Div(a, b) => {
                let top = a.to_rational(ctx, resolve)?;
                let bottom = b.to_rational(ctx, resolve)?;
                top.div(&bottom)?
            }
            Expr::Pow(a, n) => a.to_rational(ctx, resolve)?.pow(*n),
        })
    }
}

/// Parses `text` over `ctx`, resolving symbols by their printed name.
pub fn parse_rational_in(ctx: &Vars, text: &str) -> Result<RationalFunction> {
    parse_expr(text)?.to_rational(ctx, &|s| {
        let name = s.display_name();
        ctx.iter().position(|v| *v == name)
    })
}

/// Parses a single expression.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser::new(text);
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

/// Parses `lhs = rhs`, returning both sides.
pub fn parse_assignment(text: &str) -> Result<(Expr, Expr)> {
    let eq = text.find('=').ok_or(Error::Parse {
        pos: 0,
        msg: "expected `=`".into(),
    })?;
    let mut lhs = Parser::new(&text[..eq]);
    let l = lhs.expr()?;
    lhs.skip_ws();
    if lhs.pos < lhs.src.len() {
        return Err(lhs.error("unexpected input before `=`"));
    }
    let mut rhs = Parser::at(text, eq + 1);
    let r = rhs.expr()?;
    rhs.skip_ws();
    if rhs.pos < rhs.src.len() {
        return Err(rhs.error("unexpected trailing input"));
    }
    Ok((l, r))
}

/// Splits on top-level commas (outside brackets and parentheses), keeping
/// the byte offset of each piece.
pub fn split_top_level(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &text[start..]));
    out
}

/// Parses an expression that starts at byte `offset` of a larger input, so
/// error positions refer to the whole input.
pub fn parse_expr_at(full: &str, offset: usize, len: usize) -> Result<Expr> {
    let mut p = Parser::at(&full[..offset + len], offset);
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn at(text: &'a str, pos: usize) -> Self {
        Parser {
            src: text.as_bytes(),
            pos,
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            let n = self.integer()?;
            let e: u32 = n.try_into().map_err(|_| Error::Parse {
                pos: start,
                msg: "exponent must be a small non-negative integer".into(),
            })?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Num(self.integer()?)),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.symbol(),
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn symbol(&mut self) -> Result<Expr> {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii ident")
            .to_string();
        if self.peek() != Some(b'[') {
            return Ok(Expr::Sym(Symbol::Plain(name), start));
        }
        self.pos += 1;
        if self.peek() != Some(b'n') {
            return Err(self.error("expected index `n`"));
        }
        self.pos += 1;
        let offset = if self.eat(b'+') {
            i64::try_from(self.integer()?).map_err(|_| self.error("index offset too large"))?
        } else if self.eat(b'-') {
            -i64::try_from(self.integer()?).map_err(|_| self.error("index offset too large"))?
        } else {
            0
        };
        self.expect(b']')?;
        Ok(Expr::Sym(Symbol::Indexed { name, offset }, start))
    }
}
