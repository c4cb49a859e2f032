//! Parsers for the polynomial expression grammar and the template grammar.
//!
//! Polynomial grammar: declared identifiers as variables, integer
//! coefficients, operators `+ - * ^` and parentheses; `^` binds tightest,
//! then `*`, then `+ -`; whitespace is insignificant. Ideals are written as
//! bracketed comma-separated lists, e.g. `[x^2, x*y^8]`.
//!
//! The template grammar is the same, except exponents may be integer
//! expressions over literals and the parameters `e`, `p`, `q` (with
//! q = p^e), e.g. `x*y^(e*q)`; they are evaluated exactly per level.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::RingContext;
use crate::template::{ExpExpr, TemplateNode, TemplatePolynomial};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(u128),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Eof,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn err_at(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

impl Lexer {
    fn new(text: &str) -> Result<Self> {
        let bytes = text.as_bytes();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let b = bytes[i];
            match b {
                b' ' | b'\t' | b'\r' | b'\n' => i += 1,
                b'+' => {
                    toks.push((Tok::Plus, i));
                    i += 1;
                }
                b'-' => {
                    toks.push((Tok::Minus, i));
                    i += 1;
                }
                b'*' => {
                    toks.push((Tok::Star, i));
                    i += 1;
                }
                b'^' => {
                    toks.push((Tok::Caret, i));
                    i += 1;
                }
                b'(' => {
                    toks.push((Tok::LParen, i));
                    i += 1;
                }
                b')' => {
                    toks.push((Tok::RParen, i));
                    i += 1;
                }
                b'[' => {
                    toks.push((Tok::LBracket, i));
                    i += 1;
                }
                b']' => {
                    toks.push((Tok::RBracket, i));
                    i += 1;
                }
                b',' => {
                    toks.push((Tok::Comma, i));
                    i += 1;
                }
                b'0'..=b'9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let lit = &text[start..i];
                    let v: u128 = lit
                        .parse()
                        .map_err(|_| err_at(start, "integer literal too large"))?;
                    toks.push((Tok::Int(v), start));
                }
                _ if b.is_ascii_alphabetic() => {
                    let start = i;
                    while i < bytes.len()
                        && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                    {
                        i += 1;
                    }
                    toks.push((Tok::Ident(text[start..i].to_string()), start));
                }
                _ => {
                    return Err(err_at(
                        i,
                        format!("unexpected character `{}`", &text[i..].chars().next().unwrap()),
                    ))
                }
            }
        }
        toks.push((Tok::Eof, text.len()));
        Ok(Lexer { toks, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn here(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(err_at(self.here(), format!("expected {what}")))
        }
    }
}

/// Parses a polynomial expression in the given ring.
pub fn parse_poly(text: &str, ctx: &RingContext) -> Result<Polynomial> {
    let template = parse_template_impl(text, ctx, false)?;
    // Plain polynomials carry no template parameters, so any level works.
    template.eval(0)
}

/// Parses a bracketed ideal generator list, e.g. `[x^2, x*y^8]`.
pub fn parse_ideal_list(text: &str, ctx: &RingContext) -> Result<Vec<Polynomial>> {
    let mut lx = Lexer::new(text)?;
    let nodes = ideal_list(&mut lx, ctx, false)?;
    if *lx.peek() != Tok::Eof {
        return Err(err_at(lx.here(), "expected end of input"));
    }
    nodes
        .into_iter()
        .map(|t| TemplatePolynomial::new(t, ctx).and_then(|t| t.eval(0)))
        .collect()
}

/// Parses a template polynomial whose exponents may mention `e`, `p`, `q`.
pub fn parse_template(text: &str, ctx: &RingContext) -> Result<TemplatePolynomial> {
    parse_template_impl(text, ctx, true)
}

/// Parses a bracketed list of template polynomials.
pub fn parse_template_list(text: &str, ctx: &RingContext) -> Result<Vec<TemplatePolynomial>> {
    check_template_ring(ctx)?;
    let mut lx = Lexer::new(text)?;
    let nodes = ideal_list(&mut lx, ctx, true)?;
    if *lx.peek() != Tok::Eof {
        return Err(err_at(lx.here(), "expected end of input"));
    }
    nodes
        .into_iter()
        .map(|n| TemplatePolynomial::new(n, ctx))
        .collect()
}

const TEMPLATE_PARAMS: [&str; 3] = ["e", "p", "q"];

fn check_template_ring(ctx: &RingContext) -> Result<()> {
    for v in ctx.var_names() {
        if TEMPLATE_PARAMS.contains(&v.as_str()) {
            return Err(Error::Template(format!(
                "variable name `{v}` collides with a template parameter"
            )));
        }
    }
    Ok(())
}

fn parse_template_impl(text: &str, ctx: &RingContext, template: bool) -> Result<TemplatePolynomial> {
    if template {
        check_template_ring(ctx)?;
    }
    let mut lx = Lexer::new(text)?;
    let node = expr(&mut lx, ctx, template)?;
    if *lx.peek() != Tok::Eof {
        return Err(err_at(lx.here(), "expected end of input"));
    }
    TemplatePolynomial::new(node, ctx)
}

fn ideal_list(lx: &mut Lexer, ctx: &RingContext, template: bool) -> Result<Vec<TemplateNode>> {
    lx.expect(Tok::LBracket, "`[`")?;
    let mut out = Vec::new();
    if *lx.peek() == Tok::RBracket {
        lx.bump();
        return Ok(out);
    }
    loop {
        out.push(expr(lx, ctx, template)?);
        match lx.bump() {
            Tok::Comma => continue,
            Tok::RBracket => break,
            _ => return Err(err_at(lx.here(), "expected `,` or `]`")),
        }
    }
    Ok(out)
}

fn expr(lx: &mut Lexer, ctx: &RingContext, template: bool) -> Result<TemplateNode> {
    let mut negate = false;
    if *lx.peek() == Tok::Minus {
        lx.bump();
        negate = true;
    }
    let mut acc = term(lx, ctx, template)?;
    if negate {
        acc = TemplateNode::Neg(Box::new(acc));
    }
    loop {
        match lx.peek() {
            Tok::Plus => {
                lx.bump();
                let rhs = term(lx, ctx, template)?;
                acc = TemplateNode::Add(Box::new(acc), Box::new(rhs));
            }
            Tok::Minus => {
                lx.bump();
                let rhs = term(lx, ctx, template)?;
                acc = TemplateNode::Sub(Box::new(acc), Box::new(rhs));
            }
            _ => return Ok(acc),
        }
    }
}

fn term(lx: &mut Lexer, ctx: &RingContext, template: bool) -> Result<TemplateNode> {
    let mut acc = factor(lx, ctx, template)?;
    while *lx.peek() == Tok::Star {
        lx.bump();
        let rhs = factor(lx, ctx, template)?;
        acc = TemplateNode::Mul(Box::new(acc), Box::new(rhs));
    }
    Ok(acc)
}

fn factor(lx: &mut Lexer, ctx: &RingContext, template: bool) -> Result<TemplateNode> {
    let base = base(lx, ctx, template)?;
    if *lx.peek() == Tok::Caret {
        lx.bump();
        let exp = exponent(lx, template)?;
        return Ok(TemplateNode::Pow(Box::new(base), exp));
    }
    Ok(base)
}

fn base(lx: &mut Lexer, ctx: &RingContext, template: bool) -> Result<TemplateNode> {
    let pos = lx.here();
    match lx.bump() {
        Tok::LParen => {
            let inner = expr(lx, ctx, template)?;
            lx.expect(Tok::RParen, "`)`")?;
            Ok(inner)
        }
        Tok::Int(v) => Ok(TemplateNode::Const(v)),
        Tok::Ident(name) => match ctx.var_index(&name) {
            Some(i) => Ok(TemplateNode::Var(i)),
            None => Err(Error::UnknownVariable(name)),
        },
        _ => Err(err_at(pos, "expected a variable, integer, or `(`")),
    }
}

fn exponent(lx: &mut Lexer, template: bool) -> Result<ExpExpr> {
    match lx.peek() {
        Tok::Int(_) => {
            if let Tok::Int(v) = lx.bump() {
                Ok(ExpExpr::Int(v as i128))
            } else {
                unreachable!()
            }
        }
        Tok::LParen if template => {
            lx.bump();
            let e = int_expr(lx)?;
            lx.expect(Tok::RParen, "`)`")?;
            Ok(e)
        }
        _ => Err(err_at(
            lx.here(),
            if template {
                "expected an integer or parenthesized exponent expression after `^`"
            } else {
                "expected a non-negative integer exponent after `^`"
            },
        )),
    }
}

fn int_expr(lx: &mut Lexer) -> Result<ExpExpr> {
    let mut negate = false;
    if *lx.peek() == Tok::Minus {
        lx.bump();
        negate = true;
    }
    let mut acc = int_term(lx)?;
    if negate {
        acc = ExpExpr::Sub(Box::new(ExpExpr::Int(0)), Box::new(acc));
    }
    loop {
        match lx.peek() {
            Tok::Plus => {
                lx.bump();
                let rhs = int_term(lx)?;
                acc = ExpExpr::Add(Box::new(acc), Box::new(rhs));
            }
            Tok::Minus => {
                lx.bump();
                let rhs = int_term(lx)?;
                acc = ExpExpr::Sub(Box::new(acc), Box::new(rhs));
            }
            _ => return Ok(acc),
        }
    }
}

fn int_term(lx: &mut Lexer) -> Result<ExpExpr> {
    let mut acc = int_factor(lx)?;
    while *lx.peek() == Tok::Star {
        lx.bump();
        let rhs = int_factor(lx)?;
        acc = ExpExpr::Mul(Box::new(acc), Box::new(rhs));
    }
    Ok(acc)
}

fn int_factor(lx: &mut Lexer) -> Result<ExpExpr> {
    let base = int_atom(lx)?;
    if *lx.peek() == Tok::Caret {
        lx.bump();
        let exp = int_atom(lx)?;
        return Ok(ExpExpr::Pow(Box::new(base), Box::new(exp)));
    }
    Ok(base)
}

fn int_atom(lx: &mut Lexer) -> Result<ExpExpr> {
    let pos = lx.here();
    match lx.bump() {
        Tok::Int(v) => Ok(ExpExpr::Int(v as i128)),
        Tok::Ident(name) => match name.as_str() {
            "e" => Ok(ExpExpr::Level),
            "p" => Ok(ExpExpr::Char),
            "q" => Ok(ExpExpr::CharPow),
            _ => Err(Error::Template(format!(
                "unknown symbol `{name}` in exponent expression (allowed: e, p, q)"
            ))),
        },
        Tok::LParen => {
            let e = int_expr(lx)?;
            lx.expect(Tok::RParen, "`)`")?;
            Ok(e)
        }
        _ => Err(err_at(pos, "expected an integer, `e`, `p`, `q`, or `(`")),
    }
}
