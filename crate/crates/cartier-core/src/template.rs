//! Template polynomials: polynomial expressions whose exponents are integer
//! formulas in the level `e`, the characteristic `p`, and `q = p^e`.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::RingContext;

/// Integer exponent expression over literals and the parameters e, p, q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpExpr {
    Int(i128),
    /// The level `e`.
    Level,
    /// The characteristic `p`.
    Char,
    /// `q = p^e`.
    CharPow,
    Add(Box<ExpExpr>, Box<ExpExpr>),
    Sub(Box<ExpExpr>, Box<ExpExpr>),
    Mul(Box<ExpExpr>, Box<ExpExpr>),
    Pow(Box<ExpExpr>, Box<ExpExpr>),
}

impl ExpExpr {
    fn eval(&self, e: u32, p: u64) -> Result<i128> {
        let ovf = || Error::Template("exponent expression overflow".into());
        Ok(match self {
            ExpExpr::Int(v) => *v,
            ExpExpr::Level => e as i128,
            ExpExpr::Char => p as i128,
            ExpExpr::CharPow => (p as i128).checked_pow(e).ok_or_else(ovf)?,
            ExpExpr::Add(a, b) => a.eval(e, p)?.checked_add(b.eval(e, p)?).ok_or_else(ovf)?,
            ExpExpr::Sub(a, b) => a.eval(e, p)?.checked_sub(b.eval(e, p)?).ok_or_else(ovf)?,
            ExpExpr::Mul(a, b) => a.eval(e, p)?.checked_mul(b.eval(e, p)?).ok_or_else(ovf)?,
            ExpExpr::Pow(a, b) => {
                let base = a.eval(e, p)?;
                let exp = b.eval(e, p)?;
                if exp < 0 || exp > u32::MAX as i128 {
                    return Err(Error::Template(format!(
                        "exponent {exp} out of range in `^`"
                    )));
                }
                base.checked_pow(exp as u32).ok_or_else(ovf)?
            }
        })
    }
}

/// Expression tree produced by the parser; exponents stay symbolic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TemplateNode {
    Const(u128),
    Var(usize),
    Neg(Box<TemplateNode>),
    Add(Box<TemplateNode>, Box<TemplateNode>),
    Sub(Box<TemplateNode>, Box<TemplateNode>),
    Mul(Box<TemplateNode>, Box<TemplateNode>),
    Pow(Box<TemplateNode>, ExpExpr),
}

/// A polynomial-valued rule e -> f_e, evaluated exactly per level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplatePolynomial {
    ctx: RingContext,
    root: TemplateNode,
}

impl TemplatePolynomial {
    pub(crate) fn new(root: TemplateNode, ctx: &RingContext) -> Result<Self> {
        Ok(TemplatePolynomial {
            ctx: ctx.clone(),
            root,
        })
    }

    pub fn context(&self) -> &RingContext {
        &self.ctx
    }

    pub fn eval(&self, e: u32) -> Result<Polynomial> {
        self.eval_node(&self.root, e)
    }

    fn eval_node(&self, node: &TemplateNode, e: u32) -> Result<Polynomial> {
        let p = self.ctx.p();
        Ok(match node {
            TemplateNode::Const(v) => {
                Polynomial::constant(&self.ctx, (*v % p as u128) as i128)
            }
            TemplateNode::Var(i) => Polynomial::variable(&self.ctx, *i),
            TemplateNode::Neg(a) => self.eval_node(a, e)?.neg(),
            TemplateNode::Add(a, b) => self.eval_node(a, e)?.add(&self.eval_node(b, e)?)?,
            TemplateNode::Sub(a, b) => self.eval_node(a, e)?.sub(&self.eval_node(b, e)?)?,
            TemplateNode::Mul(a, b) => self.eval_node(a, e)?.mul(&self.eval_node(b, e)?)?,
            TemplateNode::Pow(a, exp) => {
                let k = exp.eval(e, p)?;
                if k < 0 {
                    return Err(Error::Template(format!(
                        "exponent evaluated to {k} < 0 at level {e}"
                    )));
                }
                if k > u64::MAX as i128 {
                    return Err(Error::ExponentOverflow);
                }
                self.eval_node(a, e)?.pow(k as u64)?
            }
        })
    }
}
