//! Monomial orders for normal forms and Gröbner bases.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exponent::ExponentVector;
use crate::ring::RingContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrderKind {
    Lexicographic,
    GradedReverseLexicographic,
}

/// A total order on monomials compatible with multiplication and with 1 as
/// the minimum. `priority[0]` is the most significant variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
}

impl MonomialOrder {
    /// Lexicographic order with the declared variable order.
    pub fn lex(ctx: &RingContext) -> Self {
        MonomialOrder {
            kind: OrderKind::Lexicographic,
            priority: (0..ctx.n()).collect(),
        }
    }

    /// Graded reverse lexicographic with the declared variable order; the
    /// default order throughout the crate.
    pub fn grevlex(ctx: &RingContext) -> Self {
        MonomialOrder {
            kind: OrderKind::GradedReverseLexicographic,
            priority: (0..ctx.n()).collect(),
        }
    }

    /// An order with an explicit variable priority (a permutation of 0..n).
    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Result<Self> {
        let n = priority.len();
        let mut seen = vec![false; n];
        for &i in &priority {
            if i >= n || seen[i] {
                return Err(Error::InvalidRing(
                    "variable priority must be a permutation".into(),
                ));
            }
            seen[i] = true;
        }
        Ok(MonomialOrder { kind, priority })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn cmp_exponents(&self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        debug_assert_eq!(a.len(), self.priority.len());
        match self.kind {
            OrderKind::Lexicographic => {
                for &i in &self.priority {
                    match a.get(i).cmp(&b.get(i)) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
            OrderKind::GradedReverseLexicographic => {
                let da: u64 = a.exponents().iter().sum();
                let db: u64 = b.exponents().iter().sum();
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    other => return other,
                }
                // Ties: the last differing variable (in priority order)
                // decides, with the smaller exponent winning.
                for &i in self.priority.iter().rev() {
                    match a.get(i).cmp(&b.get(i)) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
        }
    }
}
