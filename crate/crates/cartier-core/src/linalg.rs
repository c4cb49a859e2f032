//! Dense row reduction over F_p for graded-piece dimension counts.

use crate::ring::RingContext;

/// An incrementally built row space in reduced echelon form. Columns index a
/// fixed monomial basis; insertion order is deterministic, so the resulting
/// echelon basis is too.
pub struct RowSpace {
    ctx: RingContext,
    cols: usize,
    /// Rows in echelon form, keyed by pivot column (ascending).
    rows: Vec<(usize, Vec<u64>)>,
}

impl RowSpace {
    pub fn new(ctx: &RingContext, cols: usize) -> Self {
        RowSpace {
            ctx: ctx.clone(),
            cols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the current space without inserting it.
    /// Returns the reduced row, or None if it reduces to zero.
    pub fn reduce(&self, mut row: Vec<u64>) -> Option<Vec<u64>> {
        debug_assert_eq!(row.len(), self.cols);
        for (pivot, basis_row) in &self.rows {
            let c = row[*pivot];
            if c != 0 {
                for (r, b) in row.iter_mut().zip(basis_row) {
                    *r = self.ctx.sub(*r, self.ctx.mul(c, *b));
                }
            }
        }
        if row.iter().all(|&c| c == 0) {
            None
        } else {
            Some(row)
        }
    }

    /// Inserts `row` into the space. Returns true iff the rank grew.
    pub fn insert(&mut self, row: Vec<u64>) -> bool {
        let Some(mut row) = self.reduce(row) else {
            return false;
        };
        let pivot = row.iter().position(|&c| c != 0).unwrap();
        let inv = self.ctx.inv(row[pivot]);
        for c in row.iter_mut() {
            *c = self.ctx.mul(*c, inv);
        }
        // Back-substitute into existing rows to keep reduced echelon form.
        for (_, existing) in self.rows.iter_mut() {
            let c = existing[pivot];
            if c != 0 {
                for (x, r) in existing.iter_mut().zip(&row) {
                    *x = self.ctx.sub(*x, self.ctx.mul(c, *r));
                }
            }
        }
        let at = self
            .rows
            .binary_search_by_key(&pivot, |(p, _)| *p)
            .unwrap_err();
        self.rows.insert(at, (pivot, row));
        true
    }
}
