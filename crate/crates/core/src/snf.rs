//! Smith normal form over the integers with transformation tracking.

use crate::matrix::IntMatrix;

/// `diagonal = left · input · right`, with `left`/`right` unimodular.
///
/// The nonzero diagonal entries come first, are positive and form a
/// divisibility chain. `left_inverse` is tracked alongside `left` so that
/// generators of a cokernel can be lifted back without a separate inversion.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: IntMatrix,
    pub left: IntMatrix,
    pub left_inverse: IntMatrix,
    pub right: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// The first `min(rows, cols)` diagonal entries.
    pub fn diagonal_entries(&self) -> Vec<i64> {
        let k = self.diagonal.rows().min(self.diagonal.cols());
        (0..k).map(|i| self.diagonal[(i, i)]).collect()
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, x: usize, y: usize) {
        self.a.swap_rows(x, y);
        self.u.swap_rows(x, y);
        self.u_inv.swap_cols(x, y);
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        self.a.swap_cols(x, y);
        self.v.swap_cols(x, y);
    }

    fn add_row(&mut self, dst: usize, src: usize, f: i64) {
        self.a.add_row_multiple(dst, src, f);
        self.u.add_row_multiple(dst, src, f);
        self.u_inv.add_col_multiple(src, dst, -f);
    }

    fn add_col(&mut self, dst: usize, src: usize, f: i64) {
        self.a.add_col_multiple(dst, src, f);
        self.v.add_col_multiple(dst, src, f);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Smallest nonzero magnitude in the trailing submatrix; `(t, t)` wins ties.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, i64)> = None;
        if self.a[(t, t)] != 0 {
            best = Some((t, t, self.a[(t, t)].abs()));
        }
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a[(i, j)].abs();
                if x != 0 && best.is_none_or(|(_, _, b)| x < b) {
                    best = Some((i, j, x));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Returns false when the trailing submatrix is zero.
    fn settle(&mut self, t: usize) -> bool {
        loop {
            let Some((pi, pj)) = self.pivot(t) else {
                return false;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            let p = self.a[(t, t)];

            let mut clean = true;
            for i in t + 1..self.a.rows() {
                let q = self.a[(i, t)] / p;
                self.add_row(i, t, -q);
                clean &= self.a[(i, t)] == 0;
            }
            for j in t + 1..self.a.cols() {
                let q = self.a[(t, j)] / p;
                self.add_col(j, t, -q);
                clean &= self.a[(t, j)] == 0;
            }
            if !clean {
                continue;
            }

            let offender = (t + 1..self.a.rows())
                .find(|&i| (t + 1..self.a.cols()).any(|j| self.a[(i, j)] % p != 0));
            match offender {
                Some(i) => self.add_row(t, i, 1),
                None => {
                    if p < 0 {
                        self.negate_row(t);
                    }
                    return true;
                }
            }
        }
    }
}

/// Computes `D = U·M·V` with `D` in Smith normal form.
///
/// Pivots on the entry of smallest magnitude, which keeps intermediate
/// coefficients small for the desk-scale matrices this crate handles.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut r = Reducer {
        a: m.clone(),
        u: IntMatrix::identity(m.rows()),
        u_inv: IntMatrix::identity(m.rows()),
        v: IntMatrix::identity(m.cols()),
    };
    let mut rank = 0;
    for t in 0..m.rows().min(m.cols()) {
        if !r.settle(t) {
            break;
        }
        rank += 1;
    }
    SmithForm { diagonal: r.a, left: r.u, left_inverse: r.u_inv, right: r.v, rank }
}
