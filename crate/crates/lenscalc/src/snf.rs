//! Smith normal form of integer matrices with unimodular transform tracking.
//!
//! `snf` produces U, V (with explicit inverses) such that U * A * V = D, D
//! diagonal with a divisibility chain d_1 | d_2 | ... Pivoting always selects
//! the smallest nonzero absolute value in the remaining submatrix, which keeps
//! coefficient growth tame at the matrix sizes used here.

use crate::mat::Mat;
use crate::IntScalar;

pub struct SmithForm<T> {
    pub d: Mat<T>,
    pub u: Mat<T>,
    pub u_inv: Mat<T>,
    pub v: Mat<T>,
    pub v_inv: Mat<T>,
}

impl<T: IntScalar> SmithForm<T> {
    /// Diagonal entries of D, length min(rows, cols).
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    /// Number of nonzero diagonal entries (the rank of A over Q).
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

struct Work<T> {
    d: Mat<T>,
    u: Mat<T>,
    u_inv: Mat<T>,
    v: Mat<T>,
    v_inv: Mat<T>,
}

impl<T: IntScalar> Work<T> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// row_i += q * row_j on D and U; the inverse column operation on U^-1.
    fn add_row(&mut self, i: usize, j: usize, q: &T) {
        for c in 0..self.d.cols() {
            let t = self.d[(i, c)].clone() + q.clone() * self.d[(j, c)].clone();
            self.d[(i, c)] = t;
        }
        for c in 0..self.u.cols() {
            let t = self.u[(i, c)].clone() + q.clone() * self.u[(j, c)].clone();
            self.u[(i, c)] = t;
        }
        for r in 0..self.u_inv.rows() {
            let t = self.u_inv[(r, j)].clone() - q.clone() * self.u_inv[(r, i)].clone();
            self.u_inv[(r, j)] = t;
        }
    }

    /// col_i += q * col_j on D and V; the inverse row operation on V^-1.
    fn add_col(&mut self, i: usize, j: usize, q: &T) {
        for r in 0..self.d.rows() {
            let t = self.d[(r, i)].clone() + q.clone() * self.d[(r, j)].clone();
            self.d[(r, i)] = t;
        }
        for r in 0..self.v.rows() {
            let t = self.v[(r, i)].clone() + q.clone() * self.v[(r, j)].clone();
            self.v[(r, i)] = t;
        }
        for c in 0..self.v_inv.cols() {
            let t = self.v_inv[(j, c)].clone() - q.clone() * self.v_inv[(i, c)].clone();
            self.v_inv[(j, c)] = t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.d.cols() {
            self.d[(i, c)] = -self.d[(i, c)].clone();
        }
        for c in 0..self.u.cols() {
            self.u[(i, c)] = -self.u[(i, c)].clone();
        }
        for r in 0..self.u_inv.rows() {
            self.u_inv[(r, i)] = -self.u_inv[(r, i)].clone();
        }
    }

    /// Position of a nonzero entry of smallest absolute value in the
    /// submatrix with both indices >= p.
    fn pivot(&self, p: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, T)> = None;
        for i in p..self.d.rows() {
            for j in p..self.d.cols() {
                let x = self.d[(i, j)].abs();
                if x.is_zero() {
                    continue;
                }
                match &best {
                    Some((_, _, b)) if *b <= x => {}
                    _ => best = Some((i, j, x)),
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

pub fn snf<T: IntScalar>(a: &Mat<T>) -> SmithForm<T> {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        d: a.clone(),
        u: Mat::identity(m),
        u_inv: Mat::identity(m),
        v: Mat::identity(n),
        v_inv: Mat::identity(n),
    };

    let mut p = 0;
    while p < m.min(n) {
        let Some((pi, pj)) = w.pivot(p) else { break };
        w.swap_rows(p, pi);
        w.swap_cols(p, pj);

        let piv = w.d[(p, p)].clone();

        // Reduce the pivot column and row. If any entry leaves a nonzero
        // remainder, a strictly smaller pivot appears and the pass restarts.
        let mut clean = true;
        for i in p + 1..m {
            if !w.d[(i, p)].is_zero() {
                let q = -(w.d[(i, p)].clone() / piv.clone());
                w.add_row(i, p, &q);
                if !w.d[(i, p)].is_zero() {
                    clean = false;
                }
            }
        }
        for j in p + 1..n {
            if !w.d[(p, j)].is_zero() {
                let q = -(w.d[(p, j)].clone() / piv.clone());
                w.add_col(j, p, &q);
                if !w.d[(p, j)].is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }

        // Pivot now divides its row and column remainders exactly (both are
        // zero). Enforce divisibility of the whole remaining submatrix by
        // folding an offending row into the pivot row.
        let mut offending = None;
        'scan: for i in p + 1..m {
            for j in p + 1..n {
                if !(w.d[(i, j)].clone() % piv.clone()).is_zero() {
                    offending = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offending {
            w.add_row(p, i, &T::one());
            continue;
        }

        if w.d[(p, p)].is_negative() {
            w.negate_row(p);
        }
        p += 1;
    }

    SmithForm {
        d: w.d,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
    }
}

/// Checks every structural invariant of a computed Smith form against the
/// original matrix: U*A*V = D, both transform pairs multiply to the identity
/// (unimodularity), D diagonal and nonnegative, divisibility chain.
pub fn smith_form_is_valid<T: IntScalar>(a: &Mat<T>, s: &SmithForm<T>) -> bool {
    let (m, n) = (a.rows(), a.cols());
    if s.u.mul(a).mul(&s.v) != s.d {
        return false;
    }
    if s.u.mul(&s.u_inv) != Mat::identity(m) || s.v_inv.mul(&s.v) != Mat::identity(n) {
        return false;
    }
    for i in 0..m {
        for j in 0..n {
            if i != j && !s.d[(i, j)].is_zero() {
                return false;
            }
        }
    }
    let diag = s.diagonal();
    for (idx, x) in diag.iter().enumerate() {
        if x.is_negative() {
            return false;
        }
        if idx + 1 < diag.len() {
            let next = &diag[idx + 1];
            if x.is_zero() {
                if !next.is_zero() {
                    return false;
                }
            } else if !(next.clone() % x.clone()).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, IMat, Int};

    fn m(rows: Vec<Vec<i64>>) -> IMat {
        Mat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(int).collect())
                .collect(),
        )
    }

    #[test]
    fn diag_2_3_normalizes_to_1_6() {
        let a = m(vec![vec![2, 0], vec![0, 3]]);
        let s = snf(&a);
        assert!(smith_form_is_valid(&a, &s));
        assert_eq!(s.diagonal(), vec![int(1), int(6)]);
    }

    #[test]
    fn zero_matrix() {
        let a = IMat::zero(2, 2);
        let s = snf(&a);
        assert!(smith_form_is_valid(&a, &s));
        assert_eq!(s.diagonal(), vec![int(0), int(0)]);
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn empty_matrix() {
        let a = IMat::zero(0, 3);
        let s = snf(&a);
        assert!(smith_form_is_valid(&a, &s));
        assert!(s.diagonal().is_empty());
    }

    #[test]
    fn product_of_invariant_factors_is_abs_det() {
        // 4x4 with entries in [-9, 9]; determinant by cofactor expansion.
        let a = m(vec![
            vec![3, -1, 4, 1],
            vec![-5, 9, 2, -6],
            vec![5, 3, -5, 8],
            vec![9, -7, 9, 3],
        ]);
        fn det(rows: &[Vec<Int>]) -> Int {
            let n = rows.len();
            if n == 1 {
                return rows[0][0].clone();
            }
            let mut acc = Int::from(0);
            for j in 0..n {
                let minor: Vec<Vec<Int>> = rows[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = rows[0][j].clone() * det(&minor);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        let rows: Vec<Vec<Int>> = (0..4).map(|i| a.row(i)).collect();
        let d = det(&rows);
        let s = snf(&a);
        assert!(smith_form_is_valid(&a, &s));
        let prod: Int = s.diagonal().into_iter().product();
        assert_eq!(prod, num_traits::Signed::abs(&d));
    }

    #[test]
    fn generic_core_works_with_machine_integers() {
        let a: Mat<i64> = Mat::from_rows(vec![vec![6, 10], vec![15, 4]]);
        let s = snf(&a);
        assert!(smith_form_is_valid(&a, &s));
        assert_eq!(s.diagonal(), vec![1, 126]);
    }
}
