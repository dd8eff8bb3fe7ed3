//! Dense matrices over an arbitrary scalar, generic enough to hold exact
//! integers and exact rationals. Row-major storage; all operations are pure.

use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S> Mat<S> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }
}

impl<S: Clone> Mat<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_cols(cols: Vec<Vec<S>>) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        assert!(cols.iter().all(|col| col.len() == r), "ragged columns");
        let mut data = Vec::with_capacity(r * c);
        for i in 0..r {
            for col in &cols {
                data.push(col[i].clone());
            }
        }
        Mat { rows: r, cols: c, data }
    }

    pub fn filled(rows: usize, cols: usize, value: S) -> Self {
        Mat {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<S> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Mat {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

impl<S: Clone + Zero> Mat<S> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: (0..rows * cols).map(|_| S::zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<S: Clone + Zero + One> Mat<S> {
    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }
}

impl<S> Mat<S>
where
    S: Clone + Zero + std::ops::Mul<Output = S> + std::ops::Add<Output = S>,
{
    pub fn mul(&self, other: &Mat<S>) -> Mat<S> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out: Mat<S> = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)].clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a.clone() * other[(l, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for j in 0..self.cols {
                    acc = acc + self[(i, j)].clone() * v[j].clone();
                }
                acc
            })
            .collect()
    }
}

impl<S> Index<(usize, usize)> for Mat<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<S: std::fmt::Debug> std::fmt::Debug for Mat<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| format!("{:?}", self.data[i * self.cols + j]))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, IMat};

    fn m(rows: Vec<Vec<i64>>) -> IMat {
        Mat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(int).collect())
                .collect(),
        )
    }

    #[test]
    fn product_and_identity() {
        let a = m(vec![vec![1, 2], vec![3, 4]]);
        let id = IMat::identity(2);
        assert_eq!(a.mul(&id), a);
        let b = m(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(a.mul(&b), m(vec![vec![2, 1], vec![4, 3]]));
    }

    #[test]
    fn from_cols_matches_transpose_of_rows() {
        let cols = vec![vec![int(1), int(3)], vec![int(2), int(4)]];
        let a = Mat::from_cols(cols);
        assert_eq!(a, m(vec![vec![1, 2], vec![3, 4]]));
        assert_eq!(a.col(1), vec![int(2), int(4)]);
        assert_eq!(a.transpose(), m(vec![vec![1, 3], vec![2, 4]]));
    }

    #[test]
    fn empty_matrices_are_allowed() {
        let e = IMat::zero(0, 3);
        assert_eq!(e.rows(), 0);
        assert!(e.is_zero());
        let p = e.mul(&IMat::zero(3, 2));
        assert_eq!((p.rows(), p.cols()), (0, 2));
    }
}
