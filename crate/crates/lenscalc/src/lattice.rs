//! Sublattices of Z^n: integer kernels, rational preimages, quotient groups,
//! and exact membership tests, all through Smith normal form.

use num_rational::Ratio;

use crate::finab::FinAbGroup;
use crate::mat::Mat;
use crate::snf::{snf, SmithForm};
use crate::{Error, Int, IntScalar, Result};

/// A sublattice of Z^ambient given by linearly independent basis columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice<T = Int> {
    ambient: usize,
    basis: Mat<T>,
}

impl<T: IntScalar> Lattice<T> {
    pub fn new(ambient: usize, basis: Mat<T>) -> Self {
        assert_eq!(basis.rows(), ambient, "basis rows must equal ambient rank");
        debug_assert_eq!(
            snf(&basis).rank(),
            basis.cols(),
            "basis columns must be linearly independent"
        );
        Lattice { ambient, basis }
    }

    /// The full lattice Z^n.
    pub fn full(n: usize) -> Self {
        Lattice {
            ambient: n,
            basis: Mat::identity(n),
        }
    }

    /// The zero sublattice of Z^n.
    pub fn zero(n: usize) -> Self {
        Lattice {
            ambient: n,
            basis: Mat::zero(n, 0),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Mat<T> {
        &self.basis
    }

    /// The lattice scaled entrywise by a nonzero integer.
    pub fn scaled(&self, c: &T) -> Self {
        assert!(!c.is_zero());
        let mut basis = self.basis.clone();
        for i in 0..basis.rows() {
            for j in 0..basis.cols() {
                basis[(i, j)] = basis[(i, j)].clone() * c.clone();
            }
        }
        Lattice {
            ambient: self.ambient,
            basis,
        }
    }

    pub fn solver(&self) -> MembershipSolver<T> {
        MembershipSolver {
            ambient: self.ambient,
            rank: self.rank(),
            smith: snf(&self.basis),
        }
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.solver().contains(v)
    }

    /// Containment as sublattices of the same ambient Z^n.
    pub fn contains_lattice(&self, other: &Lattice<T>) -> bool {
        assert_eq!(self.ambient, other.ambient, "ambient ranks differ");
        let solver = self.solver();
        (0..other.basis.cols()).all(|j| solver.contains(&other.basis.col(j)))
    }

    /// Equality as sublattices (mutual membership of generators).
    pub fn eq_lattice(&self, other: &Lattice<T>) -> bool {
        self.contains_lattice(other) && other.contains_lattice(self)
    }
}

/// Reusable membership test for one lattice (one Smith form, many queries).
pub struct MembershipSolver<T> {
    ambient: usize,
    rank: usize,
    smith: SmithForm<T>,
}

impl<T: IntScalar> MembershipSolver<T> {
    pub fn contains(&self, v: &[T]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length must equal ambient rank");
        let w = self.smith.u.mul_vec(v);
        for (i, wi) in w.iter().enumerate() {
            if i < self.rank {
                let d = self.smith.d[(i, i)].clone();
                if !(wi.clone() % d).is_zero() {
                    return false;
                }
            } else if !wi.is_zero() {
                return false;
            }
        }
        true
    }
}

/// Saturated integer kernel {x in Z^cols : A x = 0}.
pub fn lattice_kernel<T: IntScalar>(a: &Mat<T>) -> Lattice<T> {
    let s = snf(a);
    let r = s.rank();
    let n = a.cols();
    let cols: Vec<Vec<T>> = (r..n).map(|j| s.v.col(j)).collect();
    let basis = if cols.is_empty() {
        Mat::zero(n, 0)
    } else {
        Mat::from_cols(cols)
    };
    Lattice { ambient: n, basis }
}

/// The full preimage {s in Z^g : A s in L} of a lattice under a rational map
/// A: Q^g -> Q^m. Denominators are cleared once by their lcm c, the integer
/// kernel of the block [cA | -cB] is computed, and its s-block projection is
/// returned; no solution is lost because B has independent columns.
pub fn lattice_preimage<T: IntScalar>(
    a: &Mat<Ratio<T>>,
    l: &Lattice<T>,
) -> Result<Lattice<T>> {
    if a.rows() != l.ambient {
        return Err(Error::DimensionMismatch(format!(
            "map has {} rows but lattice ambient rank is {}",
            a.rows(),
            l.ambient
        )));
    }
    let (m, g) = (a.rows(), a.cols());
    let r = l.rank();

    let mut c = T::one();
    for i in 0..m {
        for j in 0..g {
            c = c.lcm(a[(i, j)].denom());
        }
    }

    let mut block = Mat::zero(m, g + r);
    for i in 0..m {
        for j in 0..g {
            let entry = &a[(i, j)];
            block[(i, j)] = entry.numer().clone() * (c.clone() / entry.denom().clone());
        }
        for j in 0..r {
            block[(i, g + j)] = -(l.basis[(i, j)].clone() * c.clone());
        }
    }

    let kernel = lattice_kernel(&block);
    let cols: Vec<Vec<T>> = (0..kernel.rank())
        .map(|j| kernel.basis.col(j)[..g].to_vec())
        .collect();
    let basis = if cols.is_empty() {
        Mat::zero(g, 0)
    } else {
        Mat::from_cols(cols)
    };
    Ok(Lattice::new(g, basis))
}

/// The quotient Z^ambient / L in canonical invariant-factor form.
pub fn quotient_group<T: IntScalar>(ambient: usize, l: &Lattice<T>) -> FinAbGroup<T> {
    assert_eq!(l.ambient, ambient, "lattice does not sit inside Z^ambient");
    let s = snf(&l.basis);
    let diag: Vec<T> = s.diagonal().into_iter().filter(|x| !x.is_zero()).collect();
    FinAbGroup::from_diagonal(&diag, ambient - diag.len())
}

#[cfg(test)]
mod tests {
    use num_traits::Zero;

    use super::*;
    use crate::{int, rat, ratz, IMat, QMat};

    fn im(rows: Vec<Vec<i64>>) -> IMat {
        Mat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(int).collect())
                .collect(),
        )
    }

    #[test]
    fn kernel_of_2_minus_2() {
        let l = lattice_kernel(&im(vec![vec![2, -2]]));
        assert_eq!(l.rank(), 1);
        assert!(l.contains(&[int(1), int(1)]));
        assert!(!l.contains(&[int(1), int(0)]));
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let l = lattice_kernel(&IMat::identity(3));
        assert_eq!(l.rank(), 0);
        assert!(l.contains(&[int(0), int(0), int(0)]));
        assert!(!l.contains(&[int(1), int(0), int(0)]));
    }

    #[test]
    fn kernel_of_6_10_15_has_rank_two_and_annihilates() {
        let a = im(vec![vec![6, 10, 15]]);
        let l = lattice_kernel(&a);
        assert_eq!(l.rank(), 2);
        for j in 0..2 {
            let col = l.basis().col(j);
            let img = a.mul_vec(&col);
            assert!(img[0].is_zero());
        }
        // Saturation: (1,0,0) has image 6, so it is outside; but any integer
        // vector with zero image must be inside.
        assert!(l.contains(&[int(5), int(-3), int(0)]));
        assert!(l.contains(&[int(5), int(0), int(-2)]));
    }

    #[test]
    fn preimage_of_z_under_one_half() {
        let a = QMat::from_rows(vec![vec![rat(1, 2)]]);
        let p = lattice_preimage(&a, &Lattice::full(1)).unwrap();
        assert_eq!(p.rank(), 1);
        assert!(p.contains(&[int(2)]));
        assert!(!p.contains(&[int(1)]));
    }

    #[test]
    fn preimage_under_identity_is_everything() {
        let a = QMat::from_rows(vec![
            vec![ratz(1), ratz(0)],
            vec![ratz(0), ratz(1)],
        ]);
        let p = lattice_preimage(&a, &Lattice::full(2)).unwrap();
        assert!(p.eq_lattice(&Lattice::full(2)));
    }

    #[test]
    fn preimage_of_z_under_thirds_has_index_three() {
        let a = QMat::from_rows(vec![vec![rat(1, 3), rat(1, 3)]]);
        let p = lattice_preimage(&a, &Lattice::full(1)).unwrap();
        for x in -3i64..=3 {
            for y in -3i64..=3 {
                let inside = (x + y).rem_euclid(3) == 0;
                assert_eq!(p.contains(&[int(x), int(y)]), inside, "at ({x},{y})");
            }
        }
        let q = quotient_group(2, &p);
        assert_eq!(q.free_rank(), 0);
        assert_eq!(q.torsion(), &[int(3)]);
    }

    #[test]
    fn preimage_dimension_mismatch() {
        let a = QMat::from_rows(vec![vec![ratz(1)]]);
        assert!(matches!(
            lattice_preimage(&a, &Lattice::full(2)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn quotient_examples() {
        let q = quotient_group(2, &Lattice::new(2, im(vec![vec![2, 0], vec![0, 3]])));
        assert_eq!(q.free_rank(), 0);
        assert_eq!(q.torsion(), &[int(6)]);

        let q = quotient_group(2, &Lattice::new(2, im(vec![vec![1], vec![0]])));
        assert_eq!(q.free_rank(), 1);
        assert!(q.torsion().is_empty());

        let q = quotient_group(
            3,
            &Lattice::new(3, im(vec![vec![2, 0], vec![0, 4], vec![0, 0]])),
        );
        assert_eq!(q.free_rank(), 1);
        assert_eq!(q.torsion(), &[int(2), int(4)]);
    }

    #[test]
    fn lattice_equality_ignores_basis_choice() {
        let a = Lattice::new(2, im(vec![vec![1, 0], vec![0, 1]]));
        let b = Lattice::new(2, im(vec![vec![1, 1], vec![0, 1]]));
        assert!(a.eq_lattice(&b));
        let c = Lattice::new(2, im(vec![vec![1, 1], vec![0, 2]]));
        assert!(!a.eq_lattice(&c));
        assert!(a.contains_lattice(&c));
    }
}
