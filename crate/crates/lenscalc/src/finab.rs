//! Finitely generated abelian groups in canonical invariant-factor form:
//! free rank plus an ascending divisibility chain of torsion orders.

use crate::mat::Mat;
use crate::snf::snf;
use crate::{Int, IntScalar};

/// Canonical form of a finitely generated abelian group. Two values are equal
/// iff they present isomorphic groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAbGroup<T = Int> {
    free_rank: usize,
    torsion: Vec<T>,
}

impl<T: IntScalar> FinAbGroup<T> {
    pub fn trivial() -> Self {
        FinAbGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Canonicalizes a direct sum of cyclic groups of the given orders plus a
    /// free part, by Smith normal form of the diagonal order matrix.
    pub fn from_orders(orders: &[T], free_rank: usize) -> Self {
        assert!(
            orders.iter().all(|x| x.is_positive()),
            "cyclic orders must be positive"
        );
        let n = orders.len();
        let mut diag = Mat::zero(n, n);
        for (i, x) in orders.iter().enumerate() {
            diag[(i, i)] = x.clone();
        }
        let chain = snf(&diag).diagonal();
        Self::from_diagonal(&chain, free_rank)
    }

    /// Builds the group from an already-computed divisibility chain (integers
    /// >= 1 in ascending divisibility order); entries equal to 1 are dropped.
    pub fn from_diagonal(chain: &[T], free_rank: usize) -> Self {
        let torsion: Vec<T> = chain
            .iter()
            .filter(|x| {
                assert!(x.is_positive(), "chain entries must be positive");
                !x.is_one()
            })
            .cloned()
            .collect();
        for pair in torsion.windows(2) {
            assert!(
                (pair[1].clone() % pair[0].clone()).is_zero(),
                "not a divisibility chain"
            );
        }
        FinAbGroup { free_rank, torsion }
    }

    pub fn direct_sum(&self, other: &FinAbGroup<T>) -> Self {
        let mut orders = self.torsion.clone();
        orders.extend(other.torsion.iter().cloned());
        Self::from_orders(&orders, self.free_rank + other.free_rank)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[T] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> T {
        self.torsion
            .iter()
            .fold(T::one(), |acc, x| acc * x.clone())
    }

    /// Invariant factors of the 2-primary part (ascending, entries > 1).
    pub fn two_primary(&self) -> Vec<T> {
        self.torsion
            .iter()
            .map(two_part)
            .filter(|x| !x.is_one())
            .collect()
    }

    /// Largest order of an element of 2-power order (1 for odd groups).
    pub fn two_exponent(&self) -> T {
        self.torsion.last().map_or_else(T::one, two_part)
    }

    /// Order of the odd-primary part of the torsion subgroup.
    pub fn odd_order(&self) -> T {
        self.torsion
            .iter()
            .fold(T::one(), |acc, x| acc * (x.clone() / two_part(x)))
    }
}

/// Largest power of 2 dividing x.
fn two_part<T: IntScalar>(x: &T) -> T {
    let two = T::from_i64(2).unwrap();
    let mut rest = x.clone();
    let mut part = T::one();
    while (rest.clone() % two.clone()).is_zero() {
        rest = rest / two.clone();
        part = part * two.clone();
    }
    part
}

impl<T: IntScalar> std::fmt::Display for FinAbGroup<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}
