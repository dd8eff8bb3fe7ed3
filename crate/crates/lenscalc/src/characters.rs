//! The complex representation ring of Z/N: virtual characters, the
//! conjugation involution, reduced coordinates modulo the regular
//! representation, the scaled eigenspace lattices, restriction to subgroups,
//! and exact Fourier inversion from class-function values.

use num_integer::Integer;
use num_traits::Zero;

use crate::cyclo::{totient, CycloElem};
use crate::lattice::Lattice;
use crate::mat::Mat;
use crate::{int, Error, Int, Rat, Result};

/// Eigenvalue sign of the conjugation involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// (-1)^x as a sign.
    pub fn from_parity(x: u32) -> Sign {
        if x % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// A virtual character of Z/N: integer coefficient of chi^m at index m, where
/// chi sends the fixed generator to zeta_N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharClass {
    n: u32,
    coeffs: Vec<Int>,
}

impl CharClass {
    pub fn new(n: u32, coeffs: Vec<Int>) -> Self {
        assert!(n >= 2);
        assert_eq!(coeffs.len(), n as usize, "need one coefficient per character");
        CharClass { n, coeffs }
    }

    /// The single character chi^j.
    pub fn chi(n: u32, j: u32) -> Self {
        let mut coeffs = vec![int(0); n as usize];
        coeffs[(j % n) as usize] = int(1);
        CharClass { n, coeffs }
    }

    /// The regular representation (all coefficients 1).
    pub fn regular(n: u32) -> Self {
        CharClass {
            n,
            coeffs: vec![int(1); n as usize],
        }
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn add(&self, other: &CharClass) -> CharClass {
        assert_eq!(self.n, other.n);
        CharClass {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> CharClass {
        CharClass {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    /// Complex conjugation: the coefficient at chi^m moves to chi^{N-m mod N}.
    pub fn involution(&self) -> CharClass {
        let n = self.n as usize;
        let mut coeffs = vec![int(0); n];
        for (m, c) in self.coeffs.iter().enumerate() {
            coeffs[(n - m) % n] = c.clone();
        }
        CharClass { n: self.n, coeffs }
    }

    /// Restriction along Z/U < Z/N: chi^j pulls back to chi^{j mod U}.
    pub fn restriction(&self, u: u32) -> Result<CharClass> {
        if u < 1 || self.n % u != 0 {
            return Err(Error::NotADivisor { divisor: u, of: self.n });
        }
        let mut coeffs = vec![int(0); u as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            let t = &mut coeffs[j % u as usize];
            *t = &*t + c;
        }
        Ok(CharClass { n: u, coeffs })
    }

    /// Character values on the nontrivial group elements: at index j-1 the
    /// value sum_m coeffs[m] * zeta^{jm}.
    pub fn values(&self) -> ClassFunction {
        let n = self.n;
        let values = (1..n)
            .map(|j| {
                let mut acc = CycloElem::zero(n);
                for (m, c) in self.coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let term = CycloElem::zeta_pow(n, j as i64 * m as i64)
                        .scale(&Rat::from_integer(c.clone()));
                    acc = acc.add(&term);
                }
                acc
            })
            .collect();
        ClassFunction::new(n, values)
    }

    /// Reduced coordinates a_m - a_0 read off directly from the coefficients.
    pub fn reduced_coords(&self) -> ReducedCharCoords {
        let coords = (1..self.n as usize)
            .map(|m| Rat::from_integer(&self.coeffs[m] - &self.coeffs[0]))
            .collect();
        ReducedCharCoords {
            n: self.n,
            coords,
        }
    }
}

/// Exact values of a conjugation-equivariant function on the nontrivial N-th
/// roots of unity; the value at zeta^j is stored at index j-1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    n: u32,
    values: Vec<CycloElem>,
}

impl ClassFunction {
    pub fn new(n: u32, values: Vec<CycloElem>) -> Self {
        assert!(n >= 2);
        assert_eq!(values.len(), (n - 1) as usize);
        assert!(values.iter().all(|v| v.conductor() == n));
        ClassFunction { n, values }
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    /// Value at zeta^j, 1 <= j <= N-1.
    pub fn value_at(&self, j: u32) -> &CycloElem {
        assert!(j >= 1 && j < self.n);
        &self.values[(j - 1) as usize]
    }

    pub fn values(&self) -> &[CycloElem] {
        &self.values
    }

    pub fn sub(&self, other: &ClassFunction) -> ClassFunction {
        assert_eq!(self.n, other.n);
        ClassFunction {
            n: self.n,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> ClassFunction {
        ClassFunction {
            n: self.n,
            values: self.values.iter().map(|v| v.scale(r)).collect(),
        }
    }

    /// Galois equivariance: the value at zeta^{sigma j} equals the sigma-image
    /// of the value at zeta^j for every sigma coprime to N.
    pub fn is_equivariant(&self) -> bool {
        let n = self.n;
        for sigma in 2..n {
            if sigma.gcd(&n) != 1 {
                continue;
            }
            for j in 1..n {
                let sj = (sigma as u64 * j as u64 % n as u64) as u32;
                if *self.value_at(sj) != self.value_at(j).galois_apply(sigma) {
                    return false;
                }
            }
        }
        true
    }

    /// Restriction to the subgroup of order U: keeps the values at roots of
    /// order dividing U and rewrites them over the smaller field Q(zeta_U).
    pub fn restrict(&self, u: u32) -> Result<ClassFunction> {
        if u < 2 || self.n % u != 0 {
            return Err(Error::NotADivisor { divisor: u, of: self.n });
        }
        let step = (self.n / u) as i64;
        let deg_u = totient(u) as usize;
        // Columns of the descent system: zeta_N^{step * t} expanded in the
        // power basis of Q(zeta_N), for t = 0..deg_u-1.
        let basis: Vec<Vec<Rat>> = (0..deg_u)
            .map(|t| CycloElem::zeta_pow(self.n, step * t as i64).coeffs().to_vec())
            .collect();
        let mut values = Vec::with_capacity((u - 1) as usize);
        for i in 1..u {
            let big = self.value_at(i * (self.n / u));
            let y = solve_exact(&basis, big.coeffs()).ok_or_else(|| {
                Error::NonRationalCoefficient(format!(
                    "value at a root of order dividing {} does not descend from Q(zeta_{}) \
                     (class function is not Galois-equivariant)",
                    u, self.n
                ))
            })?;
            let mut small = CycloElem::zero(u);
            for (t, c) in y.iter().enumerate() {
                small = small.add(&CycloElem::zeta_pow(u, t as i64).scale(c));
            }
            values.push(small);
        }
        Ok(ClassFunction::new(u, values))
    }
}

/// Solves sum_t y_t * cols[t] = rhs over Q by Gaussian elimination; `None` if
/// the system is inconsistent. The columns are assumed independent, which
/// holds for the power basis used in descent.
fn solve_exact(cols: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let k = cols.len();
    let m = rhs.len();
    let mut aug: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();

    let mut pivot_rows = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..m).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let inv = aug[r][c].recip();
        for x in aug[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in 0..=k {
                    aug[i][j] = &aug[i][j] - &(&f * &aug[r][j]);
                }
            }
        }
        pivot_rows.push((r, c));
        r += 1;
    }
    if aug[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut y = vec![Rat::zero(); k];
    for (row, col) in pivot_rows {
        y[col] = aug[row][k].clone();
    }
    Some(y)
}

/// Rational coordinates a_m - a_0 (entry m-1) of a class function in the
/// reduced representation ring Q^N modulo the all-ones line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedCharCoords {
    n: u32,
    coords: Vec<Rat>,
}

impl ReducedCharCoords {
    pub fn new(n: u32, coords: Vec<Rat>) -> Self {
        assert_eq!(coords.len(), (n - 1) as usize);
        ReducedCharCoords { n, coords }
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    /// Coordinate a_m - a_0 for 1 <= m <= N-1.
    pub fn coord(&self, m: u32) -> &Rat {
        assert!(m >= 1 && m < self.n);
        &self.coords[(m - 1) as usize]
    }

    /// Whether the vector lies in the sign-eigenspace: symmetric coordinates
    /// for +, antisymmetric for - (in particular zero at m = N/2).
    pub fn has_symmetry(&self, sign: Sign) -> bool {
        (1..self.n).all(|m| {
            let mirror = self.coord(self.n - m);
            match sign {
                Sign::Plus => self.coord(m) == mirror,
                Sign::Minus => *self.coord(m) == -mirror,
            }
        })
    }
}

/// Exact Fourier inversion, forgetting the value at 1: the reduced coordinate
/// at m is (1/N) * sum_j v(zeta^j) * (zeta^{-jm} - 1). Galois equivariance of
/// v makes every coordinate rational; a non-rational outcome is reported as
/// an upstream construction bug.
pub fn values_to_reduced_coords(v: &ClassFunction) -> Result<ReducedCharCoords> {
    let n = v.modulus();
    let inv_n = Rat::new(int(1), int(n as i64));
    let mut coords = Vec::with_capacity((n - 1) as usize);
    for m in 1..n {
        let mut acc = CycloElem::zero(n);
        for j in 1..n {
            let weight = CycloElem::zeta_pow(n, -(j as i64) * m as i64)
                .sub(&CycloElem::one(n));
            acc = acc.add(&v.value_at(j).mul(&weight));
        }
        coords.push(acc.scale(&inv_n).as_rational()?);
    }
    Ok(ReducedCharCoords { n, coords })
}

/// Rank of the reduced sign-eigenspace: for N even, N/2 (+) and N/2 - 1 (-);
/// for N odd, (N-1)/2 for both signs.
pub fn reduced_eigenspace_rank(n: u32, sign: Sign) -> usize {
    assert!(n >= 2);
    if n % 2 == 0 {
        match sign {
            Sign::Plus => (n / 2) as usize,
            Sign::Minus => (n / 2 - 1) as usize,
        }
    } else {
        ((n - 1) / 2) as usize
    }
}

/// The scaled eigenspace lattice in reduced coordinates.
#[derive(Clone, Debug)]
pub struct EigenLatticeSpec {
    pub n: u32,
    pub sign: Sign,
    pub scale: u32,
    pub lattice: Lattice,
}

/// Image of scale * (sign-eigenspace of the integer character lattice) in
/// reduced coordinates. Quotienting by the all-ones line pins the symmetric
/// (+) respectively antisymmetric (-) integer vectors: the constant in
/// "a_m + a_{N-m} independent of m" is forced to zero by the m = 0 equation.
pub fn eigen_lattice(n: u32, sign: Sign, scale: u32) -> EigenLatticeSpec {
    assert!(n >= 2 && scale >= 1);
    let dim = (n - 1) as usize;
    let mut cols = Vec::new();
    for m in 1..=(n / 2) {
        let mirror = n - m;
        let mut col = vec![int(0); dim];
        if m == mirror {
            if sign == Sign::Plus {
                col[(m - 1) as usize] = int(scale as i64);
                cols.push(col);
            }
            continue;
        }
        col[(m - 1) as usize] = int(scale as i64);
        col[(mirror - 1) as usize] = match sign {
            Sign::Plus => int(scale as i64),
            Sign::Minus => int(-(scale as i64)),
        };
        cols.push(col);
    }
    let basis = if cols.is_empty() {
        Mat::zero(dim, 0)
    } else {
        Mat::from_cols(cols)
    };
    let lattice = Lattice::new(dim, basis);
    debug_assert_eq!(lattice.rank(), reduced_eigenspace_rank(n, sign));
    EigenLatticeSpec {
        n,
        sign,
        scale,
        lattice,
    }
}
