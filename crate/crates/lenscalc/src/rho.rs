//! The rho map on smooth normal generators: its columns as class functions
//! and as reduced rational coordinates, the lattice of tuples it sends into
//! the scaled eigenspace lattice, the resulting finite image group, and the
//! arithmetic verifiers (factorization, transfer compatibility, splitting).

use num_traits::{One, Pow, Zero};

use crate::characters::{
    eigen_lattice, values_to_reduced_coords, ClassFunction, EigenLatticeSpec, ReducedCharCoords,
    Sign,
};
use crate::cyclo::CycloElem;
use crate::finab::FinAbGroup;
use crate::lattice::{lattice_preimage, quotient_group, Lattice};
use crate::mat::Mat;
use crate::tables::{c_n, decompose_n, Params};
use crate::{int, rat, Error, Int, QMat, Result};

/// Indices i with 2 <= D + k - 2i <= D, ascending.
pub fn index_set(dd: u32, k: u32) -> Vec<i64> {
    let lo = (k + 1) / 2;
    let hi = (dd + k - 2) / 2;
    (lo as i64..=hi as i64).collect()
}

/// Parity of d + k selects which family of generators carries the rho data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityCase {
    Even,
    Odd,
}

/// The ordered generator list for fixed (d, k): pairs (i, E) with
/// E = d + k - 2i, ascending in i. In the even case E runs over the even
/// numbers in [2, d]; in the odd case over the odd numbers in [1, d].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoBasis {
    pub d: u32,
    pub k: u32,
    pub case: ParityCase,
    pub gens: Vec<(i64, u32)>,
}

pub fn build_basis(d: u32, k: u32) -> RhoBasis {
    assert!(d >= 2);
    let case = if (d + k) % 2 == 0 {
        ParityCase::Even
    } else {
        ParityCase::Odd
    };
    let dd = match case {
        ParityCase::Even => d,
        ParityCase::Odd => d + 2,
    };
    let gens = index_set(dd, k)
        .into_iter()
        .map(|i| (i, (d as i64 + k as i64 - 2 * i) as u32))
        .collect();
    RhoBasis { d, k, case, gens }
}

/// Number of generators: c_N(d, k) + 1 for k even, c_N(d, k) for k odd.
pub fn g_count(d: u32, k: u32) -> usize {
    (c_n(d, k) + u32::from(k % 2 == 0)) as usize
}

/// Values of f^e on the nontrivial N-th roots of unity, where
/// f(t) = (1 + t)/(1 - t) and f^0 is the constant 1.
pub fn f_power_values(n: u32, e: i64) -> Result<ClassFunction> {
    if e < 0 {
        return Err(Error::NegativeExponent(e));
    }
    let pows = f_power_table(n, e as u32);
    Ok(pows.into_iter().last().unwrap())
}

/// f^0, f^1, ..., f^max as class functions on the nontrivial elements.
fn f_power_table(n: u32, max: u32) -> Vec<ClassFunction> {
    assert!(n >= 2);
    let ones: Vec<CycloElem> = (1..n).map(|_| CycloElem::one(n)).collect();
    let f: Vec<CycloElem> = (1..n)
        .map(|j| {
            let zj = CycloElem::zeta_pow(n, j as i64);
            let num = CycloElem::one(n).add(&zj);
            let den = CycloElem::one(n).sub(&zj);
            num.mul(&den.invert().expect("1 - zeta^j is nonzero for j != 0"))
        })
        .collect();
    let mut table = vec![ClassFunction::new(n, ones)];
    for e in 1..=max {
        let prev = table[(e - 1) as usize].values();
        let next: Vec<CycloElem> = prev.iter().zip(&f).map(|(p, fj)| p.mul(fj)).collect();
        table.push(ClassFunction::new(n, next));
    }
    table
}

/// An optional tampering applied to the rho columns before solving, used to
/// demonstrate that the verification checks have teeth.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Multiply the given column by the given integer factor.
    ScaleColumn { index: usize, factor: i64 },
}

/// The rho map for parameters (N, d, k): one column per generator, stored
/// both as a class function and as reduced rational coordinates, together
/// with the scaled eigenspace lattice it is tested against.
#[derive(Clone, Debug)]
pub struct RhoMap {
    pub n: u32,
    pub basis: RhoBasis,
    pub sign: Sign,
    pub value_columns: Vec<ClassFunction>,
    pub columns: Vec<ReducedCharCoords>,
    pub target: EigenLatticeSpec,
}

pub fn rho_columns(n: u32, d: u32, k: u32) -> Result<RhoMap> {
    rho_columns_mutated(n, d, k, None)
}

pub fn rho_columns_mutated(
    n: u32,
    d: u32,
    k: u32,
    mutation: Option<&Mutation>,
) -> Result<RhoMap> {
    let p = Params::new(n, d, k)?;
    let basis = build_basis(d, k);
    let sign = p.sign();
    let max_e = basis.gens.iter().map(|&(_, e)| e).max().unwrap_or(0);
    let pows = f_power_table(n, max_e);
    let eight = rat(8, 1);
    let mut value_columns: Vec<ClassFunction> = basis
        .gens
        .iter()
        .map(|&(_, e)| {
            let col = if e == 1 {
                pows[1].clone()
            } else {
                pows[e as usize].sub(&pows[(e - 2) as usize])
            };
            col.scale(&eight)
        })
        .collect();
    if let Some(Mutation::ScaleColumn { index, factor }) = mutation {
        let f = rat(*factor, 1);
        if let Some(col) = value_columns.get_mut(*index) {
            *col = col.scale(&f);
        }
    }
    let columns = value_columns
        .iter()
        .map(values_to_reduced_coords)
        .collect::<Result<Vec<_>>>()?;
    Ok(RhoMap {
        n,
        basis,
        sign,
        value_columns,
        columns,
        target: eigen_lattice(n, sign, 4),
    })
}

impl RhoMap {
    /// The columns as a rational (N-1) x g matrix in reduced coordinates.
    pub fn coord_matrix(&self) -> QMat {
        let rows = (self.n - 1) as usize;
        let mut a: QMat = Mat::zero(rows, self.columns.len());
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col.coords().iter().enumerate() {
                a[(i, j)] = v.clone();
            }
        }
        a
    }
}

/// The solved rho map: the lattice of integer tuples landing in the target
/// and the finite image group Z^g / lattice.
#[derive(Clone, Debug)]
pub struct KernelImage {
    pub map: RhoMap,
    pub khat: Lattice<Int>,
    pub image: FinAbGroup,
}

pub fn kernel_and_image(n: u32, d: u32, k: u32) -> Result<KernelImage> {
    kernel_and_image_mutated(n, d, k, None)
}

pub fn kernel_and_image_mutated(
    n: u32,
    d: u32,
    k: u32,
    mutation: Option<&Mutation>,
) -> Result<KernelImage> {
    let map = rho_columns_mutated(n, d, k, mutation)?;
    let a = map.coord_matrix();
    let khat = lattice_preimage(&a, &map.target.lattice)?;
    let image = quotient_group(map.columns.len(), &khat);
    Ok(KernelImage { map, khat, image })
}

/// Predicted order of the finite image group in closed form.
pub fn predicted_image_order(n: u32, d: u32, k: u32) -> Int {
    let (k2, m) = decompose_n(n);
    let c = (d - 1) / 2;
    let mut order = int(1);
    if k % 2 == 0 {
        for i in 1..=c_n(d, k) + 1 {
            order *= Int::from(1) << ((k2 - k2.min(2 * i)) as usize);
        }
        order * Int::from(m).pow(c + 1)
    } else {
        for i in 1..=c_n(d, k) {
            order *= Int::from(1) << ((k2 - k2.min(2 * i)) as usize);
        }
        order * Int::from(m).pow(d / 2)
    }
}

fn fail(n: u32, d: u32, k: u32, check: &str, computed: String, expected: String) -> Error {
    Error::VerificationFailure {
        n,
        d,
        k,
        check: check.to_string(),
        computed,
        expected,
    }
}

/// Checks that the solved image is finite, has order equal to the closed-form
/// prediction, and has exponent dividing 2^K at the prime 2.
pub fn verify_factorization(n: u32, d: u32, k: u32, mutation: Option<&Mutation>) -> Result<()> {
    let ki = kernel_and_image_mutated(n, d, k, mutation)?;
    if ki.image.free_rank() != 0 {
        return Err(fail(
            n,
            d,
            k,
            "image finiteness",
            format!("free rank {}", ki.image.free_rank()),
            "free rank 0".to_string(),
        ));
    }
    let order = ki.image.torsion_order();
    let predicted = predicted_image_order(n, d, k);
    if order != predicted {
        return Err(fail(
            n,
            d,
            k,
            "image order",
            order.to_string(),
            predicted.to_string(),
        ));
    }
    let (k2, _) = decompose_n(n);
    let bound = Int::from(1) << (k2 as usize);
    let exp = ki.image.two_exponent();
    if !(&bound % &exp).is_zero() {
        return Err(fail(
            n,
            d,
            k,
            "two-primary exponent",
            exp.to_string(),
            format!("a divisor of {bound}"),
        ));
    }
    Ok(())
}

/// Checks that restriction of class functions from Z/N to Z/U carries the
/// rho columns for N exactly onto the rho columns for U, and that the
/// solution lattice for N is contained in the one for U.
pub fn verify_transfer_compat(n: u32, u: u32, d: u32, k: u32) -> Result<()> {
    if u < 2 || n % u != 0 {
        return Err(Error::NotADivisor { divisor: u, of: n });
    }
    let big = kernel_and_image(n, d, k)?;
    let small = kernel_and_image(u, d, k)?;
    for (j, col) in big.map.value_columns.iter().enumerate() {
        let restricted = col.restrict(u)?;
        if restricted != small.map.value_columns[j] {
            return Err(fail(
                n,
                d,
                k,
                "transfer column",
                format!("column {j} restricted to {u} differs"),
                "restriction equals the directly built column".to_string(),
            ));
        }
    }
    if !small.khat.contains_lattice(&big.khat) {
        return Err(fail(
            n,
            d,
            k,
            "transfer lattice",
            format!("solution lattice for {n} not inside the one for {u}"),
            "containment".to_string(),
        ));
    }
    Ok(())
}

/// Checks that the image for N = 2^K * M splits as the image for 2^K times
/// the image for M: equal 2-primary invariant factors and equal odd orders.
pub fn verify_splitting(n: u32, d: u32, k: u32) -> Result<()> {
    let ki = kernel_and_image(n, d, k)?;
    let (k2, m) = decompose_n(n);
    if k2 >= 1 {
        let two = kernel_and_image(1 << k2, d, k)?;
        if !two.image.odd_order().is_one() {
            return Err(fail(
                n,
                d,
                k,
                "splitting 2-part purity",
                format!("image for {} has odd order {}", 1 << k2, two.image.odd_order()),
                "odd order 1".to_string(),
            ));
        }
        if ki.image.two_primary() != two.image.two_primary() {
            return Err(fail(
                n,
                d,
                k,
                "splitting 2-part",
                format!("{:?}", ki.image.two_primary()),
                format!("{:?}", two.image.two_primary()),
            ));
        }
    } else if !ki.image.two_primary().is_empty() {
        return Err(fail(
            n,
            d,
            k,
            "splitting 2-part",
            format!("{:?}", ki.image.two_primary()),
            "no 2-torsion for odd N".to_string(),
        ));
    }
    if m > 1 {
        let odd = kernel_and_image(m, d, k)?;
        if !odd.image.two_primary().is_empty() {
            return Err(fail(
                n,
                d,
                k,
                "splitting odd purity",
                format!("image for {m} has 2-torsion {:?}", odd.image.two_primary()),
                "none".to_string(),
            ));
        }
        if ki.image.odd_order() != odd.image.torsion_order() {
            return Err(fail(
                n,
                d,
                k,
                "splitting odd part",
                ki.image.odd_order().to_string(),
                odd.image.torsion_order().to_string(),
            ));
        }
    } else if !ki.image.odd_order().is_one() {
        return Err(fail(
            n,
            d,
            k,
            "splitting odd part",
            ki.image.odd_order().to_string(),
            "1".to_string(),
        ));
    }
    Ok(())
}
