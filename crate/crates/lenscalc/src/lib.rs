//! Exact computation of structure sets of fake lens space products.
//!
//! The library builds the rho-invariant matrix of a lens space cross a disk
//! over the cyclotomic field Q(zeta_N), computes its kernel lattice and image
//! group by integer linear algebra (Smith normal form), and checks the
//! results against closed-form structure-set, L-group, and normal-invariant
//! tables. All arithmetic is exact: arbitrary-precision integers and
//! rationals, no floating point anywhere.

pub mod characters;
pub mod cyclo;
pub mod finab;
pub mod lattice;
pub mod mat;
pub mod rho;
pub mod selftest;
pub mod snf;
pub mod tables;
pub mod verify;

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed};

/// Arbitrary-precision integer used by the concrete API surface.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rat = num_rational::Ratio<Int>;
/// Integer matrix over [`Int`].
pub type IMat = mat::Mat<Int>;
/// Rational matrix over [`Rat`].
pub type QMat = mat::Mat<Rat>;

/// Scalar bound for the generic integer core (Smith forms, lattices,
/// quotient groups). Satisfied by `i64`, `i128`, and `BigInt`.
pub trait IntScalar:
    Integer + Signed + FromPrimitive + Clone + Debug + Display + 'static
{
}

impl<T> IntScalar for T where
    T: Integer + Signed + FromPrimitive + Clone + Debug + Display + 'static
{
}

/// Convenience constructor for [`Int`].
pub fn int(x: i64) -> Int {
    Int::from(x)
}

/// Convenience constructor for [`Rat`] as `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(int(n), int(d))
}

/// Convenience constructor for an integer-valued [`Rat`].
pub fn ratz(n: i64) -> Rat {
    Rat::from_integer(int(n))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("coefficient is not rational: {0}")]
    NonRationalCoefficient(String),
    #[error("{divisor} is not a divisor of {of}")]
    NotADivisor { divisor: u32, of: u32 },
    #[error("unsupported parameters: {0}")]
    UnsupportedParams(String),
    #[error("negative exponent {0}: f(-1) = 0 admits no negative powers")]
    NegativeExponent(i64),
    #[error("verification failure at (N={n}, d={d}, k={k}) [{check}]: computed {computed}, expected {expected}")]
    VerificationFailure {
        n: u32,
        d: u32,
        k: u32,
        check: String,
        computed: String,
        expected: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
