//! Exact arithmetic in cyclotomic fields Q(zeta_N) = Q[x]/(Phi_N), with
//! inversion by the extended Euclidean algorithm and Galois action x -> x^j.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Int, Rat, Result};

/// Euler totient.
pub fn totient(n: u32) -> u32 {
    (1..=n).filter(|&j| j.gcd(&n) == 1).count() as u32
}

/// The N-th cyclotomic polynomial as integer coefficients, constant term
/// first, monic of degree totient(N). Computed by exact division of x^N - 1
/// by all lower Phi_d with d | N.
pub fn cyclotomic_polynomial(n: u32) -> Vec<Int> {
    assert!(n >= 1);
    let mut num = vec![Int::from(0); n as usize + 1];
    num[0] = Int::from(-1);
    num[n as usize] = Int::from(1);
    for d in 1..n {
        if n % d == 0 {
            num = int_poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn int_poly_div_exact(num: &[Int], den: &[Int]) -> Vec<Int> {
    let mut rem: Vec<Int> = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut quot = vec![Int::from(0); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            let t = rem[i - dd + j].clone() - c.clone() * dj.clone();
            rem[i - dd + j] = t;
        }
    }
    assert!(rem.iter().all(Zero::is_zero), "division not exact");
    quot
}

fn phi_rat(n: u32) -> Arc<Vec<Rat>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Rat>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(n)
        .or_insert_with(|| {
            Arc::new(
                cyclotomic_polynomial(n)
                    .into_iter()
                    .map(Rat::from_integer)
                    .collect(),
            )
        })
        .clone()
}

/// An element of Q(zeta_N), stored as a polynomial in zeta_N of degree less
/// than totient(N).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloElem {
    n: u32,
    coeffs: Vec<Rat>,
}

impl CycloElem {
    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    fn degree(n: u32) -> usize {
        totient(n) as usize
    }

    fn from_poly(n: u32, poly: Vec<Rat>) -> Self {
        let reduced = poly_rem(&poly, &phi_rat(n));
        let mut coeffs = reduced;
        coeffs.resize(Self::degree(n), Rat::zero());
        CycloElem { n, coeffs }
    }

    pub fn zero(n: u32) -> Self {
        CycloElem {
            n,
            coeffs: vec![Rat::zero(); Self::degree(n)],
        }
    }

    pub fn one(n: u32) -> Self {
        Self::from_rat(n, Rat::one())
    }

    pub fn from_rat(n: u32, r: Rat) -> Self {
        let mut e = Self::zero(n);
        if Self::degree(n) > 0 {
            e.coeffs[0] = r;
        }
        e
    }

    /// zeta_N^j for any integer j (negative exponents wrap around).
    pub fn zeta_pow(n: u32, j: i64) -> Self {
        let e = j.rem_euclid(n as i64) as usize;
        let mut poly = vec![Rat::zero(); e + 1];
        poly[e] = Rat::one();
        Self::from_poly(n, poly)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &CycloElem) -> CycloElem {
        assert_eq!(self.n, other.n, "conductor mismatch");
        CycloElem {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &CycloElem) -> CycloElem {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycloElem {
        CycloElem {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &CycloElem) -> CycloElem {
        assert_eq!(self.n, other.n, "conductor mismatch");
        Self::from_poly(self.n, poly_mul(&self.coeffs, &other.coeffs))
    }

    pub fn scale(&self, r: &Rat) -> CycloElem {
        CycloElem {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| a * r).collect(),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn invert(&self) -> Option<CycloElem> {
        if self.is_zero() {
            return None;
        }
        let (g, s, _) = poly_ext_gcd(&self.coeffs, &phi_rat(self.n));
        // Phi_N is irreducible over Q, so the gcd with a nonzero residue is a
        // nonzero constant.
        assert_eq!(g.len(), 1, "cyclotomic modulus must be coprime to residue");
        let c = g[0].recip();
        let inv: Vec<Rat> = s.iter().map(|x| x * &c).collect();
        Some(Self::from_poly(self.n, inv))
    }

    /// The Galois automorphism zeta -> zeta^j; j must be coprime to N.
    pub fn galois_apply(&self, j: u32) -> CycloElem {
        assert_eq!(j.gcd(&self.n), 1, "galois exponent must be a unit mod N");
        let mut acc = CycloElem::zero(self.n);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = Self::zeta_pow(self.n, i as i64 * j as i64).scale(c);
            acc = acc.add(&term);
        }
        acc
    }

    /// Extracts the value as a rational number, erring if the element does
    /// not lie in Q.
    pub fn as_rational(&self) -> Result<Rat> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::NonRationalCoefficient(format!(
                "element of Q(zeta_{}) with coefficients {:?}",
                self.n, self.coeffs
            )))
        }
    }
}

fn poly_trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let (a, b) = (poly_trim(a.to_vec()), poly_trim(b.to_vec()));
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Remainder of a modulo b (b nonzero); coefficients constant-first.
fn poly_rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    poly_divmod(a, b).1
}

/// Extended Euclid over Q[x]: returns (g, s, t) with s*a + t*b = g.
fn poly_ext_gcd(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>, Vec<Rat>) {
    let mut r0 = poly_trim(a.to_vec());
    let mut r1 = poly_trim(b.to_vec());
    let mut s0 = vec![Rat::one()];
    let mut s1: Vec<Rat> = Vec::new();
    let mut t0: Vec<Rat> = Vec::new();
    let mut t1 = vec![Rat::one()];
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        let t = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    (r0, s0, t0)
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let len = a.len().max(b.len());
    let mut out = vec![Rat::zero(); len];
    for (i, x) in a.iter().enumerate() {
        out[i] = out[i].clone() + x.clone();
    }
    for (i, y) in b.iter().enumerate() {
        out[i] = out[i].clone() - y.clone();
    }
    poly_trim(out)
}

fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem = poly_trim(a.to_vec());
    let b = poly_trim(b.to_vec());
    assert!(!b.is_empty(), "division by zero polynomial");
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rat::zero(); rem.len() - db];
    while rem.len() > db {
        let i = rem.len() - 1;
        let c = &rem[i] / &lead;
        quot[i - db] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            let idx = i - db + j;
            rem[idx] = &rem[idx] - &(&c * bj);
        }
        rem.truncate(i);
        rem = poly_trim(rem);
    }
    (poly_trim(quot), rem)
}
