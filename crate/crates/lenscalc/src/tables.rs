//! Closed-form emitters: L-groups of cyclic groups, normal-invariant
//! decompositions, the kernel groups of the rho map, and the structure sets
//! of a lens space cross a disk or sphere, together with the counting
//! functions that index their summands.

use num_traits::Pow;

use crate::characters::{reduced_eigenspace_rank, Sign};
use crate::finab::FinAbGroup;
use crate::{int, Error, Int, Result};

/// N = 2^K * M with M odd; returns (K, M).
pub fn decompose_n(n: u32) -> (u32, u32) {
    assert!(n >= 1);
    let mut k = 0;
    let mut m = n;
    while m % 2 == 0 {
        m /= 2;
        k += 1;
    }
    (k, m)
}

fn two_pow(e: u32) -> Int {
    Int::from(1) << (e as usize)
}

/// Number of 2^K-order summands: e - 1 in the case (d, k) = (2e, 2l), else e.
pub fn c_n(d: u32, k: u32) -> u32 {
    let e = d / 2;
    if d % 2 == 0 && k % 2 == 0 {
        e - 1
    } else {
        e
    }
}

/// Number of order-2 summands on the even disk: e in the case (2e+1, 2l),
/// else e - 1.
pub fn c_2(d: u32, k: u32) -> u32 {
    let e = d / 2;
    if d % 2 == 1 && k % 2 == 0 {
        e
    } else {
        e - 1
    }
}

/// Number of order-2 summands on the odd disk: e - 1 in the case (2e, 2l+1),
/// else e.
pub fn c_2_odd(d: u32, k: u32) -> u32 {
    let e = d / 2;
    if d % 2 == 0 && k % 2 == 1 {
        e - 1
    } else {
        e
    }
}

/// Parameter bundle N = 2^K * M, d, k with the derived quantities e = floor(d/2),
/// l = floor(k/2), c = floor((d-1)/2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Params {
    pub n: u32,
    pub k_two: u32,
    pub m_odd: u32,
    pub d: u32,
    pub k: u32,
    pub e: u32,
    pub l: u32,
    pub c: u32,
}

impl Params {
    pub fn new(n: u32, d: u32, k: u32) -> Result<Params> {
        if n < 2 {
            return Err(Error::UnsupportedParams(format!("N = {n} must be at least 2")));
        }
        if d < 2 {
            return Err(Error::UnsupportedParams(format!("d = {d} must be at least 2")));
        }
        let (k_two, m_odd) = decompose_n(n);
        Ok(Params {
            n,
            k_two,
            m_odd,
            d,
            k,
            e: d / 2,
            l: k / 2,
            c: (d - 1) / 2,
        })
    }

    pub fn d_even(&self) -> bool {
        self.d % 2 == 0
    }

    pub fn k_even(&self) -> bool {
        self.k % 2 == 0
    }

    /// Sign (-1)^{d+k} of the eigenspace the rho map lands in.
    pub fn sign(&self) -> Sign {
        Sign::from_parity(self.d + self.k)
    }
}

/// The Wall group L^s_n(Z[Z/N]) by residue of the dimension mod 4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LGroupDescriptor {
    pub dim_mod4: u32,
    /// Free rank of the unreduced L-group.
    pub free_rank: usize,
    /// Arf invariant summand Z/2 in dimensions congruent to 2.
    pub arf: bool,
    /// Codimension-one Arf summand Z/2 in dimensions congruent to 3 (present
    /// exactly when N is even).
    pub codim1_arf: bool,
    /// Free rank of the reduced group (modulo the regular representation),
    /// isomorphic to the scaled sign-eigenspace lattice in even dimensions.
    pub reduced_free_rank: usize,
}

impl LGroupDescriptor {
    /// The unreduced L-group as an abstract group.
    pub fn group(&self) -> FinAbGroup {
        let mut torsion = Vec::new();
        if self.arf {
            torsion.push(int(2));
        }
        if self.codim1_arf {
            torsion.push(int(2));
        }
        FinAbGroup::from_orders(&torsion, self.free_rank)
    }
}

pub fn l_group(n: u32, dim: u32) -> LGroupDescriptor {
    assert!(n >= 2);
    let (k_two, _) = decompose_n(n);
    let even = n % 2 == 0;
    match dim % 4 {
        0 => LGroupDescriptor {
            dim_mod4: 0,
            free_rank: if even { (n / 2 + 1) as usize } else { ((n + 1) / 2) as usize },
            arf: false,
            codim1_arf: false,
            reduced_free_rank: reduced_eigenspace_rank(n, Sign::Plus),
        },
        1 => LGroupDescriptor {
            dim_mod4: 1,
            free_rank: 0,
            arf: false,
            codim1_arf: false,
            reduced_free_rank: 0,
        },
        2 => LGroupDescriptor {
            dim_mod4: 2,
            free_rank: if even { (n / 2 - 1) as usize } else { ((n - 1) / 2) as usize },
            arf: true,
            codim1_arf: false,
            reduced_free_rank: reduced_eigenspace_rank(n, Sign::Minus),
        },
        _ => LGroupDescriptor {
            dim_mod4: 3,
            free_rank: 0,
            arf: false,
            codim1_arf: k_two >= 1,
            reduced_free_rank: 0,
        },
    }
}

/// Summand counts of the normal invariants of L x D^m rel boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalInvariantDescriptor {
    /// Number of infinite cyclic summands.
    pub t_f_rank: usize,
    /// Number of cyclic summands of order 2^K.
    pub t4_count: usize,
    pub t4_order: Int,
    /// Number of order-2 summands.
    pub t2_count: usize,
    /// Declared order of the odd-torsion summand (structure not pinned down).
    pub m_part_order: Int,
    /// Whether the kernel-of-theta reduction has been applied (even disks:
    /// drops one Z/2 exactly when the total dimension is 3 mod 4).
    pub reduced: bool,
}

impl NormalInvariantDescriptor {
    /// The fully-known summands as an abstract group (excludes the odd part,
    /// which is declared by order only).
    pub fn known_group(&self) -> FinAbGroup {
        let mut orders = vec![self.t4_order.clone(); self.t4_count];
        orders.extend(std::iter::repeat(int(2)).take(self.t2_count));
        FinAbGroup::from_orders(&orders, self.t_f_rank)
    }

    /// Order of the full torsion subgroup including the declared odd part.
    pub fn torsion_order(&self) -> Int {
        self.known_group().torsion_order() * self.m_part_order.clone()
    }
}

pub fn normal_invariants(n: u32, d: u32, m: u32, reduced: bool) -> Result<NormalInvariantDescriptor> {
    let k = m / 2;
    let p = Params::new(n, d, k)?;
    if m % 2 == 0 {
        let dim3_mod4 = (d + k) % 2 == 0;
        Ok(NormalInvariantDescriptor {
            t_f_rank: usize::from(k % 2 == 0),
            t4_count: c_n(d, k) as usize,
            t4_order: two_pow(p.k_two),
            t2_count: (c_2(d, k) + u32::from(k % 2 == 1) + u32::from(!reduced && dim3_mod4))
                as usize,
            m_part_order: Int::from(p.m_odd).pow(p.c),
            reduced,
        })
    } else {
        Ok(NormalInvariantDescriptor {
            t_f_rank: usize::from((d + k) % 2 == 0),
            t4_count: 0,
            t4_order: two_pow(p.k_two),
            t2_count: c_2_odd(d, k) as usize,
            m_part_order: int(1),
            reduced,
        })
    }
}

/// Kernel of the rho map on the reduced normal invariants of the even disk,
/// in closed form. For odd N the 2-power summands collapse and the kernel is
/// the free summand (k even) or trivial (k odd).
pub fn kernel_closed_form(n: u32, d: u32, k: u32) -> FinAbGroup {
    let (k_two, _) = decompose_n(n);
    if k_two == 0 {
        return if k % 2 == 0 {
            FinAbGroup::free(1)
        } else {
            FinAbGroup::trivial()
        };
    }
    let mut orders: Vec<Int> = (1..=c_n(d, k))
        .map(|i| two_pow(k_two.min(2 * i)))
        .collect();
    let t2 = c_2(d, k) + u32::from(k % 2 == 1);
    orders.extend(std::iter::repeat(int(2)).take(t2 as usize));
    FinAbGroup::from_orders(&orders, usize::from(k % 2 == 0))
}

/// Kernel of the rho map after quotienting by the free summand, in closed
/// form; independent of the odd part of N. Stated for k even (for k odd no
/// free summand exists and this coincides with `kernel_closed_form`).
pub fn kbar_closed_form(n: u32, d: u32, k: u32) -> FinAbGroup {
    let (k_two, _) = decompose_n(n);
    if k % 2 == 1 {
        return kernel_closed_form(n, d, k);
    }
    if k_two == 0 {
        return FinAbGroup::trivial();
    }
    let mut orders: Vec<Int> = (1..=c_n(d, k) + 1)
        .map(|i| two_pow(k_two.min(2 * i)))
        .collect();
    orders.extend(std::iter::repeat(int(2)).take(c_2(d, k) as usize));
    FinAbGroup::from_orders(&orders, 0)
}

/// Order of the cyclic factor by which the closed-form kernel and its
/// free-quotient differ in the extension bookkeeping (k even, N even).
pub fn kbar_extension_factor(n: u32, d: u32, k: u32) -> Int {
    let (k_two, _) = decompose_n(n);
    two_pow(k_two.min(2 * (c_n(d, k) + 1)))
}

/// The saturation factor X in the order identity
/// |torsion S| * |image| = |torsion reduced normal invariants| * X.
pub fn saturation_factor(n: u32, d: u32, k: u32) -> Int {
    let (k_two, m_odd) = decompose_n(n);
    if k % 2 == 0 {
        two_pow(k_two - k_two.min(2 * (c_n(d, k) + 1))) * Int::from(m_odd)
    } else if d % 2 == 0 {
        Int::from(m_odd)
    } else {
        int(1)
    }
}

/// One of the four even-disk parity cases or the odd-disk case.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseLabel {
    EvenEven,
    EvenOdd,
    OddEven,
    OddOdd,
    OddDisk,
}

impl CaseLabel {
    pub fn text(self) -> &'static str {
        match self {
            CaseLabel::EvenEven => "d = 2e, k = 2l",
            CaseLabel::EvenOdd => "d = 2e, k = 2l+1",
            CaseLabel::OddEven => "d = 2e+1, k = 2l",
            CaseLabel::OddOdd => "d = 2e+1, k = 2l+1",
            CaseLabel::OddDisk => "odd disk (m = 2k+1)",
        }
    }
}

/// Extra non-F summand of the even-disk structure set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extra {
    Z,
    Z2,
    None,
}

/// Labeled decomposition of the structure set of L x D^m rel boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureSetDescriptor {
    pub params: Params,
    pub m: u32,
    pub case: CaseLabel,
    pub f_sign: Option<Sign>,
    pub f_rank: usize,
    pub extra: Extra,
    /// Orders of the 2^K-family torsion summands, one per index i.
    pub t4_orders: Vec<Int>,
    pub t2_count: usize,
    /// For spheres a nontrivial declared odd order; disks have none.
    pub m_part_order: Int,
    /// True when N is odd and the answer is assembled from the odd-order
    /// facts rather than the K >= 1 case table.
    pub derived_mode: bool,
}

impl StructureSetDescriptor {
    /// Canonical merge of all fully-known summands (excludes the odd part).
    pub fn group(&self) -> FinAbGroup {
        let mut orders = self.t4_orders.clone();
        orders.extend(std::iter::repeat(int(2)).take(self.t2_count));
        let mut free = self.f_rank;
        match self.extra {
            Extra::Z => free += 1,
            Extra::Z2 => orders.push(int(2)),
            Extra::None => {}
        }
        FinAbGroup::from_orders(&orders, free)
    }

    pub fn torsion_order(&self) -> Int {
        self.group().torsion_order() * self.m_part_order.clone()
    }
}

/// Structure set of L^{2d-1} x D^m rel boundary. Even disks need m = 2k with
/// k >= 1; odd disks allow any m = 2k+1 >= 1.
pub fn structure_set_disk(n: u32, d: u32, m: u32) -> Result<StructureSetDescriptor> {
    let k = m / 2;
    let p = Params::new(n, d, k)?;
    let derived = p.k_two == 0;
    if m % 2 == 0 {
        if k == 0 {
            return Err(Error::UnsupportedParams(
                "even disk factor needs m = 2k with k >= 1".into(),
            ));
        }
        let case = match (p.d_even(), p.k_even()) {
            (true, true) => CaseLabel::EvenEven,
            (true, false) => CaseLabel::EvenOdd,
            (false, true) => CaseLabel::OddEven,
            (false, false) => CaseLabel::OddOdd,
        };
        let sign = p.sign();
        let extra = if p.k_even() { Extra::Z } else { Extra::Z2 };
        let (t4_orders, t2_count) = if derived {
            (Vec::new(), 0)
        } else {
            (
                (1..=c_n(d, k)).map(|i| two_pow(p.k_two.min(2 * i))).collect(),
                c_2(d, k) as usize,
            )
        };
        Ok(StructureSetDescriptor {
            params: p,
            m,
            case,
            f_sign: Some(sign),
            f_rank: reduced_eigenspace_rank(n, sign),
            extra,
            t4_orders,
            t2_count,
            m_part_order: int(1),
            derived_mode: derived,
        })
    } else {
        Ok(StructureSetDescriptor {
            params: p,
            m,
            case: CaseLabel::OddDisk,
            f_sign: None,
            f_rank: 0,
            extra: Extra::None,
            t4_orders: Vec::new(),
            t2_count: if derived { 0 } else { c_2_odd(d, k) as usize },
            m_part_order: int(1),
            derived_mode: derived,
        })
    }
}

/// Structure set of L^{2d-1} x S^m, split as the disk answer plus the extra
/// torsion of the sphere factor. Needs m = 2k with k >= 2 or m = 2k+1 with
/// k >= 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereSetDescriptor {
    pub disk: StructureSetDescriptor,
    pub t4_count: usize,
    pub t4_order: Int,
    pub t2_count: usize,
    pub m_part_order: Int,
}

impl SphereSetDescriptor {
    pub fn group(&self) -> FinAbGroup {
        let mut orders = vec![self.t4_order.clone(); self.t4_count];
        orders.extend(std::iter::repeat(int(2)).take(self.t2_count));
        self.disk.group().direct_sum(&FinAbGroup::from_orders(&orders, 0))
    }
}

pub fn structure_set_product_sphere(n: u32, d: u32, m: u32) -> Result<SphereSetDescriptor> {
    let k = m / 2;
    if (m % 2 == 0 && k < 2) || (m % 2 == 1 && k < 1) {
        return Err(Error::UnsupportedParams(
            "sphere factor needs m = 2k with k >= 2 or m = 2k+1 with k >= 1".into(),
        ));
    }
    let disk = structure_set_disk(n, d, m)?;
    let p = disk.params;
    let (t4_count, t2_count) = if p.k_two == 0 {
        (0, 0)
    } else {
        (((d - 1) / 2) as usize, (d / 2) as usize)
    };
    Ok(SphereSetDescriptor {
        disk,
        t4_count,
        t4_order: two_pow(p.k_two),
        t2_count,
        m_part_order: Int::from(p.m_odd).pow((d - 1) / 2),
    })
}
