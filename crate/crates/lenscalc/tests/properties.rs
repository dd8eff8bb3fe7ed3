//! Property-based tests for the exact algebra substrate and the invariants
//! the computation relies on.

use num_traits::{One, Zero};
use proptest::collection::vec;
use proptest::prelude::*;

use lenscalc::characters::{eigen_lattice, CharClass, Sign, values_to_reduced_coords};
use lenscalc::cyclo::CycloElem;
use lenscalc::finab::FinAbGroup;
use lenscalc::lattice::{lattice_kernel, lattice_preimage, quotient_group, Lattice};
use lenscalc::mat::Mat;
use lenscalc::rho::rho_columns;
use lenscalc::snf::{smith_form_is_valid, snf};
use lenscalc::{int, rat, IMat, Int, QMat};

fn imat(rows: usize, cols: usize, entries: &[i64]) -> IMat {
    let mut a: IMat = Mat::zero(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            a[(i, j)] = int(entries[i * cols + j]);
        }
    }
    a
}

fn qmat(rows: usize, cols: usize, entries: &[(i64, i64)]) -> QMat {
    let mut a: QMat = Mat::zero(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            let (num, den) = entries[i * cols + j];
            a[(i, j)] = rat(num, den.max(1));
        }
    }
    a
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_certificate_holds(
        rows in 1usize..=6,
        cols in 1usize..=6,
        entries in vec(-99i64..=99, 36),
    ) {
        let a = imat(rows, cols, &entries);
        let s = snf(&a);
        prop_assert!(smith_form_is_valid(&a, &s));
    }

    #[test]
    fn kernels_are_saturated(
        rows in 1usize..=4,
        cols in 1usize..=4,
        entries in vec(-9i64..=9, 16),
    ) {
        let a = imat(rows, cols, &entries);
        let ker = lattice_kernel(&a);
        // Annihilation.
        for j in 0..ker.rank() {
            let col: Vec<Int> = (0..cols).map(|i| ker.basis()[(i, j)].clone()).collect();
            let image = a.mul_vec(&col);
            prop_assert!(image.iter().all(|x| x.is_zero()));
        }
        // Saturation: the quotient by a kernel is torsion-free.
        let q = quotient_group(cols, &ker);
        prop_assert!(q.torsion().is_empty());
        prop_assert_eq!(q.free_rank() + ker.rank(), cols);
    }

    #[test]
    fn preimage_respects_scaling(
        rows in 1usize..=3,
        cols in 1usize..=3,
        entries in vec((-6i64..=6, 1i64..=4), 9),
    ) {
        let a = qmat(rows, cols, &entries);
        let l = Lattice::full(rows);
        let coarse = lattice_preimage(&a, &l).unwrap();
        let fine = lattice_preimage(&a, &l.scaled(&int(2))).unwrap();
        // rho(s) in 2L forces rho(s) in L, and rho(2s) = 2 rho(s) in 2L.
        prop_assert!(coarse.contains_lattice(&fine));
        prop_assert!(fine.contains_lattice(&coarse.scaled(&int(2))));
    }

    #[test]
    fn cyclotomic_inverses_and_galois_maps(
        n in prop::sample::select(vec![3u32, 4, 5, 8, 12]),
        nums in vec(-5i64..=5, 4),
        j in 1u32..=11,
    ) {
        let mut x = CycloElem::zero(n);
        for (i, &c) in nums.iter().enumerate() {
            x = x.add(&CycloElem::zeta_pow(n, i as i64).scale(&rat(c, 1)));
        }
        if let Some(inv) = x.invert() {
            prop_assert_eq!(x.mul(&inv), CycloElem::one(n));
        } else {
            prop_assert!(x.is_zero());
        }
        let sigma = 1 + (j % n);
        if num_integer::Integer::gcd(&sigma, &n) == 1 {
            let y = CycloElem::zeta_pow(n, 1).add(&x);
            prop_assert_eq!(
                x.mul(&y).galois_apply(sigma),
                x.galois_apply(sigma).mul(&y.galois_apply(sigma))
            );
            prop_assert_eq!(
                x.add(&y).galois_apply(sigma),
                x.galois_apply(sigma).add(&y.galois_apply(sigma))
            );
        }
    }

    #[test]
    fn invariant_factor_form_is_order_independent(
        orders in vec(1i64..=12, 0..=6),
        rank in 0usize..=2,
    ) {
        let fwd: Vec<Int> = orders.iter().map(|&x| int(x)).collect();
        let rev: Vec<Int> = orders.iter().rev().map(|&x| int(x)).collect();
        let a = FinAbGroup::from_orders(&fwd, rank);
        let b = FinAbGroup::from_orders(&rev, rank);
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(
            a.torsion_order(),
            fwd.iter().cloned().product::<Int>()
        );
        // The chain really is a divisibility chain.
        for w in a.torsion().windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn fourier_coordinates_match_direct_reduction(
        n in prop::sample::select(vec![2u32, 3, 5, 6, 8, 9]),
        coeffs in vec(-7i64..=7, 9),
    ) {
        let cls = CharClass::new(n, (0..n).map(|i| int(coeffs[i as usize % coeffs.len()])).collect());
        let direct = cls.reduced_coords();
        let via_values = values_to_reduced_coords(&cls.values()).unwrap();
        prop_assert_eq!(direct, via_values);
    }

    #[test]
    fn restriction_commutes_with_involution(
        coeffs in vec(-5i64..=5, 12),
        u in prop::sample::select(vec![2u32, 3, 4, 6, 12]),
    ) {
        let cls = CharClass::new(12, coeffs.iter().map(|&x| int(x)).collect());
        let a = cls.involution().restriction(u).unwrap();
        let b = cls.restriction(u).unwrap().involution();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn eigen_lattice_entries_are_scaled(
        n in 2u32..=16,
        scale in 1u32..=6,
    ) {
        for sign in [Sign::Plus, Sign::Minus] {
            let spec = eigen_lattice(n, sign, scale);
            let b = spec.lattice.basis();
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    prop_assert!((&b[(i, j)] % &int(scale as i64)).is_zero());
                }
            }
        }
    }
}

/// Doubling the target scale shrinks the solution lattice by at most 2 in
/// each of the g directions, so the image order grows by at most 2^g.
#[test]
fn image_growth_under_scale_doubling_is_bounded() {
    for (n, d, k) in [(4u32, 3u32, 1u32), (8, 4, 0), (12, 3, 2), (5, 4, 1), (16, 2, 0)] {
        let map = rho_columns(n, d, k).unwrap();
        let a = map.coord_matrix();
        let g = map.columns.len();
        let coarse = lattice_preimage(&a, &map.target.lattice).unwrap();
        let doubled = map.target.lattice.scaled(&int(2));
        let fine = lattice_preimage(&a, &doubled).unwrap();
        assert!(coarse.contains_lattice(&fine), "at ({n},{d},{k})");
        assert!(
            fine.contains_lattice(&coarse.scaled(&int(2))),
            "at ({n},{d},{k})"
        );
        let before = quotient_group(g, &coarse).torsion_order();
        let after = quotient_group(g, &fine).torsion_order();
        let ratio = &after / &before;
        assert!((&after % &before).is_zero(), "at ({n},{d},{k})");
        let bound = Int::from(1) << g;
        assert!((&bound % &ratio).is_zero(), "ratio {ratio} at ({n},{d},{k})");
    }
}

#[test]
fn quotient_groups_detect_known_indices() {
    // Z^2 / <(2,0),(0,3)> = Z/6 after canonicalization.
    let basis = imat(2, 2, &[2, 0, 0, 3]);
    let q = quotient_group(2, &Lattice::new(2, basis));
    assert_eq!(q, FinAbGroup::from_orders(&[int(6)], 0));
    assert!(q.torsion_order() == int(6) && q.free_rank() == 0);
    assert_eq!(FinAbGroup::from_orders(&[int(1)], 0), FinAbGroup::trivial());
    assert!(FinAbGroup::<Int>::trivial().torsion_order().is_one());
}
