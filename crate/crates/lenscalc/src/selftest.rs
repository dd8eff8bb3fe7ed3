//! Randomized self-checks of the exact linear algebra substrate: Smith
//! normal forms on random integer matrices, and lattice preimages
//! cross-validated against brute-force residue enumeration. Seeded, so
//! every run sees the same instances.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::lattice::{lattice_preimage, Lattice};
use crate::mat::Mat;
use crate::snf::{smith_form_is_valid, snf};
use crate::{int, IMat, Int, QMat, Rat};

/// Outcome of a randomized suite: instance count, failure count, and the
/// first failing instance rendered for diagnosis.
#[derive(Clone, Debug, Default)]
pub struct SuiteStats {
    pub instances: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SuiteStats {
    fn record_failure(&mut self, label: String) {
        self.failures += 1;
        if self.first_failure.is_none() {
            self.first_failure = Some(label);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failures == 0
    }
}

/// Random integer matrices up to 6 x 6 with entries in [-99, 99]; checks
/// the full Smith certificate (diagonalization, unimodularity witnesses,
/// divisibility chain).
pub fn snf_random_suite(seed: u64, instances: usize) -> SuiteStats {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = SuiteStats {
        instances,
        ..SuiteStats::default()
    };
    for idx in 0..instances {
        let rows = rng.gen_range(1..=6);
        let cols = rng.gen_range(1..=6);
        let mut a: IMat = Mat::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                a[(i, j)] = int(rng.gen_range(-99..=99));
            }
        }
        let s = snf(&a);
        if !smith_form_is_valid(&a, &s) {
            stats.record_failure(format!("instance {idx}: invalid Smith form for {a:?}"));
        }
    }
    stats
}

/// Random rational maps into a small ambient lattice; compares the computed
/// preimage lattice against direct membership testing of every integer tuple
/// in a box around the origin.
pub fn preimage_random_suite(seed: u64, instances: usize) -> SuiteStats {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = SuiteStats {
        instances,
        ..SuiteStats::default()
    };
    for idx in 0..instances {
        let ambient = rng.gen_range(1..=3);
        let g = rng.gen_range(1..=3);
        let mut a: QMat = Mat::zero(ambient, g);
        for i in 0..ambient {
            for j in 0..g {
                let numer = int(rng.gen_range(-6..=6));
                let denom = int(rng.gen_range(1..=4));
                a[(i, j)] = Rat::new(numer, denom);
            }
        }
        let l = random_finite_index_lattice(&mut rng, ambient);
        let p = match lattice_preimage(&a, &l) {
            Ok(p) => p,
            Err(e) => {
                stats.record_failure(format!("instance {idx}: preimage failed: {e}"));
                continue;
            }
        };
        let l_solver = l.solver();
        let span: i64 = match g {
            1 => 50,
            2 => 8,
            _ => 3,
        };
        let width = 2 * span + 1;
        let total = width.pow(g as u32);
        let mut tuple = vec![int(0); g];
        for code in 0..total {
            let mut c = code;
            for slot in tuple.iter_mut() {
                *slot = int(c % width - span);
                c /= width;
            }
            let qt: Vec<Rat> = tuple.iter().map(|x| Rat::from(x.clone())).collect();
            let image = a.mul_vec(&qt);
            let integral: Option<Vec<Int>> = image
                .iter()
                .map(|r| {
                    if r.is_integer() {
                        Some(r.to_integer())
                    } else {
                        None
                    }
                })
                .collect();
            let direct = integral.map(|v| l_solver.contains(&v)).unwrap_or(false);
            let via_lattice = p.contains(&tuple);
            if direct != via_lattice {
                stats.record_failure(format!(
                    "instance {idx}: tuple {tuple:?} direct={direct} lattice={via_lattice} for {a:?}"
                ));
                break;
            }
        }
    }
    stats
}

/// A full-rank sublattice of Z^ambient with quotient order at most 200.
fn random_finite_index_lattice(rng: &mut ChaCha8Rng, ambient: usize) -> Lattice<Int> {
    for _ in 0..100 {
        let mut b: IMat = Mat::zero(ambient, ambient);
        for i in 0..ambient {
            for j in 0..ambient {
                b[(i, j)] = int(rng.gen_range(-5..=5));
            }
        }
        let s = snf(&b);
        if s.rank() < ambient {
            continue;
        }
        let index: Int = s.diagonal().into_iter().product();
        if index > int(200) {
            continue;
        }
        return Lattice::new(ambient, b);
    }
    Lattice::full(ambient)
}
