//! Verification sweeps over the parameter grid. The sweep is described as a
//! list of independent work items so a runner can execute them in any order
//! (or in parallel); results are merged and sorted into a deterministic
//! report order keyed by (N, d, k, suite).

use crate::characters::{reduced_eigenspace_rank, Sign};
use crate::finab::FinAbGroup;
use crate::rho::{
    predicted_image_order, rho_columns, verify_factorization, verify_splitting,
    verify_transfer_compat, Mutation,
};
use crate::selftest::{preimage_random_suite, snf_random_suite, SuiteStats};
use crate::tables::{
    kbar_closed_form, kbar_extension_factor, kernel_closed_form, normal_invariants,
    saturation_factor, structure_set_disk, structure_set_product_sphere,
};
use crate::{Error, Result};

pub const DEFAULT_N_LIST: &[u32] = &[2, 3, 4, 5, 6, 7, 8, 9, 12, 16];
pub const DEFAULT_D_RANGE: (u32, u32) = (2, 8);
pub const DEFAULT_K_RANGE: (u32, u32) = (0, 4);

pub const SNF_SUITE_SEED: u64 = 0x5eed_51f7;
pub const SNF_SUITE_INSTANCES: usize = 1000;
pub const PREIMAGE_SUITE_SEED: u64 = 0x5eed_9121;
pub const PREIMAGE_SUITE_INSTANCES: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Eigenspace,
    Rationality,
    Transfer,
    Factorization,
    Splitting,
    ClosedFormRegression,
    SnfProperties,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Eigenspace,
        Suite::Rationality,
        Suite::Transfer,
        Suite::Factorization,
        Suite::Splitting,
        Suite::ClosedFormRegression,
        Suite::SnfProperties,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Eigenspace => "eigenspace",
            Suite::Rationality => "rationality",
            Suite::Transfer => "transfer",
            Suite::Factorization => "factorization",
            Suite::Splitting => "splitting",
            Suite::ClosedFormRegression => "closed-form-regression",
            Suite::SnfProperties => "snf-properties",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.iter().copied().find(|x| x.name() == s)
    }
}

/// What to sweep: moduli, ranges for d and k, suites to run, and an
/// optional fault injection applied to the factorization suite.
#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub n_list: Vec<u32>,
    pub d_range: (u32, u32),
    pub k_range: (u32, u32),
    pub suites: Vec<Suite>,
    pub mutation: Option<Mutation>,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            n_list: DEFAULT_N_LIST.to_vec(),
            d_range: DEFAULT_D_RANGE,
            k_range: DEFAULT_K_RANGE,
            suites: Suite::ALL.to_vec(),
            mutation: None,
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.suites.is_empty() {
            return Err(Error::UnsupportedParams("no suites selected".into()));
        }
        if self.n_list.is_empty() {
            return Err(Error::UnsupportedParams("empty N list".into()));
        }
        if let Some(&n) = self.n_list.iter().find(|&&n| n < 2) {
            return Err(Error::UnsupportedParams(format!("N = {n} must be at least 2")));
        }
        if self.d_range.0 < 2 {
            return Err(Error::UnsupportedParams(format!(
                "d range starts at {}, must be at least 2",
                self.d_range.0
            )));
        }
        if self.d_range.0 > self.d_range.1 {
            return Err(Error::UnsupportedParams("empty d range".into()));
        }
        if self.k_range.0 > self.k_range.1 {
            return Err(Error::UnsupportedParams("empty k range".into()));
        }
        Ok(())
    }
}

/// One record of the merged report.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub suite: Suite,
    pub n: Option<u32>,
    pub u: Option<u32>,
    pub d: Option<u32>,
    pub k: Option<u32>,
    pub pass: bool,
    pub computed: String,
    pub expected: String,
}

impl CheckResult {
    fn tuple(suite: Suite, n: u32, d: u32, k: u32) -> Self {
        CheckResult {
            suite,
            n: Some(n),
            u: None,
            d: Some(d),
            k: Some(k),
            pass: true,
            computed: String::new(),
            expected: String::new(),
        }
    }

    fn set(mut self, pass: bool, computed: String, expected: String) -> Self {
        self.pass = pass;
        self.computed = computed;
        self.expected = expected;
        self
    }

    fn from_outcome(self, outcome: Result<()>, ok_note: &str) -> Self {
        match outcome {
            Ok(()) => self.set(true, ok_note.to_string(), ok_note.to_string()),
            Err(Error::VerificationFailure {
                check,
                computed,
                expected,
                ..
            }) => self.set(false, format!("{check}: {computed}"), expected),
            Err(e) => self.set(false, e.to_string(), ok_note.to_string()),
        }
    }
}

/// An independently executable unit of the sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WorkItem {
    Tuple { suite: Suite, n: u32, d: u32, k: u32 },
    Transfer { n: u32, u: u32, d: u32, k: u32 },
    Aggregate { suite: Suite },
}

pub fn work_items(spec: &SweepSpec) -> Vec<WorkItem> {
    let mut items = Vec::new();
    let tuples = |items: &mut Vec<WorkItem>, suite: Suite| {
        for &n in &spec.n_list {
            for d in spec.d_range.0..=spec.d_range.1 {
                for k in spec.k_range.0..=spec.k_range.1 {
                    items.push(WorkItem::Tuple { suite, n, d, k });
                }
            }
        }
    };
    for &suite in &spec.suites {
        match suite {
            Suite::Transfer => {
                for &n in &spec.n_list {
                    for &u in &spec.n_list {
                        if u >= 2 && u < n && n % u == 0 {
                            for d in spec.d_range.0..=spec.d_range.1 {
                                for k in spec.k_range.0..=spec.k_range.1 {
                                    items.push(WorkItem::Transfer { n, u, d, k });
                                }
                            }
                        }
                    }
                }
            }
            Suite::SnfProperties => items.push(WorkItem::Aggregate { suite }),
            _ => tuples(&mut items, suite),
        }
    }
    items
}

pub fn run_item(item: &WorkItem, mutation: Option<&Mutation>) -> Vec<CheckResult> {
    match *item {
        WorkItem::Tuple { suite, n, d, k } => vec![run_tuple(suite, n, d, k, mutation)],
        WorkItem::Transfer { n, u, d, k } => {
            let base = CheckResult {
                u: Some(u),
                ..CheckResult::tuple(Suite::Transfer, n, d, k)
            };
            vec![base.from_outcome(
                verify_transfer_compat(n, u, d, k),
                "columns restrict exactly; solution lattice contained",
            )]
        }
        WorkItem::Aggregate { .. } => {
            let snf_stats = snf_random_suite(SNF_SUITE_SEED, SNF_SUITE_INSTANCES);
            let pre_stats = preimage_random_suite(PREIMAGE_SUITE_SEED, PREIMAGE_SUITE_INSTANCES);
            let render = |label: &str, s: &SuiteStats| CheckResult {
                suite: Suite::SnfProperties,
                n: None,
                u: None,
                d: None,
                k: None,
                pass: s.all_passed(),
                computed: match &s.first_failure {
                    None => format!("{label}: {} instances clean", s.instances),
                    Some(f) => format!("{label}: {} failures, first: {f}", s.failures),
                },
                expected: format!("{label}: 0 failures"),
            };
            vec![
                render("smith-normal-form", &snf_stats),
                render("lattice-preimage", &pre_stats),
            ]
        }
    }
}

fn run_tuple(suite: Suite, n: u32, d: u32, k: u32, mutation: Option<&Mutation>) -> CheckResult {
    let base = CheckResult::tuple(suite, n, d, k);
    match suite {
        Suite::Eigenspace => match rho_columns(n, d, k) {
            Ok(map) => {
                let bad = map
                    .columns
                    .iter()
                    .position(|col| !col.has_symmetry(map.sign));
                match bad {
                    None => {
                        let note = format!(
                            "all {} columns in the {} eigenspace",
                            map.columns.len(),
                            map.sign.label()
                        );
                        base.set(true, note.clone(), note)
                    }
                    Some(j) => base.set(
                        false,
                        format!("column {j} breaks the {} symmetry", map.sign.label()),
                        "all columns symmetric".to_string(),
                    ),
                }
            }
            Err(e) => base.set(false, e.to_string(), "columns constructible".to_string()),
        },
        Suite::Rationality => match rho_columns(n, d, k) {
            Ok(map) => {
                let bad = map
                    .value_columns
                    .iter()
                    .position(|col| !col.is_equivariant());
                match bad {
                    None => {
                        let note = "all columns rational and Galois-equivariant".to_string();
                        base.set(true, note.clone(), note)
                    }
                    Some(j) => base.set(
                        false,
                        format!("column {j} is not Galois-equivariant"),
                        "equivariant columns".to_string(),
                    ),
                }
            }
            Err(e) => base.set(false, e.to_string(), "rational reduced coordinates".to_string()),
        },
        Suite::Factorization => {
            let predicted = predicted_image_order(n, d, k);
            base.from_outcome(
                verify_factorization(n, d, k, mutation),
                &format!("finite image of order {predicted}, exponent within 2-adic bound"),
            )
        }
        Suite::Splitting => base.from_outcome(
            verify_splitting(n, d, k),
            "image splits into its 2-primary and odd parts",
        ),
        Suite::ClosedFormRegression => closed_form_regression(n, d, k, base),
        Suite::Transfer | Suite::SnfProperties => unreachable!("handled as dedicated work items"),
    }
}

/// Cross-checks between the closed-form tables: torsion-order consistency of
/// the structure set against the predicted image, the free-rank identity,
/// the kernel/quotient bookkeeping, and sphere assembly.
fn closed_form_regression(n: u32, d: u32, k: u32, base: CheckResult) -> CheckResult {
    let run = || -> Result<Option<(String, String)>> {
        if k >= 1 {
            let disk = structure_set_disk(n, d, 2 * k)?;
            let lhs = disk.torsion_order() * predicted_image_order(n, d, k);
            let rhs = normal_invariants(n, d, 2 * k, true)?.torsion_order()
                * saturation_factor(n, d, k);
            if lhs != rhs {
                return Ok(Some((
                    format!("torsion-order balance {lhs} vs {rhs}"),
                    "equal products".to_string(),
                )));
            }
            let sign = Sign::from_parity(d + k);
            let want = reduced_eigenspace_rank(n, sign) + usize::from(k % 2 == 0);
            let got = disk.group().free_rank();
            if got != want {
                return Ok(Some((
                    format!("disk free rank {got}"),
                    format!("eigenspace rank bookkeeping {want}"),
                )));
            }
        }
        if k % 2 == 0 {
            let kernel = kernel_closed_form(n, d, k);
            let mut orders = kernel.torsion().to_vec();
            orders.push(kbar_extension_factor(n, d, k));
            let assembled = FinAbGroup::from_orders(&orders, 0);
            let kbar = kbar_closed_form(n, d, k);
            if assembled != kbar {
                return Ok(Some((
                    format!("kernel/quotient bookkeeping {assembled}"),
                    format!("{kbar}"),
                )));
            }
        } else if kbar_closed_form(n, d, k) != kernel_closed_form(n, d, k) {
            return Ok(Some((
                "free-quotient differs from kernel for k odd".to_string(),
                "equal groups".to_string(),
            )));
        }
        if k >= 2 {
            let sphere = structure_set_product_sphere(n, d, 2 * k)?;
            let mut extra = vec![sphere.t4_order.clone(); sphere.t4_count];
            extra.extend(std::iter::repeat(crate::int(2)).take(sphere.t2_count));
            let assembled = sphere
                .disk
                .group()
                .direct_sum(&FinAbGroup::from_orders(&extra, 0));
            if assembled != sphere.group() {
                return Ok(Some((
                    format!("sphere assembly {assembled}"),
                    format!("{}", sphere.group()),
                )));
            }
        }
        Ok(None)
    };
    match run() {
        Ok(None) => {
            let note = "closed-form identities hold".to_string();
            base.set(true, note.clone(), note)
        }
        Ok(Some((computed, expected))) => base.set(false, computed, expected),
        Err(e) => base.set(false, e.to_string(), "closed forms constructible".to_string()),
    }
}

/// Runs the whole sweep sequentially and returns the sorted report.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<CheckResult>> {
    spec.validate()?;
    let mut results: Vec<CheckResult> = work_items(spec)
        .iter()
        .flat_map(|item| run_item(item, spec.mutation.as_ref()))
        .collect();
    sort_results(&mut results);
    Ok(results)
}

/// Deterministic report order: aggregates first, then by (N, d, k, suite, U).
pub fn sort_results(results: &mut [CheckResult]) {
    results.sort_by_key(|r| {
        (
            r.n.unwrap_or(0),
            r.d.unwrap_or(0),
            r.k.unwrap_or(0),
            r.suite,
            r.u.unwrap_or(0),
            r.expected.clone(),
        )
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::parse(s.name()), Some(s));
        }
        assert_eq!(Suite::parse("bogus"), None);
    }

    #[test]
    fn default_spec_item_count() {
        let spec = SweepSpec::default();
        let items = work_items(&spec);
        // 5 per-tuple suites x 350 tuples, 13 divisor pairs x 35 (d,k) cells,
        // and one aggregate item.
        assert_eq!(items.len(), 5 * 350 + 13 * 35 + 1);
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let mut spec = SweepSpec::default();
        spec.suites.clear();
        assert!(spec.validate().is_err());

        let mut spec = SweepSpec::default();
        spec.d_range = (1, 4);
        assert!(spec.validate().is_err());

        let mut spec = SweepSpec::default();
        spec.n_list = vec![];
        assert!(spec.validate().is_err());

        let mut spec = SweepSpec::default();
        spec.k_range = (3, 1);
        assert!(spec.validate().is_err());
    }

    #[test]
    fn small_sweep_passes_and_is_deterministic() {
        let spec = SweepSpec {
            n_list: vec![3, 4, 6],
            d_range: (2, 3),
            k_range: (0, 1),
            suites: vec![
                Suite::Eigenspace,
                Suite::Factorization,
                Suite::Transfer,
                Suite::ClosedFormRegression,
            ],
            mutation: None,
        };
        let a = run_sweep(&spec).unwrap();
        assert!(a.iter().all(|r| r.pass), "{:?}", a.iter().find(|r| !r.pass));
        let b = run_sweep(&spec).unwrap();
        let render = |rs: &[CheckResult]| {
            rs.iter()
                .map(|r| format!("{r:?}"))
                .collect::<Vec<_>>()
                .join("\n")
        };
        assert_eq!(render(&a), render(&b));
        // The only divisor pair inside {3, 4, 6} is (6, 3), over 4 (d, k) cells.
        let transfers = a.iter().filter(|r| r.suite == Suite::Transfer).count();
        assert_eq!(transfers, 4);
    }

    #[test]
    fn mutation_surfaces_as_failures() {
        let spec = SweepSpec {
            n_list: vec![16],
            d_range: (2, 2),
            k_range: (0, 0),
            suites: vec![Suite::Factorization],
            mutation: Some(Mutation::ScaleColumn { index: 0, factor: 2 }),
        };
        let results = run_sweep(&spec).unwrap();
        assert_eq!(results.len(), 1);
        assert!(!results[0].pass);
        assert!(results[0].computed.contains("image order"));
    }

    #[test]
    fn snf_properties_item_reports_two_results() {
        let results = run_item(
            &WorkItem::Aggregate {
                suite: Suite::SnfProperties,
            },
            None,
        );
        assert_eq!(results.len(), 2);
    }
}
