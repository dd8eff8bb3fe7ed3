//! lenscalc: exact structure-set computations for lens space products.
//!
//! Subcommands: `compute` emits one closed-form or solved object as
//! JSON/text/Markdown, `verify` runs the verification sweeps, `table` emits
//! parameter-grid tables as JSON/CSV/Markdown. All output is deterministic:
//! identical invocations produce byte-identical documents.

mod docs;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use lenscalc::rho::Mutation;
use lenscalc::verify::{run_item, sort_results, work_items, CheckResult, Suite, SweepSpec};
use lenscalc::{Error, Result};

#[derive(Parser)]
#[command(
    name = "lenscalc",
    version,
    about = "Exact structure sets of lens space products via rho-invariant lattices"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute one object and emit a document.
    Compute(ComputeArgs),
    /// Run verification sweeps over a parameter grid.
    Verify(VerifyArgs),
    /// Emit a table of structure-set descriptors over a parameter grid.
    Table(TableArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ComputeKind {
    StructureSetDisk,
    StructureSetSphere,
    LGroup,
    NormalInvariants,
    RhoImage,
    KernelClosedForm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DocFormat {
    Json,
    Text,
    Md,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
    Md,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableWhich {
    MainTheorem,
    SphereCorollary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MutateKind {
    ScaleColumn,
}

#[derive(Args)]
struct ComputeArgs {
    /// What to compute.
    #[arg(value_enum)]
    kind: ComputeKind,
    /// Order of the cyclic fundamental group.
    #[arg(long = "N")]
    modulus: u32,
    /// Half-dimension parameter of the lens space L^{2d-1}.
    #[arg(long)]
    d: Option<u32>,
    /// Dimension of the disk or sphere factor.
    #[arg(long)]
    m: Option<u32>,
    /// Index parameter (rho-image and kernel-closed-form only).
    #[arg(long)]
    k: Option<u32>,
    /// Dimension of the L-group (l-group only).
    #[arg(long = "n")]
    dim: Option<u32>,
    /// Apply the surgery-obstruction reduction (normal-invariants only).
    #[arg(long)]
    reduced: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: DocFormat,
    /// Write the document to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated moduli to sweep.
    #[arg(long = "N-list", value_delimiter = ',')]
    n_list: Option<Vec<u32>>,
    #[arg(long, default_value_t = 2)]
    d_min: u32,
    #[arg(long, default_value_t = 8)]
    d_max: u32,
    #[arg(long, default_value_t = 0)]
    k_min: u32,
    #[arg(long, default_value_t = 4)]
    k_max: u32,
    /// Comma-separated suites to run (default: all).
    #[arg(long, value_delimiter = ',')]
    suites: Option<Vec<String>>,
    /// Inject a fault into the rho columns to prove the checks have teeth.
    #[arg(long, value_enum)]
    mutate: Option<MutateKind>,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    #[arg(value_enum)]
    which: TableWhich,
    #[arg(long, value_enum, default_value = "json")]
    format: TableFormat,
    /// Comma-separated moduli.
    #[arg(long = "N-list", value_delimiter = ',')]
    n_list: Option<Vec<u32>>,
    #[arg(long, default_value_t = 2)]
    d_min: u32,
    #[arg(long, default_value_t = 5)]
    d_max: u32,
    #[arg(long, default_value_t = 2)]
    m_min: u32,
    #[arg(long, default_value_t = 6)]
    m_max: u32,
    /// Write the table to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Compute(args) => cmd_compute(&args),
        Cmd::Verify(args) => cmd_verify(&args),
        Cmd::Table(args) => cmd_table(&args),
    };
    match code {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|e| Error::UnsupportedParams(format!("cannot write to stdout: {e}")))
        }
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::UnsupportedParams(format!("cannot write {}: {e}", path.display()))),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable document");
    s.push('\n');
    s
}

fn require(opt: Option<u32>, flag: &str, kind: &str) -> Result<u32> {
    opt.ok_or_else(|| Error::UnsupportedParams(format!("{kind} requires --{flag}")))
}

fn reject(opt: Option<u32>, flag: &str, kind: &str) -> Result<()> {
    if opt.is_some() {
        return Err(Error::UnsupportedParams(format!(
            "{kind} does not take --{flag}"
        )));
    }
    Ok(())
}

fn cmd_compute(args: &ComputeArgs) -> Result<ExitCode> {
    let n = args.modulus;
    let doc = match args.kind {
        ComputeKind::StructureSetDisk => {
            let d = require(args.d, "d", "structure-set-disk")?;
            let m = require(args.m, "m", "structure-set-disk")?;
            reject(args.k, "k", "structure-set-disk (m = 2k or 2k+1 is ambiguous)")?;
            docs::compute_structure_set_disk(n, d, m)?
        }
        ComputeKind::StructureSetSphere => {
            let d = require(args.d, "d", "structure-set-sphere")?;
            let m = require(args.m, "m", "structure-set-sphere")?;
            reject(args.k, "k", "structure-set-sphere (m = 2k or 2k+1 is ambiguous)")?;
            docs::compute_structure_set_sphere(n, d, m)?
        }
        ComputeKind::LGroup => {
            let dim = require(args.dim, "n", "l-group")?;
            docs::compute_l_group(n, dim)?
        }
        ComputeKind::NormalInvariants => {
            let d = require(args.d, "d", "normal-invariants")?;
            let m = require(args.m, "m", "normal-invariants")?;
            docs::compute_normal_invariants(n, d, m, args.reduced)?
        }
        ComputeKind::RhoImage => {
            let d = require(args.d, "d", "rho-image")?;
            let k = require(args.k, "k", "rho-image")?;
            reject(args.m, "m", "rho-image")?;
            docs::compute_rho_image(n, d, k)?
        }
        ComputeKind::KernelClosedForm => {
            let d = require(args.d, "d", "kernel-closed-form")?;
            let k = require(args.k, "k", "kernel-closed-form")?;
            reject(args.m, "m", "kernel-closed-form")?;
            docs::compute_kernel_closed_form(n, d, k)?
        }
    };
    let content = match args.format {
        DocFormat::Json => to_json(&doc),
        DocFormat::Text => docs::render_compute_text(&doc),
        DocFormat::Md => docs::render_compute_md(&doc),
    };
    emit(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn build_sweep_spec(args: &VerifyArgs) -> Result<SweepSpec> {
    let mut spec = SweepSpec::default();
    if let Some(n_list) = &args.n_list {
        spec.n_list = n_list.clone();
    }
    spec.d_range = (args.d_min, args.d_max);
    spec.k_range = (args.k_min, args.k_max);
    if let Some(names) = &args.suites {
        let mut suites = Vec::new();
        for name in names.iter().filter(|s| !s.is_empty()) {
            match Suite::parse(name) {
                Some(s) => suites.push(s),
                None => {
                    return Err(Error::UnsupportedParams(format!("unknown suite '{name}'")))
                }
            }
        }
        spec.suites = suites;
    }
    spec.mutation = args.mutate.map(|MutateKind::ScaleColumn| Mutation::ScaleColumn {
        index: 0,
        factor: 2,
    });
    spec.validate()?;
    Ok(spec)
}

/// Caps the worker pool at LENSCALC_THREADS if set.
fn configure_threads() {
    if let Ok(v) = std::env::var("LENSCALC_THREADS") {
        if let Ok(threads) = v.parse::<usize>() {
            if threads >= 1 {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global()
                    .ok();
            }
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode> {
    let spec = build_sweep_spec(args)?;
    configure_threads();
    let items = work_items(&spec);
    let mutation = spec.mutation;
    let mut results: Vec<CheckResult> = items
        .par_iter()
        .flat_map_iter(|item| run_item(item, mutation.as_ref()))
        .collect();
    sort_results(&mut results);
    let report = docs::report_doc(&spec, &results);
    emit(&args.out, &to_json(&report))?;
    if report.summary.failed == 0 {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn cmd_table(args: &TableArgs) -> Result<ExitCode> {
    let kind = match args.which {
        TableWhich::MainTheorem => docs::TableKind::MainTheorem,
        TableWhich::SphereCorollary => docs::TableKind::SphereCorollary,
    };
    let n_list = args
        .n_list
        .clone()
        .unwrap_or_else(|| lenscalc::verify::DEFAULT_N_LIST.to_vec());
    if n_list.is_empty() {
        return Err(Error::UnsupportedParams("empty N list".into()));
    }
    if args.d_min < 2 || args.d_min > args.d_max {
        return Err(Error::UnsupportedParams(format!(
            "invalid d range [{}, {}]",
            args.d_min, args.d_max
        )));
    }
    if args.m_min > args.m_max {
        return Err(Error::UnsupportedParams(format!(
            "invalid m range [{}, {}]",
            args.m_min, args.m_max
        )));
    }
    let rows = docs::table_rows(
        kind,
        &n_list,
        (args.d_min, args.d_max),
        (args.m_min, args.m_max),
    )?;
    let content = match args.format {
        TableFormat::Json => to_json(&docs::table_doc(kind, rows)),
        TableFormat::Csv => docs::render_table_csv(&rows),
        TableFormat::Md => docs::render_table_md(kind, &rows),
    };
    emit(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}
