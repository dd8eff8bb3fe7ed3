//! Output documents: JSON/text/Markdown renderings of computed objects,
//! the verification report, and the parameter-grid tables.

use serde::{Deserialize, Serialize};

use lenscalc::finab::FinAbGroup;
use lenscalc::rho::{kernel_and_image, ParityCase};
use lenscalc::tables::{
    decompose_n, kernel_closed_form, l_group, normal_invariants, structure_set_disk,
    structure_set_product_sphere, CaseLabel, Extra, SphereSetDescriptor, StructureSetDescriptor,
};
use lenscalc::verify::{CheckResult, SweepSpec};
use lenscalc::{Error, Int, Result};

pub const SCHEMA_VERSION: &str = "1";

pub fn tool_version() -> String {
    env!("CARGO_PKG_VERSION").to_string()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ParamsDoc {
    #[serde(rename = "N")]
    pub n: u32,
    #[serde(rename = "K")]
    pub k_two: u32,
    #[serde(rename = "M")]
    pub m_odd: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(rename = "n", skip_serializing_if = "Option::is_none")]
    pub dim: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced: Option<bool>,
}

impl ParamsDoc {
    fn new(n: u32) -> Self {
        let (k_two, m_odd) = decompose_n(n);
        ParamsDoc {
            n,
            k_two,
            m_odd,
            d: None,
            m: None,
            k: None,
            dim: None,
            reduced: None,
        }
    }
}

/// The document emitted by `compute`: the canonical decomposition of the
/// requested group plus a declared-order-only odd part where the structure
/// is not pinned down.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComputeDoc {
    pub schema_version: String,
    pub tool_version: String,
    pub kind: String,
    pub params: ParamsDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case_label: Option<String>,
    pub free_rank: usize,
    pub invariant_factors: Vec<String>,
    pub declared_odd_order: String,
    pub notes: Vec<String>,
}

fn factor_strings(g: &FinAbGroup) -> Vec<String> {
    g.torsion().iter().map(|t| t.to_string()).collect()
}

fn doc(kind: &str, params: ParamsDoc, group: &FinAbGroup, odd: &Int) -> ComputeDoc {
    ComputeDoc {
        schema_version: SCHEMA_VERSION.to_string(),
        tool_version: tool_version(),
        kind: kind.to_string(),
        params,
        case_label: None,
        free_rank: group.free_rank(),
        invariant_factors: factor_strings(group),
        declared_odd_order: odd.to_string(),
        notes: Vec::new(),
    }
}

fn disk_notes(s: &StructureSetDescriptor) -> Vec<String> {
    let mut notes = Vec::new();
    if let Some(sign) = s.f_sign {
        notes.push(format!(
            "free summand F{} of rank {}",
            sign.label(),
            s.f_rank
        ));
    }
    match s.extra {
        Extra::Z => notes.push("extra infinite cyclic summand from the simply-connected surgery obstruction".to_string()),
        Extra::Z2 => notes.push("extra order-2 summand from the simply-connected surgery obstruction".to_string()),
        Extra::None => {}
    }
    if s.derived_mode {
        notes.push("N odd: assembled from the odd-order splitting, no 2-torsion".to_string());
    }
    notes
}

pub fn compute_structure_set_disk(n: u32, d: u32, m: u32) -> Result<ComputeDoc> {
    let s = structure_set_disk(n, d, m)?;
    let group = s.group();
    let mut params = ParamsDoc::new(n);
    params.d = Some(d);
    params.m = Some(m);
    params.k = Some(m / 2);
    let mut out = doc("structure-set-disk", params, &group, &s.m_part_order);
    out.case_label = Some(s.case.text().to_string());
    out.notes = disk_notes(&s);
    Ok(out)
}

pub fn compute_structure_set_sphere(n: u32, d: u32, m: u32) -> Result<ComputeDoc> {
    let s = structure_set_product_sphere(n, d, m)?;
    let group = s.group();
    let mut params = ParamsDoc::new(n);
    params.d = Some(d);
    params.m = Some(m);
    params.k = Some(m / 2);
    let mut out = doc("structure-set-sphere", params, &group, &s.m_part_order);
    out.case_label = Some(s.disk.case.text().to_string());
    out.notes = disk_notes(&s.disk);
    if s.t4_count > 0 || s.t2_count > 0 {
        out.notes.push(format!(
            "sphere factor adds {} summands of order {} and {} of order 2",
            s.t4_count, s.t4_order, s.t2_count
        ));
    }
    if !odd_is_trivial(&s.m_part_order) {
        out.notes
            .push("odd part declared by order only".to_string());
    }
    Ok(out)
}

fn odd_is_trivial(x: &Int) -> bool {
    *x == lenscalc::int(1)
}

pub fn compute_l_group(n: u32, dim: u32) -> Result<ComputeDoc> {
    if n < 2 {
        return Err(Error::UnsupportedParams(format!("N = {n} must be at least 2")));
    }
    let l = l_group(n, dim);
    let group = l.group();
    let mut params = ParamsDoc::new(n);
    params.dim = Some(dim);
    let mut out = doc("l-group", params, &group, &lenscalc::int(1));
    out.case_label = Some(format!("dimension {} mod 4", l.dim_mod4));
    out.notes.push(format!(
        "reduced free rank {} (modulo the regular representation)",
        l.reduced_free_rank
    ));
    if l.arf {
        out.notes.push("contains the Arf invariant Z/2".to_string());
    }
    if l.codim1_arf {
        out.notes
            .push("contains the codimension-one Arf summand Z/2".to_string());
    }
    Ok(out)
}

pub fn compute_normal_invariants(n: u32, d: u32, m: u32, reduced: bool) -> Result<ComputeDoc> {
    let ni = normal_invariants(n, d, m, reduced)?;
    let group = ni.known_group();
    let mut params = ParamsDoc::new(n);
    params.d = Some(d);
    params.m = Some(m);
    params.reduced = Some(reduced);
    let mut out = doc("normal-invariants", params, &group, &ni.m_part_order);
    if reduced && m % 2 == 0 {
        out.notes
            .push("reduced by the kernel of the surgery obstruction map".to_string());
    }
    if !odd_is_trivial(&ni.m_part_order) {
        out.notes
            .push("odd part declared by order only".to_string());
    }
    Ok(out)
}

pub fn compute_rho_image(n: u32, d: u32, k: u32) -> Result<ComputeDoc> {
    let ki = kernel_and_image(n, d, k)?;
    let mut params = ParamsDoc::new(n);
    params.d = Some(d);
    params.k = Some(k);
    let odd = ki.image.odd_order();
    let mut out = doc("rho-image", params, &ki.image, &odd);
    let case = match ki.map.basis.case {
        ParityCase::Even => "d + k even: columns 8(f^E - f^{E-2}), E even",
        ParityCase::Odd => "d + k odd: columns 8(f^E - f^{E-2}) and 8f, E odd",
    };
    out.case_label = Some(case.to_string());
    out.notes.push(format!(
        "{} generators, image in the {} eigenspace lattice at scale 4",
        ki.map.columns.len(),
        ki.map.sign.label()
    ));
    out.notes
        .push("odd part computed exactly; order repeated in declared_odd_order".to_string());
    Ok(out)
}

pub fn compute_kernel_closed_form(n: u32, d: u32, k: u32) -> Result<ComputeDoc> {
    if n < 2 || d < 2 {
        return Err(Error::UnsupportedParams(format!(
            "need N >= 2 and d >= 2, got N = {n}, d = {d}"
        )));
    }
    let g = kernel_closed_form(n, d, k);
    let mut params = ParamsDoc::new(n);
    params.d = Some(d);
    params.k = Some(k);
    let mut out = doc("kernel-closed-form", params, &g, &lenscalc::int(1));
    if params_odd(n) {
        out.notes
            .push("N odd: derived from the odd-order splitting".to_string());
    }
    Ok(out)
}

fn params_odd(n: u32) -> bool {
    n % 2 == 1
}

/// Reassembles the group a document describes, for text rendering.
fn doc_group(docu: &ComputeDoc) -> FinAbGroup {
    let orders: Vec<Int> = docu
        .invariant_factors
        .iter()
        .map(|s| s.parse::<Int>().expect("invariant factors are integers"))
        .collect();
    FinAbGroup::from_diagonal(&orders, docu.free_rank)
}

pub fn render_compute_text(docu: &ComputeDoc) -> String {
    let mut lines = Vec::new();
    let p = &docu.params;
    let mut head = format!("{} N={} (K={}, M={})", docu.kind, p.n, p.k_two, p.m_odd);
    if let Some(d) = p.d {
        head.push_str(&format!(" d={d}"));
    }
    if let Some(m) = p.m {
        head.push_str(&format!(" m={m}"));
    }
    if let Some(k) = p.k {
        head.push_str(&format!(" k={k}"));
    }
    if let Some(dim) = p.dim {
        head.push_str(&format!(" n={dim}"));
    }
    lines.push(head);
    if let Some(case) = &docu.case_label {
        lines.push(format!("case: {case}"));
    }
    lines.push(format!("group: {}", doc_group(docu)));
    if docu.declared_odd_order != "1" {
        lines.push(format!(
            "odd part of order {} (structure not pinned down)",
            docu.declared_odd_order
        ));
    }
    for note in &docu.notes {
        lines.push(format!("note: {note}"));
    }
    lines.join("\n") + "\n"
}

pub fn render_compute_md(docu: &ComputeDoc) -> String {
    let mut out = String::new();
    let p = &docu.params;
    out.push_str(&format!("### {} (N = {}", docu.kind, p.n));
    if let Some(d) = p.d {
        out.push_str(&format!(", d = {d}"));
    }
    if let Some(m) = p.m {
        out.push_str(&format!(", m = {m}"));
    }
    if let Some(dim) = p.dim {
        out.push_str(&format!(", n = {dim}"));
    }
    out.push_str(")\n\n");
    if let Some(case) = &docu.case_label {
        out.push_str(&format!("- case: {case}\n"));
    }
    out.push_str(&format!("- group: {}\n", doc_group(docu)));
    out.push_str(&format!(
        "- invariant factors: {}\n",
        if docu.invariant_factors.is_empty() {
            "(none)".to_string()
        } else {
            docu.invariant_factors.join(", ")
        }
    ));
    out.push_str(&format!("- declared odd order: {}\n", docu.declared_odd_order));
    for note in &docu.notes {
        out.push_str(&format!("- note: {note}\n"));
    }
    out
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepDoc {
    #[serde(rename = "N_list")]
    pub n_list: Vec<u32>,
    pub d_range: [u32; 2],
    pub k_range: [u32; 2],
    pub suites: Vec<String>,
    pub mutation: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResultDoc {
    pub suite: String,
    #[serde(rename = "N")]
    pub n: Option<u32>,
    #[serde(rename = "U", skip_serializing_if = "Option::is_none")]
    pub u: Option<u32>,
    pub d: Option<u32>,
    pub k: Option<u32>,
    pub pass: bool,
    pub computed: String,
    pub expected: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SummaryDoc {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportDoc {
    pub schema_version: String,
    pub tool_version: String,
    pub sweep: SweepDoc,
    pub summary: SummaryDoc,
    pub results: Vec<ResultDoc>,
}

pub fn report_doc(spec: &SweepSpec, results: &[CheckResult]) -> ReportDoc {
    let passed = results.iter().filter(|r| r.pass).count();
    ReportDoc {
        schema_version: SCHEMA_VERSION.to_string(),
        tool_version: tool_version(),
        sweep: SweepDoc {
            n_list: spec.n_list.clone(),
            d_range: [spec.d_range.0, spec.d_range.1],
            k_range: [spec.k_range.0, spec.k_range.1],
            suites: spec.suites.iter().map(|s| s.name().to_string()).collect(),
            mutation: spec.mutation.map(|_| "scale-column".to_string()),
        },
        summary: SummaryDoc {
            total: results.len(),
            passed,
            failed: results.len() - passed,
        },
        results: results
            .iter()
            .map(|r| ResultDoc {
                suite: r.suite.name().to_string(),
                n: r.n,
                u: r.u,
                d: r.d,
                k: r.k,
                pass: r.pass,
                computed: r.computed.clone(),
                expected: r.expected.clone(),
            })
            .collect(),
    }
}

/// Which grid a table reproduces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    MainTheorem,
    SphereCorollary,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableRow {
    #[serde(rename = "N")]
    pub n: u32,
    #[serde(rename = "K")]
    pub k_two: u32,
    #[serde(rename = "M")]
    pub m_odd: u32,
    pub d: u32,
    pub m: u32,
    pub case: String,
    pub free_rank: usize,
    pub invariant_factors: Vec<String>,
    pub odd_order: String,
    pub summands: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableDoc {
    pub schema_version: String,
    pub tool_version: String,
    pub which: String,
    pub rows: Vec<TableRow>,
}

fn superscript(x: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    x.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

fn sign_superscript(sign: lenscalc::characters::Sign) -> &'static str {
    match sign {
        lenscalc::characters::Sign::Plus => "⁺",
        lenscalc::characters::Sign::Minus => "⁻",
    }
}

/// Renders the labeled summands of a disk descriptor in the style
/// "F⁻=Z¹; Z/2; Z/4⊕Z/4; Z/2".
fn disk_summands(s: &StructureSetDescriptor) -> Vec<String> {
    let mut parts = Vec::new();
    if let Some(sign) = s.f_sign {
        let f = if s.f_rank == 0 {
            format!("F{}=0", sign_superscript(sign))
        } else {
            format!("F{}=Z{}", sign_superscript(sign), superscript(s.f_rank))
        };
        parts.push(f);
    }
    match s.extra {
        Extra::Z => parts.push("Z".to_string()),
        Extra::Z2 => parts.push("Z/2".to_string()),
        Extra::None => {}
    }
    if !s.t4_orders.is_empty() {
        parts.push(
            s.t4_orders
                .iter()
                .map(|t| format!("Z/{t}"))
                .collect::<Vec<_>>()
                .join("⊕"),
        );
    }
    if s.t2_count > 0 {
        parts.push(vec!["Z/2"; s.t2_count].join("⊕"));
    }
    if parts.is_empty() {
        parts.push("0".to_string());
    }
    parts
}

fn sphere_summands(s: &SphereSetDescriptor) -> Vec<String> {
    let mut parts = disk_summands(&s.disk);
    if parts == ["0"] {
        parts.clear();
    }
    if s.t4_count > 0 {
        parts.push(
            vec![format!("Z/{}", s.t4_order); s.t4_count].join("⊕"),
        );
    }
    if s.t2_count > 0 {
        parts.push(vec!["Z/2"; s.t2_count].join("⊕"));
    }
    if parts.is_empty() {
        parts.push("0".to_string());
    }
    parts
}

pub fn table_rows(
    kind: TableKind,
    n_list: &[u32],
    d_range: (u32, u32),
    m_range: (u32, u32),
) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for &n in n_list {
        let (k_two, m_odd) = decompose_n(n);
        for d in d_range.0..=d_range.1 {
            for m in m_range.0..=m_range.1 {
                let row = match kind {
                    TableKind::MainTheorem => {
                        if m % 2 != 0 || m < 2 {
                            continue;
                        }
                        let s = structure_set_disk(n, d, m)?;
                        let group = s.group();
                        TableRow {
                            n,
                            k_two,
                            m_odd,
                            d,
                            m,
                            case: s.case.text().to_string(),
                            free_rank: group.free_rank(),
                            invariant_factors: factor_strings(&group),
                            odd_order: s.m_part_order.to_string(),
                            summands: disk_summands(&s).join("; "),
                        }
                    }
                    TableKind::SphereCorollary => {
                        if (m % 2 == 0 && m < 4) || m < 3 {
                            continue;
                        }
                        let s = structure_set_product_sphere(n, d, m)?;
                        let group = s.group();
                        TableRow {
                            n,
                            k_two,
                            m_odd,
                            d,
                            m,
                            case: s.disk.case.text().to_string(),
                            free_rank: group.free_rank(),
                            invariant_factors: factor_strings(&group),
                            odd_order: s.m_part_order.to_string(),
                            summands: sphere_summands(&s).join("; "),
                        }
                    }
                };
                rows.push(row);
            }
        }
    }
    Ok(rows)
}

pub fn table_doc(kind: TableKind, rows: Vec<TableRow>) -> TableDoc {
    TableDoc {
        schema_version: SCHEMA_VERSION.to_string(),
        tool_version: tool_version(),
        which: match kind {
            TableKind::MainTheorem => "main-theorem",
            TableKind::SphereCorollary => "sphere-corollary",
        }
        .to_string(),
        rows,
    }
}

pub fn render_table_csv(rows: &[TableRow]) -> String {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record([
        "N",
        "K",
        "M",
        "d",
        "m",
        "case",
        "free_rank",
        "invariant_factors",
        "odd_order",
    ])
    .expect("csv header");
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.k_two.to_string(),
            r.m_odd.to_string(),
            r.d.to_string(),
            r.m.to_string(),
            r.case.clone(),
            r.free_rank.to_string(),
            r.invariant_factors.join(","),
            r.odd_order.clone(),
        ])
        .expect("csv row");
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("csv utf8")
}

pub fn render_table_md(kind: TableKind, rows: &[TableRow]) -> String {
    let title = match kind {
        TableKind::MainTheorem => "Structure sets of L x D^m (rel boundary)",
        TableKind::SphereCorollary => "Structure sets of L x S^m",
    };
    let mut out = format!("# {title}\n");
    let case_order = [
        CaseLabel::EvenEven,
        CaseLabel::EvenOdd,
        CaseLabel::OddEven,
        CaseLabel::OddOdd,
        CaseLabel::OddDisk,
    ];
    for case in case_order {
        let section: Vec<&TableRow> = rows
            .iter()
            .filter(|r| r.case == case.text())
            .collect();
        if section.is_empty() {
            continue;
        }
        out.push_str(&format!("\n## {}\n\n", case.text()));
        out.push_str("| N | K | M | d | m | summands | odd order |\n");
        out.push_str("|---|---|---|---|---|----------|-----------|\n");
        for r in section {
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} | {} |\n",
                r.n, r.k_two, r.m_odd, r.d, r.m, r.summands, r.odd_order
            ));
        }
    }
    out
}
