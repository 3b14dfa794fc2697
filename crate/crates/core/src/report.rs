//! Run configuration, report records and the json / markdown / csv
//! emitters behind the command-line tool.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{cohomology_table, ComplexError, ComplexKind, GradeComplex, LesNode};
use crate::linalg::{Matrix3, Rational};
use crate::multivector::{MultiVector, MultivectorError};
use crate::poly::{fmt_rational, Bigrade};
use crate::structures::{
    classify_regime, commuting_r_matrix, expected_dim, stabilizer, yang_baxter_check, Family, Structure,
    StructureError, StructureParams,
};

#[derive(Debug, Error)]
pub enum RunError {
    #[error("{0}")]
    Structure(#[from] StructureError),
    #[error("{0}")]
    Complex(#[from] ComplexError),
    #[error("{0}")]
    Multivector(#[from] MultivectorError),
    #[error("cannot read tensor file {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("{0}")]
    Usage(String),
}

impl RunError {
    /// Process exit code: internal inconsistencies count as verification
    /// failures, everything else as configuration errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Complex(_) => 1,
            _ => 2,
        }
    }
}

/// Parses an exact rational such as `3/2`, `-1` or `0`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    let ok = !t.is_empty() && t.chars().all(|c| c.is_ascii_digit() || c == '-' || c == '+' || c == '/');
    if !ok {
        return Err(format!("'{s}' is not an exact rational (use forms like 3/2, -1, 0)"));
    }
    if t.split('/').nth(1).is_some_and(|d| d.trim_start_matches(['+', '-']).chars().all(|c| c == '0')) {
        return Err(format!("'{s}' has a zero denominator"));
    }
    Rational::from_str(t).map_err(|_| format!("'{s}' is not an exact rational (use forms like 3/2, -1, 0)"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Markdown,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RMatrixMode {
    Stabilizer,
    YangBaxter,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Compute,
    Verify,
    LesCheck,
    RMatrix(RMatrixMode),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub structure: StructureParams,
    pub rmax: u32,
    pub complexes: Vec<ComplexKind>,
    pub format: Format,
    pub mode: Mode,
}

/// Loads a custom tensor written in the multivector grammar.
pub fn load_tensor(path: &str) -> Result<MultiVector, RunError> {
    let text = std::fs::read_to_string(path).map_err(|e| RunError::Io { path: path.to_string(), msg: e.to_string() })?;
    Ok(MultiVector::parse_with_degree(text.trim(), 2)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceRecord {
    pub complex: ComplexKind,
    pub d: usize,
    pub k: u32,
    pub r: u32,
    pub dim: usize,
    pub reps: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub complex: ComplexKind,
    pub d: usize,
    pub k: u32,
    pub r: u32,
    pub dim: usize,
    pub expected: usize,
    pub status: Status,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LesRecord {
    pub k: u32,
    pub r: u32,
    pub nodes: Vec<LesNode>,
    pub short_exact: bool,
    pub dirsum: Vec<bool>,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RMatrixRecord {
    pub kind: String,
    /// Stabilizer basis as row-major matrices, or the r-matrix terms.
    pub matrices: Vec<String>,
    pub dim: Option<usize>,
    pub yang_baxter_zero: Option<bool>,
    pub j_identity: Option<bool>,
    pub status: Status,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub structure: String,
    pub tensor: String,
    pub regime: Option<String>,
    pub rmax: u32,
    /// Total dimension per complex and degree.
    pub totals: BTreeMap<String, [usize; 4]>,
    pub checked: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub slices: Vec<SliceRecord>,
    pub verification: Vec<VerificationRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub les: Vec<LesRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rmatrix: Option<RMatrixRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.summary.failures == 0 {
            0
        } else {
            1
        }
    }

    /// `(complex, d, k, r) -> dim` for every slice.
    pub fn dims(&self) -> BTreeMap<(ComplexKind, usize, u32, u32), usize> {
        self.slices.iter().map(|s| ((s.complex, s.d, s.k, s.r), s.dim)).collect()
    }
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn render_matrix(m: &Matrix3) -> String {
    let rows: Vec<String> = (0..3)
        .map(|i| (0..3).map(|j| fmt_rational(m.get(i, j))).collect::<Vec<_>>().join(", "))
        .collect();
    format!("[[{}]]", rows.join("], ["))
}

pub fn run(config: &RunConfig) -> Result<Report, RunError> {
    let structure = Structure::new(config.structure.clone())?;
    let regime = match config.structure.family {
        Family::Custom => None,
        _ => classify_regime(&config.structure).ok(),
    };
    let mut report = Report {
        summary: Summary {
            structure: config.structure.to_string(),
            tensor: structure.tensor.to_string(),
            regime: regime.as_ref().map(ToString::to_string),
            rmax: config.rmax,
            ..Summary::default()
        },
        ..Report::default()
    };
    match config.mode {
        Mode::Compute => fill_slices(&mut report, &structure, config, false)?,
        Mode::Verify => {
            if regime.is_none() {
                // surfaces the precise reason (custom family, diagonal case)
                classify_regime(&config.structure)?;
            }
            fill_slices(&mut report, &structure, config, true)?;
        }
        Mode::LesCheck => {
            let grades = Bigrade::all_up_to(config.rmax);
            let les = grades
                .into_par_iter()
                .map(|g| GradeComplex::new(g, &structure)?.les_check())
                .collect::<Result<Vec<_>, ComplexError>>()?;
            for l in les {
                report.summary.checked += 1;
                if !l.passed() {
                    report.summary.failures += 1;
                }
                report.les.push(LesRecord {
                    k: l.grade.k,
                    r: l.grade.r,
                    status: status(l.passed()),
                    nodes: l.nodes,
                    short_exact: l.short_exact,
                    dirsum: l.dirsum,
                });
            }
        }
        Mode::RMatrix(RMatrixMode::Stabilizer) => {
            let s = stabilizer(&structure.tensor)?;
            let matrices = s.vectors.iter().map(|v| render_matrix(&Matrix3::from_coords(v))).collect();
            report.summary.checked = 1;
            report.rmatrix = Some(RMatrixRecord {
                kind: "stabilizer".into(),
                matrices,
                dim: Some(s.dim()),
                yang_baxter_zero: None,
                j_identity: None,
                status: Status::Pass,
            });
        }
        Mode::RMatrix(RMatrixMode::YangBaxter) => {
            let r = commuting_r_matrix(&structure.admissible);
            let yb = yang_baxter_check(&r)?;
            let ok = yb.is_zero && yb.j_identity_holds;
            let matrices = r
                .terms()
                .map(|(idx, c)| {
                    let names: Vec<String> = idx.iter().map(|p| format!("E{}{}", p / 3 + 1, p % 3 + 1)).collect();
                    format!("{}*{}", fmt_rational(c), names.join("^"))
                })
                .collect();
            report.summary.checked = 1;
            report.summary.failures = (!ok) as usize;
            report.rmatrix = Some(RMatrixRecord {
                kind: "yang-baxter".into(),
                matrices,
                dim: None,
                yang_baxter_zero: Some(yb.is_zero),
                j_identity: Some(yb.j_identity_holds),
                status: status(ok),
            });
        }
    }
    Ok(report)
}

fn fill_slices(report: &mut Report, s: &Structure, config: &RunConfig, verify: bool) -> Result<(), RunError> {
    let mut kinds = config.complexes.clone();
    if verify && !kinds.contains(&ComplexKind::R) {
        kinds.push(ComplexKind::R);
    }
    let table = cohomology_table(s, config.rmax, &kinds)?;
    for h in table {
        let (d, g) = (h.spec.d, h.spec.grade);
        *report.summary.totals.entry(h.spec.complex.to_string()).or_default().get_mut(d).expect("d <= 3") += h.dim;
        if verify && h.spec.complex == ComplexKind::R {
            let expected = expected_dim(&config.structure, d, g)?;
            report.summary.checked += 1;
            if expected != h.dim {
                report.summary.failures += 1;
            }
            report.verification.push(VerificationRecord {
                complex: ComplexKind::R,
                d,
                k: g.k,
                r: g.r,
                dim: h.dim,
                expected,
                status: status(expected == h.dim),
            });
        }
        if config.complexes.contains(&h.spec.complex) {
            report.slices.push(SliceRecord {
                complex: h.spec.complex,
                d,
                k: g.k,
                r: g.r,
                dim: h.dim,
                reps: h.representatives.iter().map(|c| c.render_both(g)).collect(),
            });
        }
    }
    Ok(())
}

pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
        Format::Markdown => emit_markdown(report),
        Format::Csv => emit_csv(report),
    }
}

fn emit_markdown(report: &Report) -> String {
    let s = &report.summary;
    let mut out = String::new();
    let _ = writeln!(out, "# Cohomology of {}\n", s.structure);
    let _ = writeln!(out, "- tensor: `{}`", s.tensor);
    if let Some(r) = &s.regime {
        let _ = writeln!(out, "- regime: {r}");
    }
    let _ = writeln!(out, "- rmax: {}", s.rmax);
    for (c, t) in &s.totals {
        let _ = writeln!(out, "- total dims of H({c}) by degree: {t:?}");
    }
    if s.checked > 0 {
        let _ = writeln!(out, "- checks: {} run, {} failed", s.checked, s.failures);
    }
    let expected: BTreeMap<(usize, u32, u32), &VerificationRecord> =
        report.verification.iter().map(|v| ((v.d, v.k, v.r), v)).collect();
    for d in 0..4 {
        let rows: Vec<&SliceRecord> = report.slices.iter().filter(|x| x.d == d && x.dim > 0).collect();
        let zero = report.slices.iter().filter(|x| x.d == d && x.dim == 0).count();
        if rows.is_empty() && zero == 0 {
            continue;
        }
        let _ = writeln!(out, "\n## d = {d}\n");
        let _ = writeln!(out, "| complex | k | r | dim | expected | status | representatives |");
        let _ = writeln!(out, "|---|---|---|---|---|---|---|");
        for x in rows {
            let v = if x.complex == ComplexKind::R { expected.get(&(x.d, x.k, x.r)) } else { None };
            let (e, st) = v.map_or((String::new(), String::new()), |v| (v.expected.to_string(), format!("{:?}", v.status).to_lowercase()));
            let reps = x.reps.iter().map(|r| format!("`{r}`")).collect::<Vec<_>>().join("<br>");
            let _ = writeln!(out, "| {} | {} | {} | {} | {e} | {st} | {reps} |", x.complex, x.k, x.r, x.dim);
        }
        let _ = writeln!(out, "\n{zero} further slices of degree {d} are zero.");
    }
    let failed: Vec<&VerificationRecord> = report.verification.iter().filter(|v| v.status == Status::Fail).collect();
    if !failed.is_empty() {
        let _ = writeln!(out, "\n## Verification failures\n");
        let _ = writeln!(out, "| d | k | r | computed | expected |");
        let _ = writeln!(out, "|---|---|---|---|---|");
        for v in failed {
            let _ = writeln!(out, "| {} | {} | {} | {} | {} |", v.d, v.k, v.r, v.dim, v.expected);
        }
    }
    if !report.les.is_empty() {
        let _ = writeln!(out, "\n## Long exact sequence\n");
        let _ = writeln!(out, "| k | r | nonzero nodes | status |");
        let _ = writeln!(out, "|---|---|---|---|");
        for l in &report.les {
            let nodes: Vec<String> =
                l.nodes.iter().filter(|n| n.dim > 0).map(|n| format!("{}={}", n.name, n.dim)).collect();
            let _ = writeln!(out, "| {} | {} | {} | {:?} |", l.k, l.r, nodes.join(", "), l.status);
        }
    }
    if let Some(m) = &report.rmatrix {
        let _ = writeln!(out, "\n## {}\n", m.kind);
        if let Some(d) = m.dim {
            let _ = writeln!(out, "- dimension: {d}");
        }
        if let Some(z) = m.yang_baxter_zero {
            let _ = writeln!(out, "- [r,r] = 0: {z}");
        }
        if let Some(j) = m.j_identity {
            let _ = writeln!(out, "- J^3[r,r] = [J^2 r, J^2 r]: {j}");
        }
        for x in &m.matrices {
            let _ = writeln!(out, "- `{x}`");
        }
    }
    out
}

fn emit_csv(report: &Report) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let expected: BTreeMap<(usize, u32, u32), &VerificationRecord> =
        report.verification.iter().map(|v| ((v.d, v.k, v.r), v)).collect();
    let _ = w.write_record(["complex", "d", "k", "r", "dim", "expected", "status", "reps"]);
    for x in &report.slices {
        let v = if x.complex == ComplexKind::R { expected.get(&(x.d, x.k, x.r)) } else { None };
        let (e, st) = v.map_or((String::new(), String::new()), |v| (v.expected.to_string(), format!("{:?}", v.status).to_lowercase()));
        let _ = w.write_record([
            x.complex.to_string(),
            x.d.to_string(),
            x.k.to_string(),
            x.r.to_string(),
            x.dim.to_string(),
            e,
            st,
            x.reps.join("; "),
        ]);
    }
    for l in &report.les {
        let dims: Vec<String> = l.nodes.iter().map(|n| n.dim.to_string()).collect();
        let _ = w.write_record([
            "les".to_string(),
            String::new(),
            l.k.to_string(),
            l.r.to_string(),
            dims.join(" "),
            String::new(),
            format!("{:?}", l.status).to_lowercase(),
            String::new(),
        ]);
    }
    if let Some(m) = &report.rmatrix {
        let _ = w.write_record([
            m.kind.clone(),
            String::new(),
            String::new(),
            String::new(),
            m.dim.map(|d| d.to_string()).unwrap_or_default(),
            String::new(),
            format!("{:?}", m.status).to_lowercase(),
            m.matrices.join("; "),
        ]);
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
}
