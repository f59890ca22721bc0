//! Versioned JSON schemas for graphs, groups, bases, signals, families,
//! frames, and reports.
//!
//! Every file is a JSON object with `"version": "1"` and a `"kind"` tag;
//! unknown fields are rejected, and each object passes its module's
//! validators before being returned. Complex numbers are `[re, im]` pairs
//! of IEEE-754 doubles, written in the shortest form that parses back to
//! the identical bits, so `load(store(x))` is exact.
//!
//! Signals may also be read from a bare JSON array of `[re, im]` pairs.

use std::fs;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::{FamilyKind, Frame, TranslationFamily};
use crate::graphs::Graph;
use crate::group::{GroupData, Irrep, IrrepSet};
use crate::spectral::{Eigenbasis, Provenance, Signal};

const SCHEMA_VERSION: &str = "1";

/// A complex number on disk: `[re, im]`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct CxPair(pub f64, pub f64);

impl From<Complex64> for CxPair {
    fn from(z: Complex64) -> Self {
        CxPair(z.re, z.im)
    }
}

impl From<CxPair> for Complex64 {
    fn from(p: CxPair) -> Self {
        Complex64::new(p.0, p.1)
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    version: String,
    kind: String,
    n: usize,
    directed: bool,
    edges: Vec<(usize, usize)>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IrrepFile {
    name: String,
    degree: usize,
    /// Element-indexed list of `d × d` row-major matrices.
    matrices: Vec<Vec<Vec<CxPair>>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    version: String,
    kind: String,
    n: usize,
    table: Vec<Vec<usize>>,
    irreps: Vec<IrrepFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisFile {
    version: String,
    kind: String,
    n: usize,
    /// Column-major: `columns[j]` is the basis vector `φ_{j+1}`.
    columns: Vec<Vec<CxPair>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eigenvalues: Option<Vec<f64>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SignalFile {
    version: String,
    kind: String,
    entries: Vec<CxPair>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyFile {
    version: String,
    kind: String,
    n: usize,
    s: usize,
    family_kind: String,
    /// `s` operators, each an `n × n` row-major matrix. May be omitted in
    /// multiplier-only files; the operators are then rebuilt from a basis.
    #[serde(skip_serializing_if = "Option::is_none")]
    operators: Option<Vec<Vec<Vec<CxPair>>>>,
    /// Multiplier columns `f_1, …, f_s`, present on multiplier-built kinds.
    #[serde(skip_serializing_if = "Option::is_none")]
    multipliers: Option<Vec<Vec<CxPair>>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FrameFile {
    version: String,
    kind: String,
    n: usize,
    s: usize,
    /// Flat layout marker; always `"l-outer"` (ℓ outer, m inner).
    order: String,
    vectors: Vec<Vec<CxPair>>,
}

/// Machine-readable bounds report, the `report` file kind.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct BoundsReport {
    pub version: String,
    pub kind: String,
    pub report_kind: String,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub condition: Option<f64>,
    pub is_frame: bool,
    pub tight: bool,
    pub v: Vec<f64>,
    pub argmin: usize,
    pub argmax: usize,
}

impl BoundsReport {
    pub fn from_bounds(bounds: &crate::frames::FrameBounds) -> Self {
        BoundsReport {
            version: SCHEMA_VERSION.to_string(),
            kind: "report".to_string(),
            report_kind: "frame-bounds".to_string(),
            a: bounds.lower,
            b: bounds.upper,
            condition: bounds.is_frame.then(|| bounds.condition_number()),
            is_frame: bounds.is_frame,
            tight: bounds.is_tight(),
            v: bounds.v.iter().copied().collect(),
            argmin: bounds.argmin,
            argmax: bounds.argmax,
        }
    }
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn parse<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        if e.is_syntax() || e.is_eof() {
            Error::Parse {
                path: path.display().to_string(),
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            }
        } else {
            Error::Schema {
                path: path.display().to_string(),
                message: e.to_string(),
            }
        }
    })
}

fn check_header(path: &Path, version: &str, kind: &str, expected_kind: &str) -> Result<()> {
    if version != SCHEMA_VERSION {
        return Err(Error::Schema {
            path: path.display().to_string(),
            message: format!("unsupported schema version {version:?}, expected \"1\""),
        });
    }
    if kind != expected_kind {
        return Err(Error::Schema {
            path: path.display().to_string(),
            message: format!("kind {kind:?} does not match expected {expected_kind:?}"),
        });
    }
    Ok(())
}

fn validator_err(path: &Path, source: Error) -> Error {
    Error::Validator {
        path: path.display().to_string(),
        source: Box::new(source),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    out.push('\n');
    out
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let file: GraphFile = parse(path, &read_file(path)?)?;
    check_header(path, &file.version, &file.kind, "graph")?;
    let graph = Graph::new(file.n, file.edges, file.directed)
        .map_err(|e| validator_err(path, e))?;
    Ok(graph)
}

pub fn store_graph(graph: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let file = GraphFile {
        version: SCHEMA_VERSION.to_string(),
        kind: "graph".to_string(),
        n: graph.vertex_count(),
        directed: graph.is_directed(),
        edges: graph.edges().to_vec(),
    };
    write_file(path.as_ref(), &to_json(&file))
}

pub fn load_group(path: impl AsRef<Path>) -> Result<(GroupData, IrrepSet)> {
    let path = path.as_ref();
    let file: GroupFile = parse(path, &read_file(path)?)?;
    check_header(path, &file.version, &file.kind, "group")?;
    if file.table.len() != file.n {
        return Err(Error::Schema {
            path: path.display().to_string(),
            message: format!("table has {} rows, declared n = {}", file.table.len(), file.n),
        });
    }
    let group = GroupData::new(file.table).map_err(|e| validator_err(path, e))?;
    let mut irreps = Vec::with_capacity(file.irreps.len());
    for irrep in file.irreps {
        if irrep.matrices.len() != file.n {
            return Err(Error::Schema {
                path: path.display().to_string(),
                message: format!(
                    "irrep {:?} has {} matrices, expected one per element ({})",
                    irrep.name,
                    irrep.matrices.len(),
                    file.n
                ),
            });
        }
        let d = irrep.degree;
        let mut matrices = Vec::with_capacity(file.n);
        for (g, rows) in irrep.matrices.iter().enumerate() {
            if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                return Err(Error::Schema {
                    path: path.display().to_string(),
                    message: format!(
                        "irrep {:?}, element {}: matrix is not {d} x {d}",
                        irrep.name,
                        g + 1
                    ),
                });
            }
            matrices.push(DMatrix::from_fn(d, d, |i, j| Complex64::from(rows[i][j])));
        }
        irreps.push(Irrep::new(irrep.name, d, matrices));
    }
    let set = IrrepSet::new(irreps);
    let report = crate::group::validate_irrep_set(&group, &set);
    if !report.pass {
        return Err(validator_err(
            path,
            Error::InvalidIrrepSet(format!(
                "homomorphism defect {:.3e}, unitarity defect {:.3e}, schur defect {:.3e}, complete: {}",
                report.max_homomorphism_defect,
                report.max_unitarity_defect,
                report.max_schur_defect,
                report.completeness
            )),
        ));
    }
    Ok((group, set))
}

pub fn store_group(group: &GroupData, set: &IrrepSet, path: impl AsRef<Path>) -> Result<()> {
    let file = GroupFile {
        version: SCHEMA_VERSION.to_string(),
        kind: "group".to_string(),
        n: group.order(),
        table: group.table().to_vec(),
        irreps: set
            .irreps()
            .iter()
            .map(|irrep| IrrepFile {
                name: irrep.name.clone(),
                degree: irrep.degree,
                matrices: irrep
                    .matrices()
                    .iter()
                    .map(|m| {
                        (0..irrep.degree)
                            .map(|i| (0..irrep.degree).map(|j| m[(i, j)].into()).collect())
                            .collect()
                    })
                    .collect(),
            })
            .collect(),
    };
    write_file(path.as_ref(), &to_json(&file))
}

pub fn load_basis(path: impl AsRef<Path>) -> Result<Eigenbasis> {
    load_basis_scaled(path, 1.0)
}

/// [`load_basis`] with the orthonormality tolerance scaled by `tol_scale`.
pub fn load_basis_scaled(path: impl AsRef<Path>, tol_scale: f64) -> Result<Eigenbasis> {
    let path = path.as_ref();
    let file: BasisFile = parse(path, &read_file(path)?)?;
    check_header(path, &file.version, &file.kind, "basis")?;
    if file.columns.len() != file.n || file.columns.iter().any(|c| c.len() != file.n) {
        return Err(Error::Schema {
            path: path.display().to_string(),
            message: format!("columns do not form an {0} x {0} matrix", file.n),
        });
    }
    let matrix = DMatrix::from_fn(file.n, file.n, |i, j| Complex64::from(file.columns[j][i]));
    Eigenbasis::new_scaled(matrix, file.eigenvalues, Provenance::UserSupplied, tol_scale)
        .map_err(|e| validator_err(path, e))
}

pub fn store_basis(basis: &Eigenbasis, path: impl AsRef<Path>) -> Result<()> {
    let n = basis.dim();
    let file = BasisFile {
        version: SCHEMA_VERSION.to_string(),
        kind: "basis".to_string(),
        n,
        columns: (0..n)
            .map(|j| (0..n).map(|i| basis.matrix()[(i, j)].into()).collect())
            .collect(),
        eigenvalues: basis.eigenvalues().map(|v| v.to_vec()),
    };
    write_file(path.as_ref(), &to_json(&file))
}

pub fn load_signal(path: impl AsRef<Path>) -> Result<Signal> {
    let path = path.as_ref();
    let text = read_file(path)?;
    // Accept the bare-array form as well as the versioned object.
    let entries = if text.trim_start().starts_with('[') {
        let pairs: Vec<CxPair> = parse(path, &text)?;
        pairs
    } else {
        let file: SignalFile = parse(path, &text)?;
        check_header(path, &file.version, &file.kind, "signal")?;
        file.entries
    };
    Signal::new(entries.into_iter().map(Complex64::from).collect())
        .map_err(|e| validator_err(path, e))
}

pub fn store_signal(signal: &Signal, path: impl AsRef<Path>) -> Result<()> {
    let file = SignalFile {
        version: SCHEMA_VERSION.to_string(),
        kind: "signal".to_string(),
        entries: signal.entries().iter().map(|&z| z.into()).collect(),
    };
    write_file(path.as_ref(), &to_json(&file))
}

fn family_kind_tag(kind: FamilyKind) -> &'static str {
    match kind {
        FamilyKind::Generic => "generic",
        FamilyKind::FourierMultiplier => "fourier-multiplier",
        FamilyKind::Shuman => "shuman",
        FamilyKind::GaviliShift => "gavili-shift",
    }
}

fn family_kind_from_tag(path: &Path, tag: &str) -> Result<FamilyKind> {
    match tag {
        "generic" => Ok(FamilyKind::Generic),
        "fourier-multiplier" => Ok(FamilyKind::FourierMultiplier),
        "shuman" => Ok(FamilyKind::Shuman),
        "gavili-shift" => Ok(FamilyKind::GaviliShift),
        other => Err(Error::Schema {
            path: path.display().to_string(),
            message: format!("unknown family kind {other:?}"),
        }),
    }
}

pub fn load_family(path: impl AsRef<Path>) -> Result<TranslationFamily> {
    let path = path.as_ref();
    let file: FamilyFile = parse(path, &read_file(path)?)?;
    check_header(path, &file.version, &file.kind, "family")?;
    let kind = family_kind_from_tag(path, &file.family_kind)?;
    let n = file.n;
    let raw_ops = file.operators.as_ref().ok_or_else(|| Error::Schema {
        path: path.display().to_string(),
        message: "family file has no operators; use it as a multiplier file with a basis".into(),
    })?;
    if raw_ops.len() != file.s {
        return Err(Error::Schema {
            path: path.display().to_string(),
            message: format!("{} operators, declared s = {}", raw_ops.len(), file.s),
        });
    }
    let mut operators = Vec::with_capacity(file.s);
    for (i, rows) in raw_ops.iter().enumerate() {
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Schema {
                path: path.display().to_string(),
                message: format!("operator {} is not {n} x {n}", i + 1),
            });
        }
        operators.push(DMatrix::from_fn(n, n, |r, c| Complex64::from(rows[r][c])));
    }
    let multipliers = match file.multipliers {
        Some(cols) => Some(multiplier_matrix(path, n, file.s, &cols)?),
        None => None,
    };
    TranslationFamily::from_parts(operators, kind, multipliers)
        .map_err(|e| validator_err(path, e))
}

fn multiplier_matrix(
    path: &Path,
    n: usize,
    s: usize,
    cols: &[Vec<CxPair>],
) -> Result<DMatrix<Complex64>> {
    if cols.len() != s || cols.iter().any(|c| c.len() != n) {
        return Err(Error::Schema {
            path: path.display().to_string(),
            message: "multiplier columns do not match n x s".to_string(),
        });
    }
    Ok(DMatrix::from_fn(n, s, |r, c| Complex64::from(cols[c][r])))
}

/// Reads just the `N × S` multiplier matrix from a family file (the
/// operators, if present, are ignored; callers rebuild them from a basis).
pub fn load_multiplier_matrix(path: impl AsRef<Path>) -> Result<DMatrix<Complex64>> {
    let path = path.as_ref();
    let file: FamilyFile = parse(path, &read_file(path)?)?;
    check_header(path, &file.version, &file.kind, "family")?;
    let cols = file.multipliers.as_ref().ok_or_else(|| Error::Schema {
        path: path.display().to_string(),
        message: "family file has no multipliers".into(),
    })?;
    multiplier_matrix(path, file.n, file.s, cols)
}

pub fn store_family(family: &TranslationFamily, path: impl AsRef<Path>) -> Result<()> {
    let n = family.dim();
    let file = FamilyFile {
        version: SCHEMA_VERSION.to_string(),
        kind: "family".to_string(),
        n,
        s: family.len(),
        family_kind: family_kind_tag(family.kind()).to_string(),
        operators: Some(
            family
                .operators()
                .iter()
                .map(|op| {
                    (0..n)
                        .map(|r| (0..n).map(|c| op[(r, c)].into()).collect())
                        .collect()
                })
                .collect(),
        ),
        multipliers: family.multipliers().map(|f| {
            (0..f.ncols())
                .map(|j| (0..f.nrows()).map(|i| f[(i, j)].into()).collect())
                .collect()
        }),
    };
    write_file(path.as_ref(), &to_json(&file))
}

pub fn load_frame(path: impl AsRef<Path>) -> Result<Frame> {
    let path = path.as_ref();
    let file: FrameFile = parse(path, &read_file(path)?)?;
    check_header(path, &file.version, &file.kind, "frame")?;
    if file.order != "l-outer" {
        return Err(Error::Schema {
            path: path.display().to_string(),
            message: format!("unsupported flat order {:?}", file.order),
        });
    }
    let vectors = file
        .vectors
        .iter()
        .map(|v| DVector::from_iterator(v.len(), v.iter().map(|&p| Complex64::from(p))))
        .collect();
    Frame::from_vectors(file.n, file.s, vectors).map_err(|e| validator_err(path, e))
}

pub fn store_frame(frame: &Frame, path: impl AsRef<Path>) -> Result<()> {
    let file = FrameFile {
        version: SCHEMA_VERSION.to_string(),
        kind: "frame".to_string(),
        n: frame.dim(),
        s: frame.family_len(),
        order: "l-outer".to_string(),
        vectors: frame
            .vectors()
            .iter()
            .map(|v| v.iter().map(|&z| z.into()).collect())
            .collect(),
    };
    write_file(path.as_ref(), &to_json(&file))
}

pub fn load_bounds_report(path: impl AsRef<Path>) -> Result<BoundsReport> {
    let path = path.as_ref();
    let report: BoundsReport = parse(path, &read_file(path)?)?;
    check_header(path, &report.version, &report.kind, "report")?;
    Ok(report)
}

pub fn store_bounds_report(report: &BoundsReport, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &to_json(report))
}

/// A generating set file: a bare JSON list of 1-based element indices.
pub fn load_generating_set(path: impl AsRef<Path>) -> Result<Vec<usize>> {
    let path = path.as_ref();
    let gens: Vec<usize> = parse(path, &read_file(path)?)?;
    Ok(gens)
}

pub fn store_generating_set(gens: &[usize], path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &to_json(&gens.to_vec()))
}
