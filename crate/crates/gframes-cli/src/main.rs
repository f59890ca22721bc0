//! Batch command-line frontend for the gframes library.
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage error, 3 numeric
//! failure. Machine-readable JSON goes to stdout (and `--report` when
//! given); human-readable summaries go to stderr. Reports carry no
//! timestamps, so identical inputs produce byte-identical output.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gframes::io::{self, BoundsReport};
use gframes::{frames, graphs, group, spectral, Error};

mod verify;

#[derive(Parser)]
#[command(
    name = "gframes",
    about = "Gabor-type frames for graph signals: eigenbases, Cayley graphs, sharp frame bounds",
    version
)]
struct Cli {
    /// Scale factor applied to validation tolerances (orthonormality).
    #[arg(long, global = true, default_value_t = 1.0)]
    tolerance_scale: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a deterministic numeric eigenbasis of a graph matrix.
    Eigenbasis(EigenbasisArgs),
    /// Build a Cayley graph and its representation-theoretic eigenbasis.
    Cayley(CayleyArgs),
    /// Sharp frame bounds for a basis, window, and translation family.
    FrameBounds(FrameBoundsArgs),
    /// Worst-case frame condition number over all unit windows.
    ConditionSup(ConditionSupArgs),
    /// Translate a signal to a vertex in the given basis.
    Translate(TranslateArgs),
    /// Frame analysis coefficients of a signal.
    Analyze(AnalyzeArgs),
    /// Run the fixture verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct EigenbasisArgs {
    /// Graph file (kind "graph").
    graph: PathBuf,
    /// Which matrix to diagonalize.
    #[arg(long, value_enum, default_value_t = MatrixChoice::Adjacency)]
    matrix: MatrixChoice,
    /// Where to write the basis file.
    #[arg(long)]
    out: PathBuf,
    /// Also write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixChoice {
    Adjacency,
    Laplacian,
}

#[derive(Args)]
struct CayleyArgs {
    /// Group file (kind "group").
    group: PathBuf,
    /// Generating set file: a JSON list of 1-based element indices.
    #[arg(long)]
    gens: PathBuf,
    /// Where to write the Cayley graph.
    #[arg(long)]
    out_graph: Option<PathBuf>,
    /// Where to write the coordinate-functional basis.
    #[arg(long)]
    out_basis: Option<PathBuf>,
    /// Also write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct FamilyArgs {
    /// Translation family: `shuman`, `gavili`, `multiplier:<file>` or
    /// `operators:<file>`.
    #[arg(long)]
    family: String,
    /// Phase offset c in [0, 2π) for the gavili family.
    #[arg(long, default_value_t = 0.0)]
    phase: f64,
}

#[derive(Args)]
struct FrameBoundsArgs {
    /// Basis file.
    basis: PathBuf,
    /// Window signal file.
    window: PathBuf,
    #[command(flatten)]
    family: FamilyArgs,
    /// Normalize the window to unit norm before computing bounds.
    #[arg(long)]
    normalize_window: bool,
    /// Also write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct ConditionSupArgs {
    /// Basis file.
    basis: PathBuf,
    #[command(flatten)]
    family: FamilyArgs,
    /// Where to write the witness window.
    #[arg(long)]
    out_witness: Option<PathBuf>,
    /// Also write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct TranslateArgs {
    /// Basis file.
    basis: PathBuf,
    /// Signal file.
    signal: PathBuf,
    /// Target vertex (1-based).
    #[arg(long)]
    vertex: usize,
    /// Where to write the translated signal.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Basis file.
    basis: PathBuf,
    /// Window signal file.
    window: PathBuf,
    /// Signal to analyze.
    signal: PathBuf,
    #[command(flatten)]
    family: FamilyArgs,
    /// Normalize the window to unit norm before building the frame.
    #[arg(long)]
    normalize_window: bool,
    /// Where to write the coefficient list (JSON array of [re, im]).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Directory holding the fixture files.
    #[arg(long, default_value = "fixtures")]
    fixtures: PathBuf,
}

/// Exit classification for library errors: validation failures are 1,
/// numeric failures are 3, everything filesystem-flavored is 2.
fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::PencilNotPositiveDefinite { .. }
        | Error::SingularGram { .. }
        | Error::EigensolverFailure(_) => 3,
        Error::Io { .. } => 2,
        _ => 1,
    }
}

fn fail(err: &Error) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(exit_code_for(err))
}

fn usage_fail(message: &str) -> ExitCode {
    eprintln!("usage error: {message}");
    ExitCode::from(2)
}

fn require_file(path: &Path) -> Option<ExitCode> {
    if path.is_file() {
        None
    } else {
        Some(usage_fail(&format!("no such file: {}", path.display())))
    }
}

fn emit(report: &Value, to: Option<&Path>) -> Result<(), Error> {
    let mut text = serde_json::to_string_pretty(report).expect("report serialization");
    text.push('\n');
    print!("{text}");
    if let Some(path) = to {
        std::fs::write(path, &text).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
    }
    Ok(())
}

fn cx_pairs(v: &nalgebra::DVector<num_complex::Complex64>) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

enum CliFailure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliFailure {
    fn from(e: Error) -> Self {
        CliFailure::Lib(e)
    }
}

impl CliFailure {
    fn render(&self) -> ExitCode {
        match self {
            CliFailure::Usage(m) => usage_fail(m),
            CliFailure::Lib(e) => fail(e),
        }
    }
}

fn build_family(
    args: &FamilyArgs,
    basis: &spectral::Eigenbasis,
) -> Result<frames::TranslationFamily, CliFailure> {
    match args.family.as_str() {
        "shuman" => Ok(frames::shuman_family(basis)),
        "gavili" => {
            if !(0.0..std::f64::consts::TAU).contains(&args.phase) {
                return Err(CliFailure::Usage(format!(
                    "--phase {} outside [0, 2π)",
                    args.phase
                )));
            }
            Ok(frames::gavili_family(basis, args.phase))
        }
        other => {
            if let Some(path) = other.strip_prefix("multiplier:") {
                let path = Path::new(path);
                if !path.is_file() {
                    return Err(CliFailure::Usage(format!(
                        "no such file: {}",
                        path.display()
                    )));
                }
                let f = io::load_multiplier_matrix(path)?;
                Ok(frames::multiplier_family(basis, &f)?)
            } else if let Some(path) = other.strip_prefix("operators:") {
                let path = Path::new(path);
                if !path.is_file() {
                    return Err(CliFailure::Usage(format!(
                        "no such file: {}",
                        path.display()
                    )));
                }
                let family = io::load_family(path)?;
                if family.dim() != basis.dim() {
                    return Err(CliFailure::Lib(Error::DimensionMismatch {
                        context: "family/basis",
                        expected: basis.dim(),
                        found: family.dim(),
                    }));
                }
                if let Some(defect) = family.multiplier_defect(basis) {
                    if defect > 1e-10 * (basis.dim() as f64) {
                        return Err(CliFailure::Lib(Error::InvalidGraph(format!(
                            "family multipliers do not reconstruct the operators in this basis (defect {defect:.3e})"
                        ))));
                    }
                }
                Ok(family)
            } else {
                Err(CliFailure::Usage(format!(
                    "unknown --family {other:?}; expected shuman, gavili, multiplier:<file> or operators:<file>"
                )))
            }
        }
    }
}

fn cmd_eigenbasis(args: &EigenbasisArgs) -> Result<(), CliFailure> {
    let graph = io::load_graph(&args.graph)?;
    let matrix = match args.matrix {
        MatrixChoice::Adjacency => graphs::adjacency(&graph),
        MatrixChoice::Laplacian => graphs::laplacian(&graph)?,
    };
    let basis = graphs::numeric_eigenbasis(&matrix)?;
    io::store_basis(&basis, &args.out)?;
    let check = basis.validate_orthonormal();
    let report = json!({
        "version": "1",
        "kind": "report",
        "report_kind": "eigenbasis",
        "n": basis.dim(),
        "matrix": match args.matrix { MatrixChoice::Adjacency => "adjacency", MatrixChoice::Laplacian => "laplacian" },
        "eigenvalues": basis.eigenvalues().unwrap_or(&[]),
        "orthonormality_defect": check.max_defect,
        "basis_file": args.out.display().to_string(),
    });
    emit(&report, args.report.as_deref())?;
    eprintln!(
        "eigenbasis: n = {}, eigenvalues in [{:.6}, {:.6}], defect {:.3e}",
        basis.dim(),
        basis.eigenvalues().unwrap()[0],
        basis.eigenvalues().unwrap()[basis.dim() - 1],
        check.max_defect
    );
    Ok(())
}

fn cmd_cayley(args: &CayleyArgs) -> Result<(), CliFailure> {
    let (group_data, irreps) = io::load_group(&args.group)?;
    let gens = io::load_generating_set(&args.gens)?;
    let cay = group::cayley_graph(&group_data, &gens)?;
    if let Some(path) = &args.out_graph {
        io::store_graph(&cay.graph, path)?;
    }
    let mut basis = group::coordinate_basis(&group_data, &irreps)?;
    let eigenvalues = if cay.normal {
        Some(group::cayley_eigenvalues(&group_data, &gens, &irreps)?)
    } else {
        None
    };
    // Attach real eigenvalue labels when the spectrum is real (undirected
    // or otherwise real-spectrum normal Cayley graphs).
    if let Some(eigs) = &eigenvalues {
        if eigs.iter().all(|e| e.value.im.abs() < 1e-12) {
            let mut labels = Vec::with_capacity(group_data.order());
            for e in eigs {
                labels.extend(std::iter::repeat_n(e.value.re, e.multiplicity));
            }
            basis = spectral::Eigenbasis::new(
                basis.matrix().clone(),
                Some(labels),
                spectral::Provenance::GroupRepresentation,
            )?;
        }
    }
    if let Some(path) = &args.out_basis {
        io::store_basis(&basis, path)?;
    }
    let eig_json: Value = match &eigenvalues {
        Some(eigs) => json!(eigs
            .iter()
            .map(|e| {
                json!({
                    "irrep": e.irrep,
                    "value": [e.value.re, e.value.im],
                    "multiplicity": e.multiplicity,
                })
            })
            .collect::<Vec<_>>()),
        None => Value::Null,
    };
    let report = json!({
        "version": "1",
        "kind": "report",
        "report_kind": "cayley",
        "n": group_data.order(),
        "generators": gens,
        "directed": cay.graph.is_directed(),
        "normal": cay.normal,
        "edge_count": cay.graph.edges().len(),
        "eigenvalues": eig_json,
        "graph_file": args.out_graph.as_ref().map(|p| p.display().to_string()),
        "basis_file": args.out_basis.as_ref().map(|p| p.display().to_string()),
    });
    emit(&report, args.report.as_deref())?;
    eprintln!(
        "cayley: |G| = {}, |S| = {}, {}, normal: {}",
        group_data.order(),
        gens.len(),
        if cay.graph.is_directed() { "directed" } else { "undirected" },
        cay.normal
    );
    Ok(())
}

fn load_window(path: &Path, normalize: bool) -> Result<spectral::Signal, CliFailure> {
    let window = io::load_signal(path)?;
    if normalize {
        let norm = window.norm();
        if norm == 0.0 {
            return Err(CliFailure::Lib(Error::ZeroWindow));
        }
        Ok(spectral::Signal::new(
            window.entries().iter().map(|z| z / norm).collect(),
        )?)
    } else {
        Ok(window)
    }
}

fn cmd_frame_bounds(args: &FrameBoundsArgs, tol_scale: f64) -> Result<(), CliFailure> {
    let basis = io::load_basis_scaled(&args.basis, tol_scale)?;
    let window = load_window(&args.window, args.normalize_window)?;
    if window.dim() != basis.dim() {
        return Err(CliFailure::Lib(Error::DimensionMismatch {
            context: "window/basis",
            expected: basis.dim(),
            found: window.dim(),
        }));
    }
    let family = build_family(&args.family, &basis)?;
    let v = frames::frame_v(&family, &window)?;
    let bounds = frames::frame_bounds(&v);
    let report = BoundsReport::from_bounds(&bounds);
    let value = serde_json::to_value(&report).expect("report to value");
    emit(&value, args.report.as_deref())?;
    eprintln!(
        "frame-bounds: A = {:.12}, B = {:.12}, {}",
        bounds.lower,
        bounds.upper,
        if !bounds.is_frame {
            "not a frame".to_string()
        } else if bounds.is_tight() {
            "tight".to_string()
        } else {
            format!("B/A = {:.12}", bounds.condition_number())
        }
    );
    Ok(())
}

fn cmd_condition_sup(args: &ConditionSupArgs, tol_scale: f64) -> Result<(), CliFailure> {
    let basis = io::load_basis_scaled(&args.basis, tol_scale)?;
    let family = build_family(&args.family, &basis)?;
    let grams = frames::gram_matrices(&family);
    let sup = frames::sup_condition_number(&grams)?;
    if let Some(path) = &args.out_witness {
        io::store_signal(&sup.witness, path)?;
    }
    let report = json!({
        "version": "1",
        "kind": "report",
        "report_kind": "condition-sup",
        "sup": sup.value,
        "pair": [sup.pair.0, sup.pair.1],
        "witness": cx_pairs(sup.witness.entries()),
        "witness_file": args.out_witness.as_ref().map(|p| p.display().to_string()),
    });
    emit(&report, args.report.as_deref())?;
    eprintln!(
        "condition-sup: sup B/A = {:.12} attained at pair ({}, {})",
        sup.value, sup.pair.0, sup.pair.1
    );
    Ok(())
}

fn cmd_translate(args: &TranslateArgs, tol_scale: f64) -> Result<(), CliFailure> {
    let basis = io::load_basis_scaled(&args.basis, tol_scale)?;
    let signal = io::load_signal(&args.signal)?;
    let translated = spectral::translate(&signal, args.vertex, &basis)?;
    if let Some(path) = &args.out {
        io::store_signal(&translated, path)?;
    }
    let report = json!({
        "version": "1",
        "kind": "report",
        "report_kind": "translate",
        "vertex": args.vertex,
        "norm": translated.norm(),
        "entries": cx_pairs(translated.entries()),
        "out_file": args.out.as_ref().map(|p| p.display().to_string()),
    });
    emit(&report, None)?;
    eprintln!("translate: vertex {}, norm {:.12}", args.vertex, translated.norm());
    Ok(())
}

fn cmd_analyze(args: &AnalyzeArgs, tol_scale: f64) -> Result<(), CliFailure> {
    let basis = io::load_basis_scaled(&args.basis, tol_scale)?;
    let window = load_window(&args.window, args.normalize_window)?;
    let signal = io::load_signal(&args.signal)?;
    let family = build_family(&args.family, &basis)?;
    let frame = frames::build_frame(&basis, &family, &window)?;
    let coefficients = frames::analyze(&frame, &signal)?;
    let bounds = frames::frame_bounds(&frames::frame_v(&family, &window)?);
    let energy: f64 = coefficients.iter().map(|z| z.norm_sqr()).sum();
    let coeff_pairs: Vec<[f64; 2]> = coefficients.iter().map(|z| [z.re, z.im]).collect();
    if let Some(path) = &args.out {
        let mut text =
            serde_json::to_string_pretty(&coeff_pairs).expect("coefficient serialization");
        text.push('\n');
        std::fs::write(path, text).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
    }
    let report = json!({
        "version": "1",
        "kind": "report",
        "report_kind": "analyze",
        "n": frame.dim(),
        "s": frame.family_len(),
        "order": "l-outer",
        "coefficient_energy": energy,
        "signal_norm_squared": signal.norm().powi(2),
        "A": bounds.lower,
        "B": bounds.upper,
        "is_frame": bounds.is_frame,
        "coefficients": coeff_pairs,
        "out_file": args.out.as_ref().map(|p| p.display().to_string()),
    });
    emit(&report, args.report.as_deref())?;
    eprintln!(
        "analyze: {} coefficients, energy {:.12}",
        coefficients.len(),
        energy
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !(cli.tolerance_scale.is_finite() && cli.tolerance_scale > 0.0) {
        return usage_fail("--tolerance-scale must be positive and finite");
    }
    let scale = cli.tolerance_scale;
    let result: Result<(), CliFailure> = match &cli.command {
        Command::Eigenbasis(args) => {
            if let Some(code) = require_file(&args.graph) {
                return code;
            }
            cmd_eigenbasis(args)
        }
        Command::Cayley(args) => {
            for p in [&args.group, &args.gens] {
                if let Some(code) = require_file(p) {
                    return code;
                }
            }
            cmd_cayley(args)
        }
        Command::FrameBounds(args) => {
            for p in [&args.basis, &args.window] {
                if let Some(code) = require_file(p) {
                    return code;
                }
            }
            cmd_frame_bounds(args, scale)
        }
        Command::ConditionSup(args) => {
            if let Some(code) = require_file(&args.basis) {
                return code;
            }
            cmd_condition_sup(args, scale)
        }
        Command::Translate(args) => {
            for p in [&args.basis, &args.signal] {
                if let Some(code) = require_file(p) {
                    return code;
                }
            }
            cmd_translate(args, scale)
        }
        Command::Analyze(args) => {
            for p in [&args.basis, &args.window, &args.signal] {
                if let Some(code) = require_file(p) {
                    return code;
                }
            }
            cmd_analyze(args, scale)
        }
        Command::Verify(args) => return verify::run(&args.fixtures),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => failure.render(),
    }
}
