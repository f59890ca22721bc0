//! Graph Fourier analysis for complex signals.
//!
//! A signal on a graph with `N` vertices is a vector in `C^N`. Fixing an
//! orthonormal eigenbasis `Φ` of a matrix associated with the graph, the
//! forward transform is `f̂ = Φ* f` and the inverse is `f = Φ f̂`. Convolution
//! is the pointwise product in the transform domain, translation is
//! `T_j f = √N (f ∗ δ_j)`, and modulation is the entrywise product with a
//! basis vector.
//!
//! Vertex and basis indices in this API are 1-based, matching the file
//! formats and the CLI.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// A complex-valued signal indexed by graph vertices (1-based in the API).
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    entries: DVector<Complex64>,
}

impl Signal {
    /// Builds a signal, rejecting empty or non-finite input.
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty { context: "signal" });
        }
        for (i, z) in entries.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite {
                    context: "signal",
                    position: i + 1,
                });
            }
        }
        Ok(Self {
            entries: DVector::from_vec(entries),
        })
    }

    /// Builds a real-valued signal.
    pub fn from_real(entries: &[f64]) -> Result<Self> {
        Self::new(entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// The Kronecker delta centered at 1-based vertex `j`.
    pub fn delta(n: usize, j: usize) -> Result<Self> {
        if j == 0 || j > n {
            return Err(Error::IndexOutOfRange {
                context: "delta",
                index: j,
                n,
            });
        }
        let mut v = vec![Complex64::ZERO; n];
        v[j - 1] = Complex64::ONE;
        Self::new(v)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Entry at 0-based position; prefer iteration for bulk access.
    pub fn entry(&self, i: usize) -> Complex64 {
        self.entries[i]
    }

    pub fn entries(&self) -> &DVector<Complex64> {
        &self.entries
    }

    pub fn norm(&self) -> f64 {
        self.entries.norm()
    }

    pub(crate) fn from_vector(v: DVector<Complex64>) -> Self {
        Self { entries: v }
    }

    /// Largest elementwise distance to another signal.
    pub fn max_abs_diff(&self, other: &Signal) -> f64 {
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Where an eigenbasis came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    NumericEigensolver,
    GroupRepresentation,
    UserSupplied,
}

/// Column label for a representation-derived basis: irrep index and the
/// (row, column) of the coordinate functional, all 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColumnTag {
    pub irrep: usize,
    pub row: usize,
    pub col: usize,
}

/// An orthonormal basis `Φ` of `C^N` with optional eigenvalue labels.
///
/// Columns are the basis vectors `φ_j`; the rows `μ_k = (φ_j(k))_j` are
/// exposed through [`Eigenbasis::mu_row`]. Orthonormality is enforced at
/// construction against the tolerance `1e-8 · N`.
#[derive(Debug, Clone)]
pub struct Eigenbasis {
    columns: DMatrix<Complex64>,
    eigenvalues: Option<Vec<f64>>,
    provenance: Provenance,
    column_tags: Option<Vec<ColumnTag>>,
}

/// Outcome of an orthonormality check: the largest entry of `|Φ*Φ − I|`
/// and the verdict against the tolerance.
#[derive(Debug, Clone, Copy)]
pub struct OrthonormalityReport {
    pub max_defect: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Orthonormality tolerance for an `N`-dimensional basis.
pub fn ortho_tolerance(n: usize) -> f64 {
    1e-8 * n as f64
}

/// Measures `max |(Φ*Φ − I)_{ij}|` for a square complex matrix.
pub fn orthonormality_defect(columns: &DMatrix<Complex64>) -> f64 {
    let n = columns.ncols();
    let gram = columns.adjoint() * columns;
    let mut max = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let expected = if i == j { Complex64::ONE } else { Complex64::ZERO };
            max = max.max((gram[(i, j)] - expected).norm());
        }
    }
    max
}

impl Eigenbasis {
    /// Builds a basis after checking squareness, finiteness and
    /// orthonormality.
    pub fn new(
        columns: DMatrix<Complex64>,
        eigenvalues: Option<Vec<f64>>,
        provenance: Provenance,
    ) -> Result<Self> {
        Self::new_scaled(columns, eigenvalues, provenance, 1.0)
    }

    /// [`Eigenbasis::new`] with the orthonormality tolerance multiplied by
    /// `tol_scale` (the CLI's `--tolerance-scale`).
    pub fn new_scaled(
        columns: DMatrix<Complex64>,
        eigenvalues: Option<Vec<f64>>,
        provenance: Provenance,
        tol_scale: f64,
    ) -> Result<Self> {
        if columns.nrows() != columns.ncols() {
            return Err(Error::NotSquare {
                rows: columns.nrows(),
                cols: columns.ncols(),
            });
        }
        if columns.nrows() == 0 {
            return Err(Error::Empty { context: "eigenbasis" });
        }
        for (i, z) in columns.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite {
                    context: "eigenbasis",
                    position: i + 1,
                });
            }
        }
        if let Some(vals) = &eigenvalues {
            if vals.len() != columns.ncols() {
                return Err(Error::DimensionMismatch {
                    context: "eigenvalue labels",
                    expected: columns.ncols(),
                    found: vals.len(),
                });
            }
        }
        let defect = orthonormality_defect(&columns);
        let tolerance = ortho_tolerance(columns.ncols()) * tol_scale;
        if defect > tolerance {
            return Err(Error::NotOrthonormal { defect, tolerance });
        }
        Ok(Self {
            columns,
            eigenvalues,
            provenance,
            column_tags: None,
        })
    }

    /// The identity basis of dimension `n`.
    pub fn identity(n: usize) -> Result<Self> {
        Self::new(DMatrix::identity(n, n), None, Provenance::UserSupplied)
    }

    pub(crate) fn with_tags(mut self, tags: Vec<ColumnTag>) -> Self {
        self.column_tags = Some(tags);
        self
    }

    pub fn dim(&self) -> usize {
        self.columns.ncols()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.columns
    }

    /// Basis vector `φ_j`, 1-based.
    pub fn column(&self, j: usize) -> Result<Signal> {
        let n = self.dim();
        if j == 0 || j > n {
            return Err(Error::IndexOutOfRange {
                context: "basis column",
                index: j,
                n,
            });
        }
        Ok(Signal::from_vector(self.columns.column(j - 1).into_owned()))
    }

    /// Row `μ_k = (φ_1(k), …, φ_N(k))`, 1-based: the values of every basis
    /// vector at vertex `k`.
    pub fn mu_row(&self, k: usize) -> Result<DVector<Complex64>> {
        let n = self.dim();
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange {
                context: "basis row",
                index: k,
                n,
            });
        }
        Ok(self.columns.row(k - 1).transpose())
    }

    pub fn eigenvalues(&self) -> Option<&[f64]> {
        self.eigenvalues.as_deref()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn column_tags(&self) -> Option<&[ColumnTag]> {
        self.column_tags.as_deref()
    }

    /// Re-measures the orthonormality defect. A basis constructed through
    /// [`Eigenbasis::new`] always passes; the report is for diagnostics and
    /// for validating user-supplied matrices before construction.
    pub fn validate_orthonormal(&self) -> OrthonormalityReport {
        let max_defect = orthonormality_defect(&self.columns);
        let tolerance = ortho_tolerance(self.dim());
        OrthonormalityReport {
            max_defect,
            tolerance,
            pass: max_defect <= tolerance,
        }
    }
}

/// Transform coefficients `f̂(φ_j)`, aligned with basis column order.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCoefficients {
    entries: DVector<Complex64>,
}

impl SpectralCoefficients {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty {
                context: "spectral coefficients",
            });
        }
        Ok(Self {
            entries: DVector::from_vec(entries),
        })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize) -> Complex64 {
        self.entries[i]
    }

    pub fn entries(&self) -> &DVector<Complex64> {
        &self.entries
    }

    pub fn norm(&self) -> f64 {
        self.entries.norm()
    }

    pub(crate) fn from_vector(v: DVector<Complex64>) -> Self {
        Self { entries: v }
    }
}

fn check_dim(f: usize, basis: &Eigenbasis, context: &'static str) -> Result<()> {
    if f != basis.dim() {
        return Err(Error::DimensionMismatch {
            context,
            expected: basis.dim(),
            found: f,
        });
    }
    Ok(())
}

/// Forward transform `f̂ = Φ* f`; entry `k` is `⟨f, φ_k⟩`.
pub fn gft(f: &Signal, basis: &Eigenbasis) -> Result<SpectralCoefficients> {
    check_dim(f.dim(), basis, "gft")?;
    Ok(SpectralCoefficients::from_vector(
        basis.matrix().adjoint() * f.entries(),
    ))
}

/// Inverse transform `f = Φ f̂`.
pub fn igft(c: &SpectralCoefficients, basis: &Eigenbasis) -> Result<Signal> {
    check_dim(c.dim(), basis, "igft")?;
    Ok(Signal::from_vector(basis.matrix() * c.entries()))
}

/// Convolution as the pointwise transform-domain product:
/// `f ∗ g = Φ (f̂ ∘ ĝ)`.
pub fn convolve(f: &Signal, g: &Signal, basis: &Eigenbasis) -> Result<Signal> {
    check_dim(f.dim(), basis, "convolve")?;
    check_dim(g.dim(), basis, "convolve")?;
    let fh = gft(f, basis)?;
    let gh = gft(g, basis)?;
    let prod = fh.entries().component_mul(gh.entries());
    igft(&SpectralCoefficients::from_vector(prod), basis)
}

/// Translation to vertex `j` (1-based): `T_j f = √N (f ∗ δ_j)`.
pub fn translate(f: &Signal, j: usize, basis: &Eigenbasis) -> Result<Signal> {
    let n = basis.dim();
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange {
            context: "translate",
            index: j,
            n,
        });
    }
    check_dim(f.dim(), basis, "translate")?;
    let delta = Signal::delta(n, j)?;
    let conv = convolve(f, &delta, basis)?;
    let scale = Complex64::new((n as f64).sqrt(), 0.0);
    Ok(Signal::from_vector(conv.entries() * scale))
}

/// Modulation by basis vector `j` (1-based): `M_j f = φ_j ∘ f`.
pub fn modulate(f: &Signal, j: usize, basis: &Eigenbasis) -> Result<Signal> {
    let n = basis.dim();
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange {
            context: "modulate",
            index: j,
            n,
        });
    }
    check_dim(f.dim(), basis, "modulate")?;
    let phi = basis.matrix().column(j - 1);
    let out = DVector::from_fn(n, |k, _| phi[k] * f.entry(k));
    Ok(Signal::from_vector(out))
}

/// Orthonormality report for an arbitrary square matrix, without requiring
/// the matrix to pass (the report carries the failure).
pub fn validate_orthonormal(columns: &DMatrix<Complex64>) -> OrthonormalityReport {
    let max_defect = orthonormality_defect(columns);
    let tolerance = ortho_tolerance(columns.ncols());
    OrthonormalityReport {
        max_defect,
        tolerance,
        pass: max_defect <= tolerance,
    }
}
