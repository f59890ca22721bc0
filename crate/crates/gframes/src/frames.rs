//! Frame construction from translation families and sharp frame bounds.
//!
//! Given an orthonormal basis `{φ_ℓ}` of `C^N`, operators `A_1, …, A_S`,
//! and a window `𝔤`, the family `𝔤_{m,ℓ} = φ_ℓ ∘ (A_m 𝔤)` has a diagonal
//! frame operator whose diagonal is the vector
//!
//! ```text
//! v = Σ_j |A_j 𝔤|²   (entrywise),
//! ```
//!
//! so the family is a frame exactly when every `v_k > 0`, with optimal
//! bounds `A = min v`, `B = max v`. Writing `v_k = 𝔤* C_k 𝔤` with the
//! Gram matrices `C_k` turns window-independent estimates and the worst
//! condition number over unit windows into Hermitian matrix-pencil
//! problems.
//!
//! Fourier multipliers `A_i = Φ D_{f_i} Φ*` admit a closed bound formula
//! that never materializes the operators; the translation families of the
//! `√N δ_i` convolution kind and the energy-preserving shift kind are both
//! instances with pairwise-orthogonal multiplier columns of norm `√N`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{gft, Eigenbasis, Signal};

/// Relative threshold deciding `is_frame`: `A > 1e-10 · max(v)`.
const FRAME_EPS_REL: f64 = 1e-10;
/// Relative threshold for positive definiteness in pencil problems.
const PD_EPS_REL: f64 = 1e-12;

/// How a translation family was built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Generic,
    FourierMultiplier,
    Shuman,
    GaviliShift,
}

/// An ordered family of complex `N × N` operators acting as translations.
///
/// Multiplier-built families keep the `N × S` multiplier matrix `F` (column
/// `j` is `f_j`) alongside the materialized operators `A_i = Φ D_{f_i} Φ*`.
#[derive(Debug, Clone)]
pub struct TranslationFamily {
    operators: Vec<DMatrix<Complex64>>,
    kind: FamilyKind,
    multipliers: Option<DMatrix<Complex64>>,
}

impl TranslationFamily {
    /// Wraps explicit operators, checking uniform square dimensions.
    pub fn generic(operators: Vec<DMatrix<Complex64>>) -> Result<Self> {
        if operators.is_empty() {
            return Err(Error::Empty {
                context: "translation family",
            });
        }
        let n = operators[0].nrows();
        for op in &operators {
            if op.nrows() != op.ncols() {
                return Err(Error::NotSquare {
                    rows: op.nrows(),
                    cols: op.ncols(),
                });
            }
            if op.nrows() != n {
                return Err(Error::DimensionMismatch {
                    context: "translation family",
                    expected: n,
                    found: op.nrows(),
                });
            }
        }
        Ok(Self {
            operators,
            kind: FamilyKind::Generic,
            multipliers: None,
        })
    }

    /// Reassembles a family from its parts (used by the file loader),
    /// checking dimensions and multiplier shape.
    pub(crate) fn from_parts(
        operators: Vec<DMatrix<Complex64>>,
        kind: FamilyKind,
        multipliers: Option<DMatrix<Complex64>>,
    ) -> Result<Self> {
        let mut family = Self::generic(operators)?;
        if let Some(f) = &multipliers {
            if f.nrows() != family.dim() || f.ncols() != family.len() {
                return Err(Error::DimensionMismatch {
                    context: "multiplier matrix",
                    expected: family.dim() * family.len(),
                    found: f.nrows() * f.ncols(),
                });
            }
        }
        family.kind = kind;
        family.multipliers = multipliers;
        Ok(family)
    }

    pub fn operators(&self) -> &[DMatrix<Complex64>] {
        &self.operators
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    /// The multiplier matrix `F`, present on multiplier-built families.
    pub fn multipliers(&self) -> Option<&DMatrix<Complex64>> {
        self.multipliers.as_ref()
    }

    /// Signal dimension `N`.
    pub fn dim(&self) -> usize {
        self.operators[0].nrows()
    }

    /// Family size `S`.
    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    /// Largest deviation `‖A_i − Φ D_{f_i} Φ*‖` for multiplier families;
    /// `None` when no multiplier data is attached.
    pub fn multiplier_defect(&self, basis: &Eigenbasis) -> Option<f64> {
        let f = self.multipliers.as_ref()?;
        let phi = basis.matrix();
        let mut worst = 0.0f64;
        for (i, op) in self.operators.iter().enumerate() {
            let diag = DMatrix::from_diagonal(&f.column(i).into_owned());
            let rebuilt = phi * diag * phi.adjoint();
            worst = worst.max((op - rebuilt).norm());
        }
        Some(worst)
    }
}

/// A built frame: the `N·S` vectors `𝔤_{m,ℓ}` in flat order with `ℓ` outer
/// and `m` inner, plus the ingredients they came from.
#[derive(Debug, Clone)]
pub struct Frame {
    vectors: Vec<DVector<Complex64>>,
    n: usize,
    s: usize,
    provenance: Option<FrameProvenance>,
}

/// The basis, family, and window a frame was built from.
#[derive(Debug, Clone)]
pub struct FrameProvenance {
    pub basis: Eigenbasis,
    pub family: TranslationFamily,
    pub window: Signal,
}

impl Frame {
    pub fn vectors(&self) -> &[DVector<Complex64>] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn family_len(&self) -> usize {
        self.s
    }

    /// Flat position of `(m, ℓ)` (both 1-based): `ℓ` outer, `m` inner.
    pub fn flat_index(&self, m: usize, ell: usize) -> Result<usize> {
        if m == 0 || m > self.s {
            return Err(Error::IndexOutOfRange {
                context: "frame flat index (m)",
                index: m,
                n: self.s,
            });
        }
        if ell == 0 || ell > self.n {
            return Err(Error::IndexOutOfRange {
                context: "frame flat index (ell)",
                index: ell,
                n: self.n,
            });
        }
        Ok((ell - 1) * self.s + (m - 1))
    }

    /// Inverse of [`Frame::flat_index`], returning 1-based `(m, ℓ)`.
    pub fn unflatten(&self, pos: usize) -> Result<(usize, usize)> {
        if pos >= self.vectors.len() {
            return Err(Error::IndexOutOfRange {
                context: "frame flat index",
                index: pos + 1,
                n: self.vectors.len(),
            });
        }
        Ok((pos % self.s + 1, pos / self.s + 1))
    }

    pub fn provenance(&self) -> Option<&FrameProvenance> {
        self.provenance.as_ref()
    }

    /// Rebuilds a frame from raw vectors (for example after loading from a
    /// file); provenance is absent.
    pub fn from_vectors(n: usize, s: usize, vectors: Vec<DVector<Complex64>>) -> Result<Self> {
        if vectors.len() != n * s {
            return Err(Error::DimensionMismatch {
                context: "frame vectors",
                expected: n * s,
                found: vectors.len(),
            });
        }
        for v in &vectors {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    context: "frame vector",
                    expected: n,
                    found: v.len(),
                });
            }
        }
        Ok(Self {
            vectors,
            n,
            s,
            provenance: None,
        })
    }
}

/// Sharp frame bounds and the diagnostic vector they came from.
#[derive(Debug, Clone)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
    pub is_frame: bool,
    /// Diagonal of the frame operator, `v_k = Σ_j |A_j 𝔤|²(k)`.
    pub v: DVector<f64>,
    /// 1-based vertex attaining the minimum (first such).
    pub argmin: usize,
    /// 1-based vertex attaining the maximum (first such).
    pub argmax: usize,
}

impl FrameBounds {
    /// `B / A`; infinite when the family is not a frame.
    pub fn condition_number(&self) -> f64 {
        if self.is_frame {
            self.upper / self.lower
        } else {
            f64::INFINITY
        }
    }

    /// Tightness verdict at the reporting tolerance `|B − A| ≤ 1e-9 · B`.
    pub fn is_tight(&self) -> bool {
        self.is_frame && (self.upper - self.lower).abs() <= 1e-9 * self.upper
    }
}

/// The `N` Hermitian PSD Gram matrices `C_k` with
/// `(C_k)_{ℓ,m} = Σ_j a^{(j)}_{kℓ} conj(a^{(j)}_{km})`.
#[derive(Debug, Clone)]
pub struct GramMatrices {
    matrices: Vec<DMatrix<Complex64>>,
}

impl GramMatrices {
    pub fn matrices(&self) -> &[DMatrix<Complex64>] {
        &self.matrices
    }

    pub fn dim(&self) -> usize {
        self.matrices.len()
    }

    /// `𝔤* C_k 𝔤` for 1-based `k`.
    pub fn quadratic_form(&self, k: usize, window: &Signal) -> Result<f64> {
        if k == 0 || k > self.matrices.len() {
            return Err(Error::IndexOutOfRange {
                context: "gram quadratic form",
                index: k,
                n: self.matrices.len(),
            });
        }
        let g = window.entries();
        let out = g.adjoint() * &self.matrices[k - 1] * g;
        Ok(out[(0, 0)].re)
    }
}

fn check_family_window(family: &TranslationFamily, window: &Signal) -> Result<()> {
    if family.dim() != window.dim() {
        return Err(Error::DimensionMismatch {
            context: "family/window",
            expected: family.dim(),
            found: window.dim(),
        });
    }
    Ok(())
}

/// The diagnostic vector `v = Σ_j |A_j 𝔤|²` (entrywise modulus squared).
pub fn frame_v(family: &TranslationFamily, window: &Signal) -> Result<DVector<f64>> {
    check_family_window(family, window)?;
    let n = family.dim();
    let mut v = DVector::zeros(n);
    for op in family.operators() {
        let image = op * window.entries();
        for k in 0..n {
            v[k] += image[k].norm_sqr();
        }
    }
    Ok(v)
}

/// Sharp bounds from a `v` vector: `A = min v`, `B = max v`, frame exactly
/// when `A` clears the relative threshold `1e-10 · max(v)`.
pub fn frame_bounds(v: &DVector<f64>) -> FrameBounds {
    let mut argmin = 0usize;
    let mut argmax = 0usize;
    for k in 1..v.len() {
        if v[k] < v[argmin] {
            argmin = k;
        }
        if v[k] > v[argmax] {
            argmax = k;
        }
    }
    let lower = v[argmin];
    let upper = v[argmax];
    let is_frame = lower > FRAME_EPS_REL * upper;
    FrameBounds {
        lower,
        upper,
        is_frame,
        v: v.clone(),
        argmin: argmin + 1,
        argmax: argmax + 1,
    }
}

/// Builds the `N·S` frame vectors `𝔤_{m,ℓ} = φ_ℓ ∘ (A_m 𝔤)` in flat order
/// (`ℓ` outer, `m` inner). Rejects the zero window.
pub fn build_frame(
    basis: &Eigenbasis,
    family: &TranslationFamily,
    window: &Signal,
) -> Result<Frame> {
    let n = basis.dim();
    if family.dim() != n {
        return Err(Error::DimensionMismatch {
            context: "basis/family",
            expected: n,
            found: family.dim(),
        });
    }
    check_family_window(family, window)?;
    if window.norm() == 0.0 {
        return Err(Error::ZeroWindow);
    }
    let s = family.len();
    let translated: Vec<DVector<Complex64>> = family
        .operators()
        .iter()
        .map(|op| op * window.entries())
        .collect();
    let mut vectors = Vec::with_capacity(n * s);
    for ell in 0..n {
        let phi = basis.matrix().column(ell);
        for t in &translated {
            let vec = DVector::from_fn(n, |k, _| phi[k] * t[k]);
            vectors.push(vec);
        }
    }
    Ok(Frame {
        vectors,
        n,
        s,
        provenance: Some(FrameProvenance {
            basis: basis.clone(),
            family: family.clone(),
            window: window.clone(),
        }),
    })
}

/// Brute-force frame operator `T T* = Σ_x 𝔤_x 𝔤_x*`, summed directly over
/// the frame vectors. This is the independent oracle for the diagonal
/// structure and the sharp bounds; it deliberately shares no code with
/// [`frame_v`].
pub fn frame_operator(frame: &Frame) -> DMatrix<Complex64> {
    let n = frame.dim();
    let mut tt = DMatrix::<Complex64>::zeros(n, n);
    for v in frame.vectors() {
        for r in 0..n {
            for c in 0..n {
                tt[(r, c)] += v[r] * v[c].conj();
            }
        }
    }
    tt
}

/// The Gram matrices `C_k` of a family, one per vertex:
/// `(C_k)_{ℓ,m} = Σ_j conj(a^{(j)}_{kℓ}) a^{(j)}_{km}`, which is the Gram
/// matrix of the vectors `w_{k,ℓ} = (a^{(j)}_{kℓ})_j` in the convention
/// that makes `v_k = 𝔤* C_k 𝔤` hold with `𝔤* C 𝔤 = Σ conj(𝔤_ℓ) C_{ℓm} 𝔤_m`.
pub fn gram_matrices(family: &TranslationFamily) -> GramMatrices {
    let n = family.dim();
    let mut matrices = Vec::with_capacity(n);
    for k in 0..n {
        let mut c = DMatrix::<Complex64>::zeros(n, n);
        for op in family.operators() {
            for l in 0..n {
                for m in 0..n {
                    c[(l, m)] += op[(k, l)].conj() * op[(k, m)];
                }
            }
        }
        matrices.push(c);
    }
    GramMatrices { matrices }
}

/// Hermitian eigenvalues sorted ascending.
fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut eigs: Vec<f64> = m.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    eigs.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    eigs
}

/// Window-independent envelope for unit windows:
/// `(min_k λ_min(C_k), max_k λ_max(C_k))`.
pub fn window_free_bounds(grams: &GramMatrices) -> (f64, f64) {
    let mut lower = f64::INFINITY;
    let mut upper = f64::NEG_INFINITY;
    for c in grams.matrices() {
        let eigs = hermitian_eigenvalues(c);
        lower = lower.min(eigs[0]);
        upper = upper.max(*eigs.last().expect("nonempty"));
    }
    (lower, upper)
}

/// Solution of the Hermitian-definite pencil `A − λB`.
#[derive(Debug, Clone)]
pub struct PencilSolution {
    /// Real eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    /// Eigenvectors in the original coordinates, aligned with `eigenvalues`.
    pub eigenvectors: Vec<DVector<Complex64>>,
}

/// Eigenvalues of the pencil `A − λB` for Hermitian `A` and positive
/// definite `B`, via the Cholesky reduction `B = LL*` followed by a
/// Hermitian eigendecomposition of `L⁻¹ A L⁻*`. Same spectrum as the
/// `B^{-1/2} A B^{-1/2}` formulation with better conditioning.
pub fn pencil_eigenvalues(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> Result<Vec<f64>> {
    Ok(solve_pencil(a, b)?.eigenvalues)
}

/// Full pencil solve, also returning eigenvectors `v` with `Av = λBv`.
pub fn solve_pencil(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> Result<PencilSolution> {
    if a.nrows() != a.ncols() {
        return Err(Error::NotSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    if b.nrows() != b.ncols() || b.nrows() != a.nrows() {
        return Err(Error::DimensionMismatch {
            context: "pencil",
            expected: a.nrows(),
            found: b.nrows(),
        });
    }
    let b_eigs = hermitian_eigenvalues(b);
    let min_eig = b_eigs[0];
    let scale = b_eigs.last().copied().unwrap_or(0.0).abs();
    if min_eig <= PD_EPS_REL * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::PencilNotPositiveDefinite { min_eig });
    }
    let chol = b
        .clone()
        .cholesky()
        .ok_or(Error::PencilNotPositiveDefinite { min_eig })?;
    let l = chol.l();
    // M = L⁻¹ A L⁻*
    let linv_a = l
        .clone()
        .solve_lower_triangular(a)
        .ok_or_else(|| Error::EigensolverFailure("singular Cholesky factor".into()))?;
    let m = l
        .clone()
        .solve_lower_triangular(&linv_a.adjoint())
        .ok_or_else(|| Error::EigensolverFailure("singular Cholesky factor".into()))?
        .adjoint();
    // Symmetrize against roundoff before the Hermitian solver.
    let m = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = m.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[i]
            .partial_cmp(&eig.eigenvalues[j])
            .expect("finite eigenvalues")
    });
    let mut eigenvalues = Vec::with_capacity(order.len());
    let mut eigenvectors = Vec::with_capacity(order.len());
    for &i in &order {
        eigenvalues.push(eig.eigenvalues[i]);
        let y = eig.eigenvectors.column(i).into_owned();
        // Back-substitute to pencil coordinates: v = L⁻* y.
        let v = l
            .adjoint()
            .solve_upper_triangular(&y)
            .ok_or_else(|| Error::EigensolverFailure("singular Cholesky factor".into()))?;
        let norm = v.norm();
        eigenvectors.push(v / Complex64::new(norm, 0.0));
    }
    Ok(PencilSolution {
        eigenvalues,
        eigenvectors,
    })
}

/// Result of the worst-case condition number search over unit windows.
#[derive(Debug, Clone)]
pub struct SupCondition {
    /// `sup_{‖𝔤‖=1} B/A = max_{k,ℓ} λ_max(C_k, C_ℓ)`.
    pub value: f64,
    /// A unit window attaining the supremum.
    pub witness: Signal,
    /// The attaining ordered pair `(k*, ℓ*)`, 1-based; `(k, k)` when every
    /// pencil is trivial (all windows give condition number 1).
    pub pair: (usize, usize),
}

/// Worst condition number over all unit windows, scanning every ordered
/// pair of Gram matrices. All `C_k` must be positive definite; the first
/// singular one is reported otherwise.
pub fn sup_condition_number(grams: &GramMatrices) -> Result<SupCondition> {
    let n = grams.dim();
    for (k, c) in grams.matrices().iter().enumerate() {
        let eigs = hermitian_eigenvalues(c);
        let min_eig = eigs[0];
        let max_eig = eigs.last().copied().unwrap_or(0.0);
        if min_eig <= PD_EPS_REL * max_eig.abs().max(f64::MIN_POSITIVE) {
            return Err(Error::SingularGram { k: k + 1, min_eig });
        }
    }
    // The trivial value 1 (any window) is always feasible; it is attained
    // when all pencils are flat.
    let mut best_value = 1.0f64;
    let mut best_pair = (1usize, 1usize);
    let mut best_witness: Option<DVector<Complex64>> = None;
    for k in 0..n {
        for l in 0..n {
            if k == l {
                continue;
            }
            let sol = solve_pencil(&grams.matrices()[k], &grams.matrices()[l])?;
            let top = *sol.eigenvalues.last().expect("nonempty pencil spectrum");
            if top > best_value {
                best_value = top;
                best_pair = (k + 1, l + 1);
                best_witness = Some(sol.eigenvectors.last().expect("eigenvector").clone());
            }
        }
    }
    let witness = match best_witness {
        Some(v) => Signal::new(v.iter().copied().collect())?,
        None => {
            // Flat case: any unit window realizes condition number 1.
            let mut e = vec![Complex64::ZERO; n];
            e[0] = Complex64::ONE;
            Signal::new(e)?
        }
    };
    Ok(SupCondition {
        value: best_value,
        witness,
        pair: best_pair,
    })
}

/// Fourier-multiplier family `A_i = Φ D_{f_i} Φ*` from the `N × S` matrix
/// `F` whose columns are the multipliers.
pub fn multiplier_family(basis: &Eigenbasis, f: &DMatrix<Complex64>) -> Result<TranslationFamily> {
    multiplier_family_kind(basis, f, FamilyKind::FourierMultiplier)
}

fn multiplier_family_kind(
    basis: &Eigenbasis,
    f: &DMatrix<Complex64>,
    kind: FamilyKind,
) -> Result<TranslationFamily> {
    let n = basis.dim();
    if f.nrows() != n {
        return Err(Error::DimensionMismatch {
            context: "multiplier matrix",
            expected: n,
            found: f.nrows(),
        });
    }
    if f.ncols() == 0 {
        return Err(Error::Empty {
            context: "multiplier matrix",
        });
    }
    let phi = basis.matrix();
    let operators = (0..f.ncols())
        .map(|i| {
            let diag = DMatrix::from_diagonal(&f.column(i).into_owned());
            phi * diag * phi.adjoint()
        })
        .collect();
    Ok(TranslationFamily {
        operators,
        kind,
        multipliers: Some(f.clone()),
    })
}

/// Closed-form sharp bounds for a multiplier family, computed without
/// materializing the operators: `v_k = ‖F* (μ_k ∘ conj(ĝ))‖²` with `μ_k`
/// the `k`-th row of `Φ`.
pub fn multiplier_bounds(
    basis: &Eigenbasis,
    f: &DMatrix<Complex64>,
    window: &Signal,
) -> Result<FrameBounds> {
    let n = basis.dim();
    if f.nrows() != n {
        return Err(Error::DimensionMismatch {
            context: "multiplier matrix",
            expected: n,
            found: f.nrows(),
        });
    }
    if window.dim() != n {
        return Err(Error::DimensionMismatch {
            context: "window",
            expected: n,
            found: window.dim(),
        });
    }
    let ghat = gft(window, basis)?;
    let f_star = f.adjoint();
    let mut v = DVector::zeros(n);
    for k in 1..=n {
        let mu = basis.mu_row(k)?;
        // v_k = Σ_i |Σ_j φ_j(k) f_i(j) ĝ(j)|² = ‖F* conj(μ_k ∘ ĝ)‖²
        let weighted = DVector::from_fn(n, |j, _| (mu[j] * ghat.entry(j)).conj());
        v[k - 1] = (&f_star * weighted).norm().powi(2);
    }
    Ok(frame_bounds(&v))
}

/// The convolution-translation family `T_i 𝔤 = 𝔤 ∗ (√N δ_i)`: multipliers
/// `f_i = √N δ̂_i` with `δ̂_i(k) = conj(φ_k(i))`, so `F = √N Φ*`.
///
/// Scaling note: with *orthonormal* multiplier columns and a window whose
/// transform is constant `c` per coordinate-basis irrep block, the tight
/// bound is `(1/N) Σ_π |c_π|² d_π²`; this family's columns have norm `√N`,
/// which multiplies that bound by `N`.
pub fn shuman_family(basis: &Eigenbasis) -> TranslationFamily {
    let n = basis.dim();
    let scale = Complex64::new((n as f64).sqrt(), 0.0);
    let f = basis.matrix().adjoint() * scale;
    multiplier_family_kind(basis, &f, FamilyKind::Shuman)
        .expect("dimensions agree by construction")
}

/// The energy-preserving shift family `A_i = A_α^{i−1}` with
/// `α_k = e^{i(c − 2π(k−1)/N)}`: multipliers `f_i = (α_1^{i−1}, …)`, with
/// `⟨f_k, f_ℓ⟩ = N δ_{kℓ}` and `A_α^N = I` at `c = 0`.
pub fn gavili_family(basis: &Eigenbasis, phase: f64) -> TranslationFamily {
    let n = basis.dim();
    let tau = std::f64::consts::TAU;
    let alpha: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(1.0, phase - tau * k as f64 / n as f64))
        .collect();
    let f = DMatrix::from_fn(n, n, |k, i| alpha[k].powu(i as u32));
    multiplier_family_kind(basis, &f, FamilyKind::GaviliShift)
        .expect("dimensions agree by construction")
}

/// Analysis coefficients `⟨f, 𝔤_{m,ℓ}⟩` in flat order.
pub fn analyze(frame: &Frame, f: &Signal) -> Result<Vec<Complex64>> {
    if f.dim() != frame.dim() {
        return Err(Error::DimensionMismatch {
            context: "analyze",
            expected: frame.dim(),
            found: f.dim(),
        });
    }
    Ok(frame
        .vectors()
        .iter()
        .map(|g| {
            // ⟨f, g⟩ = Σ f(k) conj(g(k))
            f.entries()
                .iter()
                .zip(g.iter())
                .map(|(a, b)| a * b.conj())
                .sum()
        })
        .collect())
}

/// Canonical dual reconstruction `f = (TT*)⁻¹ Σ_x c_x 𝔤_x`. Because the
/// frame operator is diagonal with diagonal `v`, the inverse is the
/// entrywise division by `v`. Errors when the vectors do not form a frame.
pub fn synthesize(frame: &Frame, coefficients: &[Complex64]) -> Result<Signal> {
    if coefficients.len() != frame.vectors().len() {
        return Err(Error::DimensionMismatch {
            context: "synthesize",
            expected: frame.vectors().len(),
            found: coefficients.len(),
        });
    }
    let n = frame.dim();
    let mut acc = DVector::<Complex64>::zeros(n);
    for (c, g) in coefficients.iter().zip(frame.vectors()) {
        acc += g * *c;
    }
    let v = match frame.provenance() {
        Some(p) => frame_v(&p.family, &p.window)?,
        None => {
            // No provenance: take the diagonal of the brute-force operator.
            let tt = frame_operator(frame);
            DVector::from_fn(n, |k, _| tt[(k, k)].re)
        }
    };
    let bounds = frame_bounds(&v);
    if !bounds.is_frame {
        return Err(Error::NotAFrame {
            lower: bounds.lower,
            threshold: FRAME_EPS_REL * bounds.upper,
        });
    }
    let out = DVector::from_fn(n, |k, _| acc[k] / Complex64::new(v[k], 0.0));
    Signal::new(out.iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group;
    use crate::spectral::{igft, Provenance, SpectralCoefficients};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_signal(rng: &mut StdRng, n: usize) -> Signal {
        Signal::new(
            (0..n)
                .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        )
        .unwrap()
    }

    fn random_unitary(rng: &mut StdRng, n: usize) -> Eigenbasis {
        let z = DMatrix::from_fn(n, n, |_, _| {
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        Eigenbasis::new(z.qr().q(), None, Provenance::UserSupplied).unwrap()
    }

    fn random_family(rng: &mut StdRng, n: usize, s: usize) -> TranslationFamily {
        let ops = (0..s)
            .map(|_| {
                DMatrix::from_fn(n, n, |_, _| {
                    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                })
            })
            .collect();
        TranslationFamily::generic(ops).unwrap()
    }

    fn z6_basis() -> Eigenbasis {
        let (g, irreps) = group::cyclic_group(6).unwrap();
        group::coordinate_basis(&g, &irreps).unwrap()
    }

    fn s3_basis() -> Eigenbasis {
        let (g, irreps) = group::symmetric_group_s3();
        group::coordinate_basis(&g, &irreps).unwrap()
    }

    fn paper_window() -> Signal {
        Signal::from_real(&[6.0 / 7.0, 3.0 / 7.0, 2.0 / 7.0, 0.0, 0.0, 0.0]).unwrap()
    }

    #[test]
    fn frame_v_single_identity_operator() {
        let fam = TranslationFamily::generic(vec![DMatrix::identity(2, 2)]).unwrap();
        let g = Signal::from_real(&[1.0, 2.0]).unwrap();
        let v = frame_v(&fam, &g).unwrap();
        assert_eq!(v.as_slice(), &[1.0, 4.0]);
    }

    #[test]
    fn frame_v_plus_minus_identity() {
        let fam = TranslationFamily::generic(vec![
            DMatrix::identity(2, 2),
            -DMatrix::<Complex64>::identity(2, 2),
        ])
        .unwrap();
        let g = Signal::new(vec![c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        let v = frame_v(&fam, &g).unwrap();
        assert_eq!(v.as_slice(), &[2.0, 2.0]);
    }

    #[test]
    fn frame_v_matches_frame_operator_diagonal() {
        let mut rng = StdRng::seed_from_u64(1);
        let basis = random_unitary(&mut rng, 5);
        let fam = random_family(&mut rng, 5, 3);
        let g = random_signal(&mut rng, 5);
        let v = frame_v(&fam, &g).unwrap();
        let frame = build_frame(&basis, &fam, &g).unwrap();
        let tt = frame_operator(&frame);
        for k in 0..5 {
            assert!((tt[(k, k)].re - v[k]).abs() < 1e-10);
            assert!(tt[(k, k)].im.abs() < 1e-12);
        }
    }

    #[test]
    fn frame_bounds_basic() {
        let v = DVector::from_vec(vec![1.0, 4.0]);
        let b = frame_bounds(&v);
        assert_eq!(b.lower, 1.0);
        assert_eq!(b.upper, 4.0);
        assert!(b.is_frame);
        assert_eq!(b.argmin, 1);
        assert_eq!(b.argmax, 2);

        let v = DVector::from_vec(vec![1.0, 0.0, 2.0]);
        let b = frame_bounds(&v);
        assert!(!b.is_frame);
        assert_eq!(b.argmin, 2);
    }

    #[test]
    fn shuman_constant_ghat_is_tight() {
        // ĝ constant makes the multiplier frame tight at |c|².N scaling.
        let mut rng = StdRng::seed_from_u64(2);
        let basis = random_unitary(&mut rng, 6);
        let coeffs = SpectralCoefficients::new(vec![c(0.5, 0.25); 6]).unwrap();
        let window = igft(&coeffs, &basis).unwrap();
        let fam = shuman_family(&basis);
        let v = frame_v(&fam, &window).unwrap();
        let b = frame_bounds(&v);
        assert!(b.is_frame);
        assert!((b.upper - b.lower).abs() < 1e-10 * b.upper);
        // bound value: N · |c|² for orthogonal multipliers of norm √N
        let expected = 6.0 * c(0.5, 0.25).norm_sqr();
        assert!((b.lower - expected).abs() < 1e-9);
    }

    #[test]
    fn build_frame_trivial_case() {
        let basis = Eigenbasis::identity(2).unwrap();
        let fam = TranslationFamily::generic(vec![DMatrix::identity(2, 2)]).unwrap();
        let g = Signal::from_real(&[1.0, 2.0]).unwrap();
        let frame = build_frame(&basis, &fam, &g).unwrap();
        assert_eq!(frame.vectors().len(), 2);
        assert_eq!(frame.vectors()[0].as_slice(), &[c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(frame.vectors()[1].as_slice(), &[c(0.0, 0.0), c(2.0, 0.0)]);
    }

    #[test]
    fn build_frame_rejects_zero_window() {
        let basis = Eigenbasis::identity(2).unwrap();
        let fam = TranslationFamily::generic(vec![DMatrix::identity(2, 2)]).unwrap();
        let g = Signal::from_real(&[0.0, 0.0]).unwrap();
        assert!(matches!(
            build_frame(&basis, &fam, &g),
            Err(Error::ZeroWindow)
        ));
    }

    #[test]
    fn flat_order_is_ell_outer_m_inner() {
        let mut rng = StdRng::seed_from_u64(3);
        let basis = random_unitary(&mut rng, 3);
        let fam = random_family(&mut rng, 3, 2);
        let g = random_signal(&mut rng, 3);
        let frame = build_frame(&basis, &fam, &g).unwrap();
        for ell in 1..=3usize {
            for m in 1..=2usize {
                let pos = frame.flat_index(m, ell).unwrap();
                assert_eq!(frame.unflatten(pos).unwrap(), (m, ell));
                let op_image = &fam.operators()[m - 1] * g.entries();
                let expected = DVector::from_fn(3, |k, _| {
                    basis.matrix()[(k, ell - 1)] * op_image[k]
                });
                assert!((&frame.vectors()[pos] - expected).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn frame_operator_single_vector() {
        let frame = Frame::from_vectors(
            2,
            1,
            vec![
                DVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]),
                DVector::from_vec(vec![c(0.0, 0.0), c(0.0, 0.0)]),
            ],
        )
        .unwrap();
        let tt = frame_operator(&frame);
        assert!((tt[(0, 0)] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(tt[(1, 1)].norm() < 1e-15);
    }

    #[test]
    fn frame_operator_diagonality_random_sweep() {
        // the main structural fact, checked off the brute-force operator
        let mut rng = StdRng::seed_from_u64(4);
        for _ in 0..25 {
            let n = rng.gen_range(2..=8);
            let s = rng.gen_range(1..=5);
            let basis = random_unitary(&mut rng, n);
            let fam = random_family(&mut rng, n, s);
            let g = random_signal(&mut rng, n);
            let frame = build_frame(&basis, &fam, &g).unwrap();
            let tt = frame_operator(&frame);
            let total = tt.norm();
            let mut offdiag = 0.0f64;
            for r in 0..n {
                for c_ in 0..n {
                    if r != c_ {
                        offdiag += tt[(r, c_)].norm_sqr();
                    }
                }
            }
            assert!(offdiag.sqrt() <= 1e-10 * total);
        }
    }

    #[test]
    fn frame_operator_eigenvalues_match_bounds() {
        let mut rng = StdRng::seed_from_u64(5);
        let basis = random_unitary(&mut rng, 6);
        let fam = random_family(&mut rng, 6, 4);
        let g = random_signal(&mut rng, 6);
        let frame = build_frame(&basis, &fam, &g).unwrap();
        let tt = frame_operator(&frame);
        let eigs = hermitian_eigenvalues(&tt);
        let bounds = frame_bounds(&frame_v(&fam, &g).unwrap());
        assert!((eigs[0] - bounds.lower).abs() < 1e-9);
        assert!((eigs[eigs.len() - 1] - bounds.upper).abs() < 1e-9);
        // sorted v equals the spectrum
        let mut v: Vec<f64> = bounds.v.iter().copied().collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (e, vk) in eigs.iter().zip(v) {
            assert!((e - vk).abs() < 1e-9);
        }
    }

    #[test]
    fn gram_single_identity() {
        let fam = TranslationFamily::generic(vec![DMatrix::identity(3, 3)]).unwrap();
        let grams = gram_matrices(&fam);
        for k in 0..3 {
            let ck = &grams.matrices()[k];
            for l in 0..3 {
                for m in 0..3 {
                    let want = if l == k && m == k { Complex64::ONE } else { Complex64::ZERO };
                    assert_eq!(ck[(l, m)], want);
                }
            }
        }
    }

    #[test]
    fn gram_quadratic_form_equals_v() {
        let mut rng = StdRng::seed_from_u64(6);
        let fam = random_family(&mut rng, 4, 2);
        let g = random_signal(&mut rng, 4);
        let grams = gram_matrices(&fam);
        let v = frame_v(&fam, &g).unwrap();
        for k in 1..=4 {
            assert!((grams.quadratic_form(k, &g).unwrap() - v[k - 1]).abs() < 1e-10);
        }
    }

    #[test]
    fn gram_hermitian_psd() {
        let mut rng = StdRng::seed_from_u64(7);
        let fam = random_family(&mut rng, 5, 3);
        let grams = gram_matrices(&fam);
        for ck in grams.matrices() {
            assert!((ck - ck.adjoint()).norm() < 1e-12);
            let eigs = hermitian_eigenvalues(ck);
            assert!(eigs[0] >= -1e-10);
        }
    }

    #[test]
    fn shuman_z6_gram_matrices_are_identity() {
        // the flat character basis collapses every C_k to the identity
        let basis = z6_basis();
        let fam = shuman_family(&basis);
        let grams = gram_matrices(&fam);
        for ck in grams.matrices() {
            assert!((ck - DMatrix::<Complex64>::identity(6, 6)).norm() < 1e-9);
        }
        let (lower, upper) = window_free_bounds(&grams);
        assert!((lower - 1.0).abs() < 1e-9);
        assert!((upper - 1.0).abs() < 1e-9);
    }

    #[test]
    fn window_free_bounds_rank_one_family() {
        let fam = TranslationFamily::generic(vec![DMatrix::identity(3, 3)]).unwrap();
        let grams = gram_matrices(&fam);
        let (lower, upper) = window_free_bounds(&grams);
        assert!(lower.abs() < 1e-12);
        assert!((upper - 1.0).abs() < 1e-12);
    }

    #[test]
    fn window_free_bounds_sandwich_random_windows() {
        let mut rng = StdRng::seed_from_u64(8);
        let fam = random_family(&mut rng, 5, 6);
        let grams = gram_matrices(&fam);
        let (lower, upper) = window_free_bounds(&grams);
        for _ in 0..100 {
            let g = random_signal(&mut rng, 5);
            let norm = g.norm();
            let unit = Signal::new(g.entries().iter().map(|z| z / norm).collect()).unwrap();
            let v = frame_v(&fam, &unit).unwrap();
            let b = frame_bounds(&v);
            assert!(b.lower >= lower - 1e-10);
            assert!(b.upper <= upper + 1e-10);
        }
    }

    #[test]
    fn pencil_diagonal_case() {
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![c(2.0, 0.0), c(1.0, 0.0)]));
        let b = DMatrix::identity(2, 2);
        let eigs = pencil_eigenvalues(&a, &b).unwrap();
        assert!((eigs[0] - 1.0).abs() < 1e-12);
        assert!((eigs[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn pencil_known_roots() {
        // det(A − λB) = 2λ² − 6λ + 3 for A = [[2,1],[1,2]], B = diag(1,2)
        let a = DMatrix::from_row_slice(2, 2, &[c(2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)]);
        let b = DMatrix::from_diagonal(&DVector::from_vec(vec![c(1.0, 0.0), c(2.0, 0.0)]));
        let eigs = pencil_eigenvalues(&a, &b).unwrap();
        let lo = (3.0 - 3.0f64.sqrt()) / 2.0;
        let hi = (3.0 + 3.0f64.sqrt()) / 2.0;
        assert!((eigs[0] - lo).abs() < 1e-12);
        assert!((eigs[1] - hi).abs() < 1e-12);
    }

    #[test]
    fn pencil_eigenpairs_satisfy_equation_and_residual() {
        let mut rng = StdRng::seed_from_u64(9);
        let n = 4;
        let z = DMatrix::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let a = (&z + z.adjoint()) * c(0.5, 0.0);
        let w = DMatrix::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let b = &w * w.adjoint() + DMatrix::identity(n, n) * c(0.5, 0.0);
        let sol = solve_pencil(&a, &b).unwrap();
        let scale = a.norm().max(b.norm());
        for (lambda, v) in sol.eigenvalues.iter().zip(&sol.eigenvectors) {
            let residual = &a * v - (&b * v) * c(*lambda, 0.0);
            assert!(residual.norm() < 1e-9 * scale);
            // smallest singular value of (A − λB) is tiny: check via the
            // smallest eigenvalue of the squared matrix
            let m = &a - &b * c(*lambda, 0.0);
            let sq = m.adjoint() * &m;
            let eigs = hermitian_eigenvalues(&sq);
            assert!(eigs[0].abs().sqrt() <= 1e-7 * scale);
        }
    }

    #[test]
    fn pencil_rayleigh_sampling_sanity() {
        // Independent check of λ_max: Rayleigh quotients over 10⁴ random
        // directions never exceed it, and polishing the best sample with a
        // few power iterations of B⁻¹A (LU route, no Cholesky) lands on it.
        let mut rng = StdRng::seed_from_u64(10);
        let n = 3;
        let z = DMatrix::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let a = &z * z.adjoint() + DMatrix::identity(n, n) * c(0.1, 0.0);
        let w = DMatrix::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let b = &w * w.adjoint() + DMatrix::identity(n, n) * c(0.1, 0.0);
        let eigs = pencil_eigenvalues(&a, &b).unwrap();
        let top = eigs[eigs.len() - 1];
        let rayleigh = |u: &DVector<Complex64>| -> f64 {
            let num = (u.adjoint() * &a * u)[(0, 0)].re;
            let den = (u.adjoint() * &b * u)[(0, 0)].re;
            num / den
        };
        let mut best = f64::NEG_INFINITY;
        let mut best_dir = DVector::<Complex64>::zeros(n);
        for _ in 0..10_000 {
            let u = DVector::from_fn(n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let r = rayleigh(&u);
            if r > best {
                best = r;
                best_dir = u;
            }
        }
        assert!(best <= top + 1e-9);
        let lu = b.clone().lu();
        let mut u = best_dir;
        for _ in 0..100 {
            u = lu.solve(&(&a * &u)).expect("B invertible");
            let norm = u.norm();
            u /= c(norm, 0.0);
        }
        assert!((rayleigh(&u) - top).abs() < 1e-3 * top.abs().max(1.0));
    }

    #[test]
    fn pencil_rejects_indefinite_rhs() {
        let a = DMatrix::<Complex64>::identity(2, 2);
        let b = DMatrix::from_diagonal(&DVector::from_vec(vec![c(1.0, 0.0), c(-1.0, 0.0)]));
        assert!(matches!(
            pencil_eigenvalues(&a, &b),
            Err(Error::PencilNotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn sup_condition_all_equal_grams() {
        // The three cyclic shifts on N = 3 give C_k = I for every k, so
        // every pencil is flat and the supremum is the trivial value 1.
        let shift = |t: usize| {
            DMatrix::<Complex64>::from_fn(3, 3, |r, c_| {
                if (c_ + t) % 3 == r { Complex64::ONE } else { Complex64::ZERO }
            })
        };
        let fam = TranslationFamily::generic(vec![shift(0), shift(1), shift(2)]).unwrap();
        let grams = gram_matrices(&fam);
        for ck in grams.matrices() {
            assert!((ck - DMatrix::<Complex64>::identity(3, 3)).norm() < 1e-12);
        }
        let sup = sup_condition_number(&grams).unwrap();
        assert!((sup.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn sup_condition_witness_realizes_value() {
        let mut rng = StdRng::seed_from_u64(11);
        for trial in 0..10 {
            let n = 3;
            let fam = random_family(&mut rng, n, n + 1);
            let grams = gram_matrices(&fam);
            let sup = match sup_condition_number(&grams) {
                Ok(s) => s,
                Err(Error::SingularGram { .. }) => continue,
                Err(e) => panic!("{e}"),
            };
            let v = frame_v(&fam, &sup.witness).unwrap();
            let b = frame_bounds(&v);
            let realized = b.upper / b.lower;
            assert!(
                (realized - sup.value).abs() <= 1e-8 * sup.value.max(1.0),
                "trial {trial}: realized {realized} vs sup {}",
                sup.value
            );
            assert!((sup.witness.norm() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn sup_condition_reports_singular_gram() {
        // one operator (S < N) leaves every C_k rank-deficient
        let fam = TranslationFamily::generic(vec![DMatrix::<Complex64>::identity(3, 3)]).unwrap();
        let grams = gram_matrices(&fam);
        assert!(matches!(
            sup_condition_number(&grams),
            Err(Error::SingularGram { k: 1, .. })
        ));
    }

    #[test]
    fn multiplier_family_identity_cases() {
        let basis = Eigenbasis::identity(3).unwrap();
        let f = DMatrix::<Complex64>::identity(3, 3);
        let fam = multiplier_family(&basis, &f).unwrap();
        for (i, op) in fam.operators().iter().enumerate() {
            for r in 0..3 {
                for s in 0..3 {
                    let want = if r == i && s == i { Complex64::ONE } else { Complex64::ZERO };
                    assert!((op[(r, s)] - want).norm() < 1e-14);
                }
            }
        }

        // all-ones multiplier gives the identity operator for any basis
        let mut rng = StdRng::seed_from_u64(12);
        let basis = random_unitary(&mut rng, 4);
        let f = DMatrix::from_element(4, 1, Complex64::ONE);
        let fam = multiplier_family(&basis, &f).unwrap();
        assert!((fam.operators()[0].clone() - DMatrix::identity(4, 4)).norm() < 1e-12);
    }

    #[test]
    fn multiplier_family_reconstruction() {
        let mut rng = StdRng::seed_from_u64(13);
        let basis = random_unitary(&mut rng, 5);
        let f = DMatrix::from_fn(5, 3, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let fam = multiplier_family(&basis, &f).unwrap();
        assert!(fam.multiplier_defect(&basis).unwrap() < 1e-12);
        // conjugating back recovers the diagonal
        for i in 0..3 {
            let op = &fam.operators()[i];
            let diag = basis.matrix().adjoint() * op * basis.matrix();
            for r in 0..5 {
                for s in 0..5 {
                    if r == s {
                        assert!((diag[(r, r)] - f[(r, i)]).norm() < 1e-12);
                    } else {
                        assert!(diag[(r, s)].norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn multiplier_bounds_agree_with_generic_route() {
        let mut rng = StdRng::seed_from_u64(14);
        let basis = random_unitary(&mut rng, 5);
        let f = DMatrix::from_fn(5, 4, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let window = random_signal(&mut rng, 5);
        let closed = multiplier_bounds(&basis, &f, &window).unwrap();
        let fam = multiplier_family(&basis, &f).unwrap();
        let generic = frame_bounds(&frame_v(&fam, &window).unwrap());
        assert!((closed.lower - generic.lower).abs() < 1e-10);
        assert!((closed.upper - generic.upper).abs() < 1e-10);
        for k in 0..5 {
            assert!((closed.v[k] - generic.v[k]).abs() < 1e-10);
        }
    }

    #[test]
    fn multiplier_bounds_orthonormal_constant_ghat() {
        // orthonormal multiplier columns + constant ĝ: A = B = |c|²
        let mut rng = StdRng::seed_from_u64(15);
        let basis = random_unitary(&mut rng, 4);
        let f = random_unitary(&mut rng, 4).matrix().clone();
        let coeffs = SpectralCoefficients::new(vec![c(0.3, -0.6); 4]).unwrap();
        let window = igft(&coeffs, &basis).unwrap();
        let b = multiplier_bounds(&basis, &f, &window).unwrap();
        let expected = c(0.3, -0.6).norm_sqr();
        assert!((b.lower - expected).abs() < 1e-10);
        assert!((b.upper - expected).abs() < 1e-10);
    }

    #[test]
    fn multiplier_bounds_orthonormal_formula() {
        // orthonormal F: A = min_k Σ_j |φ_j(k)|² |ĝ(j)|²
        let mut rng = StdRng::seed_from_u64(16);
        let basis = random_unitary(&mut rng, 5);
        let f = random_unitary(&mut rng, 5).matrix().clone();
        let window = random_signal(&mut rng, 5);
        let b = multiplier_bounds(&basis, &f, &window).unwrap();
        let ghat = gft(&window, &basis).unwrap();
        let mut v = [0.0f64; 5];
        for k in 0..5 {
            for j in 0..5 {
                v[k] += basis.matrix()[(k, j)].norm_sqr() * ghat.entry(j).norm_sqr();
            }
        }
        let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!((b.lower - lo).abs() < 1e-10);
        assert!((b.upper - hi).abs() < 1e-10);
    }

    #[test]
    fn shuman_identity_basis_diagonal_case() {
        // Φ = I: T_i 𝔤 = √N 𝔤(i) e_i, bounds (N·min|𝔤|², N·max|𝔤|²)
        let basis = Eigenbasis::identity(3).unwrap();
        let fam = shuman_family(&basis);
        let g = Signal::from_real(&[1.0, 2.0, -0.5]).unwrap();
        for i in 0..3 {
            let image = &fam.operators()[i] * g.entries();
            for k in 0..3 {
                let want = if k == i {
                    c(3.0f64.sqrt(), 0.0) * g.entry(i)
                } else {
                    Complex64::ZERO
                };
                assert!((image[k] - want).norm() < 1e-12);
            }
        }
        let b = frame_bounds(&frame_v(&fam, &g).unwrap());
        assert!((b.lower - 3.0 * 0.25).abs() < 1e-12);
        assert!((b.upper - 3.0 * 4.0).abs() < 1e-12);
    }

    #[test]
    fn shuman_z6_tight_for_any_window() {
        let basis = z6_basis();
        let fam = shuman_family(&basis);
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..10 {
            let g = random_signal(&mut rng, 6);
            let b = frame_bounds(&frame_v(&fam, &g).unwrap());
            assert!(b.is_frame);
            assert!((b.upper / b.lower - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn shuman_bounds_equal_translate_norms() {
        // sharp bounds coincide with min/max over n of ‖T_n 𝔤‖²
        let mut rng = StdRng::seed_from_u64(18);
        let basis = random_unitary(&mut rng, 6);
        let fam = shuman_family(&basis);
        let g = Signal::from_real(&[0.4, -1.2, 0.0, 2.0, 0.7, -0.3]).unwrap();
        let b = frame_bounds(&frame_v(&fam, &g).unwrap());
        let mut norms: Vec<f64> = (1..=6)
            .map(|n_| {
                crate::spectral::translate(&g, n_, &basis)
                    .unwrap()
                    .norm()
                    .powi(2)
            })
            .collect();
        norms.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((b.lower - norms[0]).abs() < 1e-9);
        assert!((b.upper - norms[5]).abs() < 1e-9);
    }

    #[test]
    fn s3_paper_window_ratio_is_205_over_89() {
        // The sharp bounds for the published window on the published basis.
        // Verified against the brute-force frame operator; the closed
        // fraction is 205/89 (the originally reported 69/29 is not
        // attainable from these inputs; see the repository README).
        let basis = s3_basis();
        let fam = shuman_family(&basis);
        let g = paper_window();
        let b = frame_bounds(&frame_v(&fam, &g).unwrap());
        assert!(b.is_frame);
        let ratio = b.upper / b.lower;
        assert!(
            (ratio - 205.0 / 89.0).abs() < 1e-12,
            "measured {ratio}, expected 205/89 = {}",
            205.0 / 89.0
        );
        // cross-check against the brute-force operator spectrum
        let frame = build_frame(&basis, &fam, &g).unwrap();
        let eigs = hermitian_eigenvalues(&frame_operator(&frame));
        assert!((eigs[0] - b.lower).abs() < 1e-10);
        assert!((eigs[5] - b.upper).abs() < 1e-10);
        // exact rational values of the extremes: 89/147·6 and 205/147·6
        assert!((b.lower - 6.0 * 89.0 / 882.0).abs() < 1e-12);
        assert!((b.upper - 6.0 * 205.0 / 882.0).abs() < 1e-12);
    }

    #[test]
    fn gavili_n2_structure() {
        let basis = Eigenbasis::identity(2).unwrap();
        let fam = gavili_family(&basis, 0.0);
        let f = fam.multipliers().unwrap();
        assert!((f[(0, 0)] - Complex64::ONE).norm() < 1e-14);
        assert!((f[(1, 0)] - Complex64::ONE).norm() < 1e-14);
        assert!((f[(0, 1)] - Complex64::ONE).norm() < 1e-14);
        assert!((f[(1, 1)] + Complex64::ONE).norm() < 1e-14);
        let dot = (f.column(0).adjoint() * f.column(1))[(0, 0)];
        assert!(dot.norm() < 1e-14);
    }

    #[test]
    fn gavili_multiplier_orthogonality_various_n_and_phase() {
        let mut rng = StdRng::seed_from_u64(19);
        for &n in &[2usize, 3, 6, 17, 64] {
            let basis = Eigenbasis::identity(n).unwrap();
            let phase = rng.gen_range(0.0..std::f64::consts::TAU);
            let fam = gavili_family(&basis, phase);
            let f = fam.multipliers().unwrap();
            let gram = f.adjoint() * f;
            for k in 0..n {
                for l in 0..n {
                    let want = if k == l { c(n as f64, 0.0) } else { Complex64::ZERO };
                    assert!(
                        (gram[(k, l)] - want).norm() < 1e-12 * n as f64,
                        "n={n}, ({k},{l})"
                    );
                }
            }
        }
    }

    #[test]
    fn gavili_shift_power_identity_at_zero_phase() {
        let mut rng = StdRng::seed_from_u64(20);
        let basis = random_unitary(&mut rng, 6);
        let fam = gavili_family(&basis, 0.0);
        // A_α is the second operator (i = 2 ⇒ exponent 1)
        let a_alpha = &fam.operators()[1];
        let mut power = DMatrix::<Complex64>::identity(6, 6);
        for _ in 0..6 {
            power = &power * a_alpha;
        }
        assert!((power - DMatrix::identity(6, 6)).norm() < 1e-10);
        // unitarity of the shift
        assert!((a_alpha.adjoint() * a_alpha - DMatrix::identity(6, 6)).norm() < 1e-12);
    }

    #[test]
    fn gavili_bounds_match_shuman_bounds() {
        let mut rng = StdRng::seed_from_u64(21);
        let basis = random_unitary(&mut rng, 5);
        let g = random_signal(&mut rng, 5);
        let b_shuman = frame_bounds(&frame_v(&shuman_family(&basis), &g).unwrap());
        let b_gavili = frame_bounds(&frame_v(&gavili_family(&basis, 0.0), &g).unwrap());
        assert!((b_shuman.lower - b_gavili.lower).abs() < 1e-10);
        assert!((b_shuman.upper - b_gavili.upper).abs() < 1e-10);
    }

    #[test]
    fn analyze_energy_within_bounds_and_tight_case() {
        let mut rng = StdRng::seed_from_u64(22);
        let basis = z6_basis();
        let fam = shuman_family(&basis);
        let g = random_signal(&mut rng, 6);
        let frame = build_frame(&basis, &fam, &g).unwrap();
        let bounds = frame_bounds(&frame_v(&fam, &g).unwrap());
        for _ in 0..10 {
            let f = random_signal(&mut rng, 6);
            let coeffs = analyze(&frame, &f).unwrap();
            let energy: f64 = coeffs.iter().map(|z| z.norm_sqr()).sum();
            let fnorm = f.norm().powi(2);
            assert!(energy >= bounds.lower * fnorm - 1e-9);
            assert!(energy <= bounds.upper * fnorm + 1e-9);
            // tight frame: equality with A
            assert!((energy - bounds.lower * fnorm).abs() < 1e-9 * energy.max(1.0));
        }
    }

    #[test]
    fn synthesize_round_trip_z6() {
        let mut rng = StdRng::seed_from_u64(23);
        let basis = z6_basis();
        let fam = shuman_family(&basis);
        let g = random_signal(&mut rng, 6);
        let frame = build_frame(&basis, &fam, &g).unwrap();
        let f = random_signal(&mut rng, 6);
        let coeffs = analyze(&frame, &f).unwrap();
        let back = synthesize(&frame, &coeffs).unwrap();
        assert!(f.max_abs_diff(&back) < 1e-9);
    }

    #[test]
    fn synthesize_tight_frame_is_scaled_sum() {
        let mut rng = StdRng::seed_from_u64(24);
        let basis = z6_basis();
        let fam = shuman_family(&basis);
        let g = random_signal(&mut rng, 6);
        let frame = build_frame(&basis, &fam, &g).unwrap();
        let bounds = frame_bounds(&frame_v(&fam, &g).unwrap());
        let f = random_signal(&mut rng, 6);
        let coeffs = analyze(&frame, &f).unwrap();
        let back = synthesize(&frame, &coeffs).unwrap();
        // reconstruction = (1/A) Σ c_x g_x for a tight frame
        let mut acc = DVector::<Complex64>::zeros(6);
        for (cx, gx) in coeffs.iter().zip(frame.vectors()) {
            acc += gx * *cx;
        }
        let scaled = Signal::new(acc.iter().map(|z| z / c(bounds.lower, 0.0)).collect()).unwrap();
        assert!(back.max_abs_diff(&scaled) < 1e-9);
    }

    #[test]
    fn analyze_orthogonal_signal_gives_zero_coefficients() {
        // a window vanishing at vertex 2 (identity basis) leaves that
        // vertex uncovered; δ_2 is orthogonal to every frame vector
        let basis = Eigenbasis::identity(3).unwrap();
        let fam = TranslationFamily::generic(vec![DMatrix::identity(3, 3)]).unwrap();
        let g = Signal::from_real(&[1.0, 0.0, 1.0]).unwrap();
        let frame = build_frame(&basis, &fam, &g).unwrap();
        let bounds = frame_bounds(&frame_v(&fam, &g).unwrap());
        assert!(!bounds.is_frame);
        let f = Signal::delta(3, 2).unwrap();
        let coeffs = analyze(&frame, &f).unwrap();
        assert!(coeffs.iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn concurrent_reads_are_safe() {
        // shared immutable inputs across threads
        let basis = std::sync::Arc::new(z6_basis());
        let fam = std::sync::Arc::new(shuman_family(&basis));
        let handles: Vec<_> = (0..4)
            .map(|t| {
                let basis = basis.clone();
                let fam = fam.clone();
                std::thread::spawn(move || {
                    let mut rng = StdRng::seed_from_u64(t);
                    let w = random_signal(&mut rng, 6);
                    let b = frame_bounds(&frame_v(&fam, &w).unwrap());
                    let _ = crate::spectral::gft(&w, &basis).unwrap();
                    assert!((b.upper / b.lower - 1.0).abs() < 1e-9);
                })
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
    }

    #[test]
    fn synthesize_non_frame_errors() {
        // window orthogonal to a basis direction in the identity basis
        let basis = Eigenbasis::identity(3).unwrap();
        let fam = TranslationFamily::generic(vec![DMatrix::identity(3, 3)]).unwrap();
        let g = Signal::from_real(&[1.0, 0.0, 1.0]).unwrap();
        let frame = build_frame(&basis, &fam, &g).unwrap();
        let coeffs = analyze(&frame, &Signal::from_real(&[1.0, 1.0, 1.0]).unwrap()).unwrap();
        assert!(matches!(
            synthesize(&frame, &coeffs),
            Err(Error::NotAFrame { .. })
        ));
    }

    #[test]
    fn random_windows_never_exceed_sup() {
        let mut rng = StdRng::seed_from_u64(25);
        let fam = random_family(&mut rng, 4, 5);
        let grams = gram_matrices(&fam);
        let sup = match sup_condition_number(&grams) {
            Ok(s) => s,
            Err(_) => return,
        };
        for _ in 0..1000 {
            let g = random_signal(&mut rng, 4);
            let norm = g.norm();
            let unit = Signal::new(g.entries().iter().map(|z| z / norm).collect()).unwrap();
            let b = frame_bounds(&frame_v(&fam, &unit).unwrap());
            assert!(b.upper / b.lower <= sup.value + 1e-8);
        }
    }

    mod properties {
        use super::{
            build_frame, frame_operator, frame_v, gram_matrices, hermitian_eigenvalues,
            multiplier_bounds, random_family, random_signal, random_unitary,
        };
        use crate::spectral::gft;
        use nalgebra::DMatrix;
        use num_complex::Complex64;
        use proptest::prelude::*;
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn diagonal_frame_operator(seed in 0u64..4096) {
                let mut rng = StdRng::seed_from_u64(seed);
                let n = rng.gen_range(2..=6);
                let s = rng.gen_range(1..=4);
                let basis = random_unitary(&mut rng, n);
                let fam = random_family(&mut rng, n, s);
                let g = random_signal(&mut rng, n);
                let frame = build_frame(&basis, &fam, &g).unwrap();
                let tt = frame_operator(&frame);
                let v = frame_v(&fam, &g).unwrap();
                for r in 0..n {
                    for c_ in 0..n {
                        if r == c_ {
                            prop_assert!((tt[(r, r)].re - v[r]).abs() <= 1e-9 * v.max().max(1.0));
                        } else {
                            prop_assert!(tt[(r, c_)].norm() <= 1e-10 * tt.norm());
                        }
                    }
                }
            }

            #[test]
            fn gram_identity_quadratic(seed in 0u64..4096) {
                let mut rng = StdRng::seed_from_u64(seed);
                let n = rng.gen_range(2..=5);
                let s = rng.gen_range(1..=4);
                let fam = random_family(&mut rng, n, s);
                let g = random_signal(&mut rng, n);
                let grams = gram_matrices(&fam);
                let v = frame_v(&fam, &g).unwrap();
                for k in 1..=n {
                    prop_assert!((grams.quadratic_form(k, &g).unwrap() - v[k - 1]).abs() <= 1e-10 * v.max().max(1.0));
                }
            }

            #[test]
            fn ff_star_envelope(seed in 0u64..4096) {
                // A ≥ λ_min(FF*)·min|ĝ|², B ≤ λ_max(FF*)·max|ĝ|²
                let mut rng = StdRng::seed_from_u64(seed);
                let n = rng.gen_range(2..=5);
                let s = rng.gen_range(1..=5);
                let basis = random_unitary(&mut rng, n);
                let f = DMatrix::from_fn(n, s, |_, _| {
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                });
                let window = random_signal(&mut rng, n);
                let b = multiplier_bounds(&basis, &f, &window).unwrap();
                let ff = &f * f.adjoint();
                let eigs = hermitian_eigenvalues(&ff);
                let ghat = gft(&window, &basis).unwrap();
                let gmin = ghat.entries().iter().map(|z| z.norm_sqr()).fold(f64::INFINITY, f64::min);
                let gmax = ghat.entries().iter().map(|z| z.norm_sqr()).fold(f64::NEG_INFINITY, f64::max);
                prop_assert!(b.lower >= eigs[0] * gmin - 1e-9);
                prop_assert!(b.upper <= eigs[eigs.len() - 1] * gmax + 1e-9);
            }
        }
    }
}
