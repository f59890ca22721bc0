//! Finite groups, unitary irreducible representations, and Cayley graphs.
//!
//! A group is stored as its multiplication table (element 1 is the
//! identity). A complete set of unitary irreps turns a normal Cayley graph
//! into an explicitly diagonalizable object: the scaled coordinate
//! functionals
//!
//! ```text
//! φ_{i,j}^π = √(d_π / N) (π_{i,j}(g_1), …, π_{i,j}(g_N))ᵀ
//! ```
//!
//! form an orthonormal eigenbasis of the adjacency matrix whenever the
//! generating set is closed under conjugation, with one eigenvalue
//! `(1/d_π) Σ_{s∈S} χ_π(s)` per irrep (multiplicity `d_π²`).
//!
//! Irreps for generic groups are loaded from files; only `Z_n` and `S_3`
//! are built in.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::spectral::{ColumnTag, Eigenbasis, Provenance, Signal, SpectralCoefficients};

/// Homomorphism / unitarity tolerance for irrep validation.
const IRREP_TOL: f64 = 1e-10;
/// Schur orthogonality tolerance.
const SCHUR_TOL: f64 = 1e-9;
/// Order up to which associativity is checked exhaustively at load.
const ASSOC_EXHAUSTIVE_LIMIT: usize = 64;
/// Number of sampled triples for large groups.
const ASSOC_SAMPLES: usize = 4096;

/// A finite group given by its multiplication table. Elements are 1-based;
/// element 1 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupData {
    order: usize,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl GroupData {
    /// Validates and adopts a multiplication table: Latin square, identity
    /// row and column, unique inverses, associativity (exhaustive up to
    /// order 64, sampled deterministically above).
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "row {} has length {}, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x == 0 || x > n {
                    return Err(Error::InvalidGroup(format!(
                        "entry {x} out of range in row {}",
                        i + 1
                    )));
                }
                if seen[x - 1] {
                    return Err(Error::InvalidGroup(format!(
                        "row {} is not a permutation",
                        i + 1
                    )));
                }
                seen[x - 1] = true;
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for row in &table {
                let x = row[j];
                if seen[x - 1] {
                    return Err(Error::InvalidGroup(format!(
                        "column {} is not a permutation",
                        j + 1
                    )));
                }
                seen[x - 1] = true;
            }
        }
        for g in 1..=n {
            if table[0][g - 1] != g || table[g - 1][0] != g {
                return Err(Error::InvalidGroup(
                    "element 1 is not a two-sided identity".into(),
                ));
            }
        }
        let mut inverse = vec![0usize; n];
        for g in 1..=n {
            let mut found = None;
            for h in 1..=n {
                if table[g - 1][h - 1] == 1 {
                    found = Some(h);
                    break;
                }
            }
            let h = found
                .ok_or_else(|| Error::InvalidGroup(format!("element {g} has no inverse")))?;
            if table[h - 1][g - 1] != 1 {
                return Err(Error::InvalidGroup(format!(
                    "inverse of element {g} is one-sided"
                )));
            }
            inverse[g - 1] = h;
        }
        let check = |a: usize, b: usize, c: usize| -> bool {
            table[table[a - 1][b - 1] - 1][c - 1] == table[a - 1][table[b - 1][c - 1] - 1]
        };
        if n <= ASSOC_EXHAUSTIVE_LIMIT {
            for a in 1..=n {
                for b in 1..=n {
                    for c in 1..=n {
                        if !check(a, b, c) {
                            return Err(Error::InvalidGroup(format!(
                                "associativity fails at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else {
            // Deterministic LCG sampling keeps load time bounded for big tables.
            let mut state = 0x9e3779b97f4a7c15u64;
            for _ in 0..ASSOC_SAMPLES {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let a = (state >> 33) as usize % n + 1;
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let b = (state >> 33) as usize % n + 1;
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let c = (state >> 33) as usize % n + 1;
                if !check(a, b, c) {
                    return Err(Error::InvalidGroup(format!(
                        "associativity fails at ({a}, {b}, {c})"
                    )));
                }
            }
        }
        Ok(Self {
            order: n,
            table,
            inverse,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Product `a · b` (1-based).
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a - 1][b - 1]
    }

    /// Inverse of `a` (1-based).
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a - 1]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

/// A unitary irreducible representation: one `d × d` matrix per element.
#[derive(Debug, Clone)]
pub struct Irrep {
    pub name: String,
    pub degree: usize,
    matrices: Vec<DMatrix<Complex64>>,
}

impl Irrep {
    pub fn new(name: impl Into<String>, degree: usize, matrices: Vec<DMatrix<Complex64>>) -> Self {
        Self {
            name: name.into(),
            degree,
            matrices,
        }
    }

    /// Representation matrix of element `g` (1-based).
    pub fn matrix(&self, g: usize) -> &DMatrix<Complex64> {
        &self.matrices[g - 1]
    }

    /// Character `χ_π(g) = Tr π(g)`.
    pub fn character(&self, g: usize) -> Complex64 {
        self.matrices[g - 1].trace()
    }

    pub fn matrices(&self) -> &[DMatrix<Complex64>] {
        &self.matrices
    }
}

/// A complete set of irreps covering the dual of the group.
#[derive(Debug, Clone)]
pub struct IrrepSet {
    irreps: Vec<Irrep>,
}

impl IrrepSet {
    pub fn new(irreps: Vec<Irrep>) -> Self {
        Self { irreps }
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    /// `Σ d_π²`, which must equal the group order for a complete set.
    pub fn degree_square_sum(&self) -> usize {
        self.irreps.iter().map(|p| p.degree * p.degree).sum()
    }
}

/// Defects measured by [`validate_irrep_set`]; the report carries failures
/// instead of erroring.
#[derive(Debug, Clone, Copy)]
pub struct IrrepValidationReport {
    pub max_homomorphism_defect: f64,
    pub max_unitarity_defect: f64,
    pub max_schur_defect: f64,
    pub completeness: bool,
    pub identity_ok: bool,
    pub pass: bool,
}

/// Checks homomorphism, unitarity, identity, Schur orthogonality and
/// completeness (`Σ d² = N`) of an irrep set against a group table.
pub fn validate_irrep_set(group: &GroupData, set: &IrrepSet) -> IrrepValidationReport {
    let n = group.order();
    let mut hom = 0.0f64;
    let mut unit = 0.0f64;
    let mut identity_ok = true;

    for irrep in set.irreps() {
        let d = irrep.degree;
        if irrep.matrices().len() != n {
            // Wrong shape: flag as a maximal defect rather than panicking.
            return IrrepValidationReport {
                max_homomorphism_defect: f64::INFINITY,
                max_unitarity_defect: f64::INFINITY,
                max_schur_defect: f64::INFINITY,
                completeness: false,
                identity_ok: false,
                pass: false,
            };
        }
        let id = DMatrix::<Complex64>::identity(d, d);
        if (irrep.matrix(1) - &id).norm() > IRREP_TOL {
            identity_ok = false;
        }
        for g in 1..=n {
            let m = irrep.matrix(g);
            unit = unit.max(((m.adjoint() * m) - &id).norm());
            for h in 1..=n {
                let prod = irrep.matrix(g) * irrep.matrix(h);
                hom = hom.max((&prod - irrep.matrix(group.mul(g, h))).norm());
            }
        }
    }

    // Schur: Σ_g conj(π^{(j)}_{n,m}(g)) π^{(k)}_{n',m'}(g) = δδδ · N / d.
    let mut schur = 0.0f64;
    for (j, pj) in set.irreps().iter().enumerate() {
        for (k, pk) in set.irreps().iter().enumerate() {
            for a in 0..pj.degree {
                for b in 0..pj.degree {
                    for c in 0..pk.degree {
                        for e in 0..pk.degree {
                            let mut sum = Complex64::ZERO;
                            for g in 1..=n {
                                sum += pj.matrix(g)[(a, b)].conj() * pk.matrix(g)[(c, e)];
                            }
                            let expected = if j == k && a == c && b == e {
                                Complex64::new(n as f64 / pj.degree as f64, 0.0)
                            } else {
                                Complex64::ZERO
                            };
                            schur = schur.max((sum - expected).norm());
                        }
                    }
                }
            }
        }
    }

    let completeness = set.degree_square_sum() == n;
    IrrepValidationReport {
        max_homomorphism_defect: hom,
        max_unitarity_defect: unit,
        max_schur_defect: schur,
        completeness,
        identity_ok,
        pass: completeness
            && identity_ok
            && hom <= IRREP_TOL
            && unit <= IRREP_TOL
            && schur <= SCHUR_TOL,
    }
}

/// The cyclic group `Z_n` with its `n` characters `χ_k(j) = γ^{jk}`,
/// `γ = e^{2πi/n}`. Element `j` (1-based) is the residue `j − 1`.
pub fn cyclic_group(n: usize) -> Result<(GroupData, IrrepSet)> {
    if n == 0 {
        return Err(Error::InvalidGroup("cyclic group order must be positive".into()));
    }
    let table: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n + 1).collect())
        .collect();
    let group = GroupData::new(table)?;
    let tau = std::f64::consts::TAU;
    let irreps = (0..n)
        .map(|k| {
            let matrices = (0..n)
                .map(|j| {
                    let z = Complex64::from_polar(1.0, tau * (j as f64) * (k as f64) / n as f64);
                    DMatrix::from_element(1, 1, z)
                })
                .collect();
            Irrep::new(format!("chi{k}"), 1, matrices)
        })
        .collect();
    Ok((group, IrrepSet::new(irreps)))
}

/// The symmetric group `S_3` with element order
/// `e, (12), (13), (23), (123), (132)` and the unitary irreps whose scaled
/// coordinate functionals give the standard published eigenbasis of
/// `Cay(S_3; {(12),(13),(23)})`: trivial, sign, and the two-dimensional
/// irrep with the rotations diagonalized (`ω = e^{2πi/3}`).
pub fn symmetric_group_s3() -> (GroupData, IrrepSet) {
    let table = vec![
        vec![1, 2, 3, 4, 5, 6],
        vec![2, 1, 6, 5, 4, 3],
        vec![3, 5, 1, 6, 2, 4],
        vec![4, 6, 5, 1, 3, 2],
        vec![5, 3, 4, 2, 6, 1],
        vec![6, 4, 2, 3, 1, 5],
    ];
    let group = GroupData::new(table).expect("S3 table is a valid group");

    let one = Complex64::ONE;
    let zero = Complex64::ZERO;
    let omega = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
    let omega2 = omega * omega;

    let trivial = Irrep::new(
        "trivial",
        1,
        (0..6).map(|_| DMatrix::from_element(1, 1, one)).collect(),
    );
    let sign_values = [1.0, -1.0, -1.0, -1.0, 1.0, 1.0];
    let sign = Irrep::new(
        "sign",
        1,
        sign_values
            .iter()
            .map(|&s| DMatrix::from_element(1, 1, Complex64::new(s, 0.0)))
            .collect(),
    );
    let m = |a: Complex64, b: Complex64, c: Complex64, d: Complex64| {
        DMatrix::from_row_slice(2, 2, &[a, b, c, d])
    };
    let standard = Irrep::new(
        "standard",
        2,
        vec![
            m(one, zero, zero, one),       // e
            m(zero, one, one, zero),       // (12)
            m(zero, omega, omega2, zero),  // (13)
            m(zero, omega2, omega, zero),  // (23)
            m(omega, zero, zero, omega2),  // (123)
            m(omega2, zero, zero, omega),  // (132)
        ],
    );
    (group, IrrepSet::new(vec![trivial, sign, standard]))
}

/// Orthonormal basis of scaled coordinate functionals. Columns are ordered
/// by irrep, then within an irrep with the functional's row index varying
/// fastest: `π_{1,1}, π_{2,1}, …, π_{1,2}, …` (the column-major sweep of the
/// matrix entries, matching the published K3,3 bases). Errors if the irrep
/// set fails validation.
pub fn coordinate_basis(group: &GroupData, set: &IrrepSet) -> Result<Eigenbasis> {
    let report = validate_irrep_set(group, set);
    if !report.pass {
        return Err(Error::InvalidIrrepSet(format!(
            "homomorphism defect {:.3e}, unitarity defect {:.3e}, schur defect {:.3e}, complete: {}",
            report.max_homomorphism_defect,
            report.max_unitarity_defect,
            report.max_schur_defect,
            report.completeness
        )));
    }
    let n = group.order();
    let mut columns = DMatrix::<Complex64>::zeros(n, n);
    let mut tags = Vec::with_capacity(n);
    let mut col = 0usize;
    for (k, irrep) in set.irreps().iter().enumerate() {
        let d = irrep.degree;
        let scale = (d as f64 / n as f64).sqrt();
        for j in 0..d {
            for i in 0..d {
                for g in 1..=n {
                    columns[(g - 1, col)] =
                        irrep.matrix(g)[(i, j)] * Complex64::new(scale, 0.0);
                }
                tags.push(ColumnTag {
                    irrep: k + 1,
                    row: i + 1,
                    col: j + 1,
                });
                col += 1;
            }
        }
    }
    let basis = Eigenbasis::new(columns, None, Provenance::GroupRepresentation)?;
    Ok(basis.with_tags(tags))
}

/// A Cayley graph together with its normality flag.
#[derive(Debug, Clone)]
pub struct CayleyGraph {
    pub graph: Graph,
    /// Whether `g S g⁻¹ = S` for every `g` (checked exhaustively).
    pub normal: bool,
}

/// `Cay(G; S)`: vertices are group elements, `(x, y)` is an edge exactly
/// when `x⁻¹ y ∈ S`. The graph is undirected when `S = S⁻¹`. The identity
/// may not be a generator (it would create self-loops).
pub fn cayley_graph(group: &GroupData, generators: &[usize]) -> Result<CayleyGraph> {
    let n = group.order();
    if generators.is_empty() {
        return Err(Error::InvalidGeneratingSet("generating set is empty".into()));
    }
    let mut in_set = vec![false; n + 1];
    for &s in generators {
        if s == 0 || s > n {
            return Err(Error::InvalidGeneratingSet(format!(
                "generator {s} out of range 1..={n}"
            )));
        }
        if s == 1 {
            return Err(Error::InvalidGeneratingSet(
                "identity in the generating set creates self-loops".into(),
            ));
        }
        in_set[s] = true;
    }
    let symmetric = (2..=n).all(|s| !in_set[s] || in_set[group.inv(s)]);
    let normal = (1..=n).all(|g| {
        (2..=n).all(|s| {
            if !in_set[s] {
                return true;
            }
            let conj = group.mul(group.mul(g, s), group.inv(g));
            in_set[conj]
        })
    });
    let mut edges = Vec::new();
    for x in 1..=n {
        for y in 1..=n {
            if x == y {
                continue;
            }
            if in_set[group.mul(group.inv(x), y)] {
                if symmetric && x > y {
                    continue; // store one orientation of each undirected edge
                }
                edges.push((x, y));
            }
        }
    }
    let graph = Graph::new(n, edges, !symmetric)?;
    Ok(CayleyGraph { graph, normal })
}

/// Eigenvalue of the adjacency matrix attached to one irrep of a normal
/// Cayley graph, with its multiplicity `d_π²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IrrepEigenvalue {
    /// 1-based index into the irrep set.
    pub irrep: usize,
    pub value: Complex64,
    pub multiplicity: usize,
}

/// Per-irrep adjacency eigenvalues `(1/d_π) Σ_{s∈S} χ_π(s)` of
/// `Cay(G; S)`. Requires `S` closed under conjugation; rejects otherwise,
/// naming a witness pair.
pub fn cayley_eigenvalues(
    group: &GroupData,
    generators: &[usize],
    set: &IrrepSet,
) -> Result<Vec<IrrepEigenvalue>> {
    let n = group.order();
    if generators.is_empty() {
        return Err(Error::InvalidGeneratingSet("generating set is empty".into()));
    }
    let mut in_set = vec![false; n + 1];
    for &s in generators {
        if s == 0 || s > n {
            return Err(Error::InvalidGeneratingSet(format!(
                "generator {s} out of range 1..={n}"
            )));
        }
        in_set[s] = true;
    }
    for g in 1..=n {
        for &s in generators {
            let conj = group.mul(group.mul(g, s), group.inv(g));
            if !in_set[conj] {
                return Err(Error::NotConjugationClosed { g, s });
            }
        }
    }
    Ok(set
        .irreps()
        .iter()
        .enumerate()
        .map(|(k, irrep)| {
            let sum: Complex64 = generators.iter().map(|&s| irrep.character(s)).sum();
            IrrepEigenvalue {
                irrep: k + 1,
                value: sum / Complex64::new(irrep.degree as f64, 0.0),
                multiplicity: irrep.degree * irrep.degree,
            }
        })
        .collect())
}

/// A window prescribed by one transform coefficient per irrep, constant
/// across each irrep's block of basis columns.
#[derive(Debug, Clone, PartialEq)]
pub struct RepWindowSpec {
    values: Vec<Complex64>,
}

impl RepWindowSpec {
    pub fn new(values: Vec<Complex64>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Expands to the full coefficient vector: `ĝ_π` repeated `d_π²` times
    /// per irrep block, in coordinate-basis column order.
    pub fn to_coefficients(&self, set: &IrrepSet) -> Result<SpectralCoefficients> {
        if self.values.len() != set.len() {
            return Err(Error::DimensionMismatch {
                context: "representation window",
                expected: set.len(),
                found: self.values.len(),
            });
        }
        let mut entries = Vec::new();
        for (irrep, &value) in set.irreps().iter().zip(&self.values) {
            entries.extend(std::iter::repeat_n(value, irrep.degree * irrep.degree));
        }
        SpectralCoefficients::new(entries)
    }

    /// The window signal `𝔤 = Φ ĝ` in the coordinate basis of the group.
    pub fn window(&self, group: &GroupData, set: &IrrepSet) -> Result<Signal> {
        let basis = coordinate_basis(group, set)?;
        let coeffs = self.to_coefficients(set)?;
        crate::spectral::igft(&coeffs, &basis)
    }
}

/// Translation computed from characters:
/// `(T_ℓ 𝔤)(k) = (1/√N) Σ_π d_π ĝ_π χ_π(ℓ⁻¹ k)`.
///
/// Valid for windows that are constant on every irrep block; agrees with
/// the generic spectral translation of the expanded window.
pub fn character_translate(
    spec: &RepWindowSpec,
    ell: usize,
    group: &GroupData,
    set: &IrrepSet,
) -> Result<Signal> {
    let n = group.order();
    if ell == 0 || ell > n {
        return Err(Error::IndexOutOfRange {
            context: "character_translate",
            index: ell,
            n,
        });
    }
    if spec.values().len() != set.len() {
        return Err(Error::DimensionMismatch {
            context: "character_translate",
            expected: set.len(),
            found: spec.values().len(),
        });
    }
    let inv_ell = group.inv(ell);
    let scale = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    let entries = (1..=n)
        .map(|k| {
            let arg = group.mul(inv_ell, k);
            let mut sum = Complex64::ZERO;
            for (irrep, &ghat) in set.irreps().iter().zip(spec.values()) {
                sum += Complex64::new(irrep.degree as f64, 0.0) * ghat * irrep.character(arg);
            }
            sum * scale
        })
        .collect();
    Signal::new(entries)
}

/// Permutation matrix of the left regular representation,
/// `(L(g) f)(h) = f(g⁻¹ h)`: entry `(i, j)` is 1 exactly when
/// `g_i = g · g_j`.
pub fn left_regular_matrix(group: &GroupData, g: usize) -> Result<DMatrix<f64>> {
    let n = group.order();
    if g == 0 || g > n {
        return Err(Error::IndexOutOfRange {
            context: "left_regular_matrix",
            index: g,
            n,
        });
    }
    let mut m = DMatrix::zeros(n, n);
    for j in 1..=n {
        let i = group.mul(g, j);
        m[(i - 1, j - 1)] = 1.0;
    }
    Ok(m)
}

/// Right regular representation `(R(g) f)(h) = f(h g)`: entry `(i, j)` is 1
/// exactly when `g_i = g_j · g⁻¹`.
pub fn right_regular_matrix(group: &GroupData, g: usize) -> Result<DMatrix<f64>> {
    let n = group.order();
    if g == 0 || g > n {
        return Err(Error::IndexOutOfRange {
            context: "right_regular_matrix",
            index: g,
            n,
        });
    }
    let inv = group.inv(g);
    let mut m = DMatrix::zeros(n, n);
    for j in 1..=n {
        let i = group.mul(j, inv);
        m[(i - 1, j - 1)] = 1.0;
    }
    Ok(m)
}

/// Whether a vertex permutation preserves the edge set:
/// `(perm(x), perm(y))` is an edge exactly when `(x, y)` is.
/// `perm` maps 1-based vertex `x` to `perm[x − 1]`.
pub fn check_automorphism(graph: &Graph, perm: &[usize]) -> Result<bool> {
    let n = graph.vertex_count();
    if perm.len() != n {
        return Err(Error::DimensionMismatch {
            context: "check_automorphism",
            expected: n,
            found: perm.len(),
        });
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p == 0 || p > n {
            return Err(Error::IndexOutOfRange {
                context: "check_automorphism",
                index: p,
                n,
            });
        }
        if seen[p - 1] {
            return Err(Error::InvalidGraph(format!(
                "permutation repeats image {p}"
            )));
        }
        seen[p - 1] = true;
    }
    for x in 1..=n {
        for y in 1..=n {
            if x == y {
                continue;
            }
            if graph.has_edge(x, y) != graph.has_edge(perm[x - 1], perm[y - 1]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Permutation of vertices induced by `L(g)` (image list, 1-based):
/// vertex `x` maps to `g · x`.
pub fn left_translation_permutation(group: &GroupData, g: usize) -> Result<Vec<usize>> {
    let n = group.order();
    if g == 0 || g > n {
        return Err(Error::IndexOutOfRange {
            context: "left_translation_permutation",
            index: g,
            n,
        });
    }
    Ok((1..=n).map(|x| group.mul(g, x)).collect())
}
