//! Graphs, their matrices, and a deterministic numeric eigenbasis.
//!
//! The eigenbasis policy fixes the arbitrariness a numeric eigensolver has
//! inside degenerate eigenspaces: eigenvalues are grouped with a relative
//! tolerance, each eigenspace is re-spanned by projecting the canonical
//! coordinate vectors onto it (greedy pivoted Gram–Schmidt with rounded
//! pivot comparison), and every column is phase-fixed so its first nonzero
//! entry is real positive. Two runs on identical input produce bit-identical
//! output, and the result does not depend on which basis the solver chose
//! within an eigenspace.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{Eigenbasis, Provenance};

/// An unweighted graph with 1-based vertex labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    directed: bool,
}

impl Graph {
    /// Builds a graph, validating endpoints, self-loops, and duplicates.
    /// For undirected graphs, `(i, j)` and `(j, i)` are the same edge.
    pub fn new(n: usize, edges: Vec<(usize, usize)>, directed: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("vertex count must be at least 1".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for &(i, j) in &edges {
            if i == 0 || i > n || j == 0 || j > n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({i}, {j}) has an endpoint outside 1..={n}"
                )));
            }
            if i == j {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {i}")));
            }
            let key = if directed || i < j { (i, j) } else { (j, i) };
            if !seen.insert(key) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({i}, {j})")));
            }
        }
        let mut edges = edges;
        if !directed {
            for e in edges.iter_mut() {
                if e.0 > e.1 {
                    *e = (e.1, e.0);
                }
            }
        }
        edges.sort_unstable();
        Ok(Self { n, edges, directed })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Edge test honoring directedness (1-based endpoints).
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        if self.directed {
            self.edges.binary_search(&(i, j)).is_ok()
        } else {
            let key = if i < j { (i, j) } else { (j, i) };
            self.edges.binary_search(&key).is_ok()
        }
    }
}

/// Which matrix a [`GraphMatrix`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    Adjacency,
    Laplacian,
}

/// A real matrix associated with a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphMatrix {
    kind: MatrixKind,
    values: DMatrix<f64>,
    symmetric: bool,
}

impl GraphMatrix {
    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn values(&self) -> &DMatrix<f64> {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.nrows()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }
}

/// Adjacency matrix: entry `(i, j)` is 1 exactly when the edge is present.
pub fn adjacency(g: &Graph) -> GraphMatrix {
    let n = g.vertex_count();
    let mut a = DMatrix::zeros(n, n);
    for &(i, j) in g.edges() {
        a[(i - 1, j - 1)] = 1.0;
        if !g.is_directed() {
            a[(j - 1, i - 1)] = 1.0;
        }
    }
    GraphMatrix {
        kind: MatrixKind::Adjacency,
        values: a,
        symmetric: !g.is_directed(),
    }
}

/// Combinatorial Laplacian `L = D − A`. Undirected input only.
pub fn laplacian(g: &Graph) -> Result<GraphMatrix> {
    if g.is_directed() {
        return Err(Error::DirectedGraph("laplacian"));
    }
    let a = adjacency(g);
    let n = g.vertex_count();
    let mut l = -a.values;
    for i in 0..n {
        let degree: f64 = (0..n).map(|j| if j == i { 0.0 } else { -l[(i, j)] }).sum();
        l[(i, i)] = degree;
    }
    Ok(GraphMatrix {
        kind: MatrixKind::Laplacian,
        values: l,
        symmetric: true,
    })
}

/// Relative tolerance used to group nearby eigenvalues into one eigenspace.
const EIGENVALUE_GROUP_TOL: f64 = 1e-8;
/// Resolution for pivot comparisons in the in-eigenspace selection.
const PIVOT_RESOLUTION: f64 = 1e-6;
/// Threshold below which a leading entry does not anchor the phase fix.
const PHASE_FIX_THRESHOLD: f64 = 1e-9;

/// Deterministic orthonormal eigenbasis of a symmetric graph matrix.
///
/// Eigenvalues are returned ascending. Inside each (numerically grouped)
/// eigenspace the basis is the greedy pivoted Gram–Schmidt of the projected
/// canonical vectors `P e_1, …, P e_N`, which depends only on the eigenspace
/// itself; columns are sign-fixed on their first entry above `1e-9`.
pub fn numeric_eigenbasis(m: &GraphMatrix) -> Result<Eigenbasis> {
    let n = m.dim();
    let values = m.values();
    let mut asym = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            asym = asym.max((values[(i, j)] - values[(j, i)]).abs());
        }
    }
    if !m.is_symmetric() || asym > 0.0 {
        return Err(Error::NotSymmetric { defect: asym });
    }

    let eig = values.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .partial_cmp(&eig.eigenvalues[b])
            .expect("symmetric eigenvalues are finite")
    });

    let max_abs = (0..n).fold(0.0f64, |acc, i| acc.max(eig.eigenvalues[i].abs()));
    let group_tol = EIGENVALUE_GROUP_TOL * max_abs;

    let mut columns = DMatrix::<Complex64>::zeros(n, n);
    let mut labels = Vec::with_capacity(n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n
            && (eig.eigenvalues[order[end]] - eig.eigenvalues[order[end - 1]]).abs() <= group_tol
        {
            end += 1;
        }
        let group: Vec<usize> = order[start..end].to_vec();
        let mean: f64 =
            group.iter().map(|&i| eig.eigenvalues[i]).sum::<f64>() / group.len() as f64;

        // Projector onto the eigenspace; independent of the solver's choice
        // of basis inside the group.
        let mut proj = DMatrix::<f64>::zeros(n, n);
        for &i in &group {
            let v = eig.eigenvectors.column(i);
            proj += v * v.transpose();
        }
        let picked = canonical_span(&proj, group.len());
        for (offset, col) in picked.into_iter().enumerate() {
            let fixed = phase_fix_real(col);
            for r in 0..n {
                columns[(r, start + offset)] = Complex64::new(fixed[r], 0.0);
            }
            labels.push(mean);
        }
        start = end;
    }

    let basis = Eigenbasis::new(columns, Some(labels), Provenance::NumericEigensolver)?;
    let defect = reconstruction_defect(m, &basis);
    let scale = values.norm().max(1.0);
    if defect > 1e-8 * scale {
        return Err(Error::EigensolverFailure(format!(
            "reconstruction defect {defect:.3e} exceeds 1e-8 * {scale:.3e}"
        )));
    }
    Ok(basis)
}

/// `‖M − Φ diag(λ) Φ*‖_F` for a basis with eigenvalue labels.
pub fn reconstruction_defect(m: &GraphMatrix, basis: &Eigenbasis) -> f64 {
    let labels = match basis.eigenvalues() {
        Some(l) => l,
        None => return f64::INFINITY,
    };
    let n = basis.dim();
    let phi = basis.matrix();
    let diag = DMatrix::from_diagonal(&DVector::from_iterator(
        n,
        labels.iter().map(|&x| Complex64::new(x, 0.0)),
    ));
    let recon = phi * diag * phi.adjoint();
    let mut defect = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = Complex64::new(m.values()[(i, j)], 0.0);
            defect += (recon[(i, j)] - target).norm_sqr();
        }
    }
    defect.sqrt()
}

/// Greedy pivoted Gram–Schmidt over the projected canonical vectors.
/// Returns exactly `dim` orthonormal columns spanning the range of `proj`.
fn canonical_span(proj: &DMatrix<f64>, dim: usize) -> Vec<DVector<f64>> {
    let n = proj.nrows();
    let mut residuals: Vec<DVector<f64>> = (0..n).map(|j| proj.column(j).into_owned()).collect();
    let mut picked: Vec<DVector<f64>> = Vec::with_capacity(dim);
    for _ in 0..dim {
        // Pivot on the largest residual norm, compared at 1e-6 resolution
        // with ties broken toward the smallest vertex index.
        let mut best = 0usize;
        let mut best_key = i64::MIN;
        for (j, r) in residuals.iter().enumerate() {
            let key = (r.norm() / PIVOT_RESOLUTION).round() as i64;
            if key > best_key {
                best_key = key;
                best = j;
            }
        }
        let mut v = residuals[best].clone();
        // Re-orthogonalize twice against the already selected columns.
        for _ in 0..2 {
            for p in &picked {
                let coeff = p.dot(&v);
                v -= p * coeff;
            }
        }
        let norm = v.norm();
        v /= norm;
        for r in residuals.iter_mut() {
            let coeff = v.dot(r);
            *r -= &v * coeff;
        }
        picked.push(v);
    }
    picked
}

fn phase_fix_real(mut v: DVector<f64>) -> DVector<f64> {
    if let Some(lead) = v.iter().find(|x| x.abs() > PHASE_FIX_THRESHOLD) {
        if *lead < 0.0 {
            v = -v;
        }
    }
    v
}
