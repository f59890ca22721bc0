//! Gabor-type frames for signals on graphs.
//!
//! The library builds frames `𝔤_{m,ℓ} = φ_ℓ ∘ (A_m 𝔤)` from an orthonormal
//! basis `Φ`, an arbitrary family of linear operators `A_1, …, A_S` acting
//! as translations, and a window `𝔤`. The frame operator of such a family
//! is diagonal, which yields closed-form sharp frame bounds; Gram-matrix
//! and matrix-pencil machinery bounds the condition number over all unit
//! windows. For Cayley graphs of finite groups, the scaled coordinate
//! functionals of the irreducible representations give an explicit
//! eigenbasis, with eigenvalues, translations, and tight-frame windows
//! computable from characters.
//!
//! Modules:
//! - [`spectral`]: graph Fourier transform, convolution, translation,
//!   modulation, basis validation.
//! - [`graphs`]: graphs, adjacency/Laplacian matrices, deterministic
//!   numeric eigenbases.
//! - [`group`]: finite groups, unitary irreps, Cayley graphs,
//!   representation-theoretic eigenbases and translations.
//! - [`frames`]: frame construction, sharp bounds, Gram matrices, pencils,
//!   Fourier-multiplier families.
//! - [`io`]: versioned JSON schemas for every object kind.

pub mod error;
pub mod frames;
pub mod graphs;
pub mod group;
pub mod io;
pub mod spectral;

pub use error::{Error, Result};
pub use frames::{
    analyze, build_frame, frame_bounds, frame_operator, frame_v, gavili_family, gram_matrices,
    multiplier_bounds, multiplier_family, pencil_eigenvalues, shuman_family, sup_condition_number,
    synthesize, window_free_bounds, FamilyKind, Frame, FrameBounds, GramMatrices,
    TranslationFamily,
};
pub use graphs::{adjacency, laplacian, numeric_eigenbasis, Graph, GraphMatrix, MatrixKind};
pub use group::{
    cayley_eigenvalues, cayley_graph, character_translate, check_automorphism, coordinate_basis,
    cyclic_group, left_regular_matrix, symmetric_group_s3, validate_irrep_set, CayleyGraph,
    GroupData, Irrep, IrrepEigenvalue, IrrepSet, RepWindowSpec,
};
pub use spectral::{
    convolve, gft, igft, modulate, translate, validate_orthonormal, ColumnTag, Eigenbasis,
    OrthonormalityReport, Provenance, Signal, SpectralCoefficients,
};
