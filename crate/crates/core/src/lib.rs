//! Finite-dimensional quantum channels as first-class linear maps.
//!
//! A [`Channel`] is a dimension plus a callable on `n x n` complex matrices.
//! This crate converts channels between
//!
//! - the natural representation (supermatrix) acting on row-major
//!   vectorizations, `res(Φ(ρ)) = M · res(ρ)`;
//! - general-basis matrix representations for any orthonormal operator
//!   basis, computed either from Hilbert–Schmidt inner products or by a
//!   unitary change of basis;
//! - the Choi matrix `J = Σ_i Φ(E_i) ⊗ E_i`, via the sum formula, a trace
//!   formula on the supermatrix, or an index reshuffle;
//!
//! and checks complete positivity, trace preservation and Hermiticity
//! preservation.
//!
//! ```
//! use chanrep::{natural_representation, transpose_channel, pauli, is_completely_positive};
//!
//! let t = transpose_channel(2);
//! assert_eq!(natural_representation(&t).matrix(), &pauli::swap());
//! assert!(!is_completely_positive(&t).completely_positive);
//! ```

#![forbid(unsafe_code)]

pub mod analysis;
pub mod channels;
pub mod error;
pub mod linalg;
pub mod pauli;
pub mod random;
pub mod representations;

pub use analysis::{
    completely_positive_from_choi, is_completely_positive, is_completely_positive_with, is_cptp,
    is_cptp_with, is_trace_preserving, is_trace_preserving_with, ChannelVerdict, CpReport,
    Tolerances, TpReport,
};
pub use channels::{
    depolarizing, depolarizing_family, fix_param, identity_channel, kraus_channel, make_family,
    transpose_channel, unitary_channel, Channel, ChannelFamily, Fixed, ParamSpec,
};
pub use error::{Error, Result};
pub use linalg::{dagger, eigvals_hermitian, hs_inner, kron, res, unres, ComplexMatrix, ComplexVector, C64};
pub use representations::{
    base_matrices, channel_from_supermatrix, check_orthonormal, choi_from_supermatrix,
    choi_from_supermatrix_with, choi_representation, general_natural_representation,
    general_natural_representation_via_basis_change, natural_representation, pauli_basis,
    reshuffle, ChoiMatrix, ChoiPairing, MatrixBasis, SuperMatrix,
};
