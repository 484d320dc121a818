//! Exact arithmetic for Cauchy matrices and Cauchy pairs.
//!
//! Everything here works over one of two exact fields — arbitrary-precision
//! rationals or a prime field GF(p) — with no floating point anywhere, so
//! every equality in the API is a literal equality of field elements.
//!
//! The crate has two layers:
//!
//! - **Structured algorithms** ([`cauchy`]): Cauchy matrices represented by
//!   their 2n defining scalars, with O(n²) construction, inversion, and
//!   linear solves, plus recognition of Cauchy matrices and a named identity
//!   suite. The independent O(n³) elimination oracle lives in [`matrix`] and
//!   cross-checks every fast path.
//! - **Matrix pairs and frames** ([`pair`], [`frame`]): pairs (X, X̃) of
//!   diagonalizable matrices whose difference has rank one and which share no
//!   invariant subspace, their verification, construction from scalar data,
//!   equivalence testing and classification, and the four distinguished bases
//!   with their transition and Gram matrices.
//!
//! Supporting modules: [`scalar`] (fields and field elements), [`poly`]
//! (exact polynomials, interpolation), [`gen`] (seeded reproducible data
//! generation).

pub mod cauchy;
pub mod frame;
pub mod gen;
pub mod matrix;
pub mod pair;
pub mod poly;
pub mod scalar;
mod spectrum;

pub use cauchy::{
    displacement_residual, identity_suite, perm_equivalent, recognize, CauchyData, CauchyError,
    IdentityCheck, NotCauchyWitness, Recognition, StructuredCauchy,
};
pub use frame::{standard_basis_matrix, BasisTag, Frame, FrameError};
pub use gen::{generate_data, GenError, Lcg};
pub use matrix::{gaussian_inverse_oracle, solve_oracle, DenseMatrix, MatrixError};
pub use pair::{
    affine_transform, classify, is_equivalent, is_isomorphic, pair_from_data, CauchyPair,
    Equivalence, PairClass, PairError, VerificationReport,
};
pub use poly::{
    lagrange_interpolate, leading_coefficient, poly_gcd, solve_unit_sum_system, PolyError,
    Polynomial,
};
pub use scalar::{common_field, Field, FieldError, Scalar};
