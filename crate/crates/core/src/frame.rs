//! Standard bases, transition matrices, and the invariant bilinear form.
//!
//! For valid data there are four distinguished bases of the underlying
//! n-dimensional space, indexed here by [`BasisTag`]:
//!
//! - `Eps` — the eigenbasis of X, normalized so the defect vector has all
//!   coordinates equal to 1;
//! - `EpsTilde` — the analogous eigenbasis of X̃, scaled by the frame
//!   parameter γ;
//! - `EpsStar` / `EpsTildeStar` — the duals of the first two with respect to
//!   the invariant bilinear form, whose overall scale is the frame
//!   parameter ρ.
//!
//! A [`Frame`] is data plus the two nonzero parameters (γ, ρ). Every one of
//! the sixteen transition matrices between the four bases, and every one of
//! the sixteen Gram matrices of the form, is a product of at most five
//! structured factors: the two Cauchy kernels of the data, the two weight
//! diagonals, and powers of γ and ρ. Both tables are written out cell by
//! cell from those closed forms — the transition table and the Gram table
//! are implemented independently, so their mutual consistency (checked in
//! the test suite and the acceptance suite) is a genuine cross-validation of
//! the formulas rather than a tautology.
//!
//! Conventions:
//!
//! - `transition(a, b)` has as its j-th column the coordinates of the j-th
//!   b-basis vector in the a-basis, so coordinate vectors transform by
//!   `coords_a = transition(a, b) · coords_b` and
//!   `transition(a, c) = transition(a, b) · transition(b, c)`.
//! - `gram(a, b)[i][j]` is the form evaluated at the i-th a-basis vector and
//!   the j-th b-basis vector; `gram(a, b) = gram(b, a)ᵀ`.
//! - The dual description of the same configuration (swap the roles of X
//!   and X̃) is again a frame: swapped data with parameters γ⁻¹ and −ργ².

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::cauchy::{CauchyData, CauchyError, StructuredCauchy};
use crate::matrix::DenseMatrix;
use crate::scalar::{Field, FieldError, Scalar};

/// Errors from frame construction and form evaluation.
#[derive(Debug, Error)]
pub enum FrameError {
    /// γ and ρ must be nonzero.
    #[error("frame parameter {name} must be nonzero")]
    ZeroParameter { name: &'static str },
    /// A coordinate vector has the wrong length.
    #[error("coordinate vector has length {actual}, expected {expected}")]
    VectorLength { expected: usize, actual: usize },
    /// Unknown basis name.
    #[error("unknown basis name {0:?} (expected eps, eps-tilde, eps-star, or eps-tilde-star)")]
    UnknownBasis(String),
    /// A field-level failure (mixed fields).
    #[error(transparent)]
    Field(#[from] FieldError),
    /// A data-level failure.
    #[error(transparent)]
    Cauchy(#[from] CauchyError),
}

/// Names for the four standard bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisTag {
    /// Eigenbasis of X.
    Eps,
    /// Eigenbasis of X̃.
    EpsTilde,
    /// Form-dual of `Eps`.
    EpsStar,
    /// Form-dual of `EpsTilde`.
    EpsTildeStar,
}

impl BasisTag {
    /// All four tags, in a fixed order.
    pub fn all() -> [BasisTag; 4] {
        [
            BasisTag::Eps,
            BasisTag::EpsTilde,
            BasisTag::EpsStar,
            BasisTag::EpsTildeStar,
        ]
    }

    /// The form-dual basis: pairing a basis with its dual gives the identity
    /// Gram matrix.
    pub fn dual(self) -> BasisTag {
        match self {
            BasisTag::Eps => BasisTag::EpsStar,
            BasisTag::EpsStar => BasisTag::Eps,
            BasisTag::EpsTilde => BasisTag::EpsTildeStar,
            BasisTag::EpsTildeStar => BasisTag::EpsTilde,
        }
    }
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            BasisTag::Eps => "eps",
            BasisTag::EpsTilde => "eps-tilde",
            BasisTag::EpsStar => "eps-star",
            BasisTag::EpsTildeStar => "eps-tilde-star",
        };
        f.write_str(name)
    }
}

impl FromStr for BasisTag {
    type Err = FrameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "eps" => Ok(BasisTag::Eps),
            "eps-tilde" => Ok(BasisTag::EpsTilde),
            "eps-star" => Ok(BasisTag::EpsStar),
            "eps-tilde-star" => Ok(BasisTag::EpsTildeStar),
            other => Err(FrameError::UnknownBasis(other.to_string())),
        }
    }
}

/// Cauchy data together with the two nonzero frame parameters γ and ρ.
#[derive(Debug, Clone)]
pub struct Frame {
    structured: StructuredCauchy,
    gamma: Scalar,
    rho: Scalar,
}

impl Frame {
    /// Builds a frame; γ and ρ must be nonzero and share the data's field.
    pub fn new(data: CauchyData, gamma: Scalar, rho: Scalar) -> Result<Frame, FrameError> {
        let field = data.field();
        if gamma.field() != field {
            return Err(FrameError::Field(FieldError::MismatchedFields {
                left: field,
                right: gamma.field(),
            }));
        }
        if rho.field() != field {
            return Err(FrameError::Field(FieldError::MismatchedFields {
                left: field,
                right: rho.field(),
            }));
        }
        if gamma.is_zero() {
            return Err(FrameError::ZeroParameter { name: "gamma" });
        }
        if rho.is_zero() {
            return Err(FrameError::ZeroParameter { name: "rho" });
        }
        Ok(Frame {
            structured: StructuredCauchy::new(data),
            gamma,
            rho,
        })
    }

    pub fn data(&self) -> &CauchyData {
        self.structured.data()
    }

    pub fn gamma(&self) -> &Scalar {
        &self.gamma
    }

    pub fn rho(&self) -> &Scalar {
        &self.rho
    }

    pub fn n(&self) -> usize {
        self.structured.n()
    }

    pub fn field(&self) -> Field {
        self.structured.field()
    }

    /// The same configuration described with the roles of X and X̃ swapped:
    /// swapped data, γ ↦ γ⁻¹, ρ ↦ −ργ². Applying it twice returns the
    /// original frame.
    pub fn swapped(&self) -> Frame {
        let gamma_inv = self.gamma.inv().expect("gamma is nonzero");
        let gamma_sq = &self.gamma * &self.gamma;
        let rho_swapped = (&self.rho * &gamma_sq).negate();
        Frame {
            structured: StructuredCauchy::new(self.data().swapped()),
            gamma: gamma_inv,
            rho: rho_swapped,
        }
    }

    /// The transition matrix from basis `from` to basis `to`: columns are
    /// the `to`-basis vectors written in `from`-coordinates.
    pub fn transition(&self, from: BasisTag, to: BasisTag) -> DenseMatrix {
        use BasisTag::*;
        let n = self.n();
        let field = self.field();
        let g = Gadgets::new(self);
        match (from, to) {
            (Eps, Eps) | (EpsTilde, EpsTilde) | (EpsStar, EpsStar)
            | (EpsTildeStar, EpsTildeStar) => DenseMatrix::identity(n, &field),
            // From the X-eigenbasis.
            (Eps, EpsTilde) => g.c().mul(&g.at()).expect("sizes").scale(&g.gamma).negated(),
            (Eps, EpsStar) => g.a_inv().scale(&g.rho_inv),
            (Eps, EpsTildeStar) => g.c().scale(&(&g.rho_inv * &g.gamma_inv)),
            // From the X̃-eigenbasis.
            (EpsTilde, Eps) => g.ct().mul(&g.a()).expect("sizes").scale(&g.gamma_inv).negated(),
            (EpsTilde, EpsStar) => g.ct().scale(&(&g.rho_inv * &g.gamma_inv)).negated(),
            (EpsTilde, EpsTildeStar) => {
                g.at_inv().scale(&(&g.rho_inv * &g.gamma_inv_sq)).negated()
            }
            // From the dual of the X-eigenbasis.
            (EpsStar, Eps) => g.a().scale(&g.rho),
            (EpsStar, EpsTilde) => g
                .a()
                .mul(&g.c())
                .expect("sizes")
                .mul(&g.at())
                .expect("sizes")
                .scale(&(&g.rho * &g.gamma))
                .negated(),
            (EpsStar, EpsTildeStar) => {
                g.a().mul(&g.c()).expect("sizes").scale(&g.gamma_inv)
            }
            // From the dual of the X̃-eigenbasis.
            (EpsTildeStar, Eps) => g
                .at()
                .mul(&g.ct())
                .expect("sizes")
                .mul(&g.a())
                .expect("sizes")
                .scale(&(&g.rho * &g.gamma)),
            (EpsTildeStar, EpsTilde) => g.at().scale(&(&g.rho * &g.gamma_sq)).negated(),
            (EpsTildeStar, EpsStar) => g.at().mul(&g.ct()).expect("sizes").scale(&g.gamma),
        }
    }

    /// The Gram matrix of the invariant form: entry (i, j) is the form
    /// evaluated at the i-th `a`-basis vector and the j-th `b`-basis vector.
    pub fn gram(&self, a: BasisTag, b: BasisTag) -> DenseMatrix {
        use BasisTag::*;
        let n = self.n();
        let field = self.field();
        let g = Gadgets::new(self);
        match (a, b) {
            // Dual pairings are the identity.
            (Eps, EpsStar) | (EpsStar, Eps) | (EpsTilde, EpsTildeStar)
            | (EpsTildeStar, EpsTilde) => DenseMatrix::identity(n, &field),
            (Eps, Eps) => g.a().scale(&g.rho),
            (Eps, EpsTilde) => g
                .a()
                .mul(&g.c())
                .expect("sizes")
                .mul(&g.at())
                .expect("sizes")
                .scale(&(&g.rho * &g.gamma))
                .negated(),
            (Eps, EpsTildeStar) => g.a().mul(&g.c()).expect("sizes").scale(&g.gamma_inv),
            (EpsTilde, Eps) => g
                .at()
                .mul(&g.ct())
                .expect("sizes")
                .mul(&g.a())
                .expect("sizes")
                .scale(&(&g.rho * &g.gamma)),
            (EpsTilde, EpsTilde) => g.at().scale(&(&g.rho * &g.gamma_sq)).negated(),
            (EpsTilde, EpsStar) => g.at().mul(&g.ct()).expect("sizes").scale(&g.gamma),
            (EpsStar, EpsTilde) => {
                g.c().mul(&g.at()).expect("sizes").scale(&g.gamma).negated()
            }
            (EpsStar, EpsStar) => g.a_inv().scale(&g.rho_inv),
            (EpsStar, EpsTildeStar) => g.c().scale(&(&g.rho_inv * &g.gamma_inv)),
            (EpsTildeStar, Eps) => {
                g.ct().mul(&g.a()).expect("sizes").scale(&g.gamma_inv).negated()
            }
            (EpsTildeStar, EpsStar) => {
                g.ct().scale(&(&g.rho_inv * &g.gamma_inv)).negated()
            }
            (EpsTildeStar, EpsTildeStar) => {
                g.at_inv().scale(&(&g.rho_inv * &g.gamma_inv_sq)).negated()
            }
        }
    }

    /// The matrix of the operator X in the given basis. In `Eps` it is the
    /// diagonal of the x-list; other bases are reached by conjugating with
    /// transition matrices.
    pub fn rep_x(&self, basis: BasisTag) -> DenseMatrix {
        let in_eps = DenseMatrix::diagonal(self.data().x()).expect("valid data");
        self.conjugate_from_eps(in_eps, basis)
    }

    /// The matrix of the operator X̃ in the given basis. In `Eps` it is the
    /// diagonal of the x-list minus the rank-one matrix whose rows all equal
    /// the weight vector; in `EpsTilde` it comes out as the diagonal of the
    /// x̃-list.
    pub fn rep_x_tilde(&self, basis: BasisTag) -> DenseMatrix {
        let (alphas, _) = self.structured.alphas();
        let x = self.data().x();
        let n = self.n();
        let in_eps = DenseMatrix::from_fn(n, n, |i, j| {
            if i == j {
                &x[i] - &alphas[j]
            } else {
                alphas[j].negate()
            }
        })
        .expect("well-formed");
        self.conjugate_from_eps(in_eps, basis)
    }

    /// The matrix of X − X̃ in the given basis; rank one in every basis.
    pub fn rep_delta(&self, basis: BasisTag) -> DenseMatrix {
        self.rep_x(basis)
            .sub(&self.rep_x_tilde(basis))
            .expect("same shape")
    }

    fn conjugate_from_eps(&self, in_eps: DenseMatrix, basis: BasisTag) -> DenseMatrix {
        if basis == BasisTag::Eps {
            return in_eps;
        }
        let to_eps = self.transition(basis, BasisTag::Eps);
        let from_eps = self.transition(BasisTag::Eps, basis);
        to_eps
            .mul(&in_eps)
            .expect("sizes")
            .mul(&from_eps)
            .expect("sizes")
    }

    /// Evaluates the invariant form on two coordinate vectors given in the
    /// X-eigenbasis: ⟨u, v⟩ = Σᵢ uᵢ·ρ·αᵢ·vᵢ. The form is symmetric, and both
    /// X and X̃ are self-adjoint for it.
    pub fn form_evaluate(&self, u: &[Scalar], v: &[Scalar]) -> Result<Scalar, FrameError> {
        let n = self.n();
        if u.len() != n {
            return Err(FrameError::VectorLength {
                expected: n,
                actual: u.len(),
            });
        }
        if v.len() != n {
            return Err(FrameError::VectorLength {
                expected: n,
                actual: v.len(),
            });
        }
        let field = self.field();
        let (alphas, _) = self.structured.alphas();
        let mut acc = field.zero();
        for i in 0..n {
            let term = &(&u[i] * &alphas[i]) * &v[i];
            acc = &acc + &(&term * &self.rho);
        }
        Ok(acc)
    }
}

/// The transition from the X-eigenbasis to the X̃-eigenbasis scaled by a
/// chosen index γ — the matrix −γ·C·Ã, whose rows each sum to γ. Varying γ
/// sweeps out the one-parameter family of standard bases attached to the
/// data.
pub fn standard_basis_matrix(
    data: &CauchyData,
    gamma: &Scalar,
) -> Result<DenseMatrix, FrameError> {
    if gamma.field() != data.field() {
        return Err(FrameError::Field(FieldError::MismatchedFields {
            left: data.field(),
            right: gamma.field(),
        }));
    }
    if gamma.is_zero() {
        return Err(FrameError::ZeroParameter { name: "gamma" });
    }
    let structured = StructuredCauchy::new(data.clone());
    let (_, alpha_tildes) = structured.alphas();
    let c = structured.build();
    let at = DenseMatrix::diagonal(alpha_tildes).expect("valid data");
    Ok(c.mul(&at).expect("sizes").scale(gamma).negated())
}

/// Shared structured factors for the table entries. Matrices are built on
/// demand; scalars are precomputed (all invertible by the frame invariants).
struct Gadgets<'a> {
    frame: &'a Frame,
    gamma: Scalar,
    gamma_inv: Scalar,
    gamma_sq: Scalar,
    gamma_inv_sq: Scalar,
    rho: Scalar,
    rho_inv: Scalar,
}

impl<'a> Gadgets<'a> {
    fn new(frame: &'a Frame) -> Gadgets<'a> {
        let gamma = frame.gamma.clone();
        let gamma_inv = gamma.inv().expect("gamma is nonzero");
        let gamma_sq = &gamma * &gamma;
        let gamma_inv_sq = &gamma_inv * &gamma_inv;
        let rho = frame.rho.clone();
        let rho_inv = rho.inv().expect("rho is nonzero");
        Gadgets {
            frame,
            gamma,
            gamma_inv,
            gamma_sq,
            gamma_inv_sq,
            rho,
            rho_inv,
        }
    }

    /// Kernel matrix of the data: entries 1/(xᵢ − x̃ⱼ).
    fn c(&self) -> DenseMatrix {
        self.frame.structured.build()
    }

    /// Kernel matrix of the swapped data: entries 1/(x̃ᵢ − xⱼ).
    fn ct(&self) -> DenseMatrix {
        StructuredCauchy::new(self.frame.data().swapped()).build()
    }

    /// Diagonal of the weights α.
    fn a(&self) -> DenseMatrix {
        let (alphas, _) = self.frame.structured.alphas();
        DenseMatrix::diagonal(alphas).expect("valid data")
    }

    /// Diagonal of the weights α̃.
    fn at(&self) -> DenseMatrix {
        let (_, alpha_tildes) = self.frame.structured.alphas();
        DenseMatrix::diagonal(alpha_tildes).expect("valid data")
    }

    /// Diagonal of 1/α.
    fn a_inv(&self) -> DenseMatrix {
        let (alphas, _) = self.frame.structured.alphas();
        let inverses: Vec<Scalar> = alphas
            .iter()
            .map(|a| a.inv().expect("weights are nonzero"))
            .collect();
        DenseMatrix::diagonal(&inverses).expect("valid data")
    }

    /// Diagonal of 1/α̃.
    fn at_inv(&self) -> DenseMatrix {
        let (_, alpha_tildes) = self.frame.structured.alphas();
        let inverses: Vec<Scalar> = alpha_tildes
            .iter()
            .map(|a| a.inv().expect("weights are nonzero"))
            .collect();
        DenseMatrix::diagonal(&inverses).expect("valid data")
    }
}
