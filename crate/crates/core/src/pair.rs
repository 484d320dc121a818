//! Pairs of square matrices whose difference has rank one.
//!
//! A *pair* here is two n×n matrices (X, X̃) over one field. The interesting
//! pairs are those where each matrix has n distinct eigenvalues in the field,
//! the two spectra are disjoint, and X − X̃ has rank one; such pairs are the
//! operator-level counterpart of Cauchy matrix data, and this module realizes
//! that correspondence in both directions:
//!
//! - [`CauchyPair::verify`] checks the defining conditions exactly and
//!   reports the first failure;
//! - [`CauchyPair::eigenvalue_data`] recovers the two sorted eigenvalue
//!   lists as [`CauchyData`];
//! - [`pair_from_data`] builds the canonical pair realizing given data:
//!   X diagonal, X̃ the same diagonal minus the rank-one matrix whose rows
//!   all equal the weight vector of the data;
//! - [`is_isomorphic`] / [`is_equivalent`] produce explicit base-change
//!   witnesses (and the shift, for equivalence), or decide none exists;
//! - [`classify`] groups a family of pairs into equivalence classes labeled
//!   by shift-normalized eigenvalue data.
//!
//! Equivalence of pairs is simultaneous conjugation combined with shifting
//! both matrices by a common multiple of the identity; two verified pairs are
//! equivalent exactly when their eigenvalue data agree up to a common shift,
//! which is what the witness search exploits.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use thiserror::Error;

use crate::cauchy::{perm_equivalent, CauchyData, CauchyError, StructuredCauchy};
use crate::matrix::{gaussian_inverse_oracle, DenseMatrix};
use crate::scalar::{Field, FieldError, Scalar};
use crate::spectrum::{analyze, SpectrumAnalysis};

/// Errors for pair construction and classification.
#[derive(Debug, Error)]
pub enum PairError {
    /// A representing matrix is not square.
    #[error("representing matrices must be square, got {n_rows}×{n_cols}")]
    NotSquare { n_rows: usize, n_cols: usize },
    /// The two matrices have different sizes.
    #[error("matrix sizes differ: {x}×{x} versus {x_tilde}×{x_tilde}")]
    SizeMismatch { x: usize, x_tilde: usize },
    /// Zero-dimensional pairs are not meaningful.
    #[error("pair dimension must be at least 1")]
    Empty,
    /// Affine transforms must have an invertible linear part.
    #[error("affine transform scale must be nonzero")]
    ZeroScale,
    /// A classification input failed verification.
    #[error("pair #{index} is not a verified pair: {reason}")]
    InvalidMember { index: usize, reason: String },
    /// A field-level failure (mixed fields, bad scalars).
    #[error(transparent)]
    Field(#[from] FieldError),
    /// A data-level failure propagated from Cauchy data handling.
    #[error(transparent)]
    Cauchy(#[from] CauchyError),
}

/// Exact verification outcome for one pair. `verdict` is the conjunction of
/// every requirement; `witness` pinpoints the first one that failed.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    /// The first matrix's eigenvalues all lie in the field.
    pub x_splits: bool,
    /// The first matrix is diagonalizable over the field.
    pub x_diagonalizable: bool,
    /// The first matrix has n distinct eigenvalues in the field.
    pub x_multiplicity_free: bool,
    /// Same three conditions for the second matrix.
    pub x_tilde_splits: bool,
    pub x_tilde_diagonalizable: bool,
    pub x_tilde_multiplicity_free: bool,
    /// The characteristic polynomials are coprime, so the two spectra are
    /// disjoint even over field extensions.
    pub spectra_disjoint: bool,
    /// Exact rank of X − X̃ (must be 1).
    pub rank_delta: usize,
    /// The defect vector spanning the column space of X − X̃ is cyclic for
    /// both matrices. Only meaningful when the spectral and rank conditions
    /// hold; reported as `false` when they do not.
    pub irreducible: bool,
    /// All requirements hold.
    pub verdict: bool,
    /// Human-readable description of the first failed requirement.
    pub witness: Option<String>,
}

/// The result of a successful equivalence search: the pair `q` becomes
/// conjugate to `p` after shifting by `zeta`, and `phi` is the base change,
/// so X_p·φ = φ·(X_q + ζI) and X̃_p·φ = φ·(X̃_q + ζI).
#[derive(Debug, Clone)]
pub struct Equivalence {
    pub zeta: Scalar,
    pub phi: DenseMatrix,
}

/// One equivalence class produced by [`classify`]: a canonical label (the
/// shift-normalized, sorted eigenvalue data) and the indices of the input
/// pairs belonging to the class, in input order.
#[derive(Debug, Clone)]
pub struct PairClass {
    pub label: CauchyData,
    pub members: Vec<usize>,
}

#[derive(Debug, Clone)]
struct PairAnalysis {
    report: VerificationReport,
    data: Option<CauchyData>,
    x_roots: Vec<Scalar>,
}

/// Two same-sized square matrices over one field, carrying a lazily computed
/// verification report. Construction only checks shapes and fields; the
/// mathematical conditions are checked by [`CauchyPair::verify`].
#[derive(Debug, Clone)]
pub struct CauchyPair {
    x: DenseMatrix,
    x_tilde: DenseMatrix,
    basis_note: String,
    analysis: OnceLock<PairAnalysis>,
}

impl CauchyPair {
    /// Wraps two representing matrices. Fails if either is not square, the
    /// sizes differ, the size is zero, or the fields differ.
    pub fn new(x: DenseMatrix, x_tilde: DenseMatrix) -> Result<CauchyPair, PairError> {
        if !x.is_square() {
            return Err(PairError::NotSquare {
                n_rows: x.n_rows(),
                n_cols: x.n_cols(),
            });
        }
        if !x_tilde.is_square() {
            return Err(PairError::NotSquare {
                n_rows: x_tilde.n_rows(),
                n_cols: x_tilde.n_cols(),
            });
        }
        if x.n_rows() != x_tilde.n_rows() {
            return Err(PairError::SizeMismatch {
                x: x.n_rows(),
                x_tilde: x_tilde.n_rows(),
            });
        }
        if x.n_rows() == 0 {
            return Err(PairError::Empty);
        }
        if x.field() != x_tilde.field() {
            return Err(PairError::Field(FieldError::MismatchedFields {
                left: x.field(),
                right: x_tilde.field(),
            }));
        }
        Ok(CauchyPair {
            x,
            x_tilde,
            basis_note: String::new(),
            analysis: OnceLock::new(),
        })
    }

    /// Attaches a free-form remark about which basis the entries refer to.
    pub fn with_basis_note(mut self, note: impl Into<String>) -> CauchyPair {
        self.basis_note = note.into();
        self
    }

    pub fn basis_note(&self) -> &str {
        &self.basis_note
    }

    pub fn x(&self) -> &DenseMatrix {
        &self.x
    }

    pub fn x_tilde(&self) -> &DenseMatrix {
        &self.x_tilde
    }

    pub fn n(&self) -> usize {
        self.x.n_rows()
    }

    pub fn field(&self) -> Field {
        self.x.field()
    }

    /// X − X̃.
    pub fn delta(&self) -> DenseMatrix {
        self.x.sub(&self.x_tilde).expect("same shape and field")
    }

    /// Checks every defining condition exactly; cached after the first call.
    pub fn verify(&self) -> &VerificationReport {
        &self.analysis().report
    }

    /// The sorted eigenvalue lists as Cauchy data, available whenever both
    /// matrices have n distinct eigenvalues in the field and the spectra are
    /// disjoint (the rank and cyclicity conditions are not needed for this).
    pub fn eigenvalue_data(&self) -> Option<&CauchyData> {
        self.analysis().data.as_ref()
    }

    /// The structured Cauchy matrix built from this pair's eigenvalue data,
    /// when that data exists.
    pub fn associated_matrix(&self) -> Option<StructuredCauchy> {
        self.eigenvalue_data()
            .map(|d| StructuredCauchy::new(d.clone()))
    }

    fn analysis(&self) -> &PairAnalysis {
        self.analysis.get_or_init(|| self.compute_analysis())
    }

    fn compute_analysis(&self) -> PairAnalysis {
        let sx = analyze(&self.x);
        let st = analyze(&self.x_tilde);
        let x_multiplicity_free = sx.diagonalizable && sx.char_squarefree;
        let x_tilde_multiplicity_free = st.diagonalizable && st.char_squarefree;
        // Coprime characteristic polynomials ⟺ disjoint spectra, including
        // eigenvalues that only exist in an extension field.
        let spectra_disjoint =
            crate::poly::poly_gcd(&sx.char_poly, &st.char_poly).degree() == Some(0);
        let delta = self.delta();
        let rank_delta = delta.rank();

        let prerequisites = x_multiplicity_free
            && x_tilde_multiplicity_free
            && spectra_disjoint
            && rank_delta == 1;
        let irreducible = prerequisites && self.defect_is_cyclic(&sx, &st, &delta);

        let witness = first_failure(
            &sx,
            &st,
            x_multiplicity_free,
            x_tilde_multiplicity_free,
            spectra_disjoint,
            rank_delta,
            irreducible,
        );
        let verdict = witness.is_none();

        let data = if x_multiplicity_free && x_tilde_multiplicity_free && spectra_disjoint {
            CauchyData::new(sx.roots.clone(), st.roots.clone()).ok()
        } else {
            None
        };

        PairAnalysis {
            report: VerificationReport {
                x_splits: sx.splits,
                x_diagonalizable: sx.diagonalizable,
                x_multiplicity_free,
                x_tilde_splits: st.splits,
                x_tilde_diagonalizable: st.diagonalizable,
                x_tilde_multiplicity_free,
                spectra_disjoint,
                rank_delta,
                irreducible,
                verdict,
                witness,
            },
            data,
            x_roots: sx.roots,
        }
    }

    /// Checks that the defect vector η (spanning the column space of X − X̃)
    /// is cyclic for both matrices: no spectral projection of η vanishes.
    /// Given the rank and coprime-spectra conditions this always holds — a
    /// proper subspace invariant under one matrix and containing η is
    /// automatically invariant under the other, forcing the characteristic
    /// polynomials to share a factor — but it is checked anyway because the
    /// isomorphism construction depends on it concretely.
    fn defect_is_cyclic(
        &self,
        sx: &SpectrumAnalysis,
        st: &SpectrumAnalysis,
        delta: &DenseMatrix,
    ) -> bool {
        let Some(eta) = defect_direction(delta) else {
            return false;
        };
        eta_is_cyclic(&self.x, &sx.roots, &eta) && eta_is_cyclic(&self.x_tilde, &st.roots, &eta)
    }
}

fn first_failure(
    sx: &SpectrumAnalysis,
    st: &SpectrumAnalysis,
    x_mf: bool,
    t_mf: bool,
    spectra_disjoint: bool,
    rank_delta: usize,
    irreducible: bool,
) -> Option<String> {
    if !sx.splits {
        return Some("first matrix has eigenvalues outside the field".into());
    }
    if !sx.diagonalizable {
        return Some("first matrix is not diagonalizable".into());
    }
    if !x_mf {
        return Some("first matrix has a repeated eigenvalue".into());
    }
    if !st.splits {
        return Some("second matrix has eigenvalues outside the field".into());
    }
    if !st.diagonalizable {
        return Some("second matrix is not diagonalizable".into());
    }
    if !t_mf {
        return Some("second matrix has a repeated eigenvalue".into());
    }
    if !spectra_disjoint {
        return Some("the two matrices share an eigenvalue".into());
    }
    if rank_delta != 1 {
        return Some(format!(
            "the difference of the matrices has rank {rank_delta}, expected 1"
        ));
    }
    if !irreducible {
        return Some("the defect vector is not cyclic for both matrices".into());
    }
    None
}

/// The normalized direction of the column space of a rank-≥1 matrix: the
/// first nonzero column, rescaled so its first nonzero coordinate is 1.
fn defect_direction(delta: &DenseMatrix) -> Option<Vec<Scalar>> {
    for j in 0..delta.n_cols() {
        let column = delta.column(j);
        if let Some(first) = column.iter().find(|e| !e.is_zero()) {
            let inv = first.inv().expect("nonzero scalar");
            return Some(column.iter().map(|e| e * &inv).collect());
        }
    }
    None
}

/// w ↦ ∏_{j≠skip}(M − r_j·I)·w, evaluated iteratively.
fn lagrange_component(
    m: &DenseMatrix,
    roots: &[Scalar],
    skip: usize,
    start: &[Scalar],
) -> Vec<Scalar> {
    let mut w = start.to_vec();
    for (j, root) in roots.iter().enumerate() {
        if j == skip {
            continue;
        }
        let mw = m.matvec(&w).expect("square matrix times matching vector");
        w = mw
            .iter()
            .zip(w.iter())
            .map(|(a, b)| a - &(root * b))
            .collect();
    }
    w
}

fn eta_is_cyclic(m: &DenseMatrix, roots: &[Scalar], eta: &[Scalar]) -> bool {
    (0..roots.len()).all(|i| {
        lagrange_component(m, roots, i, eta)
            .iter()
            .any(|e| !e.is_zero())
    })
}

/// The matrix whose i-th column is the spectral projection of η onto the
/// eigenline for the i-th (sorted) eigenvalue: (∏_{j≠i}(M − r_j I))η divided
/// by ∏_{j≠i}(r_i − r_j). For a verified pair the columns form a basis.
fn eigencomponent_matrix(m: &DenseMatrix, roots: &[Scalar], eta: &[Scalar]) -> DenseMatrix {
    let n = roots.len();
    let field = m.field();
    let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    for i in 0..n {
        let w = lagrange_component(m, roots, i, eta);
        let mut denom = field.one();
        for (j, root) in roots.iter().enumerate() {
            if j != i {
                denom = &denom * &(&roots[i] - root);
            }
        }
        let inv = denom.inv().expect("distinct eigenvalues");
        columns.push(w.iter().map(|e| e * &inv).collect());
    }
    DenseMatrix::from_fn(n, n, |i, j| columns[j][i].clone()).expect("well-formed")
}

/// The canonical pair realizing given data: X is the diagonal matrix of the
/// x-list, and X̃ is X minus the rank-one matrix all of whose rows equal the
/// data's weight vector, so that X̃'s eigenvalues are exactly the x̃-list.
pub fn pair_from_data(data: &CauchyData) -> CauchyPair {
    let structured = StructuredCauchy::new(data.clone());
    let (alphas, _) = structured.alphas();
    let n = data.n();
    let x = DenseMatrix::diagonal(data.x()).expect("valid data");
    let x_tilde = DenseMatrix::from_fn(n, n, |i, j| {
        let rank_one = alphas[j].clone();
        if i == j {
            &data.x()[i] - &rank_one
        } else {
            rank_one.negate()
        }
    })
    .expect("well-formed");
    CauchyPair {
        x,
        x_tilde,
        basis_note: "entries refer to the basis in which the first matrix is diagonal".into(),
        analysis: OnceLock::new(),
    }
}

/// Applies λ ↦ scale·λ + shift to both matrices (X ↦ aX + bI), which shifts
/// and scales the eigenvalue data the same way and preserves verification.
pub fn affine_transform(
    pair: &CauchyPair,
    scale: &Scalar,
    shift: &Scalar,
) -> Result<CauchyPair, PairError> {
    let field = pair.field();
    if scale.field() != field || shift.field() != field {
        let foreign = if scale.field() != field {
            scale.field()
        } else {
            shift.field()
        };
        return Err(PairError::Field(FieldError::MismatchedFields {
            left: field,
            right: foreign,
        }));
    }
    if scale.is_zero() {
        return Err(PairError::ZeroScale);
    }
    let transform = |m: &DenseMatrix| {
        let mut t = m.scale(scale);
        for i in 0..t.n_rows() {
            let bumped = t.get(i, i) + shift;
            t.set(i, i, bumped);
        }
        t
    };
    Ok(CauchyPair {
        x: transform(&pair.x),
        x_tilde: transform(&pair.x_tilde),
        basis_note: pair.basis_note.clone(),
        analysis: OnceLock::new(),
    })
}

/// Searches for a base change φ carrying `p` to `q`: X_q·φ = φ·X_p and
/// X̃_q·φ = φ·X̃_p, with φ normalized to map p's defect vector exactly onto
/// q's. Returns `Ok(None)` when the pairs are not isomorphic — including
/// when either input fails verification, since the construction (and the
/// uniqueness of φ up to a scalar) is only guaranteed for verified pairs.
pub fn is_isomorphic(p: &CauchyPair, q: &CauchyPair) -> Result<Option<DenseMatrix>, PairError> {
    if p.field() != q.field() {
        return Err(PairError::Field(FieldError::MismatchedFields {
            left: p.field(),
            right: q.field(),
        }));
    }
    if p.n() != q.n() {
        return Ok(None);
    }
    if !p.verify().verdict || !q.verify().verdict {
        return Ok(None);
    }
    let (pd, qd) = (
        p.eigenvalue_data().expect("verified pair has data"),
        q.eigenvalue_data().expect("verified pair has data"),
    );
    if pd.x() != qd.x() || pd.x_tilde() != qd.x_tilde() {
        return Ok(None);
    }

    // Columns of V are the spectral components of the defect vector in
    // sorted-eigenvalue order; matching columns across the two pairs defines
    // the intertwiner, since in that basis both pairs take the same
    // canonical form determined by the (equal) data.
    let eta_p = defect_direction(&p.delta()).expect("verified pair has rank-one defect");
    let eta_q = defect_direction(&q.delta()).expect("verified pair has rank-one defect");
    let v_p = eigencomponent_matrix(&p.x, &p.analysis().x_roots, &eta_p);
    let v_q = eigencomponent_matrix(&q.x, &q.analysis().x_roots, &eta_q);
    let Ok(v_p_inv) = gaussian_inverse_oracle(&v_p) else {
        return Ok(None);
    };
    let phi_raw = v_q.mul(&v_p_inv).expect("square operands");

    // φ maps the defect line to the defect line; rescale so it maps η_p to
    // η_q on the nose, making the witness canonical.
    let image = phi_raw.matvec(&eta_p).expect("matching dimensions");
    let Some(leading) = image.iter().find(|e| !e.is_zero()) else {
        return Ok(None);
    };
    let phi = phi_raw.scale(&leading.inv().expect("nonzero scalar"));

    let intertwines = |a_q: &DenseMatrix, a_p: &DenseMatrix| -> bool {
        let left = a_q.mul(&phi).expect("square operands");
        let right = phi.mul(a_p).expect("square operands");
        left == right
    };
    if intertwines(&q.x, &p.x) && intertwines(&q.x_tilde, &p.x_tilde) {
        Ok(Some(phi))
    } else {
        Ok(None)
    }
}

/// Searches for an equivalence from `q` to `p`: a shift ζ and base change φ
/// with X_p·φ = φ·(X_q + ζI) and X̃_p·φ = φ·(X̃_q + ζI). Verified pairs are
/// equivalent exactly when their eigenvalue data agree up to a common shift.
pub fn is_equivalent(p: &CauchyPair, q: &CauchyPair) -> Result<Option<Equivalence>, PairError> {
    if p.field() != q.field() {
        return Err(PairError::Field(FieldError::MismatchedFields {
            left: p.field(),
            right: q.field(),
        }));
    }
    if p.n() != q.n() {
        return Ok(None);
    }
    if !p.verify().verdict || !q.verify().verdict {
        return Ok(None);
    }
    let pd = p.eigenvalue_data().expect("verified pair has data");
    let qd = q.eigenvalue_data().expect("verified pair has data");
    let Some(zeta) = perm_equivalent(qd, pd)? else {
        return Ok(None);
    };
    let shifted = affine_transform(q, &p.field().one(), &zeta)?;
    match is_isomorphic(&shifted, p)? {
        Some(phi) => Ok(Some(Equivalence { zeta, phi })),
        None => Ok(None),
    }
}

/// Groups verified pairs into equivalence classes.
///
/// When the field characteristic does not divide 2n, every class has a
/// canonical representative: shift the data so the combined sum of all 2n
/// scalars is zero, then sort. Classes are then exactly the groups with equal
/// canonical labels. In the remaining characteristic-p cases (reachable only
/// for GF(2) with n = 1, since 2n scalars must fit in the field) membership
/// is decided by direct shift comparison. Returns classes sorted by label;
/// members keep input order. Every input must pass verification.
pub fn classify(pairs: &[CauchyPair]) -> Result<Vec<PairClass>, PairError> {
    if pairs.is_empty() {
        return Ok(Vec::new());
    }
    let field = pairs[0].field();
    for pair in pairs.iter().skip(1) {
        if pair.field() != field {
            return Err(PairError::Field(FieldError::MismatchedFields {
                left: field,
                right: pair.field(),
            }));
        }
    }

    let mut canonical: BTreeMap<(Vec<Scalar>, Vec<Scalar>), Vec<usize>> = BTreeMap::new();
    let mut fallback: Vec<(CauchyData, Vec<usize>)> = Vec::new();

    for (index, pair) in pairs.iter().enumerate() {
        if !pair.verify().verdict {
            let reason = pair
                .verify()
                .witness
                .clone()
                .unwrap_or_else(|| "verification failed".into());
            return Err(PairError::InvalidMember { index, reason });
        }
        let data = pair.eigenvalue_data().expect("verified pair has data");
        let n = data.n();
        let characteristic = field.characteristic();
        let two_n_invertible =
            characteristic == 0 || (2 * n as u64) % characteristic != 0;
        if two_n_invertible {
            // Shift so the total of all 2n scalars vanishes; equal shifted
            // multisets ⟺ equivalent pairs.
            let mut total = field.zero();
            for v in data.x().iter().chain(data.x_tilde().iter()) {
                total = &total + v;
            }
            let count = field.from_integer(2 * n as i64);
            let zeta = (&total / &count).negate();
            let shifted = data.shifted(&zeta).expect("shift of valid data is valid");
            let mut xs = shifted.x().to_vec();
            let mut ts = shifted.x_tilde().to_vec();
            xs.sort_by(|a, b| a.total_cmp(b));
            ts.sort_by(|a, b| a.total_cmp(b));
            canonical.entry((xs, ts)).or_default().push(index);
        } else {
            let mut placed = false;
            for (representative, members) in fallback.iter_mut() {
                if representative.n() == n && perm_equivalent(representative, data)?.is_some() {
                    members.push(index);
                    placed = true;
                    break;
                }
            }
            if !placed {
                fallback.push((data.clone(), vec![index]));
            }
        }
    }

    let mut classes: Vec<PairClass> = canonical
        .into_iter()
        .map(|((xs, ts), members)| PairClass {
            label: CauchyData::new(xs, ts).expect("shift of valid data is valid"),
            members,
        })
        .collect();
    classes.extend(fallback.into_iter().map(|(label, members)| PairClass {
        label,
        members,
    }));
    classes.sort_by(|a, b| {
        let ax = (a.label.x(), a.label.x_tilde());
        let bx = (b.label.x(), b.label.x_tilde());
        ax.cmp(&bx)
    });
    Ok(classes)
}
