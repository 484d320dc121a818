//! Exact spectral analysis: characteristic polynomials, squarefree parts,
//! and complete root extraction over the supported fields.
//!
//! This is internal plumbing for pair verification. The three nontrivial
//! ingredients:
//!
//! - **Characteristic polynomial** by the Berkowitz iteration — division
//!   free, so it is correct over every field including GF(p) with p smaller
//!   than the matrix dimension. O(n⁴) field operations, which is fine at the
//!   dimensions pairs are used at.
//! - **Radical** (product of distinct irreducible factors) via gcd with the
//!   derivative, with the characteristic-p wrinkle handled: when f′ = 0 over
//!   GF(p) the polynomial is a p-th power with the same coefficient list
//!   compressed by p, and the computation recurses on that compression.
//! - **Root extraction that decides splitting.** Over GF(p): gcd with
//!   λ^p − λ counts the roots in the field, then small fields are swept
//!   directly and large ones are split by randomized degree-one factor
//!   separation (deterministically seeded). Over ℚ: a monic rational
//!   polynomial is rescaled to a monic integer one, its roots are found
//!   modulo a large prime, lifted quadratically until the modulus clears the
//!   coefficient root bound, and each candidate is verified exactly — a
//!   sound and complete integer-root finder that never factors integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::DenseMatrix;
use crate::poly::{poly_gcd, Polynomial};
use crate::scalar::{is_prime_u64, rational_from_parts, rational_parts, Field, Scalar};

/// Everything pair verification needs to know about one matrix's spectrum.
#[derive(Debug, Clone)]
pub(crate) struct SpectrumAnalysis {
    /// Monic characteristic polynomial det(λI − M).
    pub char_poly: Polynomial,
    /// Whether the squarefree part of `char_poly` factors completely into
    /// linear factors over the matrix's own field.
    pub splits: bool,
    /// The distinct eigenvalues lying in the field, sorted; empty when
    /// `splits` is false.
    pub roots: Vec<Scalar>,
    /// Whether `char_poly` is squarefree (all eigenvalue multiplicities 1).
    pub char_squarefree: bool,
    /// Whether the matrix is diagonalizable over its own field: the radical
    /// annihilates the matrix and splits into linear factors.
    pub diagonalizable: bool,
}

/// Runs the full spectral analysis.
///
/// # Panics
///
/// Panics if `m` is not square.
pub(crate) fn analyze(m: &DenseMatrix) -> SpectrumAnalysis {
    assert!(m.is_square(), "spectral analysis needs a square matrix");
    let chi = characteristic_polynomial(m);
    let chi_prime = chi.derivative();
    let char_squarefree =
        !chi_prime.is_zero() && poly_gcd(&chi, &chi_prime).degree() == Some(0);
    let rad = radical(&chi);
    let annihilates = evaluate_at_matrix(&rad, m).is_zero();
    let (splits, roots) = match distinct_roots(&rad, &m.field()) {
        Some(roots) => (true, roots),
        None => (false, Vec::new()),
    };
    SpectrumAnalysis {
        char_poly: chi,
        splits,
        roots,
        char_squarefree,
        diagonalizable: annihilates && splits,
    }
}

/// The monic characteristic polynomial det(λI − M) by the Berkowitz
/// iteration: the coefficient vector for each leading principal submatrix is
/// obtained from the previous one by convolving with a column built from the
/// new diagonal entry and the inner products row·M^t·column. No divisions.
pub(crate) fn characteristic_polynomial(m: &DenseMatrix) -> Polynomial {
    assert!(m.is_square(), "characteristic polynomial needs a square matrix");
    let n = m.n_rows();
    let field = m.field();

    // Descending coefficients; the 0×0 matrix has characteristic polynomial 1.
    let mut coeffs: Vec<Scalar> = vec![field.one()];
    for k in 1..=n {
        // New column for the size-k update: 1, −corner, −row·col,
        // −row·M·col, …, −row·M^{k−2}·col, where M, row, col are the
        // leading (k−1)-sized blocks bordering the corner entry.
        let mut column = Vec::with_capacity(k + 1);
        column.push(field.one());
        column.push(m.get(k - 1, k - 1).negate());
        if k >= 2 {
            let mut s: Vec<Scalar> = (0..k - 1).map(|i| m.get(i, k - 1).clone()).collect();
            for t in 0..k - 1 {
                let mut dot = field.zero();
                for (j, sj) in s.iter().enumerate() {
                    dot = &dot + &(m.get(k - 1, j) * sj);
                }
                column.push(dot.negate());
                if t + 1 < k - 1 {
                    let mut next = vec![field.zero(); k - 1];
                    for (i, slot) in next.iter_mut().enumerate() {
                        let mut acc = field.zero();
                        for (j, sj) in s.iter().enumerate() {
                            acc = &acc + &(m.get(i, j) * sj);
                        }
                        *slot = acc;
                    }
                    s = next;
                }
            }
        }

        let mut next = vec![field.zero(); k + 1];
        for (j, old) in coeffs.iter().enumerate() {
            for (offset, q) in column.iter().enumerate() {
                if j + offset <= k {
                    next[j + offset] = &next[j + offset] + &(q * old);
                }
            }
        }
        coeffs = next;
    }

    coeffs.reverse();
    Polynomial::from_coefficients(coeffs).expect("coefficients share the matrix field")
}

/// The monic radical of a monic polynomial: the product of its distinct
/// irreducible factors. In characteristic p the derivative can vanish (the
/// polynomial is then a p-th power whose p-th root has the same coefficients
/// at compressed positions, since the prime field is fixed by x ↦ x^p);
/// the computation recurses through that case, so the result is correct over
/// GF(p) for every p.
pub(crate) fn radical(f: &Polynomial) -> Polynomial {
    let Some(degree) = f.degree() else {
        return Polynomial::zero();
    };
    if degree == 0 {
        return f.monic();
    }
    let field = f
        .leading_coefficient()
        .expect("nonzero polynomial")
        .field();
    let derivative = f.derivative();
    if derivative.is_zero() {
        let p = field.characteristic();
        assert!(p > 0, "zero derivative of a nonconstant polynomial needs characteristic p");
        return radical(&pth_root(f, p as usize, &field));
    }
    let common = poly_gcd(f, &derivative);
    if common.degree() == Some(0) {
        return f.monic();
    }
    let (squarefree_part, r) = f.divide(&common).expect("gcd divides f");
    debug_assert!(r.is_zero(), "gcd must divide the polynomial exactly");
    // Factors whose multiplicity the derivative killed (multiples of p) are
    // still inside `common`; strip everything shared with the squarefree
    // part, leaving a pure p-th power to recurse on.
    let mut leftover = common;
    loop {
        let shared = poly_gcd(&leftover, &squarefree_part);
        if shared.degree() == Some(0) {
            break;
        }
        let (quot, rem) = leftover.divide(&shared).expect("gcd divides");
        debug_assert!(rem.is_zero());
        leftover = quot;
    }
    if leftover.degree() == Some(0) {
        squarefree_part.monic()
    } else {
        squarefree_part.monic().mul(&radical(&leftover))
    }
}

/// For f with zero derivative over GF(p) (so only coefficients at indices
/// divisible by p are nonzero), the polynomial g with f(λ) = g(λ)^p.
fn pth_root(f: &Polynomial, p: usize, field: &Field) -> Polynomial {
    let degree = f.degree().expect("nonzero input");
    debug_assert!(degree % p == 0, "p-th power has degree divisible by p");
    let coefficients: Vec<Scalar> = (0..=degree / p)
        .map(|k| f.coefficient(k * p, field))
        .collect();
    Polynomial::from_coefficients(coefficients).expect("coefficients share a field")
}

/// Horner evaluation of a polynomial at a square matrix.
pub(crate) fn evaluate_at_matrix(p: &Polynomial, m: &DenseMatrix) -> DenseMatrix {
    let n = m.n_rows();
    let field = m.field();
    let Some(degree) = p.degree() else {
        return DenseMatrix::from_fn(n, n, |_, _| field.zero()).expect("well-formed zero matrix");
    };
    let mut acc = DenseMatrix::identity(n, &field).scale(&p.coefficient(degree, &field));
    for k in (0..degree).rev() {
        acc = acc.mul(m).expect("square operands");
        let c = p.coefficient(k, &field);
        for i in 0..n {
            let bumped = acc.get(i, i) + &c;
            acc.set(i, i, bumped);
        }
    }
    acc
}

/// Complete root extraction for a monic squarefree polynomial: `Some(sorted
/// distinct roots)` when it splits into linear factors over the field,
/// `None` when it does not.
pub(crate) fn distinct_roots(g: &Polynomial, field: &Field) -> Option<Vec<Scalar>> {
    match field {
        Field::Rational => rational_roots(g),
        Field::Prime(p) => prime_field_roots(g, *p),
    }
}

// ---------------------------------------------------------------------------
// GF(p)
// ---------------------------------------------------------------------------

/// Roots of a monic squarefree polynomial over GF(p), or `None` if it does
/// not split. Splitting is decided first by gcd with λ^p − λ (whose roots
/// are exactly the field), so the extraction below always works on a product
/// of distinct linear factors.
fn prime_field_roots(g: &Polynomial, p: u64) -> Option<Vec<Scalar>> {
    let field = Field::Prime(p);
    let degree = g.degree().expect("nonzero polynomial");
    if degree == 0 {
        return Some(Vec::new());
    }
    if degree == 1 {
        return Some(vec![g.coefficient(0, &field).negate()]);
    }
    // λ^p mod g, minus λ.
    let lambda = Polynomial::from_coefficients(vec![field.zero(), field.one()])
        .expect("shared field");
    let frobenius = poly_mod_pow(&lambda, p, g);
    let split_detector = frobenius.sub(&lambda);
    if poly_gcd(g, &split_detector).degree() != Some(degree) {
        return None;
    }
    let mut roots = linear_factor_roots(g, p);
    debug_assert_eq!(roots.len(), degree, "split polynomial yields degree-many roots");
    roots.sort_by(|a, b| a.total_cmp(b));
    Some(roots)
}

/// Roots of a product of distinct monic linear factors over GF(p). Small
/// fields are swept exhaustively; large ones are split recursively by the
/// quadratic-residue separation trick with a deterministic probe sequence.
fn linear_factor_roots(f: &Polynomial, p: u64) -> Vec<Scalar> {
    let field = Field::Prime(p);
    let degree = f.degree().expect("nonzero polynomial");
    let mut out = Vec::with_capacity(degree);
    if p <= 1 << 16 {
        for e in 0..p {
            let candidate = field.from_integer(e as i64);
            if f.evaluate(&candidate).is_zero() {
                out.push(candidate);
                if out.len() == degree {
                    break;
                }
            }
        }
        return out;
    }
    let mut probe = ProbeSequence::new(p);
    split_linear_product(f, p, &mut probe, &mut out);
    out
}

/// Recursive degree-one splitting for odd p: (λ + δ)^((p−1)/2) mod f takes
/// the value ±1 (or 0) at each root, and the gcd with either level set
/// separates the roots whenever the values disagree — which a fresh δ
/// achieves with probability about 1/2 per attempt.
fn split_linear_product(f: &Polynomial, p: u64, probe: &mut ProbeSequence, out: &mut Vec<Scalar>) {
    let field = Field::Prime(p);
    let degree = f.degree().expect("nonzero polynomial");
    if degree == 0 {
        return;
    }
    if degree == 1 {
        out.push(f.coefficient(0, &field).negate());
        return;
    }
    loop {
        let delta = field.from_bigint(&BigInt::from(probe.next_value()));
        let shifted = Polynomial::from_coefficients(vec![delta, field.one()])
            .expect("shared field");
        let power = poly_mod_pow(&shifted, (p - 1) / 2, f);
        let candidates = [
            power.clone(),
            power.sub(&Polynomial::constant(field.one())),
        ];
        for candidate in &candidates {
            let factor = poly_gcd(candidate, f);
            if let Some(d) = factor.degree() {
                if d > 0 && d < degree {
                    let (rest, rem) = f.divide(&factor).expect("gcd divides");
                    debug_assert!(rem.is_zero());
                    split_linear_product(&factor, p, probe, out);
                    split_linear_product(&rest, p, probe, out);
                    return;
                }
            }
        }
    }
}

/// base^exponent mod modulus by binary exponentiation with polynomial
/// arithmetic; all polynomials over one field.
fn poly_mod_pow(base: &Polynomial, exponent: u64, modulus: &Polynomial) -> Polynomial {
    let field = modulus
        .leading_coefficient()
        .expect("nonzero modulus")
        .field();
    let reduce = |p: &Polynomial| -> Polynomial {
        p.divide(modulus).expect("nonzero modulus").1
    };
    let mut result = Polynomial::constant(field.one());
    let mut square = reduce(base);
    let mut e = exponent;
    while e > 0 {
        if e & 1 == 1 {
            result = reduce(&result.mul(&square));
        }
        square = reduce(&square.mul(&square));
        e >>= 1;
    }
    result
}

/// Deterministic probe values for the residue-separation splitter — a plain
/// 64-bit linear congruential sequence seeded from the modulus, so runs are
/// reproducible while still behaving like random probes.
struct ProbeSequence {
    state: u64,
    modulus: u64,
}

impl ProbeSequence {
    fn new(p: u64) -> Self {
        ProbeSequence {
            state: p ^ 0x9E37_79B9_7F4A_7C15,
            modulus: p,
        }
    }

    fn next_value(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(6_364_136_223_846_793_005)
            .wrapping_add(1_442_695_040_888_963_407);
        // High bits have the better statistics in an LCG.
        (self.state >> 11) % self.modulus
    }
}

// ---------------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------------

/// Roots of a monic squarefree polynomial over ℚ, or `None` if it does not
/// split. The polynomial is rescaled to a monic integer polynomial (whose
/// rational roots are necessarily integers), the roots are found modulo a
/// large prime chosen to preserve squarefreeness, lifted quadratically until
/// the modulus exceeds twice the root bound, and verified exactly.
fn rational_roots(g: &Polynomial) -> Option<Vec<Scalar>> {
    let field = Field::Rational;
    let degree = g.degree().expect("nonzero polynomial");
    if degree == 0 {
        return Some(Vec::new());
    }
    if degree == 1 {
        return Some(vec![g.coefficient(0, &field).negate()]);
    }

    // Common denominator: substituting λ = μ/c and scaling by c^degree makes
    // the polynomial monic with integer coefficients, roots scaled by c.
    let mut common_den = BigInt::one();
    for coeff in g.coefficients() {
        let (_, den) = rational_parts(coeff).expect("rational scalar");
        common_den = common_den.lcm(den);
    }
    let mut integer_coeffs: Vec<BigInt> = Vec::with_capacity(degree + 1);
    for k in 0..=degree {
        let coeff = g.coefficient(k, &field);
        let (num, den) = rational_parts(&coeff)
            .map(|(n, d)| (n.clone(), d.clone()))
            .expect("rational scalar");
        let scaled = num * common_den.pow((degree - k) as u32) / den;
        integer_coeffs.push(scaled);
    }
    debug_assert!(integer_coeffs[degree].is_one(), "scaled polynomial is monic");

    // Every root μ of a monic integer polynomial satisfies |μ| < 1 + max|coeff|.
    let bound = integer_coeffs
        .iter()
        .take(degree)
        .map(BigInt::abs)
        .max()
        .expect("degree ≥ 1")
        + BigInt::one();

    let (prime, reduced) = choose_reduction_prime(&integer_coeffs, degree);

    // If the integer polynomial split over ℤ, its reduction splits over
    // GF(prime); the converse is settled by exact verification below.
    let roots_mod_p = prime_field_roots(&reduced, prime)?;

    let derivative_coeffs: Vec<BigInt> = integer_coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect();

    let mut roots = Vec::with_capacity(degree);
    for root in &roots_mod_p {
        let (residue, _) = root.as_modp().expect("prime-field scalar");
        let lifted = hensel_lift(&integer_coeffs, &derivative_coeffs, residue, prime, &bound);
        if !evaluate_integer_poly(&integer_coeffs, &lifted).is_zero() {
            return None;
        }
        roots.push(rational_from_parts(lifted, common_den.clone()));
    }
    roots.sort_by(|a, b| a.total_cmp(b));
    Some(roots)
}

/// Picks a prime above 2³¹ modulo which the integer polynomial stays
/// squarefree (such primes are all but the finitely many dividing the
/// discriminant), returning the prime and the reduced polynomial.
fn choose_reduction_prime(coeffs: &[BigInt], degree: usize) -> (u64, Polynomial) {
    let mut candidate: u64 = (1 << 31) + 11;
    loop {
        if is_prime_u64(candidate) {
            let field = Field::Prime(candidate);
            let reduced_coeffs: Vec<Scalar> =
                coeffs.iter().map(|c| field.from_bigint(c)).collect();
            let reduced =
                Polynomial::from_coefficients(reduced_coeffs).expect("shared field");
            if reduced.degree() == Some(degree) {
                let derivative = reduced.derivative();
                if !derivative.is_zero()
                    && poly_gcd(&reduced, &derivative).degree() == Some(0)
                {
                    return (candidate, reduced);
                }
            }
        }
        candidate += 2;
    }
}

/// Quadratic lifting of a simple root: given f(r) ≡ 0 mod q with f′(r)
/// invertible, the Newton step r ← r − f(r)·f′(r)⁻¹ upgrades the congruence
/// to mod q², repeated until the modulus exceeds 2·bound; returns the
/// symmetric representative, which equals the integer root when there is one.
fn hensel_lift(
    coeffs: &[BigInt],
    derivative_coeffs: &[BigInt],
    residue: u64,
    prime: u64,
    bound: &BigInt,
) -> BigInt {
    let target = BigInt::from(2) * bound;
    let mut modulus = BigInt::from(prime);
    let mut root = BigInt::from(residue);
    while modulus <= target {
        let next_modulus = &modulus * &modulus;
        let value = evaluate_integer_poly_mod(coeffs, &root, &next_modulus);
        let slope = evaluate_integer_poly_mod(derivative_coeffs, &root, &next_modulus);
        let slope_inv = mod_inverse(&slope, &next_modulus)
            .expect("simple root keeps the derivative invertible");
        root = (&root - value * slope_inv).mod_floor(&next_modulus);
        modulus = next_modulus;
    }
    // Symmetric representative in (−modulus/2, modulus/2].
    if &root * 2 > modulus {
        root - modulus
    } else {
        root
    }
}

/// Horner evaluation over ℤ.
fn evaluate_integer_poly(coeffs: &[BigInt], at: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = acc * at + c;
    }
    acc
}

/// Horner evaluation over ℤ/m, keeping intermediates reduced.
fn evaluate_integer_poly_mod(coeffs: &[BigInt], at: &BigInt, modulus: &BigInt) -> BigInt {
    let at_reduced = at.mod_floor(modulus);
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = (acc * &at_reduced + c).mod_floor(modulus);
    }
    acc
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm; `None`
/// when they share a factor.
fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(text: &str) -> Scalar {
        Field::Rational.parse_scalar(text).expect("valid rational")
    }

    fn qpoly(coeffs: &[&str]) -> Polynomial {
        Polynomial::from_coefficients(coeffs.iter().map(|t| q(t)).collect()).expect("valid")
    }

    fn qmat(n: usize, entries: &[i64]) -> DenseMatrix {
        let f = Field::Rational;
        DenseMatrix::new(n, n, entries.iter().map(|&v| f.from_integer(v)).collect())
            .expect("well-formed")
    }

    #[test]
    fn char_poly_matches_trace_and_determinant() {
        // [[1,2],[3,4]]: λ² − 5λ − 2.
        let chi = characteristic_polynomial(&qmat(2, &[1, 2, 3, 4]));
        assert_eq!(chi, qpoly(&["-2", "-5", "1"]));
        // diag(1,2,3): (λ−1)(λ−2)(λ−3) = λ³ − 6λ² + 11λ − 6.
        let chi = characteristic_polynomial(&qmat(3, &[1, 0, 0, 0, 2, 0, 0, 0, 3]));
        assert_eq!(chi, qpoly(&["-6", "11", "-6", "1"]));
        // Nilpotent Jordan block: λ².
        let chi = characteristic_polynomial(&qmat(2, &[0, 1, 0, 0]));
        assert_eq!(chi, qpoly(&["0", "0", "1"]));
        // 1×1.
        let chi = characteristic_polynomial(&qmat(1, &[7]));
        assert_eq!(chi, qpoly(&["-7", "1"]));
    }

    #[test]
    fn char_poly_of_companion_matrix_recovers_coefficients() {
        // Companion matrix of λ³ + 2λ² − 5λ + 3.
        let f = Field::Rational;
        let m = DenseMatrix::new(
            3,
            3,
            [0, 0, -3, 1, 0, 5, 0, 1, -2]
                .iter()
                .map(|&v| f.from_integer(v))
                .collect(),
        )
        .expect("well-formed");
        assert_eq!(characteristic_polynomial(&m), qpoly(&["3", "-5", "2", "1"]));
    }

    #[test]
    fn char_poly_over_small_prime_field() {
        // Identity over GF(2): (λ−1)² = λ² + 1 (characteristic 2).
        let f = Field::prime(2).expect("prime");
        let m = DenseMatrix::identity(2, &f);
        let chi = characteristic_polynomial(&m);
        assert_eq!(
            chi.coefficients(),
            &[f.one(), f.zero(), f.one()],
            "λ² + 1 over GF(2)"
        );
    }

    #[test]
    fn radical_strips_multiplicities() {
        // (λ−2)²(λ−3) → (λ−2)(λ−3).
        let square = qpoly(&["-2", "1"]).mul(&qpoly(&["-2", "1"]));
        let f = square.mul(&qpoly(&["-3", "1"]));
        assert_eq!(radical(&f), qpoly(&["-2", "1"]).mul(&qpoly(&["-3", "1"])));
        // Squarefree input is returned as-is (monic).
        let g = qpoly(&["-2", "1"]).mul(&qpoly(&["-3", "1"]));
        assert_eq!(radical(&g), g);
    }

    #[test]
    fn radical_handles_vanishing_derivative() {
        // (λ + 1)² over GF(2) = λ² + 1, whose derivative is zero.
        let f = Field::prime(2).expect("prime");
        let sq = Polynomial::from_coefficients(vec![f.one(), f.zero(), f.one()]).expect("valid");
        assert!(sq.derivative().is_zero(), "precondition: derivative vanishes");
        let rad = radical(&sq);
        assert_eq!(rad.coefficients(), &[f.one(), f.one()], "λ + 1");
        // (λ−1)³·λ over GF(3): derivative nonzero but the cubed factor's
        // multiplicity is the characteristic.
        let f3 = Field::prime(3).expect("prime");
        let lin = |c: i64| {
            Polynomial::from_coefficients(vec![f3.from_integer(-c), f3.one()]).expect("valid")
        };
        let poly = lin(1).mul(&lin(1)).mul(&lin(1)).mul(&lin(0));
        let rad = radical(&poly);
        assert_eq!(rad, lin(1).mul(&lin(0)));
    }

    #[test]
    fn matrix_evaluation_annihilates_by_cayley_hamilton() {
        let m = qmat(2, &[1, 2, 3, 4]);
        let chi = characteristic_polynomial(&m);
        assert!(evaluate_at_matrix(&chi, &m).is_zero());
        let shifted = evaluate_at_matrix(&qpoly(&["-1", "1"]), &m); // M − I
        assert_eq!(shifted, qmat(2, &[0, 2, 3, 3]));
    }

    #[test]
    fn rational_roots_found_and_sorted() {
        // (λ − 1/2)(λ + 3)(λ − 7), monic with a fractional root.
        let g = qpoly(&["-1/2", "1"]).mul(&qpoly(&["3", "1"])).mul(&qpoly(&["-7", "1"]));
        let roots = rational_roots(&g).expect("splits");
        assert_eq!(roots, vec![q("-3"), q("1/2"), q("7")]);
    }

    #[test]
    fn rational_roots_rejects_non_split() {
        assert!(rational_roots(&qpoly(&["1", "0", "1"])).is_none(), "λ² + 1");
        assert!(rational_roots(&qpoly(&["-2", "0", "1"])).is_none(), "λ² − 2");
        // Partial splitting is still not splitting: (λ−1)(λ²+1).
        let g = qpoly(&["-1", "1"]).mul(&qpoly(&["1", "0", "1"]));
        assert!(rational_roots(&g).is_none());
    }

    #[test]
    fn rational_roots_with_large_values() {
        let big = 1_000_000_007i64;
        let g = qpoly(&[&format!("{}", -big), "1"])
            .mul(&qpoly(&["5", "1"]))
            .mul(&qpoly(&["0", "1"]));
        let roots = rational_roots(&g).expect("splits");
        assert_eq!(
            roots,
            vec![q("-5"), q("0"), q(&big.to_string())]
        );
    }

    #[test]
    fn prime_field_roots_by_enumeration() {
        let f = Field::prime(101).expect("prime");
        let lin = |c: i64| {
            Polynomial::from_coefficients(vec![f.from_integer(-c), f.one()]).expect("valid")
        };
        let g = lin(5).mul(&lin(17));
        let roots = prime_field_roots(&g, 101).expect("splits");
        assert_eq!(roots, vec![f.from_integer(5), f.from_integer(17)]);
        // λ² + 1 over GF(7): −1 is not a square mod 7.
        let non_split =
            Polynomial::from_coefficients(vec![f7(1), f7(0), f7(1)]).expect("valid");
        assert!(prime_field_roots(&non_split, 7).is_none());
    }

    fn f7(v: i64) -> Scalar {
        Field::prime(7).expect("prime").from_integer(v)
    }

    #[test]
    fn prime_field_roots_by_splitting_over_large_prime() {
        let p = 2_305_843_009_213_693_951u64; // 2⁶¹ − 1
        let f = Field::prime(p).expect("prime");
        let lin = |c: i64| {
            Polynomial::from_coefficients(vec![f.from_integer(-c), f.one()]).expect("valid")
        };
        let g = lin(3).mul(&lin(1_000_000)).mul(&lin(5)).mul(&lin(-9));
        let roots = prime_field_roots(&g, p).expect("splits");
        let mut expected = vec![
            f.from_integer(3),
            f.from_integer(1_000_000),
            f.from_integer(5),
            f.from_integer(-9),
        ];
        expected.sort_by(|a, b| a.total_cmp(b));
        assert_eq!(roots, expected);
    }

    #[test]
    fn analyze_diagonalizable_rational_matrix() {
        // X̃ of the worked 2×2 example: eigenvalues 2 and 3.
        let f = Field::Rational;
        let m = DenseMatrix::new(
            2,
            2,
            [6, -2, 6, -1].iter().map(|&v| f.from_integer(v)).collect(),
        )
        .expect("well-formed");
        let analysis = analyze(&m);
        assert!(analysis.splits);
        assert!(analysis.char_squarefree);
        assert!(analysis.diagonalizable);
        assert_eq!(analysis.roots, vec![q("2"), q("3")]);
        assert_eq!(analysis.char_poly, qpoly(&["6", "-5", "1"]));
    }

    #[test]
    fn analyze_rejects_jordan_block() {
        let analysis = analyze(&qmat(2, &[0, 1, 0, 0]));
        assert!(analysis.splits, "radical λ splits");
        assert!(!analysis.char_squarefree);
        assert!(!analysis.diagonalizable, "nilpotent block is not diagonalizable");
    }

    #[test]
    fn analyze_scalar_matrix_is_diagonalizable_but_not_multiplicity_free() {
        let analysis = analyze(&qmat(2, &[3, 0, 0, 3]));
        assert!(analysis.diagonalizable);
        assert!(!analysis.char_squarefree);
        assert_eq!(analysis.roots, vec![q("3")]);
        // Same over GF(2), where the derivative of (λ−1)² vanishes.
        let f = Field::prime(2).expect("prime");
        let analysis = analyze(&DenseMatrix::identity(2, &f));
        assert!(analysis.diagonalizable);
        assert!(!analysis.char_squarefree);
        assert_eq!(analysis.roots, vec![f.one()]);
    }

    #[test]
    fn analyze_detects_out_of_field_spectrum() {
        // Rotation-like matrix: χ = λ² + 1, no rational roots.
        let analysis = analyze(&qmat(2, &[0, -1, 1, 0]));
        assert!(!analysis.splits);
        assert!(!analysis.diagonalizable);
        assert!(analysis.roots.is_empty());
        assert!(analysis.char_squarefree);
    }
}
