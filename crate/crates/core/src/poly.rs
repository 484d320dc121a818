//! Polynomials over an exact field, Lagrange interpolation, and the
//! closed-form solution of the unit-sum linear system.
//!
//! The interpolation routine uses the product formula directly: with the
//! master polynomial `M(λ) = ∏_k (λ − c_k)` computed once, each basis
//! numerator `∏_{k≠i} (λ − c_k)` is recovered by synthetic division of `M`
//! by `(λ − c_i)`, keeping the whole construction O(n²) without solving a
//! Vandermonde system.

use thiserror::Error;

use crate::scalar::{common_field, Field, FieldError, Scalar};

/// Errors from polynomial construction and the interpolation operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    /// `nodes` and `values` have different lengths.
    #[error("length mismatch: {nodes} nodes vs {values} values")]
    LengthMismatch {
        /// Number of nodes supplied.
        nodes: usize,
        /// Number of values supplied.
        values: usize,
    },
    /// Interpolation nodes must be mutually distinct.
    #[error("duplicate node at positions {first} and {second}")]
    DuplicateNode {
        /// Index of the first occurrence.
        first: usize,
        /// Index of the clashing occurrence.
        second: usize,
    },
    /// The unit-sum system needs all 2n scalars of `a ∪ b` distinct.
    #[error("repeated scalar in unit-sum system data: {description}")]
    RepeatedScalar {
        /// Which positions collide.
        description: String,
    },
    /// Empty input where at least one element is required.
    #[error("input must contain at least one element")]
    Empty,
    /// Polynomial division by the zero polynomial.
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    /// Scalar-level failure (mixed fields, division by zero).
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A dense polynomial: `coefficients[k]` multiplies `λ^k`. The zero
/// polynomial is the empty coefficient vector, and trailing zero
/// coefficients are always stripped, so representations are canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coefficients: Vec<Scalar>,
}

impl Polynomial {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Polynomial {
            coefficients: Vec::new(),
        }
    }

    /// Builds a polynomial from ascending coefficients, stripping trailing
    /// zeros to keep the representation canonical.
    pub fn from_coefficients(mut coefficients: Vec<Scalar>) -> Result<Self, PolyError> {
        while coefficients.last().is_some_and(Scalar::is_zero) {
            coefficients.pop();
        }
        if !coefficients.is_empty() {
            common_field(&coefficients)?;
        }
        Ok(Polynomial { coefficients })
    }

    /// The constant polynomial `c`.
    pub fn constant(c: Scalar) -> Self {
        if c.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial {
                coefficients: vec![c],
            }
        }
    }

    /// The monic linear polynomial `λ − root`.
    pub fn linear_from_root(root: &Scalar) -> Self {
        Polynomial {
            coefficients: vec![root.negate(), root.field().one()],
        }
    }

    /// Ascending coefficients (empty for the zero polynomial).
    pub fn coefficients(&self) -> &[Scalar] {
        &self.coefficients
    }

    /// The coefficient of `λ^k` (zero when `k` exceeds the degree).
    pub fn coefficient(&self, k: usize, field: &Field) -> Scalar {
        self.coefficients
            .get(k)
            .cloned()
            .unwrap_or_else(|| field.zero())
    }

    /// Degree, or `None` for the zero polynomial (a sentinel rather than a
    /// `-1` that could be mistaken for an index).
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// The leading coefficient, or `None` for the zero polynomial.
    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.coefficients.last()
    }

    /// Evaluates at `point` by Horner's rule.
    pub fn evaluate(&self, point: &Scalar) -> Scalar {
        let field = point.field();
        let mut acc = field.zero();
        for c in self.coefficients.iter().rev() {
            acc = &(&acc * point) + c;
        }
        acc
    }

    /// Sum of two polynomials.
    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let (longer, shorter) = if self.coefficients.len() >= other.coefficients.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coefficients = longer.coefficients.clone();
        for (k, c) in shorter.coefficients.iter().enumerate() {
            coefficients[k] += c;
        }
        while coefficients.last().is_some_and(Scalar::is_zero) {
            coefficients.pop();
        }
        Polynomial { coefficients }
    }

    /// Difference of two polynomials.
    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.negated())
    }

    /// Entrywise negation.
    pub fn negated(&self) -> Polynomial {
        Polynomial {
            coefficients: self.coefficients.iter().map(Scalar::negate).collect(),
        }
    }

    /// Product of two polynomials (schoolbook).
    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let field = self.coefficients[0].field();
        let mut coefficients =
            vec![field.zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                coefficients[i + j] += &(a * b);
            }
        }
        while coefficients.last().is_some_and(Scalar::is_zero) {
            coefficients.pop();
        }
        Polynomial { coefficients }
    }

    /// Scales every coefficient by `c`.
    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            coefficients: self.coefficients.iter().map(|a| a * c).collect(),
        }
    }

    /// Synthetic division by the monic linear factor `λ − root`: returns
    /// `(quotient, remainder)` with `self = quotient·(λ − root) + remainder`.
    pub fn divide_by_linear(&self, root: &Scalar) -> (Polynomial, Scalar) {
        let field = root.field();
        if self.is_zero() {
            return (Polynomial::zero(), field.zero());
        }
        let mut quotient = vec![field.zero(); self.coefficients.len() - 1];
        let mut carry = field.zero();
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            let value = &(&carry * root) + c;
            if k == 0 {
                return (
                    Polynomial {
                        coefficients: {
                            let mut q = quotient;
                            while q.last().is_some_and(Scalar::is_zero) {
                                q.pop();
                            }
                            q
                        },
                    },
                    value,
                );
            }
            quotient[k - 1] = value.clone();
            carry = value;
        }
        unreachable!("loop returns at k == 0");
    }

    /// The formal derivative; the zero polynomial differentiates to itself.
    pub fn derivative(&self) -> Polynomial {
        if self.coefficients.len() <= 1 {
            return Polynomial::zero();
        }
        let field = self.coefficients[0].field();
        let coefficients = self
            .coefficients
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| &field.from_integer(k as i64) * c)
            .collect();
        Polynomial::from_coefficients(coefficients).expect("derivative coefficients share a field")
    }

    /// Long division: returns `(quotient, remainder)` with
    /// `self = quotient·divisor + remainder` and
    /// `deg(remainder) < deg(divisor)`.
    ///
    /// # Errors
    ///
    /// [`PolyError::ZeroDivisor`] when `divisor` is the zero polynomial, or
    /// [`PolyError::Field`] when the operands live in different fields.
    pub fn divide(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial), PolyError> {
        let Some(divisor_degree) = divisor.degree() else {
            return Err(PolyError::ZeroDivisor);
        };
        if self.is_zero() {
            return Ok((Polynomial::zero(), Polynomial::zero()));
        }
        // Surfaces a field mismatch before the main loop.
        self.coefficients[0].try_add(&divisor.coefficients[0])?;
        let lead_inv = divisor
            .leading_coefficient()
            .expect("nonzero divisor has a leading coefficient")
            .inv()
            .expect("leading coefficients are nonzero");

        let mut remainder = self.coefficients.clone();
        let mut quotient = vec![
            self.coefficients[0].field().zero();
            self.coefficients.len().saturating_sub(divisor_degree)
        ];
        while remainder.len() > divisor_degree {
            // Trailing zeros are stripped below, so the top coefficient —
            // and with it the quotient coefficient — is always nonzero.
            let factor = remainder.last().expect("nonempty") * &lead_inv;
            let shift = remainder.len() - 1 - divisor_degree;
            for (k, d) in divisor.coefficients.iter().enumerate() {
                let sub = &factor * d;
                remainder[shift + k] = &remainder[shift + k] - &sub;
            }
            quotient[shift] = factor;
            remainder.pop();
            while remainder.last().is_some_and(Scalar::is_zero) {
                remainder.pop();
            }
        }
        let strip = |mut v: Vec<Scalar>| {
            while v.last().is_some_and(Scalar::is_zero) {
                v.pop();
            }
            Polynomial { coefficients: v }
        };
        Ok((strip(quotient), strip(remainder)))
    }

    /// The monic multiple of `self` (leading coefficient scaled to 1); the
    /// zero polynomial is returned unchanged.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => Polynomial::zero(),
            Some(lead) if lead.is_one() => self.clone(),
            Some(lead) => {
                let inv = lead.inv().expect("leading coefficients are nonzero");
                self.scale(&inv)
            }
        }
    }
}

/// The monic greatest common divisor by the Euclidean algorithm; by
/// convention `gcd(0, 0) = 0` and `gcd(f, 0) = monic(f)`.
pub fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let mut first = a.clone();
    let mut second = b.clone();
    while !second.is_zero() {
        let (_, r) = first
            .divide(&second)
            .expect("divisor checked nonzero in loop condition");
        first = second;
        second = r;
    }
    first.monic()
}

fn check_nodes(nodes: &[Scalar], values: &[Scalar]) -> Result<Field, PolyError> {
    if nodes.is_empty() {
        return Err(PolyError::Empty);
    }
    if nodes.len() != values.len() {
        return Err(PolyError::LengthMismatch {
            nodes: nodes.len(),
            values: values.len(),
        });
    }
    let field = common_field(nodes)?;
    for v in values {
        if v.field() != field {
            return Err(FieldError::MismatchedFields {
                left: field,
                right: v.field(),
            }
            .into());
        }
    }
    for i in 0..nodes.len() {
        for j in (i + 1)..nodes.len() {
            if nodes[i] == nodes[j] {
                return Err(PolyError::DuplicateNode {
                    first: i,
                    second: j,
                });
            }
        }
    }
    Ok(field)
}

/// Interpolates the unique polynomial of degree ≤ n−1 through
/// `(nodes[i], values[i])`, via the product formula (see module docs).
pub fn lagrange_interpolate(
    nodes: &[Scalar],
    values: &[Scalar],
) -> Result<Polynomial, PolyError> {
    check_nodes(nodes, values)?;
    // Master polynomial M(λ) = ∏_k (λ − c_k).
    let mut master = Polynomial::constant(nodes[0].field().one());
    for c in nodes {
        master = master.mul(&Polynomial::linear_from_root(c));
    }
    let mut result = Polynomial::zero();
    for (i, (c_i, d_i)) in nodes.iter().zip(values).enumerate() {
        if d_i.is_zero() {
            continue;
        }
        let (basis_numerator, remainder) = master.divide_by_linear(c_i);
        debug_assert!(remainder.is_zero(), "c_i is a root of the master product");
        let mut denom = c_i.field().one();
        for (k, c_k) in nodes.iter().enumerate() {
            if k != i {
                denom *= &(c_i - c_k);
            }
        }
        let weight = d_i.try_div(&denom)?;
        result = result.add(&basis_numerator.scale(&weight));
    }
    Ok(result)
}

/// The coefficient of `λ^(n−1)` in the interpolant, computed directly as
/// `Σ_i d_i ∏_{k≠i} 1/(c_i − c_k)` without building the full polynomial.
pub fn leading_coefficient(nodes: &[Scalar], values: &[Scalar]) -> Result<Scalar, PolyError> {
    let field = check_nodes(nodes, values)?;
    let mut acc = field.zero();
    for (i, (c_i, d_i)) in nodes.iter().zip(values).enumerate() {
        if d_i.is_zero() {
            continue;
        }
        let mut denom = field.one();
        for (k, c_k) in nodes.iter().enumerate() {
            if k != i {
                denom *= &(c_i - c_k);
            }
        }
        acc += &d_i.try_div(&denom)?;
    }
    Ok(acc)
}

/// Solves the unit-sum system `Σ_i λ_i/(a_i − b_j) = 1` for all `j` in
/// closed form: `A_i = ∏_k (a_i − b_k) / ∏_{k≠i} (a_i − a_k)`.
///
/// Requires the 2n scalars of `a ∪ b` to be mutually distinct, which makes
/// every denominator above (and every `a_i − b_j`) nonzero.
pub fn solve_unit_sum_system(a: &[Scalar], b: &[Scalar]) -> Result<Vec<Scalar>, PolyError> {
    if a.is_empty() {
        return Err(PolyError::Empty);
    }
    if a.len() != b.len() {
        return Err(PolyError::LengthMismatch {
            nodes: a.len(),
            values: b.len(),
        });
    }
    let field = common_field(a)?;
    for v in b {
        if v.field() != field {
            return Err(FieldError::MismatchedFields {
                left: field,
                right: v.field(),
            }
            .into());
        }
    }
    let all: Vec<&Scalar> = a.iter().chain(b.iter()).collect();
    for i in 0..all.len() {
        for j in (i + 1)..all.len() {
            if all[i] == all[j] {
                let name = |k: usize| {
                    if k < a.len() {
                        format!("a[{k}]")
                    } else {
                        format!("b[{}]", k - a.len())
                    }
                };
                return Err(PolyError::RepeatedScalar {
                    description: format!("{} = {} = {}", name(i), name(j), all[i]),
                });
            }
        }
    }
    let mut out = Vec::with_capacity(a.len());
    for (i, a_i) in a.iter().enumerate() {
        let mut numer = field.one();
        for b_k in b {
            numer *= &(a_i - b_k);
        }
        let mut denom = field.one();
        for (k, a_k) in a.iter().enumerate() {
            if k != i {
                denom *= &(a_i - a_k);
            }
        }
        out.push(numer.try_div(&denom)?);
    }
    Ok(out)
}
