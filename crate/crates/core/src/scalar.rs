//! Exact field scalars: arbitrary-precision rationals and prime fields GF(p).
//!
//! Every algorithm in this crate is generic over a single runtime-chosen
//! field, represented by [`Field`]. A [`Scalar`] is one element of one field;
//! the two variants are never mixed inside a computation. Datasets pick their
//! field once (at parse/construction time) and all derived values stay in it.
//!
//! Invariants maintained by construction:
//!
//! - `Rational` values are always in lowest terms with a positive denominator.
//! - `ModP` residues always lie in `[0, p)` and the modulus is a verified
//!   prime that fits in a `u64` (products are computed through `u128`, so
//!   arithmetic is exact for every such modulus).
//!
//! Fallible arithmetic ([`Scalar::try_add`] and friends) reports mixed-field
//! operands and division by zero as [`FieldError`]s; the operator impls
//! (`+`, `-`, `*`, `/`) are provided for algorithm-internal code that has
//! already validated its inputs and panic with a descriptive message on
//! those same conditions.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Errors from field selection, scalar parsing, and scalar arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    /// Two operands live in different fields (different variants or moduli).
    #[error("mismatched fields: {left} vs {right}")]
    MismatchedFields {
        /// Field of the left operand.
        left: Field,
        /// Field of the right operand.
        right: Field,
    },
    /// Division by (or inversion of) zero.
    #[error("division by zero in {field}")]
    DivisionByZero {
        /// Field in which the division was attempted.
        field: Field,
    },
    /// A prime field was requested with a composite (or < 2) modulus.
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    /// A field descriptor string was not `Q` or `gf:<prime>`.
    #[error("unrecognized field {0:?}: expected \"Q\" or \"gf:<prime>\"")]
    UnrecognizedField(String),
    /// A scalar token failed to parse in the declared field.
    #[error("cannot parse scalar {token:?} in {field}")]
    InvalidScalar {
        /// The offending token, verbatim.
        token: String,
        /// Field the token was parsed against.
        field: Field,
    },
    /// A rational literal had denominator zero.
    #[error("scalar {token:?} has denominator zero")]
    ZeroDenominator {
        /// The offending token, verbatim.
        token: String,
    },
}

/// The coefficient field of a dataset: `Q` or `GF(p)` for a u64 prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    /// Arbitrary-precision rational numbers.
    Rational,
    /// The prime field of integers modulo `p`.
    Prime(u64),
}

impl Field {
    /// Builds the prime field GF(p), verifying primality of `p`.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if is_prime_u64(p) {
            Ok(Field::Prime(p))
        } else {
            Err(FieldError::NonPrimeModulus(p))
        }
    }

    /// Parses a field descriptor: `Q` (rationals) or `gf:<p>` (prime field).
    pub fn parse(text: &str) -> Result<Self, FieldError> {
        if text == "Q" {
            return Ok(Field::Rational);
        }
        if let Some(rest) = text.strip_prefix("gf:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| FieldError::UnrecognizedField(text.to_string()))?;
            return Field::prime(p);
        }
        Err(FieldError::UnrecognizedField(text.to_string()))
    }

    /// The additive identity of this field.
    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::ModP {
                residue: 0,
                modulus: *p,
            },
        }
    }

    /// The multiplicative identity of this field.
    pub fn one(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::one()),
            Field::Prime(p) => Scalar::ModP {
                residue: 1 % *p,
                modulus: *p,
            },
        }
    }

    /// Embeds a signed machine integer into this field.
    pub fn from_integer(&self, value: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(value))),
            Field::Prime(p) => {
                let m = i128::from(*p);
                let r = (i128::from(value) % m + m) % m;
                Scalar::ModP {
                    residue: r as u64,
                    modulus: *p,
                }
            }
        }
    }

    /// Embeds a big integer into this field (reducing mod p for GF(p)).
    pub fn from_bigint(&self, value: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(value.clone())),
            Field::Prime(p) => {
                let m = BigInt::from(*p);
                let r = value.mod_floor(&m);
                let (_, digits) = r.to_u64_digits();
                Scalar::ModP {
                    residue: digits.first().copied().unwrap_or(0),
                    modulus: *p,
                }
            }
        }
    }

    /// The field characteristic: 0 for `Q`, `p` for GF(p).
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    /// Whether the field characteristic divides `k` (always false over `Q`
    /// for `k > 0`; zero is divisible by everything).
    pub fn characteristic_divides(&self, k: u64) -> bool {
        match self {
            Field::Rational => k == 0,
            Field::Prime(p) => k % *p == 0,
        }
    }

    /// Parses one scalar token in this field.
    ///
    /// Over `Q` the accepted forms are integer (`-17`) and fraction
    /// (`-7/3`, `3/-4`); results are normalized to lowest terms with a
    /// positive denominator. Over GF(p) any (optionally signed) integer
    /// literal is accepted and reduced into `[0, p)`.
    pub fn parse_scalar(&self, token: &str) -> Result<Scalar, FieldError> {
        let invalid = || FieldError::InvalidScalar {
            token: token.to_string(),
            field: *self,
        };
        let parse_int = |text: &str| -> Result<BigInt, FieldError> {
            let trimmed = text.trim();
            if trimmed.is_empty() {
                return Err(invalid());
            }
            BigInt::from_str(trimmed).map_err(|_| invalid())
        };
        match self {
            Field::Rational => match token.split_once('/') {
                None => Ok(Scalar::Rational(BigRational::from_integer(parse_int(
                    token,
                )?))),
                Some((num, den)) => {
                    let numer = parse_int(num)?;
                    let denom = parse_int(den)?;
                    if denom.is_zero() {
                        return Err(FieldError::ZeroDenominator {
                            token: token.to_string(),
                        });
                    }
                    Ok(Scalar::Rational(BigRational::new(numer, denom)))
                }
            },
            Field::Prime(_) => {
                let value = parse_int(token)?;
                Ok(self.from_bigint(&value))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "gf:{p}"),
        }
    }
}

/// One exact field element. See the module docs for invariants.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// An arbitrary-precision rational in lowest terms.
    Rational(BigRational),
    /// A residue modulo a u64 prime.
    ModP {
        /// Canonical representative in `[0, modulus)`.
        residue: u64,
        /// The (verified prime) modulus.
        modulus: u64,
    },
}

impl Scalar {
    /// The field this scalar lives in.
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::ModP { modulus, .. } => Field::Prime(*modulus),
        }
    }

    /// Whether this is the additive identity.
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::ModP { residue, .. } => *residue == 0,
        }
    }

    /// Whether this is the multiplicative identity.
    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::ModP { residue, modulus } => *residue == 1 % *modulus,
        }
    }

    /// Borrows the underlying rational, if this is a `Q` scalar.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::ModP { .. } => None,
        }
    }

    /// Returns `(residue, modulus)`, if this is a GF(p) scalar.
    pub fn as_modp(&self) -> Option<(u64, u64)> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::ModP { residue, modulus } => Some((*residue, *modulus)),
        }
    }

    fn check_same_field(&self, other: &Scalar) -> Result<(), FieldError> {
        let (left, right) = (self.field(), other.field());
        if left == right {
            Ok(())
        } else {
            Err(FieldError::MismatchedFields { left, right })
        }
    }

    /// Exact sum; errors if the operands live in different fields.
    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.check_same_field(other)?;
        // Identity shortcuts: rational zeros otherwise still pay a gcd
        // normalization on the other operand's full bit length.
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::ModP { residue: a, modulus }, Scalar::ModP { residue: b, .. }) => {
                let p = u128::from(*modulus);
                Scalar::ModP {
                    residue: ((u128::from(*a) + u128::from(*b)) % p) as u64,
                    modulus: *modulus,
                }
            }
            _ => unreachable!("fields already checked equal"),
        })
    }

    /// Exact difference; errors if the operands live in different fields.
    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.check_same_field(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.negate());
        }
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::ModP { residue: a, modulus }, Scalar::ModP { residue: b, .. }) => {
                let p = u128::from(*modulus);
                Scalar::ModP {
                    residue: ((u128::from(*a) + p - u128::from(*b)) % p) as u64,
                    modulus: *modulus,
                }
            }
            _ => unreachable!("fields already checked equal"),
        })
    }

    /// Exact product; errors if the operands live in different fields.
    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.check_same_field(other)?;
        // Absorbing/identity shortcuts keep structurally sparse workloads
        // (unit vectors, identity blocks) from paying bignum reductions.
        if self.is_zero() || other.is_zero() {
            return Ok(self.field().zero());
        }
        if self.is_one() {
            return Ok(other.clone());
        }
        if other.is_one() {
            return Ok(self.clone());
        }
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::ModP { residue: a, modulus }, Scalar::ModP { residue: b, .. }) => {
                Scalar::ModP {
                    residue: mul_mod(*a, *b, *modulus),
                    modulus: *modulus,
                }
            }
            _ => unreachable!("fields already checked equal"),
        })
    }

    /// Exact quotient; errors on mixed fields or a zero divisor.
    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.check_same_field(other)?;
        if other.is_zero() {
            return Err(FieldError::DivisionByZero {
                field: other.field(),
            });
        }
        if self.is_zero() {
            return Ok(self.field().zero());
        }
        self.try_mul(&other.inv()?)
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero {
                field: self.field(),
            });
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::ModP { residue, modulus } => Scalar::ModP {
                // Fermat: a^(p-2) is the inverse of a mod a prime p.
                residue: pow_mod(*residue, *modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Additive inverse.
    pub fn negate(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::ModP { residue, modulus } => Scalar::ModP {
                residue: if *residue == 0 {
                    0
                } else {
                    *modulus - *residue
                },
                modulus: *modulus,
            },
        }
    }

    /// Total order used for sorting and multiset comparison: rationals by
    /// numeric value, GF(p) residues by canonical representative. Scalars
    /// from different fields order by an arbitrary (but fixed) convention;
    /// validated datasets never compare across fields.
    pub fn total_cmp(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (
                Scalar::ModP {
                    residue: a,
                    modulus: p,
                },
                Scalar::ModP {
                    residue: b,
                    modulus: q,
                },
            ) => p.cmp(q).then(a.cmp(b)),
            (Scalar::Rational(_), Scalar::ModP { .. }) => Ordering::Less,
            (Scalar::ModP { .. }, Scalar::Rational(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_cmp(other)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::ModP { residue, .. } => write!(f, "{residue}"),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $fallible:ident, $label:literal) => {
        impl std::ops::$trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$fallible(rhs)
                    .unwrap_or_else(|e| panic!(concat!("scalar ", $label, ": {}"), e))
            }
        }
        impl std::ops::$trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl std::ops::$trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, try_add, "addition");
scalar_binop!(Sub, sub, try_sub, "subtraction");
scalar_binop!(Mul, mul, try_mul, "multiplication");
scalar_binop!(Div, div, try_div, "division");

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.negate()
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.negate()
    }
}

impl std::ops::AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl std::ops::SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl std::ops::MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

/// Returns the single field shared by all scalars in `items`, or an error on
/// the first mismatch. Errors with `UnrecognizedField("<empty>")` on empty
/// input, since no field can be inferred.
pub fn common_field(items: &[Scalar]) -> Result<Field, FieldError> {
    let first = items
        .first()
        .ok_or_else(|| FieldError::UnrecognizedField("<empty>".to_string()))?
        .field();
    for item in &items[1..] {
        if item.field() != first {
            return Err(FieldError::MismatchedFields {
                left: first,
                right: item.field(),
            });
        }
    }
    Ok(first)
}

/// `a * b mod m`, exact for any u64 modulus (the product is formed in u128).
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

/// `base^exp mod m` by square-and-multiply.
pub(crate) fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut base = base % m;
    let mut acc = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin primality test, exact for all u64 inputs
/// (the fixed base set below is a known-complete witness set for u64).
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Converts a big integer into a rational scalar (used by the spectrum
/// machinery when mapping recovered integer roots back into `Q`).
pub(crate) fn rational_from_parts(numer: BigInt, denom: BigInt) -> Scalar {
    debug_assert!(!denom.is_zero());
    Scalar::Rational(BigRational::new(numer, denom))
}

/// Extracts `(numerator, denominator)` of a rational scalar.
pub(crate) fn rational_parts(s: &Scalar) -> Option<(&BigInt, &BigInt)> {
    s.as_rational().map(|r| (r.numer(), r.denom()))
}
