//! Deterministic pseudo-random generation of valid Cauchy data.
//!
//! Reproducibility across platforms and releases matters more here than
//! randomness quality, so instead of an external randomness crate this
//! module uses one fully documented 64-bit linear congruential generator:
//!
//! ```text
//! state ← state · 6364136223846793005 + 1442695040888963407   (mod 2⁶⁴)
//! ```
//!
//! (the multiplier/increment pair from Knuth's MMIX), seeded directly with
//! the caller's seed. Each step returns the full new state. Bounded draws
//! use the widening-multiply reduction `(value · bound) >> 64`, whose bias
//! is below 2⁻⁴⁸ for every bound under 2¹⁶ — irrelevant for test-data
//! generation and far cheaper than rejection.
//!
//! [`generate_data`] draws 2n pairwise-distinct scalars:
//!
//! - over ℚ, a partial Fisher–Yates shuffle selects 2n distinct integers
//!   from the pool −2n..2n−1, keeping magnitudes small so downstream exact
//!   arithmetic stays fast;
//! - over GF(p) the same pool technique is used when p fits comfortably in
//!   memory, and rejection sampling of residues otherwise; either way 2n ≤ p
//!   is required, since GF(p) has only p elements.
//!
//! The first n selected values become the x-list, the next n the x̃-list.

use num_bigint::BigInt;
use std::collections::HashSet;
use thiserror::Error;

use crate::cauchy::CauchyData;
use crate::scalar::{Field, Scalar};

/// Errors from data generation.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    /// n must be at least 1.
    #[error("cannot generate data with n = 0")]
    Empty,
    /// GF(p) cannot host 2n pairwise-distinct scalars when 2n > p.
    #[error("field GF({modulus}) is too small for {needed} distinct scalars")]
    FieldTooSmall { needed: u64, modulus: u64 },
}

/// The documented linear congruential generator. Same seed ⇒ same stream,
/// on every platform.
#[derive(Debug, Clone)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Lcg {
        Lcg { state: seed }
    }

    /// Advances the state once and returns it.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(6_364_136_223_846_793_005)
            .wrapping_add(1_442_695_040_888_963_407);
        self.state
    }

    /// A value in `0..bound` via widening multiply.
    ///
    /// # Panics
    ///
    /// Panics if `bound` is zero.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "bound must be positive");
        ((u128::from(self.next_u64()) * u128::from(bound)) >> 64) as u64
    }
}

/// Draws valid Cauchy data: 2n pairwise-distinct scalars, first half the
/// x-list, second half the x̃-list. Deterministic in (field, n, seed).
pub fn generate_data(field: &Field, n: usize, seed: u64) -> Result<CauchyData, GenError> {
    if n == 0 {
        return Err(GenError::Empty);
    }
    let mut rng = Lcg::new(seed);
    let values: Vec<Scalar> = match field {
        Field::Rational => {
            let pool: Vec<i64> = (-(2 * n as i64)..2 * n as i64).collect();
            select_from_pool(pool, 2 * n, &mut rng)
                .into_iter()
                .map(|v| field.from_integer(v))
                .collect()
        }
        Field::Prime(p) => {
            let needed = 2 * n as u64;
            if needed > *p {
                return Err(GenError::FieldTooSmall {
                    needed,
                    modulus: *p,
                });
            }
            let residues: Vec<u64> = if *p <= 1 << 16 {
                select_from_pool((0..*p).collect(), 2 * n, &mut rng)
            } else {
                // p vastly exceeds 2n here, so collisions are rare and
                // rejection terminates almost immediately.
                let mut seen = HashSet::with_capacity(2 * n);
                let mut out = Vec::with_capacity(2 * n);
                while out.len() < 2 * n {
                    let candidate = rng.below(*p);
                    if seen.insert(candidate) {
                        out.push(candidate);
                    }
                }
                out
            };
            residues
                .into_iter()
                .map(|v| field.from_bigint(&BigInt::from(v)))
                .collect()
        }
    };
    let x = values[..n].to_vec();
    let x_tilde = values[n..].to_vec();
    Ok(CauchyData::new(x, x_tilde).expect("selected values are pairwise distinct"))
}

/// Partial Fisher–Yates: permutes the first `count` slots uniformly over all
/// size-`count` ordered selections, then truncates.
fn select_from_pool<T: Copy>(mut pool: Vec<T>, count: usize, rng: &mut Lcg) -> Vec<T> {
    debug_assert!(count <= pool.len());
    for k in 0..count {
        let j = k + rng.below((pool.len() - k) as u64) as usize;
        pool.swap(k, j);
    }
    pool.truncate(count);
    pool
}
