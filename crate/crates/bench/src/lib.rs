//! Shared fixtures for the criterion micro-benchmarks: deterministic random
//! data sets and right-hand sides matching the ones the CLI benchmark uses.

use cauchykit::{generate_data, CauchyData, Field, Scalar};

/// Deterministic valid data with 2n pairwise-distinct rationals.
pub fn fixture(n: usize, seed: u64) -> CauchyData {
    generate_data(&Field::Rational, n, seed).expect("rational generation always succeeds")
}

/// A scaled unit column: zero everywhere except `scale` in slot `k`. The
/// structured solver's cost is then dominated by its quadratic kernel
/// rather than by big-integer growth in the right-hand side.
pub fn unit_rhs(field: &Field, n: usize, k: usize, scale: i64) -> Vec<Scalar> {
    let mut rhs = vec![field.zero(); n];
    rhs[k] = field.from_integer(scale);
    rhs
}
