//! The `bench` subcommand: times the quadratic structured solve against the
//! cubic dense-elimination oracle on the same instances and reports CSV.

use std::time::Instant;

use cauchykit::{generate_data, solve_oracle, Field, Lcg, StructuredCauchy};

/// Benchmark parameters, all validated by the caller except the field.
pub struct BenchConfig {
    /// Matrix sizes to measure; each must be at least 2.
    pub sizes: Vec<usize>,
    /// Trials per size; at least 1.
    pub trials: usize,
    /// Field to run in.
    pub field: Field,
    /// Seed for the deterministic data/right-hand-side stream.
    pub seed: u64,
    /// Largest size at which the dense oracle is also run. Above it the
    /// oracle column is left empty and the match column is `-`: exact dense
    /// elimination grows so fast that big sizes would take hours.
    pub oracle_max: usize,
}

/// Runs the benchmark and renders the report: header
/// `n,structured_us,oracle_us,match`, then one row per (size, trial), in
/// order, single-threaded. Each trial solves C·y = c·e_k for a fresh
/// random unit column k and small scale c, so every trial exercises the
/// whole weight/kernel pipeline while the right-hand side itself stays
/// trivially cheap to build.
///
/// Per-trial wall times are measured independently around each solve call;
/// the one-time weight computation of the structured representation and the
/// dense materialization consumed by the oracle are shared setup, outside
/// every timed region.
pub fn run(config: &BenchConfig) -> Result<String, String> {
    let mut csv = String::from("n,structured_us,oracle_us,match\n");
    let mut rng = Lcg::new(config.seed);
    for &n in &config.sizes {
        let data_seed = rng.next_u64();
        let data =
            generate_data(&config.field, n, data_seed).map_err(|e| e.to_string())?;
        let structured = StructuredCauchy::new(data);
        let _ = structured.alphas();
        let dense = if n <= config.oracle_max {
            Some(structured.build())
        } else {
            None
        };
        for _ in 0..config.trials {
            let k = rng.below(n as u64) as usize;
            let scale = config.field.from_integer(rng.below(8) as i64 + 2);
            let mut rhs = vec![config.field.zero(); n];
            rhs[k] = scale;

            let start = Instant::now();
            let fast = structured.solve(&rhs).map_err(|e| e.to_string())?;
            let structured_us = start.elapsed().as_micros();

            match &dense {
                Some(matrix) => {
                    let start = Instant::now();
                    let slow = solve_oracle(matrix, &rhs).map_err(|e| e.to_string())?;
                    let oracle_us = start.elapsed().as_micros();
                    let matched = if fast == slow { "yes" } else { "no" };
                    csv.push_str(&format!("{n},{structured_us},{oracle_us},{matched}\n"));
                }
                None => {
                    csv.push_str(&format!("{n},{structured_us},,-\n"));
                }
            }
        }
    }
    Ok(csv)
}
