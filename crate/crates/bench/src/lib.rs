//! Shared inputs for the benchmarks.

use std::sync::Arc;

use visroute_core::instance::{random_instance, RandomInstanceParams};
use visroute_core::Instance;

/// Sizes every benchmark group sweeps over.
pub const SIZES: [usize; 3] = [20, 40, 80];

/// Seeded instance with a moderate constraint density.
pub fn instance(n: usize) -> Arc<Instance> {
    Arc::new(random_instance(&RandomInstanceParams::new(n, 0.3, 0xbe9c_u64 + n as u64)).expect("generator succeeds"))
}
