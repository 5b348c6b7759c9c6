//! Resource caps shared by the enumerating and factoring operations.

use crate::factor::DEFAULT_FACTOR_DEGREE_CAP;

pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 24;
pub const DEFAULT_TORSION_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest algebra size `q^dim` that may be scanned element by element.
    pub enumeration_cap: u128,
    /// Largest degree factored over Q.
    pub factor_degree_cap: usize,
    /// Largest multiplicative order searched for by brute force.
    pub torsion_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            factor_degree_cap: DEFAULT_FACTOR_DEGREE_CAP,
            torsion_cap: DEFAULT_TORSION_CAP,
        }
    }
}
