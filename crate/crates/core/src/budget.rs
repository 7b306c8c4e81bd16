//! Resource limits shared by the enumerating operations.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest finite quotient ring or local search space.
    pub quotient: u64,
    /// Search-node cap for lattice enumeration.
    pub enumeration: usize,
    /// Coefficient box for ε-searches outside the decisive domain.
    pub eps_box: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { quotient: 1_000_000, enumeration: 100_000, eps_box: 50 }
    }
}
