//! Resource guards for the exponential-search kernels.

/// Environment override for vertex-count limits.
pub const MAX_VERTICES_ENV: &str = "CYCLEFORGE_MAX_VERTICES";

/// Search kernels use single-word bitsets; graphs beyond this order are
/// refused outright.
pub const KERNEL_MAX_VERTICES: usize = 64;

/// Default vertex cap for the longest-cycle census and hamiltonian counts.
pub const DEFAULT_SEARCH_MAX_VERTICES: usize = 64;

/// Default vertex cap for exhaustive cycle enumeration.
pub const DEFAULT_ENUMERATION_MAX_VERTICES: usize = 32;

/// Reads the environment override, clamped to what the kernels support.
pub fn max_vertices_env(default: usize) -> usize {
    match std::env::var(MAX_VERTICES_ENV) {
        Ok(s) => s.parse().unwrap_or(default),
        Err(_) => default,
    }
}

/// Vertex and node-expansion budgets for one search invocation.
#[derive(Debug, Clone)]
pub struct SearchLimits {
    pub max_vertices: usize,
    pub node_budget: Option<u64>,
}

impl SearchLimits {
    pub fn search_default() -> SearchLimits {
        SearchLimits {
            max_vertices: max_vertices_env(DEFAULT_SEARCH_MAX_VERTICES).min(KERNEL_MAX_VERTICES),
            node_budget: None,
        }
    }

    pub fn enumeration_default() -> SearchLimits {
        SearchLimits {
            max_vertices: max_vertices_env(DEFAULT_ENUMERATION_MAX_VERTICES)
                .min(KERNEL_MAX_VERTICES),
            node_budget: None,
        }
    }
}
