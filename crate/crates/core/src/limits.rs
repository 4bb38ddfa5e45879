/// Budgets guarding the exponential searches and the homology computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest poset accepted by the automorphism search.
    pub max_elements: usize,
    /// Largest automorphism group that will be materialized.
    pub max_group_order: usize,
    /// Node expansions allowed in a single backtracking search.
    pub max_search_nodes: u64,
    /// Largest order complex (number of nonempty simplices).
    pub max_simplices: usize,
    /// Largest group handled by table isomorphism testing.
    pub max_iso_group_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: 500,
            max_group_order: 1_000_000,
            max_search_nodes: 10_000_000,
            max_simplices: 1_000_000,
            max_iso_group_order: 5040,
        }
    }
}

impl Limits {
    pub const ENV_MAX_AUT: &'static str = "ALEXLAB_MAX_AUT";
    pub const ENV_MAX_SIMPLICES: &'static str = "ALEXLAB_MAX_SIMPLICES";

    /// Defaults overridden by `ALEXLAB_MAX_AUT` / `ALEXLAB_MAX_SIMPLICES` when set.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(v) = env_usize(Self::ENV_MAX_AUT) {
            limits.max_group_order = v;
        }
        if let Some(v) = env_usize(Self::ENV_MAX_SIMPLICES) {
            limits.max_simplices = v;
        }
        limits
    }
}

fn env_usize(name: &str) -> Option<usize> {
    std::env::var(name).ok().and_then(|v| v.trim().parse().ok())
}
