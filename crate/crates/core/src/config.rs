/// Resource budgets for the ideal engine.
///
/// Desk-scale problems (ambient dimension ≤ 4, up to 8 hyperplanes) fit
/// comfortably in the default profile. Exhausting a budget aborts the
/// computation with a reported error instead of silently truncating, so a
/// result is always exact or absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    /// Maximum number of S-pairs processed in a single Buchberger run.
    pub max_spairs: usize,
    /// Maximum number of terms tolerated in any intermediate polynomial.
    pub max_poly_terms: usize,
    /// When set, every flat-power expansion is re-verified against the
    /// degree-by-degree linear-algebra intersection oracle up to this degree.
    pub expand_check_degree: Option<u32>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            max_spairs: 100_000,
            max_poly_terms: 200_000,
            expand_check_degree: Some(6),
        }
    }
}

impl EngineConfig {
    /// Named budget profiles accepted by the CLI (`--budget`) and the
    /// `ARRMULT_BUDGET` environment variable.
    pub fn profile(name: &str) -> Option<EngineConfig> {
        match name {
            "default" => Some(EngineConfig::default()),
            "large" => Some(EngineConfig {
                max_spairs: 1_000_000,
                max_poly_terms: 2_000_000,
                expand_check_degree: Some(6),
            }),
            "unchecked" => Some(EngineConfig {
                // Same budgets as `default` but without the always-on
                // expansion oracle; useful for timing comparisons.
                expand_check_degree: None,
                ..EngineConfig::default()
            }),
            "strict" => Some(EngineConfig {
                max_spairs: 2_000,
                max_poly_terms: 10_000,
                expand_check_degree: Some(6),
            }),
            _ => None,
        }
    }

    /// Every profile name `profile` accepts, for help messages.
    pub const PROFILE_NAMES: &'static [&'static str] =
        &["default", "large", "unchecked", "strict"];
}
