//! Shared inputs for the benchmarks.

use disent_core::{generate, minmax_scale, ScaledTable, Scenario, ScenarioSpec};

/// Scaled `(factors, representation)` of a scenario with seed 0.
pub fn scaled_scenario(scenario: Scenario, samples: usize) -> (ScaledTable, ScaledTable) {
    let (y, z) = generate(&ScenarioSpec::new(scenario, samples, 0)).expect("valid scenario");
    (
        minmax_scale(&y).expect("finite"),
        minmax_scale(&z).expect("finite"),
    )
}
