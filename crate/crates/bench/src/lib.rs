//! Shared inputs for the criterion benches.

use logseries::sampling::log_grid;
use logseries::PositiveInput;

/// Log-spaced arguments covering `[1e-8, 1e8]`.
pub fn grid_inputs(count: usize) -> Vec<PositiveInput> {
    log_grid(1e-8, 1e8, count)
        .into_iter()
        .map(|x| PositiveInput::new(x).expect("grid points are positive"))
        .collect()
}
