//! Experiment orchestration: configuration, parameter sweeps, and report
//! generation (tables, curves, scatter plots, heatmaps).

pub mod config;
pub mod report;
pub mod svg;
pub mod sweep;

pub use config::{load_config, ExperimentConfig};
pub use sweep::{run_sweep, Row, SweepOutcome, VariantKey};

use crate::error::HarnessError;

/// Order-statistic quartiles: zero-based sorted indices `floor((m-1)/4)`,
/// `floor((m-1)/2)`, `floor(3(m-1)/4)`. Every reported value is an actual
/// sample point; no interpolation.
pub fn quartiles(samples: &[f64]) -> Result<(f64, f64, f64), HarnessError> {
    if samples.is_empty() {
        return Err(HarnessError::EmptyInput);
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let m = sorted.len();
    Ok((
        sorted[(m - 1) / 4],
        sorted[(m - 1) / 2],
        sorted[3 * (m - 1) / 4],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_samples() {
        assert_eq!(
            quartiles(&[5.0, 3.0, 1.0, 4.0, 2.0]).unwrap(),
            (2.0, 3.0, 4.0)
        );
    }

    #[test]
    fn paper_sized_indices() {
        let samples: Vec<f64> = (0..1001).map(|i| i as f64).collect();
        assert_eq!(quartiles(&samples).unwrap(), (250.0, 500.0, 750.0));
    }

    #[test]
    fn single_sample() {
        assert_eq!(quartiles(&[7.0]).unwrap(), (7.0, 7.0, 7.0));
    }

    #[test]
    fn empty_rejected() {
        assert!(matches!(quartiles(&[]), Err(HarnessError::EmptyInput)));
    }
}
