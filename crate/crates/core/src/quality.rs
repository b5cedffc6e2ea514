//! Ball quality as coverage × specificity, and the weighted distribution
//! measure used by the greedy baseline.

use serde::{Deserialize, Serialize};

use crate::division::SplitResult;
use crate::error::{Error, Result};
use crate::model::{dist, Dataset, GranularBall};

/// Slack added to the average radius when counting covered members, so
/// members sitting exactly on the boundary count regardless of rounding.
pub const COVERAGE_SLACK: f64 = 1e-12;

/// `gamma` weights specificity; `delta` scales the `sqrt(n)` leaf-size threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QualityParams {
    pub gamma: f64,
    pub delta: f64,
}

impl QualityParams {
    pub fn new(gamma: f64, delta: f64) -> Result<Self> {
        let p = Self { gamma, delta };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma.is_finite() && self.gamma >= 0.0) {
            return Err(Error::InvalidParam(format!(
                "gamma must be finite and >= 0, got {}",
                self.gamma
            )));
        }
        if !(self.delta > 0.0 && self.delta <= 1.0) {
            return Err(Error::InvalidParam(format!(
                "delta must lie in (0, 1], got {}",
                self.delta
            )));
        }
        Ok(())
    }

    /// Balls with more members than this are split when building the division tree.
    pub fn size_threshold(&self, n: usize) -> f64 {
        self.delta * (n as f64).sqrt()
    }
}

/// Number of members within the average radius of the center.
pub fn coverage(ball: &GranularBall, dataset: &Dataset) -> f64 {
    let bound = ball.avg_radius() + COVERAGE_SLACK;
    ball.members()
        .iter()
        .filter(|&&i| dist(dataset.row(i), ball.center()) <= bound)
        .count() as f64
}

/// `exp(-gamma * R_ave)`.
pub fn specificity(ball: &GranularBall, params: &QualityParams) -> f64 {
    (-params.gamma * ball.avg_radius()).exp()
}

pub fn ball_quality(ball: &GranularBall, dataset: &Dataset, params: &QualityParams) -> f64 {
    coverage(ball, dataset) * specificity(ball, params)
}

/// Sum of ball qualities in the given order.
pub fn total_quality<'a>(
    balls: impl IntoIterator<Item = &'a GranularBall>,
    dataset: &Dataset,
    params: &QualityParams,
) -> f64 {
    balls
        .into_iter()
        .map(|b| ball_quality(b, dataset, params))
        .sum()
}

/// Member-count-weighted mean of the two sub-balls' average radii.
pub fn weighted_distribution_measure(dataset: &Dataset, split: &SplitResult) -> Result<f64> {
    if split.degenerate || split.alpha.is_empty() || split.beta.is_empty() {
        return Err(Error::DegenerateSplit);
    }
    let a = GranularBall::from_sorted(dataset, split.alpha.clone());
    let b = GranularBall::from_sorted(dataset, split.beta.clone());
    Ok(weighted_measure_of(&a, &b))
}

pub(crate) fn weighted_measure_of(a: &GranularBall, b: &GranularBall) -> f64 {
    let total = (a.len() + b.len()) as f64;
    (a.len() as f64 * a.avg_radius() + b.len() as f64 * b.avg_radius()) / total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::division::split_farthest_pair;
    use crate::model::make_ball;

    fn line(xs: &[f64]) -> Dataset {
        let rows: Vec<Vec<f64>> = xs.iter().map(|&x| vec![x]).collect();
        Dataset::from_rows("line", &rows, None).unwrap()
    }

    fn p(gamma: f64) -> QualityParams {
        QualityParams::new(gamma, 1.0).unwrap()
    }

    #[test]
    fn coverage_cases() {
        let ds = line(&[0.0, 1.0, 10.0, 11.0]);
        let b = make_ball(&ds, &[0, 1, 2, 3]).unwrap();
        // distances 5.5, 4.5, 4.5, 5.5 against R_ave = 5
        let oracle = [0.0f64, 1.0, 10.0, 11.0]
            .iter()
            .filter(|&&x| (x - 5.5f64).abs() <= 5.0)
            .count() as f64;
        assert_eq!(coverage(&b, &ds), oracle);
        assert_eq!(coverage(&b, &ds), 2.0);
        assert_eq!(coverage(&make_ball(&ds, &[2]).unwrap(), &ds), 1.0);

        let ds2 = Dataset::from_rows("p", &[vec![0.0, 0.0], vec![2.0, 0.0]], None).unwrap();
        assert_eq!(coverage(&make_ball(&ds2, &[0, 1]).unwrap(), &ds2), 2.0);
    }

    #[test]
    fn specificity_cases() {
        let ds = line(&[0.0, 1.0, 10.0, 11.0]);
        let single = make_ball(&ds, &[0]).unwrap();
        assert_eq!(specificity(&single, &p(3.7)), 1.0);
        let whole = make_ball(&ds, &[0, 1, 2, 3]).unwrap();
        assert_eq!(specificity(&whole, &p(0.0)), 1.0);
        assert!((specificity(&whole, &p(0.1)) - 0.606_530_659_712_633_4).abs() < 1e-12);
    }

    #[test]
    fn quality_cases() {
        let ds = line(&[0.0, 1.0, 10.0, 11.0]);
        assert_eq!(ball_quality(&make_ball(&ds, &[3]).unwrap(), &ds, &p(5.0)), 1.0);
        let whole = make_ball(&ds, &[0, 1, 2, 3]).unwrap();
        assert!((ball_quality(&whole, &ds, &p(0.1)) - 2.0 * (-0.5f64).exp()).abs() < 1e-12);
        assert!((ball_quality(&whole, &ds, &p(0.1)) - 1.213_061_319_425_267).abs() < 1e-12);
        let pair = make_ball(&ds, &[0, 1]).unwrap();
        assert!((ball_quality(&pair, &ds, &p(0.1)) - 1.902_458_849_001_428).abs() < 1e-12);
    }

    #[test]
    fn weighted_measure_cases() {
        let ds = line(&[0.0, 1.0, 10.0, 11.0]);
        let s = split_farthest_pair(&ds, &[0, 1, 2, 3]).unwrap();
        assert!((weighted_distribution_measure(&ds, &s).unwrap() - 0.5).abs() < 1e-12);

        let s2 = split_farthest_pair(&ds, &[0, 1]).unwrap();
        assert_eq!(weighted_distribution_measure(&ds, &s2).unwrap(), 0.0);

        // two halves, each of radius 1
        let ds3 = line(&[0.0, 2.0, 100.0, 102.0]);
        let s3 = split_farthest_pair(&ds3, &[0, 1, 2, 3]).unwrap();
        assert!((weighted_distribution_measure(&ds3, &s3).unwrap() - 1.0).abs() < 1e-12);

        let same = line(&[1.0, 1.0]);
        let s4 = split_farthest_pair(&same, &[0, 1]).unwrap();
        assert!(matches!(
            weighted_distribution_measure(&same, &s4),
            Err(Error::DegenerateSplit)
        ));
    }

    #[test]
    fn params_validation() {
        assert!(QualityParams::new(-0.1, 0.5).is_err());
        assert!(QualityParams::new(1.0, 0.0).is_err());
        assert!(QualityParams::new(1.0, 1.5).is_err());
        assert!(QualityParams::new(0.0, 1.0).is_ok());
    }
}
