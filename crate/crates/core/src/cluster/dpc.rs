use super::{center_distances, check_k, ClusterAssignment, RunMeta};
use crate::error::{Error, Result};
use crate::model::GBSet;

/// Intermediate quantities of a density-peaks run, exposed for inspection.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityPeaks {
    pub cutoff: f64,
    pub density: Vec<f64>,
    pub separation: Vec<f64>,
    /// Nearest ball of higher density; `None` for the densest ball.
    pub leader: Vec<Option<usize>>,
    /// Balls chosen as cluster centers, in label order.
    pub centers: Vec<usize>,
}

impl DensityPeaks {
    /// Count-weighted Gaussian density, separation and leaders over ball centers.
    pub fn compute(gbset: &GBSet, k: usize, lambda: f64) -> Result<Self> {
        check_k(gbset, k)?;
        if !(lambda > 0.0 && lambda <= 1.0) {
            return Err(Error::InvalidParam(format!(
                "lambda must lie in (0, 1], got {lambda}"
            )));
        }
        let s = gbset.len();
        let d = center_distances(gbset);
        let max_d = d.iter().flatten().fold(0.0f64, |m, &v| m.max(v));
        let cutoff = lambda * max_d;
        if s > 1 && cutoff <= 0.0 {
            return Err(Error::DegenerateGeometry(
                "all ball centers coincide; truncation distance is zero".into(),
            ));
        }
        let sizes: Vec<f64> = gbset.balls().iter().map(|b| b.len() as f64).collect();
        let density: Vec<f64> = (0..s)
            .map(|i| {
                (0..s)
                    .filter(|&j| j != i)
                    .map(|j| {
                        let r = d[i][j] / cutoff;
                        sizes[j] * (-r * r).exp()
                    })
                    .sum()
            })
            .collect();

        // Decreasing density; equal densities rank the smaller index higher.
        let mut order: Vec<usize> = (0..s).collect();
        order.sort_by(|&a, &b| density[b].total_cmp(&density[a]).then(a.cmp(&b)));

        let mut separation = vec![0.0; s];
        let mut leader = vec![None; s];
        for (pos, &i) in order.iter().enumerate() {
            if pos == 0 {
                separation[i] = d[i].iter().fold(0.0f64, |m, &v| m.max(v));
                continue;
            }
            let mut best: Option<(usize, f64)> = None;
            for &j in &order[..pos] {
                let v = d[i][j];
                if best.is_none_or(|(bj, bv)| v < bv || (v == bv && j < bj)) {
                    best = Some((j, v));
                }
            }
            let (j, v) = best.expect("pos > 0");
            separation[i] = v;
            leader[i] = Some(j);
        }

        let mut ranked: Vec<usize> = (0..s).collect();
        let score: Vec<f64> = (0..s).map(|i| density[i] * separation[i]).collect();
        ranked.sort_by(|&a, &b| score[b].total_cmp(&score[a]).then(a.cmp(&b)));
        let mut centers: Vec<usize> = ranked[..k].to_vec();
        // The densest ball must lead a cluster; its score is maximal already, so
        // this only matters when scores are all zero.
        if s > 0 && !centers.contains(&order[0]) {
            centers[k - 1] = order[0];
        }
        Ok(Self {
            cutoff,
            density,
            separation,
            leader,
            centers,
        })
    }

    /// Labels every ball, following leaders in decreasing-density order.
    pub fn labels(&self) -> Vec<usize> {
        let s = self.density.len();
        let mut order: Vec<usize> = (0..s).collect();
        order.sort_by(|&a, &b| self.density[b].total_cmp(&self.density[a]).then(a.cmp(&b)));
        let mut labels = vec![usize::MAX; s];
        for (label, &c) in self.centers.iter().enumerate() {
            labels[c] = label;
        }
        for &i in &order {
            if labels[i] == usize::MAX {
                let j = self.leader[i].expect("only the densest ball lacks a leader");
                labels[i] = labels[j];
            }
        }
        labels
    }
}

/// Density-peaks clustering over balls with truncation distance `lambda * max center distance`.
pub fn gbdpc(gbset: &GBSet, k: usize, lambda: f64) -> Result<ClusterAssignment> {
    let peaks = DensityPeaks::compute(gbset, k, lambda)?;
    let labels = peaks.labels();
    Ok(ClusterAssignment::from_ball_labels(
        gbset,
        labels,
        RunMeta {
            method: "gbdpc".into(),
            k,
            sigma: None,
            lambda: Some(lambda),
            gamma: None,
            delta: None,
            seed: None,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{make_ball, Dataset};

    /// Balls of `count` coincident points at each 1-D position.
    fn balls_at(positions: &[f64], count: usize) -> (Dataset, GBSet) {
        let rows: Vec<Vec<f64>> = positions
            .iter()
            .flat_map(|&p| std::iter::repeat_n(vec![p], count))
            .collect();
        let ds = Dataset::from_rows("pos", &rows, None).unwrap();
        let balls = (0..positions.len())
            .map(|b| make_ball(&ds, &(b * count..(b + 1) * count).collect::<Vec<_>>()).unwrap())
            .collect();
        (ds.clone(), GBSet::new(balls, ds.n()))
    }

    #[test]
    fn two_balls_two_clusters() {
        let (_, gb) = balls_at(&[0.0, 3.0], 4);
        let a = gbdpc(&gb, 2, 0.5).unwrap();
        assert_ne!(a.ball_labels[0], a.ball_labels[1]);
    }

    #[test]
    fn collinear_three_balls() {
        let (_, gb) = balls_at(&[0.0, 1.0, 100.0], 10);
        let lambda = 0.5;
        // hand oracle
        let pos = [0.0f64, 1.0, 100.0];
        let dc = lambda * 100.0;
        let rho: Vec<f64> = (0..3)
            .map(|i| {
                (0..3)
                    .filter(|&j| j != i)
                    .map(|j| 10.0 * (-((pos[i] - pos[j]) / dc).powi(2)).exp())
                    .sum()
            })
            .collect();
        assert!(rho[1] > rho[0] && rho[0] > rho[2]);
        // separations: densest (1) -> 99, ball 0 -> 1, ball 2 -> 99
        let score = [rho[0] * 1.0, rho[1] * 99.0, rho[2] * 99.0];
        assert!(score[2] > score[0]);

        let peaks = DensityPeaks::compute(&gb, 2, lambda).unwrap();
        for i in 0..3 {
            assert!((peaks.density[i] - rho[i]).abs() < 1e-12);
        }
        assert_eq!(peaks.separation, vec![1.0, 99.0, 99.0]);
        let a = gbdpc(&gb, 2, lambda).unwrap();
        assert_eq!(a.ball_labels[0], a.ball_labels[1]);
        assert_ne!(a.ball_labels[0], a.ball_labels[2]);
        for (i, &l) in a.instance_labels.iter().enumerate() {
            assert_eq!(l, a.ball_labels[i / 10]);
        }
    }

    #[test]
    fn errors() {
        let (_, gb) = balls_at(&[0.0, 1.0], 2);
        assert!(matches!(gbdpc(&gb, 3, 0.1), Err(Error::TooFewBalls { balls: 2, k: 3 })));
        assert!(gbdpc(&gb, 2, 0.0).is_err());
        let (_, same) = balls_at(&[2.0, 2.0], 2);
        assert!(matches!(gbdpc(&same, 2, 0.5), Err(Error::DegenerateGeometry(_))));
    }

    #[test]
    fn single_ball() {
        let (_, gb) = balls_at(&[1.0], 3);
        let a = gbdpc(&gb, 1, 0.2).unwrap();
        assert_eq!(a.instance_labels, vec![0, 0, 0]);
    }
}
