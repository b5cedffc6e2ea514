//! Clustering on granular balls instead of instances.
//!
//! Both algorithms label balls and then copy each ball's label to its members.

mod dpc;
pub mod eig;
pub mod kmeans;
mod spectral;

use serde::{Deserialize, Serialize};

pub use dpc::{gbdpc, DensityPeaks};
pub use eig::{sym_eig, SquareMatrix, SymEig};
pub use kmeans::kmeans_embed;
pub use spectral::{gbsc, normalized_laplacian};

use crate::error::{Error, Result};
use crate::model::GBSet;

/// Provenance of a clustering run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMeta {
    pub method: String,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sigma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterAssignment {
    pub ball_labels: Vec<usize>,
    pub instance_labels: Vec<usize>,
    pub k: usize,
    pub run_meta: RunMeta,
}

impl ClusterAssignment {
    fn from_ball_labels(gbset: &GBSet, ball_labels: Vec<usize>, run_meta: RunMeta) -> Self {
        let instance_labels = propagate(gbset, &ball_labels);
        Self {
            ball_labels,
            instance_labels,
            k: run_meta.k,
            run_meta,
        }
    }
}

/// Copies each ball's label onto its member instances.
pub fn propagate(gbset: &GBSet, ball_labels: &[usize]) -> Vec<usize> {
    let mut out = vec![0; gbset.dataset_n()];
    for (ball, &label) in gbset.balls().iter().zip(ball_labels) {
        for &i in ball.members() {
            out[i] = label;
        }
    }
    out
}

fn check_k(gbset: &GBSet, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParam("k must be at least 1".into()));
    }
    if gbset.len() < k {
        return Err(Error::TooFewBalls {
            balls: gbset.len(),
            k,
        });
    }
    Ok(())
}

/// Pairwise Euclidean distances between ball centers.
pub(crate) fn center_distances(gbset: &GBSet) -> Vec<Vec<f64>> {
    let balls = gbset.balls();
    let s = balls.len();
    let mut d = vec![vec![0.0; s]; s];
    for i in 0..s {
        for j in (i + 1)..s {
            let v = crate::model::dist(balls[i].center(), balls[j].center());
            d[i][j] = v;
            d[j][i] = v;
        }
    }
    d
}
