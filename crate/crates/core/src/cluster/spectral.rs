use super::eig::{sym_eig, SquareMatrix};
use super::kmeans::kmeans_embed;
use super::{center_distances, check_k, ClusterAssignment, RunMeta};
use crate::error::{Error, Result};
use crate::model::GBSet;

/// `I - D^{-1/2} W D^{-1/2}` for the Gaussian affinity between ball centers.
/// Balls with zero degree get a zero scaling factor.
pub fn normalized_laplacian(gbset: &GBSet, sigma: f64) -> SquareMatrix {
    let s = gbset.len();
    let d = center_distances(gbset);
    let two_s2 = 2.0 * sigma * sigma;
    let mut w = SquareMatrix::zeros(s);
    for i in 0..s {
        for j in 0..s {
            if i != j {
                w[(i, j)] = (-(d[i][j] * d[i][j]) / two_s2).exp();
            }
        }
    }
    let inv_sqrt: Vec<f64> = (0..s)
        .map(|i| {
            let deg: f64 = (0..s).map(|j| w[(i, j)]).sum();
            if deg > 0.0 {
                1.0 / deg.sqrt()
            } else {
                0.0
            }
        })
        .collect();
    let mut l = SquareMatrix::identity(s);
    for i in 0..s {
        for j in 0..s {
            l[(i, j)] -= inv_sqrt[i] * w[(i, j)] * inv_sqrt[j];
        }
    }
    l
}

/// Spectral clustering of balls: the `k` lowest eigenvectors of the normalized
/// Laplacian, rows scaled to unit length, then seeded k-means.
pub fn gbsc(gbset: &GBSet, k: usize, sigma: f64, seed: u64) -> Result<ClusterAssignment> {
    check_k(gbset, k)?;
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidParam(format!(
            "sigma must be finite and > 0, got {sigma}"
        )));
    }
    let s = gbset.len();
    let eig = sym_eig(&normalized_laplacian(gbset, sigma))?;
    let embedding: Vec<Vec<f64>> = (0..s)
        .map(|r| {
            let row: Vec<f64> = (0..k).map(|c| eig.vectors[(r, c)]).collect();
            let norm = row.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm > 0.0 {
                row.into_iter().map(|v| v / norm).collect()
            } else {
                row
            }
        })
        .collect();
    let labels = kmeans_embed(&embedding, k, seed)?;
    Ok(ClusterAssignment::from_ball_labels(
        gbset,
        labels,
        RunMeta {
            method: "gbsc".into(),
            k,
            sigma: Some(sigma),
            lambda: None,
            gamma: None,
            delta: None,
            seed: Some(seed),
        },
    ))
}
