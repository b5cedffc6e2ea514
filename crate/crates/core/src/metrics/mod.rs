//! External clustering metrics: accuracy under optimal label matching and
//! normalized mutual information (geometric-mean normalization, natural log).

mod hungarian;

pub use hungarian::hungarian;

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Counts of (predicted, true) label co-occurrences over dense label ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContingencyTable {
    /// `counts[p][t]`
    pub counts: Vec<Vec<usize>>,
    pub n: usize,
}

impl ContingencyTable {
    pub fn new(pred: &[usize], truth: &[usize]) -> Result<Self> {
        if pred.len() != truth.len() {
            return Err(Error::LengthMismatch(pred.len(), truth.len()));
        }
        if pred.is_empty() {
            return Err(Error::InvalidParam("label sequences are empty".into()));
        }
        let p = densify(pred);
        let t = densify(truth);
        let kp = p.iter().max().map_or(0, |m| m + 1);
        let kt = t.iter().max().map_or(0, |m| m + 1);
        let mut counts = vec![vec![0usize; kt]; kp];
        for (&a, &b) in p.iter().zip(&t) {
            counts[a][b] += 1;
        }
        Ok(Self {
            counts,
            n: pred.len(),
        })
    }

    pub fn k_pred(&self) -> usize {
        self.counts.len()
    }

    pub fn k_true(&self) -> usize {
        self.counts.first().map_or(0, Vec::len)
    }

    fn row_sums(&self) -> Vec<usize> {
        self.counts.iter().map(|r| r.iter().sum()).collect()
    }

    fn col_sums(&self) -> Vec<usize> {
        (0..self.k_true())
            .map(|t| self.counts.iter().map(|r| r[t]).sum())
            .collect()
    }
}

/// Maps arbitrary label values to `0..k` in increasing value order.
fn densify(labels: &[usize]) -> Vec<usize> {
    let ids: BTreeMap<usize, usize> = labels
        .iter()
        .copied()
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    labels.iter().map(|l| ids[l]).collect()
}

/// Fraction of instances whose predicted cluster maps to their true class
/// under the best one-to-one matching.
pub fn clustering_accuracy(pred: &[usize], truth: &[usize]) -> Result<f64> {
    let table = ContingencyTable::new(pred, truth)?;
    let size = table.k_pred().max(table.k_true());
    let cost: Vec<Vec<f64>> = (0..size)
        .map(|p| {
            (0..size)
                .map(|t| {
                    let c = table.counts.get(p).and_then(|r| r.get(t)).copied().unwrap_or(0);
                    -(c as f64)
                })
                .collect()
        })
        .collect();
    let (assignment, _) = hungarian(&cost);
    let matched: usize = assignment
        .iter()
        .enumerate()
        .filter_map(|(p, t)| {
            let t = (*t)?;
            table.counts.get(p).and_then(|r| r.get(t)).copied()
        })
        .sum();
    Ok(matched as f64 / table.n as f64)
}

fn entropy(sums: &[usize], n: f64) -> f64 {
    sums.iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.ln()
        })
        .sum()
}

/// `I(pred; truth) / sqrt(H(pred) H(truth))`.
///
/// When either entropy is zero the score is 1 for identical partitions and 0 otherwise.
pub fn nmi(pred: &[usize], truth: &[usize]) -> Result<f64> {
    let table = ContingencyTable::new(pred, truth)?;
    let n = table.n as f64;
    let rows = table.row_sums();
    let cols = table.col_sums();
    let hp = entropy(&rows, n);
    let ht = entropy(&cols, n);
    if hp == 0.0 || ht == 0.0 {
        // A zero-entropy side has one cluster; identical only if the other does too.
        return Ok(if table.k_pred() == table.k_true() { 1.0 } else { 0.0 });
    }
    let mut mi = 0.0;
    for (p, row) in table.counts.iter().enumerate() {
        for (t, &c) in row.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let c = c as f64;
            mi += c / n * (c * n / (rows[p] as f64 * cols[t] as f64)).ln();
        }
    }
    Ok((mi / (hp * ht).sqrt()).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accuracy_cases() {
        assert_eq!(clustering_accuracy(&[1, 1, 0, 0], &[0, 0, 1, 1]).unwrap(), 1.0);
        assert_eq!(clustering_accuracy(&[1, 1, 0, 1], &[0, 0, 1, 1]).unwrap(), 0.75);
        let truth = [0, 0, 1, 1, 2, 2];
        assert!((clustering_accuracy(&[4; 6], &truth).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!(matches!(
            clustering_accuracy(&[0], &[0, 1]),
            Err(Error::LengthMismatch(1, 2))
        ));
    }

    #[test]
    fn accuracy_more_clusters_than_classes() {
        // extra predicted cluster contributes nothing
        assert_eq!(clustering_accuracy(&[0, 1, 2, 2], &[0, 0, 1, 1]).unwrap(), 0.75);
    }

    #[test]
    fn nmi_cases() {
        assert!((nmi(&[0, 0, 1, 1, 2], &[5, 5, 3, 3, 1]).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(nmi(&[0; 4], &[0, 0, 1, 1]).unwrap(), 0.0);
        assert_eq!(nmi(&[0, 1, 0, 1], &[0, 0, 1, 1]).unwrap(), 0.0);
        assert_eq!(nmi(&[2; 3], &[7; 3]).unwrap(), 1.0);
        assert!(nmi(&[0, 1], &[0]).is_err());
    }

    #[test]
    fn contingency_counts() {
        let t = ContingencyTable::new(&[0, 0, 9, 9], &[1, 2, 2, 2]).unwrap();
        assert_eq!(t.counts, vec![vec![1, 1], vec![0, 2]]);
        assert_eq!(t.counts.iter().flatten().sum::<usize>(), t.n);
    }
}
