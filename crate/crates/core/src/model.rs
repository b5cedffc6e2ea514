//! Datasets, granular balls and ball sets.
//!
//! A ball never copies rows: it holds sorted instance indices into one
//! immutable [`Dataset`] plus statistics computed once at construction.

use crate::error::{Error, Result};

/// An `n × m` matrix of finite reals with optional ground-truth labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    name: String,
    n: usize,
    m: usize,
    features: Vec<f64>,
    labels: Option<Vec<usize>>,
}

impl Dataset {
    /// Builds a dataset from a row-major feature buffer.
    pub fn new(
        name: impl Into<String>,
        n: usize,
        m: usize,
        features: Vec<f64>,
        labels: Option<Vec<usize>>,
    ) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidDataset(format!(
                "need at least one row and one column, got {n}x{m}"
            )));
        }
        if features.len() != n * m {
            return Err(Error::InvalidDataset(format!(
                "feature buffer has {} values, expected {}",
                features.len(),
                n * m
            )));
        }
        if let Some(pos) = features.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidDataset(format!(
                "non-finite value at row {}, column {}",
                pos / m,
                pos % m
            )));
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::InvalidDataset(format!(
                    "{} labels for {n} rows",
                    l.len()
                )));
            }
        }
        Ok(Self {
            name: name.into(),
            n,
            m,
            features,
            labels,
        })
    }

    pub fn from_rows(
        name: impl Into<String>,
        rows: &[Vec<f64>],
        labels: Option<Vec<usize>>,
    ) -> Result<Self> {
        let m = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != m) {
            return Err(Error::RaggedRows {
                row: bad,
                expected: m,
                found: rows[bad].len(),
            });
        }
        let features = rows.iter().flatten().copied().collect();
        Self::new(name, rows.len(), m, features, labels)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.features[i * self.m..(i + 1) * self.m]
    }

    pub fn features(&self) -> &[f64] {
        &self.features
    }

    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Option<Vec<usize>>) -> Result<Self> {
        if let Some(l) = &labels {
            if l.len() != self.n {
                return Err(Error::InvalidDataset(format!(
                    "{} labels for {} rows",
                    l.len(),
                    self.n
                )));
            }
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// Euclidean distance between two equal-length vectors.
pub fn euclidean(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(sq_dist(a, b).sqrt())
}

/// Squared Euclidean distance, summed left to right. Callers guarantee equal lengths.
#[inline]
pub(crate) fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x - y;
            d * d
        })
        .sum()
}

#[inline]
pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    sq_dist(a, b).sqrt()
}

/// A granular ball: member indices with cached center, average and maximum radius.
#[derive(Debug, Clone, PartialEq)]
pub struct GranularBall {
    members: Vec<usize>,
    center: Vec<f64>,
    avg_radius: f64,
    max_radius: f64,
}

impl GranularBall {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn avg_radius(&self) -> f64 {
        self.avg_radius
    }

    pub fn max_radius(&self) -> f64 {
        self.max_radius
    }

    /// Smallest member index; the ball's identity for ordering and tie-breaks.
    pub fn first_member(&self) -> usize {
        self.members[0]
    }

    /// Sum of member-to-center distances (`|X| · R_ave` without the division round trip).
    pub fn total_distance(&self, dataset: &Dataset) -> f64 {
        self.members
            .iter()
            .map(|&i| dist(dataset.row(i), &self.center))
            .sum()
    }

    /// Builds a ball from members that are already sorted, unique and in range.
    pub(crate) fn from_sorted(dataset: &Dataset, members: Vec<usize>) -> Self {
        debug_assert!(!members.is_empty());
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        let m = dataset.m();
        let mut center = vec![0.0; m];
        for &i in &members {
            for (c, v) in center.iter_mut().zip(dataset.row(i)) {
                *c += v;
            }
        }
        let count = members.len() as f64;
        for c in &mut center {
            *c /= count;
        }
        let mut sum = 0.0;
        let mut max: f64 = 0.0;
        for &i in &members {
            let d = dist(dataset.row(i), &center);
            sum += d;
            max = max.max(d);
        }
        let (avg_radius, max_radius) = if members.len() == 1 {
            (0.0, 0.0)
        } else {
            (sum / count, max)
        };
        Self {
            members,
            center,
            avg_radius,
            max_radius,
        }
    }
}

/// Constructs a ball over `members`, which may be given in any order.
pub fn make_ball(dataset: &Dataset, members: &[usize]) -> Result<GranularBall> {
    if members.is_empty() {
        return Err(Error::EmptyBall);
    }
    if let Some(&bad) = members.iter().find(|&&i| i >= dataset.n()) {
        return Err(Error::BadIndex {
            index: bad,
            n: dataset.n(),
        });
    }
    let mut sorted = members.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::InvalidParam(format!(
            "duplicate member index {}",
            w[0]
        )));
    }
    Ok(GranularBall::from_sorted(dataset, sorted))
}

/// The generated collection of balls over a dataset of `dataset_n` rows.
#[derive(Debug, Clone, PartialEq)]
pub struct GBSet {
    balls: Vec<GranularBall>,
    dataset_n: usize,
}

impl GBSet {
    /// Wraps `balls`, ordering them by smallest member index.
    pub fn new(mut balls: Vec<GranularBall>, dataset_n: usize) -> Self {
        balls.sort_by_key(GranularBall::first_member);
        Self { balls, dataset_n }
    }

    pub fn balls(&self) -> &[GranularBall] {
        &self.balls
    }

    pub fn len(&self) -> usize {
        self.balls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.balls.is_empty()
    }

    pub fn dataset_n(&self) -> usize {
        self.dataset_n
    }

    pub fn into_balls(self) -> Vec<GranularBall> {
        self.balls
    }

    /// Index of the ball containing each instance. Instances not covered map to `usize::MAX`.
    pub fn ball_of_instance(&self) -> Vec<usize> {
        let mut owner = vec![usize::MAX; self.dataset_n];
        for (b, ball) in self.balls.iter().enumerate() {
            for &i in ball.members() {
                if i < self.dataset_n {
                    owner[i] = b;
                }
            }
        }
        owner
    }
}

/// Outcome of [`validate_partition`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartitionReport {
    pub valid: bool,
    pub duplicated: Vec<usize>,
    pub missing: Vec<usize>,
    pub out_of_range: Vec<usize>,
}

/// Checks that the balls cover every instance exactly once.
pub fn validate_partition(gbset: &GBSet) -> PartitionReport {
    let n = gbset.dataset_n();
    let mut seen = vec![0u32; n];
    let mut report = PartitionReport::default();
    for ball in gbset.balls() {
        for &i in ball.members() {
            match seen.get_mut(i) {
                Some(c) => *c += 1,
                None => report.out_of_range.push(i),
            }
        }
    }
    for (i, &c) in seen.iter().enumerate() {
        match c {
            0 => report.missing.push(i),
            1 => {}
            _ => report.duplicated.push(i),
        }
    }
    report.valid =
        report.missing.is_empty() && report.duplicated.is_empty() && report.out_of_range.is_empty();
    report
}
