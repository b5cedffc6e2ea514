//! Two-way splitting of a member set: farthest-pair anchoring and 2-means.

use crate::error::{Error, Result};
use crate::model::{sq_dist, Dataset};

/// Result of a two-way split of a member set.
///
/// When `degenerate` is set, `beta` is empty and `alpha` holds every input member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitResult {
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    pub anchors: Option<(usize, usize)>,
    pub degenerate: bool,
}

impl SplitResult {
    fn degenerate(members: Vec<usize>, anchors: Option<(usize, usize)>) -> Self {
        Self {
            alpha: members,
            beta: Vec::new(),
            anchors,
            degenerate: true,
        }
    }
}

fn sorted_members(dataset: &Dataset, members: &[usize]) -> Result<Vec<usize>> {
    if members.len() < 2 {
        return Err(Error::TooSmallToSplit(members.len()));
    }
    if let Some(&bad) = members.iter().find(|&&i| i >= dataset.n()) {
        return Err(Error::BadIndex {
            index: bad,
            n: dataset.n(),
        });
    }
    let mut sorted = members.to_vec();
    sorted.sort_unstable();
    Ok(sorted)
}

/// Finds the pair of members at maximal distance by exhaustive scan.
///
/// `members` must be sorted. Among several maximizing pairs the
/// lexicographically smallest `(i, j)` with `i < j` wins. Returns the pair and
/// its squared distance.
pub(crate) fn farthest_pair(dataset: &Dataset, members: &[usize]) -> ((usize, usize), f64) {
    let m = dataset.m();
    // Gather rows contiguously; the quadratic scan dominates generation time.
    let mut buf = Vec::with_capacity(members.len() * m);
    for &i in members {
        buf.extend_from_slice(dataset.row(i));
    }
    let mut best = (0usize, 1usize);
    let mut best_d = f64::NEG_INFINITY;
    for a in 0..members.len() {
        let ra = &buf[a * m..(a + 1) * m];
        for b in (a + 1)..members.len() {
            let d = sq_dist(ra, &buf[b * m..(b + 1) * m]);
            if d > best_d {
                best_d = d;
                best = (a, b);
            }
        }
    }
    ((members[best.0], members[best.1]), best_d)
}

/// Splits `members` around the farthest pair: each point goes to the nearer
/// anchor, ties to the anchor with the smaller dataset index.
pub fn split_farthest_pair(dataset: &Dataset, members: &[usize]) -> Result<SplitResult> {
    let sorted = sorted_members(dataset, members)?;
    let ((ia, ib), d) = farthest_pair(dataset, &sorted);
    if d <= 0.0 {
        return Ok(SplitResult::degenerate(sorted, None));
    }
    let (xa, xb) = (dataset.row(ia), dataset.row(ib));
    let (alpha, beta): (Vec<usize>, Vec<usize>) = sorted
        .iter()
        .partition(|&&i| sq_dist(dataset.row(i), xa) <= sq_dist(dataset.row(i), xb));
    Ok(SplitResult {
        alpha,
        beta,
        anchors: Some((ia, ib)),
        degenerate: false,
    })
}

const TWO_MEANS_MAX_ITER: usize = 100;

/// Lloyd's 2-means seeded at the farthest pair.
///
/// The seed is accepted for interface stability; the initialization is deterministic.
pub fn split_two_means(dataset: &Dataset, members: &[usize], _seed: u64) -> Result<SplitResult> {
    let sorted = sorted_members(dataset, members)?;
    let ((ia, ib), d) = farthest_pair(dataset, &sorted);
    if d <= 0.0 {
        return Ok(SplitResult::degenerate(sorted, None));
    }
    let m = dataset.m();
    let mut centers = [dataset.row(ia).to_vec(), dataset.row(ib).to_vec()];
    // true = beta; ties go to alpha
    let mut assign: Vec<bool> = Vec::new();
    for _ in 0..TWO_MEANS_MAX_ITER {
        let next: Vec<bool> = sorted
            .iter()
            .map(|&i| {
                let row = dataset.row(i);
                sq_dist(row, &centers[1]) < sq_dist(row, &centers[0])
            })
            .collect();
        if next == assign {
            break;
        }
        assign = next;
        let mut sums = [vec![0.0; m], vec![0.0; m]];
        let mut counts = [0usize; 2];
        for (&b, &i) in assign.iter().zip(&sorted) {
            let k = usize::from(b);
            counts[k] += 1;
            for (s, v) in sums[k].iter_mut().zip(dataset.row(i)) {
                *s += v;
            }
        }
        if counts.contains(&0) {
            return Ok(SplitResult::degenerate(sorted, Some((ia, ib))));
        }
        for k in 0..2 {
            for (c, s) in centers[k].iter_mut().zip(&sums[k]) {
                *c = s / counts[k] as f64;
            }
        }
    }
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    for (&i, &to_beta) in sorted.iter().zip(&assign) {
        if to_beta {
            beta.push(i);
        } else {
            alpha.push(i);
        }
    }
    if alpha.is_empty() || beta.is_empty() {
        return Ok(SplitResult::degenerate(sorted, Some((ia, ib))));
    }
    Ok(SplitResult {
        alpha,
        beta,
        anchors: Some((ia, ib)),
        degenerate: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(xs: &[f64]) -> Dataset {
        let rows: Vec<Vec<f64>> = xs.iter().map(|&x| vec![x]).collect();
        Dataset::from_rows("line", &rows, None).unwrap()
    }

    /// Exhaustive pair scan kept separate from the implementation's gathered-buffer scan.
    fn oracle_pair(ds: &Dataset, members: &[usize]) -> (usize, usize) {
        let mut best = (usize::MAX, usize::MAX, -1.0);
        let mut ms = members.to_vec();
        ms.sort();
        for (a, &i) in ms.iter().enumerate() {
            for &j in &ms[a + 1..] {
                let d = crate::model::euclidean(ds.row(i), ds.row(j)).unwrap();
                if d > best.2 {
                    best = (i, j, d);
                }
            }
        }
        (best.0, best.1)
    }

    #[test]
    fn farthest_pair_on_line() {
        let ds = line(&[0.0, 1.0, 10.0, 11.0]);
        let s = split_farthest_pair(&ds, &[2, 0, 3, 1]).unwrap();
        assert_eq!(s.anchors, Some(oracle_pair(&ds, &[0, 1, 2, 3])));
        assert_eq!(s.anchors, Some((0, 3)));
        assert_eq!(s.alpha, vec![0, 1]);
        assert_eq!(s.beta, vec![2, 3]);
        assert!(!s.degenerate);
    }

    #[test]
    fn equidistant_point_goes_to_alpha() {
        let ds = line(&[0.0, 5.0, 10.0]);
        let s = split_farthest_pair(&ds, &[0, 1, 2]).unwrap();
        assert_eq!(s.anchors, Some((0, 2)));
        assert_eq!(s.alpha, vec![0, 1]);
        assert_eq!(s.beta, vec![2]);
    }

    #[test]
    fn identical_points_are_degenerate() {
        let ds = line(&[3.0, 3.0]);
        let s = split_farthest_pair(&ds, &[0, 1]).unwrap();
        assert!(s.degenerate);
        assert_eq!(s.alpha, vec![0, 1]);
        assert!(s.beta.is_empty());
        assert!(split_two_means(&ds, &[0, 1], 0).unwrap().degenerate);
    }

    #[test]
    fn too_small() {
        let ds = line(&[3.0]);
        assert!(matches!(
            split_farthest_pair(&ds, &[0]),
            Err(Error::TooSmallToSplit(1))
        ));
        assert!(matches!(
            split_two_means(&ds, &[], 0),
            Err(Error::TooSmallToSplit(0))
        ));
    }

    #[test]
    fn two_means_on_line() {
        let ds = line(&[0.0, 1.0, 10.0, 11.0]);
        let s = split_two_means(&ds, &[0, 1, 2, 3], 0).unwrap();
        assert_eq!(s.alpha, vec![0, 1]);
        assert_eq!(s.beta, vec![2, 3]);
    }

    #[test]
    fn two_means_separated_blobs() {
        // 10 points each, spread 0.01, centers 100 apart; interleave indices
        let mut rows = Vec::new();
        let mut truth = Vec::new();
        for i in 0..20 {
            let blob = i % 2;
            let k = (i / 2) as f64;
            let base = if blob == 0 { (0.0, 0.0) } else { (100.0, 0.0) };
            rows.push(vec![base.0 + 0.001 * k, base.1 + 0.001 * (9.0 - k)]);
            truth.push(blob);
        }
        let ds = Dataset::from_rows("blobs", &rows, None).unwrap();
        let all: Vec<usize> = (0..20).collect();
        let s = split_two_means(&ds, &all, 0).unwrap();
        let expect_a: Vec<usize> = (0..20).filter(|&i| truth[i] == truth[s.alpha[0]]).collect();
        let expect_b: Vec<usize> = (0..20).filter(|&i| truth[i] != truth[s.alpha[0]]).collect();
        assert_eq!(s.alpha, expect_a);
        assert_eq!(s.beta, expect_b);
    }
}
