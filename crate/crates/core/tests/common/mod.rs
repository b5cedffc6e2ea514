//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use granball::generation::{DivisionTree, NodeId};
use granball::quality::{ball_quality, QualityParams};
use granball::Dataset;
use rand::{Rng, SeedableRng};
use rand_distr::{Distribution, Normal};
use rand_xoshiro::SplitMix64;

pub fn rng(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

/// Gaussian mixture with a random number of components; roughly one dataset
/// in five also carries exact duplicate rows.
pub fn random_dataset(rng: &mut SplitMix64, n: usize, m: usize) -> Dataset {
    let components = rng.random_range(1..=5);
    let centers: Vec<Vec<f64>> = (0..components)
        .map(|_| (0..m).map(|_| rng.random_range(-10.0..10.0)).collect())
        .collect();
    let spreads: Vec<f64> = (0..components).map(|_| rng.random_range(0.05..2.0)).collect();
    let unit = Normal::new(0.0, 1.0).unwrap();
    let with_dupes = rng.random_bool(0.2);
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n);
    for _ in 0..n {
        if with_dupes && !rows.is_empty() && rng.random_bool(0.3) {
            let j = rng.random_range(0..rows.len());
            rows.push(rows[j].clone());
            continue;
        }
        let c = rng.random_range(0..components);
        rows.push(
            centers[c]
                .iter()
                .map(|&x| x + spreads[c] * unit.sample(rng))
                .collect(),
        );
    }
    Dataset::from_rows("random", &rows, None).unwrap()
}

/// Center, mean distance and largest distance recomputed from scratch.
pub fn ball_stats(dataset: &Dataset, members: &[usize]) -> (Vec<f64>, f64, f64) {
    let m = dataset.m();
    let mut center = vec![0.0; m];
    for &i in members {
        for (c, v) in center.iter_mut().zip(dataset.row(i)) {
            *c += v;
        }
    }
    for c in &mut center {
        *c /= members.len() as f64;
    }
    let dists: Vec<f64> = members
        .iter()
        .map(|&i| {
            dataset
                .row(i)
                .iter()
                .zip(&center)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
        })
        .collect();
    let avg = dists.iter().sum::<f64>() / dists.len() as f64;
    let max = dists.iter().cloned().fold(0.0, f64::max);
    (center, avg, max)
}

pub fn pair_distance(dataset: &Dataset, a: usize, b: usize) -> f64 {
    dataset
        .row(a)
        .iter()
        .zip(dataset.row(b))
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn diameter(dataset: &Dataset, members: &[usize]) -> f64 {
    let mut best = 0.0f64;
    for (k, &a) in members.iter().enumerate() {
        for &b in &members[k + 1..] {
            best = best.max(pair_distance(dataset, a, b));
        }
    }
    best
}

/// Every frontier of the subtree at `id`, as node lists in left-to-right order.
pub fn frontiers(tree: &DivisionTree, id: NodeId) -> Vec<Vec<NodeId>> {
    let mut out = vec![vec![id]];
    if let Some([a, b]) = tree.node(id).children {
        let left = frontiers(tree, a);
        let right = frontiers(tree, b);
        for l in &left {
            for r in &right {
                let mut f = l.clone();
                f.extend_from_slice(r);
                out.push(f);
            }
        }
    }
    out
}

/// Largest left-to-right quality sum over all frontiers of the tree.
pub fn brute_force_best_total(tree: &DivisionTree, dataset: &Dataset, params: &QualityParams) -> f64 {
    let quality: Vec<f64> = tree
        .nodes()
        .iter()
        .map(|n| ball_quality(&n.ball, dataset, params))
        .collect();
    frontiers(tree, 0)
        .iter()
        .map(|f| f.iter().map(|&id| quality[id]).sum::<f64>())
        .fold(f64::NEG_INFINITY, f64::max)
}

pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Accuracy by trying every bijection between padded label sets.
pub fn exhaustive_accuracy(pred: &[usize], truth: &[usize]) -> f64 {
    let dense = |xs: &[usize]| -> Vec<usize> {
        let mut vals: Vec<usize> = xs.to_vec();
        vals.sort_unstable();
        vals.dedup();
        xs.iter().map(|x| vals.binary_search(x).unwrap()).collect()
    };
    let (p, t) = (dense(pred), dense(truth));
    let k = p.iter().chain(&t).max().unwrap() + 1;
    let mut counts = vec![vec![0usize; k]; k];
    for (&a, &b) in p.iter().zip(&t) {
        counts[a][b] += 1;
    }
    let best = permutations(k)
        .iter()
        .map(|perm| (0..k).map(|i| counts[i][perm[i]]).sum::<usize>())
        .max()
        .unwrap();
    best as f64 / pred.len() as f64
}

/// Cheapest cost over every injective row-to-column assignment of a square matrix.
pub fn brute_force_assignment(cost: &[Vec<f64>]) -> f64 {
    permutations(cost.len())
        .iter()
        .map(|perm| perm.iter().enumerate().map(|(r, &c)| cost[r][c]).sum::<f64>())
        .fold(f64::INFINITY, f64::min)
}

pub fn random_labels(rng: &mut SplitMix64, n: usize, k: usize) -> Vec<usize> {
    (0..n).map(|_| rng.random_range(0..k)).collect()
}

pub fn data_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}
