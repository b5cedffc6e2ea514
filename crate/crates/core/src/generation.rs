//! Granular-ball generators.
//!
//! * [`generate_pojg`]: builds a farthest-pair division tree down to
//!   `delta * sqrt(n)` members, keeps the sub-ball combination of maximal total
//!   quality, then splits balls that are both wide and sparsely populated.
//! * [`generate_cheng`]: 2-means splitting until every ball has at most `sqrt(n)` members.
//! * [`generate_xie`]: greedy farthest-pair splitting while the weighted
//!   distribution measure drops, followed by a max-radius outlier pass.

use std::collections::VecDeque;

use crate::division::{split_farthest_pair, split_two_means};
use crate::error::Result;
use crate::model::{Dataset, GBSet, GranularBall};
use crate::quality::{ball_quality, weighted_measure_of, QualityParams};

pub type NodeId = usize;

/// Node of the division tree. Children always have larger ids than their parent.
#[derive(Debug, Clone)]
pub struct TreeNode {
    pub ball: GranularBall,
    pub parent: Option<NodeId>,
    pub children: Option<[NodeId; 2]>,
    /// Quality of this node's own ball; zero until the tree is pruned.
    pub quality: f64,
    /// Best total quality reachable in this subtree; zero until pruned.
    pub best_quality: f64,
    /// Nodes forming the best combination for this subtree; `[self]` until pruned.
    pub best_combination: Vec<NodeId>,
}

impl TreeNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_none()
    }
}

#[derive(Debug, Clone)]
pub struct DivisionTree {
    nodes: Vec<TreeNode>,
    pruned: bool,
}

impl DivisionTree {
    pub fn root(&self) -> &TreeNode {
        &self.nodes[0]
    }

    pub fn node(&self, id: NodeId) -> &TreeNode {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn is_pruned(&self) -> bool {
        self.pruned
    }

    pub fn leaves(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].is_leaf())
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves().count()
    }

    /// Child links for every node, the shape consumed by [`best_combination`].
    pub fn shape(&self) -> Vec<Option<[NodeId; 2]>> {
        self.nodes.iter().map(|n| n.children).collect()
    }
}

/// Splits the root breadth-first with the farthest-pair rule until every leaf
/// has at most `delta * sqrt(n)` members or cannot be separated.
pub fn build_division_tree(dataset: &Dataset, params: &QualityParams) -> DivisionTree {
    let threshold = params.size_threshold(dataset.n());
    let root = GranularBall::from_sorted(dataset, (0..dataset.n()).collect());
    let mut nodes = vec![TreeNode {
        ball: root,
        parent: None,
        children: None,
        quality: 0.0,
        best_quality: 0.0,
        best_combination: vec![0],
    }];
    let mut queue = VecDeque::from([0usize]);
    while let Some(id) = queue.pop_front() {
        let members = nodes[id].ball.members();
        if (members.len() as f64) <= threshold || members.len() < 2 {
            continue;
        }
        let split = split_farthest_pair(dataset, members).expect("member set has >= 2 valid indices");
        if split.degenerate {
            continue;
        }
        let first = nodes.len();
        for part in [split.alpha, split.beta] {
            let child = nodes.len();
            nodes.push(TreeNode {
                ball: GranularBall::from_sorted(dataset, part),
                parent: Some(id),
                children: None,
                quality: 0.0,
                best_quality: 0.0,
                best_combination: vec![child],
            });
            queue.push_back(child);
        }
        nodes[id].children = Some([first, first + 1]);
    }
    DivisionTree {
        nodes,
        pruned: false,
    }
}

/// Best quality and best combination of every node of a tree shape.
///
/// `children[i]` lists node `i`'s two children, whose ids must exceed `i`.
/// A node keeps its split whenever the children's best total is at least its
/// own quality. The returned combinations list the nodes in left-to-right
/// leaf order.
pub fn best_combination(
    children: &[Option<[NodeId; 2]>],
    quality: &[f64],
) -> (Vec<f64>, Vec<Vec<NodeId>>) {
    assert_eq!(children.len(), quality.len());
    let mut best_q = quality.to_vec();
    let mut best_c: Vec<Vec<NodeId>> = (0..children.len()).map(|i| vec![i]).collect();
    for id in (0..children.len()).rev() {
        if let Some([a, b]) = children[id] {
            debug_assert!(a > id && b > id);
            let split_total = best_q[a] + best_q[b];
            if split_total >= best_q[id] {
                best_q[id] = split_total;
                let mut combo = best_c[a].clone();
                combo.extend_from_slice(&best_c[b]);
                best_c[id] = combo;
            }
        }
    }
    (best_q, best_c)
}

/// Scores every node and returns the balls of the root's best combination.
pub fn prune_best_combination(
    tree: &mut DivisionTree,
    dataset: &Dataset,
    params: &QualityParams,
) -> Vec<GranularBall> {
    let quality: Vec<f64> = tree
        .nodes
        .iter()
        .map(|n| ball_quality(&n.ball, dataset, params))
        .collect();
    let (best_q, best_c) = {
        let shape = tree.shape();
        best_combination(&shape, &quality)
    };
    for (((node, q), bq), bc) in tree.nodes.iter_mut().zip(quality).zip(best_q).zip(best_c) {
        node.quality = q;
        node.best_quality = bq;
        node.best_combination = bc;
    }
    tree.pruned = true;
    tree.root()
        .best_combination
        .iter()
        .map(|&id| tree.nodes[id].ball.clone())
        .collect()
}

/// Summary statistics of a ball set used by the two outlier rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnomalyStats {
    /// Mean average radius.
    pub r_avg: f64,
    /// Mean member count.
    pub n_avg: f64,
    /// Mean of the maximum radii.
    pub r_max_avg: f64,
    /// Median of the maximum radii.
    pub r_max_med: f64,
}

impl AnomalyStats {
    pub fn over<'a>(balls: impl IntoIterator<Item = &'a GranularBall>) -> Self {
        let mut count = 0usize;
        let (mut r, mut size, mut rmax) = (0.0, 0.0, 0.0);
        let mut maxes = Vec::new();
        for b in balls {
            count += 1;
            r += b.avg_radius();
            size += b.len() as f64;
            rmax += b.max_radius();
            maxes.push(b.max_radius());
        }
        if count == 0 {
            return Self {
                r_avg: 0.0,
                n_avg: 0.0,
                r_max_avg: 0.0,
                r_max_med: 0.0,
            };
        }
        let t = count as f64;
        Self {
            r_avg: r / t,
            n_avg: size / t,
            r_max_avg: rmax / t,
            r_max_med: median(&mut maxes),
        }
    }
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let k = values.len();
    if k % 2 == 1 {
        values[k / 2]
    } else {
        0.5 * (values[k / 2 - 1] + values[k / 2])
    }
}

/// A ball is abnormal when its average radius exceeds twice the set's mean
/// average radius while it holds fewer than half the mean member count.
pub fn detect_abnormal_pojg(ball: &GranularBall, stats: &AnomalyStats) -> bool {
    ball.avg_radius() > 2.0 * stats.r_avg && (ball.len() as f64) < 0.5 * stats.n_avg
}

/// A ball is abnormal when its maximum radius exceeds twice the larger of
/// the mean and median maximum radius.
pub fn detect_abnormal_xie(ball: &GranularBall, stats: &AnomalyStats) -> bool {
    ball.max_radius() > 2.0 * stats.r_max_avg.max(stats.r_max_med)
}

/// Everything produced by one run of the pruning generator.
#[derive(Debug, Clone)]
pub struct PojgRun {
    pub tree: DivisionTree,
    /// Best combination of the root, before outlier splitting.
    pub pruned: Vec<GranularBall>,
    /// Statistics frozen over `pruned`.
    pub stats: AnomalyStats,
    pub gbset: GBSet,
}

pub fn generate_pojg(dataset: &Dataset, params: &QualityParams) -> Result<GBSet> {
    Ok(generate_pojg_detailed(dataset, params)?.gbset)
}

pub fn generate_pojg_detailed(dataset: &Dataset, params: &QualityParams) -> Result<PojgRun> {
    params.validate()?;
    let mut tree = build_division_tree(dataset, params);
    let pruned = prune_best_combination(&mut tree, dataset, params);
    let stats = AnomalyStats::over(&pruned);

    let mut queue: VecDeque<GranularBall> = pruned.iter().cloned().collect();
    let mut out = Vec::with_capacity(pruned.len());
    while let Some(ball) = queue.pop_front() {
        if ball.len() >= 2 && detect_abnormal_pojg(&ball, &stats) {
            let split = split_farthest_pair(dataset, ball.members())?;
            if !split.degenerate {
                queue.push_back(GranularBall::from_sorted(dataset, split.alpha));
                queue.push_back(GranularBall::from_sorted(dataset, split.beta));
                continue;
            }
        }
        out.push(ball);
    }
    Ok(PojgRun {
        tree,
        pruned,
        stats,
        gbset: GBSet::new(out, dataset.n()),
    })
}

/// 2-means splitting until no ball holds more than `sqrt(n)` members.
pub fn generate_cheng(dataset: &Dataset) -> Result<GBSet> {
    let threshold = (dataset.n() as f64).sqrt();
    let mut queue = VecDeque::from([GranularBall::from_sorted(
        dataset,
        (0..dataset.n()).collect(),
    )]);
    let mut out = Vec::new();
    while let Some(ball) = queue.pop_front() {
        if ball.len() as f64 > threshold && ball.len() >= 2 {
            let split = split_two_means(dataset, ball.members(), 0)?;
            if !split.degenerate {
                queue.push_back(GranularBall::from_sorted(dataset, split.alpha));
                queue.push_back(GranularBall::from_sorted(dataset, split.beta));
                continue;
            }
        }
        out.push(ball);
    }
    Ok(GBSet::new(out, dataset.n()))
}

/// Why the greedy generator split a ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitKind {
    Greedy,
    Outlier,
}

/// One split performed by [`generate_xie_traced`], with the sum of
/// member-to-center distances before and after.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitRecord {
    pub kind: SplitKind,
    pub size: usize,
    pub parent_total_distance: f64,
    pub children_total_distance: f64,
}

#[derive(Debug, Clone)]
pub struct XieRun {
    pub gbset: GBSet,
    pub splits: Vec<SplitRecord>,
    /// Number of outlier rounds that found at least one abnormal ball.
    pub outlier_rounds: usize,
}

pub fn generate_xie(dataset: &Dataset) -> Result<GBSet> {
    Ok(generate_xie_traced(dataset)?.gbset)
}

pub fn generate_xie_traced(dataset: &Dataset) -> Result<XieRun> {
    let mut splits = Vec::new();
    let record = |kind, parent: &GranularBall, a: &GranularBall, b: &GranularBall| SplitRecord {
        kind,
        size: parent.len(),
        parent_total_distance: parent.total_distance(dataset),
        children_total_distance: a.total_distance(dataset) + b.total_distance(dataset),
    };

    let mut queue = VecDeque::from([GranularBall::from_sorted(
        dataset,
        (0..dataset.n()).collect(),
    )]);
    let mut phi = Vec::new();
    while let Some(ball) = queue.pop_front() {
        if ball.len() >= 2 {
            let split = split_farthest_pair(dataset, ball.members())?;
            if !split.degenerate {
                let a = GranularBall::from_sorted(dataset, split.alpha);
                let b = GranularBall::from_sorted(dataset, split.beta);
                if weighted_measure_of(&a, &b) < ball.avg_radius() {
                    splits.push(record(SplitKind::Greedy, &ball, &a, &b));
                    queue.push_back(a);
                    queue.push_back(b);
                    continue;
                }
            }
        }
        phi.push(ball);
    }

    let mut outlier_rounds = 0;
    loop {
        let stats = AnomalyStats::over(&phi);
        let mut found = false;
        let mut next = Vec::with_capacity(phi.len());
        for ball in phi {
            if ball.len() >= 2 && detect_abnormal_xie(&ball, &stats) {
                let split = split_farthest_pair(dataset, ball.members())?;
                if !split.degenerate {
                    let a = GranularBall::from_sorted(dataset, split.alpha);
                    let b = GranularBall::from_sorted(dataset, split.beta);
                    splits.push(record(SplitKind::Outlier, &ball, &a, &b));
                    next.push(a);
                    next.push(b);
                    found = true;
                    continue;
                }
            }
            next.push(ball);
        }
        phi = next;
        if !found {
            break;
        }
        outlier_rounds += 1;
    }
    Ok(XieRun {
        gbset: GBSet::new(phi, dataset.n()),
        splits,
        outlier_rounds,
    })
}
