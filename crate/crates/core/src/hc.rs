//! Hierarchical clustering baseline: average linkage over cosine distance,
//! with the similarity threshold picked by a weighted-similarity selector.
//! It produces unlabeled term groups.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::categorizer::{EntityCategory, Scorer};
use crate::linkage::{average_linkage, Dendrogram};

/// Similarity thresholds tried by [`optimize`].
pub const THRESHOLDS: [f64; 4] = [0.5, 0.6, 0.7, 0.8];
pub const MIN_CLUSTER_SIZE: usize = 5;

/// Average-linkage dendrogram of `terms` under cosine distance `1 - cos`.
pub fn dendrogram(terms: &[String], scorer: &Scorer) -> Dendrogram {
    let n = terms.len();
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = 1.0 - scorer.similarity(&terms[i], &terms[j]);
            d[i][j] = v;
            d[j][i] = v;
        }
    }
    average_linkage(&d)
}

/// Clusters whose average pairwise similarity stays at or above `threshold`.
/// Fewer than two terms form a single trivial cluster.
pub fn cluster(terms: &[String], scorer: &Scorer, threshold: f64) -> Vec<Vec<String>> {
    if terms.len() < 2 {
        return vec![terms.to_vec()];
    }
    dendrogram(terms, scorer)
        .cut_at(1.0 - threshold)
        .into_iter()
        .map(|c| c.into_iter().map(|i| terms[i].clone()).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdRun {
    pub threshold: f64,
    /// Clusters of at least [`MIN_CLUSTER_SIZE`] terms.
    pub clusters: Vec<Vec<String>>,
    /// Size-weighted mean cross-term similarity (WS).
    pub weighted_similarity: f64,
    pub clustered_terms: usize,
}

impl ThresholdRun {
    pub fn selector(&self) -> f64 {
        self.weighted_similarity * self.clustered_terms as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HcResult {
    pub runs: Vec<ThresholdRun>,
    /// Index into `runs` of the winner; `None` when every run is empty.
    pub best: Option<usize>,
}

impl HcResult {
    pub fn best_run(&self) -> Option<&ThresholdRun> {
        self.best.map(|i| &self.runs[i])
    }
}

/// Weighted similarity `Σ T_i·|CL_i| / Σ|CL_i|`, 0 for no clusters.
pub fn weighted_similarity(clusters: &[(f64, usize)]) -> f64 {
    let total: usize = clusters.iter().map(|(_, n)| n).sum();
    if total == 0 {
        return 0.0;
    }
    clusters.iter().map(|(t, n)| t * *n as f64).sum::<f64>() / total as f64
}

/// Picks the run maximizing `WS · Σ|CL|`; ties go to the smaller threshold.
pub fn select_best(runs: &[ThresholdRun]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, run) in runs.iter().enumerate().filter(|(_, r)| !r.clusters.is_empty()) {
        if best.is_none_or(|b| run.selector() > runs[b].selector()) {
            best = Some(i);
        }
    }
    best
}

pub fn optimize(terms: &[String], scorer: &Scorer) -> HcResult {
    let tree = (terms.len() >= 2).then(|| dendrogram(terms, scorer));
    let runs: Vec<ThresholdRun> = THRESHOLDS
        .iter()
        .map(|&threshold| {
            let clusters: Vec<Vec<String>> = match &tree {
                Some(tree) => tree
                    .cut_at(1.0 - threshold)
                    .into_iter()
                    .filter(|c| c.len() >= MIN_CLUSTER_SIZE)
                    .map(|c| c.into_iter().map(|i| terms[i].clone()).collect())
                    .collect(),
                None => Vec::new(),
            };
            let stats: Vec<(f64, usize)> = clusters
                .iter()
                .map(|c| {
                    let set: BTreeSet<String> = c.iter().cloned().collect();
                    (scorer.cross_term(&set), c.len())
                })
                .collect();
            ThresholdRun {
                threshold,
                weighted_similarity: weighted_similarity(&stats),
                clustered_terms: stats.iter().map(|(_, n)| n).sum(),
                clusters,
            }
        })
        .collect();
    let best = select_best(&runs);
    HcResult { runs, best }
}

/// Winning clusters as label-less categories, sorted by descending cross-term
/// similarity.
pub fn to_categories(result: &HcResult, scorer: &Scorer) -> Vec<EntityCategory> {
    let Some(run) = result.best_run() else { return Vec::new() };
    let mut out: Vec<EntityCategory> = run
        .clusters
        .iter()
        .map(|c| {
            let terms: BTreeSet<String> = c.iter().cloned().collect();
            let mut category = scorer.category("", terms);
            category.scores.l = 0.0;
            category.scores.o = category.scores.t;
            category.scores.q = 0.0;
            category
        })
        .collect();
    out.sort_by(|a, b| b.scores.t.total_cmp(&a.scores.t).then_with(|| a.terms.cmp(&b.terms)));
    out
}
