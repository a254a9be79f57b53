//! Candidate entity categories, the quality score and the three resolution
//! passes that turn overlapping candidates into a term-disjoint coding book.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::embeddings::WordVectors;
use crate::graph::{DistanceMatrix, DomainGraph, D_MAX};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CategorizerConfig {
    pub d_max: u32,
    pub min_size: usize,
    pub min_cross_term: f64,
    pub min_label_term: f64,
    /// Candidates larger than this fraction of the term nodes are dropped.
    pub max_tta_fraction: f64,
    /// Share of a category's terms another category must contain to count
    /// as a substantial overlap.
    pub overlap: f64,
}

impl Default for CategorizerConfig {
    fn default() -> Self {
        CategorizerConfig {
            d_max: D_MAX,
            min_size: 5,
            min_cross_term: 0.2,
            min_label_term: 0.3,
            max_tta_fraction: 0.15,
            overlap: 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Scores {
    /// Mean pairwise cosine among the terms.
    pub t: f64,
    /// Mean label-to-term cosine.
    pub l: f64,
    /// `t + l`.
    pub o: f64,
    /// Mean non-zero term-to-label distance, 1 if there is none.
    pub d_avg: f64,
    pub q: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntityCategory {
    pub label: String,
    pub terms: BTreeSet<String>,
    pub scores: Scores,
}

impl EntityCategory {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `max(log2 size, 1)`.
pub fn size_factor(size: usize) -> f64 {
    (size as f64).log2().max(1.0)
}

/// Q = T·L·O·max(log2|EC|, 1)·d_avg, with O = T + L. Zero for an empty category.
pub fn quality(t: f64, l: f64, size: usize, d_avg: f64) -> f64 {
    if size == 0 {
        return 0.0;
    }
    t * l * (t + l) * size_factor(size) * d_avg
}

/// Ranking used everywhere a winner is picked: higher Q first, then the
/// lexicographically smaller label.
pub fn rank(a: &EntityCategory, b: &EntityCategory) -> Ordering {
    b.scores.q.total_cmp(&a.scores.q).then_with(|| a.label.cmp(&b.label))
}

/// Computes category scores from word vectors and, optionally, graph
/// distances. Unit vectors are cached per word.
pub struct Scorer<'a> {
    vectors: &'a dyn WordVectors,
    distances: Option<&'a DistanceMatrix>,
    cache: RefCell<HashMap<String, std::rc::Rc<Vec<f64>>>>,
}

impl<'a> Scorer<'a> {
    pub fn new(vectors: &'a dyn WordVectors, distances: Option<&'a DistanceMatrix>) -> Self {
        Scorer {
            vectors,
            distances,
            cache: RefCell::new(HashMap::new()),
        }
    }

    fn unit(&self, word: &str) -> std::rc::Rc<Vec<f64>> {
        if let Some(v) = self.cache.borrow().get(word) {
            return v.clone();
        }
        let mut v = self.vectors.vector_of(word);
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            v.iter_mut().for_each(|x| *x /= norm);
        } else {
            v.clear();
        }
        let v = std::rc::Rc::new(v);
        self.cache.borrow_mut().insert(word.to_string(), v.clone());
        v
    }

    /// Cosine similarity; 0 if either word has a zero vector.
    pub fn similarity(&self, a: &str, b: &str) -> f64 {
        let (x, y) = (self.unit(a), self.unit(b));
        if x.is_empty() || y.is_empty() || x.len() != y.len() {
            return 0.0;
        }
        x.iter().zip(y.iter()).map(|(p, q)| p * q).sum::<f64>().clamp(-1.0, 1.0)
    }

    pub fn cross_term(&self, terms: &BTreeSet<String>) -> f64 {
        let terms: Vec<&String> = terms.iter().collect();
        let n = terms.len();
        if n < 2 {
            return 0.0;
        }
        let mut sum = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                sum += self.similarity(terms[i], terms[j]);
            }
        }
        sum / (n * (n - 1) / 2) as f64
    }

    pub fn label_term(&self, label: &str, terms: &BTreeSet<String>) -> f64 {
        if terms.is_empty() {
            return 0.0;
        }
        terms.iter().map(|t| self.similarity(label, t)).sum::<f64>() / terms.len() as f64
    }

    pub fn average_distance(&self, label: &str, terms: &BTreeSet<String>) -> f64 {
        let Some(d) = self.distances else { return 1.0 };
        let nonzero: Vec<u32> = terms
            .iter()
            .filter_map(|t| d.get(t, label))
            .filter(|&x| x > 0)
            .collect();
        if nonzero.is_empty() {
            1.0
        } else {
            nonzero.iter().map(|&x| x as f64).sum::<f64>() / nonzero.len() as f64
        }
    }

    pub fn score(&self, label: &str, terms: &BTreeSet<String>) -> Scores {
        let t = self.cross_term(terms);
        let l = self.label_term(label, terms);
        let d_avg = self.average_distance(label, terms);
        Scores {
            t,
            l,
            o: t + l,
            d_avg,
            q: quality(t, l, terms.len(), d_avg),
        }
    }

    /// Score with a fixed `d_avg`, used when the graph is not available.
    pub fn score_with_distance(&self, label: &str, terms: &BTreeSet<String>, d_avg: f64) -> Scores {
        let t = self.cross_term(terms);
        let l = self.label_term(label, terms);
        Scores {
            t,
            l,
            o: t + l,
            d_avg,
            q: quality(t, l, terms.len(), d_avg),
        }
    }

    pub fn category(&self, label: &str, terms: BTreeSet<String>) -> EntityCategory {
        EntityCategory {
            scores: self.score(label, &terms),
            label: label.to_string(),
            terms,
        }
    }

    fn rescore(&self, c: &mut EntityCategory) {
        c.scores = self.score(&c.label, &c.terms);
    }
}

/// Every term node lists the nodes above it within `d_max` edges as candidate
/// labels; transposing gives one candidate category per label.
pub fn collect_candidates(distances: &DistanceMatrix, scorer: &Scorer, d_max: u32) -> Vec<EntityCategory> {
    let mut by_label: BTreeMap<&str, BTreeSet<String>> = BTreeMap::new();
    for (term, row) in distances.rows() {
        for (label, &d) in row {
            if (1..=d_max).contains(&d) {
                by_label.entry(label).or_default().insert(term.clone());
            }
        }
    }
    by_label
        .into_iter()
        .map(|(label, terms)| scorer.category(label, terms))
        .collect()
}

/// Drops vague (low T or L), oversized and undersized candidates.
pub fn filter_candidates(cands: Vec<EntityCategory>, tta_size: usize, cfg: &CategorizerConfig) -> Vec<EntityCategory> {
    let max_size = cfg.max_tta_fraction * tta_size as f64;
    cands
        .into_iter()
        .filter(|c| {
            c.scores.t >= cfg.min_cross_term
                && c.scores.l >= cfg.min_label_term
                && (c.len() as f64) <= max_size
                && c.len() >= cfg.min_size
        })
        .collect()
}

/// Among candidates with identical term sets, keeps the best-ranked one.
pub fn resolve_full_overlaps(cands: Vec<EntityCategory>) -> Vec<EntityCategory> {
    let mut best: BTreeMap<BTreeSet<String>, EntityCategory> = BTreeMap::new();
    for c in cands {
        match best.get(&c.terms) {
            Some(existing) if rank(existing, &c) != Ordering::Greater => {}
            _ => {
                best.insert(c.terms.clone(), c);
            }
        }
    }
    let mut out: Vec<_> = best.into_values().collect();
    out.sort_by(rank);
    out
}

/// The matrix of replacements over categories sorted by [`rank`]:
/// `R[a][b] = Q_b` when `|EC_a ∩ EC_b| ≥ overlap·|EC_a|`, otherwise 0.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplacementMatrix {
    entries: Vec<Vec<Option<f64>>>,
}

impl ReplacementMatrix {
    pub fn build(sorted: &[EntityCategory], overlap: f64) -> Self {
        let entries = sorted
            .iter()
            .map(|a| {
                let need = overlap * a.len() as f64;
                sorted
                    .iter()
                    .map(|b| {
                        let shared = a.terms.intersection(&b.terms).count();
                        (shared as f64 >= need).then_some(b.scores.q)
                    })
                    .collect()
            })
            .collect();
        ReplacementMatrix { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.entries[a][b].unwrap_or(0.0)
    }

    pub fn is_substantial(&self, a: usize, b: usize) -> bool {
        self.entries[a][b].is_some()
    }

    /// Column of the best entry in row `a`; on ties the earliest column,
    /// i.e. the better-ranked category.
    pub fn row_argmax(&self, a: usize) -> usize {
        let mut best = a;
        for (b, v) in self.entries[a].iter().enumerate() {
            if let Some(v) = v {
                let current = self.entries[a][best].expect("diagonal is always set");
                if *v > current || (*v == current && b < best) {
                    best = b;
                }
            }
        }
        best
    }
}

/// Replaces each category by the best category it substantially overlaps,
/// provided that one is also the best in its own row. Categories without
/// such a replacement disappear.
pub fn resolve_substantial_overlaps(mut cands: Vec<EntityCategory>, cfg: &CategorizerConfig) -> Vec<EntityCategory> {
    cands.sort_by(rank);
    let r = ReplacementMatrix::build(&cands, cfg.overlap);
    let keep: BTreeSet<usize> = (0..cands.len())
        .filter_map(|a| {
            let c = r.row_argmax(a);
            (r.row_argmax(c) == c).then_some(c)
        })
        .collect();
    cands
        .into_iter()
        .enumerate()
        .filter(|(i, _)| keep.contains(i))
        .map(|(_, c)| c)
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConflictResolution {
    pub categories: Vec<EntityCategory>,
    /// Terms that were in some input category but in no final one, sorted.
    pub unassigned: Vec<String>,
}

/// Assigns every term to exactly one category.
///
/// Terms found in several categories are stripped first; terms equal to
/// another category's label move into that category. Each stripped term then
/// goes to the origin category maximizing `S = T + L`, where T is its mean
/// cosine to the clean category's terms and L its cosine to the label.
/// Categories below the size floor are dropped at the end.
pub fn resolve_conflicting_terms(
    cands: Vec<EntityCategory>,
    scorer: &Scorer,
    frequencies: &HashMap<String, u64>,
    cfg: &CategorizerConfig,
) -> ConflictResolution {
    let all_terms: BTreeSet<String> = cands.iter().flat_map(|c| c.terms.iter().cloned()).collect();

    let mut origins: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, c) in cands.iter().enumerate() {
        for t in &c.terms {
            origins.entry(t.clone()).or_default().push(i);
        }
    }
    let conflicted: BTreeMap<String, Vec<usize>> = origins.into_iter().filter(|(_, o)| o.len() >= 2).collect();

    let mut clean: Vec<EntityCategory> = cands;
    for c in &mut clean {
        c.terms.retain(|t| !conflicted.contains_key(t));
    }

    // Label-terms go to the category they name.
    let label_index: HashMap<String, usize> = clean.iter().enumerate().map(|(i, c)| (c.label.clone(), i)).collect();
    let mut moves: Vec<(usize, String, usize)> = Vec::new();
    for (i, c) in clean.iter().enumerate() {
        for t in &c.terms {
            if let Some(&j) = label_index.get(t).filter(|&&j| j != i) {
                moves.push((i, t.clone(), j));
            }
        }
    }
    for (from, t, to) in moves {
        clean[from].terms.remove(&t);
        clean[to].terms.insert(t);
    }
    let mut pending: Vec<(String, Vec<usize>)> = Vec::new();
    for (t, o) in conflicted {
        match label_index.get(&t) {
            Some(&j) => {
                clean[j].terms.insert(t);
            }
            None => pending.push((t, o)),
        }
    }

    for c in &mut clean {
        scorer.rescore(c);
    }

    let best_origin_q = |o: &[usize]| o.iter().map(|&i| clean[i].scores.q).fold(f64::NEG_INFINITY, f64::max);
    pending.sort_by(|(ta, oa), (tb, ob)| {
        best_origin_q(ob)
            .total_cmp(&best_origin_q(oa))
            .then_with(|| frequencies.get(tb).unwrap_or(&0).cmp(frequencies.get(ta).unwrap_or(&0)))
            .then_with(|| ta.cmp(tb))
    });

    let mut assigned: Vec<BTreeSet<String>> = vec![BTreeSet::new(); clean.len()];
    for (t, origin) in &pending {
        let mut best: Option<(usize, f64)> = None;
        for &i in origin {
            let s = similarity_score(scorer, t, &clean[i]);
            let better = match best {
                None => true,
                Some((b, bs)) => s > bs || (s == bs && rank(&clean[i], &clean[b]) == Ordering::Less),
            };
            if better {
                best = Some((i, s));
            }
        }
        let (i, _) = best.expect("conflicted terms have at least two origins");
        assigned[i].insert(t.clone());
    }

    let mut categories: Vec<EntityCategory> = clean
        .into_iter()
        .zip(assigned)
        .map(|(mut c, extra)| {
            c.terms.extend(extra);
            scorer.rescore(&mut c);
            c
        })
        .filter(|c| c.len() >= cfg.min_size)
        .collect();
    categories.sort_by(rank);

    let kept: BTreeSet<&String> = categories.iter().flat_map(|c| c.terms.iter()).collect();
    let unassigned = all_terms.iter().filter(|t| !kept.contains(t)).cloned().collect();
    ConflictResolution {
        categories,
        unassigned,
    }
}

/// `S(t, EC) = mean cos(t, terms of EC other than t) + cos(t, label of EC)`.
pub fn similarity_score(scorer: &Scorer, term: &str, category: &EntityCategory) -> f64 {
    let others: Vec<&String> = category.terms.iter().filter(|x| x.as_str() != term).collect();
    let t = if others.is_empty() {
        0.0
    } else {
        others.iter().map(|x| scorer.similarity(term, x)).sum::<f64>() / others.len() as f64
    };
    t + scorer.similarity(term, &category.label)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageCounts {
    pub candidates: usize,
    pub filtered: usize,
    pub after_full_overlaps: usize,
    pub after_substantial_overlaps: usize,
    pub final_categories: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Categorization {
    pub categories: Vec<EntityCategory>,
    /// Term nodes that ended up in no category.
    pub unassigned: Vec<String>,
    pub stages: StageCounts,
}

/// Full pass: collect → filter → full overlaps → substantial overlaps →
/// conflicting terms.
pub fn run(
    graph: &DomainGraph,
    distances: &DistanceMatrix,
    vectors: &dyn WordVectors,
    frequencies: &HashMap<String, u64>,
    cfg: &CategorizerConfig,
) -> Categorization {
    let scorer = Scorer::new(vectors, Some(distances));
    let tta_size = graph.term_node_count();
    let mut stages = StageCounts::default();

    let cands = collect_candidates(distances, &scorer, cfg.d_max);
    stages.candidates = cands.len();
    let cands = filter_candidates(cands, tta_size, cfg);
    stages.filtered = cands.len();
    let cands = resolve_full_overlaps(cands);
    stages.after_full_overlaps = cands.len();
    let cands = resolve_substantial_overlaps(cands, cfg);
    stages.after_substantial_overlaps = cands.len();
    let resolved = resolve_conflicting_terms(cands, &scorer, frequencies, cfg);
    stages.final_categories = resolved.categories.len();

    let assigned: BTreeSet<&String> = resolved.categories.iter().flat_map(|c| c.terms.iter()).collect();
    let mut unassigned: Vec<String> = graph
        .term_nodes()
        .map(|n| &n.name)
        .filter(|n| !assigned.contains(n))
        .cloned()
        .collect();
    unassigned.sort();
    Categorization {
        categories: resolved.categories,
        unassigned,
        stages,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    fn cat(label: &str, terms: &[&str], q: f64) -> EntityCategory {
        EntityCategory {
            label: label.into(),
            terms: set(terms),
            scores: Scores {
                q,
                ..Default::default()
            },
        }
    }

    #[test]
    fn quality_published_example() {
        let q = quality(0.5, 0.4, 8, 2.0);
        assert!((q - 1.08).abs() < 1e-12);
    }

    #[test]
    fn quality_edge_cases() {
        assert_eq!(size_factor(1), 1.0);
        assert_eq!(size_factor(2), 1.0);
        assert_eq!(quality(0.0, 0.9, 10, 3.0), 0.0);
        assert_eq!(quality(0.5, 0.5, 0, 1.0), 0.0);
    }

    #[test]
    fn collect_transposes_shared_label() {
        let mut d = DistanceMatrix::default();
        for t in ["a", "b"] {
            d.insert(t, t, 0);
            d.insert(t, "L", 1);
        }
        let vectors: HashMap<String, Vec<f64>> = HashMap::new();
        let scorer = Scorer::new(&vectors, Some(&d));
        let cands = collect_candidates(&d, &scorer, 5);
        assert_eq!(cands.len(), 1);
        assert_eq!(cands[0].terms, set(&["a", "b"]));
        assert_eq!(cands[0].scores.d_avg, 1.0);
    }

    #[test]
    fn collect_multiple_ancestors_and_far_labels() {
        let mut d = DistanceMatrix::default();
        d.insert("a", "a", 0);
        d.insert("a", "X", 1);
        d.insert("a", "Y", 2);
        d.insert("a", "Z", 3);
        d.insert("a", "Far", 6);
        let vectors: HashMap<String, Vec<f64>> = HashMap::new();
        let scorer = Scorer::new(&vectors, Some(&d));
        let labels: Vec<_> = collect_candidates(&d, &scorer, 5).into_iter().map(|c| c.label).collect();
        assert_eq!(labels, ["X", "Y", "Z"]);
    }

    fn with_scores(t: f64, l: f64, n: usize) -> EntityCategory {
        EntityCategory {
            label: "x".into(),
            terms: (0..n).map(|i| format!("t{i}")).collect(),
            scores: Scores {
                t,
                l,
                ..Default::default()
            },
        }
    }

    #[test]
    fn filter_gates() {
        let cfg = CategorizerConfig::default();
        assert!(filter_candidates(vec![with_scores(0.19, 0.9, 10)], 400, &cfg).is_empty());
        assert!(filter_candidates(vec![with_scores(0.5, 0.29, 10)], 400, &cfg).is_empty());
        assert!(filter_candidates(vec![with_scores(0.5, 0.5, 4)], 400, &cfg).is_empty());
        assert!(filter_candidates(vec![with_scores(0.5, 0.5, 61)], 400, &cfg).is_empty());
        assert_eq!(filter_candidates(vec![with_scores(0.5, 0.5, 10)], 400, &cfg).len(), 1);
        assert_eq!(filter_candidates(vec![with_scores(0.5, 0.5, 60)], 400, &cfg).len(), 1);
    }

    #[test]
    fn full_overlap_keeps_higher_q() {
        let out = resolve_full_overlaps(vec![cat("l1", &["a", "b", "c"], 2.0), cat("l2", &["a", "b", "c"], 3.0)]);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].label, "l2");
    }

    #[test]
    fn full_overlap_tie_prefers_smaller_label_and_keeps_disjoint() {
        let out = resolve_full_overlaps(vec![
            cat("zeta", &["a", "b"], 1.0),
            cat("alpha", &["a", "b"], 1.0),
            cat("other", &["c"], 0.5),
        ]);
        let labels: Vec<_> = out.iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, ["alpha", "other"]);
    }

    #[test]
    fn substantial_overlap_picks_better_category() {
        let cfg = CategorizerConfig::default();
        let a = cat("A", &["a", "b", "c", "d"], 1.0);
        let b = cat("B", &["a", "b", "c", "e"], 2.0);
        let out = resolve_substantial_overlaps(vec![a, b], &cfg);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].label, "B");
    }

    #[test]
    fn small_overlap_keeps_both() {
        let cfg = CategorizerConfig::default();
        let a = cat("A", &["s", "a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9"], 1.0);
        let b = cat("B", &["s", "b1", "b2", "b3", "b4", "b5", "b6", "b7", "b8", "b9"], 2.0);
        assert_eq!(resolve_substantial_overlaps(vec![a, b], &cfg).len(), 2);
        let single = resolve_substantial_overlaps(vec![cat("A", &["a"], 0.3)], &cfg);
        assert_eq!(single.len(), 1);
    }

    #[test]
    fn replacement_matrix_is_asymmetric() {
        let sorted = vec![cat("B", &["a", "b", "c", "d", "e", "f"], 2.0), cat("A", &["a", "b"], 1.0)];
        let r = ReplacementMatrix::build(&sorted, 0.5);
        assert_eq!(r.get(0, 0), 2.0);
        assert!(!r.is_substantial(0, 1));
        assert_eq!(r.get(1, 0), 2.0);
        assert_eq!(r.row_argmax(1), 0);
    }

    fn vecs(entries: &[(&str, [f64; 3])]) -> HashMap<String, Vec<f64>> {
        entries.iter().map(|(k, v)| (k.to_string(), v.to_vec())).collect()
    }

    #[test]
    fn label_term_moves_into_named_category() {
        let v = vecs(&[]);
        let scorer = Scorer::new(&v, None);
        let cfg = CategorizerConfig {
            min_size: 1,
            ..Default::default()
        };
        let a = cat("A", &["h", "x"], 0.0);
        let h = cat("h", &["y", "z"], 0.0);
        let out = resolve_conflicting_terms(vec![a, h], &scorer, &HashMap::new(), &cfg);
        let h = out.categories.iter().find(|c| c.label == "h").unwrap();
        assert!(h.terms.contains("h"));
        let a = out.categories.iter().find(|c| c.label == "A").unwrap();
        assert!(!a.terms.contains("h"));
    }

    #[test]
    fn conflicted_term_goes_to_closest_label() {
        let v = vecs(&[
            ("t", [1.0, 0.0, 0.0]),
            ("LA", [0.9, 0.43589, 0.0]),
            ("LB", [0.0, 0.0, 1.0]),
            ("a1", [0.5, 0.5, 0.5]),
            ("a2", [0.5, 0.5, 0.5]),
            ("b1", [0.5, 0.5, 0.5]),
            ("b2", [0.5, 0.5, 0.5]),
        ]);
        let scorer = Scorer::new(&v, None);
        let cfg = CategorizerConfig {
            min_size: 1,
            ..Default::default()
        };
        let a = cat("LA", &["t", "a1", "a2"], 0.0);
        let b = cat("LB", &["t", "b1", "b2"], 0.0);
        let out = resolve_conflicting_terms(vec![a, b], &scorer, &HashMap::new(), &cfg);
        let la = out.categories.iter().find(|c| c.label == "LA").unwrap();
        assert!(la.terms.contains("t"));
        assert!(out.categories.iter().find(|c| c.label == "LB").unwrap().terms.len() == 2);
    }

    #[test]
    fn empty_clean_category_can_win_by_label() {
        let v = vecs(&[
            ("t", [1.0, 0.0, 0.0]),
            ("u", [0.0, 1.0, 0.0]),
            ("LA", [1.0, 0.05, 0.0]),
            ("LB", [0.0, 0.0, 1.0]),
            ("b1", [0.0, 0.0, 1.0]),
        ]);
        let scorer = Scorer::new(&v, None);
        let cfg = CategorizerConfig {
            min_size: 1,
            ..Default::default()
        };
        // Category LA consists only of conflicted terms; after stripping it is empty.
        let a = cat("LA", &["t", "u"], 0.0);
        let b = cat("LB", &["t", "u", "b1"], 0.0);
        let s = similarity_score(&scorer, "t", &cat("LA", &[], 0.0));
        assert!(s > 0.0);
        let out = resolve_conflicting_terms(vec![a, b], &scorer, &HashMap::new(), &cfg);
        let la = out.categories.iter().find(|c| c.label == "LA").unwrap();
        assert!(la.terms.contains("t"));
    }

    #[test]
    fn scorer_matches_hand_values() {
        let v = vecs(&[
            ("L", [1.0, 0.0, 0.0]),
            ("a", [1.0, 1.0, 0.0]),
            ("b", [1.0, 0.0, 0.0]),
        ]);
        let scorer = Scorer::new(&v, None);
        let s = scorer.score("L", &set(&["a", "b"]));
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.t - r).abs() < 1e-12);
        assert!((s.l - (r + 1.0) / 2.0).abs() < 1e-12);
        assert!((s.q - r * (r + 1.0) / 2.0 * (r + (r + 1.0) / 2.0)).abs() < 1e-12);
    }
}
