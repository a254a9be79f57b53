//! The domain graph: extracted terms at the bottom, knowledge-base hypernyms
//! above them, connected by hyponym → hypernym edges.
//!
//! Construction runs in three steps: [`init_graph`] adds the
//! terms-to-annotate and their heads, [`infer_areas`] picks the subject areas
//! that describe the domain, and [`grow`] expands the graph upwards through
//! hypernym pages whose senses fit those areas. [`distances`] then measures
//! how far each term sits below every reachable candidate label.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::Term;
use crate::embeddings::{cosine_unchecked, WordVectors};
use crate::kb::{in_text_hypernyms, DependencyProvider, KbEntry, KnowledgeBase};
use crate::linkage::{average_linkage, distance_matrix, euclidean};

/// Maximum number of edges between a term and a candidate label.
pub const D_MAX: u32 = 5;
/// Size of the most-frequent-areas cluster.
pub const TOP_AREAS: usize = 5;
/// Range of cluster counts tried when inferring the domain areas.
pub const AREA_CLUSTER_COUNTS: std::ops::RangeInclusive<usize> = 6..=12;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("no terms to annotate")]
    EmptyTta,
    #[error("grow iterations must be 1 or 2, got {0}")]
    Iterations(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphNode {
    pub name: String,
    pub kb_entry: Option<KbEntry>,
    pub is_term_node: bool,
    /// Section and in-text hypernyms, canonicalized through the KB.
    pub hypernyms: Vec<String>,
    pub hyponyms: Vec<String>,
    expanded: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exclusion {
    pub term: String,
    pub reason: String,
}

#[derive(Debug, Clone, Default)]
pub struct DomainGraph {
    nodes: Vec<GraphNode>,
    index: HashMap<String, usize>,
    up: Vec<BTreeSet<usize>>,
    down: Vec<BTreeSet<usize>>,
    removed: Vec<bool>,
}

fn canonical(kb: &KnowledgeBase, word: &str) -> String {
    kb.lookup(word).map_or_else(|| word.to_string(), |e| e.headword.clone())
}

impl DomainGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a node (or upgrades an existing one to a term node) and returns
    /// its index. Properties come from the node's KB page, if any.
    pub fn add_node(
        &mut self,
        name: &str,
        is_term_node: bool,
        kb: &KnowledgeBase,
        dep: Option<&dyn DependencyProvider>,
    ) -> usize {
        if let Some(&i) = self.index.get(name) {
            self.nodes[i].is_term_node |= is_term_node;
            return i;
        }
        let entry = kb.lookup(name).cloned();
        let mut hypernyms: Vec<String> = Vec::new();
        let mut hyponyms: Vec<String> = Vec::new();
        if let Some(e) = &entry {
            let section = e.hypernyms.iter().map(|h| canonical(kb, h));
            for h in section.chain(in_text_hypernyms(e, kb, dep)) {
                if h != name && !hypernyms.contains(&h) {
                    hypernyms.push(h);
                }
            }
            for h in e.hyponyms.iter().map(|h| canonical(kb, h)) {
                if h != name && !hyponyms.contains(&h) {
                    hyponyms.push(h);
                }
            }
        }
        let i = self.nodes.len();
        self.nodes.push(GraphNode {
            name: name.to_string(),
            kb_entry: entry,
            is_term_node,
            hypernyms,
            hyponyms,
            expanded: false,
        });
        self.index.insert(name.to_string(), i);
        self.up.push(BTreeSet::new());
        self.down.push(BTreeSet::new());
        self.removed.push(false);
        i
    }

    /// Adds `from → to` unless it is a self-loop, already present, or would
    /// close a cycle. Returns whether the edge was added.
    pub fn add_edge(&mut self, from: usize, to: usize) -> bool {
        if from == to || self.up[from].contains(&to) || self.reaches(to, from) {
            return false;
        }
        self.up[from].insert(to);
        self.down[to].insert(from);
        true
    }

    /// True if `target` is reachable from `source` following upward edges.
    fn reaches(&self, source: usize, target: usize) -> bool {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![source];
        while let Some(n) = stack.pop() {
            if n == target {
                return true;
            }
            if std::mem::replace(&mut seen[n], true) {
                continue;
            }
            stack.extend(self.up[n].iter().copied());
        }
        false
    }

    fn remove_node(&mut self, i: usize) {
        for t in std::mem::take(&mut self.up[i]) {
            self.down[t].remove(&i);
        }
        for s in std::mem::take(&mut self.down[i]) {
            self.up[s].remove(&i);
        }
        self.index.remove(&self.nodes[i].name);
        self.removed[i] = true;
    }

    fn live(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&i| !self.removed[i])
    }

    pub fn node(&self, name: &str) -> Option<&GraphNode> {
        self.index.get(name).map(|&i| &self.nodes[i])
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn nodes(&self) -> impl Iterator<Item = &GraphNode> {
        self.live().map(|i| &self.nodes[i])
    }

    pub fn node_count(&self) -> usize {
        self.index.len()
    }

    pub fn term_nodes(&self) -> impl Iterator<Item = &GraphNode> {
        self.nodes().filter(|n| n.is_term_node)
    }

    pub fn term_node_count(&self) -> usize {
        self.term_nodes().count()
    }

    /// Edges as `(hyponym, hypernym)` name pairs, sorted.
    pub fn edges(&self) -> Vec<(String, String)> {
        let mut out: Vec<_> = self
            .live()
            .flat_map(|i| self.up[i].iter().map(move |&j| (i, j)))
            .map(|(i, j)| (self.nodes[i].name.clone(), self.nodes[j].name.clone()))
            .collect();
        out.sort();
        out
    }

    pub fn has_edge(&self, from: &str, to: &str) -> bool {
        match (self.index.get(from), self.index.get(to)) {
            (Some(&a), Some(&b)) => self.up[a].contains(&b),
            _ => false,
        }
    }

    pub fn hypernyms_of(&self, name: &str) -> Vec<&str> {
        self.index.get(name).map_or_else(Vec::new, |&i| {
            self.up[i].iter().map(|&j| self.nodes[j].name.as_str()).collect()
        })
    }

    /// Nodes without incoming edges, i.e. the bottom of the graph.
    pub fn leaves(&self) -> Vec<&GraphNode> {
        self.live()
            .filter(|&i| self.down[i].is_empty())
            .map(|i| &self.nodes[i])
            .collect()
    }

    /// Kahn's algorithm over the live nodes.
    pub fn is_acyclic(&self) -> bool {
        let mut indegree: HashMap<usize, usize> = self.live().map(|i| (i, self.down[i].len())).collect();
        let mut queue: VecDeque<usize> = indegree.iter().filter(|(_, &d)| d == 0).map(|(&i, _)| i).collect();
        let mut visited = 0;
        while let Some(n) = queue.pop_front() {
            visited += 1;
            for &t in &self.up[n] {
                let d = indegree.get_mut(&t).expect("live target");
                *d -= 1;
                if *d == 0 {
                    queue.push_back(t);
                }
            }
        }
        visited == indegree.len()
    }

    pub fn export(&self) -> GraphExport {
        let mut nodes: Vec<ExportNode> = self
            .nodes()
            .map(|n| ExportNode {
                name: n.name.clone(),
                term_node: n.is_term_node,
                has_page: n.kb_entry.is_some(),
            })
            .collect();
        nodes.sort_by(|a, b| a.name.cmp(&b.name));
        GraphExport {
            format: GRAPH_FORMAT.to_string(),
            nodes,
            edges: self.edges(),
        }
    }
}

pub const GRAPH_FORMAT: &str = "anea-graph/1";

/// Debug export of the graph: sorted nodes and `[hyponym, hypernym]` edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphExport {
    pub format: String,
    pub nodes: Vec<ExportNode>,
    pub edges: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportNode {
    pub name: String,
    pub term_node: bool,
    pub has_page: bool,
}

/// Creates a node per term and per distinct head with an edge term → head.
/// Terms with neither a page nor a head are excluded and reported.
pub fn init_graph(
    tta: &[Term],
    kb: &KnowledgeBase,
    dep: Option<&dyn DependencyProvider>,
) -> Result<(DomainGraph, Vec<Exclusion>), GraphError> {
    if tta.is_empty() {
        return Err(GraphError::EmptyTta);
    }
    let mut graph = DomainGraph::new();
    let mut excluded = Vec::new();
    for term in tta {
        let has_page = term.kb_link.is_some() || kb.contains(&term.surface);
        if !has_page && term.head.is_none() {
            excluded.push(Exclusion {
                term: term.surface.clone(),
                reason: "no knowledge-base page for term or head".into(),
            });
            continue;
        }
        let t = graph.add_node(&term.surface, true, kb, dep);
        if let Some(head) = term.head.as_deref().filter(|h| *h != term.surface) {
            let h = graph.add_node(head, true, kb, dep);
            graph.add_edge(t, h);
        }
    }
    Ok((graph, excluded))
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct AreaSet {
    pub areas: BTreeSet<String>,
    pub diagnostics: AreaDiagnostics,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct AreaDiagnostics {
    pub frequencies: BTreeMap<String, usize>,
    /// The most frequent titles (C_k).
    pub most_frequent: Vec<String>,
    pub runs: Vec<AreaRun>,
    pub best_cluster_count: Option<usize>,
    /// Every intersection was empty, so the most frequent titles were used.
    pub fell_back: bool,
}

/// Outcome of clustering the area titles into `clusters` groups.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AreaRun {
    pub clusters: usize,
    /// Most internally similar cluster (C_s).
    pub most_similar: Vec<String>,
    /// Most frequent cluster (C_f).
    pub most_frequent: Vec<String>,
    pub areas: Vec<String>,
    pub similarity: f64,
    pub frequency: usize,
}

impl AreaRun {
    pub fn score(&self) -> f64 {
        self.similarity * self.frequency as f64
    }
}

impl AreaSet {
    pub fn is_empty(&self) -> bool {
        self.areas.is_empty()
    }

    /// The pruning gate: a page passes if the set is empty (gate open), the
    /// page does not exist or has no senses, or some sense lists no area or
    /// an area in the set.
    pub fn admits(&self, entry: Option<&KbEntry>) -> bool {
        if self.areas.is_empty() {
            return true;
        }
        let Some(entry) = entry else { return true };
        entry.senses.is_empty()
            || entry
                .senses
                .iter()
                .any(|s| s.areas.is_empty() || s.areas.iter().any(|a| self.areas.contains(a)))
    }
}

fn mean_pairwise_cosine(vectors: &[&Vec<f64>]) -> Option<f64> {
    let n = vectors.len();
    if n < 2 {
        return None;
    }
    let mut sum = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            sum += cosine_unchecked(vectors[i], vectors[j]);
        }
    }
    Some(sum / (n * (n - 1) / 2) as f64)
}

/// Infers the areas that define the graph's domain from the area titles of
/// the pages currently in the graph.
pub fn infer_areas(graph: &DomainGraph, vectors: &dyn WordVectors) -> AreaSet {
    let mut freq: BTreeMap<String, usize> = BTreeMap::new();
    for node in graph.nodes() {
        if let Some(e) = &node.kb_entry {
            for a in e.area_titles() {
                *freq.entry(a.to_string()).or_default() += 1;
            }
        }
    }
    infer_areas_from_frequencies(freq, vectors)
}

pub fn infer_areas_from_frequencies(freq: BTreeMap<String, usize>, vectors: &dyn WordVectors) -> AreaSet {
    let mut by_freq: Vec<(&String, &usize)> = freq.iter().collect();
    by_freq.sort_by(|a, b| b.1.cmp(a.1).then_with(|| a.0.cmp(b.0)));
    let top: Vec<String> = by_freq.iter().take(TOP_AREAS).map(|(t, _)| (*t).clone()).collect();

    let mut diagnostics = AreaDiagnostics {
        frequencies: freq.clone(),
        most_frequent: top.clone(),
        ..Default::default()
    };
    if freq.len() < *AREA_CLUSTER_COUNTS.start() {
        return AreaSet {
            areas: top.into_iter().collect(),
            diagnostics,
        };
    }

    let titles: Vec<&String> = freq.keys().collect();
    let vecs: Vec<Vec<f64>> = titles.iter().map(|t| vectors.vector_of(t)).collect();
    let tree = average_linkage(&distance_matrix(&vecs, |a, b| euclidean(a, b)));
    let top_set: BTreeSet<&String> = top.iter().collect();

    for k in AREA_CLUSTER_COUNTS.filter(|&k| k <= titles.len()) {
        let clusters = tree.cut_to(k);
        let cluster_freq = |c: &Vec<usize>| c.iter().map(|&i| freq[titles[i]]).sum::<usize>();

        let mut most_frequent = &clusters[0];
        for c in &clusters {
            if cluster_freq(c) > cluster_freq(most_frequent) {
                most_frequent = c;
            }
        }
        let mut most_similar: Option<(&Vec<usize>, f64)> = None;
        for c in &clusters {
            let vs: Vec<&Vec<f64>> = c.iter().map(|&i| &vecs[i]).collect();
            if let Some(s) = mean_pairwise_cosine(&vs) {
                if most_similar.is_none_or(|(_, best)| s > best) {
                    most_similar = Some((c, s));
                }
            }
        }
        let most_similar = most_similar.map_or(most_frequent, |(c, _)| c);

        let areas: Vec<usize> = most_similar
            .iter()
            .copied()
            .filter(|i| most_frequent.contains(i) && top_set.contains(titles[*i]))
            .collect();
        let area_vecs: Vec<&Vec<f64>> = areas.iter().map(|&i| &vecs[i]).collect();
        let similarity = match areas.len() {
            0 => 0.0,
            1 => 1.0,
            _ => mean_pairwise_cosine(&area_vecs).expect("two or more areas"),
        };
        let names = |c: &[usize]| c.iter().map(|&i| titles[i].clone()).collect::<Vec<_>>();
        diagnostics.runs.push(AreaRun {
            clusters: k,
            most_similar: names(most_similar),
            most_frequent: names(most_frequent),
            frequency: areas.iter().map(|&i| freq[titles[i]]).sum(),
            areas: names(&areas),
            similarity,
        });
    }

    let mut best: Option<&AreaRun> = None;
    for run in diagnostics.runs.iter().filter(|r| !r.areas.is_empty()) {
        if best.is_none_or(|b| run.score() > b.score()) {
            best = Some(run);
        }
    }
    let areas = match best {
        Some(run) => {
            diagnostics.best_cluster_count = Some(run.clusters);
            run.areas.iter().cloned().collect()
        }
        None => {
            diagnostics.fell_back = true;
            top.into_iter().collect()
        }
    };
    AreaSet { areas, diagnostics }
}

/// Expands the graph upwards for `iterations` rounds.
///
/// Each round takes the nodes not yet expanded, creates nodes for their
/// hypernyms that pass the area gate, then links every node to every listed
/// hypernym and hyponym already in the graph. Candidate edges are tried in
/// name order and dropped if they would close a cycle. New nodes left without
/// a hyponym are removed so that every leaf stays a term node.
pub fn grow(
    graph: &mut DomainGraph,
    kb: &KnowledgeBase,
    areas: &AreaSet,
    iterations: u32,
    dep: Option<&dyn DependencyProvider>,
) -> Result<(), GraphError> {
    if !(1..=2).contains(&iterations) {
        return Err(GraphError::Iterations(iterations));
    }
    for _ in 0..iterations {
        grow_once(graph, kb, areas, dep);
    }
    Ok(())
}

fn grow_once(graph: &mut DomainGraph, kb: &KnowledgeBase, areas: &AreaSet, dep: Option<&dyn DependencyProvider>) {
    let frontier: Vec<usize> = graph.live().filter(|&i| !graph.nodes[i].expanded).collect();
    let mut to_create: BTreeSet<String> = BTreeSet::new();
    for &i in &frontier {
        for h in &graph.nodes[i].hypernyms {
            if !graph.contains(h) && areas.admits(kb.lookup(h)) {
                to_create.insert(h.clone());
            }
        }
        graph.nodes[i].expanded = true;
    }
    let created: Vec<usize> = to_create.iter().map(|h| graph.add_node(h, false, kb, dep)).collect();

    let mut candidates: BTreeSet<(&str, &str)> = BTreeSet::new();
    for i in graph.live() {
        let node = &graph.nodes[i];
        for h in node.hypernyms.iter().filter(|h| graph.contains(h)) {
            candidates.insert((&node.name, h));
        }
        for y in node.hyponyms.iter().filter(|y| graph.contains(y)) {
            candidates.insert((y, &node.name));
        }
    }
    let candidates: Vec<(usize, usize)> = candidates
        .into_iter()
        .map(|(a, b)| (graph.index[a], graph.index[b]))
        .collect();
    for (a, b) in candidates {
        graph.add_edge(a, b);
    }

    // Drop created nodes that ended up as non-term leaves.
    let mut changed = true;
    while changed {
        changed = false;
        for &i in &created {
            if !graph.removed[i] && graph.down[i].is_empty() && !graph.nodes[i].is_term_node {
                graph.remove_node(i);
                changed = true;
            }
        }
    }
}

/// Upward edge-count distances from each term node, capped at [`D_MAX`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DistanceMatrix {
    rows: BTreeMap<String, BTreeMap<String, u32>>,
}

impl DistanceMatrix {
    pub fn get(&self, term: &str, node: &str) -> Option<u32> {
        self.rows.get(term)?.get(node).copied()
    }

    pub fn row(&self, term: &str) -> Option<&BTreeMap<String, u32>> {
        self.rows.get(term)
    }

    pub fn rows(&self) -> impl Iterator<Item = (&String, &BTreeMap<String, u32>)> {
        self.rows.iter()
    }

    pub fn insert(&mut self, term: &str, node: &str, d: u32) {
        self.rows.entry(term.to_string()).or_default().insert(node.to_string(), d);
    }
}

pub fn distances(graph: &DomainGraph) -> DistanceMatrix {
    let mut matrix = DistanceMatrix::default();
    for start in graph.live().filter(|&i| graph.nodes[i].is_term_node) {
        let mut row = BTreeMap::new();
        let mut queue = VecDeque::from([(start, 0u32)]);
        let mut seen = BTreeSet::from([start]);
        while let Some((n, d)) = queue.pop_front() {
            row.insert(graph.nodes[n].name.clone(), d);
            if d == D_MAX {
                continue;
            }
            for &up in &graph.up[n] {
                if seen.insert(up) {
                    queue.push_back((up, d + 1));
                }
            }
        }
        matrix.rows.insert(graph.nodes[start].name.clone(), row);
    }
    matrix
}
