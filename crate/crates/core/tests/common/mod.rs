//! Random instance generators and reference implementations shared by the
//! integration tests.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::path::PathBuf;

use anea_core::kb::{KbEntry, KnowledgeBase, Sense};
use anea_core::{DomainGraph, TermTable, VectorStore};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn toy(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/toy").join(name)
}

/// Random lowercase letters.
pub fn letters(rng: &mut StdRng, len: usize) -> String {
    (0..len).map(|_| rng.gen_range(b'a'..=b'z') as char).collect()
}

pub fn capitalized(rng: &mut StdRng, len: usize) -> String {
    let w = letters(rng, len);
    let mut c = w.chars();
    let first = c.next().unwrap().to_ascii_uppercase();
    std::iter::once(first).chain(c).collect()
}

pub fn random_unit(rng: &mut StdRng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = norm(&v);
        if n > 1e-3 {
            return v.iter().map(|x| x / n).collect();
        }
    }
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn cos(a: &[f64], b: &[f64]) -> f64 {
    let (na, nb) = (norm(a), norm(b));
    if na == 0.0 || nb == 0.0 || a.len() != b.len() {
        return 0.0;
    }
    a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>() / (na * nb)
}

/// `unit(base + noise·r)` for a random direction `r`.
pub fn perturb(rng: &mut StdRng, base: &[f64], noise: f64) -> Vec<f64> {
    let r = random_unit(rng, base.len());
    let v: Vec<f64> = base.iter().zip(&r).map(|(b, x)| b + noise * x).collect();
    let n = norm(&v);
    v.iter().map(|x| x / n).collect()
}

fn page(headword: &str, areas: Vec<String>, hypernyms: Vec<String>, hyponyms: Vec<String>) -> KbEntry {
    KbEntry {
        headword: headword.to_string(),
        senses: vec![Sense {
            areas,
            definition: "ohne weitere angaben".into(),
        }],
        hypernyms,
        hyponyms,
    }
}

/// A random domain: a few upper concepts wired with injected hypernym
/// cycles, heads below them, and compounds of those heads as corpus terms.
pub struct RandomDomain {
    pub table: TermTable,
    pub kb: KnowledgeBase,
    pub store: VectorStore,
    pub uppers: Vec<String>,
    pub heads: Vec<String>,
}

pub fn random_domain(seed: u64) -> RandomDomain {
    let mut rng = rng(seed);
    let dim = 12;
    let areas = ["Technik", "Physik", "Kochkunst", "Musik"];
    let mut used: BTreeSet<String> = BTreeSet::new();
    let mut fresh = |rng: &mut StdRng, len: usize| loop {
        let w = capitalized(rng, len);
        if used.insert(w.to_lowercase()) {
            return w;
        }
    };

    let n_upper = rng.gen_range(2..=6);
    let uppers: Vec<String> = (0..n_upper).map(|_| fresh(&mut rng, 6)).collect();
    let top = fresh(&mut rng, 7);
    let mut upper_hyper: Vec<Vec<String>> = vec![vec![]; n_upper];
    for (i, h) in upper_hyper.iter_mut().enumerate() {
        if rng.gen_bool(0.6) {
            h.push(top.clone());
        }
        if rng.gen_bool(0.5) {
            let j = rng.gen_range(0..n_upper);
            if j != i {
                h.push(uppers[j].clone());
            }
        }
    }
    // Injected cycles: a 2-cycle and, sometimes, one through three nodes.
    if n_upper >= 2 {
        upper_hyper[0].push(uppers[1].clone());
        upper_hyper[1].push(uppers[0].clone());
    }
    if n_upper >= 3 && rng.gen_bool(0.5) {
        upper_hyper[2].push(uppers[0].clone());
        upper_hyper[0].push(uppers[2].clone());
    }
    let mut pages = Vec::new();
    for (i, u) in uppers.iter().enumerate() {
        let a = vec![areas[rng.gen_range(0..areas.len())].to_string()];
        pages.push(page(u, a, upper_hyper[i].clone(), vec![]));
    }
    pages.push(page(&top, vec![], vec![], vec![]));

    let mut store = VectorStore::new(dim);
    let upper_dirs: Vec<Vec<f64>> = (0..n_upper).map(|_| random_unit(&mut rng, dim)).collect();
    for (u, v) in uppers.iter().zip(&upper_dirs) {
        store.insert(u, v.clone()).unwrap();
    }

    let n_heads = rng.gen_range(3..=10);
    let mut heads = Vec::new();
    let mut table_rows: Vec<(String, u64)> = Vec::new();
    for _ in 0..n_heads {
        let head = fresh(&mut rng, 5);
        let k = rng.gen_range(0..n_upper);
        let mut hyper = vec![uppers[k].clone()];
        if rng.gen_bool(0.3) {
            hyper.push(uppers[rng.gen_range(0..n_upper)].clone());
        }
        hyper.dedup();
        // Occasionally a cycle through a head: an upper concept names it as hypernym.
        if rng.gen_bool(0.1) {
            let u = rng.gen_range(0..n_upper);
            pages[u].hypernyms.push(head.clone());
        }
        let a = vec![areas[rng.gen_range(0..areas.len())].to_string()];
        pages.push(page(&head, a, hyper, vec![]));
        let spread = rng.gen_range(0.2..1.2);
        let head_vec = perturb(&mut rng, &upper_dirs[k], spread);
        store.insert(&head, head_vec.clone()).unwrap();
        if rng.gen_bool(0.5) {
            table_rows.push((head.clone(), rng.gen_range(1..20)));
        }
        let n_compounds = rng.gen_range(1..=12);
        let noise = rng.gen_range(0.1..1.5);
        for _ in 0..n_compounds {
            let prefix = fresh(&mut rng, 4);
            let compound = format!("{prefix}{}", head.to_lowercase());
            if rng.gen_bool(0.85) {
                store.insert(&compound, perturb(&mut rng, &head_vec, noise)).unwrap();
            }
            table_rows.push((compound, rng.gen_range(1..30)));
        }
        heads.push(head);
    }
    // Terms without any resolvable head.
    for _ in 0..rng.gen_range(0..4) {
        table_rows.push((fresh(&mut rng, 8), rng.gen_range(1..5)));
    }
    table_rows.shuffle(&mut rng);
    RandomDomain {
        table: table_rows.into_iter().collect(),
        kb: KnowledgeBase::from_entries(pages),
        store,
        uppers,
        heads,
    }
}

/// Kahn's algorithm over the edge list.
pub fn edges_acyclic(edges: &[(String, String)]) -> bool {
    let mut indegree: BTreeMap<&str, usize> = BTreeMap::new();
    let mut out: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (a, b) in edges {
        indegree.entry(a).or_default();
        *indegree.entry(b).or_default() += 1;
        out.entry(a).or_default().push(b);
    }
    let mut queue: VecDeque<&str> = indegree.iter().filter(|(_, &d)| d == 0).map(|(n, _)| *n).collect();
    let mut seen = 0;
    while let Some(n) = queue.pop_front() {
        seen += 1;
        for &m in out.get(n).into_iter().flatten() {
            let d = indegree.get_mut(m).unwrap();
            *d -= 1;
            if *d == 0 {
                queue.push_back(m);
            }
        }
    }
    seen == indegree.len()
}

/// Shortest upward distances from every term node, up to `cap` edges.
pub fn bfs_distances(graph: &DomainGraph, cap: u32) -> BTreeMap<String, BTreeMap<String, u32>> {
    let mut up: HashMap<String, Vec<String>> = HashMap::new();
    for (a, b) in graph.edges() {
        up.entry(a).or_default().push(b);
    }
    let mut rows = BTreeMap::new();
    for t in graph.term_nodes() {
        let mut row = BTreeMap::from([(t.name.clone(), 0)]);
        let mut frontier = vec![t.name.clone()];
        for d in 1..=cap {
            let mut next = Vec::new();
            for n in &frontier {
                for m in up.get(n).into_iter().flatten() {
                    if !row.contains_key(m) {
                        row.insert(m.clone(), d);
                        next.push(m.clone());
                    }
                }
            }
            frontier = next;
        }
        rows.insert(t.name.clone(), row);
    }
    rows
}

/// Reference average linkage: recomputes every cluster-pair mean from the
/// original distances at each step. Returns `(left, right, distance, size)`.
pub fn naive_average_linkage(d: &[Vec<f64>]) -> Vec<(usize, usize, f64, usize)> {
    let mut clusters: Vec<Vec<usize>> = (0..d.len()).map(|i| vec![i]).collect();
    let mut merges = Vec::new();
    while clusters.len() > 1 {
        let mut best: Option<(usize, usize, f64)> = None;
        for a in 0..clusters.len() {
            for b in a + 1..clusters.len() {
                let mut sum = 0.0;
                for &x in &clusters[a] {
                    for &y in &clusters[b] {
                        sum += d[x][y];
                    }
                }
                let mean = sum / (clusters[a].len() * clusters[b].len()) as f64;
                let ids = (clusters[a][0].min(clusters[b][0]), clusters[a][0].max(clusters[b][0]));
                let better = match best {
                    None => true,
                    Some((ba, bb, bd)) => {
                        let bids = (clusters[ba][0].min(clusters[bb][0]), clusters[ba][0].max(clusters[bb][0]));
                        mean < bd - 1e-12 || ((mean - bd).abs() <= 1e-12 && ids < bids)
                    }
                };
                if better {
                    best = Some((a, b, mean));
                }
            }
        }
        let (a, b, dist) = best.unwrap();
        let (ia, ib) = (clusters[a][0], clusters[b][0]);
        let right = clusters.remove(b);
        clusters[a].extend(right);
        clusters[a].sort_unstable();
        merges.push((ia.min(ib), ia.max(ib), dist, clusters[a].len()));
    }
    merges
}
