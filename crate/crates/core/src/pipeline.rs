//! End-to-end composition: terms → heads → TTA → domain graph → categories,
//! plus the run manifest that pins down inputs, parameters and outputs.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::categorizer::{self, CategorizerConfig, Scorer, StageCounts};
use crate::compounds::resolve_heads;
use crate::corpus::{group_by_head, select_tta, HeadGroup, SelectionConfig, TermTable};
use crate::embeddings::{VectorStore, Vectorizer};
use crate::ensemble;
use crate::graph::{self, distances, grow, infer_areas, init_graph, Exclusion};
use crate::hc;
use crate::kb::KnowledgeBase;
use crate::output::{CategoriesFile, CategoryRecord, Source};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub selection: SelectionConfig,
    pub grow_iterations: u32,
    /// Run the clustering baseline instead of the categorizer.
    pub baseline: bool,
    pub categorizer: CategorizerConfig,
}

impl PipelineConfig {
    pub fn new(selection: SelectionConfig) -> Self {
        PipelineConfig {
            selection,
            grow_iterations: 1,
            baseline: false,
            categorizer: CategorizerConfig::default(),
        }
    }

    pub fn describe(&self) -> String {
        match self.selection {
            SelectionConfig::Fraction { z } => format!("z={z}"),
            SelectionConfig::Count { y } => format!("tta={y}"),
        }
    }
}

/// Terms with resolved heads, grouped and sorted; shared by every
/// configuration run over the same inputs.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub table: TermTable,
    pub heads: Vec<HeadGroup>,
}

impl Prepared {
    pub fn new(mut table: TermTable, kb: &KnowledgeBase) -> Result<Self> {
        if table.is_empty() {
            return Err(crate::corpus::CorpusError::NoTerms.into());
        }
        resolve_heads(&mut table, kb);
        let heads = group_by_head(&table);
        log::info!("{} terms, {} head groups", table.len(), heads.len());
        Ok(Prepared { table, heads })
    }

    pub fn unique_head_count(&self) -> usize {
        self.heads.len()
    }

    /// The three TTA counts used for voting.
    pub fn default_configs(&self) -> Result<[usize; 3]> {
        Ok(ensemble::default_configs(self.unique_head_count())?)
    }
}

/// Sizes and intermediate results worth reporting alongside the output.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RunReport {
    pub head_groups: usize,
    pub tta: usize,
    pub excluded: usize,
    pub term_nodes: usize,
    pub graph_nodes: usize,
    pub graph_edges: usize,
    pub areas: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stages: Option<StageCounts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hc_threshold: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct PipelineRun {
    pub file: CategoriesFile,
    pub report: RunReport,
}

pub fn run(prepared: &Prepared, kb: &KnowledgeBase, store: &VectorStore, cfg: &PipelineConfig) -> Result<PipelineRun> {
    let vectors = Vectorizer::new(store, kb);
    let tta = select_tta(&prepared.heads, cfg.selection)?;
    let mut report = RunReport {
        head_groups: prepared.heads.len(),
        tta: tta.len(),
        ..RunReport::default()
    };
    log::info!("{}: {} terms to annotate", cfg.describe(), tta.len());

    if cfg.baseline {
        let terms: Vec<String> = tta.iter().map(|t| t.surface.clone()).collect();
        if terms.is_empty() {
            return Err(graph::GraphError::EmptyTta.into());
        }
        let scorer = Scorer::new(&vectors, None);
        let result = hc::optimize(&terms, &scorer);
        report.hc_threshold = result.best_run().map(|r| r.threshold);
        let categories = hc::to_categories(&result, &scorer);
        let mut file = CategoriesFile::from_categories(
            Source {
                approach: "hc".into(),
                config: Some(cfg.describe()),
            },
            &categories,
        );
        let clustered: std::collections::BTreeSet<&String> = categories.iter().flat_map(|c| c.terms.iter()).collect();
        let mut unassigned: Vec<String> = terms.iter().filter(|t| !clustered.contains(t)).cloned().collect();
        unassigned.sort();
        unassigned.dedup();
        file.unassigned = unassigned;
        file.exclusions = headless(&prepared.table).collect();
        return Ok(PipelineRun { file, report });
    }

    let (mut graph, mut exclusions) = init_graph(&tta, kb, None)?;
    exclusions.extend(headless(&prepared.table));
    exclusions.sort_by(|a, b| a.term.cmp(&b.term));
    let areas = infer_areas(&graph, &vectors);
    log::info!("domain areas: {:?}", areas.areas);
    grow(&mut graph, kb, &areas, cfg.grow_iterations, None)?;
    let dist = distances(&graph);
    let frequencies: HashMap<String, u64> = prepared
        .table
        .iter()
        .map(|t| (t.surface.clone(), t.corpus_frequency))
        .collect();
    let result = categorizer::run(&graph, &dist, &vectors, &frequencies, &cfg.categorizer);

    report.excluded = exclusions.len();
    report.term_nodes = graph.term_node_count();
    report.graph_nodes = graph.node_count();
    report.graph_edges = graph.edges().len();
    report.areas = areas.areas.iter().cloned().collect();
    report.stages = Some(result.stages.clone());

    let mut file = CategoriesFile::new(
        Source {
            approach: "anea".into(),
            config: Some(cfg.describe()),
        },
        result.categories.iter().map(CategoryRecord::from).collect(),
    );
    file.exclusions = exclusions;
    file.unassigned = result.unassigned;
    Ok(PipelineRun { file, report })
}

/// Terms for which neither the term nor any suffix has a KB page; they never
/// enter a head group.
fn headless(table: &TermTable) -> impl Iterator<Item = Exclusion> + '_ {
    table.iter().filter(|t| t.head.is_none()).map(|t| Exclusion {
        term: t.surface.clone(),
        reason: "no knowledge-base page for term or head".into(),
    })
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

impl FileDigest {
    pub fn of(path: impl Into<String>, bytes: &[u8]) -> Self {
        FileDigest {
            path: path.into(),
            sha256: sha256_hex(bytes),
        }
    }
}

/// Everything needed to reproduce a run: tool version, parameters and the
/// content hashes of what went in and came out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub parameters: serde_json::Value,
    pub inputs: BTreeMap<String, FileDigest>,
    pub outputs: BTreeMap<String, FileDigest>,
}

impl RunManifest {
    pub fn new(parameters: &impl Serialize) -> Self {
        RunManifest {
            tool: "anea".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            parameters: serde_json::to_value(parameters).expect("parameters serialize"),
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}
