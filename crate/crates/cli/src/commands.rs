//! Implementations of the batch subcommands.

use std::fs;
use std::path::{Path, PathBuf};

use anea_core::corpus::{extract_terms, import_terms, read_documents, CapitalizedNouns};
use anea_core::categorizer::Scorer;
use anea_core::embeddings::Vectorizer;
use anea_core::ensemble;
use anea_core::output::{CategoriesFile, CategoryRecord, Source};
use anea_core::pipeline::{self, sha256_hex, FileDigest, PipelineConfig, Prepared, RunManifest};
use anea_core::silver::{self, Group, MetricsRow, ThresholdRule};
use anea_core::{KnowledgeBase, SelectionConfig, TermTable, VectorStore};
use anyhow::{bail, Context, Result};
use serde::Serialize;

#[derive(Debug, Clone)]
pub enum TermSource {
    Corpus(PathBuf),
    Terms(PathBuf),
}

impl TermSource {
    fn path(&self) -> &Path {
        match self {
            TermSource::Corpus(p) | TermSource::Terms(p) => p,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Selection {
    Fraction(u32),
    Count(usize),
    /// The three TTA counts derived from the number of head groups.
    Default,
}

#[derive(Debug, Clone)]
pub struct RunArgs {
    pub source: TermSource,
    pub kb: PathBuf,
    pub vectors: PathBuf,
    pub selection: Selection,
    pub grow: u32,
    pub baseline: bool,
    pub out: PathBuf,
}

pub fn load_terms(source: &TermSource) -> Result<TermTable> {
    Ok(match source {
        TermSource::Corpus(path) => {
            let docs = read_documents(path).map_err(anea_core::Error::from)?;
            extract_terms(&docs, &CapitalizedNouns::default()).map_err(anea_core::Error::from)?
        }
        TermSource::Terms(path) => {
            let imported = import_terms(path).map_err(anea_core::Error::from)?;
            if imported.skipped > 0 {
                log::warn!("{}: skipped {} rows containing digits", path.display(), imported.skipped);
            }
            imported.table
        }
    })
}

pub fn load_kb(path: &Path) -> Result<KnowledgeBase> {
    Ok(KnowledgeBase::load_dump(path).map_err(anea_core::Error::from)?)
}

pub fn load_vectors(path: &Path) -> Result<VectorStore> {
    Ok(VectorStore::load(path).map_err(anea_core::Error::from)?)
}

/// Content hash of a file, or of a directory's sorted `name<TAB>sha256` listing.
pub fn digest_path(path: &Path) -> Result<FileDigest> {
    let display = path.display().to_string();
    if path.is_dir() {
        let mut names: Vec<PathBuf> = fs::read_dir(path)
            .with_context(|| format!("reading {display}"))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.is_file())
            .collect();
        names.sort();
        let mut listing = String::new();
        for p in names {
            let bytes = fs::read(&p).with_context(|| format!("reading {}", p.display()))?;
            let name = p.file_name().unwrap_or_default().to_string_lossy();
            listing.push_str(&format!("{name}\t{}\n", sha256_hex(&bytes)));
        }
        Ok(FileDigest {
            path: display,
            sha256: sha256_hex(listing.as_bytes()),
        })
    } else {
        let bytes = fs::read(path).with_context(|| format!("reading {display}"))?;
        Ok(FileDigest::of(display, &bytes))
    }
}

#[derive(Debug, Serialize)]
struct RunParameters {
    source: &'static str,
    selection: String,
    unique_heads: usize,
    configs: Vec<PipelineConfig>,
}

/// What `run` wrote, in order.
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub outputs: Vec<(PathBuf, CategoriesFile)>,
    pub manifest: PathBuf,
}

pub fn run(args: &RunArgs) -> Result<RunSummary> {
    if !args.kb.exists() {
        bail!("knowledge base {} does not exist", args.kb.display());
    }
    let table = load_terms(&args.source)?;
    let kb = load_kb(&args.kb)?;
    let store = load_vectors(&args.vectors)?;
    let prepared = Prepared::new(table, &kb)?;

    let selections: Vec<(String, SelectionConfig)> = match args.selection {
        Selection::Fraction(z) => vec![("categories.json".into(), SelectionConfig::Fraction { z })],
        Selection::Count(y) => vec![("categories.json".into(), SelectionConfig::Count { y })],
        Selection::Default => prepared
            .default_configs()?
            .iter()
            .map(|&y| (format!("categories-{y}.json"), SelectionConfig::Count { y }))
            .collect(),
    };
    let configs: Vec<PipelineConfig> = selections
        .iter()
        .map(|(_, s)| PipelineConfig {
            grow_iterations: args.grow,
            baseline: args.baseline,
            ..PipelineConfig::new(*s)
        })
        .collect();

    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let mut manifest = RunManifest::new(&RunParameters {
        source: match args.source {
            TermSource::Corpus(_) => "corpus",
            TermSource::Terms(_) => "terms",
        },
        selection: match args.selection {
            Selection::Fraction(z) => format!("z={z}"),
            Selection::Count(y) => format!("tta={y}"),
            Selection::Default => "default".into(),
        },
        unique_heads: prepared.unique_head_count(),
        configs: configs.clone(),
    });
    manifest.inputs.insert("terms".into(), digest_path(args.source.path())?);
    manifest.inputs.insert("kb".into(), digest_path(&args.kb)?);
    manifest.inputs.insert("vectors".into(), digest_path(&args.vectors)?);

    let mut outputs = Vec::new();
    for ((name, _), cfg) in selections.iter().zip(&configs) {
        let result = pipeline::run(&prepared, &kb, &store, cfg)?;
        log::info!("{}: {:?}", cfg.describe(), result.report);
        let path = args.out.join(name);
        let json = result.file.to_json();
        fs::write(&path, &json).with_context(|| format!("writing {}", path.display()))?;
        manifest.outputs.insert(name.clone(), FileDigest::of(name.clone(), json.as_bytes()));
        outputs.push((path, result.file));
    }
    let manifest_path = args.out.join("manifest.json");
    fs::write(&manifest_path, manifest.to_json()).with_context(|| format!("writing {}", manifest_path.display()))?;
    Ok(RunSummary {
        outputs,
        manifest: manifest_path,
    })
}

/// Optional KB and vectors used to fill in scores after voting.
#[derive(Debug, Clone)]
pub struct Rescore {
    pub kb: PathBuf,
    pub vectors: PathBuf,
}

pub fn vote(inputs: &[PathBuf], rescore: Option<&Rescore>) -> Result<CategoriesFile> {
    if !(ensemble::MIN_RUNS..=ensemble::MAX_RUNS).contains(&inputs.len()) {
        return Err(anea_core::Error::from(ensemble::EnsembleError::Arity(inputs.len())).into());
    }
    let mut runs = Vec::new();
    for path in inputs {
        let file = CategoriesFile::read(path).map_err(anea_core::Error::from)?;
        let id = file
            .source
            .config
            .clone()
            .unwrap_or_else(|| path.file_stem().unwrap_or_default().to_string_lossy().into_owned());
        runs.push((id, file.categories()));
    }
    let mut voted = ensemble::vote(&runs).map_err(anea_core::Error::from)?;
    if let Some(r) = rescore {
        let kb = load_kb(&r.kb)?;
        let store = load_vectors(&r.vectors)?;
        let vectors = Vectorizer::new(&store, &kb);
        let scorer = Scorer::new(&vectors, None);
        ensemble::rescore(&mut voted, &scorer);
    }
    let ids: Vec<&str> = runs.iter().map(|(id, _)| id.as_str()).collect();
    Ok(CategoriesFile::new(
        Source {
            approach: "vote".into(),
            config: Some(ids.join("+")),
        },
        voted.iter().map(CategoryRecord::from).collect(),
    ))
}

#[derive(Debug, Clone, Serialize)]
pub struct EvalReport {
    pub threshold: f64,
    pub histogram: [u64; 10],
    pub rows: Vec<MetricsRow>,
}

fn groups_of(file: &CategoriesFile) -> Vec<Group> {
    file.categories().iter().map(Group::from).collect()
}

fn matrices(sheets: &Path) -> Result<silver::ScoreMatrices> {
    let sheets = silver::load_sheets(sheets).map_err(anea_core::Error::from)?;
    Ok(silver::build_matrices(&sheets).map_err(anea_core::Error::from)?)
}

/// Scores each categories file against the matrices built from `sheets`,
/// with the silver dataset itself as the last row.
pub fn eval(files: &[PathBuf], sheets: &Path, rule: &ThresholdRule) -> Result<EvalReport> {
    let m = matrices(sheets)?;
    let threshold = silver::select_threshold(m.histogram(), rule);
    let mut rows = Vec::new();
    for path in files {
        let file = CategoriesFile::read(path).map_err(anea_core::Error::from)?;
        let groups = groups_of(&file);
        rows.push(MetricsRow {
            approach: file.source.approach.clone(),
            configuration: file.source.config.clone(),
            tta: Some(groups.iter().map(|g| g.terms.len()).sum::<usize>() + file.unassigned.len()),
            metrics: silver::evaluate(&groups, &m),
        });
    }
    let silver_groups = silver::build_silver(&m, threshold);
    rows.push(MetricsRow {
        approach: "silver".into(),
        configuration: None,
        tta: None,
        metrics: silver::evaluate(&silver_groups, &m),
    });
    Ok(EvalReport {
        threshold,
        histogram: *m.histogram(),
        rows,
    })
}

/// The silver dataset as a categories document.
pub fn silver_dataset(sheets: &Path, rule: &ThresholdRule) -> Result<CategoriesFile> {
    let m = matrices(sheets)?;
    let threshold = silver::select_threshold(m.histogram(), rule);
    let groups = silver::build_silver(&m, threshold);
    let records = groups
        .iter()
        .map(|g| CategoryRecord {
            label: g.label.clone().unwrap_or_default(),
            q: 0.0,
            t: 0.0,
            l: 0.0,
            o: 0.0,
            d_avg: 0.0,
            size: g.terms.len(),
            terms: g.terms.iter().cloned().collect(),
            provenance: Vec::new(),
        })
        .collect();
    Ok(CategoriesFile::new(
        Source {
            approach: "silver".into(),
            config: Some(format!("threshold={threshold}")),
        },
        records,
    ))
}
