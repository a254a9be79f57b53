//! Silver-standard datasets built from assessor sheets, and the relatedness
//! metrics used to score any categorization against them.
//!
//! # Sheet format
//!
//! Plain text, one assessed category per block, blocks separated by blank
//! lines. A block starts with a header record
//!
//! ```text
//! approach,z,assessor,label,label_score,term_score
//! ```
//!
//! followed by one term per line. `label` and `label_score` may be empty
//! (clustering output has no labels). Scores are integers in `0..=9`. Lines
//! starting with `#` are comments; a literal column-name line is skipped.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::categorizer::EntityCategory;
use crate::unionfind::DisjointSet;

pub const SHEET_COLUMNS: [&str; 6] = ["approach", "z", "assessor", "label", "label_score", "term_score"];
pub const MIN_SILVER_SIZE: usize = 5;
pub const MAX_SCORE: u8 = 9;

#[derive(Debug, Error)]
pub enum SilverError {
    #[error("{sheet}:{line}: {reason}")]
    Sheet { sheet: String, line: usize, reason: String },
    #[error("no assessment sheets")]
    NoSheets,
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssessedCategory {
    pub approach: String,
    pub configuration: String,
    pub assessor: String,
    pub label: Option<String>,
    pub label_score: Option<u8>,
    pub term_score: u8,
    pub terms: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssessmentSheet {
    pub name: String,
    pub categories: Vec<AssessedCategory>,
}

impl AssessmentSheet {
    pub fn parse(name: &str, text: &str) -> Result<Self, SilverError> {
        let err = |line: usize, reason: String| SilverError::Sheet {
            sheet: name.to_string(),
            line,
            reason,
        };
        let parse_score = |line: usize, field: &str, raw: &str| -> Result<u8, SilverError> {
            raw.parse::<u8>()
                .ok()
                .filter(|s| *s <= MAX_SCORE)
                .ok_or_else(|| err(line, format!("{field} {raw:?} is not an integer in 0..=9")))
        };

        let mut categories: Vec<AssessedCategory> = Vec::new();
        let mut open = false;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.starts_with('#') {
                continue;
            }
            if line.is_empty() {
                open = false;
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if !open {
                if fields == SHEET_COLUMNS {
                    continue;
                }
                if fields.len() != SHEET_COLUMNS.len() {
                    return Err(err(
                        line_no,
                        format!("block header needs {} fields, found {}", SHEET_COLUMNS.len(), fields.len()),
                    ));
                }
                let label = Some(fields[3].to_string()).filter(|l| !l.is_empty());
                let label_score = match fields[4] {
                    "" => None,
                    s => Some(parse_score(line_no, "label_score", s)?),
                };
                if label.is_some() && label_score.is_none() {
                    return Err(err(line_no, "label without label_score".into()));
                }
                categories.push(AssessedCategory {
                    approach: fields[0].to_string(),
                    configuration: fields[1].to_string(),
                    assessor: fields[2].to_string(),
                    label,
                    label_score,
                    term_score: parse_score(line_no, "term_score", fields[5])?,
                    terms: Vec::new(),
                });
                open = true;
            } else {
                categories.last_mut().expect("open block").terms.push(line.to_string());
            }
        }
        Ok(AssessmentSheet {
            name: name.to_string(),
            categories,
        })
    }

    pub fn load(path: &Path) -> Result<Self, SilverError> {
        let text = fs::read_to_string(path).map_err(|source| SilverError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&path.display().to_string(), &text)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", SHEET_COLUMNS.join(","));
        for c in &self.categories {
            out.push('\n');
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                c.approach,
                c.configuration,
                c.assessor,
                c.label.as_deref().unwrap_or(""),
                c.label_score.map(|s| s.to_string()).unwrap_or_default(),
                c.term_score
            ));
            for t in &c.terms {
                out.push_str(t);
                out.push('\n');
            }
        }
        out
    }
}

/// Loads every `.csv` or `.sheet` file in `dir`, sorted by file name.
pub fn load_sheets(dir: &Path) -> Result<Vec<AssessmentSheet>, SilverError> {
    let io = |source| SilverError::Io {
        path: dir.display().to_string(),
        source,
    };
    let mut paths: Vec<_> = fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "csv" || x == "sheet"))
        .collect();
    paths.sort();
    paths.iter().map(|p| AssessmentSheet::load(p)).collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Accumulator {
    pub sum: u64,
    pub count: u64,
}

impl Accumulator {
    pub fn add(&mut self, score: u8) {
        self.sum += score as u64;
        self.count += 1;
    }

    pub fn mean(&self) -> f64 {
        self.sum as f64 / self.count as f64
    }
}

fn pair_key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// Summed scores and co-occurrence counts; values are normalized on read.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScoreMatrices {
    term_term: BTreeMap<(String, String), Accumulator>,
    label_term: BTreeMap<(String, String), Accumulator>,
    histogram: [u64; 10],
}

impl ScoreMatrices {
    /// Normalized term-to-term relatedness, `None` if never co-assessed.
    pub fn term_term(&self, a: &str, b: &str) -> Option<f64> {
        self.term_term.get(&pair_key(a, b)).map(Accumulator::mean)
    }

    pub fn label_term(&self, label: &str, term: &str) -> Option<f64> {
        self.label_term
            .get(&(label.to_string(), term.to_string()))
            .map(Accumulator::mean)
    }

    /// Counts of every assessed score (term and label scores alike).
    pub fn histogram(&self) -> &[u64; 10] {
        &self.histogram
    }

    pub fn vocabulary(&self) -> BTreeSet<&str> {
        self.term_term
            .keys()
            .flat_map(|(a, b)| [a.as_str(), b.as_str()])
            .collect()
    }

    pub fn labels(&self) -> BTreeSet<&str> {
        self.label_term.keys().map(|(l, _)| l.as_str()).collect()
    }

    pub fn term_pairs(&self) -> impl Iterator<Item = (&str, &str, f64)> {
        self.term_term.iter().map(|((a, b), acc)| (a.as_str(), b.as_str(), acc.mean()))
    }
}

pub fn build_matrices(sheets: &[AssessmentSheet]) -> Result<ScoreMatrices, SilverError> {
    if sheets.is_empty() {
        return Err(SilverError::NoSheets);
    }
    let mut m = ScoreMatrices::default();
    for category in sheets.iter().flat_map(|s| &s.categories) {
        m.histogram[category.term_score as usize] += 1;
        let terms: BTreeSet<&String> = category.terms.iter().collect();
        let terms: Vec<&String> = terms.into_iter().collect();
        for i in 0..terms.len() {
            for j in i + 1..terms.len() {
                m.term_term
                    .entry(pair_key(terms[i], terms[j]))
                    .or_default()
                    .add(category.term_score);
            }
        }
        if let (Some(label), Some(score)) = (&category.label, category.label_score) {
            m.histogram[score as usize] += 1;
            for t in &terms {
                m.label_term
                    .entry((label.clone(), (*t).clone()))
                    .or_default()
                    .add(score);
            }
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdRule {
    pub low: usize,
    pub high: usize,
    /// The preceding bin is averaged in when it is less frequent by exactly
    /// this many counts.
    pub adjacent_difference: u64,
}

impl Default for ThresholdRule {
    fn default() -> Self {
        ThresholdRule {
            low: 6,
            high: 8,
            adjacent_difference: 1,
        }
    }
}

/// Most frequent score within `low..=high` (ties to the higher score),
/// averaged with the preceding score when that one is less frequent by
/// exactly `adjacent_difference`.
pub fn select_threshold(histogram: &[u64; 10], rule: &ThresholdRule) -> f64 {
    let mut best = rule.high;
    for bin in (rule.low..=rule.high).rev() {
        if histogram[bin] > histogram[best] {
            best = bin;
        }
    }
    if best > rule.low && histogram[best].checked_sub(histogram[best - 1]) == Some(rule.adjacent_difference) {
        (best as f64 + (best - 1) as f64) / 2.0
    } else {
        best as f64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Group {
    pub label: Option<String>,
    pub terms: BTreeSet<String>,
}

impl From<&EntityCategory> for Group {
    fn from(c: &EntityCategory) -> Self {
        Group {
            label: Some(c.label.clone()).filter(|l| !l.is_empty()),
            terms: c.terms.clone(),
        }
    }
}

/// Connected components of the term graph thresholded at `threshold`; those
/// with at least five terms become silver categories, labeled with the label
/// of highest mean score among labels covering two or more of their terms.
pub fn build_silver(m: &ScoreMatrices, threshold: f64) -> Vec<Group> {
    let vocab: Vec<&str> = m.vocabulary().into_iter().collect();
    let index: BTreeMap<&str, usize> = vocab.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    let mut ds = DisjointSet::new(vocab.len());
    for (a, b, v) in m.term_pairs() {
        if v >= threshold {
            ds.union(index[a], index[b]);
        }
    }
    ds.components()
        .into_iter()
        .filter(|c| c.len() >= MIN_SILVER_SIZE)
        .map(|c| {
            let terms: BTreeSet<String> = c.iter().map(|&i| vocab[i].to_string()).collect();
            Group {
                label: best_label(m, &terms),
                terms,
            }
        })
        .collect()
}

fn best_label(m: &ScoreMatrices, terms: &BTreeSet<String>) -> Option<String> {
    let mut best: Option<(&str, f64)> = None;
    for label in m.labels() {
        let scores: Vec<f64> = terms.iter().filter_map(|t| m.label_term(label, t)).collect();
        if scores.len() < 2 {
            continue;
        }
        let mean = scores.iter().sum::<f64>() / scores.len() as f64;
        if best.is_none_or(|(_, b)| mean > b) {
            best = Some((label, mean));
        }
    }
    best.map(|(l, _)| l.to_string())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    #[serde(rename = "EC")]
    pub categories: usize,
    #[serde(rename = "AT")]
    pub annotated_terms: usize,
    #[serde(rename = "Size")]
    pub mean_size: f64,
    #[serde(rename = "TS")]
    pub ts: f64,
    #[serde(rename = "LS")]
    pub ls: Option<f64>,
    #[serde(rename = "AS")]
    pub average: f64,
}

fn mean(values: &[f64]) -> Option<f64> {
    (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
}

/// Scores groups against the matrices. Unassessed pairs are skipped; AS falls
/// back to TS when no group has a scored label.
pub fn evaluate(groups: &[Group], m: &ScoreMatrices) -> Metrics {
    let mut per_ts = Vec::new();
    let mut per_ls = Vec::new();
    for g in groups {
        let terms: Vec<&String> = g.terms.iter().collect();
        let mut pairs = Vec::new();
        for i in 0..terms.len() {
            for j in i + 1..terms.len() {
                pairs.extend(m.term_term(terms[i], terms[j]));
            }
        }
        per_ts.extend(mean(&pairs));
        if let Some(label) = &g.label {
            let scores: Vec<f64> = terms.iter().filter_map(|t| m.label_term(label, t)).collect();
            per_ls.extend(mean(&scores));
        }
    }
    let annotated_terms: usize = groups.iter().map(|g| g.terms.len()).sum();
    let ts = mean(&per_ts).unwrap_or(0.0);
    let ls = mean(&per_ls);
    Metrics {
        categories: groups.len(),
        annotated_terms,
        mean_size: if groups.is_empty() {
            0.0
        } else {
            annotated_terms as f64 / groups.len() as f64
        },
        ts,
        ls,
        average: ls.map_or(ts, |ls| (ts + ls) / 2.0),
    }
}

/// One row of the evaluation report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub approach: String,
    #[serde(rename = "Z")]
    pub configuration: Option<String>,
    #[serde(rename = "TTA")]
    pub tta: Option<usize>,
    #[serde(flatten)]
    pub metrics: Metrics,
}

impl MetricsRow {
    pub fn table(rows: &[MetricsRow]) -> String {
        let mut out = String::from("Appr.\tZ\tTTA\tEC\tAT\tSize\tTS\tLS\tAS\n");
        for r in rows {
            let m = &r.metrics;
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{:.0}\t{:.1}\t{}\t{:.1}{}\n",
                r.approach,
                r.configuration.as_deref().unwrap_or("--"),
                r.tta.map_or("--".to_string(), |t| t.to_string()),
                m.categories,
                m.annotated_terms,
                m.mean_size,
                m.ts,
                m.ls.map_or("--".to_string(), |l| format!("{l:.1}")),
                m.average,
                if m.ls.is_none() { "*" } else { "" },
            ));
        }
        out
    }
}
