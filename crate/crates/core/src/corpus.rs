//! Term extraction and terms-to-annotate (TTA) selection.
//!
//! A term is a unique noun phrase without digits. The built-in extractor
//! relies on German noun capitalization; externally tagged noun phrases can be
//! imported from a `surface,frequency` CSV file instead.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("no terms")]
    NoTerms,
    #[error("line {line}: {reason}")]
    Malformed { line: u64, reason: String },
    #[error("invalid selection config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CorpusError {
    fn io(path: &Path, source: std::io::Error) -> Self {
        CorpusError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub surface: String,
    pub lemma: String,
    pub corpus_frequency: u64,
    pub head: Option<String>,
    pub kb_link: Option<String>,
}

impl Term {
    pub fn new(surface: impl Into<String>, corpus_frequency: u64) -> Self {
        let surface = surface.into();
        Term {
            lemma: surface.clone(),
            surface,
            corpus_frequency,
            head: None,
            kb_link: None,
        }
    }
}

/// Returns true if `s` is acceptable as a term surface: non-empty and digit-free.
pub fn is_valid_surface(s: &str) -> bool {
    !s.trim().is_empty() && !s.chars().any(char::is_numeric)
}

/// Unique terms keyed by surface form. Counting is case-sensitive.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TermTable {
    terms: BTreeMap<String, Term>,
}

impl TermTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `count` occurrences of `surface`. Invalid surfaces are ignored and
    /// `false` is returned.
    pub fn add(&mut self, surface: &str, count: u64) -> bool {
        if !is_valid_surface(surface) || count == 0 {
            return false;
        }
        self.terms
            .entry(surface.to_string())
            .and_modify(|t| t.corpus_frequency += count)
            .or_insert_with(|| Term::new(surface, count));
        true
    }

    pub fn merge(&mut self, other: TermTable) {
        for (surface, term) in other.terms {
            match self.terms.get_mut(&surface) {
                Some(t) => t.corpus_frequency += term.corpus_frequency,
                None => {
                    self.terms.insert(surface, term);
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, surface: &str) -> Option<&Term> {
        self.terms.get(surface)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Term> {
        self.terms.values()
    }

    pub fn iter_mut(&mut self) -> impl Iterator<Item = &mut Term> {
        self.terms.values_mut()
    }
}

impl FromIterator<(String, u64)> for TermTable {
    fn from_iter<I: IntoIterator<Item = (String, u64)>>(iter: I) -> Self {
        let mut table = TermTable::new();
        for (s, n) in iter {
            table.add(&s, n);
        }
        table
    }
}

/// Splits text into tokens on whitespace and strips surrounding punctuation.
/// Inner hyphens survive, so "Diesel-Motor" stays one token.
pub fn tokenize(text: &str) -> impl Iterator<Item = &str> {
    text.split_whitespace()
        .map(|tok| tok.trim_matches(|c: char| !c.is_alphanumeric()))
        .filter(|tok| !tok.is_empty())
}

pub trait TermExtractor: Sync {
    /// Returns every term occurrence in `document`, repeated per occurrence.
    fn extract(&self, document: &str) -> Vec<String>;
}

/// Default extractor: capitalized, digit-free tokens that are not German
/// function words.
#[derive(Debug, Clone)]
pub struct CapitalizedNouns {
    stopwords: HashSet<&'static str>,
}

impl Default for CapitalizedNouns {
    fn default() -> Self {
        CapitalizedNouns {
            stopwords: GERMAN_STOPWORDS.iter().copied().collect(),
        }
    }
}

impl TermExtractor for CapitalizedNouns {
    fn extract(&self, document: &str) -> Vec<String> {
        tokenize(document)
            .filter(|tok| tok.chars().next().is_some_and(char::is_uppercase))
            .filter(|tok| is_valid_surface(tok))
            .filter(|tok| !self.stopwords.contains(tok.to_lowercase().as_str()))
            .map(str::to_string)
            .collect()
    }
}

/// Extractor backed by a list of externally tagged noun phrases. Each phrase
/// is matched on token boundaries.
#[derive(Debug, Clone)]
pub struct ImportedPhrases {
    phrases: Vec<Vec<String>>,
}

impl ImportedPhrases {
    pub fn new<I, S>(phrases: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let phrases = phrases
            .into_iter()
            .filter(|p| is_valid_surface(p.as_ref()))
            .map(|p| tokenize(p.as_ref()).map(str::to_string).collect::<Vec<_>>())
            .filter(|toks| !toks.is_empty())
            .collect();
        ImportedPhrases { phrases }
    }
}

impl TermExtractor for ImportedPhrases {
    fn extract(&self, document: &str) -> Vec<String> {
        let tokens: Vec<&str> = tokenize(document).collect();
        let mut out = Vec::new();
        for phrase in &self.phrases {
            if phrase.len() > tokens.len() {
                continue;
            }
            let hits = tokens
                .windows(phrase.len())
                .filter(|w| w.iter().zip(phrase).all(|(a, b)| *a == b.as_str()))
                .count();
            out.extend(std::iter::repeat_n(phrase.join(" "), hits));
        }
        out
    }
}

pub fn extract_terms<D>(documents: &[D], extractor: &dyn TermExtractor) -> Result<TermTable, CorpusError>
where
    D: AsRef<str> + Sync,
{
    if documents.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    let table = documents
        .par_iter()
        .map(|doc| {
            let mut t = TermTable::new();
            for term in extractor.extract(doc.as_ref()) {
                t.add(&term, 1);
            }
            t
        })
        .reduce(TermTable::new, |mut a, b| {
            a.merge(b);
            a
        });
    if table.is_empty() {
        return Err(CorpusError::NoTerms);
    }
    Ok(table)
}

/// Reads documents from a directory of `.txt` files (sorted by name) or from
/// a single file holding one document per non-empty line.
pub fn read_documents(path: &Path) -> Result<Vec<String>, CorpusError> {
    if path.is_dir() {
        let mut files: Vec<_> = fs::read_dir(path)
            .map_err(|e| CorpusError::io(path, e))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "txt"))
            .collect();
        files.sort();
        files
            .iter()
            .map(|p| fs::read_to_string(p).map_err(|e| CorpusError::io(p, e)))
            .collect()
    } else {
        let text = fs::read_to_string(path).map_err(|e| CorpusError::io(path, e))?;
        Ok(text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(str::to_string)
            .collect())
    }
}

#[derive(Debug, Clone)]
pub struct ImportedTerms {
    pub table: TermTable,
    /// Rows rejected because the surface contained a digit.
    pub skipped: usize,
}

pub const TERMS_HEADER: [&str; 2] = ["surface", "frequency"];

pub fn import_terms(path: &Path) -> Result<ImportedTerms, CorpusError> {
    let text = fs::read_to_string(path).map_err(|e| CorpusError::io(path, e))?;
    parse_terms(&text)
}

pub fn parse_terms(text: &str) -> Result<ImportedTerms, CorpusError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| CorpusError::Malformed {
        line: 1,
        reason: e.to_string(),
    })?;
    if headers.iter().map(str::trim).ne(TERMS_HEADER) {
        return Err(CorpusError::Malformed {
            line: 1,
            reason: format!("expected header \"{}\"", TERMS_HEADER.join(",")),
        });
    }

    let mut table = TermTable::new();
    let mut skipped = 0;
    for record in reader.records() {
        let record = record.map_err(|e| CorpusError::Malformed {
            line: e.position().map_or(0, |p| p.line()),
            reason: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 2 {
            return Err(CorpusError::Malformed {
                line,
                reason: format!("expected 2 fields, found {}", record.len()),
            });
        }
        let surface = record[0].trim();
        if surface.is_empty() {
            return Err(CorpusError::Malformed {
                line,
                reason: "empty surface".into(),
            });
        }
        let frequency: u64 = record[1]
            .trim()
            .parse()
            .ok()
            .filter(|&f| f >= 1)
            .ok_or_else(|| CorpusError::Malformed {
                line,
                reason: format!("frequency {:?} is not a positive integer", &record[1]),
            })?;
        if !table.add(surface, frequency) {
            skipped += 1;
        }
    }
    if skipped > 0 {
        log::warn!("skipped {skipped} term rows containing digits");
    }
    Ok(ImportedTerms { table, skipped })
}

pub fn write_terms(table: &TermTable) -> String {
    let mut out = format!("{}\n", TERMS_HEADER.join(","));
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    for t in table.iter() {
        w.write_record([t.surface.as_str(), &t.corpus_frequency.to_string()])
            .expect("writing to a Vec cannot fail");
    }
    out.push_str(&String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 input"));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeadGroup {
    pub head: String,
    /// Sorted by descending frequency, then surface.
    pub members: Vec<Term>,
    pub unique_term_count: usize,
    pub total_frequency: u64,
}

/// Groups terms with a resolved head. Groups come back sorted by unique term
/// count, then total frequency (both descending), then head string.
pub fn group_by_head(table: &TermTable) -> Vec<HeadGroup> {
    let mut groups: BTreeMap<&str, Vec<Term>> = BTreeMap::new();
    for term in table.iter() {
        if let Some(head) = &term.head {
            groups.entry(head).or_default().push(term.clone());
        }
    }
    let mut groups: Vec<HeadGroup> = groups
        .into_iter()
        .map(|(head, mut members)| {
            members.sort_by(|a, b| {
                b.corpus_frequency
                    .cmp(&a.corpus_frequency)
                    .then_with(|| a.surface.cmp(&b.surface))
            });
            HeadGroup {
                head: head.to_string(),
                unique_term_count: members.len(),
                total_frequency: members.iter().map(|t| t.corpus_frequency).sum(),
                members,
            }
        })
        .collect();
    groups.sort_by(head_group_order);
    groups
}

fn head_group_order(a: &HeadGroup, b: &HeadGroup) -> std::cmp::Ordering {
    b.unique_term_count
        .cmp(&a.unique_term_count)
        .then_with(|| b.total_frequency.cmp(&a.total_frequency))
        .then_with(|| a.head.cmp(&b.head))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionConfig {
    /// Keep the members of the top ⌈|heads| / z⌉ head groups.
    Fraction { z: u32 },
    /// Keep exactly the first `y` terms in head-group order.
    Count { y: usize },
}

impl SelectionConfig {
    pub fn validate(&self) -> Result<(), CorpusError> {
        match *self {
            SelectionConfig::Fraction { z } if z < 2 => {
                Err(CorpusError::Config(format!("Z must be at least 2, got {z}")))
            }
            SelectionConfig::Count { y } if y < 1 => {
                Err(CorpusError::Config("TTA count must be at least 1".into()))
            }
            _ => Ok(()),
        }
    }
}

/// Selects the terms-to-annotate from head groups sorted by [`group_by_head`].
pub fn select_tta(heads: &[HeadGroup], cfg: SelectionConfig) -> Result<Vec<Term>, CorpusError> {
    cfg.validate()?;
    debug_assert!(heads
        .windows(2)
        .all(|w| head_group_order(&w[0], &w[1]) != std::cmp::Ordering::Greater));
    let tta = match cfg {
        SelectionConfig::Fraction { z } => {
            let groups = heads.len().div_ceil(z as usize);
            heads[..groups]
                .iter()
                .flat_map(|g| g.members.iter().cloned())
                .collect()
        }
        SelectionConfig::Count { y } => heads
            .iter()
            .flat_map(|g| g.members.iter().cloned())
            .take(y)
            .collect(),
    };
    Ok(tta)
}

const GERMAN_STOPWORDS: &[&str] = &[
    "aber", "alle", "allem", "allen", "aller", "alles", "als", "also", "am", "an", "andere",
    "anderen", "auch", "auf", "aus", "bei", "beim", "bereits", "bis", "bitte", "da", "dabei",
    "dadurch", "dafür", "damit", "danach", "dann", "darauf", "darum", "das", "dass", "dazu",
    "dem", "den", "denn", "der", "deren", "des", "deshalb", "dessen", "die", "dies", "diese",
    "diesem", "diesen", "dieser", "dieses", "doch", "dort", "du", "durch", "ein", "eine",
    "einem", "einen", "einer", "eines", "er", "es", "etwa", "euch", "für", "gegen", "hier",
    "hinter", "ich", "ihm", "ihn", "ihr", "ihre", "ihrem", "ihren", "ihrer", "im", "in",
    "indem", "ins", "ist", "jede", "jedem", "jeden", "jeder", "jedes", "jedoch", "jetzt",
    "kein", "keine", "man", "mehr", "mit", "nach", "neben", "nicht", "noch", "nun", "nur",
    "ob", "obwohl", "oder", "ohne", "schon", "sehr", "sein", "seine", "seinem", "seinen",
    "seiner", "sich", "sie", "sind", "so", "sobald", "somit", "sondern", "sowie", "über",
    "um", "und", "uns", "unter", "vom", "von", "vor", "während", "wann", "war", "warum",
    "was", "weil", "welche", "welcher", "wenn", "wer", "werden", "wie", "wir", "wird",
    "wo", "zu", "zum", "zur", "zwischen", "heute", "gestern", "morgen", "danke",
];
