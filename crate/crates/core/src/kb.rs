//! Offline Wiktionary-style knowledge base.
//!
//! The dump is JSON Lines: one page per line with `headword`, `senses`
//! (`areas` + `definition`), `hypernyms` and `hyponyms`. Hypernym and hyponym
//! sections are page-scoped, as on a Wiktionary page.

use std::fs;
use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::tokenize;

#[derive(Debug, Error)]
pub enum KbError {
    #[error("empty knowledge-base dump")]
    Empty,
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sense {
    #[serde(default)]
    pub areas: Vec<String>,
    pub definition: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KbEntry {
    pub headword: String,
    #[serde(default)]
    pub senses: Vec<Sense>,
    #[serde(default)]
    pub hypernyms: Vec<String>,
    #[serde(default)]
    pub hyponyms: Vec<String>,
}

impl KbEntry {
    fn validate(&self) -> Result<(), String> {
        if self.headword.trim().is_empty() {
            return Err("empty headword".into());
        }
        if let Some(i) = self.senses.iter().position(|s| s.definition.trim().is_empty()) {
            return Err(format!("sense {i} of {:?} has no definition", self.headword));
        }
        if self.hypernyms.iter().chain(&self.hyponyms).any(|h| h.trim().is_empty()) {
            return Err(format!("{:?} lists an empty hypernym or hyponym", self.headword));
        }
        Ok(())
    }

    /// All area titles over all senses, in order of appearance (with repeats).
    pub fn area_titles(&self) -> impl Iterator<Item = &str> {
        self.senses.iter().flat_map(|s| s.areas.iter().map(String::as_str))
    }

    fn absorb(&mut self, other: KbEntry) {
        self.senses.extend(other.senses);
        for h in other.hypernyms {
            if !self.hypernyms.contains(&h) {
                self.hypernyms.push(h);
            }
        }
        for h in other.hyponyms {
            if !self.hyponyms.contains(&h) {
                self.hyponyms.push(h);
            }
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct KnowledgeBase {
    entries: IndexMap<String, KbEntry>,
}

/// Upper-cases the first character, leaving the rest untouched.
pub fn capitalize(word: &str) -> String {
    let mut chars = word.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

impl KnowledgeBase {
    pub fn load_dump(path: &Path) -> Result<Self, KbError> {
        let text = fs::read_to_string(path).map_err(|source| KbError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse_dump(&text)
    }

    pub fn parse_dump(text: &str) -> Result<Self, KbError> {
        let mut kb = KnowledgeBase::default();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let entry: KbEntry = serde_json::from_str(line).map_err(|e| KbError::Malformed {
                line: i + 1,
                reason: e.to_string(),
            })?;
            entry
                .validate()
                .map_err(|reason| KbError::Malformed { line: i + 1, reason })?;
            kb.insert(entry);
        }
        if kb.is_empty() {
            return Err(KbError::Empty);
        }
        Ok(kb)
    }

    pub fn from_entries(entries: impl IntoIterator<Item = KbEntry>) -> Self {
        let mut kb = KnowledgeBase::default();
        for e in entries {
            kb.insert(e);
        }
        kb
    }

    /// Inserts a page; a page with an existing headword is merged into it.
    pub fn insert(&mut self, entry: KbEntry) {
        match self.entries.get_mut(&entry.headword) {
            Some(existing) => existing.absorb(entry),
            None => {
                self.entries.insert(entry.headword.clone(), entry);
            }
        }
    }

    /// Serializes back to the dump format, one page per line.
    pub fn to_dump(&self) -> String {
        let mut out = String::new();
        for e in self.entries.values() {
            out.push_str(&serde_json::to_string(e).expect("KbEntry serializes"));
            out.push('\n');
        }
        out
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = &KbEntry> {
        self.entries.values()
    }

    /// Exact lookup, retried with the first letter capitalized.
    pub fn lookup(&self, headword: &str) -> Option<&KbEntry> {
        self.entries.get(headword).or_else(|| {
            let cap = capitalize(headword);
            if cap != headword {
                self.entries.get(&cap)
            } else {
                None
            }
        })
    }

    pub fn contains(&self, headword: &str) -> bool {
        self.lookup(headword).is_some()
    }
}

/// Dependency tags whose tokens count as in-text hypernyms.
pub const HYPERNYM_DEP_TAGS: [&str; 5] = ["ROOT", "oa", "oa2", "app", "cj"];

/// Supplies dependency labels for a definition text, as `(token, tag)` pairs.
pub trait DependencyProvider {
    fn parse(&self, text: &str) -> Vec<(String, String)>;
}

/// Hypernyms mentioned inside the entry's definitions.
///
/// With a dependency provider, tokens tagged with one of
/// [`HYPERNYM_DEP_TAGS`] are candidates; otherwise every capitalized token is.
/// A candidate is kept only if it resolves to a KB page other than the entry
/// itself and is not one of the sense's area titles. Results are canonical
/// headwords, deduplicated in order of first occurrence.
pub fn in_text_hypernyms(
    entry: &KbEntry,
    kb: &KnowledgeBase,
    dep_provider: Option<&dyn DependencyProvider>,
) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for sense in &entry.senses {
        let candidates: Vec<String> = match dep_provider {
            Some(p) => p
                .parse(&sense.definition)
                .into_iter()
                .filter(|(_, tag)| HYPERNYM_DEP_TAGS.contains(&tag.as_str()))
                .map(|(tok, _)| tok)
                .collect(),
            None => tokenize(&sense.definition)
                .filter(|t| t.chars().next().is_some_and(char::is_uppercase))
                .map(str::to_string)
                .collect(),
        };
        for cand in candidates {
            if sense.areas.contains(&cand) {
                continue;
            }
            let Some(found) = kb.lookup(&cand) else { continue };
            if found.headword == entry.headword || out.contains(&found.headword) {
                continue;
            }
            out.push(found.headword.clone());
        }
    }
    out
}
