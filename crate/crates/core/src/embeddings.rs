//! Word vectors in the common textual layout, cosine similarity and a
//! deterministic out-of-vocabulary fallback.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::kb::{capitalize, KnowledgeBase};

#[derive(Debug, Error)]
pub enum EmbeddingError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Default)]
pub struct VectorStore {
    dimension: usize,
    entries: HashMap<String, Vec<f64>>,
}

impl VectorStore {
    pub fn new(dimension: usize) -> Self {
        VectorStore {
            dimension,
            entries: HashMap::new(),
        }
    }

    pub fn load(path: &Path) -> Result<Self, EmbeddingError> {
        let text = fs::read_to_string(path).map_err(|source| EmbeddingError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Parses `count dimension` followed by `word v1 … vd` lines.
    pub fn parse(text: &str) -> Result<Self, EmbeddingError> {
        let malformed = |line: usize, reason: String| EmbeddingError::Malformed { line, reason };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| malformed(1, "missing header".into()))?;
        let header: Vec<usize> = header
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|e| malformed(1, format!("bad header: {e}")))?;
        let [count, dimension] = header[..] else {
            return Err(malformed(1, "header must be \"count dimension\"".into()));
        };
        if dimension == 0 {
            return Err(malformed(1, "dimension must be positive".into()));
        }
        let mut store = VectorStore::new(dimension);
        for (i, line) in lines {
            let mut parts = line.split_whitespace();
            let word = parts.next().expect("non-empty line");
            let values: Vec<f64> = parts
                .map(str::parse)
                .collect::<Result<_, _>>()
                .map_err(|e| malformed(i + 1, format!("bad component: {e}")))?;
            store
                .insert(word, values)
                .map_err(|e| malformed(i + 1, e.to_string()))?;
        }
        if store.len() != count {
            log::warn!("vector header announces {count} words, found {}", store.len());
        }
        Ok(store)
    }

    pub fn insert(&mut self, word: &str, values: Vec<f64>) -> Result<(), EmbeddingError> {
        if values.len() != self.dimension {
            return Err(EmbeddingError::DimensionMismatch(values.len(), self.dimension));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(EmbeddingError::Malformed {
                line: 0,
                reason: format!("non-finite component in vector of {word:?}"),
            });
        }
        self.entries.insert(word.to_string(), values);
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, word: &str) -> Option<&[f64]> {
        self.entries.get(word).map(Vec::as_slice)
    }

    /// Serializes in the textual layout, words sorted.
    pub fn to_text(&self) -> String {
        let mut words: Vec<_> = self.entries.keys().collect();
        words.sort();
        let mut out = format!("{} {}\n", words.len(), self.dimension);
        for w in words {
            out.push_str(w);
            for v in &self.entries[w] {
                out.push(' ');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// How a vector was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VectorSource {
    Exact,
    Segments,
    CharNgrams,
    /// Nothing matched; the vector is all zeros.
    Oov,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WordVector {
    pub values: Vec<f64>,
    pub source: VectorSource,
}

/// Looks up `word`, falling back to (1) the mean over a greedy segmentation
/// into KB headwords, (2) the mean over known character 4-grams, (3) zeros.
pub fn vector(word: &str, store: &VectorStore, kb: &KnowledgeBase) -> WordVector {
    if let Some(v) = store.get(word) {
        return WordVector {
            values: v.to_vec(),
            source: VectorSource::Exact,
        };
    }
    let pieces: Vec<&[f64]> = segment(word, kb)
        .iter()
        .filter_map(|p| store.get(p).or_else(|| store.get(&capitalize(p))))
        .collect();
    if let Some(mean) = mean_of(&pieces, store.dimension()) {
        return WordVector {
            values: mean,
            source: VectorSource::Segments,
        };
    }
    let grams: Vec<&[f64]> = char_ngrams(word, 4).iter().filter_map(|g| store.get(g)).collect();
    if let Some(mean) = mean_of(&grams, store.dimension()) {
        return WordVector {
            values: mean,
            source: VectorSource::CharNgrams,
        };
    }
    WordVector {
        values: vec![0.0; store.dimension()],
        source: VectorSource::Oov,
    }
}

fn mean_of(vectors: &[&[f64]], dim: usize) -> Option<Vec<f64>> {
    if vectors.is_empty() {
        return None;
    }
    let mut sum = vec![0.0; dim];
    for v in vectors {
        for (s, x) in sum.iter_mut().zip(v.iter()) {
            *s += x;
        }
    }
    let n = vectors.len() as f64;
    Some(sum.into_iter().map(|s| s / n).collect())
}

/// Greedy left-to-right segmentation into KB headwords of at least three
/// characters. At each position the longest match is taken; positions with no
/// match are skipped. A match covering the whole word is not a segmentation.
pub fn segment(word: &str, kb: &KnowledgeBase) -> Vec<String> {
    let chars: Vec<char> = word.chars().collect();
    let n = chars.len();
    let mut pieces = Vec::new();
    let mut i = 0;
    while i < n {
        let mut matched = None;
        for j in (i + 3..=n).rev() {
            if i == 0 && j == n {
                continue;
            }
            let piece: String = chars[i..j].iter().collect();
            if let Some(entry) = kb.lookup(&piece) {
                matched = Some((j, entry.headword.clone()));
                break;
            }
        }
        match matched {
            Some((j, head)) => {
                pieces.push(head);
                i = j;
            }
            None => i += 1,
        }
    }
    pieces
}

/// Distinct lowercase character n-grams in order of first occurrence.
pub fn char_ngrams(word: &str, n: usize) -> Vec<String> {
    let chars: Vec<char> = word.to_lowercase().chars().collect();
    let mut out: Vec<String> = Vec::new();
    for w in chars.windows(n) {
        let g: String = w.iter().collect();
        if !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

/// Cosine similarity; zero when either vector has zero norm.
pub fn cosine(a: &[f64], b: &[f64]) -> Result<f64, EmbeddingError> {
    if a.len() != b.len() {
        return Err(EmbeddingError::DimensionMismatch(a.len(), b.len()));
    }
    Ok(cosine_unchecked(a, b))
}

pub(crate) fn cosine_unchecked(a: &[f64], b: &[f64]) -> f64 {
    let mut dot = 0.0;
    let mut na = 0.0;
    let mut nb = 0.0;
    for (x, y) in a.iter().zip(b) {
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    (dot / (na.sqrt() * nb.sqrt())).clamp(-1.0, 1.0)
}

/// Source of vectors for terms and labels.
pub trait WordVectors {
    fn vector_of(&self, word: &str) -> Vec<f64>;

    fn similarity(&self, a: &str, b: &str) -> f64 {
        cosine_unchecked(&self.vector_of(a), &self.vector_of(b))
    }
}

/// Vector store plus KB, applying the OOV fallback chain.
#[derive(Debug, Clone, Copy)]
pub struct Vectorizer<'a> {
    pub store: &'a VectorStore,
    pub kb: &'a KnowledgeBase,
}

impl<'a> Vectorizer<'a> {
    pub fn new(store: &'a VectorStore, kb: &'a KnowledgeBase) -> Self {
        Vectorizer { store, kb }
    }

    pub fn lookup(&self, word: &str) -> WordVector {
        vector(word, self.store, self.kb)
    }
}

impl WordVectors for Vectorizer<'_> {
    fn vector_of(&self, word: &str) -> Vec<f64> {
        self.lookup(word).values
    }
}

/// Owning counterpart of [`Vectorizer`], for long-lived consumers.
#[derive(Debug, Clone)]
pub struct OwnedVectorizer {
    pub store: VectorStore,
    pub kb: KnowledgeBase,
}

impl WordVectors for OwnedVectorizer {
    fn vector_of(&self, word: &str) -> Vec<f64> {
        vector(word, &self.store, &self.kb).values
    }
}

/// Plain map; unknown words get an empty vector, whose cosine with anything is 0.
impl WordVectors for HashMap<String, Vec<f64>> {
    fn vector_of(&self, word: &str) -> Vec<f64> {
        self.get(word).cloned().unwrap_or_default()
    }

    fn similarity(&self, a: &str, b: &str) -> f64 {
        match (self.get(a), self.get(b)) {
            (Some(x), Some(y)) if x.len() == y.len() => cosine_unchecked(x, y),
            _ => 0.0,
        }
    }
}
