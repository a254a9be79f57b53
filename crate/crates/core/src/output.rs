//! The versioned categories document written by every producer (the
//! categorizer, the clustering baseline, voting and the review service).

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::categorizer::{EntityCategory, Scores};
use crate::ensemble::VotedCategory;
use crate::graph::Exclusion;

pub const CATEGORIES_FORMAT: &str = "anea-categories/1";

#[derive(Debug, Error)]
pub enum OutputError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed categories document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format {found:?}, expected {CATEGORIES_FORMAT:?}")]
    Format { found: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryRecord {
    /// Empty for clustering output.
    pub label: String,
    pub q: f64,
    pub t: f64,
    pub l: f64,
    pub o: f64,
    pub d_avg: f64,
    pub size: usize,
    pub terms: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub provenance: Vec<String>,
}

impl From<&EntityCategory> for CategoryRecord {
    fn from(c: &EntityCategory) -> Self {
        CategoryRecord {
            label: c.label.clone(),
            q: c.scores.q,
            t: c.scores.t,
            l: c.scores.l,
            o: c.scores.o,
            d_avg: c.scores.d_avg,
            size: c.terms.len(),
            terms: c.terms.iter().cloned().collect(),
            provenance: Vec::new(),
        }
    }
}

impl From<&VotedCategory> for CategoryRecord {
    fn from(v: &VotedCategory) -> Self {
        CategoryRecord {
            provenance: v.provenance.clone(),
            ..CategoryRecord::from(&v.category)
        }
    }
}

impl CategoryRecord {
    pub fn to_category(&self) -> EntityCategory {
        EntityCategory {
            label: self.label.clone(),
            terms: self.terms.iter().cloned().collect(),
            scores: Scores {
                t: self.t,
                l: self.l,
                o: self.o,
                d_avg: self.d_avg,
                q: self.q,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Source {
    /// `anea`, `hc`, `vote` or `review`.
    pub approach: String,
    /// Human-readable configuration, e.g. `z=3` or `tta=277`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoriesFile {
    pub format: String,
    pub source: Source,
    pub categories: Vec<CategoryRecord>,
    /// Terms dropped before graph construction.
    #[serde(default)]
    pub exclusions: Vec<Exclusion>,
    /// Terms in the graph that ended up in no category.
    #[serde(default)]
    pub unassigned: Vec<String>,
}

impl CategoriesFile {
    pub fn new(source: Source, categories: Vec<CategoryRecord>) -> Self {
        CategoriesFile {
            format: CATEGORIES_FORMAT.to_string(),
            source,
            categories,
            exclusions: Vec::new(),
            unassigned: Vec::new(),
        }
    }

    pub fn from_categories(source: Source, categories: &[EntityCategory]) -> Self {
        Self::new(source, categories.iter().map(CategoryRecord::from).collect())
    }

    pub fn categories(&self) -> Vec<EntityCategory> {
        self.categories.iter().map(CategoryRecord::to_category).collect()
    }

    pub fn parse(text: &str) -> Result<Self, OutputError> {
        let file: CategoriesFile = serde_json::from_str(text)?;
        if file.format != CATEGORIES_FORMAT {
            return Err(OutputError::Format { found: file.format });
        }
        Ok(file)
    }

    pub fn read(path: &Path) -> Result<Self, OutputError> {
        let text = fs::read_to_string(path).map_err(|source| OutputError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Pretty JSON with a trailing newline. Identical values give identical
    /// bytes.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("categories serialize");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> Result<(), OutputError> {
        fs::write(path, self.to_json()).map_err(|source| OutputError::Io {
            path: path.display().to_string(),
            source,
        })
    }
}
