//! In-memory model behind the review service: a coding book under manual
//! revision, its edit journal and replay.
//!
//! Every mutation is validated and applied to a copy, so a rejected edit
//! leaves the state untouched. Scores of the affected categories are
//! recomputed from word vectors; `d_avg` is carried over from the loaded
//! document because the graph is not available here.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::categorizer::{Scorer, Scores};
use crate::embeddings::WordVectors;
use crate::output::{CategoriesFile, CategoryRecord, Source};
use crate::pipeline::sha256_hex;

pub const EXPORT_FORMAT: &str = "anea-review/1";

#[derive(Debug, Error, PartialEq)]
pub enum ReviewError {
    #[error("unknown category id {0}")]
    UnknownCategory(u32),
    #[error("term {term:?} is not in {place}")]
    UnknownTerm { term: String, place: String },
    #[error("invalid edit: {0}")]
    Invalid(String),
    #[error("replay diverged: expected state {expected}, got {actual}")]
    Diverged { expected: String, actual: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Edit {
    Move { term: String, from: u32, to: u32 },
    Rename { category: u32, label: String },
    Assign { term: String, to: u32 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryView {
    pub id: u32,
    pub label: String,
    pub q: f64,
    pub t: f64,
    pub l: f64,
    pub o: f64,
    pub d_avg: f64,
    pub size: usize,
    pub terms: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct ReviewCategory {
    label: String,
    terms: BTreeSet<String>,
    scores: Scores,
}

/// The revisable state. Serialization is canonical (ordered maps and sets),
/// which is what [`ReviewState::hash`] relies on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReviewState {
    categories: BTreeMap<u32, ReviewCategory>,
    unassigned: BTreeSet<String>,
}

impl ReviewState {
    /// Ids are the 1-based positions in the document. The tray holds the
    /// document's unassigned and excluded terms.
    pub fn from_file(file: &CategoriesFile) -> Self {
        let categories = file
            .categories
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let c = c.to_category();
                (
                    i as u32 + 1,
                    ReviewCategory {
                        label: c.label,
                        terms: c.terms,
                        scores: c.scores,
                    },
                )
            })
            .collect();
        let unassigned = file
            .unassigned
            .iter()
            .cloned()
            .chain(file.exclusions.iter().map(|e| e.term.clone()))
            .collect();
        ReviewState {
            categories,
            unassigned,
        }
    }

    pub fn hash(&self) -> String {
        sha256_hex(serde_json::to_string(self).expect("state serializes").as_bytes())
    }

    pub fn category(&self, id: u32) -> Result<CategoryView, ReviewError> {
        self.categories
            .get(&id)
            .map(|c| view(id, c))
            .ok_or(ReviewError::UnknownCategory(id))
    }

    pub fn categories(&self) -> Vec<CategoryView> {
        self.categories.iter().map(|(&id, c)| view(id, c)).collect()
    }

    pub fn unassigned(&self) -> Vec<String> {
        self.unassigned.iter().cloned().collect()
    }

    pub fn to_file(&self, source: Source) -> CategoriesFile {
        let mut file = CategoriesFile::new(
            source,
            self.categories
                .values()
                .map(|c| CategoryRecord {
                    label: c.label.clone(),
                    q: c.scores.q,
                    t: c.scores.t,
                    l: c.scores.l,
                    o: c.scores.o,
                    d_avg: c.scores.d_avg,
                    size: c.terms.len(),
                    terms: c.terms.iter().cloned().collect(),
                    provenance: Vec::new(),
                })
                .collect(),
        );
        file.unassigned = self.unassigned();
        file
    }

    /// Applies `edit`, returning the ids of the categories whose scores changed.
    fn apply(&mut self, edit: &Edit, vectors: &dyn WordVectors) -> Result<Vec<u32>, ReviewError> {
        let mut next = self.clone();
        let affected = match edit {
            Edit::Move { term, from, to } => {
                if from == to {
                    return Err(ReviewError::Invalid("source and target are the same category".into()));
                }
                next.get(*to)?;
                let source = next.get_mut(*from)?;
                if !source.terms.remove(term) {
                    return Err(ReviewError::UnknownTerm {
                        term: term.clone(),
                        place: format!("category {from}"),
                    });
                }
                next.get_mut(*to)?.terms.insert(term.clone());
                vec![*from, *to]
            }
            Edit::Rename { category, label } => {
                let label = label.trim();
                if label.is_empty() {
                    return Err(ReviewError::Invalid("empty label".into()));
                }
                next.get_mut(*category)?.label = label.to_string();
                vec![*category]
            }
            Edit::Assign { term, to } => {
                next.get(*to)?;
                if !next.unassigned.remove(term) {
                    return Err(ReviewError::UnknownTerm {
                        term: term.clone(),
                        place: "the unassigned terms".into(),
                    });
                }
                next.get_mut(*to)?.terms.insert(term.clone());
                vec![*to]
            }
        };
        let scorer = Scorer::new(vectors, None);
        for id in &affected {
            let c = next.categories.get_mut(id).expect("validated above");
            c.scores = scorer.score_with_distance(&c.label, &c.terms, c.scores.d_avg);
        }
        *self = next;
        Ok(affected)
    }

    fn get(&self, id: u32) -> Result<&ReviewCategory, ReviewError> {
        self.categories.get(&id).ok_or(ReviewError::UnknownCategory(id))
    }

    fn get_mut(&mut self, id: u32) -> Result<&mut ReviewCategory, ReviewError> {
        self.categories.get_mut(&id).ok_or(ReviewError::UnknownCategory(id))
    }
}

fn view(id: u32, c: &ReviewCategory) -> CategoryView {
    CategoryView {
        id,
        label: c.label.clone(),
        q: c.scores.q,
        t: c.scores.t,
        l: c.scores.l,
        o: c.scores.o,
        d_avg: c.scores.d_avg,
        size: c.terms.len(),
        terms: c.terms.iter().cloned().collect(),
    }
}

/// Result of a successful mutation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mutation {
    pub edit: Edit,
    pub affected: Vec<CategoryView>,
    pub state_hash: String,
}

/// Everything needed to rebuild a session: the loaded document and the
/// journal, plus the hash the replay must reach.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReviewExport {
    pub format: String,
    pub initial: CategoriesFile,
    pub edits: Vec<Edit>,
    pub state_hash: String,
    pub current: CategoriesFile,
}

pub struct ReviewSession {
    initial: CategoriesFile,
    state: ReviewState,
    journal: Vec<Edit>,
    vectors: Arc<dyn WordVectors + Send + Sync>,
}

impl ReviewSession {
    pub fn new(initial: CategoriesFile, vectors: Arc<dyn WordVectors + Send + Sync>) -> Self {
        ReviewSession {
            state: ReviewState::from_file(&initial),
            initial,
            journal: Vec::new(),
            vectors,
        }
    }

    pub fn state(&self) -> &ReviewState {
        &self.state
    }

    pub fn journal(&self) -> &[Edit] {
        &self.journal
    }

    pub fn state_hash(&self) -> String {
        self.state.hash()
    }

    pub fn apply(&mut self, edit: Edit) -> Result<Mutation, ReviewError> {
        let affected = self.state.apply(&edit, self.vectors.as_ref())?;
        self.journal.push(edit.clone());
        Ok(Mutation {
            edit,
            affected: affected
                .into_iter()
                .map(|id| self.state.category(id).expect("affected category exists"))
                .collect(),
            state_hash: self.state.hash(),
        })
    }

    pub fn export(&self) -> ReviewExport {
        ReviewExport {
            format: EXPORT_FORMAT.to_string(),
            initial: self.initial.clone(),
            edits: self.journal.clone(),
            state_hash: self.state_hash(),
            current: self.state.to_file(Source {
                approach: "review".into(),
                config: self.initial.source.config.clone(),
            }),
        }
    }
}

/// Rebuilds a session from an export and checks it lands on the recorded hash.
pub fn replay(export: &ReviewExport, vectors: Arc<dyn WordVectors + Send + Sync>) -> Result<ReviewSession, ReviewError> {
    let mut session = ReviewSession::new(export.initial.clone(), vectors);
    for edit in &export.edits {
        session.apply(edit.clone())?;
    }
    let actual = session.state_hash();
    if actual != export.state_hash {
        return Err(ReviewError::Diverged {
            expected: export.state_hash.clone(),
            actual,
        });
    }
    Ok(session)
}
