//! Automated entity category induction for German domain-specific texts.
//!
//! The crate turns a small domain corpus, an offline dictionary-style
//! knowledge base and a set of word vectors into a *coding book*: groups of
//! related domain terms, each with a descriptive label taken from the
//! knowledge base's hypernym graph.
//!
//! The pipeline, in order:
//!
//! 1. [`corpus`] extracts digit-free noun terms and selects the
//!    terms-to-annotate (TTA) by head-group frequency.
//! 2. [`compounds`] resolves the head of German compounds against the KB.
//! 3. [`graph`] builds the domain graph, infers the domain areas used to prune
//!    hypernym expansion, grows the graph and computes label distances.
//! 4. [`categorizer`] collects candidate categories, scores them and runs the
//!    three overlap/conflict resolution passes.
//!
//! Alongside the main algorithm live a hierarchical clustering baseline
//! ([`hc`]), a silver-standard evaluator ([`silver`]), the multi-configuration
//! voting strategy ([`ensemble`]) and the in-memory model behind the review
//! service ([`review`]).

pub mod categorizer;
pub mod compounds;
pub mod corpus;
pub mod embeddings;
pub mod ensemble;
pub mod graph;
pub mod hc;
pub mod kb;
pub mod linkage;
pub mod output;
pub mod pipeline;
pub mod review;
pub mod silver;
pub mod unionfind;

mod error;

pub use categorizer::{CategorizerConfig, EntityCategory, Scores};
pub use corpus::{HeadGroup, SelectionConfig, Term, TermTable};
pub use embeddings::{VectorStore, Vectorizer, WordVectors};
pub use error::Error;
pub use graph::{AreaSet, DistanceMatrix, DomainGraph};
pub use kb::{KbEntry, KnowledgeBase, Sense};
pub use output::CategoriesFile;

pub type Result<T, E = Error> = std::result::Result<T, E>;
