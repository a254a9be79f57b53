use thiserror::Error;

use crate::{corpus, embeddings, ensemble, graph, kb, output, review, silver};

/// Crate-level error. Each variant names the module the failure came from.
#[derive(Debug, Error)]
pub enum Error {
    #[error("corpus: {0}")]
    Corpus(#[from] corpus::CorpusError),
    #[error("kb: {0}")]
    Kb(#[from] kb::KbError),
    #[error("embeddings: {0}")]
    Embeddings(#[from] embeddings::EmbeddingError),
    #[error("domain_graph: {0}")]
    Graph(#[from] graph::GraphError),
    #[error("silver_eval: {0}")]
    Silver(#[from] silver::SilverError),
    #[error("ensemble: {0}")]
    Ensemble(#[from] ensemble::EnsembleError),
    #[error("output: {0}")]
    Output(#[from] output::OutputError),
    #[error("review: {0}")]
    Review(#[from] review::ReviewError),
}
