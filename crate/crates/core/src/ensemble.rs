//! Voting across several configurations of the categorizer, and the rule
//! that derives those configurations from the number of head groups.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::categorizer::{EntityCategory, Scorer, Scores};
use crate::unionfind::DisjointSet;

pub const MIN_RUNS: usize = 2;
pub const MAX_RUNS: usize = 4;
pub const MIN_VOTES: usize = 2;
pub const MIN_SIZE: usize = 5;
/// Offset between the three default TTA counts.
pub const CONFIG_SPREAD: usize = 40;

#[derive(Debug, Error, PartialEq)]
pub enum EnsembleError {
    #[error("voting needs {MIN_RUNS} to {MAX_RUNS} runs, got {0}")]
    Arity(usize),
    #[error("the unique head count must be at least 1")]
    NoHeads,
}

/// Annotated TTA count for `x` unique heads: `round(158 + 0.167·x)`.
pub fn suggested_tta(x: usize) -> Result<usize, EnsembleError> {
    if x == 0 {
        return Err(EnsembleError::NoHeads);
    }
    Ok((158.0 + 0.167 * x as f64).round() as usize)
}

/// `(y − 40, y, y + 40)` with every value at least [`MIN_SIZE`].
pub fn default_configs(x: usize) -> Result<[usize; 3], EnsembleError> {
    let y = suggested_tta(x)?;
    Ok([
        y.saturating_sub(CONFIG_SPREAD).max(MIN_SIZE),
        y.max(MIN_SIZE),
        (y + CONFIG_SPREAD).max(MIN_SIZE),
    ])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VotedCategory {
    pub category: EntityCategory,
    /// Ids of the runs in which at least two of the terms shared a category.
    pub provenance: Vec<String>,
}

type RunRef<'a> = (&'a str, &'a [EntityCategory]);

/// Votes over 2 to 4 runs.
///
/// Two terms are linked when they share a category in at least two runs;
/// connected components of at least five terms become the voted categories.
/// Each is labeled with the label most often attached to its terms across
/// runs, ties going to the higher mean Q of the source categories carrying it,
/// then to the smaller label. Scores are left at zero except `d_avg`, the mean
/// over those source categories; see [`rescore`].
pub fn vote(runs: &[(String, Vec<EntityCategory>)]) -> Result<Vec<VotedCategory>, EnsembleError> {
    if !(MIN_RUNS..=MAX_RUNS).contains(&runs.len()) {
        return Err(EnsembleError::Arity(runs.len()));
    }
    let runs: Vec<RunRef> = runs.iter().map(|(id, c)| (id.as_str(), c.as_slice())).collect();

    let vocab: BTreeSet<&str> = runs
        .iter()
        .flat_map(|(_, cats)| cats.iter().flat_map(|c| c.terms.iter().map(String::as_str)))
        .collect();
    let vocab: Vec<&str> = vocab.into_iter().collect();
    let index: BTreeMap<&str, usize> = vocab.iter().enumerate().map(|(i, t)| (*t, i)).collect();

    let mut votes: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (_, cats) in &runs {
        let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
        for c in cats.iter() {
            let ids: Vec<usize> = c.terms.iter().map(|t| index[t.as_str()]).collect();
            for i in 0..ids.len() {
                for j in i + 1..ids.len() {
                    pairs.insert((ids[i].min(ids[j]), ids[i].max(ids[j])));
                }
            }
        }
        for p in pairs {
            *votes.entry(p).or_default() += 1;
        }
    }

    let mut ds = DisjointSet::new(vocab.len());
    for (&(a, b), &n) in &votes {
        if n >= MIN_VOTES {
            ds.union(a, b);
        }
    }

    Ok(ds
        .components()
        .into_iter()
        .filter(|c| c.len() >= MIN_SIZE)
        .map(|c| {
            let terms: BTreeSet<String> = c.iter().map(|&i| vocab[i].to_string()).collect();
            voted_category(terms, &runs)
        })
        .collect())
}

fn voted_category(terms: BTreeSet<String>, runs: &[RunRef]) -> VotedCategory {
    // label -> (term/run occurrences, distinct source categories)
    let mut tally: BTreeMap<&str, (usize, BTreeSet<(usize, usize)>)> = BTreeMap::new();
    let mut provenance = Vec::new();
    for (r, (id, cats)) in runs.iter().enumerate() {
        let mut contributed = false;
        for (k, c) in cats.iter().enumerate() {
            let shared = c.terms.intersection(&terms).count();
            if shared == 0 {
                continue;
            }
            contributed |= shared >= 2;
            let entry = tally.entry(c.label.as_str()).or_default();
            entry.0 += shared;
            entry.1.insert((r, k));
        }
        if contributed {
            provenance.push(id.to_string());
        }
    }

    let mean = |sources: &BTreeSet<(usize, usize)>, f: &dyn Fn(&EntityCategory) -> f64| {
        sources.iter().map(|&(r, k)| f(&runs[r].1[k])).sum::<f64>() / sources.len() as f64
    };
    let mut best: Option<(&str, usize, f64)> = None;
    for (label, (count, sources)) in &tally {
        let q = mean(sources, &|c| c.scores.q);
        let better = match best {
            None => true,
            Some((_, bc, bq)) => *count > bc || (*count == bc && q > bq),
        };
        if better {
            best = Some((label, *count, q));
        }
    }
    let label = best.map_or("", |(l, _, _)| l).to_string();
    let d_avg = tally.get(label.as_str()).map_or(1.0, |(_, s)| mean(s, &|c| c.scores.d_avg));
    VotedCategory {
        category: EntityCategory {
            label,
            terms,
            scores: Scores {
                d_avg,
                ..Scores::default()
            },
        },
        provenance,
    }
}

/// Fills T, L, O and Q from word vectors, keeping the voted `d_avg`, and
/// sorts by rank.
pub fn rescore(voted: &mut [VotedCategory], scorer: &Scorer) {
    for v in voted.iter_mut() {
        let c = &mut v.category;
        c.scores = scorer.score_with_distance(&c.label, &c.terms, c.scores.d_avg);
    }
    voted.sort_by(|a, b| crate::categorizer::rank(&a.category, &b.category));
}
