//! Head resolution for German compound nouns.
//!
//! A deterministic splitter: if the knowledge base has no page for a term,
//! the longest suffix with a page becomes the head. One linking element
//! (Fugenelement) may be dropped at the split point.

use crate::corpus::TermTable;
use crate::kb::KnowledgeBase;

/// Linking elements, longest first so that "nen" wins over "n".
pub const LINKING_ELEMENTS: [&str; 7] = ["nen", "es", "en", "er", "s", "n", "e"];

/// Shortest suffix (in characters) considered as a head candidate.
pub const MIN_HEAD_LEN: usize = 3;

/// Resolves the head of `term`, returning the knowledge base's headword.
///
/// Returns the term itself when it has a page. Multi-word and hyphenated
/// phrases are resolved through their last segment.
pub fn split_head(term: &str, kb: &KnowledgeBase) -> Option<String> {
    let term = term.trim();
    if term.is_empty() {
        return None;
    }
    if let Some(entry) = kb.lookup(term) {
        return Some(entry.headword.clone());
    }
    if let Some(pos) = term.rfind(|c: char| c.is_whitespace() || c == '-') {
        let last = &term[pos + 1..];
        return if last.is_empty() { None } else { split_head(last, kb) };
    }
    let suffix = known_suffix(term, kb)?;
    split_head(&suffix, kb)
}

/// Longest proper suffix of `word` (at least [`MIN_HEAD_LEN`] characters)
/// that the KB knows, optionally after stripping a leading linking element.
fn known_suffix(word: &str, kb: &KnowledgeBase) -> Option<String> {
    let offsets: Vec<usize> = word.char_indices().map(|(i, _)| i).skip(1).collect();
    for start in offsets {
        let suffix = &word[start..];
        if suffix.chars().count() < MIN_HEAD_LEN {
            break;
        }
        if kb.contains(suffix) {
            return Some(suffix.to_string());
        }
        let lower = suffix.to_lowercase();
        for link in LINKING_ELEMENTS {
            if lower.starts_with(link) {
                let rest = &suffix[link.len()..];
                if rest.chars().count() >= MIN_HEAD_LEN && kb.contains(rest) {
                    return Some(rest.to_string());
                }
            }
        }
    }
    None
}

/// Fills `head` and `kb_link` for every term in the table.
pub fn resolve_heads(table: &mut TermTable, kb: &KnowledgeBase) {
    for term in table.iter_mut() {
        term.kb_link = kb.lookup(&term.surface).map(|e| e.headword.clone());
        term.head = split_head(&term.surface, kb);
    }
}
