//! Exact match, statement-substring credit and sentence BLEU-4.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairScore {
    pub exact: u8,
    pub substring: f64,
    pub bleu: f64,
}

pub fn exact_match(prediction: &str, target: &str) -> u8 {
    u8::from(prediction.trim() == target.trim())
}

/// Statements of `text`: pieces between periods, trimmed, empties dropped.
pub fn statements(text: &str) -> Vec<&str> {
    text.split('.').map(str::trim).filter(|s| !s.is_empty()).collect()
}

/// Fraction of predicted statements found verbatim in `target`.
pub fn substring_score(prediction: &str, target: &str) -> f64 {
    let stmts = statements(prediction);
    if stmts.is_empty() {
        return 0.0;
    }
    let hits = stmts.iter().filter(|s| target.contains(*s)).count();
    hits as f64 / stmts.len() as f64
}

/// Whitespace tokens after detaching `.` and `,`.
pub fn tokenize(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    for word in text.split_whitespace() {
        let mut start = 0;
        for (i, ch) in word.char_indices() {
            if ch == '.' || ch == ',' {
                if start < i {
                    out.push(&word[start..i]);
                }
                out.push(&word[i..i + 1]);
                start = i + 1;
            }
        }
        if start < word.len() {
            out.push(&word[start..]);
        }
    }
    out
}

pub const BLEU_ORDER: usize = 4;

fn ngram_counts<'t>(tokens: &'t [&'t str], n: usize) -> HashMap<&'t [&'t str], usize> {
    let mut m = HashMap::new();
    if tokens.len() >= n {
        for w in tokens.windows(n) {
            *m.entry(w).or_insert(0) += 1;
        }
    }
    m
}

/// Sentence BLEU-4 with uniform weights. Unigram precision is unsmoothed;
/// orders 2 to 4 add one to numerator and denominator.
pub fn bleu(prediction: &str, target: &str) -> f64 {
    let pred = tokenize(prediction);
    let refr = tokenize(target);
    if pred.is_empty() {
        return 0.0;
    }
    let mut log_sum = 0.0;
    for n in 1..=BLEU_ORDER {
        let p = ngram_counts(&pred, n);
        let r = ngram_counts(&refr, n);
        let total: usize = p.values().sum();
        let clipped: usize = p.iter().map(|(g, c)| (*c).min(r.get(g).copied().unwrap_or(0))).sum();
        let (num, den) = if n == 1 {
            (clipped as f64, total as f64)
        } else {
            (clipped as f64 + 1.0, total as f64 + 1.0)
        };
        if num == 0.0 {
            return 0.0;
        }
        log_sum += (num / den).ln();
    }
    let bp = if pred.len() < refr.len() {
        (1.0 - refr.len() as f64 / pred.len() as f64).exp()
    } else {
        1.0
    };
    bp * (log_sum / BLEU_ORDER as f64).exp()
}

pub fn score_pair(prediction: &str, target: &str) -> PairScore {
    let exact = exact_match(prediction, target);
    if exact == 1 {
        return PairScore {
            exact,
            substring: 1.0,
            bleu: 1.0,
        };
    }
    PairScore {
        exact,
        substring: substring_score(prediction, target),
        bleu: bleu(prediction, target),
    }
}
