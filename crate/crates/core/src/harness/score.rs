use std::collections::{HashMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{score_pair, PairScore};
use crate::scenariogen::Scenario;

use super::grid::GridReport;
use super::io::{read_dataset, read_predictions};

const MAX_OFFENDERS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictionRecord {
    pub id: String,
    pub prediction: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExampleScore {
    pub id: String,
    #[serde(flatten)]
    pub score: PairScore,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub count: usize,
    pub exact: f64,
    pub substring: f64,
    pub bleu: f64,
}

impl Aggregate {
    pub fn of<'a>(scores: impl IntoIterator<Item = &'a PairScore>) -> Self {
        let (mut n, mut e, mut s, mut b) = (0usize, 0.0, 0.0, 0.0);
        for p in scores {
            n += 1;
            e += f64::from(p.exact);
            s += p.substring;
            b += p.bleu;
        }
        if n == 0 {
            return Aggregate {
                count: 0,
                exact: 0.0,
                substring: 0.0,
                bleu: 0.0,
            };
        }
        let d = n as f64;
        Aggregate {
            count: n,
            exact: e / d,
            substring: s / d,
            bleu: b / d,
        }
    }

    pub fn metric(&self, name: &str) -> Option<f64> {
        match name {
            "exact" => Some(self.exact),
            "substring" => Some(self.substring),
            "bleu" => Some(self.bleu),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreReport {
    pub aggregate: Aggregate,
    pub examples: Vec<ExampleScore>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridReport>,
}

impl ScoreReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// Pairs predictions with scenarios by id. Every scenario needs exactly one
/// prediction and every prediction must name a scenario.
pub(crate) fn pair_up<'a>(
    scenarios: &'a [Scenario],
    predictions: &'a [PredictionRecord],
) -> Result<Vec<(&'a Scenario, &'a str)>> {
    let mut by_id: HashMap<&str, &str> = HashMap::with_capacity(predictions.len());
    let mut duplicate = Vec::new();
    for p in predictions {
        if by_id.insert(&p.id, &p.prediction).is_some() {
            duplicate.push(p.id.clone());
        }
    }
    let known: HashSet<&str> = scenarios.iter().map(|s| s.id.as_str()).collect();
    let missing: Vec<String> = scenarios
        .iter()
        .filter(|s| !by_id.contains_key(s.id.as_str()))
        .map(|s| s.id.clone())
        .collect();
    let surplus: Vec<String> = predictions
        .iter()
        .filter(|p| !known.contains(p.id.as_str()))
        .map(|p| p.id.clone())
        .collect();
    if !(missing.is_empty() && surplus.is_empty() && duplicate.is_empty()) {
        let offenders = missing
            .iter()
            .map(|id| format!("missing {id}"))
            .chain(surplus.iter().map(|id| format!("surplus {id}")))
            .chain(duplicate.iter().map(|id| format!("duplicate {id}")))
            .take(MAX_OFFENDERS)
            .collect();
        return Err(Error::IdMismatch {
            missing: missing.len(),
            surplus: surplus.len(),
            duplicate: duplicate.len(),
            offenders,
        });
    }
    Ok(scenarios.iter().map(|s| (s, by_id[s.id.as_str()])).collect())
}

pub(crate) fn score_pairs(pairs: &[(&Scenario, &str)]) -> Vec<ExampleScore> {
    let one = |(s, p): &(&Scenario, &str)| ExampleScore {
        id: s.id.clone(),
        score: score_pair(p, &s.target),
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        pairs.par_iter().map(one).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        pairs.iter().map(one).collect()
    }
}

/// Scores in dataset order; ids are validated before any scoring.
pub fn score_records(scenarios: &[Scenario], predictions: &[PredictionRecord]) -> Result<ScoreReport> {
    let pairs = pair_up(scenarios, predictions)?;
    let examples = score_pairs(&pairs);
    Ok(ScoreReport {
        aggregate: Aggregate::of(examples.iter().map(|e| &e.score)),
        examples,
        grid: None,
    })
}

pub fn score_predictions(dataset: impl AsRef<Path>, predictions: impl AsRef<Path>) -> Result<ScoreReport> {
    let scenarios = read_dataset(dataset)?;
    let preds = read_predictions(predictions)?;
    score_records(&scenarios, &preds)
}
