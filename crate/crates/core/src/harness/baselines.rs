use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::render::{apply_gibberish, invert_gibberish, render_target, GibberishMap};
use crate::scenariogen::Scenario;

use super::score::PredictionRecord;

/// The oracle's answer for one scenario, recomputed from its world.
pub fn oracle_prediction(s: &Scenario) -> Result<String> {
    Ok(render_target(&s.world)?)
}

pub fn oracle_baseline(scenarios: &[Scenario]) -> Result<Vec<PredictionRecord>> {
    scenarios
        .iter()
        .map(|s| {
            Ok(PredictionRecord {
                id: s.id.clone(),
                prediction: oracle_prediction(s)?,
            })
        })
        .collect()
}

pub fn copy_baseline(scenarios: &[Scenario]) -> Vec<PredictionRecord> {
    scenarios
        .iter()
        .map(|s| PredictionRecord {
            id: s.id.clone(),
            prediction: s.prefix.clone(),
        })
        .collect()
}

fn slot_tokens(s: &Scenario) -> HashSet<String> {
    s.world
        .slot_words()
        .iter()
        .flat_map(|w| w.split(' ').map(str::to_string).collect::<Vec<_>>())
        .collect()
}

/// Rewrites prefix and target through `map`; worlds and meta are kept.
/// Fails if a rewritten text would not invert to its original.
pub fn gibberish_variant(scenarios: &[Scenario], map: &GibberishMap) -> Result<Vec<Scenario>> {
    scenarios
        .iter()
        .map(|s| {
            let slots = slot_tokens(s);
            let prefix = apply_gibberish(&s.prefix, map, &slots)?;
            let target = apply_gibberish(&s.target, map, &slots)?;
            if invert_gibberish(&prefix, map) != s.prefix || invert_gibberish(&target, map) != s.target {
                return Err(Error::Invalid(format!(
                    "scenario {} does not survive a gibberish round trip",
                    s.id
                )));
            }
            Ok(Scenario {
                prefix,
                target,
                ..s.clone()
            })
        })
        .collect()
}

pub fn invert_gibberish_variant(scenarios: &[Scenario], map: &GibberishMap) -> Vec<Scenario> {
    scenarios
        .iter()
        .map(|s| Scenario {
            prefix: invert_gibberish(&s.prefix, map),
            target: invert_gibberish(&s.target, map),
            ..s.clone()
        })
        .collect()
}

/// Oracle answers passed through the same gibberish map as the dataset.
pub fn gibberish_oracle_baseline(scenarios: &[Scenario], map: &GibberishMap) -> Result<Vec<PredictionRecord>> {
    scenarios
        .iter()
        .map(|s| {
            Ok(PredictionRecord {
                id: s.id.clone(),
                prediction: apply_gibberish(&oracle_prediction(s)?, map, &slot_tokens(s))?,
            })
        })
        .collect()
}
