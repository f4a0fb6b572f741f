use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{derive, derive2, item_rng};
use crate::scenariogen::{gen_scenario, Scenario};
use crate::vocab::Vocabulary;

use super::presets::dataset_preset;

pub const CURRICULUM_NAMES: &[&str] = &["HardObj", "Nav-Cont-HardObj", "Cont-Nav-HardObj", "ContNav5050-HardObj"];

const CONTAINER: &str = "train-default";
const NAV: &str = "nav-result-train";
const HARD: &str = "hard-object-train";
const STAGE_STEPS: u32 = 1000;
const CURRICULUM_SEED: u64 = 0xC0C0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureEntry {
    pub preset: String,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stage {
    pub steps: u32,
    pub mixture: Vec<MixtureEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurriculumManifest {
    pub name: String,
    pub seed: u64,
    pub batch_size: u32,
    pub learning_rate: f64,
    pub stages: Vec<Stage>,
}

impl CurriculumManifest {
    pub fn total_steps(&self) -> u32 {
        self.stages.iter().map(|s| s.steps).sum()
    }

    pub fn validate(&self) -> Result<()> {
        if self.stages.is_empty() {
            return Err(Error::Invalid(format!("curriculum {} has no stages", self.name)));
        }
        for (i, s) in self.stages.iter().enumerate() {
            if s.steps == 0 {
                return Err(Error::Invalid(format!("stage {i} has zero steps")));
            }
            if s.mixture.is_empty() || s.mixture.iter().any(|m| m.weight.is_nan() || m.weight <= 0.0) {
                return Err(Error::Invalid(format!("stage {i} needs positive mixture weights")));
            }
            let total: f64 = s.mixture.iter().map(|m| m.weight).sum();
            if (total - 1.0).abs() > 1e-9 {
                return Err(Error::Invalid(format!("stage {i} weights sum to {total}, not 1")));
            }
            for m in &s.mixture {
                dataset_preset(&m.preset, None)?;
            }
        }
        Ok(())
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Toml(e.to_string()))
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let m: Self = toml::from_str(text).map_err(|e| Error::Toml(e.to_string()))?;
        m.validate()?;
        Ok(m)
    }
}

fn single(preset: &str, steps: u32) -> Stage {
    Stage {
        steps,
        mixture: vec![MixtureEntry {
            preset: preset.into(),
            weight: 1.0,
        }],
    }
}

/// One of the named curricula; names match case-insensitively.
pub fn build_curriculum(name: &str) -> Result<CurriculumManifest> {
    let canonical = CURRICULUM_NAMES
        .iter()
        .find(|n| n.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownPreset {
            kind: "curriculum",
            name: name.to_string(),
        })?;
    let stages = match *canonical {
        "HardObj" => vec![
            single(HARD, STAGE_STEPS),
            single(HARD, STAGE_STEPS),
            single(HARD, STAGE_STEPS),
        ],
        "Nav-Cont-HardObj" => vec![
            single(NAV, STAGE_STEPS),
            single(CONTAINER, STAGE_STEPS),
            single(HARD, STAGE_STEPS),
        ],
        "Cont-Nav-HardObj" => vec![
            single(CONTAINER, STAGE_STEPS),
            single(NAV, STAGE_STEPS),
            single(HARD, STAGE_STEPS),
        ],
        _ => vec![
            Stage {
                steps: 2 * STAGE_STEPS,
                mixture: vec![
                    MixtureEntry {
                        preset: CONTAINER.into(),
                        weight: 0.5,
                    },
                    MixtureEntry {
                        preset: NAV.into(),
                        weight: 0.5,
                    },
                ],
            },
            single(HARD, STAGE_STEPS),
        ],
    };
    let m = CurriculumManifest {
        name: canonical.to_string(),
        seed: CURRICULUM_SEED,
        batch_size: 1,
        learning_rate: 0.003,
        stages,
    };
    m.validate()?;
    Ok(m)
}

/// Mixture index drawn for each of `draws` steps of stage `stage`.
pub fn stage_draws(m: &CurriculumManifest, stage: usize, draws: usize) -> Result<Vec<usize>> {
    let s = m
        .stages
        .get(stage)
        .ok_or_else(|| Error::Invalid(format!("curriculum {} has no stage {stage}", m.name)))?;
    Ok((0..draws)
        .map(|j| {
            let mut rng = item_rng(derive2(m.seed, stage as u64, j as u64));
            let u: f64 = rng.gen();
            let mut acc = 0.0;
            for (k, e) in s.mixture.iter().enumerate() {
                acc += e.weight;
                if u < acc {
                    return k;
                }
            }
            s.mixture.len() - 1
        })
        .collect())
}

/// Training examples for stage `stage`: step `j` draws a preset by weight,
/// then generates one item from it.
pub fn materialize_stage(
    m: &CurriculumManifest,
    stage: usize,
    draws: usize,
    vocab: &Vocabulary,
) -> Result<Vec<Scenario>> {
    let picks = stage_draws(m, stage, draws)?;
    let s = &m.stages[stage];
    let cfgs = s
        .mixture
        .iter()
        .map(|e| dataset_preset(&e.preset, None))
        .collect::<Result<Vec<_>>>()?;
    picks
        .iter()
        .enumerate()
        .map(|(j, k)| {
            let seed = derive(derive2(m.seed, stage as u64, j as u64), 1);
            Ok(gen_scenario(&cfgs[*k], vocab, seed)?)
        })
        .collect()
}
