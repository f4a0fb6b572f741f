use crate::error::{Error, Result};
use crate::scenariogen::{GenConfig, Span, Task};

/// Every named dataset preset. `table2-*` and `fig4-*` entries name the
/// object word set used for training; `table2-eval-*` the one used for
/// testing.
pub const DATASET_PRESETS: &[&str] = &[
    "train-default",
    "interp",
    "sem-extrap",
    "sys-extrap",
    "semsys-extrap",
    "nav-route-train",
    "nav-result-train",
    "hard-object-train",
    "hardobj-5k",
    "table2-all",
    "table2-2k-common",
    "table2-2k-concrete",
    "table2-2k-random",
    "table2-eval-train-all",
    "table2-eval-train-common",
    "table2-eval-train-concrete",
    "table2-eval-val-all",
    "table2-eval-val-common",
    "table2-eval-val-concrete",
    "table2-eval-verbs",
    "table2-eval-to-verbs",
    "table2-eval-random-strings",
    "fig4-sensible-20",
    "fig4-concrete-200",
];

const TRAIN_SEED: u64 = 1;
const EVAL_SEED: u64 = 2;
const HELD_OUT_SEED: u64 = 3;
const EVAL_COUNT: usize = 7200;

/// Resolves a preset. `task` overrides the preset's own task where the
/// preset allows it; stratification applies to the container task only.
pub fn dataset_preset(name: &str, task: Option<Task>) -> Result<GenConfig> {
    let fixed = |t: Task| -> Result<Task> {
        match task {
            Some(other) if other != t => Err(Error::Invalid(format!("preset {name} is for task {t}, not {other}"))),
            _ => Ok(t),
        }
    };
    let free = task.unwrap_or(Task::Container);
    let eval = |objects: Span, containers: Span, wordset: &str| {
        let mut c = GenConfig::training(free);
        if free != Task::HardObject {
            c.n_containers = containers;
        }
        c.n_objects = objects;
        c.object_wordset = wordset.into();
        c.count = EVAL_COUNT;
        c.seed = EVAL_SEED;
        c.stratified = free == Task::Container;
        c
    };
    let with_words = |wordset: &str, seed: u64| {
        let mut c = GenConfig::training(free);
        c.object_wordset = wordset.into();
        c.seed = seed;
        c
    };
    let cfg = match name {
        "train-default" => {
            let mut c = GenConfig::training(free);
            c.seed = TRAIN_SEED;
            c
        }
        "interp" => eval(Span::new(2, 8), Span::new(2, 3), "train-all"),
        "sem-extrap" => eval(Span::new(2, 8), Span::new(2, 3), "val-all"),
        "sys-extrap" => eval(Span::new(10, 19), Span::new(4, 5), "train-all"),
        "semsys-extrap" => eval(Span::new(10, 19), Span::new(4, 5), "val-all"),
        "nav-route-train" | "nav-result-train" | "hard-object-train" => {
            let t = match name {
                "nav-route-train" => Task::NavRoute,
                "nav-result-train" => Task::NavResult,
                _ => Task::HardObject,
            };
            let mut c = GenConfig::training(fixed(t)?);
            c.seed = TRAIN_SEED;
            c
        }
        "hardobj-5k" => {
            let mut c = GenConfig::training(fixed(Task::HardObject)?);
            c.count = 5000;
            c.seed = HELD_OUT_SEED;
            c
        }
        "table2-all" => with_words("train-all", TRAIN_SEED),
        "table2-2k-common" => with_words("train-common", TRAIN_SEED),
        "table2-2k-concrete" => with_words("train-concrete", TRAIN_SEED),
        "table2-2k-random" => with_words("train-random", TRAIN_SEED),
        "fig4-sensible-20" => with_words("sensible-20", TRAIN_SEED),
        "fig4-concrete-200" => with_words("concrete-200", TRAIN_SEED),
        _ => match name.strip_prefix("table2-eval-") {
            Some(ws) if DATASET_PRESETS.contains(&name) => with_words(ws, EVAL_SEED),
            _ => {
                return Err(Error::UnknownPreset {
                    kind: "dataset",
                    name: name.to_string(),
                })
            }
        },
    };
    cfg.validate()?;
    Ok(cfg)
}
