//! Dataset and prediction files, batch scoring, grid evaluation,
//! curriculum manifests and built-in baselines.

mod baselines;
mod curriculum;
mod grid;
mod io;
mod presets;
mod score;

pub use baselines::{
    copy_baseline, gibberish_oracle_baseline, gibberish_variant, invert_gibberish_variant, oracle_baseline,
    oracle_prediction,
};
pub use curriculum::{
    build_curriculum, materialize_stage, stage_draws, CurriculumManifest, MixtureEntry, Stage, CURRICULUM_NAMES,
};
pub use grid::{
    grid_dataset, grid_evaluate, grid_preset, Axis, CellData, CellStatus, GridCell, GridReport, GridSpec, Predictor,
    GRID_PRESETS,
};
pub use io::{
    config_to_toml, digest, load_config, parse_jsonl, read_dataset, read_predictions, read_text, to_jsonl, write_text,
    DatasetManifest, StratumCount, SCHEMA_VERSION,
};
pub use presets::{dataset_preset, DATASET_PRESETS};
pub use score::{score_predictions, score_records, Aggregate, ExampleScore, PredictionRecord, ScoreReport};
