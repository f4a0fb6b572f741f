//! Browser bindings for the demo page. Every export takes plain values and
//! returns a JSON string; the `*_json` functions hold the logic and are
//! usable natively.

use std::sync::OnceLock;

use serde::Serialize;
use textworlds::metrics::score_pair;
use textworlds::scenariogen::{gen_dataset, gen_scenario, GenConfig, PathLenMode, Scenario, Span, Task};
use textworlds::Vocabulary;
use wasm_bindgen::prelude::*;

/// Largest sample count the histogram accepts.
pub const MAX_SAMPLES: usize = 20_000;

fn vocab() -> &'static Vocabulary {
    static V: OnceLock<Vocabulary> = OnceLock::new();
    V.get_or_init(Vocabulary::bundled)
}

#[derive(Serialize)]
struct RoomView<'a> {
    name: &'a str,
    x: i32,
    y: i32,
}

#[derive(Serialize)]
struct GenerateView<'a> {
    scenario: &'a Scenario,
    rooms: Vec<RoomView<'a>>,
}

#[derive(Serialize)]
struct Histogram {
    mode: PathLenMode,
    samples: usize,
    /// `counts[k]` is the number of samples with path length `k + 1`.
    counts: Vec<usize>,
}

fn parse_task(task: &str) -> Result<Task, String> {
    task.parse::<Task>().map_err(|e| e.to_string())
}

/// One training-distribution scenario of `task`, plus room coordinates for
/// drawing its map.
pub fn generate_json(task: &str, seed: u64) -> Result<String, String> {
    let cfg = GenConfig::training(parse_task(task)?);
    let s = gen_scenario(&cfg, vocab(), seed).map_err(|e| e.to_string())?;
    let rooms = s
        .world
        .map()
        .map(|m| {
            m.rooms
                .iter()
                .map(|r| RoomView {
                    name: &r.name,
                    x: r.at.0,
                    y: r.at.1,
                })
                .collect()
        })
        .unwrap_or_default();
    serde_json::to_string(&GenerateView { scenario: &s, rooms }).map_err(|e| e.to_string())
}

pub fn score_json(prediction: &str, target: &str) -> String {
    serde_json::to_string(&score_pair(prediction, target)).expect("scores serialize")
}

/// Path lengths of `samples` route questions over 3-8 room maps.
pub fn histogram_json(mode: &str, samples: usize, seed: u64) -> Result<String, String> {
    let mode = match mode {
        "uniform" | "uniform_length" => PathLenMode::UniformLength,
        "incidental" => PathLenMode::Incidental,
        other => return Err(format!("unknown mode `{other}` (expected uniform or incidental)")),
    };
    if !(1..=MAX_SAMPLES).contains(&samples) {
        return Err(format!("samples must lie in 1..={MAX_SAMPLES}"));
    }
    let cfg = GenConfig {
        path_len_mode: mode,
        path_len: Span::new(1, 5),
        count: samples,
        seed,
        ..GenConfig::training(Task::NavRoute)
    };
    let data = gen_dataset(&cfg, vocab()).map_err(|e| e.to_string())?;
    let longest = cfg.n_rooms.max as usize - 1;
    let mut counts = vec![0; longest];
    for s in &data {
        if let Some(l) = s.meta.path_len {
            counts[l as usize - 1] += 1;
        }
    }
    serde_json::to_string(&Histogram { mode, samples, counts }).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn generate(task: &str, seed: u64) -> Result<String, JsValue> {
    generate_json(task, seed).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn score(prediction: &str, target: &str) -> String {
    score_json(prediction, target)
}

#[wasm_bindgen]
pub fn path_length_histogram(mode: &str, samples: usize, seed: u64) -> Result<String, JsValue> {
    histogram_json(mode, samples, seed).map_err(|e| JsValue::from_str(&e))
}
