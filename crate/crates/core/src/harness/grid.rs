use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::derive2;
use crate::scenariogen::{gen_dataset, GenConfig, GenError, PathLenMode, Scenario, Span, Task};
use crate::vocab::Vocabulary;

use super::presets::dataset_preset;
use super::score::{pair_up, score_pairs, Aggregate, ExampleScore, PredictionRecord, ScoreReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    NObjects,
    NContainers,
    NRooms,
    PathLen,
}

impl Axis {
    pub const ALL: [Axis; 4] = [Axis::NObjects, Axis::NContainers, Axis::NRooms, Axis::PathLen];

    pub fn name(self) -> &'static str {
        match self {
            Axis::NObjects => "n_objects",
            Axis::NContainers => "n_containers",
            Axis::NRooms => "n_rooms",
            Axis::PathLen => "path_len",
        }
    }

    pub fn applies_to(self, task: Task) -> bool {
        match self {
            Axis::NObjects | Axis::NContainers => task.uses_objects(),
            Axis::NRooms | Axis::PathLen => task.uses_map(),
        }
    }

    fn fix(self, cfg: &mut GenConfig, v: u32) {
        let s = Span::fixed(v);
        match self {
            Axis::NObjects => cfg.n_objects = s,
            Axis::NContainers => cfg.n_containers = s,
            Axis::NRooms => cfg.n_rooms = s,
            Axis::PathLen => {
                cfg.path_len = s;
                cfg.path_len_mode = PathLenMode::UniformLength;
            }
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.replace('-', "_");
        Axis::ALL
            .into_iter()
            .find(|a| a.name() == norm)
            .ok_or_else(|| format!("unknown axis `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub row: Axis,
    pub col: Axis,
    pub rows: Span,
    pub cols: Span,
    pub instances: usize,
}

impl GridSpec {
    pub fn validate(&self, task: Task) -> Result<()> {
        let bad = |m: String| Err(Error::Invalid(m));
        if self.row == self.col {
            return bad(format!("grid axes must differ, both are {}", self.row));
        }
        if self.rows.is_empty() || self.cols.is_empty() {
            return bad("grid ranges must be nonempty".into());
        }
        if self.instances == 0 {
            return bad("grid needs at least one instance per cell".into());
        }
        for a in [self.row, self.col] {
            if !a.applies_to(task) {
                return bad(format!("axis {a} does not apply to task {task}"));
            }
        }
        Ok(())
    }

    pub fn cells(&self) -> Vec<(u32, u32)> {
        self.rows
            .values()
            .flat_map(|r| self.cols.values().map(move |c| (r, c)))
            .collect()
    }

    pub fn cell_config(&self, base: &GenConfig, r: u32, c: u32) -> GenConfig {
        let mut cfg = base.clone();
        self.row.fix(&mut cfg, r);
        self.col.fix(&mut cfg, c);
        cfg.seed = derive2(base.seed, u64::from(r), u64::from(c));
        cfg.count = self.instances;
        cfg.stratified = false;
        cfg
    }
}

pub const GRID_PRESETS: &[&str] = &["fig2", "nav-fig3"];

/// Named grid with its base config for `task`.
pub fn grid_preset(name: &str, task: Task) -> Result<(GridSpec, GenConfig)> {
    let spec = match name {
        "fig2" => GridSpec {
            row: Axis::NObjects,
            col: Axis::NContainers,
            rows: Span::new(2, 19),
            cols: Span::new(2, 5),
            instances: 100,
        },
        "nav-fig3" => GridSpec {
            row: Axis::NRooms,
            col: Axis::PathLen,
            rows: Span::new(3, 12),
            cols: Span::new(1, 8),
            instances: 100,
        },
        _ => {
            return Err(Error::UnknownPreset {
                kind: "grid",
                name: name.to_string(),
            })
        }
    };
    let mut cfg = dataset_preset("train-default", Some(task))?;
    cfg.seed = 0x6121D;
    spec.validate(task)?;
    Ok((spec, cfg))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CellStatus {
    Feasible,
    Infeasible { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridCell {
    pub row: u32,
    pub col: u32,
    #[serde(flatten)]
    pub status: CellStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aggregate: Option<Aggregate>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridReport {
    pub row_axis: Axis,
    pub col_axis: Axis,
    pub rows: Vec<u32>,
    pub cols: Vec<u32>,
    pub instances: usize,
    /// Row-major.
    pub cells: Vec<GridCell>,
}

impl GridReport {
    pub fn cell(&self, row: u32, col: u32) -> Option<&GridCell> {
        self.cells.iter().find(|c| c.row == row && c.col == col)
    }

    /// Header `row_axis\col_axis,c1,c2,...`, then one line per row value.
    /// Infeasible cells read `NA`.
    pub fn to_csv(&self, metric: &str) -> Result<String> {
        if Aggregate::of([]).metric(metric).is_none() {
            return Err(Error::Invalid(format!(
                "unknown metric `{metric}` (expected exact, substring or bleu)"
            )));
        }
        let mut out = format!("{}\\{}", self.row_axis, self.col_axis);
        for c in &self.cols {
            out.push_str(&format!(",{c}"));
        }
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.to_string());
            for c in &self.cols {
                let v = self
                    .cell(*r, *c)
                    .and_then(|cell| cell.aggregate)
                    .and_then(|a| a.metric(metric));
                match v {
                    Some(x) => out.push_str(&format!(",{x}")),
                    None => out.push_str(",NA"),
                }
            }
            out.push('\n');
        }
        Ok(out)
    }
}

pub enum Predictor {
    Oracle,
    /// Echoes the prefix.
    Copy,
    External(Vec<PredictionRecord>),
}

pub struct CellData {
    pub row: u32,
    pub col: u32,
    pub scenarios: std::result::Result<Vec<Scenario>, String>,
}

fn structural_infeasibility(cfg: &GenConfig) -> Option<String> {
    if cfg.task.uses_map() && cfg.path_len_mode == PathLenMode::UniformLength && cfg.path_len.min >= cfg.n_rooms.max {
        return Some(format!(
            "path length {} needs at least {} rooms",
            cfg.path_len.min,
            cfg.path_len.min + 1
        ));
    }
    if cfg.task == Task::HardObject && cfg.n_containers.min > cfg.n_rooms.max {
        return Some(format!(
            "{} containers do not fit in {} rooms",
            cfg.n_containers.min, cfg.n_rooms.max
        ));
    }
    None
}

/// Scenarios of every grid cell, row-major. Cells that cannot be realized
/// carry the reason instead.
pub fn grid_dataset(spec: &GridSpec, cfg: &GenConfig, vocab: &Vocabulary) -> Result<Vec<CellData>> {
    spec.validate(cfg.task)?;
    let mut out = Vec::new();
    for (r, c) in spec.cells() {
        let cell_cfg = spec.cell_config(cfg, r, c);
        let scenarios = match structural_infeasibility(&cell_cfg) {
            Some(reason) => Err(reason),
            None => match gen_dataset(&cell_cfg, vocab) {
                Ok(s) => Ok(s),
                Err(GenError::Item { source, .. }) if matches!(*source, GenError::AttemptsExhausted { .. }) => {
                    Err(source.to_string())
                }
                Err(e) => return Err(e.into()),
            },
        };
        out.push(CellData {
            row: r,
            col: c,
            scenarios,
        });
    }
    Ok(out)
}

pub fn grid_evaluate(
    spec: &GridSpec,
    cfg: &GenConfig,
    vocab: &Vocabulary,
    predictor: &Predictor,
) -> Result<ScoreReport> {
    let data = grid_dataset(spec, cfg, vocab)?;
    let all: Vec<Scenario> = data
        .iter()
        .filter_map(|d| d.scenarios.as_ref().ok())
        .flatten()
        .cloned()
        .collect();
    let preds: Vec<PredictionRecord> = match predictor {
        Predictor::Oracle => all
            .iter()
            .map(|s| PredictionRecord {
                id: s.id.clone(),
                prediction: s.target.clone(),
            })
            .collect(),
        Predictor::Copy => all
            .iter()
            .map(|s| PredictionRecord {
                id: s.id.clone(),
                prediction: s.prefix.clone(),
            })
            .collect(),
        Predictor::External(p) => p.clone(),
    };
    let pairs = pair_up(&all, &preds)?;
    let examples: Vec<ExampleScore> = score_pairs(&pairs);

    let mut cells = Vec::with_capacity(data.len());
    let mut next = 0;
    for d in &data {
        let cell = match &d.scenarios {
            Ok(s) => {
                let slice = &examples[next..next + s.len()];
                next += s.len();
                GridCell {
                    row: d.row,
                    col: d.col,
                    status: CellStatus::Feasible,
                    aggregate: Some(Aggregate::of(slice.iter().map(|e| &e.score))),
                }
            }
            Err(reason) => GridCell {
                row: d.row,
                col: d.col,
                status: CellStatus::Infeasible { reason: reason.clone() },
                aggregate: None,
            },
        };
        cells.push(cell);
    }
    Ok(ScoreReport {
        aggregate: Aggregate::of(examples.iter().map(|e| &e.score)),
        examples,
        grid: Some(GridReport {
            row_axis: spec.row,
            col_axis: spec.col,
            rows: spec.rows.values().collect(),
            cols: spec.cols.values().collect(),
            instances: spec.instances,
            cells,
        }),
    })
}
