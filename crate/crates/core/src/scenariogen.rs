//! Seeded samplers for every task, and dataset generation.
//!
//! Item `i` of a dataset draws from its own generator seeded with
//! `rng::derive(cfg.seed, i)`, so datasets are identical whatever the
//! evaluation order or thread count.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::render::{self, parse_route_answer, PlacementStyle, RenderError};
use crate::rng::{derive, item_rng};
use crate::vocab::{sample_words, VocabError, Vocabulary, WordSet};
use crate::world::{
    execute_route, route_between, Container, ContainerState, Coord, Direction, GridMap, HardObjectEpisode, MoveAction,
    Pick, Placement, Room, Route, WorldError,
};

/// Upper bound on rejection-sampling attempts per item.
pub const MAX_ATTEMPTS: usize = 10_000;

#[derive(Debug, Error)]
pub enum GenError {
    #[error(transparent)]
    Vocab(#[from] VocabError),
    #[error(transparent)]
    World(#[from] WorldError),
    #[error(transparent)]
    Render(#[from] RenderError),
    #[error("invalid generation config: {0}")]
    InvalidConfig(String),
    #[error("no map with a unique shortest path{} found in {attempts} attempts over {rooms} rooms", .path_len.map(|l| format!(" of length {l}")).unwrap_or_default())]
    AttemptsExhausted {
        path_len: Option<u32>,
        rooms: Span,
        attempts: usize,
    },
    #[error("oracle disagrees with generator: expected `{expected}`, rendered `{rendered}`")]
    OracleMismatch { expected: String, rendered: String },
    #[error("item {index}: {source}")]
    Item {
        index: usize,
        #[source]
        source: Box<GenError>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    Container,
    NavRoute,
    NavResult,
    HardObject,
}

impl Task {
    pub const ALL: [Task; 4] = [Task::Container, Task::NavRoute, Task::NavResult, Task::HardObject];

    pub fn name(self) -> &'static str {
        match self {
            Task::Container => "container",
            Task::NavRoute => "nav_route",
            Task::NavResult => "nav_result",
            Task::HardObject => "hard_object",
        }
    }

    pub fn uses_objects(self) -> bool {
        matches!(self, Task::Container | Task::HardObject)
    }

    pub fn uses_map(self) -> bool {
        !matches!(self, Task::Container)
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Task {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.replace('-', "_");
        Task::ALL
            .into_iter()
            .find(|t| t.name() == norm)
            .ok_or_else(|| format!("unknown task `{s}` (expected container, nav-route, nav-result or hard-object)"))
    }
}

/// Inclusive integer range, written `[min, max]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "[u32; 2]", into = "[u32; 2]")]
pub struct Span {
    pub min: u32,
    pub max: u32,
}

impl Span {
    pub const fn new(min: u32, max: u32) -> Self {
        Span { min, max }
    }

    pub const fn fixed(v: u32) -> Self {
        Span { min: v, max: v }
    }

    pub fn contains(self, v: u32) -> bool {
        (self.min..=self.max).contains(&v)
    }

    pub fn values(self) -> impl Iterator<Item = u32> {
        self.min..=self.max
    }

    pub fn len(self) -> usize {
        (self.max.saturating_sub(self.min) + 1) as usize
    }

    pub fn is_empty(self) -> bool {
        self.min > self.max
    }

    fn sample<R: Rng + ?Sized>(self, rng: &mut R) -> u32 {
        rng.gen_range(self.min..=self.max)
    }

    fn clamp_min(self, lo: u32) -> Span {
        Span::new(self.min.max(lo), self.max)
    }
}

impl From<[u32; 2]> for Span {
    fn from(v: [u32; 2]) -> Self {
        Span::new(v[0], v[1])
    }
}

impl From<Span> for [u32; 2] {
    fn from(s: Span) -> Self {
        [s.min, s.max]
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.min, self.max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathLenMode {
    /// Draw a map and a pair of rooms; the path length is whatever results.
    Incidental,
    /// Draw the path length first, then reject maps until it is realized.
    UniformLength,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub task: Task,
    pub n_objects: Span,
    pub n_containers: Span,
    pub n_rooms: Span,
    pub path_len_mode: PathLenMode,
    pub path_len: Span,
    pub object_wordset: String,
    pub container_wordset: String,
    pub room_wordset: String,
    pub seed: u64,
    pub count: usize,
    /// Spread items evenly over the `n_objects` x `n_containers` cells
    /// instead of drawing counts at random (container task only).
    #[serde(default)]
    pub stratified: bool,
}

impl GenConfig {
    /// Training distribution of each task.
    pub fn training(task: Task) -> Self {
        GenConfig {
            task,
            n_objects: Span::new(2, 8),
            n_containers: if task == Task::HardObject {
                Span::fixed(2)
            } else {
                Span::new(2, 3)
            },
            n_rooms: Span::new(3, 8),
            path_len_mode: PathLenMode::UniformLength,
            path_len: Span::new(1, 5),
            object_wordset: "train-all".into(),
            container_wordset: "containers".into(),
            room_wordset: "rooms".into(),
            seed: 0,
            count: 1000,
            stratified: false,
        }
    }

    pub fn validate(&self) -> Result<(), GenError> {
        let bad = |m: String| Err(GenError::InvalidConfig(m));
        for (name, span, lo) in [
            ("n_objects", self.n_objects, 1),
            ("n_containers", self.n_containers, 2),
            ("n_rooms", self.n_rooms, 2),
            ("path_len", self.path_len, 1),
        ] {
            if span.is_empty() {
                return bad(format!("{name} range {}..{} is empty", span.min, span.max));
            }
            if span.min < lo {
                return bad(format!("{name} must be at least {lo}"));
            }
        }
        if self.count == 0 {
            return bad("count must be at least 1".into());
        }
        if self.task.uses_map()
            && self.path_len_mode == PathLenMode::UniformLength
            && self.path_len.min >= self.n_rooms.max
        {
            return bad(format!(
                "path length {} needs more than {} rooms",
                self.path_len.min, self.n_rooms.max
            ));
        }
        if self.task == Task::HardObject && self.n_containers.min > self.n_rooms.max {
            return bad("more containers than rooms".into());
        }
        if self.stratified && self.task != Task::Container {
            return bad("stratified sampling is only defined for the container task".into());
        }
        Ok(())
    }

    /// The `(n_objects, n_containers)` cells of a stratified dataset.
    pub fn strata(&self) -> Vec<(u32, u32)> {
        self.n_objects
            .values()
            .flat_map(|o| self.n_containers.values().map(move |c| (o, c)))
            .collect()
    }

    fn for_item(&self, index: usize) -> GenConfig {
        if !self.stratified {
            return self.clone();
        }
        let cells = self.strata();
        let (o, c) = cells[index % cells.len()];
        GenConfig {
            n_objects: Span::fixed(o),
            n_containers: Span::fixed(c),
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "snake_case")]
pub enum World {
    Container {
        state: ContainerState,
        action: MoveAction,
    },
    NavRoute {
        map: GridMap,
        src: String,
        dst: String,
    },
    NavResult {
        map: GridMap,
        start: String,
        route: Route,
    },
    HardObject {
        episode: HardObjectEpisode,
        placement_styles: Vec<PlacementStyle>,
    },
}

impl World {
    pub fn task(&self) -> Task {
        match self {
            World::Container { .. } => Task::Container,
            World::NavRoute { .. } => Task::NavRoute,
            World::NavResult { .. } => Task::NavResult,
            World::HardObject { .. } => Task::HardObject,
        }
    }

    pub fn map(&self) -> Option<&GridMap> {
        match self {
            World::Container { .. } => None,
            World::NavRoute { map, .. } | World::NavResult { map, .. } => Some(map),
            World::HardObject { episode, .. } => Some(&episode.map),
        }
    }

    /// Every slot filler appearing in the world.
    pub fn slot_words(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        let mut state_words = |s: &ContainerState| {
            for c in &s.containers {
                out.push(c.name.clone());
                out.extend(c.objects.iter().cloned());
            }
        };
        match self {
            World::Container { state, .. } => state_words(state),
            World::HardObject { episode, .. } => state_words(&episode.state),
            _ => {}
        }
        if let Some(m) = self.map() {
            out.extend(m.rooms.iter().map(|r| r.name.clone()));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub n_objects: Option<u32>,
    pub n_containers: Option<u32>,
    pub n_rooms: Option<u32>,
    pub path_len: Option<u32>,
    pub object_wordset: Option<String>,
    pub item_seed: u64,
}

/// One generated instance. Field order is the JSONL field order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    pub id: String,
    pub task: Task,
    pub prefix: String,
    pub target: String,
    pub world: World,
    pub meta: Meta,
}

impl Scenario {
    /// Structural value of a grid axis for this scenario.
    pub fn axis_value(&self, axis: crate::harness::Axis) -> Option<u32> {
        use crate::harness::Axis;
        match axis {
            Axis::NObjects => self.meta.n_objects,
            Axis::NContainers => self.meta.n_containers,
            Axis::NRooms => self.meta.n_rooms,
            Axis::PathLen => self.meta.path_len,
        }
    }
}

// ---------------------------------------------------------------------------
// Maps

/// Grows a connected map by attaching each new room to a free cell next to
/// a uniformly chosen placed room.
pub fn gen_map<R: Rng + ?Sized>(n_rooms: usize, rooms: &WordSet, rng: &mut R) -> Result<GridMap, GenError> {
    if n_rooms < 2 {
        return Err(GenError::InvalidConfig(format!(
            "a map needs at least 2 rooms, got {n_rooms}"
        )));
    }
    let names = sample_words(rooms, n_rooms, rng)?;
    let mut map = GridMap {
        rooms: Vec::with_capacity(n_rooms),
    };
    map.rooms.push(Room {
        name: names[0].clone(),
        at: Coord(0, 0),
        anchor: None,
    });
    for name in &names[1..] {
        let (anchor, at) = loop {
            let a = rng.gen_range(0..map.len());
            let base = map.rooms[a].at;
            let free: Vec<Coord> = Direction::ALL
                .iter()
                .map(|d| base.step(*d))
                .filter(|c| map.index_at(*c).is_none())
                .collect();
            if let Some(c) = free.choose(rng) {
                break (a, *c);
            }
        };
        map.rooms.push(Room {
            name: name.clone(),
            at,
            anchor: Some(map.rooms[anchor].name.clone()),
        });
    }
    Ok(map)
}

fn distinct_pair<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (usize, usize) {
    let a = rng.gen_range(0..n);
    let mut b = rng.gen_range(0..n - 1);
    if b >= a {
        b += 1;
    }
    (a, b)
}

/// Ordered room pairs at distance `len` joined by a unique shortest path.
pub fn pairs_at(map: &GridMap, len: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for s in 0..map.len() {
        let d = map.distances(s);
        for (t, dt) in d.iter().enumerate() {
            if *dt == Some(len) && map.shortest_path_count(s, t) == 1 {
                out.push((s, t));
            }
        }
    }
    out
}

/// Rejection-samples maps until one has a room pair at graph distance
/// exactly `path_len` with a unique shortest path, then picks uniformly
/// among such pairs.
pub fn gen_map_with_path_len<R: Rng + ?Sized>(
    path_len: u32,
    n_rooms: Span,
    rooms: &WordSet,
    rng: &mut R,
) -> Result<(GridMap, usize, usize), GenError> {
    let exhausted = || GenError::AttemptsExhausted {
        path_len: Some(path_len),
        rooms: n_rooms,
        attempts: MAX_ATTEMPTS,
    };
    if path_len < 1 {
        return Err(GenError::InvalidConfig("path length must be at least 1".into()));
    }
    let usable = n_rooms.clamp_min(path_len + 1);
    if usable.is_empty() {
        return Err(exhausted());
    }
    for _ in 0..MAX_ATTEMPTS {
        let map = gen_map(usable.sample(rng) as usize, rooms, rng)?;
        let pairs = pairs_at(&map, path_len as usize);
        if let Some(&(s, t)) = pairs.choose(rng) {
            return Ok((map, s, t));
        }
    }
    Err(exhausted())
}

/// Draws a map and a uniformly random room pair, retrying only until the
/// pair has a unique shortest path.
fn gen_map_incidental<R: Rng + ?Sized>(
    n_rooms: Span,
    rooms: &WordSet,
    rng: &mut R,
) -> Result<(GridMap, usize, usize), GenError> {
    for _ in 0..MAX_ATTEMPTS {
        let map = gen_map(n_rooms.sample(rng) as usize, rooms, rng)?;
        let (s, t) = distinct_pair(map.len(), rng);
        if map.shortest_path_count(s, t) == 1 {
            return Ok((map, s, t));
        }
    }
    Err(GenError::AttemptsExhausted {
        path_len: None,
        rooms: n_rooms,
        attempts: MAX_ATTEMPTS,
    })
}

fn map_with_pair<R: Rng + ?Sized>(
    cfg: &GenConfig,
    rooms: Span,
    vocab: &Vocabulary,
    rng: &mut R,
) -> Result<(GridMap, usize, usize), GenError> {
    let names = vocab.wordset(&cfg.room_wordset)?;
    match cfg.path_len_mode {
        PathLenMode::UniformLength => gen_map_with_path_len(cfg.path_len.sample(rng), rooms, names, rng),
        PathLenMode::Incidental => gen_map_incidental(rooms, names, rng),
    }
}

// ---------------------------------------------------------------------------
// Scenarios

fn assemble(id: String, world: World, meta: Meta, expected: String) -> Result<Scenario, GenError> {
    let prefix = render::render_prefix(&world)?;
    let target = render::render_target(&world)?;
    if target != expected {
        return Err(GenError::OracleMismatch {
            expected,
            rendered: target,
        });
    }
    Ok(Scenario {
        id,
        task: world.task(),
        prefix,
        target,
        world,
        meta,
    })
}

fn item_id(task: Task, item_seed: u64) -> String {
    format!("{}-{item_seed:016x}", task.name())
}

/// Random allotment of `objects` into `names`, in introduction order.
fn allot<R: Rng + ?Sized>(names: &[String], objects: &[String], rng: &mut R) -> ContainerState {
    let mut containers: Vec<Container> = names
        .iter()
        .map(|n| Container {
            name: n.clone(),
            objects: Vec::new(),
        })
        .collect();
    for o in objects {
        let k = rng.gen_range(0..containers.len());
        containers[k].objects.push(o.clone());
    }
    for c in &mut containers {
        c.objects.sort();
    }
    ContainerState { containers }
}

/// Picks one object uniformly, then a different destination uniformly.
fn pick_move<R: Rng + ?Sized>(state: &ContainerState, rng: &mut R) -> MoveAction {
    let owners: Vec<(&str, &str)> = state
        .containers
        .iter()
        .flat_map(|c| c.objects.iter().map(move |o| (o.as_str(), c.name.as_str())))
        .collect();
    let (object, src) = owners[rng.gen_range(0..owners.len())];
    let others: Vec<&str> = state.names().filter(|n| *n != src).collect();
    MoveAction {
        object: object.to_string(),
        src: src.to_string(),
        dst: others[rng.gen_range(0..others.len())].to_string(),
    }
}

/// Generator-side expectation for a move, independent of `apply_move`.
fn expected_after_move(state: &ContainerState, action: &MoveAction) -> ContainerState {
    let mut containers = state.containers.clone();
    for c in &mut containers {
        if c.name == action.src {
            let i = c
                .objects
                .iter()
                .position(|o| *o == action.object)
                .expect("picked from this container");
            c.objects.remove(i);
        }
    }
    for c in &mut containers {
        if c.name == action.dst {
            c.objects.push(action.object.clone());
            c.objects.sort();
        }
    }
    let lead = containers
        .iter()
        .position(|c| c.name == action.dst)
        .expect("destination exists");
    let c = containers.remove(lead);
    containers.insert(0, c);
    ContainerState { containers }
}

pub fn gen_container_scenario(cfg: &GenConfig, vocab: &Vocabulary, item_seed: u64) -> Result<Scenario, GenError> {
    let rng = &mut item_rng(item_seed);
    let n_objects = cfg.n_objects.sample(rng);
    let n_containers = cfg.n_containers.sample(rng);
    let names = sample_words(vocab.wordset(&cfg.container_wordset)?, n_containers as usize, rng)?;
    let objects = sample_words(vocab.wordset(&cfg.object_wordset)?, n_objects as usize, rng)?;
    let state = allot(&names, &objects, rng);
    let action = pick_move(&state, rng);
    let expected = render::render_container_state(&expected_after_move(&state, &action));
    let meta = Meta {
        n_objects: Some(n_objects),
        n_containers: Some(n_containers),
        n_rooms: None,
        path_len: None,
        object_wordset: Some(cfg.object_wordset.clone()),
        item_seed,
    };
    assemble(
        item_id(Task::Container, item_seed),
        World::Container { state, action },
        meta,
        expected,
    )
}

pub fn gen_nav_route_scenario(cfg: &GenConfig, vocab: &Vocabulary, item_seed: u64) -> Result<Scenario, GenError> {
    let rng = &mut item_rng(item_seed);
    let (map, s, t) = map_with_pair(cfg, cfg.n_rooms, vocab, rng)?;
    let path_len = map.distances(s)[t].expect("generated maps are connected") as u32;
    let (src, dst) = (map.name(s).to_string(), map.name(t).to_string());
    let route = route_between(&map, &src, &dst)?;
    let expected = render::render_route(&route, render::RouteStyle::Answer)?;
    let reparsed = parse_route_answer(&expected)?;
    if reparsed.len() as u32 != path_len || execute_route(&map, &src, &reparsed)? != dst {
        return Err(GenError::OracleMismatch {
            expected: dst,
            rendered: expected,
        });
    }
    let meta = Meta {
        n_objects: None,
        n_containers: None,
        n_rooms: Some(map.len() as u32),
        path_len: Some(path_len),
        object_wordset: None,
        item_seed,
    };
    assemble(
        item_id(Task::NavRoute, item_seed),
        World::NavRoute { map, src, dst },
        meta,
        expected,
    )
}

pub fn gen_nav_result_scenario(cfg: &GenConfig, vocab: &Vocabulary, item_seed: u64) -> Result<Scenario, GenError> {
    let rng = &mut item_rng(item_seed);
    let names = vocab.wordset(&cfg.room_wordset)?;
    let (map, start, route, end) = match cfg.path_len_mode {
        PathLenMode::UniformLength => {
            let len = cfg.path_len.sample(rng);
            let rooms = cfg.n_rooms.clamp_min(len + 1);
            if rooms.is_empty() {
                return Err(GenError::InvalidConfig(format!(
                    "path length {len} needs more than {} rooms",
                    cfg.n_rooms.max
                )));
            }
            let mut found = None;
            for _ in 0..MAX_ATTEMPTS {
                let map = gen_map(rooms.sample(rng) as usize, names, rng)?;
                let start = rng.gen_range(0..map.len());
                let paths = walks(&map, start, len as usize);
                if let Some((route, end)) = paths.choose(rng).cloned() {
                    found = Some((map, start, route, end));
                    break;
                }
            }
            found.ok_or(GenError::AttemptsExhausted {
                path_len: Some(len),
                rooms,
                attempts: MAX_ATTEMPTS,
            })?
        }
        PathLenMode::Incidental => {
            let map = gen_map(cfg.n_rooms.sample(rng) as usize, names, rng)?;
            let (start, other) = distinct_pair(map.len(), rng);
            let len = map.distances(start)[other].expect("connected");
            let paths = walks(&map, start, len);
            let (route, end) = paths.choose(rng).cloned().expect("a shortest path is simple");
            (map, start, route, end)
        }
    };
    let expected = format!("{}.", map.name(end));
    let meta = Meta {
        n_objects: None,
        n_containers: None,
        n_rooms: Some(map.len() as u32),
        path_len: Some(route.len() as u32),
        object_wordset: None,
        item_seed,
    };
    let start = map.name(start).to_string();
    assemble(
        item_id(Task::NavResult, item_seed),
        World::NavResult { map, start, route },
        meta,
        expected,
    )
}

/// Simple paths with their end rooms, tracked by coordinate.
fn walks(map: &GridMap, start: usize, len: usize) -> Vec<(Route, usize)> {
    map.simple_paths(start, len)
        .into_iter()
        .map(|r| {
            let mut at = map.rooms[start].at;
            for d in r.steps() {
                at = at.step(*d);
            }
            let end = map.index_at(at).expect("paths stay on the map");
            (r, end)
        })
        .collect()
}

pub fn gen_hard_object_scenario(cfg: &GenConfig, vocab: &Vocabulary, item_seed: u64) -> Result<Scenario, GenError> {
    let rng = &mut item_rng(item_seed);
    let n_objects = cfg.n_objects.sample(rng);
    let n_containers = cfg.n_containers.sample(rng);
    let rooms_span = cfg.n_rooms.clamp_min(n_containers);
    let (map, s, t) = map_with_pair(cfg, rooms_span, vocab, rng)?;
    if map.len() < n_containers as usize {
        return Err(GenError::InvalidConfig(format!(
            "{n_containers} containers do not fit in {} rooms",
            map.len()
        )));
    }
    let names = sample_words(vocab.wordset(&cfg.container_wordset)?, n_containers as usize, rng)?;
    let objects = sample_words(vocab.wordset(&cfg.object_wordset)?, n_objects as usize, rng)?;
    let state = allot(&names, &objects, rng);
    let action = pick_move(&state, rng);

    // The source and destination containers sit at the sampled room pair;
    // the others take distinct remaining rooms.
    let mut free: Vec<usize> = (0..map.len()).filter(|i| *i != s && *i != t).collect();
    free.shuffle(rng);
    let mut free = free.into_iter();
    let placements: Vec<Placement> = state
        .names()
        .map(|c| {
            let room = if c == action.src {
                s
            } else if c == action.dst {
                t
            } else {
                free.next().expect("enough rooms for every container")
            };
            Placement {
                container: c.to_string(),
                room: map.name(room).to_string(),
            }
        })
        .collect();
    let placement_styles = (0..placements.len())
        .map(|_| {
            if rng.gen_bool(0.5) {
                PlacementStyle::ContentsFirst
            } else {
                PlacementStyle::RoomFirst
            }
        })
        .collect();
    let route = route_between(&map, map.name(s), map.name(t))?;
    let path_len = route.len() as u32;
    let n_rooms = map.len() as u32;
    let expected =
        render::render_located_state_with(&expected_after_move(&state, &action), &placements, &render::English);
    let episode = HardObjectEpisode {
        map,
        placements,
        state,
        pick: Pick {
            object: action.object,
            container: action.src,
        },
        route,
    };
    let meta = Meta {
        n_objects: Some(n_objects),
        n_containers: Some(n_containers),
        n_rooms: Some(n_rooms),
        path_len: Some(path_len),
        object_wordset: Some(cfg.object_wordset.clone()),
        item_seed,
    };
    assemble(
        item_id(Task::HardObject, item_seed),
        World::HardObject {
            episode,
            placement_styles,
        },
        meta,
        expected,
    )
}

/// One scenario of `cfg.task` from an explicit item seed.
pub fn gen_scenario(cfg: &GenConfig, vocab: &Vocabulary, item_seed: u64) -> Result<Scenario, GenError> {
    match cfg.task {
        Task::Container => gen_container_scenario(cfg, vocab, item_seed),
        Task::NavRoute => gen_nav_route_scenario(cfg, vocab, item_seed),
        Task::NavResult => gen_nav_result_scenario(cfg, vocab, item_seed),
        Task::HardObject => gen_hard_object_scenario(cfg, vocab, item_seed),
    }
}

/// Item `index` of the dataset described by `cfg`.
pub fn gen_item(cfg: &GenConfig, vocab: &Vocabulary, index: usize) -> Result<Scenario, GenError> {
    gen_scenario(&cfg.for_item(index), vocab, derive(cfg.seed, index as u64)).map_err(|e| GenError::Item {
        index,
        source: Box::new(e),
    })
}

/// All `cfg.count` items, in index order. Runs on the current rayon pool
/// when the `parallel` feature is on.
pub fn gen_dataset(cfg: &GenConfig, vocab: &Vocabulary) -> Result<Vec<Scenario>, GenError> {
    cfg.validate()?;
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..cfg.count)
            .into_par_iter()
            .map(|i| gen_item(cfg, vocab, i))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..cfg.count).map(|i| gen_item(cfg, vocab, i)).collect()
    }
}

/// Same as [`gen_dataset`] but strictly sequential.
pub fn gen_dataset_serial(cfg: &GenConfig, vocab: &Vocabulary) -> Result<Vec<Scenario>, GenError> {
    cfg.validate()?;
    (0..cfg.count).map(|i| gen_item(cfg, vocab, i)).collect()
}
