//! Structured worlds and their exact oracles.
//!
//! Coordinates follow compass intuition: `x` grows to the east and `y` grows
//! to the north. Two rooms are connected exactly when their lattice cells
//! share an edge.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WorldError {
    #[error("unknown container `{0}`")]
    UnknownContainer(String),
    #[error("duplicate container `{0}`")]
    DuplicateContainer(String),
    #[error("`{object}` is not in the {container}")]
    ObjectAbsent { object: String, container: String },
    #[error("unknown room `{0}`")]
    UnknownRoom(String),
    #[error("source and destination are both `{0}`")]
    SameRoom(String),
    #[error("step {step} ({direction}) leaves the map from `{from}`")]
    OffMap {
        step: usize,
        direction: Direction,
        from: String,
    },
    #[error("no route from `{0}` to `{1}`")]
    Unreachable(String, String),
    #[error("no container is placed in the {0}")]
    NoContainerAt(String),
    #[error("the route returns the object to its own container `{0}`")]
    SameContainer(String),
    #[error("container `{0}` has no room placement")]
    NotPlaced(String),
    #[error("invalid map: {0}")]
    InvalidMap(MapViolation),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    North,
    South,
    East,
    West,
}

impl Direction {
    /// Tie-break priority for canonical routes.
    pub const ALL: [Direction; 4] = [Direction::North, Direction::South, Direction::East, Direction::West];

    pub fn delta(self) -> (i32, i32) {
        match self {
            Direction::North => (0, 1),
            Direction::South => (0, -1),
            Direction::East => (1, 0),
            Direction::West => (-1, 0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::North => "north",
            Direction::South => "south",
            Direction::East => "east",
            Direction::West => "west",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Direction::ALL.into_iter().find(|d| d.name() == s)
    }

    pub fn opposite(self) -> Self {
        match self {
            Direction::North => Direction::South,
            Direction::South => Direction::North,
            Direction::East => Direction::West,
            Direction::West => Direction::East,
        }
    }

    /// Direction of the unit step from `a` to `b`, if they are adjacent.
    pub fn between(a: Coord, b: Coord) -> Option<Self> {
        Direction::ALL.into_iter().find(|d| a.step(*d) == b)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Coord(pub i32, pub i32);

impl Coord {
    pub fn step(self, d: Direction) -> Coord {
        let (dx, dy) = d.delta();
        Coord(self.0 + dx, self.1 + dy)
    }
}

// ---------------------------------------------------------------------------
// Containers

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Container {
    pub name: String,
    /// Multiset of object names, kept sorted.
    pub objects: Vec<String>,
}

/// Containers in order of first mention, each holding a multiset of objects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainerState {
    pub containers: Vec<Container>,
}

impl ContainerState {
    pub fn new<I, S>(containers: I) -> Result<Self, WorldError>
    where
        I: IntoIterator<Item = (S, Vec<S>)>,
        S: Into<String>,
    {
        let mut out: Vec<Container> = Vec::new();
        for (name, objects) in containers {
            let name = name.into();
            if out.iter().any(|c| c.name == name) {
                return Err(WorldError::DuplicateContainer(name));
            }
            let mut objects: Vec<String> = objects.into_iter().map(Into::into).collect();
            objects.sort();
            out.push(Container { name, objects });
        }
        Ok(ContainerState { containers: out })
    }

    pub fn get(&self, name: &str) -> Option<&Container> {
        self.containers.iter().find(|c| c.name == name)
    }

    fn position(&self, name: &str) -> Result<usize, WorldError> {
        self.containers
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| WorldError::UnknownContainer(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.containers.iter().map(|c| c.name.as_str())
    }

    pub fn object_count(&self) -> usize {
        self.containers.iter().map(|c| c.objects.len()).sum()
    }

    /// Sorted multiset union of every container's contents.
    pub fn all_objects(&self) -> Vec<&str> {
        let mut all: Vec<&str> = self
            .containers
            .iter()
            .flat_map(|c| c.objects.iter().map(String::as_str))
            .collect();
        all.sort_unstable();
        all
    }

    /// Same containers with `lead` moved to the front; the rest keep their
    /// relative order.
    pub fn with_lead(&self, lead: &str) -> Result<ContainerState, WorldError> {
        let i = self.position(lead)?;
        let mut containers = self.containers.clone();
        let c = containers.remove(i);
        containers.insert(0, c);
        Ok(ContainerState { containers })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveAction {
    pub object: String,
    pub src: String,
    pub dst: String,
}

/// Moves one copy of `action.object` from `src` to `dst`.
pub fn apply_move(state: &ContainerState, action: &MoveAction) -> Result<ContainerState, WorldError> {
    let src = state.position(&action.src)?;
    let dst = state.position(&action.dst)?;
    let at = state.containers[src]
        .objects
        .iter()
        .position(|o| *o == action.object)
        .ok_or_else(|| WorldError::ObjectAbsent {
            object: action.object.clone(),
            container: action.src.clone(),
        })?;
    let mut next = state.clone();
    if src == dst {
        return Ok(next);
    }
    let obj = next.containers[src].objects.remove(at);
    let objs = &mut next.containers[dst].objects;
    let ins = objs.partition_point(|o| *o <= obj);
    objs.insert(ins, obj);
    Ok(next)
}

// ---------------------------------------------------------------------------
// Maps

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Room {
    pub name: String,
    pub at: Coord,
    /// The room this one is described relative to in map sentences.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<String>,
}

/// Rooms on distinct lattice cells, in placement order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GridMap {
    pub rooms: Vec<Room>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapViolation {
    #[error("empty map")]
    Empty,
    #[error("duplicate room name `{0}`")]
    DuplicateName(String),
    #[error("coordinate collision between `{0}` and `{1}`")]
    CoordinateCollision(String, String),
    #[error("disconnected: `{0}` is unreachable from `{1}`")]
    Disconnected(String, String),
    #[error("room `{room}` is anchored to `{anchor}`, which is not an earlier adjacent room")]
    BadAnchor { room: String, anchor: String },
}

impl GridMap {
    /// Builds a map from `(name, coordinate)` pairs. Each room after the
    /// first is anchored to the earliest previously listed neighbour.
    pub fn from_coords<S: Into<String>>(rooms: impl IntoIterator<Item = (S, Coord)>) -> Self {
        let mut map = GridMap::default();
        for (name, at) in rooms {
            let anchor = Direction::ALL
                .iter()
                .filter_map(|d| map.index_at(at.step(*d)))
                .min()
                .map(|i| map.rooms[i].name.clone());
            map.rooms.push(Room {
                name: name.into(),
                at,
                anchor,
            });
        }
        map
    }

    /// Places `name` one step in direction `dir` from `anchor`.
    pub fn attach(&mut self, name: impl Into<String>, dir: Direction, anchor: &str) -> Result<(), WorldError> {
        let a = self.index_of(anchor)?;
        let at = self.rooms[a].at.step(dir);
        self.rooms.push(Room {
            name: name.into(),
            at,
            anchor: Some(anchor.to_string()),
        });
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.rooms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rooms.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Result<usize, WorldError> {
        self.rooms
            .iter()
            .position(|r| r.name == name)
            .ok_or_else(|| WorldError::UnknownRoom(name.to_string()))
    }

    pub fn index_at(&self, at: Coord) -> Option<usize> {
        self.rooms.iter().position(|r| r.at == at)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.rooms[i].name
    }

    /// Neighbours of room `i` in direction-priority order.
    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = (Direction, usize)> + '_ {
        let at = self.rooms[i].at;
        Direction::ALL
            .into_iter()
            .filter_map(move |d| self.index_at(at.step(d)).map(|j| (d, j)))
    }

    /// Breadth-first hop counts from room `from`.
    pub fn distances(&self, from: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[from] = Some(0);
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for (_, v) in self.neighbours(u) {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Number of distinct shortest paths from `src` to `dst`.
    pub fn shortest_path_count(&self, src: usize, dst: usize) -> u64 {
        let n = self.len();
        let mut dist = vec![usize::MAX; n];
        let mut ways = vec![0u64; n];
        dist[src] = 0;
        ways[src] = 1;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for (_, v) in self.neighbours(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
                if dist[v] == dist[u] + 1 {
                    ways[v] = ways[v].saturating_add(ways[u]);
                }
            }
        }
        ways[dst]
    }

    /// All simple paths (no repeated room) of exactly `len` steps from `start`.
    pub fn simple_paths(&self, start: usize, len: usize) -> Vec<Route> {
        fn walk(
            map: &GridMap,
            at: usize,
            left: usize,
            seen: &mut Vec<bool>,
            path: &mut Vec<Direction>,
            out: &mut Vec<Route>,
        ) {
            if left == 0 {
                out.push(Route(path.clone()));
                return;
            }
            for (d, next) in map.neighbours(at) {
                if !seen[next] {
                    seen[next] = true;
                    path.push(d);
                    walk(map, next, left - 1, seen, path, out);
                    path.pop();
                    seen[next] = false;
                }
            }
        }
        let mut seen = vec![false; self.len()];
        seen[start] = true;
        let mut out = Vec::new();
        walk(self, start, len, &mut seen, &mut Vec::with_capacity(len), &mut out);
        out
    }

    /// `(room, direction, anchor)` triples for every anchored room, in
    /// placement order.
    pub fn relations(&self) -> Vec<(&str, Direction, &str)> {
        self.rooms
            .iter()
            .filter_map(|r| {
                let anchor = self.rooms.iter().find(|a| Some(&a.name) == r.anchor.as_ref())?;
                Some((
                    r.name.as_str(),
                    Direction::between(anchor.at, r.at)?,
                    anchor.name.as_str(),
                ))
            })
            .collect()
    }
}

/// Checks names, coordinates, anchors and connectivity; returns the first
/// violation found.
pub fn validate_map(map: &GridMap) -> Result<(), MapViolation> {
    if map.is_empty() {
        return Err(MapViolation::Empty);
    }
    for (i, r) in map.rooms.iter().enumerate() {
        for prev in &map.rooms[..i] {
            if prev.name == r.name {
                return Err(MapViolation::DuplicateName(r.name.clone()));
            }
            if prev.at == r.at {
                return Err(MapViolation::CoordinateCollision(prev.name.clone(), r.name.clone()));
            }
        }
    }
    for (i, r) in map.rooms.iter().enumerate() {
        if let Some(anchor) = &r.anchor {
            let ok = map.rooms[..i]
                .iter()
                .any(|a| &a.name == anchor && Direction::between(a.at, r.at).is_some());
            if !ok {
                return Err(MapViolation::BadAnchor {
                    room: r.name.clone(),
                    anchor: anchor.clone(),
                });
            }
        }
    }
    let dist = map.distances(0);
    if let Some(i) = dist.iter().position(Option::is_none) {
        return Err(MapViolation::Disconnected(
            map.rooms[i].name.clone(),
            map.rooms[0].name.clone(),
        ));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Route(pub Vec<Direction>);

impl Route {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn steps(&self) -> &[Direction] {
        &self.0
    }
}

/// A shortest route from `src` to `dst`. Among equally short routes the one
/// that is lexicographically first under north > south > east > west wins.
pub fn route_between(map: &GridMap, src: &str, dst: &str) -> Result<Route, WorldError> {
    let s = map.index_of(src)?;
    let t = map.index_of(dst)?;
    if s == t {
        return Err(WorldError::SameRoom(src.to_string()));
    }
    let to_dst = map.distances(t);
    let mut at = s;
    let mut left = to_dst[s].ok_or_else(|| WorldError::Unreachable(src.to_string(), dst.to_string()))?;
    let mut steps = Vec::with_capacity(left);
    while left > 0 {
        let (d, next) = map
            .neighbours(at)
            .find(|(_, v)| to_dst[*v] == Some(left - 1))
            .expect("a BFS predecessor always exists");
        steps.push(d);
        at = next;
        left -= 1;
    }
    Ok(Route(steps))
}

/// Walks `route` from `start`; every visited cell must be a room.
pub fn execute_route<'m>(map: &'m GridMap, start: &str, route: &Route) -> Result<&'m str, WorldError> {
    let mut at = map.index_of(start)?;
    for (step, &d) in route.steps().iter().enumerate() {
        at = map
            .index_at(map.rooms[at].at.step(d))
            .ok_or_else(|| WorldError::OffMap {
                step,
                direction: d,
                from: map.name(at).to_string(),
            })?;
    }
    Ok(map.name(at))
}

// ---------------------------------------------------------------------------
// Hard object

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placement {
    pub container: String,
    pub room: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pick {
    pub object: String,
    pub container: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HardObjectEpisode {
    pub map: GridMap,
    /// One entry per container, in introduction order.
    pub placements: Vec<Placement>,
    pub state: ContainerState,
    pub pick: Pick,
    pub route: Route,
}

impl HardObjectEpisode {
    pub fn room_of(&self, container: &str) -> Result<&str, WorldError> {
        self.placements
            .iter()
            .find(|p| p.container == container)
            .map(|p| p.room.as_str())
            .ok_or_else(|| WorldError::NotPlaced(container.to_string()))
    }

    pub fn container_in(&self, room: &str) -> Option<&str> {
        self.placements
            .iter()
            .find(|p| p.room == room)
            .map(|p| p.container.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HardObjectOutcome {
    pub state: ContainerState,
    /// The container the object was placed into.
    pub receiving: String,
}

/// Carries the picked object along the route and drops it into the
/// container found at the end.
pub fn simulate_hard_object(ep: &HardObjectEpisode) -> Result<HardObjectOutcome, WorldError> {
    let start = ep.room_of(&ep.pick.container)?;
    let end = execute_route(&ep.map, start, &ep.route)?;
    let receiving = ep
        .container_in(end)
        .ok_or_else(|| WorldError::NoContainerAt(end.to_string()))?;
    if receiving == ep.pick.container {
        return Err(WorldError::SameContainer(receiving.to_string()));
    }
    let state = apply_move(
        &ep.state,
        &MoveAction {
            object: ep.pick.object.clone(),
            src: ep.pick.container.clone(),
            dst: receiving.to_string(),
        },
    )?;
    Ok(HardObjectOutcome {
        state,
        receiving: receiving.to_string(),
    })
}

/// Map of the navigation examples: garden west of the kitchen, bedroom
/// south of it.
#[cfg(test)]
pub(crate) fn three_room_map() -> GridMap {
    let mut m = GridMap::from_coords([("kitchen", Coord(0, 0))]);
    m.attach("garden", Direction::West, "kitchen").unwrap();
    m.attach("bedroom", Direction::South, "kitchen").unwrap();
    m
}
