#![allow(dead_code)]

use textworlds::render::PlacementStyle;
use textworlds::scenariogen::World;
use textworlds::world::{
    ContainerState, Coord, Direction, GridMap, HardObjectEpisode, MoveAction, Pick, Placement, Route,
};

pub const CONTAINER_PREFIX: &str =
    "The bin contains a ball and a snake. The box contains a quilt. Took a quilt from the box and put it in the bin.";
pub const CONTAINER_TARGET: &str = "The bin contains a ball, a quilt, and a snake. The box contains no objects.";
pub const NAV_ROUTE_PREFIX: &str = "The garden is to the west of the kitchen. The bedroom is to the south of the kitchen. To get from the kitchen to the garden, you must go";
pub const NAV_ROUTE_TARGET: &str = "to the west.";
pub const NAV_RESULT_PREFIX: &str = "The garden is to the west of the kitchen. The bedroom is to the south of the kitchen. If you start in the kitchen and go to the west, you will end in the";
pub const NAV_RESULT_TARGET: &str = "garden.";
pub const HARD_PREFIX: &str = "The kitchen is to the north of the garage. The garden is to the west of the kitchen. The bedroom is to the south of the garage. There is a bin containing a book in the bedroom. There is a box in the garden containing no objects. Took a book from the bin in the bedroom. Went to the north twice, then went to the west. Placed it.";
/// As printed, plus the closing period every other target carries.
pub const HARD_TARGET: &str = "The box in the garden contains a book. The bin in the bedroom contains no objects.";

pub const TRUNCATED_ROUTE_TARGET: &str =
    "to the west, then to the west, then to the north, then to the north, then to the north, then to the north";
pub const TRUNCATED_ROUTE_PREDICTION: &str =
    "to the west, then to the west, then to the north, then to the north, then to the north";

pub fn state(spec: &[(&str, &[&str])]) -> ContainerState {
    ContainerState::new(
        spec.iter()
            .map(|(n, o)| (n.to_string(), o.iter().map(|s| s.to_string()).collect())),
    )
    .unwrap()
}

pub fn kitchen_map() -> GridMap {
    let mut m = GridMap::from_coords([("kitchen", Coord(0, 0))]);
    m.attach("garden", Direction::West, "kitchen").unwrap();
    m.attach("bedroom", Direction::South, "kitchen").unwrap();
    m
}

pub fn container_world() -> World {
    World::Container {
        state: state(&[("bin", &["ball", "snake"]), ("box", &["quilt"])]),
        action: MoveAction {
            object: "quilt".into(),
            src: "box".into(),
            dst: "bin".into(),
        },
    }
}

pub fn nav_route_world() -> World {
    World::NavRoute {
        map: kitchen_map(),
        src: "kitchen".into(),
        dst: "garden".into(),
    }
}

pub fn nav_result_world() -> World {
    World::NavResult {
        map: kitchen_map(),
        start: "kitchen".into(),
        route: Route(vec![Direction::West]),
    }
}

pub fn hard_object_world() -> World {
    let mut map = GridMap::from_coords([("garage", Coord(0, 0))]);
    map.attach("kitchen", Direction::North, "garage").unwrap();
    map.attach("garden", Direction::West, "kitchen").unwrap();
    map.attach("bedroom", Direction::South, "garage").unwrap();
    World::HardObject {
        episode: HardObjectEpisode {
            map,
            placements: vec![
                Placement {
                    container: "bin".into(),
                    room: "bedroom".into(),
                },
                Placement {
                    container: "box".into(),
                    room: "garden".into(),
                },
            ],
            state: state(&[("bin", &["book"]), ("box", &[])]),
            pick: Pick {
                object: "book".into(),
                container: "bin".into(),
            },
            route: Route(vec![Direction::North, Direction::North, Direction::West]),
        },
        placement_styles: vec![PlacementStyle::ContentsFirst, PlacementStyle::RoomFirst],
    }
}

/// The four example rows: (label, world, prefix, target).
pub fn example_rows() -> Vec<(&'static str, World, &'static str, &'static str)> {
    vec![
        ("container", container_world(), CONTAINER_PREFIX, CONTAINER_TARGET),
        ("nav_route", nav_route_world(), NAV_ROUTE_PREFIX, NAV_ROUTE_TARGET),
        ("nav_result", nav_result_world(), NAV_RESULT_PREFIX, NAV_RESULT_TARGET),
        ("hard_object", hard_object_world(), HARD_PREFIX, HARD_TARGET),
    ]
}

/// Reference sentence BLEU-4 written independently of the library: n-grams
/// are joined strings in a sorted map, precisions multiplied directly.
pub fn reference_bleu(prediction: &str, target: &str) -> f64 {
    use std::collections::BTreeMap;
    fn toks(s: &str) -> Vec<String> {
        s.replace('.', " . ")
            .replace(',', " , ")
            .split_whitespace()
            .map(str::to_string)
            .collect()
    }
    fn grams(t: &[String], n: usize) -> BTreeMap<String, i64> {
        let mut m = BTreeMap::new();
        let mut i = 0;
        while i + n <= t.len() {
            *m.entry(t[i..i + n].join("\u{1}")).or_insert(0) += 1;
            i += 1;
        }
        m
    }
    let h = toks(prediction);
    let r = toks(target);
    if h.is_empty() {
        return 0.0;
    }
    let mut product = 1.0f64;
    for n in 1..=4 {
        let hg = grams(&h, n);
        let rg = grams(&r, n);
        let mut matched = 0i64;
        let mut total = 0i64;
        for (g, c) in &hg {
            total += c;
            matched += (*c).min(*rg.get(g).unwrap_or(&0));
        }
        let p = if n == 1 {
            if total == 0 {
                0.0
            } else {
                matched as f64 / total as f64
            }
        } else {
            (matched + 1) as f64 / (total + 1) as f64
        };
        product *= p;
    }
    if product == 0.0 {
        return 0.0;
    }
    let bp = if h.len() >= r.len() {
        1.0
    } else {
        (1.0 - r.len() as f64 / h.len() as f64).exp()
    };
    bp * product.powf(0.25)
}

/// A connected map of `n` rooms named `r0..`, grown one random edge-adjacent
/// cell at a time.
pub fn random_map(seed: u64, n: usize) -> GridMap {
    use rand::Rng;
    let mut rng = textworlds::rng::item_rng(seed);
    let mut cells = vec![Coord(0, 0)];
    while cells.len() < n {
        let base = cells[rng.gen_range(0..cells.len())];
        let d = Direction::ALL[rng.gen_range(0..4)];
        let next = base.step(d);
        if !cells.contains(&next) {
            cells.push(next);
        }
    }
    GridMap::from_coords(cells.into_iter().enumerate().map(|(i, c)| (format!("r{i}"), c)))
}

/// All-pairs hop distances by Floyd-Warshall over lattice adjacency.
#[allow(clippy::needless_range_loop)]
pub fn floyd_warshall(map: &GridMap) -> Vec<Vec<usize>> {
    let n = map.len();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for j in 0..n {
            let (a, b) = (map.rooms[i].at, map.rooms[j].at);
            if (a.0 - b.0).abs() + (a.1 - b.1).abs() == 1 {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Number of simple paths of exactly `len` steps from room `src` to `dst`,
/// by depth-first enumeration.
pub fn count_paths(map: &GridMap, src: usize, dst: usize, len: usize) -> u64 {
    fn go(map: &GridMap, at: usize, dst: usize, left: usize, seen: &mut Vec<bool>) -> u64 {
        if left == 0 {
            return (at == dst) as u64;
        }
        let c = map.rooms[at].at;
        let mut total = 0;
        for (k, r) in map.rooms.iter().enumerate() {
            if !seen[k] && (r.at.0 - c.0).abs() + (r.at.1 - c.1).abs() == 1 {
                seen[k] = true;
                total += go(map, k, dst, left - 1, seen);
                seen[k] = false;
            }
        }
        total
    }
    let mut seen = vec![false; map.len()];
    seen[src] = true;
    go(map, src, dst, len, &mut seen)
}
