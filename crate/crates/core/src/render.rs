//! English surface forms for every task, the inverse parser for final-state
//! sentences, and the word-for-word gibberish variant of the templates.
//!
//! Rendering goes through a [`Phrasing`], which maps each fixed template
//! word to its surface form. Slot fillers (objects, containers, rooms,
//! directions, repeat counts) are written verbatim under every phrasing.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use rand::Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::rng::item_rng;
use crate::scenariogen::World;
use crate::world::{
    apply_move, execute_route, route_between, simulate_hard_object, ContainerState, Direction, GridMap, Placement,
    Route, WorldError,
};

/// Every word the templates contribute, lowercased.
pub const TEMPLATE_WORDS: &[&str] = &[
    "the",
    "contains",
    "a",
    "and",
    "no",
    "objects",
    "took",
    "from",
    "put",
    "it",
    "in",
    "is",
    "to",
    "of",
    "get",
    "you",
    "must",
    "go",
    "if",
    "start",
    "will",
    "end",
    "there",
    "containing",
    "went",
    "twice",
    "then",
    "times",
    "placed",
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RenderError {
    #[error("cannot render an empty route")]
    EmptyRoute,
    #[error("sentence {index}: cannot parse `{text}`")]
    Unparseable { index: usize, text: String },
    #[error("sentence {index}: container `{name}` described twice")]
    DuplicateContainer { index: usize, name: String },
    #[error("cannot parse route `{0}`")]
    BadRoute(String),
    #[error("token `{0}` is neither a template word nor a known slot filler")]
    UnknownToken(String),
    #[error("gibberish map: {0}")]
    BadMap(String),
    #[error(transparent)]
    World(#[from] WorldError),
}

/// Surface form of each template word.
pub trait Phrasing {
    fn word(&self, english: &'static str) -> &str;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct English;

impl Phrasing for English {
    fn word(&self, english: &'static str) -> &str {
        english
    }
}

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

/// Space-joined token writer.
struct Text<'p> {
    out: String,
    phr: &'p dyn Phrasing,
}

impl<'p> Text<'p> {
    fn new(phr: &'p dyn Phrasing) -> Self {
        Text {
            out: String::new(),
            phr,
        }
    }

    fn space(&mut self) {
        if !self.out.is_empty() {
            self.out.push(' ');
        }
    }

    /// Template words, lowercase.
    fn w(&mut self, words: &[&'static str]) -> &mut Self {
        for word in words {
            self.space();
            self.out.push_str(self.phr.word(word));
        }
        self
    }

    /// A sentence-initial template word.
    fn cap(&mut self, word: &'static str) -> &mut Self {
        self.space();
        let c = capitalize(self.phr.word(word));
        self.out.push_str(&c);
        self
    }

    fn slot(&mut self, s: &str) -> &mut Self {
        self.space();
        self.out.push_str(s);
        self
    }

    fn p(&mut self, c: char) -> &mut Self {
        self.out.push(c);
        self
    }

    fn list(&mut self, objects: &[String]) -> &mut Self {
        match objects {
            [] => self.w(&["no", "objects"]),
            [one] => self.w(&["a"]).slot(one),
            [x, y] => self.w(&["a"]).slot(x).w(&["and", "a"]).slot(y),
            [init @ .., last] => {
                for o in init {
                    self.w(&["a"]).slot(o).p(',');
                }
                self.w(&["and", "a"]).slot(last)
            }
        }
    }

    fn finish(self) -> String {
        self.out
    }
}

// ---------------------------------------------------------------------------
// Containers

/// One sentence per container in state order, objects alphabetical.
pub fn render_container_state(state: &ContainerState) -> String {
    render_container_state_with(state, &English)
}

pub fn render_container_state_with(state: &ContainerState, phr: &dyn Phrasing) -> String {
    let mut t = Text::new(phr);
    state_sentences(&mut t, state, None);
    t.finish()
}

/// The hard-object form: "The {c} in the {room} contains ...".
pub fn render_located_state_with(state: &ContainerState, placements: &[Placement], phr: &dyn Phrasing) -> String {
    let mut t = Text::new(phr);
    state_sentences(&mut t, state, Some(placements));
    t.finish()
}

fn state_sentences(t: &mut Text, state: &ContainerState, placements: Option<&[Placement]>) {
    for c in &state.containers {
        t.cap("the").slot(&c.name);
        if let Some(room) = placements.and_then(|ps| ps.iter().find(|p| p.container == c.name)) {
            t.w(&["in", "the"]).slot(&room.room);
        }
        t.w(&["contains"]).list(&c.objects).p('.');
    }
}

fn map_sentences(t: &mut Text, map: &GridMap) {
    for (room, dir, anchor) in map.relations() {
        t.cap("the")
            .slot(room)
            .w(&["is", "to", "the"])
            .slot(dir.name())
            .w(&["of", "the"])
            .slot(anchor)
            .p('.');
    }
}

// ---------------------------------------------------------------------------
// Routes

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RouteStyle {
    /// "to the west, then to the north."
    Answer,
    /// "Went to the north twice, then went to the west."
    Narration,
}

pub fn render_route(route: &Route, style: RouteStyle) -> Result<String, RenderError> {
    render_route_with(route, style, &English)
}

pub fn render_route_with(route: &Route, style: RouteStyle, phr: &dyn Phrasing) -> Result<String, RenderError> {
    if route.is_empty() {
        return Err(RenderError::EmptyRoute);
    }
    let mut t = Text::new(phr);
    match style {
        RouteStyle::Answer => answer_clauses(&mut t, route),
        RouteStyle::Narration => narration(&mut t, route),
    }
    t.p('.');
    Ok(t.finish())
}

fn answer_clauses(t: &mut Text, route: &Route) {
    for (i, d) in route.steps().iter().enumerate() {
        if i > 0 {
            t.p(',').w(&["then"]);
        }
        t.w(&["to", "the"]).slot(d.name());
    }
}

fn narration(t: &mut Text, route: &Route) {
    let mut runs: Vec<(Direction, usize)> = Vec::new();
    for &d in route.steps() {
        match runs.last_mut() {
            Some((last, k)) if *last == d => *k += 1,
            _ => runs.push((d, 1)),
        }
    }
    for (i, (d, k)) in runs.into_iter().enumerate() {
        if i == 0 {
            t.cap("went");
        } else {
            t.p(',').w(&["then", "went"]);
        }
        t.w(&["to", "the"]).slot(d.name());
        match k {
            1 => {}
            2 => {
                t.w(&["twice"]);
            }
            k => {
                t.slot(&k.to_string()).w(&["times"]);
            }
        }
    }
}

/// Inverse of the answer style.
pub fn parse_route_answer(text: &str) -> Result<Route, RenderError> {
    let bad = || RenderError::BadRoute(text.to_string());
    let body = text.trim().strip_suffix('.').unwrap_or(text.trim());
    body.split(", then ")
        .map(|clause| {
            clause
                .strip_prefix("to the ")
                .and_then(Direction::parse)
                .ok_or_else(bad)
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Route)
}

// ---------------------------------------------------------------------------
// Prefixes and targets

/// Which of the two attested word orders a placement sentence uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlacementStyle {
    /// "There is a bin containing a book in the bedroom."
    ContentsFirst,
    /// "There is a box in the garden containing no objects."
    RoomFirst,
}

pub fn render_prefix(world: &World) -> Result<String, RenderError> {
    render_prefix_with(world, &English)
}

pub fn render_prefix_with(world: &World, phr: &dyn Phrasing) -> Result<String, RenderError> {
    let mut t = Text::new(phr);
    match world {
        World::Container { state, action } => {
            state_sentences(&mut t, state, None);
            t.cap("took")
                .w(&["a"])
                .slot(&action.object)
                .w(&["from", "the"])
                .slot(&action.src);
            t.w(&["and", "put", "it", "in", "the"]).slot(&action.dst).p('.');
        }
        World::NavRoute { map, src, dst } => {
            map_sentences(&mut t, map);
            t.cap("to")
                .w(&["get", "from", "the"])
                .slot(src)
                .w(&["to", "the"])
                .slot(dst)
                .p(',');
            t.w(&["you", "must", "go"]);
        }
        World::NavResult { map, start, route } => {
            if route.is_empty() {
                return Err(RenderError::EmptyRoute);
            }
            map_sentences(&mut t, map);
            t.cap("if")
                .w(&["you", "start", "in", "the"])
                .slot(start)
                .w(&["and", "go"]);
            answer_clauses(&mut t, route);
            t.p(',').w(&["you", "will", "end", "in", "the"]);
        }
        World::HardObject {
            episode,
            placement_styles,
        } => {
            if episode.route.is_empty() {
                return Err(RenderError::EmptyRoute);
            }
            map_sentences(&mut t, &episode.map);
            for (i, p) in episode.placements.iter().enumerate() {
                let objects = episode
                    .state
                    .get(&p.container)
                    .map(|c| c.objects.as_slice())
                    .ok_or_else(|| WorldError::UnknownContainer(p.container.clone()))?;
                t.cap("there").w(&["is", "a"]).slot(&p.container);
                match placement_styles
                    .get(i)
                    .copied()
                    .unwrap_or(PlacementStyle::ContentsFirst)
                {
                    PlacementStyle::ContentsFirst => {
                        t.w(&["containing"]).list(objects).w(&["in", "the"]).slot(&p.room);
                    }
                    PlacementStyle::RoomFirst => {
                        t.w(&["in", "the"]).slot(&p.room).w(&["containing"]).list(objects);
                    }
                }
                t.p('.');
            }
            let room = episode.room_of(&episode.pick.container)?;
            t.cap("took")
                .w(&["a"])
                .slot(&episode.pick.object)
                .w(&["from", "the"])
                .slot(&episode.pick.container);
            t.w(&["in", "the"]).slot(room).p('.');
            narration(&mut t, &episode.route);
            t.p('.').cap("placed").w(&["it"]).p('.');
        }
    }
    Ok(t.finish())
}

/// Runs the world's oracle and renders the answer.
pub fn render_target(world: &World) -> Result<String, RenderError> {
    render_target_with(world, &English)
}

pub fn render_target_with(world: &World, phr: &dyn Phrasing) -> Result<String, RenderError> {
    Ok(match world {
        World::Container { state, action } => {
            let next = apply_move(state, action)?.with_lead(&action.dst)?;
            render_container_state_with(&next, phr)
        }
        World::NavRoute { map, src, dst } => {
            render_route_with(&route_between(map, src, dst)?, RouteStyle::Answer, phr)?
        }
        World::NavResult { map, start, route } => {
            let mut t = Text::new(phr);
            t.slot(execute_route(map, start, route)?).p('.');
            t.finish()
        }
        World::HardObject { episode, .. } => {
            let out = simulate_hard_object(episode)?;
            render_located_state_with(&out.state.with_lead(&out.receiving)?, &episode.placements, phr)
        }
    })
}

// ---------------------------------------------------------------------------
// Parsing final states

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedState {
    pub state: ContainerState,
    /// Room of each container for the hard-object form; empty otherwise.
    pub placements: Vec<Placement>,
}

/// Inverse of [`render_container_state`] and of the located hard-object form.
/// A missing final period is tolerated.
pub fn parse_final_state(text: &str) -> Result<ParsedState, RenderError> {
    let mut containers: Vec<(String, Vec<String>)> = Vec::new();
    let mut placements = Vec::new();
    let sentences: Vec<&str> = text.split('.').map(str::trim).filter(|s| !s.is_empty()).collect();
    if sentences.is_empty() {
        return Err(RenderError::Unparseable {
            index: 0,
            text: text.to_string(),
        });
    }
    for (index, s) in sentences.iter().enumerate() {
        let bad = || RenderError::Unparseable {
            index,
            text: s.to_string(),
        };
        let rest = s.strip_prefix("The ").ok_or_else(bad)?;
        let (subject, list) = rest.split_once(" contains ").ok_or_else(bad)?;
        let (name, room) = match subject.split_once(" in the ") {
            Some((n, r)) => (n, Some(r)),
            None => (subject, None),
        };
        if name.is_empty() || name.contains(' ') || room.is_some_and(|r| r.is_empty()) {
            return Err(bad());
        }
        if index > 0 && room.is_some() != !placements.is_empty() {
            return Err(bad());
        }
        if containers.iter().any(|(n, _)| n == name) {
            return Err(RenderError::DuplicateContainer {
                index,
                name: name.to_string(),
            });
        }
        let objects = parse_list(list).ok_or_else(bad)?;
        if let Some(r) = room {
            placements.push(Placement {
                container: name.to_string(),
                room: r.to_string(),
            });
        }
        containers.push((name.to_string(), objects));
    }
    let state = ContainerState::new(containers)?;
    Ok(ParsedState { state, placements })
}

fn parse_list(list: &str) -> Option<Vec<String>> {
    if list == "no objects" {
        return Some(Vec::new());
    }
    let item = |s: &str| s.strip_prefix("a ").filter(|o| !o.is_empty()).map(str::to_string);
    let parts: Vec<&str> = list.split(", ").collect();
    match parts.as_slice() {
        [single] => match single.split_once(" and a ") {
            Some((x, y)) if !y.is_empty() => Some(vec![item(x)?, y.to_string()]),
            Some(_) => None,
            None => Some(vec![item(single)?]),
        },
        [_, _] => None,
        [init @ .., last] => {
            let mut out = init.iter().map(|s| item(s)).collect::<Option<Vec<_>>>()?;
            out.push(item(last.strip_prefix("and ")?)?);
            Some(out)
        }
        [] => None,
    }
}

// ---------------------------------------------------------------------------
// Gibberish

/// A bijection from template words to invented words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GibberishMap {
    forward: BTreeMap<String, String>,
    inverse: BTreeMap<String, String>,
}

impl Phrasing for GibberishMap {
    fn word(&self, english: &'static str) -> &str {
        self.forward.get(english).map(String::as_str).unwrap_or(english)
    }
}

const CHUNKS: &[&str] = &[
    "x", "r", "q", "s", "ix", "n", "qk", "xb", "th", "pl", "oo", "ve", "z", "gr", "u", "ap", "str", "o", "e", "k", "b",
    "m", "ul", "ch", "i", "wr", "sn", "f", "yl", "dd", "j", "kv", "ae", "zh",
];

/// Draws a pseudo-word for every template word. Candidates that collide
/// with `avoid`, with a template word, or with an earlier pseudo-word are
/// redrawn.
pub fn build_gibberish_map(seed: u64, avoid: &HashSet<String>) -> GibberishMap {
    let mut rng = item_rng(seed);
    let mut used: HashSet<String> = TEMPLATE_WORDS.iter().map(|w| w.to_string()).collect();
    let mut pairs = Vec::with_capacity(TEMPLATE_WORDS.len());
    for &w in TEMPLATE_WORDS {
        let g = loop {
            let len = rng.gen_range(3..=9);
            let mut s = String::new();
            while s.len() < len {
                s.push_str(CHUNKS[rng.gen_range(0..CHUNKS.len())]);
            }
            s.truncate(len);
            if !avoid.contains(&s) && used.insert(s.clone()) {
                break s;
            }
        };
        pairs.push((w.to_string(), g));
    }
    GibberishMap::from_pairs(pairs).expect("generated map is a bijection")
}

impl GibberishMap {
    /// Requires exactly the template vocabulary as domain and an injective
    /// image of lowercase words disjoint from the template vocabulary.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (String, String)>) -> Result<Self, RenderError> {
        let mut forward = BTreeMap::new();
        let mut inverse = BTreeMap::new();
        for (en, g) in pairs {
            if !TEMPLATE_WORDS.contains(&en.as_str()) {
                return Err(RenderError::BadMap(format!("`{en}` is not a template word")));
            }
            if g.is_empty() || !g.chars().all(|c| c.is_ascii_lowercase()) {
                return Err(RenderError::BadMap(format!("`{g}` must be lowercase letters")));
            }
            if TEMPLATE_WORDS.contains(&g.as_str()) {
                return Err(RenderError::BadMap(format!("`{g}` is itself a template word")));
            }
            if forward.insert(en.clone(), g.clone()).is_some() {
                return Err(RenderError::BadMap(format!("`{en}` mapped twice")));
            }
            if inverse.insert(g.clone(), en).is_some() {
                return Err(RenderError::BadMap(format!("`{g}` is the image of two words")));
            }
        }
        if let Some(missing) = TEMPLATE_WORDS.iter().find(|w| !forward.contains_key(**w)) {
            return Err(RenderError::BadMap(format!("no entry for `{missing}`")));
        }
        Ok(GibberishMap { forward, inverse })
    }

    pub fn get(&self, english: &str) -> Option<&str> {
        self.forward.get(english).map(String::as_str)
    }

    pub fn english(&self, gibberish: &str) -> Option<&str> {
        self.inverse.get(gibberish).map(String::as_str)
    }

    pub fn pseudo_words(&self) -> impl Iterator<Item = &str> {
        self.inverse.keys().map(String::as_str)
    }

    /// `english<TAB>gibberish` lines in template-word order.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for w in TEMPLATE_WORDS {
            let _ = writeln!(out, "{w}\t{}", self.forward[*w]);
        }
        out
    }

    pub fn parse_tsv(text: &str) -> Result<Self, RenderError> {
        let pairs = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| {
                l.split_once('\t')
                    .map(|(a, b)| (a.trim().to_string(), b.trim().to_string()))
                    .ok_or_else(|| RenderError::BadMap(format!("line {}: expected two tab-separated columns", i + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_pairs(pairs)
    }

    /// SHA-256 of the TSV form.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_tsv().as_bytes()))
    }
}

fn split_punct(tok: &str) -> (&str, &str) {
    let core = tok.trim_end_matches(['.', ',']);
    (core, &tok[core.len()..])
}

fn lower_first(s: &str) -> (String, bool) {
    let mut c = s.chars();
    match c.next() {
        Some(f) if f.is_uppercase() => (f.to_lowercase().chain(c).collect(), true),
        _ => (s.to_string(), false),
    }
}

/// Substitutes template words token by token. Any other token must be a
/// direction, a number, or listed in `slots`. Template words win when a
/// slot filler coincides with one.
pub fn apply_gibberish(text: &str, map: &GibberishMap, slots: &HashSet<String>) -> Result<String, RenderError> {
    let toks = text
        .split(' ')
        .map(|tok| {
            let (core, punct) = split_punct(tok);
            if core.is_empty() {
                return Ok(tok.to_string());
            }
            let (lower, capped) = lower_first(core);
            if let Some(g) = map.get(&lower) {
                let g = if capped { capitalize(g) } else { g.to_string() };
                return Ok(format!("{g}{punct}"));
            }
            let is_slot =
                slots.contains(core) || Direction::parse(core).is_some() || core.bytes().all(|b| b.is_ascii_digit());
            if is_slot {
                Ok(tok.to_string())
            } else {
                Err(RenderError::UnknownToken(core.to_string()))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(toks.join(" "))
}

/// Maps pseudo-words back to English; all other tokens pass through.
pub fn invert_gibberish(text: &str, map: &GibberishMap) -> String {
    text.split(' ')
        .map(|tok| {
            let (core, punct) = split_punct(tok);
            let (lower, capped) = lower_first(core);
            match map.english(&lower) {
                Some(en) if capped => format!("{}{punct}", capitalize(en)),
                Some(en) => format!("{en}{punct}"),
                None => tok.to_string(),
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}
