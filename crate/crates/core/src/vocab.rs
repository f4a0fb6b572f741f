//! Lexicon loading and the named word sets that fill template slots.
//!
//! A lexicon is a TSV file with the header
//! `word<TAB>pos<TAB>freq_rank<TAB>concreteness`; the concreteness column may
//! be empty. Word-set files hold one token per line, with `#` comments.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::path::Path;

use rand::seq::{index, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::render::TEMPLATE_WORDS;
use crate::rng::item_rng;
use crate::world::Direction;

pub const LEXICON_HEADER: &str = "word\tpos\tfreq_rank\tconcreteness";

pub const DEFAULT_TRAIN_FRACTION: f64 = 0.75;
pub const SPLIT_SEED: u64 = 0x5EED_0001;
pub const RANDOM_NOUNS_SEED: u64 = 0x5EED_0002;
pub const RANDOM_STRINGS_SEED: u64 = 0x5EED_0003;
pub const CONCRETE_SUBSAMPLE_SEED: u64 = 0x5EED_0004;
pub const PRESET_SIZE: usize = 2000;
pub const CONCRETE_SUBSAMPLE_SIZE: usize = 200;

const DEMO_LEXICON: &str = include_str!("../data/demo_lexicon.tsv");
const CONTAINERS: &str = include_str!("../data/containers.txt");
const ROOMS: &str = include_str!("../data/rooms.txt");
const SENSIBLE: &str = include_str!("../data/sensible20.txt");

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VocabError {
    #[error("lexicon line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("lexicon has no entries")]
    EmptyLexicon,
    #[error("word set `{set}` has {available} word(s), {needed} needed")]
    TooFewWords {
        set: String,
        needed: usize,
        available: usize,
    },
    #[error("train fraction must lie strictly between 0 and 1, got {0}")]
    InvalidFraction(f64),
    #[error("word `{0}` is not in the lexicon")]
    NotInLexicon(String),
    #[error("could not draw {0} distinct random strings")]
    RandomStringsExhausted(usize),
    #[error("invalid random-string lengths {min}..={max}")]
    InvalidLengths { min: usize, max: usize },
    #[error("unknown word set `{0}`")]
    UnknownWordSet(String),
    #[error("word set `{set}` line {line}: duplicate token `{word}`")]
    DuplicateToken { set: String, line: usize, word: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pos {
    Noun,
    Verb,
    Other,
}

impl Pos {
    fn parse(s: &str) -> Option<Self> {
        match s {
            "noun" => Some(Pos::Noun),
            "verb" => Some(Pos::Verb),
            "other" => Some(Pos::Other),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LexiconEntry {
    pub word: String,
    pub pos: Pos,
    pub freq_rank: u32,
    pub concreteness: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct Lexicon {
    entries: Vec<LexiconEntry>,
    rank: HashMap<String, u32>,
    concreteness: HashMap<String, f64>,
}

impl Lexicon {
    /// Builds a lexicon, collapsing repeated `(word, pos)` pairs onto the
    /// lowest rank.
    pub fn new(entries: Vec<LexiconEntry>) -> Result<Self, VocabError> {
        if entries.is_empty() {
            return Err(VocabError::EmptyLexicon);
        }
        let mut best: BTreeMap<(String, Pos), LexiconEntry> = BTreeMap::new();
        for e in entries {
            let key = (e.word.clone(), e.pos);
            match best.get(&key) {
                Some(prev) if prev.freq_rank <= e.freq_rank => {}
                _ => {
                    best.insert(key, e);
                }
            }
        }
        let mut entries: Vec<LexiconEntry> = best.into_values().collect();
        entries.sort_by(|a, b| (a.freq_rank, &a.word, a.pos).cmp(&(b.freq_rank, &b.word, b.pos)));
        let mut rank = HashMap::new();
        let mut concreteness = HashMap::new();
        // Entries are rank-ordered, so the first hit per word is its best rank.
        for e in &entries {
            rank.entry(e.word.clone()).or_insert(e.freq_rank);
            if let Some(c) = e.concreteness {
                concreteness.entry(e.word.clone()).or_insert(c);
            }
        }
        Ok(Lexicon {
            entries,
            rank,
            concreteness,
        })
    }

    pub fn parse(text: &str) -> Result<Self, VocabError> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, h)) if h.trim_end_matches('\r') == LEXICON_HEADER => {}
            Some(_) => {
                return Err(VocabError::Malformed {
                    line: 1,
                    message: format!("expected header `{}`", LEXICON_HEADER.replace('\t', "<TAB>")),
                })
            }
            None => return Err(VocabError::EmptyLexicon),
        }
        let mut entries = Vec::new();
        for (i, raw) in lines {
            let line = i + 1;
            let row = raw.trim_end_matches('\r');
            if row.trim().is_empty() {
                continue;
            }
            entries.push(parse_row(row).map_err(|message| VocabError::Malformed { line, message })?);
        }
        Lexicon::new(entries)
    }

    pub fn load(path: impl AsRef<Path>) -> crate::Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| crate::Error::io(path, e))?;
        Ok(Lexicon::parse(&text)?)
    }

    pub fn bundled() -> Self {
        Lexicon::parse(DEMO_LEXICON).expect("bundled lexicon is well formed")
    }

    pub fn entries(&self) -> &[LexiconEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Lowest frequency rank over all parts of speech.
    pub fn rank(&self, word: &str) -> Option<u32> {
        self.rank.get(word).copied()
    }

    pub fn concreteness(&self, word: &str) -> Option<f64> {
        self.concreteness.get(word).copied()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.rank.contains_key(word)
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.rank.keys().map(String::as_str)
    }
}

fn parse_row(row: &str) -> Result<LexiconEntry, String> {
    let cols: Vec<&str> = row.split('\t').collect();
    if cols.len() < 3 || cols.len() > 4 {
        return Err(format!("expected 4 tab-separated columns, found {}", cols.len()));
    }
    let word = cols[0].trim();
    if word.is_empty() || word.chars().any(char::is_whitespace) {
        return Err(format!("invalid word `{word}`"));
    }
    let pos = Pos::parse(cols[1].trim()).ok_or_else(|| format!("unknown part of speech `{}`", cols[1]))?;
    let freq_rank: u32 = cols[2]
        .trim()
        .parse()
        .ok()
        .filter(|r| *r >= 1)
        .ok_or_else(|| format!("freq_rank must be a positive integer, got `{}`", cols[2]))?;
    let concreteness = match cols.get(3).map(|c| c.trim()) {
        None | Some("") => None,
        Some(c) => {
            let v: f64 = c.parse().map_err(|_| format!("bad concreteness `{c}`"))?;
            if !(1.0..=5.0).contains(&v) {
                return Err(format!("concreteness {v} outside [1, 5]"));
            }
            Some(v)
        }
    };
    Ok(LexiconEntry {
        word: word.to_string(),
        pos,
        freq_rank,
        concreteness,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    TrainNouns,
    ValNouns,
    Containers,
    Verbs,
    ToVerbs,
    RandomStrings,
    Custom,
}

/// An ordered set of slot fillers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordSet {
    pub name: String,
    pub words: Vec<String>,
    pub provenance: Provenance,
}

impl WordSet {
    /// Keeps the first occurrence of each word.
    pub fn new(name: impl Into<String>, words: impl IntoIterator<Item = String>, provenance: Provenance) -> Self {
        let mut seen = HashSet::new();
        let words = words.into_iter().filter(|w| seen.insert(w.clone())).collect();
        WordSet {
            name: name.into(),
            words,
            provenance,
        }
    }

    /// Parses the one-token-per-line format.
    pub fn parse(name: &str, text: &str, provenance: Provenance) -> Result<Self, VocabError> {
        let mut seen = HashSet::new();
        let mut words = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let tok = line.trim();
            if tok.is_empty() || tok.starts_with('#') {
                continue;
            }
            if !seen.insert(tok.to_string()) {
                return Err(VocabError::DuplicateToken {
                    set: name.to_string(),
                    line: i + 1,
                    word: tok.to_string(),
                });
            }
            words.push(tok.to_string());
        }
        Ok(WordSet {
            name: name.to_string(),
            words,
            provenance,
        })
    }

    pub fn to_file_string(&self) -> String {
        let mut out = format!("# {}\n", self.name);
        for w in &self.words {
            out.push_str(w);
            out.push('\n');
        }
        out
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.iter().any(|w| w == word)
    }

    fn too_few(&self, needed: usize) -> VocabError {
        VocabError::TooFewWords {
            set: self.name.clone(),
            needed,
            available: self.len(),
        }
    }
}

/// Splits the lexicon into nouns and verbs, dropping any word tagged as both.
/// Both sets are ordered by frequency rank.
pub fn partition_pos(lex: &Lexicon) -> (WordSet, WordSet) {
    let mut nouns = HashSet::new();
    let mut verbs = HashSet::new();
    for e in lex.entries() {
        match e.pos {
            Pos::Noun => nouns.insert(e.word.as_str()),
            Pos::Verb => verbs.insert(e.word.as_str()),
            Pos::Other => false,
        };
    }
    let pick = |own: &HashSet<&str>, other: &HashSet<&str>| {
        let mut seen = HashSet::new();
        lex.entries()
            .iter()
            .map(|e| e.word.as_str())
            .filter(|w| own.contains(w) && !other.contains(w) && seen.insert(*w))
            .map(str::to_string)
            .collect::<Vec<_>>()
    };
    let noun_words = pick(&nouns, &verbs);
    let verb_words = pick(&verbs, &nouns);
    (
        WordSet::new("nouns", noun_words, Provenance::TrainNouns),
        WordSet::new("verbs", verb_words, Provenance::Verbs),
    )
}

/// Seeded disjoint split; each half keeps the input order.
pub fn split_train_val(nouns: &WordSet, train_fraction: f64, seed: u64) -> Result<(WordSet, WordSet), VocabError> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(VocabError::InvalidFraction(train_fraction));
    }
    let n = nouns.len();
    if n < 2 {
        return Err(nouns.too_few(2));
    }
    let n_train = ((train_fraction * n as f64).round() as usize).clamp(1, n - 1);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut item_rng(seed));
    let mut in_train = vec![false; n];
    for &i in &order[..n_train] {
        in_train[i] = true;
    }
    let (mut train, mut val) = (Vec::with_capacity(n_train), Vec::with_capacity(n - n_train));
    for (w, t) in nouns.words.iter().zip(in_train) {
        if t {
            train.push(w.clone());
        } else {
            val.push(w.clone());
        }
    }
    Ok((
        WordSet::new(format!("{}-train", nouns.name), train, Provenance::TrainNouns),
        WordSet::new(format!("{}-val", nouns.name), val, Provenance::ValNouns),
    ))
}

/// The `n` most frequent words of `set`, most frequent first.
pub fn top_common(set: &WordSet, lex: &Lexicon, n: usize) -> Result<WordSet, VocabError> {
    if n > set.len() {
        return Err(set.too_few(n));
    }
    let mut ranked = set
        .words
        .iter()
        .map(|w| {
            lex.rank(w)
                .map(|r| (r, w))
                .ok_or_else(|| VocabError::NotInLexicon(w.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    ranked.sort();
    Ok(WordSet::new(
        format!("{}-common{n}", set.name),
        ranked.into_iter().take(n).map(|(_, w)| w.clone()),
        set.provenance,
    ))
}

/// The `n` most concrete rated words of `set`. Ties fall back to frequency
/// rank, then spelling.
pub fn top_concrete(set: &WordSet, lex: &Lexicon, n: usize) -> Result<WordSet, VocabError> {
    let mut rated: Vec<(f64, u32, &String)> = set
        .words
        .iter()
        .filter_map(|w| lex.concreteness(w).map(|c| (c, lex.rank(w).unwrap_or(u32::MAX), w)))
        .collect();
    if n > rated.len() {
        return Err(VocabError::TooFewWords {
            set: format!("{} (rated)", set.name),
            needed: n,
            available: rated.len(),
        });
    }
    rated.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(b.2)));
    Ok(WordSet::new(
        format!("{}-concrete{n}", set.name),
        rated.into_iter().take(n).map(|(_, _, w)| w.clone()),
        set.provenance,
    ))
}

pub const RANDOM_ALPHABET: &[u8; 36] = b"abcdefghijklmnopqrstuvwxyz0123456789";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomStringSpec {
    pub min_len: usize,
    pub max_len: usize,
}

impl Default for RandomStringSpec {
    fn default() -> Self {
        RandomStringSpec {
            min_len: 5,
            max_len: 10,
        }
    }
}

/// `count` distinct pseudo-words over `[a-z0-9]`, none of which is in `avoid`.
pub fn gen_random_strings(
    spec: RandomStringSpec,
    count: usize,
    seed: u64,
    avoid: &HashSet<String>,
) -> Result<WordSet, VocabError> {
    if spec.min_len < 1 || spec.min_len > spec.max_len {
        return Err(VocabError::InvalidLengths {
            min: spec.min_len,
            max: spec.max_len,
        });
    }
    let mut rng = item_rng(seed);
    let mut seen = HashSet::with_capacity(count);
    let mut words = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while words.len() < count {
        if attempts >= count.saturating_mul(10) {
            return Err(VocabError::RandomStringsExhausted(count));
        }
        attempts += 1;
        let len = rng.gen_range(spec.min_len..=spec.max_len);
        let s: String = (0..len)
            .map(|_| RANDOM_ALPHABET[rng.gen_range(0..RANDOM_ALPHABET.len())] as char)
            .collect();
        if !avoid.contains(&s) && seen.insert(s.clone()) {
            words.push(s);
        }
    }
    Ok(WordSet::new("random-strings", words, Provenance::RandomStrings))
}

/// `k` distinct words, uniformly over ordered k-subsets.
pub fn sample_words<R: Rng + ?Sized>(set: &WordSet, k: usize, rng: &mut R) -> Result<Vec<String>, VocabError> {
    if k > set.len() {
        return Err(set.too_few(k));
    }
    let mut picked = index::sample(rng, set.len(), k).into_vec();
    picked.shuffle(rng);
    Ok(picked.into_iter().map(|i| set.words[i].clone()).collect())
}

/// Named word sets derived from one lexicon plus the container, room and
/// sensible-noun lists.
#[derive(Debug, Clone)]
pub struct Vocabulary {
    lexicon: Lexicon,
    sets: BTreeMap<String, WordSet>,
}

pub const WORDSET_NAMES: &[&str] = &[
    "train-all",
    "train-common",
    "train-concrete",
    "train-random",
    "val-all",
    "val-common",
    "val-concrete",
    "verbs",
    "to-verbs",
    "random-strings",
    "sensible-20",
    "concrete-200",
    "containers",
    "rooms",
];

impl Vocabulary {
    pub fn bundled() -> Self {
        Self::with_lexicon(Lexicon::bundled()).expect("bundled vocabulary derives cleanly")
    }

    /// Derives every named set from `lexicon` and the bundled container,
    /// room and sensible-noun lists.
    pub fn with_lexicon(lexicon: Lexicon) -> Result<Self, VocabError> {
        let containers = WordSet::parse("containers", CONTAINERS, Provenance::Containers)?;
        let rooms = WordSet::parse("rooms", ROOMS, Provenance::Custom)?;
        let sensible = WordSet::parse("sensible-20", SENSIBLE, Provenance::Custom)?;
        Self::from_parts(lexicon, containers, rooms, sensible)
    }

    pub fn from_parts(
        lexicon: Lexicon,
        containers: WordSet,
        rooms: WordSet,
        sensible: WordSet,
    ) -> Result<Self, VocabError> {
        let (nouns, verbs) = partition_pos(&lexicon);
        // Container and room names fill their own slots only.
        let mut reserved: HashSet<&str> = containers
            .words
            .iter()
            .chain(&rooms.words)
            .map(String::as_str)
            .collect();
        reserved.extend(TEMPLATE_WORDS.iter().copied());
        reserved.extend(Direction::ALL.iter().map(|d| d.name()));
        let nouns = WordSet::new(
            "nouns",
            nouns.words.into_iter().filter(|w| !reserved.contains(w.as_str())),
            Provenance::TrainNouns,
        );
        let verbs = WordSet::new(
            "verbs",
            verbs.words.into_iter().filter(|w| !reserved.contains(w.as_str())),
            Provenance::Verbs,
        );
        let (train, val) = split_train_val(&nouns, DEFAULT_TRAIN_FRACTION, SPLIT_SEED)?;

        let capped = |s: &WordSet| s.len().min(PRESET_SIZE);
        let rated = |s: &WordSet| {
            s.words
                .iter()
                .filter(|w| lexicon.concreteness(w).is_some())
                .count()
                .min(PRESET_SIZE)
        };

        let mut sets = BTreeMap::new();
        let mut put = |name: &str, mut set: WordSet| {
            set.name = name.to_string();
            sets.insert(name.to_string(), set);
        };

        put("train-common", top_common(&train, &lexicon, capped(&train))?);
        let train_concrete = top_concrete(&train, &lexicon, rated(&train))?;
        let mut rng = item_rng(RANDOM_NOUNS_SEED);
        put(
            "train-random",
            WordSet::new(
                "",
                sample_words(&train, capped(&train), &mut rng)?,
                Provenance::TrainNouns,
            ),
        );
        let mut rng = item_rng(CONCRETE_SUBSAMPLE_SEED);
        put(
            "concrete-200",
            WordSet::new(
                "",
                sample_words(
                    &train_concrete,
                    train_concrete.len().min(CONCRETE_SUBSAMPLE_SIZE),
                    &mut rng,
                )?,
                Provenance::TrainNouns,
            ),
        );
        put("train-concrete", train_concrete);
        put("val-common", top_common(&val, &lexicon, capped(&val))?);
        put("val-concrete", top_concrete(&val, &lexicon, rated(&val))?);
        put(
            "to-verbs",
            WordSet::new("", verbs.words.iter().map(|v| format!("to {v}")), Provenance::ToVerbs),
        );

        let mut avoid: HashSet<String> = lexicon.words().map(str::to_string).collect();
        avoid.extend(containers.words.iter().cloned());
        avoid.extend(rooms.words.iter().cloned());
        avoid.extend(TEMPLATE_WORDS.iter().map(|w| w.to_string()));
        avoid.extend(Direction::ALL.iter().map(|d| d.name().to_string()));
        put(
            "random-strings",
            gen_random_strings(RandomStringSpec::default(), PRESET_SIZE, RANDOM_STRINGS_SEED, &avoid)?,
        );
        put("train-all", train);
        put("val-all", val);
        put("verbs", verbs);
        put("containers", containers);
        put("rooms", rooms);
        put("sensible-20", sensible);

        Ok(Vocabulary { lexicon, sets })
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn wordset(&self, name: &str) -> Result<&WordSet, VocabError> {
        self.sets
            .get(name)
            .ok_or_else(|| VocabError::UnknownWordSet(name.to_string()))
    }

    /// Registers an extra set, replacing any set of the same name.
    pub fn insert(&mut self, set: WordSet) {
        self.sets.insert(set.name.clone(), set);
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.sets.keys().map(String::as_str)
    }

    /// Every word that can fill any slot.
    pub fn slot_words(&self) -> HashSet<String> {
        self.sets.values().flat_map(|s| s.words.iter().cloned()).collect()
    }
}

impl fmt::Display for WordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} words)", self.name, self.words.len())
    }
}
