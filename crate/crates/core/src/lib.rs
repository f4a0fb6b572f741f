//! Seeded generators, exact symbolic oracles, and scoring for text-based
//! reasoning scenarios: objects moved between containers, routes through
//! grid maps, and the composite carry-and-place task.
//!
//! The crate is organized bottom-up:
//!
//! * [`vocab`] loads a lexicon and derives the named word sets used to fill
//!   template slots.
//! * [`world`] holds the structured worlds and their oracles.
//! * [`render`] turns worlds into English (or gibberish) text and parses
//!   final-state sentences back.
//! * [`scenariogen`] samples worlds and packages them as [`Scenario`]s.
//! * [`metrics`] scores predictions against targets.
//! * [`harness`] handles files, presets, grids, curricula and baselines.

pub mod error;
pub mod harness;
pub mod metrics;
pub mod render;
pub mod rng;
pub mod scenariogen;
pub mod vocab;
pub mod world;

pub use error::{Error, Result};
pub use scenariogen::{GenConfig, Scenario, Task};
pub use vocab::Vocabulary;
