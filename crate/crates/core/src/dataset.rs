//! Bundled arc presentations of small knots.
//!
//! Each entry carries the expected canonical Alexander polynomial; the test
//! suite recomputes it from the presentation rather than trusting the file.

use serde::{Deserialize, Serialize};

use crate::arc::ArcPresentation;
use crate::certify::KnotFlags;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetEntry {
    pub name: String,
    pub arcs: ArcPresentation,
    pub crossing_number: usize,
    pub flags: KnotFlags,
    /// Canonical Alexander coefficients, constant term first.
    pub expected_alexander: Vec<i64>,
    /// Where the presentation came from.
    pub source: String,
}

const DATA: &str = include_str!("../data/knots.json");

pub fn entries() -> Vec<DatasetEntry> {
    serde_json::from_str(DATA).expect("bundled dataset parses")
}

pub fn get(name: &str) -> Option<DatasetEntry> {
    entries().into_iter().find(|e| e.name == name)
}
