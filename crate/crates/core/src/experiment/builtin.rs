//! Datasets bundled with the crate.

use super::dataset::{Dataset, LoadOptions};
use crate::error::{Error, Result};

/// One attribute and a two-class label whose class `1` is the concept of the
/// YWIC counterexample.
pub const EXAMPLE1_CSV: &str = include_str!("../../data/example1.csv");
/// Ten instances, two numeric features, two overlapping classes.
pub const SYNTHETIC_CSV: &str = include_str!("../../data/synthetic.csv");

pub const NAMES: [&str; 2] = ["example1", "synthetic"];

/// Looks up a bundled dataset by name.
pub fn builtin_dataset(name: &str) -> Result<Dataset> {
    let text = match name {
        "example1" => EXAMPLE1_CSV,
        "synthetic" => SYNTHETIC_CSV,
        other => {
            return Err(Error::Dataset(format!(
                "no bundled dataset '{other}' (available: {})",
                NAMES.join(", ")
            )))
        }
    };
    Dataset::from_reader(
        name,
        &format!("builtin:{name}"),
        text.as_bytes(),
        &LoadOptions::default(),
    )
}
