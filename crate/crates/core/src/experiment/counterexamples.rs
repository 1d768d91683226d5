//! The four built-in fixtures showing that YWIC, YWIS, WOWAC and WOWAS
//! lower approximations need not be granularly representable.
//!
//! Each fixture uses one attribute, the relation `R(x, y) = 1 - |a(y) - a(x)|`,
//! the identity quantifier and the Łukasiewicz connectives.

use serde::Serialize;

use crate::approximations::{lower_classic, Aggregation, ApproximationModel, ModelKind};
use crate::connectives::TNorm;
use crate::error::Result;
use crate::measures::Quantifier;
use crate::sets::{build_relation, FuzzyRelation, FuzzySet};

/// Tolerance for fixtures whose reference values are exact decimals.
pub const EXACT_TOLERANCE: f64 = 1e-9;
/// Tolerance for fixtures whose reference values are rounded or truncated.
pub const ROUNDED_TOLERANCE: f64 = 1e-4;

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub name: &'static str,
    pub model: ModelKind,
    pub attribute: Vec<f64>,
    pub concept: Vec<f64>,
    pub expected_lower: Vec<f64>,
    pub expected_classical: Vec<f64>,
    pub expected_difference: Vec<f64>,
    pub tolerance: f64,
}

impl Counterexample {
    pub fn relation(&self) -> Result<FuzzyRelation> {
        let rows: Vec<Vec<f64>> = self.attribute.iter().map(|&v| vec![v]).collect();
        build_relation(&rows, &[1.0])
    }

    pub fn concept_set(&self) -> Result<FuzzySet> {
        FuzzySet::new(self.concept.clone())
    }

    pub fn approximation_model(&self) -> Result<ApproximationModel> {
        let q = Quantifier::Identity;
        let aggregation = match self.model {
            ModelKind::Ywic => Aggregation::Ywic(q),
            ModelKind::Ywis => Aggregation::Ywis(q),
            ModelKind::Wowac => Aggregation::Wowac(q),
            _ => Aggregation::Wowas(q),
        };
        ApproximationModel::new(aggregation, TNorm::Lukasiewicz)
    }
}

pub fn counterexamples() -> Vec<Counterexample> {
    vec![
        Counterexample {
            name: "ywic",
            model: ModelKind::Ywic,
            attribute: vec![1.0, 0.5, 1.0, 0.0, 0.0],
            concept: vec![1.0, 1.0, 1.0, 0.0, 0.0],
            expected_lower: vec![1.0, 0.75, 1.0, 0.2, 0.2],
            expected_classical: vec![1.0, 0.7, 1.0, 0.2, 0.2],
            expected_difference: vec![0.0, 0.05, 0.0, 0.0, 0.0],
            tolerance: EXACT_TOLERANCE,
        },
        Counterexample {
            name: "ywis",
            model: ModelKind::Ywis,
            attribute: vec![0.0, 0.0, 0.2, 0.91, 1.0],
            concept: vec![1.0, 1.0, 1.0, 0.0, 0.0],
            expected_lower: vec![0.91, 0.91, 0.71, 0.19747, 0.0948],
            expected_classical: vec![0.91, 0.91, 0.71, 0.18479, 0.0948],
            expected_difference: vec![0.0, 0.0, 0.0, 0.01267, 0.0],
            tolerance: ROUNDED_TOLERANCE,
        },
        Counterexample {
            name: "wowac",
            model: ModelKind::Wowac,
            attribute: vec![0.0, 0.5, 0.0],
            concept: vec![0.0, 1.0, 0.0],
            expected_lower: vec![0.2, 0.75, 0.2],
            expected_classical: vec![0.2, 0.7, 0.2],
            expected_difference: vec![0.0, 0.05, 0.0],
            tolerance: EXACT_TOLERANCE,
        },
        // reference values are the repeating decimals 0.666…, 0.44…, 0.644…, 0.022…
        Counterexample {
            name: "wowas",
            model: ModelKind::Wowas,
            attribute: vec![0.8, 0.0, 0.0, 0.0, 1.0],
            concept: vec![1.0, 1.0, 0.5, 0.5, 0.0],
            expected_lower: vec![2.0 / 3.0, 0.5, 0.5, 0.5, 4.0 / 9.0],
            expected_classical: vec![29.0 / 45.0, 0.5, 0.5, 0.5, 4.0 / 9.0],
            expected_difference: vec![1.0 / 45.0, 0.0, 0.0, 0.0, 0.0],
            tolerance: ROUNDED_TOLERANCE,
        },
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleCheck {
    pub name: String,
    pub lower: Vec<f64>,
    pub classical: Vec<f64>,
    pub difference: Vec<f64>,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

fn max_deviation(actual: &[f64], expected: &[f64]) -> f64 {
    if actual.len() != expected.len() {
        return f64::INFINITY;
    }
    actual
        .iter()
        .zip(expected)
        .map(|(a, e)| (a - e).abs())
        .fold(0.0, f64::max)
}

pub fn check_counterexample(example: &Counterexample) -> Result<CounterexampleCheck> {
    let r = example.relation()?;
    let a = example.concept_set()?;
    let model = example.approximation_model()?;
    let lower = model.lower(&r, &a)?;
    let classical = lower_classic(&r, &lower, model.implicator())?;
    let difference: Vec<f64> = lower
        .degrees()
        .iter()
        .zip(classical.degrees())
        .map(|(l, c)| l - c)
        .collect();
    let deviation = max_deviation(lower.degrees(), &example.expected_lower)
        .max(max_deviation(
            classical.degrees(),
            &example.expected_classical,
        ))
        .max(max_deviation(&difference, &example.expected_difference));
    Ok(CounterexampleCheck {
        name: example.name.to_string(),
        lower: lower.into_degrees(),
        classical: classical.into_degrees(),
        difference,
        max_deviation: deviation,
        tolerance: example.tolerance,
        passed: deviation <= example.tolerance,
    })
}

/// Runs all four fixtures.
pub fn reproduce_counterexamples() -> Result<Vec<CounterexampleCheck>> {
    counterexamples().iter().map(check_counterexample).collect()
}
