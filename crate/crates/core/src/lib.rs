//! Fuzzy quantifier-based fuzzy rough sets.
//!
//! Lower and upper approximations of fuzzy sets with respect to fuzzy
//! `T`-equivalence relations, aggregated by Choquet, Sugeno, OWA, WOWA or
//! YWI quantifiers, together with tools to check whether the results are
//! granularly representable.
//!
//! ```
//! use fqfrs::{build_relation, ApproximationModel, Aggregation, FuzzySet, Quantifier, TNorm};
//! use fqfrs::granularity::is_granularly_representable;
//!
//! let attribute = [1.0, 0.5, 1.0, 0.0, 0.0];
//! let rows: Vec<Vec<f64>> = attribute.iter().map(|&v| vec![v]).collect();
//! let r = build_relation(&rows, &[1.0]).unwrap();
//! let a = FuzzySet::crisp(5, &[0, 1, 2]).unwrap();
//!
//! let model = ApproximationModel::new(Aggregation::Ywic(Quantifier::Identity), TNorm::Lukasiewicz).unwrap();
//! let lower = model.lower(&r, &a).unwrap();
//! assert!((lower.get(1) - 0.75).abs() < 1e-12);
//! assert!(!is_granularly_representable(&r, &lower, &TNorm::Lukasiewicz, 1e-9).unwrap());
//! ```

pub mod approximations;
pub mod connectives;
pub mod error;
pub mod experiment;
pub mod granularity;
pub mod integrals;
pub mod measures;
pub mod sets;

pub use approximations::{
    lower_approx, lower_classic, upper_approx, upper_classic, Aggregation, ApproximationModel,
    ApproximationResult, ModelKind,
};
pub use connectives::{check_d_convex, residual_implicator, CustomTNorm, Implicator, TNorm};
pub use error::{Error, Result};
pub use granularity::{
    consistency_report, granular_decomposition, is_granularly_representable, ConsistencyReport,
};
pub use integrals::{choquet, owa, sugeno};
pub use measures::{
    owa_weights_to_measure, symmetric_measure, wowa_measure, ywi_measure, zadeh_s, MonotoneMeasure,
    Quantifier, WeightVector,
};
pub use sets::{build_relation, fuzzy_cardinality, FuzzyRelation, FuzzySet, Universe};
