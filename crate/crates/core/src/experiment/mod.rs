//! Dataset ingestion, model/α sweeps, report emission and the built-in
//! counterexample fixtures.

pub mod builtin;
pub mod counterexamples;
pub mod dataset;
pub mod report;
pub mod smoke;
pub mod sweep;

pub use builtin::builtin_dataset;
pub use counterexamples::{reproduce_counterexamples, CounterexampleCheck};
pub use dataset::{load_dataset, Dataset, LabelColumn, LoadOptions, Scale};
pub use report::{emit_report, ReportFormat};
pub use sweep::{
    run_sweep, sweep_concepts, Direction, QuantifierFamily, SweepCell, SweepConfig, SweepReport,
};
