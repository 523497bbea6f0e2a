//! Cross-validation, F1 metrics, the granularity experiment and report output.

mod cv;
mod folds;
mod metrics;
mod report;

pub use cv::{
    aggregate_scores, cross_validate, evaluate_granularity, fold_vocabulary, granularity_experiment,
    EvalConfig, EvalReport, FoldSummary, PartitionSummary, SelectionMode,
};
pub use folds::{fold_assignment, kfold_split, Fold};
pub use metrics::{f1_scores, ClassScore, ConfusionMatrix, F1Scores};
pub use report::{Provenance, ReportDocument, ReportRow, COLUMNS};
