//! Exact coloring, list-coloring and DP-coloring checks for small graphs.

pub mod coloring;
pub mod dp;
pub mod graph;
pub mod lemma;
pub mod limits;
pub mod list;
pub mod report;

pub use coloring::{ColoringVerdict, Deletion, Polynomial};
pub use dp::{CanonicalLabeling, Cover, DpError};
pub use graph::{EkabParams, Graph, GraphError, NamedGraph};
pub use lemma::LemmaReport;
pub use limits::{Limits, SearchOutcome};
pub use list::{BlockSystem, ListAssignment, ListError};
pub use report::{Answer, VerdictDoc};
