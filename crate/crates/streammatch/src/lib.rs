//! Semi-streaming bipartite matching: one- and two-pass algorithms that beat
//! the greedy 1/2 baseline, an exact maximum-matching oracle, seeded
//! instance and order generators, and an audited experiment harness.
//!
//! Algorithms consume edges through a [`stream::StreamSource`], which counts
//! passes and meters retained edges so every run can be checked against its
//! declared pass and memory budget.

#![forbid(unsafe_code)]

pub mod algo;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod io;
pub mod matching;
pub mod oracle;
pub mod stream;

pub use graph::{ArrivalOrder, BipartiteGraph};
pub use matching::{is_valid_matching, Matching, SemiMatching};
pub use stream::{AuditReport, StreamSource};
