//! Library backing the `krein` CLI: JSON report helpers, scenario
//! parsing/execution, and the seeded randomized invariant suites.

pub mod report;
pub mod scenario;
pub mod suites;
