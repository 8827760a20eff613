//! Portfolio enumeration, parallel scenario batteries, and report output.

mod portfolio;
mod report;
mod run;
mod spec;

pub use portfolio::{PortfolioEntry, StoragePortfolio, DEFAULT_RESERVE_ENERGY_BUFFER};
pub use report::emit_reports;
pub use run::{run_sweep, ScenarioKpis, ScenarioRow, SweepError, SweepResult};
pub use spec::{enumerate_portfolios, SpecError, SweepSpec};
