//! Production-cost simulation of a power system with electricity storage,
//! plus the economic machinery to value candidate storage portfolios.
//!
//! The pipeline: a [`system::SystemModel`] describes every asset and the
//! annual time series; [`milp`] turns one day of it into a mixed-integer
//! program; [`solver`] solves and independently verifies that program;
//! [`annual`] chains 365 daily solves with state carryover; [`economics`]
//! converts the annual results into net-benefit figures; [`sweep`] drives
//! whole portfolio grids through all of the above.

pub mod annual;
pub mod economics;
pub mod milp;
pub mod solver;
pub mod sweep;
pub mod system;

/// Hours per optimization slice. The daily horizon is fixed; all index
/// arithmetic in the MILP builder relies on it.
pub const HOURS_PER_DAY: usize = 24;
/// Days per simulated year (no leap handling; series carry 8760 rows).
pub const DAYS_PER_YEAR: usize = 365;
/// Hours per simulated year.
pub const HOURS_PER_YEAR: usize = HOURS_PER_DAY * DAYS_PER_YEAR;
