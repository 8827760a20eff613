//! Investment economics: annualization of overnight costs, storage fixed
//! costs with mid-life replacement, load-leveling capacity credit, and the
//! net-benefit ledger against both counterfactuals.

mod annuity;
mod credit;
mod ledger;

pub use annuity::{annualized_cost, storage_fixed_cost, AnnuityError};
pub use credit::{capacity_credit, capacity_credit_pooled, portfolio_peak_feasible};
pub use ledger::{net_benefit, EconomicOutcome, LedgerError};
