//! Solver-independent solution checking: pure row arithmetic over the
//! original model, never a solver call.

use std::collections::BTreeMap;
use std::fmt;

use crate::milp::{MilpModel, VarKind};

use super::backend::MilpSolution;

/// Residuals grouped by provenance tag, plus the independent objective
/// recomputation.
#[derive(Debug, Clone)]
pub struct ResidualReport {
    /// Largest violation per provenance tag (0 when satisfied).
    pub max_by_tag: BTreeMap<String, f64>,
    /// Row with the largest violation, if any row is violated beyond tol.
    pub worst_row: Option<(String, f64)>,
    /// Largest variable-bound violation.
    pub bound_violation: f64,
    /// Largest distance of a binary variable from {0, 1} after rounding.
    pub integrality_violation: f64,
    /// Objective as carried by the solution.
    pub objective_reported: f64,
    /// Objective recomputed from the cost coefficients.
    pub objective_recomputed: f64,
    pub tol: f64,
    pub pass: bool,
}

impl fmt::Display for ResidualReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verification {} (tol {:.1e})", if self.pass { "PASS" } else { "FAIL" }, self.tol)?;
        for (tag, r) in &self.max_by_tag {
            writeln!(f, "  {tag}: max residual {r:.3e}")?;
        }
        writeln!(f, "  bounds: {:.3e}  integrality: {:.3e}", self.bound_violation, self.integrality_violation)?;
        writeln!(
            f,
            "  objective reported {:.6} vs recomputed {:.6}",
            self.objective_reported, self.objective_recomputed
        )?;
        if let Some((name, r)) = &self.worst_row {
            writeln!(f, "  worst row {name}: {r:.3e}")?;
        }
        Ok(())
    }
}

/// Check a solution against every row of the model it was solved from.
/// Binary values within 1e-6 of an integer are rounded before checking.
pub fn verify_solution(model: &MilpModel, sol: &MilpSolution, tol: f64) -> ResidualReport {
    assert_eq!(sol.values.len(), model.vars.len(), "variable sets must match");
    let mut values = sol.values.clone();
    let mut integrality: f64 = 0.0;
    for (v, x) in model.vars.iter().zip(values.iter_mut()) {
        if v.kind == VarKind::Binary {
            let r = x.round();
            if (*x - r).abs() <= 1e-6 {
                *x = r;
            }
            integrality = integrality.max((*x - x.round()).abs());
        }
    }

    let mut max_by_tag: BTreeMap<String, f64> = BTreeMap::new();
    let mut worst: Option<(String, f64)> = None;
    for row in &model.rows {
        let viol = model.row_violation(row, &values).max(0.0);
        let entry = max_by_tag.entry(row.provenance.clone()).or_insert(0.0);
        if viol > *entry {
            *entry = viol;
        }
        if viol > tol && worst.as_ref().map_or(true, |(_, w)| viol > *w) {
            worst = Some((row.name.clone(), viol));
        }
    }
    let bound_violation = model.bound_violation(&values);
    let objective_recomputed = model.objective_at(&values);
    let obj_scale = 1.0_f64.max(objective_recomputed.abs());
    let obj_ok = (objective_recomputed - sol.objective).abs() <= tol * obj_scale;
    let rows_ok = max_by_tag.values().all(|&r| r <= tol);
    let pass = rows_ok && bound_violation <= tol && integrality <= tol && obj_ok;

    ResidualReport {
        max_by_tag,
        worst_row: worst,
        bound_violation,
        integrality_violation: integrality,
        objective_reported: sol.objective,
        objective_recomputed,
        tol,
        pass,
    }
}
