//! Pluggable MIP engines behind a narrow interface.

use std::time::Instant;

use thiserror::Error;

use crate::milp::{MilpModel, Sense, SolveOptions, VarKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    /// Proven optimal (within numerical tolerance) at gap 0.
    Optimal,
    /// Stopped at the configured relative gap with an incumbent.
    GapFeasible,
    /// Stopped at the time limit with an incumbent.
    TimeLimit,
}

impl SolveStatus {
    pub fn label(&self) -> &'static str {
        match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::GapFeasible => "gap-feasible",
            SolveStatus::TimeLimit => "time-limit",
        }
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("solver backend '{0}' unavailable")]
    Unavailable(String),
    #[error("model infeasible")]
    Infeasible,
    #[error("time limit reached with no incumbent")]
    TimeLimitNoIncumbent,
    #[error("solver failure: {0}")]
    Backend(String),
}

/// A solved model: values are aligned with the variable table of the
/// [`MilpModel`] that produced them.
#[derive(Debug, Clone)]
pub struct MilpSolution {
    /// Objective as reported by the engine, plus the model's constant offset.
    pub objective: f64,
    pub values: Vec<f64>,
    pub status: SolveStatus,
    /// Relative gap the run was configured to stop at.
    pub rel_gap: f64,
    pub wall_time_secs: f64,
}

impl MilpSolution {
    pub fn value(&self, model: &MilpModel, name: &str) -> f64 {
        model
            .var_id(name)
            .map(|i| self.values[i])
            .unwrap_or_else(|| panic!("unknown variable {name}"))
    }
}

/// The narrow engine interface: load the matrix, set termination options,
/// solve, read values.
pub trait MipBackend {
    fn name(&self) -> &'static str;
    fn solve_raw(&self, model: &MilpModel, opts: &SolveOptions) -> Result<MilpSolution, SolveError>;
}

pub struct HighsBackend;

impl MipBackend for HighsBackend {
    fn name(&self) -> &'static str {
        "highs"
    }

    fn solve_raw(&self, model: &MilpModel, opts: &SolveOptions) -> Result<MilpSolution, SolveError> {
        let start = Instant::now();
        let mut pb = highs::RowProblem::default();
        let cols: Vec<highs::Col> = model
            .vars
            .iter()
            .map(|v| match v.kind {
                VarKind::Continuous => pb.add_column(v.obj, v.lb..v.ub),
                VarKind::Binary => pb.add_integer_column(v.obj, v.lb..=v.ub),
            })
            .collect();
        for row in &model.rows {
            let factors: Vec<(highs::Col, f64)> =
                row.terms.iter().map(|&(j, a)| (cols[j], a)).collect();
            match row.sense {
                Sense::Le => pb.add_row(..=row.rhs, factors),
                Sense::Ge => pb.add_row(row.rhs.., factors),
                Sense::Eq => pb.add_row(row.rhs..=row.rhs, factors),
            };
        }
        let mut hm = pb.optimise(highs::Sense::Minimise);
        hm.set_option("output_flag", false);
        hm.set_option("threads", opts.threads as i32);
        hm.set_option("mip_rel_gap", opts.mip_rel_gap);
        hm.set_option("time_limit", opts.time_limit_secs);
        // determinism: keep presolve/heuristics but a single thread
        let solved = hm.solve();
        let wall = start.elapsed().as_secs_f64();
        use highs::HighsModelStatus as H;
        let status = match solved.status() {
            H::Optimal => {
                if opts.mip_rel_gap <= 1e-9 {
                    SolveStatus::Optimal
                } else {
                    SolveStatus::GapFeasible
                }
            }
            H::Infeasible => return Err(SolveError::Infeasible),
            H::ReachedTimeLimit => SolveStatus::TimeLimit,
            other => return Err(SolveError::Backend(format!("status {other:?}"))),
        };
        let solution = solved.get_solution();
        let values: Vec<f64> = solution.columns().to_vec();
        if values.len() != model.vars.len() {
            if status == SolveStatus::TimeLimit {
                return Err(SolveError::TimeLimitNoIncumbent);
            }
            return Err(SolveError::Backend("no solution values returned".into()));
        }
        let objective = model.objective_at(&values);
        Ok(MilpSolution {
            objective,
            values,
            status,
            rel_gap: opts.mip_rel_gap,
            wall_time_secs: wall,
        })
    }
}

/// Solve with the backend selected by the `PCSIM_SOLVER` environment
/// variable (default `highs`). Binary values are snapped to {0, 1} when
/// within 1e-6 before the solution is returned.
pub fn solve(model: &MilpModel, opts: &SolveOptions) -> Result<MilpSolution, SolveError> {
    let choice = std::env::var("PCSIM_SOLVER").unwrap_or_else(|_| "highs".into());
    let backend: Box<dyn MipBackend> = match choice.as_str() {
        "highs" => Box::new(HighsBackend),
        other => return Err(SolveError::Unavailable(other.to_string())),
    };
    let mut sol = backend.solve_raw(model, opts)?;
    for (v, x) in model.vars.iter().zip(sol.values.iter_mut()) {
        if v.kind == VarKind::Binary {
            let r = x.round();
            if (*x - r).abs() <= 1e-6 {
                *x = r;
            }
        }
    }
    sol.objective = model.objective_at(&sol.values);
    Ok(sol)
}
