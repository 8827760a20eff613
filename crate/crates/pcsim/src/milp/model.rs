//! Solver-agnostic MILP representation: a variable table, a linear
//! objective, and tagged constraint rows.

use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    Continuous,
    Binary,
}

#[derive(Debug, Clone)]
pub struct MilpVar {
    pub name: String,
    pub kind: VarKind,
    pub lb: f64,
    pub ub: f64,
    /// Objective coefficient (minimization).
    pub obj: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

/// One constraint row. `provenance` names the equation of the day-ahead
/// formulation the row encodes (e.g. "C.35"), an extension tag ("ext.*"),
/// or "plumbing".
#[derive(Debug, Clone)]
pub struct MilpRow {
    pub name: String,
    pub provenance: String,
    /// (variable index, coefficient); indices unique within a row.
    pub terms: Vec<(usize, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

#[derive(Debug, Clone, Default)]
pub struct MilpModel {
    pub vars: Vec<MilpVar>,
    pub rows: Vec<MilpRow>,
    /// Constant added to the linear objective (end-of-horizon stored-energy
    /// credit is defined relative to the minimum storage level).
    pub objective_offset: f64,
    index: HashMap<String, usize>,
}

impl MilpModel {
    pub fn new() -> Self {
        MilpModel::default()
    }

    pub fn add_var(&mut self, name: String, kind: VarKind, lb: f64, ub: f64, obj: f64) -> usize {
        debug_assert!(
            !self.index.contains_key(&name),
            "duplicate variable name {name}"
        );
        let id = self.vars.len();
        self.index.insert(name.clone(), id);
        self.vars.push(MilpVar { name, kind, lb, ub, obj });
        id
    }

    pub fn add_row(
        &mut self,
        name: String,
        provenance: &str,
        terms: Vec<(usize, f64)>,
        sense: Sense,
        rhs: f64,
    ) {
        self.rows.push(MilpRow {
            name,
            provenance: provenance.to_string(),
            terms,
            sense,
            rhs,
        });
    }

    pub fn var_id(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn num_binaries(&self) -> usize {
        self.vars.iter().filter(|v| v.kind == VarKind::Binary).count()
    }

    /// Evaluate the linear objective (including the offset) at a point.
    pub fn objective_at(&self, values: &[f64]) -> f64 {
        self.objective_offset
            + self
                .vars
                .iter()
                .zip(values)
                .map(|(v, x)| v.obj * x)
                .sum::<f64>()
    }

    /// Signed residual of a row at a point: positive means violated.
    /// For equalities the absolute mismatch is returned.
    pub fn row_violation(&self, row: &MilpRow, values: &[f64]) -> f64 {
        let lhs: f64 = row.terms.iter().map(|&(j, a)| a * values[j]).sum();
        match row.sense {
            Sense::Le => lhs - row.rhs,
            Sense::Ge => row.rhs - lhs,
            Sense::Eq => (lhs - row.rhs).abs(),
        }
    }

    /// Largest bound violation over all variables at a point.
    pub fn bound_violation(&self, values: &[f64]) -> f64 {
        self.vars
            .iter()
            .zip(values)
            .map(|(v, &x)| (v.lb - x).max(x - v.ub).max(0.0))
            .fold(0.0, f64::max)
    }
}

/// Deterministic variable names shared by the builder, the verifier, the
/// state carryover, and the exporters.
pub mod names {
    use crate::system::{ReserveDirection, ReserveProduct, StartupKind};

    pub fn online(id: &str, t: usize) -> String {
        format!("s:{id}:{t}")
    }
    pub fn phase_sync(id: &str, t: usize) -> String {
        format!("ssyn:{id}:{t}")
    }
    pub fn phase_soak(id: &str, t: usize) -> String {
        format!("ssoak:{id}:{t}")
    }
    pub fn phase_dsp(id: &str, t: usize) -> String {
        format!("sdsp:{id}:{t}")
    }
    pub fn phase_desync(id: &str, t: usize) -> String {
        format!("sdes:{id}:{t}")
    }
    pub fn startup(id: &str, t: usize) -> String {
        format!("y:{id}:{t}")
    }
    pub fn startup_class(id: &str, kind: StartupKind, t: usize) -> String {
        format!("yg:{id}:{}:{t}", kind.label())
    }
    pub fn shutdown(id: &str, t: usize) -> String {
        format!("z:{id}:{t}")
    }
    pub fn power(id: &str, t: usize) -> String {
        format!("p:{id}:{t}")
    }
    pub fn power_sync(id: &str, t: usize) -> String {
        format!("psyn:{id}:{t}")
    }
    pub fn power_soak(id: &str, t: usize) -> String {
        format!("psoak:{id}:{t}")
    }
    pub fn power_desync(id: &str, t: usize) -> String {
        format!("pdes:{id}:{t}")
    }
    pub fn block(id: &str, m: usize, t: usize) -> String {
        format!("q:{id}:{m}:{t}")
    }
    pub fn unit_reserve(id: &str, e: ReserveProduct, d: ReserveDirection, t: usize) -> String {
        format!("r:{id}:{}{}:{t}", e.label(), d.label())
    }
    pub fn hydro_offer(id: &str, h: usize, t: usize) -> String {
        format!("rho:{id}:{h}:{t}")
    }
    pub fn hydro_mandatory(id: &str, t: usize) -> String {
        format!("omega:{id}:{t}")
    }
    pub fn ohps_charge(id: &str, t: usize) -> String {
        format!("ohc:{id}:{t}")
    }
    pub fn ohps_discharge(id: &str, t: usize) -> String {
        format!("ohd:{id}:{t}")
    }
    pub fn ohps_charge_on(id: &str, t: usize) -> String {
        format!("sohc:{id}:{t}")
    }
    pub fn ohps_discharge_on(id: &str, t: usize) -> String {
        format!("sohd:{id}:{t}")
    }
    pub fn ohps_soc(id: &str, t: usize) -> String {
        format!("eoh:{id}:{t}")
    }
    pub fn storage_charge(id: &str, t: usize) -> String {
        format!("c:{id}:{t}")
    }
    pub fn storage_discharge(id: &str, t: usize) -> String {
        format!("d:{id}:{t}")
    }
    pub fn storage_charge_on(id: &str, t: usize) -> String {
        format!("sc:{id}:{t}")
    }
    pub fn storage_discharge_on(id: &str, t: usize) -> String {
        format!("sd:{id}:{t}")
    }
    pub fn storage_soc(id: &str, t: usize) -> String {
        format!("e:{id}:{t}")
    }
    pub fn res_power(label: &str, idx: usize, t: usize) -> String {
        format!("pres:{label}{idx}:{t}")
    }
    pub fn curtailment(label: &str, idx: usize, t: usize) -> String {
        format!("x:{label}{idx}:{t}")
    }
    pub fn import_total(id: &str, t: usize) -> String {
        format!("imp:{id}:{t}")
    }
    pub fn export_total(id: &str, t: usize) -> String {
        format!("exp:{id}:{t}")
    }
    pub fn import_block(id: &str, g: usize, t: usize) -> String {
        format!("qimp:{id}:{g}:{t}")
    }
    pub fn export_block(id: &str, g: usize, t: usize) -> String {
        format!("qexp:{id}:{g}:{t}")
    }
    pub fn demand_response(t: usize) -> String {
        format!("dr:{t}")
    }
    pub fn ens(t: usize) -> String {
        format!("ens:{t}")
    }
    pub fn surplus(t: usize) -> String {
        format!("exc:{t}")
    }
    pub fn reserve_slack(e: ReserveProduct, d: ReserveDirection, t: usize) -> String {
        format!("slr:{}{}:{t}", e.label(), d.label())
    }
}
