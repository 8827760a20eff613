//! Closed-form counts of variables, binaries, and rows of the daily MILP,
//! written independently of the builder loops. The builder tests assert
//! that the two agree exactly.

use crate::system::DayInput;
use crate::HOURS_PER_DAY;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelCensus {
    pub variables: usize,
    pub binaries: usize,
    pub rows: usize,
}

/// Count the daily model for the given input sizes.
///
/// Per hour and thermal unit (G startup classes, M cost blocks):
///   binaries  7 + G            (s, s_syn, s_soak, s_dsp, s_des, y, z, y_g)
///   continuous 4 + M + 6       (p, p_syn, p_soak, p_des, q_m, r)
///   rows      23 + (G-1) + M   (C.11-C.13: 3, C.14: G-1, C.15-C.20: 6,
///                               C.21: 2, C.22-C.23: 2, C.24: 1, C.25: M,
///                               C.26-C.28: 3, C.60: 6)
/// Per hour and hydro unit (H offers):
///   binaries  1 (+2 if pumping)
///   continuous 2 + H + 6 (+3 if pumping)
///   rows      7 + {2 without pumping | 12 with}  (C.40, C.60: 6; then
///             C.22-C.23 or C.43-C.51)
///   plus per unit and day: 1 + H budget rows (C.41, C.42)
/// Per hour and storage unit:
///   binaries 2; continuous 9; rows 10 + {2 BESS | 8 PHS}
///   (C.31-C.35: 8, ext: 2, then C.36-C.37 or C.38-C.39 + C.61: 6)
/// Per hour and interconnector (Gi import, Ge export blocks):
///   continuous 2 + Gi + Ge; rows 4 + Gi + Ge
/// Per hour and renewable technology: continuous 2; rows 1 (C.29), plus per
/// hour max(0, curtailable-with-availability - 1) chain rows (C.30).
/// System-wide per hour: continuous 9 (dr, ens, surplus, 6 slacks); rows 8
/// (C.9, C.10 x6, C.52); plus one C.53 row per day.
pub fn census(day: &DayInput) -> ModelCensus {
    let sys = day.model;
    let t = HOURS_PER_DAY;
    let mut variables = 0;
    let mut binaries = 0;
    let mut rows = 0;

    for u in &sys.thermal {
        let g = u.startup_types.len();
        let m_ = u.cost_blocks.len();
        binaries += t * (7 + g);
        variables += t * (7 + g + 4 + m_ + 6);
        rows += t * (23 + (g - 1) + m_);
    }
    for h in &sys.hydro {
        let hh = h.offers.len();
        let pumped = h.pump.is_some();
        binaries += t * if pumped { 3 } else { 1 };
        variables += t * (1 + 2 + hh + 6 + if pumped { 5 } else { 0 });
        rows += t * (7 + if pumped { 12 } else { 2 });
        rows += 1 + hh;
    }
    for s in &sys.storage {
        binaries += t * 2;
        variables += t * 11;
        let mode = match s.tech {
            crate::system::StorageTech::Bess => 2,
            crate::system::StorageTech::Phs => 8,
        };
        rows += t * (10 + mode);
    }
    for ic in &sys.interconnectors {
        let gi = ic.import_blocks.len();
        let ge = ic.export_blocks.len();
        variables += t * (2 + gi + ge);
        rows += t * (4 + gi + ge);
    }
    for _ in &sys.renewables {
        variables += t * 2;
        rows += t;
    }
    for hour in 0..t {
        let active = sys
            .renewables
            .iter()
            .enumerate()
            .filter(|(ri, r)| r.curtailable && day.res_availability[*ri][hour] > 0.0)
            .count();
        rows += active.saturating_sub(1);
    }
    variables += t * 9;
    rows += t * 8 + 1;

    ModelCensus { variables, binaries, rows }
}
