//! Problem-file export (free-format MPS and CPLEX-style LP) and a small
//! free-MPS reader used for round-trip checks.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io;
use std::path::Path;

use crate::milp::{MilpModel, Sense, VarKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Mps,
    Lp,
}

/// Write the model to `path` in the requested format.
pub fn export_problem(model: &MilpModel, path: &Path, format: ExportFormat) -> io::Result<()> {
    let text = match format {
        ExportFormat::Mps => write_mps(model),
        ExportFormat::Lp => write_lp(model),
    };
    std::fs::write(path, text)
}

fn num(x: f64) -> String {
    // shortest exact-roundtrip decimal
    format!("{x}")
}

/// Free-format MPS. Column entries are grouped per variable; binaries sit
/// inside INTORG/INTEND marker pairs and additionally get explicit BV
/// bounds. The objective constant is encoded as a RHS entry on the COST row
/// with flipped sign, per MPS convention.
pub fn write_mps(model: &MilpModel) -> String {
    let mut out = String::new();
    out.push_str("NAME uced_day\n");
    out.push_str("ROWS\n");
    out.push_str(" N COST\n");
    for row in &model.rows {
        let code = match row.sense {
            Sense::Le => 'L',
            Sense::Ge => 'G',
            Sense::Eq => 'E',
        };
        let _ = writeln!(out, " {code} {}", row.name);
    }

    // per-column coefficient lists, in variable order
    let mut col_entries: Vec<Vec<(usize, f64)>> = vec![Vec::new(); model.vars.len()];
    for (ri, row) in model.rows.iter().enumerate() {
        for &(j, a) in &row.terms {
            col_entries[j].push((ri, a));
        }
    }
    out.push_str("COLUMNS\n");
    let mut in_int = false;
    let mut marker = 0usize;
    for (j, var) in model.vars.iter().enumerate() {
        let want_int = var.kind == VarKind::Binary;
        if want_int != in_int {
            let kind = if want_int { "'INTORG'" } else { "'INTEND'" };
            let _ = writeln!(out, "    MARKER{marker} 'MARKER' {kind}");
            marker += 1;
            in_int = want_int;
        }
        if var.obj != 0.0 {
            let _ = writeln!(out, "    {} COST {}", var.name, num(var.obj));
        }
        for &(ri, a) in &col_entries[j] {
            let _ = writeln!(out, "    {} {} {}", var.name, model.rows[ri].name, num(a));
        }
        if var.obj == 0.0 && col_entries[j].is_empty() {
            // keep the column visible so the round-trip preserves the table
            let _ = writeln!(out, "    {} COST 0", var.name);
        }
    }
    if in_int {
        let _ = writeln!(out, "    MARKER{marker} 'MARKER' 'INTEND'");
    }

    out.push_str("RHS\n");
    if model.objective_offset != 0.0 {
        let _ = writeln!(out, "    RHS COST {}", num(-model.objective_offset));
    }
    for row in &model.rows {
        if row.rhs != 0.0 {
            let _ = writeln!(out, "    RHS {} {}", row.name, num(row.rhs));
        }
    }

    out.push_str("BOUNDS\n");
    for var in &model.vars {
        match var.kind {
            VarKind::Binary => {
                let _ = writeln!(out, " BV BND {}", var.name);
            }
            VarKind::Continuous => {
                if var.lb == var.ub {
                    let _ = writeln!(out, " FX BND {} {}", var.name, num(var.lb));
                    continue;
                }
                if var.lb != 0.0 {
                    let _ = writeln!(out, " LO BND {} {}", var.name, num(var.lb));
                }
                if var.ub.is_finite() {
                    let _ = writeln!(out, " UP BND {} {}", var.name, num(var.ub));
                }
            }
        }
    }
    out.push_str("ENDATA\n");
    out
}

fn lp_name(name: &str) -> String {
    name.replace([':', '+'], "_")
}

/// CPLEX-style LP text. Variable names have characters the format reserves
/// replaced by underscores, so this export is for inspection, not identity
/// round-trips (use MPS for those).
pub fn write_lp(model: &MilpModel) -> String {
    let mut out = String::new();
    out.push_str("Minimize\n obj:");
    let mut first = true;
    for var in &model.vars {
        if var.obj == 0.0 {
            continue;
        }
        let sign = if var.obj < 0.0 { " - " } else if first { " " } else { " + " };
        let _ = write!(out, "{sign}{} {}", num(var.obj.abs()), lp_name(&var.name));
        first = false;
    }
    if model.objective_offset != 0.0 {
        let sign = if model.objective_offset < 0.0 { " - " } else { " + " };
        let _ = write!(out, "{sign}{}", num(model.objective_offset.abs()));
    }
    out.push_str("\nSubject To\n");
    for row in &model.rows {
        let _ = write!(out, " {}:", lp_name(&row.name));
        let mut first = true;
        for &(j, a) in &row.terms {
            let sign = if a < 0.0 { " - " } else if first { " " } else { " + " };
            let _ = write!(out, "{sign}{} {}", num(a.abs()), lp_name(&model.vars[j].name));
            first = false;
        }
        let op = match row.sense {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        };
        let _ = writeln!(out, " {op} {}", num(row.rhs));
    }
    out.push_str("Bounds\n");
    for var in &model.vars {
        if var.kind == VarKind::Binary {
            continue;
        }
        if var.lb == var.ub {
            let _ = writeln!(out, " {} = {}", lp_name(&var.name), num(var.lb));
        } else if var.ub.is_finite() {
            let _ = writeln!(out, " {} <= {} <= {}", num(var.lb), lp_name(&var.name), num(var.ub));
        } else if var.lb != 0.0 {
            let _ = writeln!(out, " {} >= {}", lp_name(&var.name), num(var.lb));
        }
    }
    out.push_str("Binaries\n");
    for var in &model.vars {
        if var.kind == VarKind::Binary {
            let _ = writeln!(out, " {}", lp_name(&var.name));
        }
    }
    out.push_str("End\n");
    out
}

/// Parse free-format MPS produced by [`write_mps`] (reference reader for
/// the export round-trip). Row provenance is not part of the format and
/// comes back as "mps".
pub fn read_mps(text: &str) -> Result<MilpModel, String> {
    #[derive(PartialEq)]
    enum Section {
        None,
        Rows,
        Columns,
        Rhs,
        Bounds,
        Done,
    }
    let mut m = MilpModel::new();
    let mut row_sense: Vec<Sense> = Vec::new();
    let mut row_index: HashMap<String, usize> = HashMap::new();
    let mut row_terms: Vec<Vec<(usize, f64)>> = Vec::new();
    let mut row_rhs: Vec<f64> = Vec::new();
    let mut row_names: Vec<String> = Vec::new();
    let mut obj_offset = 0.0;
    let mut section = Section::None;
    let mut in_int = false;

    // column accumulation: name -> (kind, obj, entries)
    let mut col_order: Vec<String> = Vec::new();
    let mut cols: HashMap<String, (VarKind, f64, Vec<(usize, f64)>)> = HashMap::new();
    let mut bounds: HashMap<String, (f64, f64)> = HashMap::new();

    for raw in text.lines() {
        let line = raw.trim_end();
        if line.is_empty() || line.starts_with('*') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if !raw.starts_with(' ') {
            match toks[0] {
                "NAME" => continue,
                "ROWS" => section = Section::Rows,
                "COLUMNS" => section = Section::Columns,
                "RHS" => section = Section::Rhs,
                "RANGES" => return Err("RANGES not supported".into()),
                "BOUNDS" => section = Section::Bounds,
                "ENDATA" => section = Section::Done,
                other => return Err(format!("unknown section {other}")),
            }
            continue;
        }
        match section {
            Section::Rows => {
                let sense = match toks[0] {
                    "N" => continue,
                    "L" => Sense::Le,
                    "G" => Sense::Ge,
                    "E" => Sense::Eq,
                    other => return Err(format!("bad row type {other}")),
                };
                row_index.insert(toks[1].to_string(), row_sense.len());
                row_names.push(toks[1].to_string());
                row_sense.push(sense);
                row_terms.push(Vec::new());
                row_rhs.push(0.0);
            }
            Section::Columns => {
                if toks.len() >= 3 && toks[1] == "'MARKER'" {
                    match toks[2] {
                        "'INTORG'" => in_int = true,
                        "'INTEND'" => in_int = false,
                        other => return Err(format!("bad marker {other}")),
                    }
                    continue;
                }
                let name = toks[0].to_string();
                let entry = cols.entry(name.clone()).or_insert_with(|| {
                    col_order.push(name.clone());
                    (
                        if in_int { VarKind::Binary } else { VarKind::Continuous },
                        0.0,
                        Vec::new(),
                    )
                });
                let mut i = 1;
                while i + 2 <= toks.len() {
                    let rname = toks[i];
                    let val: f64 = toks[i + 1].parse().map_err(|e| format!("bad number: {e}"))?;
                    if rname == "COST" {
                        entry.1 += val;
                    } else {
                        let ri = *row_index
                            .get(rname)
                            .ok_or_else(|| format!("unknown row {rname}"))?;
                        entry.2.push((ri, val));
                    }
                    i += 2;
                }
            }
            Section::Rhs => {
                let mut i = 1;
                while i + 2 <= toks.len() {
                    let rname = toks[i];
                    let val: f64 = toks[i + 1].parse().map_err(|e| format!("bad number: {e}"))?;
                    if rname == "COST" {
                        obj_offset = -val;
                    } else {
                        let ri = *row_index
                            .get(rname)
                            .ok_or_else(|| format!("unknown row {rname}"))?;
                        row_rhs[ri] = val;
                    }
                    i += 2;
                }
            }
            Section::Bounds => {
                let kind = toks[0];
                let name = toks[2].to_string();
                let b = bounds.entry(name).or_insert((0.0, f64::INFINITY));
                match kind {
                    "BV" => *b = (0.0, 1.0),
                    "LO" => b.0 = toks[3].parse().map_err(|e| format!("bad bound: {e}"))?,
                    "UP" => b.1 = toks[3].parse().map_err(|e| format!("bad bound: {e}"))?,
                    "FX" => {
                        let v: f64 = toks[3].parse().map_err(|e| format!("bad bound: {e}"))?;
                        *b = (v, v);
                    }
                    "FR" => *b = (f64::NEG_INFINITY, f64::INFINITY),
                    other => return Err(format!("bound type {other} not supported")),
                }
            }
            Section::None | Section::Done => return Err("data outside any section".into()),
        }
    }

    for name in &col_order {
        let (kind, obj, entries) = &cols[name];
        let (lb, ub) = bounds.get(name).copied().unwrap_or((0.0, f64::INFINITY));
        let j = m.add_var(name.clone(), *kind, lb, ub, *obj);
        for &(ri, a) in entries {
            row_terms[ri].push((j, a));
        }
    }
    for (((name, sense), terms), rhs) in row_names
        .into_iter()
        .zip(row_sense)
        .zip(row_terms)
        .zip(row_rhs)
    {
        m.add_row(name, "mps", terms, sense, rhs);
    }
    m.objective_offset = obj_offset;
    Ok(m)
}
