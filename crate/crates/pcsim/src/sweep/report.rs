//! Sweep report files. Outputs are deterministic: the same result writes
//! byte-identical files (wall time is deliberately left out).

use std::io;
use std::path::{Path, PathBuf};

use crate::sweep::run::{ScenarioRow, SweepResult};

fn fmt(x: f64) -> String {
    format!("{x:.6}")
}

const KPI_COLUMNS: [&str; 10] = [
    "operating_cost_eur",
    "fixed_cost_eur",
    "capacity_credit_mw",
    "avoided_peaker_value_eur",
    "net_bau_eur",
    "net_do_minimum_eur",
    "curtailment_pct",
    "ens_mwh",
    "co2_tons",
    "max_gap",
];

fn kpi_values(row: &ScenarioRow) -> Option<[f64; 10]> {
    row.kpis.map(|k| {
        [
            k.operating_cost_eur,
            k.fixed_cost_eur,
            k.capacity_credit_mw,
            k.avoided_peaker_value_eur,
            k.net_bau_eur,
            k.net_do_minimum_eur,
            k.curtailment_pct,
            k.ens_mwh,
            k.co2_tons,
            k.max_gap,
        ]
    })
}

/// Write `kpis.csv` (wide KPI matrix, one row per scenario), `kpis_long.csv`
/// (tidy label/metric/value rows), and `summary.txt` into `dir`. Returns
/// the paths written.
pub fn emit_reports(result: &SweepResult, dir: &Path) -> io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let wide = dir.join("kpis.csv");
    {
        let mut w = csv::Writer::from_path(&wide)?;
        let mut header = vec!["label", "power_mw", "usable_energy_mwh", "status"];
        header.extend(KPI_COLUMNS);
        w.write_record(&header)?;
        for row in &result.rows {
            let mut rec = vec![
                row.label.clone(),
                fmt(row.power_mw),
                fmt(row.usable_energy_mwh),
                row.status.clone(),
            ];
            match kpi_values(row) {
                Some(vals) => rec.extend(vals.iter().map(|v| fmt(*v))),
                None => rec.extend(std::iter::repeat(String::new()).take(KPI_COLUMNS.len())),
            }
            w.write_record(&rec)?;
        }
        w.flush()?;
    }

    let long = dir.join("kpis_long.csv");
    {
        let mut w = csv::Writer::from_path(&long)?;
        w.write_record(["label", "metric", "value"])?;
        for row in &result.rows {
            if let Some(vals) = kpi_values(row) {
                for (name, v) in KPI_COLUMNS.iter().zip(vals) {
                    w.write_record([row.label.as_str(), name, &fmt(v)])?;
                }
            }
        }
        w.flush()?;
    }

    let summary = dir.join("summary.txt");
    {
        let ok = result.rows.iter().filter(|r| r.status == "ok").count();
        let mut text = String::new();
        text.push_str(&format!("scenarios: {} ({} ok)\n", result.rows.len(), ok));
        text.push_str(&format!("days simulated: {}\n", result.days));
        let lookup = |label: &Option<String>, key: &str| -> String {
            match label {
                Some(l) => {
                    let row = result.rows.iter().find(|r| &r.label == l);
                    let v = row
                        .and_then(kpi_values)
                        .map(|vals| {
                            let i = KPI_COLUMNS.iter().position(|c| *c == key).unwrap();
                            fmt(vals[i])
                        })
                        .unwrap_or_default();
                    format!("{l} ({v} EUR/y)")
                }
                None => "n/a".into(),
            }
        };
        text.push_str(&format!(
            "best vs business-as-usual: {}\n",
            lookup(&result.best_bau, "net_bau_eur")
        ));
        text.push_str(&format!(
            "best vs do-minimum: {}\n",
            lookup(&result.best_do_minimum, "net_do_minimum_eur")
        ));
        for row in result.rows.iter().filter(|r| r.status != "ok") {
            text.push_str(&format!("failed: {}: {}\n", row.label, row.status));
        }
        std::fs::write(&summary, text)?;
    }
    Ok(vec![wide, long, summary])
}
