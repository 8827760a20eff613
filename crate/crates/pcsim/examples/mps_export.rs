//! Export one day's MILP as free-format MPS and LP, then read the MPS back
//! and confirm the matrix survived the round trip.

use pcsim::milp::{build_day_model, SolveOptions};
use pcsim::solver::{read_mps, write_lp, write_mps};
use pcsim::system::testutil::miniature_model;
use pcsim::system::{slice_day, SystemState};

fn main() -> anyhow::Result<()> {
    let model = miniature_model();
    let state = SystemState::cold_start(&model);
    let day = slice_day(&model, 0, &state)?;
    let milp = build_day_model(&day, &SolveOptions::default())?;

    let dir = std::env::temp_dir().join("pcsim-export");
    std::fs::create_dir_all(&dir)?;
    let mps_path = dir.join("day0.mps");
    let lp_path = dir.join("day0.lp");

    let mps = write_mps(&milp);
    std::fs::write(&mps_path, &mps)?;
    std::fs::write(&lp_path, write_lp(&milp))?;
    println!("wrote {} ({} bytes)", mps_path.display(), mps.len());
    println!("wrote {}", lp_path.display());

    let back = read_mps(&mps).map_err(anyhow::Error::msg)?;
    let nonzeros: usize = milp.rows.iter().map(|r| r.terms.len()).sum();
    let back_nonzeros: usize = back.rows.iter().map(|r| r.terms.len()).sum();
    println!(
        "round trip: {} vars / {} rows / {} nonzeros -> {} / {} / {}",
        milp.vars.len(),
        milp.rows.len(),
        nonzeros,
        back.vars.len(),
        back.rows.len(),
        back_nonzeros,
    );
    assert_eq!(milp.vars.len(), back.vars.len());
    assert_eq!(milp.rows.len(), back.rows.len());
    assert_eq!(nonzeros, back_nonzeros);
    println!("matrix preserved");
    Ok(())
}
