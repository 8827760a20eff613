//! Load-leveling capacity credit across a power/duration grid: how much
//! firm peaking capacity each storage size displaces.

use pcsim::economics::capacity_credit;
use pcsim::sweep::{PortfolioEntry, StoragePortfolio};
use pcsim::system::testutil::miniature_model;
use pcsim::system::StorageTech;

fn main() {
    let model = miniature_model();
    let powers = [10.0, 20.0, 40.0, 80.0];
    let durations = [1.0, 2.0, 4.0, 8.0];

    println!("capacity credit (MW) of a single battery, by size:");
    print!("{:>8}", "MW \\ h");
    for d in durations {
        print!("{d:>8.0}");
    }
    println!();
    for p in powers {
        print!("{p:>8.0}");
        for d in durations {
            let pf = StoragePortfolio {
                entries: vec![PortfolioEntry { tech: StorageTech::Bess, power: p, duration: d }],
            };
            print!("{:>8.1}", capacity_credit(&model, &pf));
        }
        println!();
    }

    let pooled = StoragePortfolio {
        entries: vec![
            PortfolioEntry { tech: StorageTech::Bess, power: 20.0, duration: 2.0 },
            PortfolioEntry { tech: StorageTech::Phs, power: 40.0, duration: 6.0 },
        ],
    };
    println!(
        "\npooled bess+phs portfolio ({:.0} MW): {:.1} MW credit",
        pooled.total_power(),
        capacity_credit(&model, &pooled)
    );
}
