//! Grid refinement of contact counts and rarefaction lengths for an abrupt
//! (Brownian) and an eroded (Cauchy) potential.
//!
//!     cargo run --release --example refinement

use burgers_levy::{refinement_study, LevyParams};

fn main() -> burgers_levy::Result<()> {
    let h_list = [1.0 / 64.0, 1.0 / 128.0, 1.0 / 256.0, 1.0 / 512.0];
    for params in [LevyParams::Brownian { sigma: 1.0 }, LevyParams::Cauchy { scale: 1.0 }] {
        println!("{params:?}, window [1, 2]");
        println!("{:>10} {:>9} {:>9} {:>12} {:>10}", "h", "contacts", "zeros", "max rarefy", "fraction");
        for r in refinement_study(params, 1.0, 8.0, &h_list, 50, 1, Some((1.0, 2.0)))? {
            println!(
                "{:>10.6} {:>9} {:>9} {:>12.4} {:>10.5}",
                r.h, r.median_contacts, r.median_zero_set, r.median_max_rarefaction, r.median_contact_fraction
            );
        }
    }
    Ok(())
}
