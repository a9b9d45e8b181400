//! The grading symmetries of the hat table: the Alexander-Maslov rank
//! symmetry, orientation reversal, mirror duality, and single-component
//! reversal with its linking-number shift.
//!
//! ```bash
//! cargo run --release --example symmetries -- hopf
//! ```

use gridfloer::complex::DEFAULT_CAP;
use gridfloer::gradings::linking_matrix2;
use gridfloer::homology::{hat_poly, symmetry_suite};

fn main() -> gridfloer::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "hopf".into());
    let g = gridfloer::corpus::get(&name)?;
    println!("{g}");

    let hat = hat_poly(&g, DEFAULT_CAP)?;
    println!("hat rank table (maslov, alexander doubled, rank):");
    for (k, r) in hat.iter() {
        println!("  {:>3} {:?} {r}", k.maslov, k.alex2);
    }
    if g.ell() > 1 {
        println!(
            "pairwise linking numbers (doubled): {:?}",
            linking_matrix2(&g)
        );
    }

    let rep = symmetry_suite(&g, DEFAULT_CAP)?;
    for c in &rep.checks {
        println!(
            "{}  {} ({})",
            if c.passed { "pass" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    assert!(rep.passed());
    Ok(())
}
