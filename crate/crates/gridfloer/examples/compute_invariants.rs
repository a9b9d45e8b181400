//! Full invariant package for one grid: tilde and hat homology, tau, and
//! the Alexander polynomial.
//!
//! ```bash
//! cargo run --release --example compute_invariants -- trefoil
//! cargo run --release --example compute_invariants -- path/to/file.grid
//! ```

use gridfloer::alexander::alexander_polynomial;
use gridfloer::complex::DEFAULT_CAP;
use gridfloer::homology::{divide_v_factors, tau, tilde_homology_gf2};

fn main() -> gridfloer::Result<()> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "trefoil".into());
    let g = match gridfloer::corpus::get(&arg) {
        Ok(g) => g,
        Err(_) => gridfloer::parse_grid(&std::fs::read_to_string(&arg)?)?,
    };
    println!("{g}");
    println!("n = {}, {} link component(s)", g.n(), g.ell());

    let tilde = tilde_homology_gf2(&g, DEFAULT_CAP)?;
    println!(
        "tilde homology: total rank {} over {} Alexander blocks",
        tilde.poly.total_rank(),
        tilde.blocks
    );
    for (k, r) in tilde.poly.iter() {
        println!(
            "  maslov {:>3}, alexander(doubled) {:?}: rank {r}",
            k.maslov, k.alex2
        );
    }

    let hat = divide_v_factors(&tilde.poly, &g)?;
    println!("hat homology: total rank {}", hat.total_rank());
    for (k, r) in hat.iter() {
        println!(
            "  maslov {:>3}, alexander(doubled) {:?}: rank {r}",
            k.maslov, k.alex2
        );
    }

    if g.ell() == 1 {
        println!("tau = {}", tau(&g, DEFAULT_CAP)?);
    }
    println!(
        "Alexander polynomial: {}",
        alexander_polynomial(&g)?.display()
    );
    Ok(())
}
