//! The sign assignment on empty rectangles: axiom verification, the two
//! evaluation routes (closed form vs width induction), and gauge twists.
//!
//! ```bash
//! cargo run --release --example sign_assignment -- 5
//! ```

use gridfloer::complex::{enumerate_generators, RectScanner, DEFAULT_CAP};
use gridfloer::signs::{random_gauge, verify_axioms, SignAssignment};

fn main() -> gridfloer::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(4);
    // Signs only depend on the grid size; any valid grid of size n works.
    let sx: Vec<u8> = (0..n as u8).collect();
    let so: Vec<u8> = (0..n).map(|i| ((i + 1) % n) as u8).collect();
    let g = gridfloer::GridDiagram::new(sx, so)?;
    let s = SignAssignment::new(n);

    // Sample a few signed rectangles from one generator.
    let gens = enumerate_generators(&g, DEFAULT_CAP)?;
    let x = gens.perm(gens.count / 2).to_vec();
    let scanner = RectScanner::new(&g);
    println!("signed empty rectangles from generator {x:?}:");
    let mut shown = 0;
    scanner.scan(&x, |item| {
        if item.empty && shown < 8 {
            println!(
                "  cols [{}, {}) rows [{}, {}): sign {:+}",
                item.rect.c0,
                item.rect.c1,
                item.rect.r0,
                item.rect.r1,
                s.sign(&x, &item.rect)
            );
            shown += 1;
        }
    });

    // The axioms, exhaustively.
    let rep = verify_axioms(&g, &s, None, DEFAULT_CAP)?;
    println!(
        "axioms over {} generators: {} square domains, {} vertical annuli, {} horizontal annuli -> {}",
        rep.generators,
        rep.sq_domains,
        rep.vertical_annuli,
        rep.horizontal_annuli,
        if rep.passed() { "all hold" } else { "FAILED" }
    );
    assert!(rep.passed());

    // Any gauge twist S'(r) = f(x) f(y) S(r) is again a sign assignment.
    let f = random_gauge(rep.generators, 42);
    let twisted = verify_axioms(&g, &s, Some(&f), DEFAULT_CAP)?;
    println!(
        "random gauge twist: {}",
        if twisted.passed() {
            "axioms still hold"
        } else {
            "FAILED"
        }
    );
    assert!(twisted.passed());
    Ok(())
}
