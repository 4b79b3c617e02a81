//! The BGG diagram of `A3` with the outer two nodes crossed, for a module
//! given on the command line as `a b c` (default `0 0 0`).
//!
//! Components are printed in the `S^b[a', c']` notation, where a component
//! with dual highest weight `(x, y, z)` has `b = y`, `a' = x + 2y`, `c' = z`
//! and homogeneity `a' + c' - b`.

use bgg::bggcore::{build_bgg_diagram, DiagramOptions};
use bgg::rootspace::{CartanMatrix, ParabolicSpec};
use std::time::Instant;

fn main() -> anyhow::Result<()> {
    let args: Vec<i64> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    let (a, b, c) = match args.as_slice() {
        [] => (0, 0, 0),
        [a, b, c] => (*a, *b, *c),
        _ => anyhow::bail!("expected three nonnegative integers"),
    };
    let cartan = CartanMatrix::of_type('A', 3)?;
    let sigma = ParabolicSpec::new(&cartan, &[1, 3])?;
    let started = Instant::now();
    // the module is given by the highest weight of its dual
    let d = build_bgg_diagram(&cartan, &sigma, &[c, b, a], &DiagramOptions::default())?;
    for (n, col) in d.columns.iter().enumerate() {
        let names: Vec<String> = col
            .iter()
            .map(|node| {
                let (x, y, z) = (node.label.coords[0], node.label.coords[1], node.label.coords[2]);
                format!("S^{}[{},{}] (dim {})", y, x + 2 * y, z, node.dim)
            })
            .collect();
        println!("H^{n}: {}", names.join(", "));
    }
    for arrow in &d.arrows {
        println!("  {:?} -> {:?}  order {}", arrow.from, arrow.to, arrow.order);
    }
    for arrow in &d.undecided {
        println!("  {:?} -> {:?}  order {} not computed (jet budget)", arrow.from, arrow.to, arrow.order);
    }
    println!("checks: {}", if d.checks.all() { "all pass" } else { "FAILED" });
    eprintln!("elapsed {:.1?}", started.elapsed());
    Ok(())
}
