//! Chevalley basis of a graded simple algebra: graded pieces, the Killing
//! form pairing between `g_-` and `p_+`, and a bracket spot check.
//!
//! `cargo run --example graded_algebra -- G2 1`

use bgg::gradedla::GradedLieAlgebra;
use bgg::rootspace::{CartanMatrix, ParabolicSpec};

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let label = args.next().unwrap_or_else(|| "A3".into());
    let nodes: Vec<usize> = args.next().unwrap_or_else(|| "1,3".into()).split(',').map(str::parse).collect::<Result<_, _>>()?;
    let cartan = CartanMatrix::parse(&label)?;
    let g = GradedLieAlgebra::new(&cartan, &ParabolicSpec::new(&cartan, &nodes)?)?;
    println!("dim {} with depth {}", g.dim(), g.depth());
    for j in -g.depth()..=g.depth() {
        println!("  g_{j}: dim {}", g.graded_piece(j).len());
    }
    // eta_a in p_+ paired with its dual xi_b in g_-
    let pair = g.dual_basis_pair();
    let mut off = 0;
    for (a, &eta) in pair.eta.iter().enumerate() {
        for (b, xi) in pair.xi.iter().enumerate() {
            let v = g.killing_form(&g.element(eta), xi);
            let expected = if a == b { bgg::Rat::ONE } else { bgg::Rat::ZERO };
            off += usize::from(v != expected);
        }
    }
    println!("dual basis pairing: {} mismatches", off);
    let (e, f) = (g.e_index(0), g.f_index(0));
    println!("[e1, f1] = {:?}", g.bracket_basis(e, f));
    Ok(())
}
