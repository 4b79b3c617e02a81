//! Builds an irreducible module from its highest weight and compares its
//! dimension with the Weyl dimension formula.
//!
//! `cargo run --example irrep -- B2 1,1`

use bgg::gradedla::GradedLieAlgebra;
use bgg::repmod::build_irrep;
use bgg::rootspace::{CartanMatrix, ParabolicSpec};

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let label = args.next().unwrap_or_else(|| "A2".into());
    let lambda: Vec<i64> = args.next().unwrap_or_else(|| "1,1".into()).split(',').map(str::parse).collect::<Result<_, _>>()?;
    let cartan = CartanMatrix::parse(&label)?;
    // the grading does not matter for the module itself
    let g = GradedLieAlgebra::new(&cartan, &ParabolicSpec::new(&cartan, &[1])?)?;
    let v = build_irrep(&g, &lambda, 2000)?;
    println!("V({lambda:?}) of {label}: dim {}, Weyl formula {}", v.dim(), g.roots().weyl_dimension(&lambda));
    println!("representation identities hold: {}", v.is_representation(&g));
    let mut weights = v.weights().to_vec();
    weights.sort();
    weights.dedup();
    println!("{} distinct weights, highest {:?}", weights.len(), v.highest_weight());
    Ok(())
}
