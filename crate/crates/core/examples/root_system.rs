//! Roots, the grading they get from a set of crossed nodes, and the Hasse
//! diagram of minimal coset representatives.
//!
//! `cargo run --example root_system -- B3 1,3`

use bgg::rootspace::{CartanMatrix, ParabolicSpec, RootSystem};

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let label = args.next().unwrap_or_else(|| "A3".into());
    let nodes: Vec<usize> = args.next().unwrap_or_else(|| "1,3".into()).split(',').map(str::parse).collect::<Result<_, _>>()?;
    let cartan = CartanMatrix::parse(&label)?;
    let sigma = ParabolicSpec::new(&cartan, &nodes)?;
    let roots = RootSystem::new(&cartan);
    println!("{label}: {} positive roots, highest {:?}", roots.positive_roots().len(), roots.highest_root());
    println!("crossed {sigma}, grading depth {}", roots.grading_depth(&sigma));
    for r in roots.positive_roots() {
        println!("  {:?}  height under the grading {}", r, roots.sigma_height(r, &sigma)?);
    }
    for (n, level) in roots.parabolic_hasse(&sigma).iter().enumerate() {
        let words: Vec<String> = level.iter().map(|w| w.to_string()).collect();
        println!("W^p length {n}: {}", words.join(" | "));
    }
    Ok(())
}
