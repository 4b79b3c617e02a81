//! Harmonic representatives of the `p_+` cohomology with coefficients in an
//! irreducible module, labelled and compared with the Weyl group prediction.
//!
//! `cargo run --example cohomology -- A3 2 0,1,0`

use bgg::bggcore::Pipeline;
use bgg::hodge::{computed_labels, kostant_oracle};
use bgg::rootspace::{CartanMatrix, ParabolicSpec};

fn main() -> anyhow::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let label = args.first().map_or("A3", String::as_str);
    let cartan = CartanMatrix::parse(label)?;
    let nodes: Vec<usize> = args.get(1).map_or("1,3", String::as_str).split(',').map(str::parse).collect::<Result<_, _>>()?;
    let weight: Vec<i64> = match args.get(2) {
        Some(w) => w.split(',').map(str::parse).collect::<Result<_, _>>()?,
        None => vec![0; cartan.rank()],
    };
    let pl = Pipeline::new(&cartan, &ParabolicSpec::new(&cartan, &nodes)?, &weight, 500)?;
    let cc = &pl.complex;
    for (n, level) in pl.cohomology.iter().enumerate() {
        let comps: Vec<String> = level.iter().map(|c| format!("{} E={} dim {}", c.label, c.e_eigenvalue(), c.dim())).collect();
        println!("n={n}  chains {:>4}  H: {}", cc.dim(n), comps.join("; "));
    }
    let mut computed = computed_labels(&pl.algebra, cc)?;
    let mut predicted = kostant_oracle(&pl.algebra, pl.module.highest_weight());
    for v in [&mut computed, &mut predicted] {
        while v.last().is_some_and(|l| l.is_empty()) {
            v.pop();
        }
    }
    println!("agrees with the Weyl group prediction: {}", computed == predicted);
    Ok(())
}
