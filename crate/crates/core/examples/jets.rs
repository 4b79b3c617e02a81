//! Jet modules of a `p`-module: dimensions, the homogeneity cap and the
//! semi-holonomic embedding into first jets of lower jets.
//!
//! `cargo run --example jets -- 3`

use bgg::gradedla::GradedLieAlgebra;
use bgg::jetcalc::{check_equivariance, semiholonomic, JetSpace};
use bgg::repmod::{build_irrep, restrict_to_parabolic};
use bgg::rootspace::{CartanMatrix, ParabolicSpec};
use bgg::Rat;

fn main() -> anyhow::Result<()> {
    let order: usize = std::env::args().nth(1).map_or(Ok(3), |s| s.parse())?;
    let cartan = CartanMatrix::parse("A3")?;
    let g = GradedLieAlgebra::new(&cartan, &ParabolicSpec::new(&cartan, &[1, 3])?)?;
    let v = restrict_to_parabolic(&g, &build_irrep(&g, &[1, 0, 0], 500)?);
    for r in 0..=order {
        let free = JetSpace::build(&g, &v, r, None);
        let capped = JetSpace::build(&g, &v, r, Some(Rat::int(2)));
        println!("J^{r}: dim {:>5}   capped at homogeneity 2: dim {:>4}   p-module: {}", free.dim(), capped.dim(), free.module().is_p_module(&g));
    }
    if order >= 1 {
        let sh = semiholonomic(&g, &v, order, None);
        let ok = check_equivariance(&g, &sh.embedding, sh.space.module(), sh.first_jets_of_lower.module(), None).is_ok();
        println!("J^{order} -> J^1(J^{}) equivariant: {ok}, rank {} of {}", order - 1, sh.embedding.rank(), sh.space.dim());
    }
    Ok(())
}
