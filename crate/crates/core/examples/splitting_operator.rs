//! The splitting operator of one cohomology component and the BGG operators
//! out of it, for `sl(2)` acting on binary forms of degree `m`.
//!
//! `cargo run --example splitting_operator -- 4`

use bgg::bggcore::{bgg_operator, check_operator, compose_splitter, Pipeline};
use bgg::rootspace::{CartanMatrix, ParabolicSpec};

fn main() -> anyhow::Result<()> {
    let m: i64 = std::env::args().nth(1).map_or(Ok(3), |s| s.parse())?;
    let cartan = CartanMatrix::parse("A1")?;
    let pl = Pipeline::new(&cartan, &ParabolicSpec::new(&cartan, &[1])?, &[m], 500)?;
    let (g, cc) = (&pl.algebra, &pl.complex);
    let gs = pl.generated_submodule(0, 0)?;
    println!("generated submodule: dim {}, filtration length {}, blocks {:?}", gs.dim(), gs.r(), gs.block_dims());
    let s = compose_splitter(g, &gs, gs.r(), None);
    println!("splitter J^{} -> E: {} x {}, rank {}", s.length(), s.map.nrows(), s.map.ncols(), s.map.rank());
    let op = bgg_operator(g, cc, &gs, &pl.cohomology[1], 20_000)?;
    for b in &op.blocks {
        println!("operator to component {} has order {} and rank {}", b.target, b.order, b.block.rank());
    }
    let checks = check_operator(g, cc, &gs, &pl.cohomology[1], &op);
    println!("{checks:?}");
    Ok(())
}
