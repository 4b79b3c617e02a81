//! Runs every available check on a handful of small gradings and modules.

use bgg::bggcore::{DiagramOptions, Pipeline};
use bgg::cli::verification_battery;
use bgg::rootspace::{CartanMatrix, ParabolicSpec};

fn main() -> anyhow::Result<()> {
    let cases: &[(&str, &[usize], &[i64])] = &[
        ("A1", &[1], &[2]),
        ("A2", &[1], &[1, 0]),
        ("A2", &[1, 2], &[1, 1]),
        ("A3", &[2], &[0, 0, 0]),
        ("B2", &[1], &[0, 1]),
    ];
    let mut failures = 0;
    for &(label, nodes, weight) in cases {
        let cartan = CartanMatrix::parse(label)?;
        let pl = Pipeline::new(&cartan, &ParabolicSpec::new(&cartan, nodes)?, weight, 500)?;
        let (_, checks) = verification_battery(&pl, &DiagramOptions::default())?;
        let failed: Vec<&String> = checks.iter().filter(|(_, ok)| !**ok).map(|(k, _)| k).collect();
        failures += failed.len();
        println!("{label} {nodes:?} {weight:?}: {} checks, failed {:?}", checks.len(), failed);
    }
    anyhow::ensure!(failures == 0, "{failures} checks failed");
    Ok(())
}
