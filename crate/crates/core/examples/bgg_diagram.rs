//! A BGG diagram written as Graphviz DOT and as JSON.
//!
//! `cargo run --example bgg_diagram -- B2 1 0,1 > diagram.dot`

use bgg::cli::{emit_dot, emit_json, parse_spec, run};

fn main() -> anyhow::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let get = |i: usize, d: &str| args.get(i).cloned().unwrap_or_else(|| d.to_string());
    let job = parse_spec(&[
        "--algebra".into(),
        get(0, "A2"),
        "--cross".into(),
        get(1, "1,2"),
        "--weight".into(),
        get(2, "0,0"),
    ])?;
    let report = run(&job)?;
    print!("{}", emit_dot(&report));
    eprint!("{}", emit_json(&report));
    Ok(())
}
