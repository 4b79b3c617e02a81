use bgg::cli::{emit, parse_spec, run};
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--help" || a == "-h") {
        println!("{}", include_str!("usage.txt"));
        return ExitCode::SUCCESS;
    }
    match try_main(&args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("bggcli: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn try_main(args: &[String]) -> anyhow::Result<bool> {
    let job = parse_spec(args)?;
    let report = run(&job)?;
    let single = job.emit.len() == 1;
    for &e in &job.emit {
        let text = emit(&report, e);
        match &job.out {
            None => print!("{text}"),
            Some(p) if single => std::fs::write(p, text)?,
            Some(p) => {
                let ext = format!("{e:?}").to_lowercase();
                std::fs::write(p.with_extension(ext), text)?;
            }
        }
    }
    Ok(report.passed())
}
