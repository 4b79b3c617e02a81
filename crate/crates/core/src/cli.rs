//! Job specifications, the pipeline runner and the text, DOT and JSON reports.
//!
//! Grammar:
//!
//! ```text
//! bggcli (--algebra A3 | --cartan "2,-1,0;-1,2,-1;0,-1,2") --cross 1,3 --weight 0,0,0
//!        [cohomology | diagram | verify] [--emit text,dot,json]
//!        [--max-module-dim N] [--max-jet-dim N] [--out PATH] [--config FILE]
//! ```
//!
//! Nodes are numbered from 1 in Bourbaki order. The config file holds
//! `key = value` lines with the flag names as keys (and `command`); flags
//! given on the command line win.

use crate::bggcore::{
    check_splitters, diagram_of, generate_submodule, twisted_differential, BggArrow, BggDiagram, DiagramOptions,
    Pipeline,
};
use crate::error::{BggError, Result};
use crate::hodge::{check_complex, check_hodge, check_wedge_and_twisting, computed_labels, kostant_oracle};
use crate::jetcalc::{check_equivariance, DEFAULT_JET_BUDGET};
use crate::repmod::{IrrepLabel, DEFAULT_MODULE_BUDGET};
use crate::rootspace::{CartanMatrix, ParabolicSpec, Weight};
use clap::error::{ContextKind, ContextValue};
use clap::{Parser, ValueEnum};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraSpec {
    Series(String),
    Matrix(Vec<Vec<i64>>),
}

impl AlgebraSpec {
    pub fn cartan(&self) -> Result<CartanMatrix> {
        match self {
            AlgebraSpec::Series(s) => CartanMatrix::parse(s),
            AlgebraSpec::Matrix(m) => CartanMatrix::new(m.clone()),
        }
    }

    pub fn name(&self) -> String {
        match self {
            AlgebraSpec::Series(s) => s.clone(),
            AlgebraSpec::Matrix(m) => format_matrix(m),
        }
    }
}

fn format_matrix(m: &[Vec<i64>]) -> String {
    m.iter().map(|r| join(r)).collect::<Vec<_>>().join(";")
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Command {
    Cohomology,
    Diagram,
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Emit {
    Text,
    Dot,
    Json,
}

impl Emit {
    fn name(self) -> &'static str {
        match self {
            Emit::Text => "text",
            Emit::Dot => "dot",
            Emit::Json => "json",
        }
    }
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Cohomology => "cohomology",
            Command::Diagram => "diagram",
            Command::Verify => "verify",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub algebra: AlgebraSpec,
    pub sigma: Vec<usize>,
    pub weight: Weight,
    pub command: Command,
    pub emit: Vec<Emit>,
    pub max_module_dim: u64,
    pub max_jet_dim: usize,
    pub out: Option<PathBuf>,
}

impl JobSpec {
    /// Canonical argument list; parsing it gives back the same spec.
    pub fn to_args(&self) -> Vec<String> {
        let mut a = match &self.algebra {
            AlgebraSpec::Series(s) => vec!["--algebra".to_string(), s.clone()],
            AlgebraSpec::Matrix(m) => vec!["--cartan".to_string(), format_matrix(m)],
        };
        a.extend(["--cross".into(), join(&self.sigma), "--weight".into(), join(&self.weight)]);
        a.push(self.command.name().into());
        a.extend(["--emit".into(), self.emit.iter().map(|e| e.name()).collect::<Vec<_>>().join(",")]);
        a.extend(["--max-module-dim".into(), self.max_module_dim.to_string()]);
        a.extend(["--max-jet-dim".into(), self.max_jet_dim.to_string()]);
        if let Some(p) = &self.out {
            a.extend(["--out".into(), p.display().to_string()]);
        }
        a
    }

    pub fn options(&self) -> DiagramOptions {
        DiagramOptions { module_budget: self.max_module_dim, jet_budget: self.max_jet_dim }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Matrix(Vec<Vec<i64>>);
#[derive(Clone, Debug, PartialEq, Eq)]
struct Nodes(Vec<usize>);
#[derive(Clone, Debug, PartialEq, Eq)]
struct Ints(Vec<i64>);
#[derive(Clone, Debug, PartialEq, Eq)]
struct Emits(Vec<Emit>);

fn list<T: std::str::FromStr>(s: &str) -> std::result::Result<Vec<T>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| format!("`{t}` is not a valid entry")))
        .collect()
}

fn parse_matrix(s: &str) -> std::result::Result<Matrix, String> {
    s.split(';').map(list::<i64>).collect::<std::result::Result<_, _>>().map(Matrix)
}

fn parse_nodes(s: &str) -> std::result::Result<Nodes, String> {
    list(s).map(Nodes)
}

fn parse_ints(s: &str) -> std::result::Result<Ints, String> {
    list(s).map(Ints)
}

fn parse_emits(s: &str) -> std::result::Result<Emits, String> {
    s.split(',').map(|t| Emit::from_str(t.trim(), true)).collect::<std::result::Result<_, _>>().map(Emits)
}

fn parse_series(s: &str) -> std::result::Result<String, String> {
    let mut chars = s.chars();
    let ok = chars.next().is_some_and(|c| "ABCDEFG".contains(c)) && {
        let rest: String = chars.collect();
        !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit())
    };
    if ok {
        Ok(s.to_string())
    } else {
        Err(format!("`{s}` is not a series label such as A3 or G2"))
    }
}

#[derive(Parser, Debug)]
#[command(name = "bggcli", no_binary_name = true, args_override_self = true, disable_help_subcommand = true)]
struct Args {
    #[arg(long, value_parser = parse_series)]
    algebra: Option<String>,
    #[arg(long, value_parser = parse_matrix, allow_hyphen_values = true, conflicts_with = "algebra")]
    cartan: Option<Matrix>,
    #[arg(long, value_parser = parse_nodes, allow_hyphen_values = true)]
    cross: Option<Nodes>,
    #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
    weight: Option<Ints>,
    #[arg(value_enum)]
    command: Option<Command>,
    #[arg(long, value_parser = parse_emits)]
    emit: Option<Emits>,
    #[arg(long)]
    max_module_dim: Option<u64>,
    #[arg(long)]
    max_jet_dim: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Index of the token a clap error is about.
fn locate(args: &[String], err: &clap::Error) -> usize {
    let wanted: Vec<String> = [ContextKind::InvalidValue, ContextKind::InvalidArg]
        .iter()
        .filter_map(|k| match err.get(*k) {
            Some(ContextValue::String(s)) => Some(s.clone()),
            _ => None,
        })
        .collect();
    for w in &wanted {
        if let Some(i) = args.iter().position(|a| a == w) {
            return i;
        }
        let flag = w.split([' ', '=']).next().unwrap_or(w);
        if let Some(i) = args.iter().position(|a| a == flag || a.starts_with(&format!("{flag}="))) {
            return (i + 1).min(args.len());
        }
    }
    args.len()
}

/// Parses a command line (without the program name), merging a config file if one is named.
pub fn parse_spec(args: &[String]) -> Result<JobSpec> {
    let mut parsed = Args::try_parse_from(args).map_err(|e| BggError::ParseError {
        position: locate(args, &e),
        message: e.to_string().lines().next().unwrap_or("").trim_start_matches("error: ").to_string(),
    })?;
    if let Some(path) = parsed.config.clone() {
        let position = args.iter().position(|a| a == "--config").map_or(0, |i| i + 1);
        let text = std::fs::read_to_string(&path)
            .map_err(|e| BggError::ParseError { position, message: format!("cannot read {}: {e}", path.display()) })?;
        merge_config(&mut parsed, &text).map_err(|message| BggError::ParseError { position, message })?;
    }
    validate(parsed)
}

fn merge_config(a: &mut Args, text: &str) -> std::result::Result<(), String> {
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or(format!("line {}: expected key = value", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        let at = |e: String| format!("line {}: {e}", lineno + 1);
        match key {
            "algebra" if a.algebra.is_none() && a.cartan.is_none() => a.algebra = Some(parse_series(value).map_err(at)?),
            "cartan" if a.algebra.is_none() && a.cartan.is_none() => a.cartan = Some(parse_matrix(value).map_err(at)?),
            "cross" if a.cross.is_none() => a.cross = Some(parse_nodes(value).map_err(at)?),
            "weight" if a.weight.is_none() => a.weight = Some(parse_ints(value).map_err(at)?),
            "emit" if a.emit.is_none() => a.emit = Some(parse_emits(value).map_err(at)?),
            "command" if a.command.is_none() => a.command = Some(Command::from_str(value, true).map_err(at)?),
            "max-module-dim" if a.max_module_dim.is_none() => {
                a.max_module_dim = Some(value.parse().map_err(|_| at(format!("bad number `{value}`")))?)
            }
            "max-jet-dim" if a.max_jet_dim.is_none() => {
                a.max_jet_dim = Some(value.parse().map_err(|_| at(format!("bad number `{value}`")))?)
            }
            "out" if a.out.is_none() => a.out = Some(PathBuf::from(value)),
            "algebra" | "cartan" | "cross" | "weight" | "emit" | "command" | "max-module-dim" | "max-jet-dim" | "out" => {}
            _ => return Err(at(format!("unknown key `{key}`"))),
        }
    }
    Ok(())
}

fn validate(a: Args) -> Result<JobSpec> {
    let algebra = match (a.algebra, a.cartan) {
        (Some(s), None) => AlgebraSpec::Series(s),
        (None, Some(m)) => AlgebraSpec::Matrix(m.0),
        _ => return Err(BggError::ValidationError("give exactly one of --algebra and --cartan".into())),
    };
    let cartan = algebra.cartan()?;
    let sigma = a.cross.ok_or_else(|| BggError::ValidationError("--cross is required".into()))?.0;
    ParabolicSpec::new(&cartan, &sigma)?;
    let weight = a.weight.ok_or_else(|| BggError::ValidationError("--weight is required".into()))?.0;
    if weight.len() != cartan.rank() {
        return Err(BggError::ValidationError(format!(
            "weight has {} coordinates but the algebra has rank {}",
            weight.len(),
            cartan.rank()
        )));
    }
    if let Some(i) = weight.iter().position(|&c| c < 0) {
        return Err(BggError::ValidationError(format!(
            "coefficient {} at node {} is negative; the module must be dominant",
            weight[i],
            i + 1
        )));
    }
    let mut emit = a.emit.map_or(vec![Emit::Text], |e| e.0);
    emit.dedup();
    Ok(JobSpec {
        algebra,
        sigma,
        weight,
        command: a.command.unwrap_or(Command::Diagram),
        emit,
        max_module_dim: a.max_module_dim.unwrap_or(DEFAULT_MODULE_BUDGET),
        max_jet_dim: a.max_jet_dim.unwrap_or(DEFAULT_JET_BUDGET),
        out: a.out,
    })
}

#[derive(Clone, Debug)]
pub struct Report {
    pub algebra: String,
    pub parabolic: ParabolicSpec,
    pub weight: Weight,
    pub columns: Vec<Vec<(IrrepLabel, usize)>>,
    pub arrows: Vec<BggArrow>,
    pub undecided: Vec<BggArrow>,
    pub verify: BTreeMap<String, bool>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verify.values().all(|&b| b)
    }

    fn from_diagram(d: &BggDiagram, verify: BTreeMap<String, bool>) -> Report {
        Report {
            algebra: d.algebra.clone(),
            parabolic: d.parabolic.clone(),
            weight: d.weight.clone(),
            columns: d.columns.iter().map(|c| c.iter().map(|n| (n.label.clone(), n.dim)).collect()).collect(),
            arrows: d.arrows.clone(),
            undecided: d.undecided.clone(),
            verify,
        }
    }
}

fn operator_checks(d: &BggDiagram) -> BTreeMap<String, bool> {
    let c = &d.checks;
    BTreeMap::from([
        ("operator_values_in_kernel_of_codifferential".to_string(), c.values_in_kernel_of_codifferential),
        ("splitter_splits_harmonic_projection".to_string(), c.splits_harmonic_projection),
        ("splitter_equivariant".to_string(), c.splitter_equivariant),
        ("operator_equivariant".to_string(), c.operator_equivariant),
        ("operator_orders_positive".to_string(), c.positive_orders),
    ])
}

/// Every identity the toolkit knows how to check, on one module.
pub fn verification_battery(pl: &Pipeline, options: &DiagramOptions) -> Result<(BggDiagram, BTreeMap<String, bool>)> {
    let (g, cc) = (&pl.algebra, &pl.complex);
    let d = diagram_of(pl, options)?;
    let mut out = operator_checks(&d);
    let c = check_complex(g, cc);
    out.insert("del_squared_zero".into(), c.del_squared_zero);
    out.insert("codel_squared_zero".into(), c.codel_squared_zero);
    out.insert("adjointness".into(), c.adjointness);
    out.insert("codel_equivariant".into(), c.codel_equivariant);
    let h = check_hodge(cc);
    out.insert("hodge_dimension_count".into(), h.dimension_count);
    out.insert("harmonic_is_closed_and_coclosed".into(), h.harmonic_is_closed_and_coclosed);
    let (wedge, twist) = check_wedge_and_twisting(g, cc);
    out.insert("codel_of_wedge".into(), wedge);
    out.insert("del_of_action".into(), twist);
    let twisted = (0..cc.top()).all(|n| {
        let (jet, m) = twisted_differential(g, cc, n);
        check_equivariance(g, &m, jet.module(), cc.module(n + 1), None).is_ok()
    });
    out.insert("twisted_differential_equivariant".into(), twisted);
    let mut computed = computed_labels(g, cc)?;
    let mut oracle = kostant_oracle(g, pl.module.highest_weight());
    for v in [&mut computed, &mut oracle] {
        while v.last().is_some_and(|l| l.is_empty()) {
            v.pop();
        }
    }
    out.insert("oracle_agreement".into(), computed == oracle);
    let mut sub = (true, true);
    let mut split = [true; 5];
    for level in &pl.cohomology {
        for comp in level {
            let gs = generate_submodule(g, cc, comp)?;
            let (k, i) = gs.check_codifferential_containments(cc);
            sub = (sub.0 && k, sub.1 && i);
            let s = check_splitters(g, &gs, 1, options.jet_budget);
            for (slot, ok) in split.iter_mut().zip([s.projection, s.defect, s.constrained_jets, s.compatibility, s.containment]) {
                *slot &= ok;
            }
        }
    }
    out.insert("generated_in_kernel_of_codel".into(), sub.0);
    out.insert("generated_tail_in_image_of_codel".into(), sub.1);
    for (name, ok) in ["splitter_projection", "splitter_defect", "constrained_jets_submodule", "constrained_jets_compatibility", "constrained_jets_containment"]
        .iter()
        .zip(split)
    {
        out.insert(name.to_string(), ok);
    }
    Ok((d, out))
}

pub fn run(job: &JobSpec) -> Result<Report> {
    let cartan = job.algebra.cartan()?;
    let parabolic = ParabolicSpec::new(&cartan, &job.sigma)?;
    let pl = Pipeline::new(&cartan, &parabolic, &job.weight, job.max_module_dim)?;
    let mut report = match job.command {
        Command::Cohomology => Report {
            algebra: job.algebra.name(),
            parabolic,
            weight: job.weight.clone(),
            columns: pl.cohomology.iter().map(|l| l.iter().map(|c| (c.label.clone(), c.dim())).collect()).collect(),
            arrows: vec![],
            undecided: vec![],
            verify: BTreeMap::new(),
        },
        Command::Diagram => {
            let d = diagram_of(&pl, &job.options())?;
            Report::from_diagram(&d, operator_checks(&d))
        }
        Command::Verify => {
            let (d, checks) = verification_battery(&pl, &job.options())?;
            Report::from_diagram(&d, checks)
        }
    };
    report.algebra = job.algebra.name();
    Ok(report)
}

/// The label with crossed nodes marked, e.g. `[x1,0,x-2]`.
fn crossed_label(p: &ParabolicSpec, l: &IrrepLabel) -> String {
    let parts: Vec<String> = l
        .coords
        .iter()
        .enumerate()
        .map(|(i, c)| if p.is_crossed(i) { format!("x{c}") } else { c.to_string() })
        .collect();
    format!("[{}]", parts.join(","))
}

pub fn emit_text(r: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "algebra {}  crossed {}  weight [{}]", r.algebra, r.parabolic, join(&r.weight));
    for (n, col) in r.columns.iter().enumerate() {
        let dim: usize = col.iter().map(|c| c.1).sum();
        let _ = writeln!(s, "H^{n}  dim {dim}");
        for (i, (label, d)) in col.iter().enumerate() {
            let _ = writeln!(s, "  {n}.{i}  {}  E = {}  dim {d}", crossed_label(&r.parabolic, label), label.e_eigenvalue);
        }
    }
    if !r.arrows.is_empty() {
        let _ = writeln!(s, "arrows");
        for a in &r.arrows {
            let _ = writeln!(s, "  {}.{} -> {}.{}  order {}", a.from.0, a.from.1, a.to.0, a.to.1, a.order);
        }
    }
    if !r.undecided.is_empty() {
        let _ = writeln!(s, "not computed (jet budget)");
        for a in &r.undecided {
            let _ = writeln!(s, "  {}.{} -> {}.{}  order {}", a.from.0, a.from.1, a.to.0, a.to.1, a.order);
        }
    }
    if !r.verify.is_empty() {
        let _ = writeln!(s, "verify");
        for (k, v) in &r.verify {
            let _ = writeln!(s, "  {k}: {}", if *v { "pass" } else { "fail" });
        }
    }
    s
}

pub fn emit_dot(r: &Report) -> String {
    let mut s = String::from("digraph bgg {\n  rankdir=LR;\n  node [shape=box];\n");
    for (n, col) in r.columns.iter().enumerate() {
        let _ = writeln!(s, "  subgraph level{n} {{\n    rank=same;");
        for (i, (label, d)) in col.iter().enumerate() {
            let _ = writeln!(s, "    n{n}_{i} [label=\"{}\\ndim {d}\"];", crossed_label(&r.parabolic, label));
        }
        let _ = writeln!(s, "  }}");
    }
    for a in &r.arrows {
        let _ = writeln!(s, "  n{}_{} -> n{}_{} [label=\"{}\"];", a.from.0, a.from.1, a.to.0, a.to.1, a.order);
    }
    for a in &r.undecided {
        let _ = writeln!(s, "  n{}_{} -> n{}_{} [label=\"{}?\", style=dashed];", a.from.0, a.from.1, a.to.0, a.to.1, a.order);
    }
    s.push_str("}\n");
    s
}

#[derive(Serialize)]
struct JsonComponent {
    label: Weight,
    e_eigenvalue: String,
    dim: usize,
}

#[derive(Serialize)]
struct JsonColumn {
    level: usize,
    components: Vec<JsonComponent>,
}

#[derive(Serialize)]
struct JsonArrow {
    from: [usize; 2],
    to: [usize; 2],
    order: i64,
}

#[derive(Serialize)]
struct JsonReport {
    algebra: String,
    sigma: Vec<usize>,
    weight: Weight,
    label_convention: &'static str,
    columns: Vec<JsonColumn>,
    arrows: Vec<JsonArrow>,
    undecided: Vec<JsonArrow>,
    verify: BTreeMap<String, &'static str>,
}

fn json_arrow(a: &BggArrow) -> JsonArrow {
    JsonArrow { from: [a.from.0, a.from.1], to: [a.to.0, a.to.1], order: a.order }
}

pub const LABEL_CONVENTION: &str = "highest weight of the dual component, fundamental weight coordinates";

pub fn emit_json(r: &Report) -> String {
    let j = JsonReport {
        algebra: r.algebra.clone(),
        sigma: r.parabolic.nodes(),
        weight: r.weight.clone(),
        label_convention: LABEL_CONVENTION,
        columns: r
            .columns
            .iter()
            .enumerate()
            .map(|(level, col)| JsonColumn {
                level,
                components: col
                    .iter()
                    .map(|(l, d)| JsonComponent { label: l.coords.clone(), e_eigenvalue: l.e_eigenvalue.to_pq(), dim: *d })
                    .collect(),
            })
            .collect(),
        arrows: r.arrows.iter().map(json_arrow).collect(),
        undecided: r.undecided.iter().map(json_arrow).collect(),
        verify: r.verify.iter().map(|(k, v)| (k.clone(), if *v { "pass" } else { "fail" })).collect(),
    };
    serde_json::to_string_pretty(&j).expect("report serialises") + "\n"
}

pub fn emit(r: &Report, e: Emit) -> String {
    match e {
        Emit::Text => emit_text(r),
        Emit::Dot => emit_dot(r),
        Emit::Json => emit_json(r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn args(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn parses_the_reference_job() {
        let j = parse_spec(&args("--algebra A3 --cross 1,3 --weight 0,0,0 diagram --emit dot,json")).unwrap();
        assert_eq!(j.algebra, AlgebraSpec::Series("A3".into()));
        assert_eq!(j.sigma, vec![1, 3]);
        assert_eq!(j.command, Command::Diagram);
        assert_eq!(j.emit, vec![Emit::Dot, Emit::Json]);
        assert_eq!(j.max_jet_dim, DEFAULT_JET_BUDGET);
    }

    #[test]
    fn rejections() {
        let e = parse_spec(&args("--algebra A3 --cross 0 --weight 0,0,0")).unwrap_err();
        assert!(matches!(e, BggError::ValidationError(_)), "{e}");
        let e = parse_spec(&args("--algebra A3 --cross 1 --weight 1,-1,0")).unwrap_err();
        assert!(matches!(e, BggError::ValidationError(ref m) if m.contains("node 2")), "{e}");
        let e = parse_spec(&args("--algebra A3 --cross 1 --weight 1,x,0")).unwrap_err();
        assert_eq!(e, BggError::ParseError { position: 5, message: match &e { BggError::ParseError { message, .. } => message.clone(), _ => unreachable!() } });
        let e = parse_spec(&args("--algebra A3 --cross 1 --weight 0,0,0 --bogus")).unwrap_err();
        assert!(matches!(e, BggError::ParseError { position: 6, .. }), "{e}");
        let e = parse_spec(&args("--algebra Q3 --cross 1 --weight 0,0,0")).unwrap_err();
        assert!(matches!(e, BggError::ParseError { position: 1, .. }), "{e}");
    }

    #[test]
    fn config_file_is_overridden_by_flags() {
        let dir = std::env::temp_dir().join(format!("bgg-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("job.conf");
        std::fs::write(&path, "# job\nalgebra = A2\ncross = 1\nweight = 1,0\ncommand = verify\nemit = json\n").unwrap();
        let j = parse_spec(&[
            "--config".to_string(),
            path.display().to_string(),
            "--weight".into(),
            "0,1".into(),
        ])
        .unwrap();
        assert_eq!(j.weight, vec![0, 1]);
        assert_eq!(j.command, Command::Verify);
        assert_eq!(j.emit, vec![Emit::Json]);
        std::fs::write(&path, "colour = blue\n").unwrap();
        let e = parse_spec(&["--config".to_string(), path.display().to_string()]).unwrap_err();
        assert!(matches!(e, BggError::ParseError { position: 1, .. }), "{e}");
    }

    #[test]
    fn explicit_cartan_matrix() {
        let j = parse_spec(&args("--cartan 2,-1;-3,2 --cross 1 --weight 0,0 cohomology")).unwrap();
        assert_eq!(j.algebra, AlgebraSpec::Matrix(vec![vec![2, -1], vec![-3, 2]]));
        let r = run(&j).unwrap();
        assert_eq!(r.columns.len(), 6);
    }

    #[test]
    fn sl2_diagram_has_one_arrow() {
        let r = run(&parse_spec(&args("--algebra A1 --cross 1 --weight 3 diagram")).unwrap()).unwrap();
        assert_eq!(r.arrows.len(), 1);
        assert_eq!(r.arrows[0].order, 4);
        assert!(r.passed());
    }

    #[test]
    fn verify_on_a2() {
        let r = run(&parse_spec(&args("--algebra A2 --cross 1 --weight 1,0 verify")).unwrap()).unwrap();
        assert!(r.passed(), "{}", emit_text(&r));
        assert!(r.verify.len() >= 15);
    }

    #[test]
    fn outputs_are_deterministic_and_well_formed() {
        let job = parse_spec(&args("--algebra A3 --cross 1,3 --weight 0,0,0 diagram")).unwrap();
        let (r1, r2) = (run(&job).unwrap(), run(&job).unwrap());
        for e in [Emit::Text, Emit::Dot, Emit::Json] {
            assert_eq!(emit(&r1, e), emit(&r2, e));
        }
        let v: serde_json::Value = serde_json::from_str(&emit_json(&r1)).unwrap();
        let dims: Vec<u64> = v["columns"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c["components"].as_array().unwrap().iter().map(|x| x["dim"].as_u64().unwrap()).sum())
            .collect();
        assert_eq!(dims, vec![1, 4, 5, 5, 4, 1]);
        assert!(v["columns"][1]["components"][0]["e_eigenvalue"].as_str().unwrap().contains('/'));
        for key in ["algebra", "sigma", "weight", "columns", "arrows", "verify"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        let dot = emit_dot(&r1);
        assert!(dot.starts_with("digraph bgg {") && dot.ends_with("}\n"));
        assert_eq!(dot.matches(" -> ").count(), r1.arrows.len());
    }

    #[test]
    fn empty_arrow_columns_render_without_edges() {
        let r = run(&parse_spec(&args("--algebra A2 --cross 1 --weight 0,0 cohomology")).unwrap()).unwrap();
        assert!(!emit_dot(&r).contains("->"));
    }

    proptest! {
        #[test]
        fn spec_round_trips(
            series in prop::sample::select(vec![("A", 3usize), ("B", 2), ("C", 3), ("G", 2), ("D", 4)]),
            mask in 1u32..16,
            weight in prop::collection::vec(0i64..4, 4),
            command in prop::sample::select(vec![Command::Cohomology, Command::Diagram, Command::Verify]),
            emit in prop::sample::subsequence(vec![Emit::Text, Emit::Dot, Emit::Json], 1..=3),
            budgets in (1u64..1000, 1usize..100_000),
            use_matrix in any::<bool>(),
        ) {
            let (s, n) = series;
            let sigma: Vec<usize> = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            prop_assume!(!sigma.is_empty());
            let label = format!("{s}{n}");
            let algebra = if use_matrix {
                AlgebraSpec::Matrix(CartanMatrix::parse(&label).unwrap().rows().to_vec())
            } else {
                AlgebraSpec::Series(label)
            };
            let job = JobSpec {
                algebra,
                sigma,
                weight: weight[..n].to_vec(),
                command,
                emit,
                max_module_dim: budgets.0,
                max_jet_dim: budgets.1,
                out: None,
            };
            prop_assert_eq!(parse_spec(&job.to_args()).unwrap(), job);
        }
    }
}
