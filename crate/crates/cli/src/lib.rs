//! Command-line front end for the quiverknot library.
//!
//! Input arguments accept a file path, `fixture:<name>` for bundled data, and
//! for biquandles also `alexander:m,t,r`.

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::path::PathBuf;

use quiverknot::algebra::{endomorphisms, Biquandle, BqMap};
use quiverknot::complex::n_directed_clique_complex;
use quiverknot::diagram::{colorings, LinkDiagram};
use quiverknot::fixtures;
use quiverknot::homology::{homology_profile, Coefficients};
use quiverknot::persistence::{
    filtered_complex, persistence_pair, quiver_filtration, EndoFiltration, FilteredComplex,
    PersistencePair,
};
use quiverknot::quiver::{build_quiver, in_degree_multiset, in_degree_polynomial};
use quiverknot::render::render_barcode;

#[derive(Debug, Parser)]
#[command(name = "quiverknot", version, about = "Biquandle coloring quiver invariants of links")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub inputs: Inputs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the biquandle axioms
    CheckBiquandle,
    /// List all endomorphisms of the biquandle
    Endos,
    /// List or count colorings of a diagram
    Color {
        #[arg(long)]
        count: bool,
    },
    /// Build the coloring quiver for an endomorphism set
    Quiver,
    /// In-degree polynomial, or one per stage with --filtration
    Indegree,
    /// N-directed clique homology of a quiver or a raw complex
    Homology,
    /// Persistence barcode and stillborn matrix
    Persist,
}

#[derive(Debug, Args)]
pub struct Inputs {
    /// Biquandle matrix file, `fixture:<name>` or `alexander:m,t,r`
    #[arg(long, global = true)]
    pub biquandle: Option<String>,
    /// Diagram JSON file or `fixture:<name>`
    #[arg(long, global = true)]
    pub diagram: Option<String>,
    /// Endomorphism set JSON (defaults to all endomorphisms)
    #[arg(long, global = true)]
    pub endos: Option<String>,
    /// Endomorphism filtration JSON or `fixture:<name>`
    #[arg(long, global = true)]
    pub filtration: Option<String>,
    /// Raw (filtered) complex JSON or `fixture:<name>`
    #[arg(long, global = true)]
    pub complex: Option<String>,
    /// Multiplicity threshold
    #[arg(short = 'N', global = true, default_value_t = 1)]
    pub threshold: usize,
    /// Highest simplex dimension built
    #[arg(long, global = true, default_value_t = 4)]
    pub max_dim: usize,
    #[arg(long, global = true, value_enum, default_value_t = Coeff::Gf2)]
    pub coeff: Coeff,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Coeff {
    Gf2,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Svg,
    Text,
}

/// Output of a run: the text to emit and whether the check it performed passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub output: String,
    pub success: bool,
}

impl Report {
    fn ok(output: String) -> Self {
        Report {
            output,
            success: true,
        }
    }
}

fn read_source(arg: &str, what: &str) -> Result<String> {
    std::fs::read_to_string(arg).with_context(|| format!("cannot read {what} file `{arg}`"))
}

fn load_biquandle(inputs: &Inputs) -> Result<Biquandle> {
    let arg = inputs.biquandle.as_deref().context("--biquandle is required")?;
    let parsed = if let Some(name) = arg.strip_prefix("fixture:") {
        fixtures::biquandle(name)
    } else if arg.starts_with("alexander:") {
        fixtures::biquandle(arg)
    } else {
        Biquandle::parse(&read_source(arg, "biquandle")?)
    };
    parsed.with_context(|| format!("biquandle `{arg}`"))
}

fn load_valid_biquandle(inputs: &Inputs) -> Result<Biquandle> {
    let x = load_biquandle(inputs)?;
    let report = x.validate();
    if !report.is_valid() {
        bail!(
            "biquandle `{}` is invalid: {report}",
            inputs.biquandle.as_deref().unwrap_or_default()
        );
    }
    Ok(x)
}

fn load_diagram(inputs: &Inputs) -> Result<LinkDiagram> {
    let arg = inputs.diagram.as_deref().context("--diagram is required")?;
    let parsed = match arg.strip_prefix("fixture:") {
        Some(name) => fixtures::diagram(name),
        None => LinkDiagram::parse(&read_source(arg, "diagram")?),
    };
    parsed.with_context(|| format!("diagram `{arg}`"))
}

fn load_filtration(arg: &str, x: &Biquandle) -> Result<EndoFiltration> {
    let parsed = match arg.strip_prefix("fixture:") {
        Some(name) => fixtures::filtration(name, x),
        None => EndoFiltration::from_json(&read_source(arg, "filtration")?, x),
    };
    parsed.with_context(|| format!("filtration `{arg}`"))
}

/// Endomorphism set from `--endos`, or all of End(X).
fn load_endos(inputs: &Inputs, x: &Biquandle) -> Result<Vec<BqMap>> {
    let Some(arg) = inputs.endos.as_deref() else {
        return Ok(endomorphisms(x));
    };
    let text = read_source(arg, "endomorphism set")?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("endomorphism set `{arg}`"))?;
    let list = value.get("maps").unwrap_or(&value);
    let tuples: Vec<Vec<i64>> = serde_json::from_value(list.clone())
        .with_context(|| format!("endomorphism set `{arg}`: expected a list of tuples"))?;
    let maps = tuples
        .iter()
        .map(|t| BqMap::from_one_indexed(t, x.size()))
        .collect::<quiverknot::Result<Vec<_>>>()
        .with_context(|| format!("endomorphism set `{arg}`"))?;
    // reuse the filtration checks: endomorphisms, no duplicates
    EndoFiltration::new(vec![maps.clone()], x).with_context(|| format!("endomorphism set `{arg}`"))?;
    Ok(maps)
}

fn load_complex(arg: &str) -> Result<FilteredComplex> {
    let parsed = match arg.strip_prefix("fixture:") {
        Some(name) => fixtures::filtered_complex(name),
        None => FilteredComplex::from_json(&read_source(arg, "complex")?),
    };
    parsed.with_context(|| format!("complex `{arg}`"))
}

fn one_indexed(labels: &[usize]) -> Vec<usize> {
    labels.iter().map(|l| l + 1).collect()
}

fn format_or(inputs: &Inputs, default: Format, allowed: &[Format]) -> Result<Format> {
    let f = inputs.format.unwrap_or(default);
    if !allowed.contains(&f) {
        bail!("format {f:?} is not available for this command");
    }
    Ok(f)
}

fn json_line(value: serde_json::Value) -> String {
    let mut s = value.to_string();
    s.push('\n');
    s
}

/// Executes one subcommand and returns its output.
pub fn run(config: &RunConfig) -> Result<Report> {
    let inputs = &config.inputs;
    if inputs.threshold == 0 {
        bail!("-N must be at least 1");
    }
    match &config.command {
        Command::CheckBiquandle => {
            let x = load_biquandle(inputs)?;
            let report = x.validate();
            let out = match format_or(inputs, Format::Text, &[Format::Text, Format::Json])? {
                Format::Json => json_line(match &report.violation {
                    None => json!({"valid": true, "n": x.size()}),
                    Some(v) => json!({
                        "valid": false,
                        "n": x.size(),
                        "axiom": v.axiom.group(),
                        "law": format!("{:?}", v.axiom),
                        "witness": one_indexed(&v.witness),
                    }),
                }),
                _ => format!("{report}\n"),
            };
            Ok(Report {
                output: out,
                success: report.is_valid(),
            })
        }
        Command::Endos => {
            let x = load_valid_biquandle(inputs)?;
            let maps = endomorphisms(&x);
            Ok(Report::ok(
                match format_or(inputs, Format::Json, &[Format::Text, Format::Json])? {
                    Format::Json => json_line(json!({
                        "maps": maps.iter().map(BqMap::to_one_indexed).collect::<Vec<_>>()
                    })),
                    _ => maps.iter().map(|m| format!("{m}\n")).collect(),
                },
            ))
        }
        Command::Color { count } => {
            let x = load_valid_biquandle(inputs)?;
            let d = load_diagram(inputs)?;
            let cs = colorings(&d, &x);
            let fmt = format_or(inputs, Format::Text, &[Format::Text, Format::Json])?;
            Ok(Report::ok(match (fmt, count) {
                (Format::Json, true) => json_line(json!({"count": cs.len()})),
                (Format::Json, false) => json_line(json!({
                    "count": cs.len(),
                    "colorings": cs.iter().map(|c| one_indexed(c)).collect::<Vec<_>>(),
                })),
                (_, true) => format!("{}\n", cs.len()),
                (_, false) => cs
                    .iter()
                    .map(|c| format!("{:?}\n", one_indexed(c)))
                    .collect::<String>()
                    .replace(' ', ""),
            }))
        }
        Command::Quiver => {
            let x = load_valid_biquandle(inputs)?;
            let d = load_diagram(inputs)?;
            let s = load_endos(inputs, &x)?;
            let q = build_quiver(&d, &x, &s)?;
            Ok(Report::ok(
                match format_or(inputs, Format::Json, &[Format::Json, Format::Dot])? {
                    Format::Dot => q.to_dot(),
                    _ => format!("{}\n", q.to_json()),
                },
            ))
        }
        Command::Indegree => {
            let x = load_valid_biquandle(inputs)?;
            let d = load_diagram(inputs)?;
            let polys = match inputs.filtration.as_deref() {
                Some(f) => in_degree_multiset(&d, &x, &load_filtration(f, &x)?)?,
                None => vec![in_degree_polynomial(&build_quiver(&d, &x, &load_endos(inputs, &x)?)?)],
            };
            Ok(Report::ok(
                match format_or(inputs, Format::Text, &[Format::Text, Format::Json])? {
                    Format::Json => json_line(json!({
                        "polynomials": polys
                            .iter()
                            .map(|p| json!({"text": p.to_string(), "terms": p.terms}))
                            .collect::<Vec<_>>()
                    })),
                    _ => polys.iter().map(|p| format!("{p}\n")).collect(),
                },
            ))
        }
        Command::Homology => {
            let complex = match inputs.complex.as_deref() {
                Some(arg) => load_complex(arg)?.complex,
                None => {
                    let x = load_valid_biquandle(inputs)?;
                    let d = load_diagram(inputs)?;
                    let q = build_quiver(&d, &x, &load_endos(inputs, &x)?)?;
                    n_directed_clique_complex(&q, inputs.threshold, inputs.max_dim)
                }
            };
            let coeff = match inputs.coeff {
                Coeff::Gf2 => Coefficients::Gf2,
                Coeff::Z => Coefficients::Z,
            };
            let profile = homology_profile(&complex, coeff)?;
            Ok(Report::ok(
                match format_or(inputs, Format::Json, &[Format::Text, Format::Json])? {
                    Format::Json => format!("{}\n", profile.to_json()),
                    _ => profile.describe().iter().map(|l| format!("{l}\n")).collect(),
                },
            ))
        }
        Command::Persist => {
            let pp = persist(inputs)?;
            Ok(Report::ok(
                match format_or(inputs, Format::Json, &[Format::Json, Format::Svg, Format::Text])? {
                    Format::Json => format!("{}\n", pp.to_json()),
                    Format::Svg => render_barcode(&pp, "svg")?,
                    _ => render_barcode(&pp, "text")?,
                },
            ))
        }
    }
}

fn persist(inputs: &Inputs) -> Result<PersistencePair> {
    if let Some(arg) = inputs.complex.as_deref() {
        return Ok(persistence_pair(&load_complex(arg)?));
    }
    let x = load_valid_biquandle(inputs)?;
    let d = load_diagram(inputs)?;
    let arg = inputs
        .filtration
        .as_deref()
        .context("persist needs --filtration (or --complex)")?;
    let filtration = load_filtration(arg, &x)?;
    filtration
        .require_empty_start()
        .with_context(|| format!("filtration `{arg}`"))?;
    let quivers = quiver_filtration(&d, &x, &filtration)?;
    let fc = filtered_complex(&quivers, inputs.threshold, inputs.max_dim)?;
    let mut pp = persistence_pair(&fc);
    pp.threshold = Some(inputs.threshold);
    Ok(pp)
}

/// Runs and writes the output to `--out` or stdout.
pub fn execute(config: &RunConfig) -> Result<bool> {
    let report = run(config)?;
    match &config.inputs.out {
        Some(path) => std::fs::write(path, &report.output)
            .with_context(|| format!("cannot write `{}`", path.display()))?,
        None => print!("{}", report.output),
    }
    Ok(report.success)
}
