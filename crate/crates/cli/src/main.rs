// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use motif_poisson::bounds::DEFAULT_QUAD_POINTS;
use motif_poisson::{
    bound_graphon, bound_independent_edges, bound_independent_edges_with_mu, bound_nu, bound_sbm,
    bound_scaled, count_copies, mu_graphon, mu_sbm, rate_exponent, AnalyzedMotif, Model, Motif,
    MotifFamily, NuTable, SampledGraph, SimulationPlan,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

mod inputs;
mod manifest;

use inputs::{read_file, resolve_model, resolve_motif, CliError, EXIT_USAGE};
use manifest::{merge, Manifest};

/// Poisson approximation of motif counts in block-model and graphon random
/// graphs.
#[derive(Parser)]
#[command(name = "motif-poisson", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact invariants of a motif.
    Motif(MotifArgs),
    /// Total-variation bound between the copy count and its Poisson limit.
    Bound(BoundArgs),
    /// Count copies of a motif in a graph file or a sampled graph.
    Count(CountArgs),
    /// Simulate replicates and compare the empirical law with the bound.
    Simulate(SimulateArgs),
    /// Invariants and rate exponents of the builtin families.
    Tables(TablesArgs),
}

#[derive(Args, Serialize, Deserialize)]
struct MotifArgs {
    /// `family:v` (tree, cycle, almost_complete, complete) or an edge-list file.
    motif: Option<String>,
    /// Print a text table instead of JSON.
    #[arg(long)]
    #[serde(default)]
    text: bool,
    #[arg(long)]
    config: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum Variant {
    Sbm,
    Graphon,
    Nu,
    Independent,
    Scaled,
}

#[derive(Args, Serialize, Deserialize)]
struct BoundArgs {
    /// Model as inline JSON or a JSON file.
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    motif: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Defaults to the model's own variant.
    #[arg(long, value_enum)]
    variant: Option<Variant>,
    /// JSON table of nu values, for `--variant nu`.
    #[arg(long)]
    nu_table: Option<String>,
    /// Dependence width for `--variant nu`.
    #[arg(long, default_value_t = 1)]
    g: u64,
    /// Occurrence probability, overriding the model's.
    #[arg(long)]
    mu: Option<f64>,
    /// Maximum edge probability for `--variant independent`.
    #[arg(long)]
    nu_max: Option<f64>,
    #[arg(long)]
    c_lower: Option<f64>,
    #[arg(long)]
    c_upper: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_QUAD_POINTS)]
    quad_points: usize,
    #[arg(long)]
    config: Option<String>,
}

#[derive(Args, Serialize, Deserialize)]
struct CountArgs {
    #[arg(long)]
    motif: Option<String>,
    /// Edge-list file; otherwise a graph is sampled from `--model`.
    #[arg(long, conflicts_with = "model")]
    graph: Option<String>,
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, env = "MOTIF_POISSON_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    replicate: u64,
    #[arg(long)]
    config: Option<String>,
}

#[derive(Args, Serialize, Deserialize)]
struct SimulateArgs {
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    motif: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    replicates: Option<u64>,
    #[arg(long, env = "MOTIF_POISSON_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_QUAD_POINTS)]
    quad_points: usize,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    threads: Option<usize>,
    /// Write the JSON summary here instead of stdout.
    #[arg(long)]
    out: Option<String>,
    /// Also write the histogram as CSV.
    #[arg(long)]
    csv: Option<String>,
    /// Record the start time and wall time in the output.
    #[arg(long)]
    #[serde(default)]
    record_time: bool,
    #[arg(long)]
    config: Option<String>,
}

#[derive(Args, Serialize, Deserialize)]
struct TablesArgs {
    /// Inclusive vertex range, e.g. `3..7`.
    #[arg(long, default_value = "3..7")]
    v_range: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE as u8) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Motif(a) => cmd_motif(a),
        Command::Bound(a) => cmd_bound(a),
        Command::Count(a) => cmd_count(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Tables(a) => cmd_tables(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}

fn emit(text: &str, out: Option<&str>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::usage(format!("cannot write {path:?}: {e}"))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::usage(format!("cannot write output: {e}")))
        }
    }
}

fn emit_json(manifest: &Manifest, body: Value, out: Option<&str>) -> Result<(), CliError> {
    let mut doc = json!({ "manifest": manifest });
    if let (Value::Object(doc), Value::Object(body)) = (&mut doc, body) {
        doc.extend(body);
    }
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    emit(&text, out)
}

/// Value of a flag that may come from the command line or the config file.
fn need<T: Clone>(value: &Option<T>, flag: &str) -> Result<T, CliError> {
    value
        .clone()
        .ok_or_else(|| CliError::usage(format!("{flag} is required (as a flag or in --config)")))
}

fn motif_json(m: &Motif) -> Value {
    json!({ "vertex_count": m.vertex_count(), "edges": m.edges() })
}

fn cmd_motif(args: MotifArgs) -> Result<(), CliError> {
    let config = args.config.clone();
    let merged = merge("motif", args, config.as_deref(), false)?;
    let motif = resolve_motif(&need(&merged.args.motif, "<MOTIF>")?)?;
    let stats = motif.stats();
    if merged.args.text {
        let kappa: Vec<String> = stats.kappa.iter().map(|(s, k)| format!("{s}:{k}")).collect();
        let text = format!(
            "vertices           {}\nedges              {}\ndensity            {}\nalpha              {}\ngamma              {}\nautomorphisms      {}\nrho                {}\nstrictly_balanced  {}\nkappa              {}\n",
            stats.vertex_count,
            stats.edge_count,
            stats.density,
            stats.alpha,
            stats.gamma,
            stats.automorphism_count,
            stats.rho,
            stats.strictly_balanced,
            kappa.join(" "),
        );
        return emit(&text, None);
    }
    emit_json(
        &merged.manifest,
        json!({ "motif": motif_json(&motif), "stats": stats }),
        None,
    )
}

fn model_mu(model: &Model, motif: &Motif, quad_points: usize) -> Result<f64, CliError> {
    Ok(match model {
        Model::Sbm(p) => mu_sbm(p, motif)?,
        Model::Graphon(g) => mu_graphon(g, motif, quad_points)?.value,
    })
}

fn require<T>(value: Option<T>, flag: &str, variant: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::usage(format!("--variant {variant} needs {flag}")))
}

fn cmd_bound(args: BoundArgs) -> Result<(), CliError> {
    let config = args.config.clone();
    let merged = merge("bound", args, config.as_deref(), false)?;
    let a = &merged.args;
    let motif = AnalyzedMotif::new(resolve_motif(&need(&a.motif, "--motif")?)?);
    let n = need(&a.n, "--n")?;
    let model = a.model.as_deref().map(resolve_model).transpose()?;
    let variant = match (a.variant, &model) {
        (Some(v), _) => v,
        (None, Some(Model::Sbm(_))) => Variant::Sbm,
        (None, Some(Model::Graphon(_))) => Variant::Graphon,
        (None, None) => return Err(CliError::usage("give --model or --variant")),
    };
    if variant != Variant::Scaled && n < motif.vertex_count() {
        return Err(CliError::invalid(format!(
            "n = {} is smaller than the motif's {} vertices",
            n,
            motif.vertex_count()
        )));
    }
    let report = match variant {
        Variant::Sbm => match require(model.as_ref(), "--model", "sbm")? {
            Model::Sbm(p) => serde_json::to_value(bound_sbm(p, &motif, n)?),
            Model::Graphon(_) => return Err(CliError::usage("--variant sbm needs a block model")),
        },
        Variant::Graphon => match require(model.as_ref(), "--model", "graphon")? {
            Model::Graphon(g) => serde_json::to_value(bound_graphon(g, &motif, n, a.quad_points)?),
            Model::Sbm(_) => return Err(CliError::usage("--variant graphon needs a graphon model")),
        },
        Variant::Independent => {
            let nu_max = match (a.nu_max, &model) {
                (Some(p), _) => p,
                (None, Some(Model::Sbm(p))) => p.pi_star(),
                (None, Some(Model::Graphon(g))) => motif_poisson::h_star(g),
                (None, None) => return Err(CliError::usage("--variant independent needs --nu-max or --model")),
            };
            let mu = match (a.mu, &model) {
                (Some(mu), _) => Some(mu),
                (None, Some(m)) => Some(model_mu(m, &motif.motif, a.quad_points)?),
                (None, None) => None,
            };
            let report = match mu {
                Some(mu) => bound_independent_edges_with_mu(&motif, n, nu_max, mu)?,
                None => bound_independent_edges(&motif, n, nu_max)?,
            };
            serde_json::to_value(report)
        }
        Variant::Nu => {
            let path = require(a.nu_table.as_deref(), "--nu-table", "nu")?;
            let table: NuTable = serde_json::from_str(&read_file(path, "nu table")?)
                .map_err(|e| CliError::invalid(format!("nu table {path:?}: {e}")))?;
            let mu = match (a.mu, &model) {
                (Some(mu), _) => mu,
                (None, Some(m)) => model_mu(m, &motif.motif, a.quad_points)?,
                (None, None) => return Err(CliError::usage("--variant nu needs --mu or --model")),
            };
            serde_json::to_value(bound_nu(&motif, n, a.g, mu, &table)?)
        }
        Variant::Scaled => {
            let c = require(a.c_lower, "--c-lower", "scaled")?;
            let big_c = require(a.c_upper, "--c-upper", "scaled")?;
            serde_json::to_value(bound_scaled(&motif, n, c, big_c)?)
        }
    }
    .expect("report serializes");
    emit_json(
        &merged.manifest,
        json!({
            "motif": motif_json(&motif.motif),
            "stats": motif.stats,
            "model": model,
            "report": report,
        }),
        None,
    )
}

fn cmd_count(args: CountArgs) -> Result<(), CliError> {
    let config = args.config.clone();
    let merged = merge("count", args, config.as_deref(), false)?;
    let a = &merged.args;
    let motif = resolve_motif(&need(&a.motif, "--motif")?)?;
    let graph = match (&a.graph, &a.model) {
        (Some(path), _) => SampledGraph::parse_edge_list(&read_file(path, "graph file")?)?,
        (None, Some(model)) => {
            let n = a.n.ok_or_else(|| CliError::usage("sampling a graph needs --n"))?;
            resolve_model(model)?.sample(n, a.seed, a.replicate)?
        }
        (None, None) => return Err(CliError::usage("give --graph or --model")),
    };
    let count = count_copies(&graph, &motif)?;
    emit_json(
        &merged.manifest,
        json!({
            "motif": motif_json(&motif),
            "n": graph.n(),
            "edge_count": graph.edge_count(),
            "count": count.count,
            "injections": count.injections,
        }),
        None,
    )
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), CliError> {
    let config = args.config.clone();
    let record_time = args.record_time;
    let merged = merge("simulate", args, config.as_deref(), record_time)?;
    let a = &merged.args;
    let plan = SimulationPlan {
        quad_points: a.quad_points,
        ..SimulationPlan::new(
            resolve_model(&need(&a.model, "--model")?)?,
            resolve_motif(&need(&a.motif, "--motif")?)?,
            need(&a.n, "--n")?,
            need(&a.replicates, "--replicates")?,
            a.seed,
        )
    };
    let mut summary = match a.threads {
        Some(0) => return Err(CliError::usage("--threads must be at least 1")),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::usage(format!("thread pool: {e}")))?
            .install(|| motif_poisson::run(&plan))?,
        None => motif_poisson::run(&plan)?,
    };
    if !a.record_time {
        summary.wall_time_seconds = None;
    }
    if let Some(path) = &a.csv {
        fs::write(path, summary.histogram_csv())
            .map_err(|e| CliError::usage(format!("cannot write {path:?}: {e}")))?;
    }
    emit_json(
        &merged.manifest,
        json!({
            "motif": motif_json(&plan.motif),
            "model": plan.model,
            "summary": summary,
        }),
        a.out.as_deref(),
    )
}

fn parse_range(text: &str) -> Result<RangeInclusive<usize>, CliError> {
    let bad = || CliError::usage(format!("--v-range expects LO..HI, got {text:?}"));
    let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if lo < 3 || hi < lo || hi > motif_poisson::MAX_MOTIF_VERTICES {
        return Err(CliError::usage(format!(
            "--v-range must lie within 3..{}",
            motif_poisson::MAX_MOTIF_VERTICES
        )));
    }
    Ok(lo..=hi)
}

fn cmd_tables(args: TablesArgs) -> Result<(), CliError> {
    let range = parse_range(&args.v_range)?;
    let mut out = format!(
        "# motif-poisson {} tables --v-range {}..{}\n\n",
        env!("CARGO_PKG_VERSION"),
        range.start(),
        range.end()
    );
    out.push_str("# density d, alpha, gamma\n");
    out.push_str(&format!("{:<16} {:>2}  {:>8} {:>8} {:>8}\n", "family", "v", "d", "alpha", "gamma"));
    let mut rates = String::from("# rate exponent r: bound = O(n^-r) when pi* = n^(-1/d)\n");
    rates.push_str(&format!("{:<16} {:>2}  {:>8}\n", "family", "v", "r"));
    for family in MotifFamily::ALL {
        for v in range.clone() {
            let m = AnalyzedMotif::new(Motif::builtin(family, v)?);
            let s = &m.stats;
            out.push_str(&format!(
                "{:<16} {:>2}  {:>8} {:>8} {:>8}\n",
                family.name(),
                v,
                s.density.to_string(),
                s.alpha.to_string(),
                s.gamma.to_string()
            ));
            let r = match rate_exponent(&m) {
                Ok(r) => r.to_string(),
                Err(_) => "-".to_string(),
            };
            rates.push_str(&format!("{:<16} {:>2}  {:>8}\n", family.name(), v, r));
        }
    }
    out.push('\n');
    out.push_str(&rates);
    emit(&out, None)
}
