//! `neumaier`: construct, search for, and verify Neumaier graphs.

mod fixtures;

use std::io::{Read, Write};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use neumaier_core::affine::build_vo_plus;
use neumaier_core::cliques::verify;
use neumaier_core::g6;
use neumaier_core::graph::{set_vertex_cap, Graph};
use neumaier_core::iso::is_isomorphic;
use neumaier_core::params::{enumerate_feasible, FeasibilityRecord, NeumaierParams, Verdict};
use neumaier_core::search::{search_ng, Budget, SearchMode, SearchSpec};
use neumaier_core::switching::{
    construct_gamma1, construct_gamma2, explore_switchings, Gamma2Variant,
};

/// JSON documents carry a schema version for CI stability.
const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "neumaier", version, about = "Neumaier graph toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate feasible parameter tuples (v,k,λ;m,s) up to a vertex bound.
    Feasible {
        #[arg(long = "max-v")]
        max_v: usize,
        /// Emit JSON lines instead of the aligned table.
        #[arg(long)]
        json: bool,
    },
    /// Build a named graph and print it as graph6.
    Construct(ConstructArgs),
    /// Read a graph6 graph and report its Neumaier classification as JSON.
    /// Exits 1 when the graph is not a Neumaier graph.
    Verify {
        /// graph6 file, or `-` for stdin.
        file: String,
    },
    /// Test two graph6 graphs for isomorphism. Exits 0 with a witness
    /// permutation on stdout, or 1 when not isomorphic.
    Iso { file1: String, file2: String },
    /// Exhaustive clique-seeded search for graphs with given parameters.
    /// Streams results as graph6 lines plus a JSON stats trailer.
    Search(SearchArgs),
    /// Re-encode a graph6 graph as graph6, DOT or JSON.
    Export {
        /// graph6 file, or `-` for stdin.
        file: String,
        #[arg(long, value_enum)]
        format: ExportFormat,
    },
    /// Check the bundled reference matrices against the constructions.
    Fixtures {
        #[command(subcommand)]
        action: FixturesAction,
    },
    /// Apply all short switching sequences to a construction and list the
    /// strictly Neumaier results (one graph6 line per isomorphism class).
    Explore {
        #[arg(long)]
        e: usize,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(value_enum)]
    family: Family,
    /// Half-dimension of the underlying vector space (vertex count 4^e).
    #[arg(long)]
    e: usize,
    /// For gamma2: which of the two mixed half-cliques is switched.
    #[arg(long, value_enum, default_value_t = VariantArg::A)]
    variant: VariantArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// The affine polar graph VO+(2e,2).
    Voplus,
    /// First switching construction (strictly Neumaier).
    Gamma1,
    /// Second switching construction (strictly Neumaier).
    Gamma2,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    A,
    B,
}

#[derive(Args)]
struct SearchArgs {
    /// Parameters as v,k,lambda,m,s.
    #[arg(long, value_parser = parse_params)]
    params: NeumaierParams,
    /// Explore the whole space instead of stopping at the first result.
    #[arg(long)]
    exhaustive: bool,
    /// Also report members that are strongly regular.
    #[arg(long)]
    all_members: bool,
    #[arg(long, default_value_t = 1_000_000_000)]
    budget_nodes: u64,
    #[arg(long, default_value_t = 3600)]
    budget_secs: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Graph6,
    Dot,
    Json,
}

#[derive(Subcommand)]
enum FixturesAction {
    /// Validate checksums and compare each matrix with its construction.
    Check,
}

fn parse_params(s: &str) -> Result<NeumaierParams, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 5 {
        return Err("expected five comma-separated integers v,k,lambda,m,s".into());
    }
    let nums: Vec<usize> = parts
        .iter()
        .map(|p| p.trim().parse::<usize>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    NeumaierParams::new(nums[0], nums[1], nums[2], nums[3], nums[4]).map_err(|e| e.to_string())
}

fn read_graph(path: &str) -> Result<Graph> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading stdin")?;
        buf
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?
    };
    let line = text
        .lines()
        .find(|l| !l.trim().is_empty())
        .context("input contains no graph6 line")?;
    g6::decode(line).map_err(|e| anyhow::anyhow!("{path}: {e}"))
}

fn feasible_row_text(rec: &FeasibilityRecord) -> String {
    let p = rec.params;
    let rule = match rec.verdict {
        Verdict::Open => "-".to_string(),
        Verdict::ErgSettled(r) | Verdict::NgSettled(r) => r.to_string(),
    };
    format!(
        "{:>3} {:>3} {:>3} {:>3} {:>3}  {}",
        p.v, p.k, p.lambda, p.m, p.s, rule
    )
}

#[derive(Serialize)]
struct FeasibleLine<'a> {
    schema: u32,
    #[serde(flatten)]
    record: &'a FeasibilityRecord,
}

fn cmd_feasible(max_v: usize, json: bool) -> Result<ExitCode> {
    let records = enumerate_feasible(max_v);
    let mut out = std::io::stdout().lock();
    if json {
        for rec in &records {
            let line = serde_json::to_string(&FeasibleLine {
                schema: SCHEMA_VERSION,
                record: rec,
            })?;
            writeln!(out, "{line}")?;
        }
    } else {
        writeln!(out, "{:>3} {:>3} {:>3} {:>3} {:>3}  result", "v", "k", "l", "m", "s")?;
        for rec in &records {
            writeln!(out, "{}", feasible_row_text(rec))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_construct(args: &ConstructArgs) -> Result<ExitCode> {
    let variant = match args.variant {
        VariantArg::A => Gamma2Variant::A,
        VariantArg::B => Gamma2Variant::B,
    };
    let g = match args.family {
        Family::Voplus => build_vo_plus(args.e)?,
        Family::Gamma1 => construct_gamma1(args.e)?,
        Family::Gamma2 => construct_gamma2(args.e, variant)?,
    };
    println!("{}", g6::encode(&g));
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(file: &str) -> Result<ExitCode> {
    let g = read_graph(file)?;
    let report = verify(&g);
    #[derive(Serialize)]
    struct Document<'a> {
        schema: u32,
        #[serde(flatten)]
        report: &'a neumaier_core::cliques::VerificationReport,
    }
    let doc = Document {
        schema: SCHEMA_VERSION,
        report: &report,
    };
    println!("{}", serde_json::to_string_pretty(&doc)?);
    Ok(if report.classification.params().is_some() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_iso(file1: &str, file2: &str) -> Result<ExitCode> {
    let g1 = read_graph(file1)?;
    let g2 = read_graph(file2)?;
    match is_isomorphic(&g1, &g2) {
        Some(witness) => {
            let strings: Vec<String> = witness.iter().map(|w| w.to_string()).collect();
            println!("{}", strings.join(" "));
            Ok(ExitCode::SUCCESS)
        }
        None => {
            eprintln!("not isomorphic");
            Ok(ExitCode::from(1))
        }
    }
}

fn cmd_search(args: &SearchArgs) -> Result<ExitCode> {
    let spec = SearchSpec {
        params: args.params,
        budget: Budget {
            max_nodes: args.budget_nodes,
            max_millis: args.budget_secs.saturating_mul(1000),
        },
        mode: if args.exhaustive {
            SearchMode::Exhaustive
        } else {
            SearchMode::FirstFound
        },
        strict_only: !args.all_members,
    };
    let result = search_ng(&spec)?;
    let mut out = std::io::stdout().lock();
    for g in &result.representatives {
        writeln!(out, "{}", g6::encode(g))?;
    }
    #[derive(Serialize)]
    struct Trailer {
        schema: u32,
        representatives: usize,
        exhaustive: bool,
        stats: neumaier_core::search::SearchStats,
    }
    let trailer = serde_json::to_string(&Trailer {
        schema: SCHEMA_VERSION,
        representatives: result.representatives.len(),
        exhaustive: result.exhaustive,
        stats: result.stats,
    })?;
    writeln!(out, "{trailer}")?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_export(file: &str, format: ExportFormat) -> Result<ExitCode> {
    let g = read_graph(file)?;
    match format {
        ExportFormat::Graph6 => println!("{}", g6::encode(&g)),
        ExportFormat::Dot => print!("{}", g6::to_dot(&g, "g")),
        ExportFormat::Json => {
            #[derive(Serialize)]
            struct GraphDoc {
                schema: u32,
                vertices: usize,
                edges: Vec<(usize, usize)>,
            }
            let doc = GraphDoc {
                schema: SCHEMA_VERSION,
                vertices: g.vertex_count(),
                edges: g.edges(),
            };
            println!("{}", serde_json::to_string(&doc)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_fixtures_check() -> Result<ExitCode> {
    let mut failures = 0;
    for name in fixtures::FIXTURE_NAMES {
        let fixture = fixtures::load_fixture(name)?;
        let reference = match name {
            "A2" | "B2" => build_vo_plus(2)?,
            "A21" => construct_gamma1(2)?,
            "B22" => construct_gamma2(2, Gamma2Variant::A)?,
            _ => unreachable!(),
        };
        let ok = fixture.matches(&reference);
        println!(
            "{}: {}{}",
            fixture.name,
            if ok { "ok" } else { "MISMATCH" },
            if let Some((pos, printed)) = fixture.printed_overrides.first() {
                format!(
                    " (column {} printed as {printed}, resolved to {})",
                    pos + 1,
                    fixture.labels[*pos]
                )
            } else {
                String::new()
            }
        );
        if !ok {
            failures += 1;
        }
    }
    Ok(if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_explore(e: usize, depth: usize) -> Result<ExitCode> {
    let base = build_vo_plus(e)?;
    let classes = explore_switchings(&base, depth)?;
    let mut out = std::io::stdout().lock();
    for g in &classes {
        writeln!(out, "{}", g6::encode(g))?;
    }
    eprintln!("{} strictly Neumaier class(es)", classes.len());
    Ok(ExitCode::SUCCESS)
}

fn run() -> Result<ExitCode> {
    if let Ok(cap) = std::env::var("NEUMAIER_MAX_V") {
        let cap: usize = cap
            .parse()
            .context("NEUMAIER_MAX_V must be a positive integer")?;
        if cap == 0 {
            bail!("NEUMAIER_MAX_V must be a positive integer");
        }
        set_vertex_cap(cap);
    }
    let cli = Cli::parse();
    match &cli.command {
        Command::Feasible { max_v, json } => cmd_feasible(*max_v, *json),
        Command::Construct(args) => cmd_construct(args),
        Command::Verify { file } => cmd_verify(file),
        Command::Iso { file1, file2 } => cmd_iso(file1, file2),
        Command::Search(args) => cmd_search(args),
        Command::Export { file, format } => cmd_export(file, *format),
        Command::Fixtures { action } => match action {
            FixturesAction::Check => cmd_fixtures_check(),
        },
        Command::Explore { e, depth } => cmd_explore(*e, *depth),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
