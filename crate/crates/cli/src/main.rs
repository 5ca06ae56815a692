mod config;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use config::{parse_vector, parse_vector_word, CliResult, CoverArgs, Failure, LoadedCover};
use rosecover::cw_check::{isotypic_decomposition, verify_chevalley_weil};
use rosecover::edge_slide::{lifted_action_formula, lifted_action_oracle};
use rosecover::linalg::format_rational;
use rosecover::orbit_mover::{move_vector, verify_certificate, DEFAULT_DEPTH, DEFAULT_MAX_CANDIDATES};
use rosecover::{MoveConfig, MoveError, QMatrix, SearchConfig, SlideAutomorphism, Word};

#[derive(Debug, Parser)]
#[command(name = "rosecover", version, about = "Finite covers of roses and lifted edge slides")]
struct Cli {
    /// Print JSON on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the cover and print its size and first Betti number.
    Build {
        #[command(flatten)]
        cover: CoverArgs,
        /// Write the cover as a Graphviz file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check the deck-group character of H_1 and, for exponent-2 groups, its isotypic decomposition.
    VerifyCw {
        #[command(flatten)]
        cover: CoverArgs,
    },
    /// Find a lifted slide moving a homology class along an infinite orbit.
    Move(MoveArgs),
    /// Print the matrix of the lifted slide a_j -> ell . a_j.
    Slide {
        #[command(flatten)]
        cover: CoverArgs,
        #[arg(long)]
        petal: usize,
        /// Loop word, dot-separated letters such as "a2.a3^-1".
        #[arg(long, allow_hyphen_values = true)]
        ell: String,
    },
    /// Run the built-in invariant battery.
    Selftest {
        /// Only groups of order at most 8.
        #[arg(long)]
        quick: bool,
        #[arg(long, hide = true, value_parser = clap::builder::PossibleValuesParser::new(selftest::SUITES))]
        inject_fault: Option<String>,
    },
}

#[derive(Debug, Args)]
struct MoveArgs {
    #[command(flatten)]
    cover: CoverArgs,
    /// Coordinates "p/q,..." in the fundamental-cycle basis.
    #[arg(long, conflicts_with = "vector_word", required_unless_present = "vector_word", allow_hyphen_values = true)]
    vector: Option<String>,
    /// A word whose lift at the identity vertex is closed; its class is moved.
    #[arg(long, allow_hyphen_values = true)]
    vector_word: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_CANDIDATES)]
    max_candidates: usize,
    /// Number of iterates checked against the closed form.
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    depth: usize,
    /// Also write the certificate JSON to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn print_matrix(m: &QMatrix) {
    for row in m.to_string_rows() {
        println!("  [{}]", row.join(", "));
    }
}

fn cmd_build(loaded: &LoadedCover, dot: Option<&PathBuf>, as_json: bool) -> CliResult {
    let y = &loaded.cover;
    if let Some(path) = dot {
        std::fs::write(path, y.to_dot()).map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))?;
    }
    if as_json {
        let export = loaded.basis.export();
        print_json(&json!({
            "vertices": y.vertex_count(),
            "edges": y.edge_count(),
            "rank": loaded.basis.rank(),
            "tree": export.tree,
            "cotree": export.cotree,
        }));
    } else {
        println!("V={} E={} rank={}", y.vertex_count(), y.edge_count(), loaded.basis.rank());
    }
    Ok(())
}

fn cmd_verify_cw(loaded: &LoadedCover, as_json: bool) -> CliResult {
    let (y, b) = (&loaded.cover, &loaded.basis);
    let report = verify_chevalley_weil(y, b);
    let iso = isotypic_decomposition(y, b).ok();
    let ok = report.verdict && iso.as_ref().is_none_or(|r| r.consistent());
    if as_json {
        print_json(&json!({ "characters": report, "isotypic": iso, "verdict": ok }));
    } else {
        let cells: Vec<String> =
            y.vertices().map(|g| format!("{}:{}", y.group().label(g), format_rational(&report.traces.0[g]))).collect();
        println!("traces {}", cells.join(" "));
        if let Some(iso) = &iso {
            let dims: Vec<String> = iso.dims.iter().map(usize::to_string).collect();
            println!("isotypic dims {}", dims.join(","));
        }
        println!("verdict {ok}");
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::new(1, "character identity does not hold"))
    }
}

fn cmd_move(args: &MoveArgs, loaded: &LoadedCover, as_json: bool) -> CliResult {
    let (y, b) = (&loaded.cover, &loaded.basis);
    let v = match (&args.vector, &args.vector_word) {
        (Some(text), _) => parse_vector(text, b.rank())?,
        (None, Some(word)) => parse_vector_word(word, loaded)?,
        (None, None) => return Err(Failure::config("give --vector or --vector-word")),
    };
    let config =
        MoveConfig { search: SearchConfig { max_candidates: args.max_candidates, seed: args.seed }, depth: args.depth };
    let cert = move_vector(y, b, &v, &config).map_err(|e| {
        let code = match e {
            MoveError::ZeroVector => 4,
            MoveError::RankTooSmall(_) => 5,
            MoveError::SearchExhausted(_) => 6,
            _ => 1,
        };
        Failure::new(code, e)
    })?;
    let check = verify_certificate(y, b, &v, &cert);
    let text = serde_json::to_string_pretty(&cert).expect("certificate serializes");
    if let Some(path) = &args.out {
        std::fs::write(path, format!("{text}\n")).map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))?;
    }
    if as_json {
        println!("{text}");
    } else {
        println!("petal a{}", cert.petal);
        println!("pairing edge ({}, a{})", cert.pairing_edge.source, cert.pairing_edge.petal);
        println!("ell {}", cert.ell);
        println!("orbit rank {}", cert.orbit_rank_value);
        println!("increment {}", cert.increment);
        println!("iterates checked {}", cert.iterates_checked);
        println!("verified {}", check.passed);
    }
    if check.passed {
        Ok(())
    } else {
        Err(Failure::new(1, format!("certificate rejected: {}", check.failures.join(", "))))
    }
}

fn cmd_slide(loaded: &LoadedCover, petal: usize, ell: &str, as_json: bool) -> CliResult {
    let (y, b) = (&loaded.cover, &loaded.basis);
    let ell: Word = ell.parse().map_err(Failure::config)?;
    ell.check_rank(y.rank()).map_err(Failure::config)?;
    let slide = SlideAutomorphism::new(y.rank(), petal, ell).map_err(Failure::config)?;
    let lifted = lifted_action_formula(&slide, y, b).map_err(Failure::config)?;
    let oracle = lifted_action_oracle(&slide, y, b).map_err(|e| Failure::new(1, e))?;
    let agrees = oracle == lifted.matrix;
    if as_json {
        print_json(&lifted);
    } else {
        println!("slide a{petal} -> {}.a{petal}", slide.ell());
        println!("ell class {}", lifted.ell_class);
        println!("matrix");
        print_matrix(&lifted.matrix);
        println!("oracle agrees {agrees}");
    }
    if agrees {
        Ok(())
    } else {
        Err(Failure::new(1, "formula and path-lifting oracle disagree"))
    }
}

fn cmd_selftest(quick: bool, fault: Option<&str>, as_json: bool) -> CliResult {
    let results = selftest::run(quick, fault);
    if as_json {
        let rows: Vec<_> = results
            .iter()
            .map(|r| match &r.outcome {
                Ok(detail) => json!({ "suite": r.name, "passed": true, "detail": detail }),
                Err(why) => json!({ "suite": r.name, "passed": false, "detail": why }),
            })
            .collect();
        print_json(&rows);
    } else {
        for r in &results {
            match &r.outcome {
                Ok(detail) => println!("{}: ok ({detail})", r.name),
                Err(why) => println!("{}: FAILED ({why})", r.name),
            }
        }
    }
    let failed: Vec<&str> = results.iter().filter(|r| r.outcome.is_err()).map(|r| r.name).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::new(1, format!("selftest failed: {}", failed.join(", "))))
    }
}

fn run(cli: Cli) -> CliResult {
    match &cli.command {
        Command::Build { cover, dot } => cmd_build(&cover.load()?, dot.as_ref(), cli.json),
        Command::VerifyCw { cover } => cmd_verify_cw(&cover.load()?, cli.json),
        Command::Move(args) => cmd_move(args, &args.cover.load()?, cli.json),
        Command::Slide { cover, petal, ell } => cmd_slide(&cover.load()?, *petal, ell, cli.json),
        Command::Selftest { quick, inject_fault } => cmd_selftest(*quick, inject_fault.as_deref(), cli.json),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("rosecover: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
