use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use jacinf_cli::{emit_dot, emit_json, emit_text, exit, read_map_arg, seed_from_env, CliError, Report};
use jacinf_core::analysis::{certify_automorphism, topological_degree, validate_pole_pairs, Verdict};
use jacinf_core::corpus::{check_fixture, known_examples, random_automorphism, synthetic_pair_trees};
use jacinf_core::resolution::{ResolveOptions, DEFAULT_MAX_BLOWUPS};

#[derive(Parser)]
#[command(name = "jacinf", version, about = "Resolution at infinity of polynomial maps of the plane")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Resolve a map and print the annotated graph with every check.
    Analyze {
        /// `P; Q`, or `@file`.
        map: String,
        /// Also write the graph in DOT format to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Print canonical JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Fail on irrational base points instead of adjoining them.
        #[arg(long)]
        rational_only: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_BLOWUPS)]
        max_blowups: usize,
    },
    /// Run the automorphism certificate.
    Certify {
        map: String,
        #[arg(long)]
        rational_only: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_BLOWUPS)]
        max_blowups: usize,
    },
    /// Print the topological degree.
    Degree { map: String },
    /// Print a seeded random automorphism.
    RandomAuto {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        factors: usize,
        #[arg(long, default_value_t = 4)]
        max_exponent: u32,
    },
    /// Check every built-in fixture.
    Selftest,
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let seed = seed_from_env()?;
    match cli.command {
        Command::Analyze { map, dot, json, rational_only, max_blowups } => {
            let f = read_map_arg(&map)?;
            let r = Report::build(&f, &ResolveOptions { max_blowups, rational_only }, seed)?;
            if let Some(path) = dot {
                std::fs::write(&path, emit_dot(&r.tree)).map_err(|source| CliError::Io { path, source })?;
            }
            print!("{}", if json { emit_json(&r) } else { emit_text(&r) });
            Ok(exit::OK)
        }
        Command::Certify { map, rational_only, max_blowups } => {
            let f = read_map_arg(&map)?;
            let cert = certify_automorphism(&f, &ResolveOptions { max_blowups, rational_only })?;
            println!("{}{}", cert.verdict, if cert.strong { " (strong)" } else { "" });
            for r in &cert.reasons {
                println!("  {r}");
            }
            Ok(if cert.verdict == Verdict::PreconditionFailed { exit::PRECONDITION } else { exit::OK })
        }
        Command::Degree { map } => {
            println!("{}", topological_degree(&read_map_arg(&map)?, seed)?);
            Ok(exit::OK)
        }
        Command::RandomAuto { seed, factors, max_exponent } => {
            let a = random_automorphism(seed, factors, max_exponent)?;
            println!("map: {}", a.map);
            println!("word: {}", a.word);
            println!("jacobian: {}", a.map.jacobian());
            println!("degree: {}", a.map.degree());
            Ok(exit::OK)
        }
        Command::Selftest => {
            let mut failed = 0;
            for fx in known_examples() {
                let fails = check_fixture(&fx, &ResolveOptions::default(), seed)?;
                println!("{} {}", if fails.is_empty() { "ok  " } else { "FAIL" }, fx.name);
                for f in &fails {
                    println!("     {f}");
                }
                failed += usize::from(!fails.is_empty());
            }
            for (name, tree) in synthetic_pair_trees() {
                let flagged = validate_pole_pairs(&tree).len() == 1;
                println!("{} {name}", if flagged { "ok  " } else { "FAIL" });
                failed += usize::from(!flagged);
            }
            Ok(if failed == 0 { exit::OK } else { exit::FIXTURE })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("jacinf: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
