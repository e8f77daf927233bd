//! `crossgraph`: crossword grids, their multigraphs, and the experiments.
//!
//! Exit codes: 0 success, 1 a validation/check/experiment found a failure,
//! 2 usage or input errors.

use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crossgraph::bitgraph::{canonicalize, crossword_multigraph, reconstruct_grid, BitMultigraph};
use crossgraph::conditions::check_all;
use crossgraph::enumeration::{
    count_valid_grids, estimate_valid_grids, necessity_experiment, reconstruct_roundtrip_experiment,
    sufficiency_experiment, with_jobs, DEFAULT_EXHAUSTIVE_LIMIT,
};
use crossgraph::grid::{answers, parse_grid, serialize_grid, validate, Coord, Grid, Orientation, Rule};
use crossgraph::network::{build_licn, fundamental_graph};
use crossgraph::voiding::{edge_for_cell, unvoided_graph, void_edge_traced, voided_from_grid};

#[derive(Parser)]
#[command(name = "crossgraph", version, about = "Crossword grid designs as bit multigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Stage {
    Licn,
    Fundamental,
    Multigraph,
    Voided,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Necessity,
    Sufficiency,
    Roundtrip,
}

#[derive(Subcommand)]
enum Command {
    /// Check the five structure rules of a grid.
    Validate {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List the answers of a grid.
    Answers {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build a graph from a grid.
    Graph {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, value_enum, default_value = "multigraph")]
        stage: Stage,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Void the edges of the given cells, in order, and print the trace.
    Void {
        /// Graph JSON; ignored with --template.
        #[arg(default_value = "-")]
        input: String,
        /// Cell as `i,j`; repeat for several voids.
        #[arg(long = "cell", value_parser = parse_coord, required = true, allow_hyphen_values = true)]
        cells: Vec<Coord>,
        /// Start from the unvoided graph of this half-size.
        #[arg(long)]
        template: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Rebuild grid text from a multigraph JSON.
    Reconstruct {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Check the necessary conditions on a voided graph (or a grid with --from-grid).
    Check {
        #[arg(default_value = "-")]
        input: String,
        /// Read a grid and check its voided multigraph.
        #[arg(long)]
        from_grid: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Count valid grids of half-size n.
    Count {
        /// Half-size; the grid is (2n+1) x (2n+1).
        #[arg(long)]
        n: usize,
        /// Estimate from this many uniform masks instead of enumerating.
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest n enumerated exhaustively.
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_LIMIT)]
        limit: usize,
        /// Worker threads; results do not depend on it.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Run a necessity, sufficiency or roundtrip experiment.
    Experiment {
        #[arg(value_enum)]
        kind: Kind,
        /// Half-size; the grid is (2n+1) x (2n+1).
        #[arg(long)]
        n: usize,
        /// Sample this many valid grids instead of enumerating.
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest n enumerated exhaustively.
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_LIMIT)]
        limit: usize,
        /// Worker threads; results do not depend on it.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Canonicalize the indices of a graph JSON.
    Canonical {
        #[arg(default_value = "-")]
        input: String,
    },
}

fn parse_coord(s: &str) -> Result<Coord, String> {
    let (i, j) = s.split_once(',').ok_or_else(|| format!("expected i,j, got {s:?}"))?;
    let p = |x: &str| x.trim().parse::<i32>().map_err(|e| format!("{x:?}: {e}"));
    Ok(Coord::new(p(i)?, p(j)?))
}

/// Failure of the input itself: reported with exit code 2.
#[derive(Debug)]
struct InputError(anyhow::Error);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for InputError {}

fn input_err(e: impl Into<anyhow::Error>) -> anyhow::Error {
    InputError(e.into()).into()
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")
            .map_err(input_err)?;
        Ok(s)
    } else {
        fs::read_to_string(path)
            .with_context(|| format!("reading {path}"))
            .map_err(input_err)
    }
}

fn read_grid(path: &str) -> Result<Grid> {
    let text = read_input(path)?;
    if text.trim_start().starts_with('{') {
        serde_json::from_str(&text)
            .context("parsing grid JSON")
            .map_err(input_err)
    } else {
        parse_grid(text.trim_end_matches(['\n', '\r']))
            .context("parsing grid text")
            .map_err(input_err)
    }
}

fn read_graph(path: &str) -> Result<BitMultigraph> {
    let text = read_input(path)?;
    serde_json::from_str(&text)
        .context("parsing graph JSON")
        .map_err(input_err)
}

fn json(v: &impl Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)?)
}

fn no_dot(format: Format) -> Result<()> {
    if format == Format::Dot {
        return Err(input_err(anyhow::anyhow!("dot output is only available for graphs")));
    }
    Ok(())
}

/// Runs the command, returning whether it succeeded.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Validate { input, format } => {
            no_dot(format)?;
            let g = read_grid(&input)?;
            let r = validate(&g);
            if format == Format::Json {
                println!("{}", json(&r)?);
            } else {
                for rule in Rule::ALL {
                    let v = r.verdict(rule);
                    print!("{:<20}{}", format!("{rule:?}"), if v.passed { "pass" } else { "FAIL" });
                    if let Some(w) = &v.witness {
                        print!("  {}", serde_json::to_string(w)?);
                    }
                    println!();
                }
                println!("{}", if r.is_valid() { "valid" } else { "invalid" });
            }
            Ok(r.is_valid())
        }
        Command::Answers { input, format } => {
            no_dot(format)?;
            let g = read_grid(&input)?;
            let list = answers(&g);
            if format == Format::Json {
                println!("{}", json(&list)?);
            } else {
                for a in list {
                    let (what, line) = match a.orientation {
                        Orientation::Across => ("row", "Across"),
                        Orientation::Down => ("column", "Down"),
                    };
                    let cells: Vec<String> = a.coords.iter().map(Coord::to_string).collect();
                    println!("{line} {what} {} len {}: {}", a.line_number, a.len(), cells.join(" "));
                }
            }
            Ok(true)
        }
        Command::Graph { input, stage, format } => {
            let g = read_grid(&input)?;
            let out = match stage {
                Stage::Licn | Stage::Fundamental | Stage::Multigraph => {
                    let licn = build_licn(&g).map_err(input_err)?;
                    match stage {
                        Stage::Licn => match format {
                            Format::Json => json(&licn.to_json())?,
                            Format::Dot => licn.to_dot(),
                            Format::Text => licn.to_text(),
                        },
                        Stage::Fundamental => {
                            let f = fundamental_graph(&licn);
                            match format {
                                Format::Json => json(&f.to_json())?,
                                Format::Dot => f.to_dot(),
                                Format::Text => f.to_text(),
                            }
                        }
                        _ => render_graph(&crossword_multigraph(&fundamental_graph(&licn)), format, "multigraph")?,
                    }
                }
                Stage::Voided => render_graph(&voided_from_grid(&g).map_err(input_err)?, format, "voided")?,
            };
            print!("{}", with_newline(out));
            Ok(true)
        }
        Command::Void {
            input,
            cells,
            template,
            format,
        } => {
            let mut g = match template {
                Some(n) => unvoided_graph(n),
                None => read_graph(&input)?,
            };
            let mut steps = Vec::new();
            for c in cells {
                let e = edge_for_cell(&g, c).map_err(input_err)?.clone();
                let (next, step) = void_edge_traced(&g, &e).map_err(input_err)?;
                g = next;
                steps.push(step);
            }
            match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Out<'a> {
                        graph: &'a BitMultigraph,
                        trace: Vec<String>,
                        steps: &'a [crossgraph::voiding::VoidStep],
                    }
                    let trace = steps.iter().map(ToString::to_string).collect();
                    println!(
                        "{}",
                        json(&Out {
                            graph: &g,
                            trace,
                            steps: &steps
                        })?
                    );
                }
                Format::Text => {
                    for s in &steps {
                        println!("{s}");
                    }
                    print!("{}", g.to_text());
                }
                Format::Dot => {
                    for s in &steps {
                        println!("// {s}");
                    }
                    print!("{}", crossgraph::dot::bit_multigraph(&g, "voided"));
                }
            }
            Ok(true)
        }
        Command::Reconstruct { input } => {
            let g = read_graph(&input)?;
            let grid = reconstruct_grid(&g).map_err(input_err)?;
            println!("{}", serialize_grid(&grid));
            Ok(true)
        }
        Command::Check {
            input,
            from_grid,
            format,
        } => {
            no_dot(format)?;
            let g = if from_grid {
                voided_from_grid(&read_grid(&input)?).map_err(input_err)?
            } else {
                read_graph(&input)?
            };
            let r = check_all(&g);
            if format == Format::Json {
                println!("{}", json(&r)?);
            } else {
                print!("{}", r.to_table());
            }
            Ok(r.passed())
        }
        Command::Count {
            n,
            sample,
            seed,
            limit,
            jobs,
        } => {
            let r = with_jobs(jobs, || match sample {
                None => count_valid_grids(n, limit),
                Some(s) => estimate_valid_grids(n, s, seed),
            })
            .map_err(input_err)?;
            println!("{}", json(&r)?);
            Ok(true)
        }
        Command::Experiment {
            kind,
            n,
            sample,
            seed,
            limit,
            jobs,
            format,
        } => {
            no_dot(format)?;
            if matches!(kind, Kind::Sufficiency) && sample.is_some() {
                bail!(InputError(anyhow::anyhow!(
                    "the sufficiency experiment is exhaustive only"
                )));
            }
            match kind {
                Kind::Necessity | Kind::Sufficiency => {
                    let r = with_jobs(jobs, || match kind {
                        Kind::Necessity => necessity_experiment(n, sample, seed, limit),
                        _ => sufficiency_experiment(n, limit),
                    })
                    .map_err(input_err)?;
                    match format {
                        Format::Json => {
                            println!("{}", json(&r)?);
                            eprintln!("elapsed {:.2?}", r.elapsed);
                        }
                        _ => print!("{}", r.summary()),
                    }
                    Ok(r.valid_not_pass == 0 && r.not_equivalent == 0 && r.voiding_failures == 0)
                }
                Kind::Roundtrip => {
                    let r = with_jobs(jobs, || reconstruct_roundtrip_experiment(n, sample, seed, limit))
                        .map_err(input_err)?;
                    match format {
                        Format::Json => {
                            println!("{}", json(&r)?);
                            eprintln!("elapsed {:.2?}", r.elapsed);
                        }
                        _ => print!("{}", r.summary()),
                    }
                    Ok(r.failures.is_empty())
                }
            }
        }
        Command::Canonical { input } => {
            let g = read_graph(&input)?;
            println!("{}", json(&canonicalize(&g))?);
            Ok(true)
        }
    }
}

fn render_graph(g: &BitMultigraph, format: Format, name: &str) -> Result<String> {
    Ok(match format {
        Format::Json => json(g)?,
        Format::Dot => crossgraph::dot::bit_multigraph(g, name),
        Format::Text => g.to_text(),
    })
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InputError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
