use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand};

use cayley_iso::cayley::{build_central_cayley, ColorCayleyGraph};
use cayley_iso::cli_io::{
    builtin_group, emit_report, merge_classes, parse_graph, parse_group, random_relabeling, to_json_string,
    write_graph, write_group, GroupFile, IsoResultJson, ResultReport,
};
use cayley_iso::group_core::conjugacy_classes;
use cayley_iso::iso_engine::{brute_force_oracle_with_cap, iso_test, section_of, IsoResult, Verdict, ORACLE_LIMIT};
use cayley_iso::Error;

/// Isomorphism testing for central colored Cayley graphs over almost simple groups.
#[derive(Parser)]
#[command(name = "cayley-iso", version)]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Largest graph order accepted by the brute-force oracle.
    #[arg(long, global = true, default_value_t = ORACLE_LIMIT)]
    cap: usize,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a builtin group as a table file.
    Group {
        name: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// List conjugacy classes with ids, sizes and element orders.
    Classes { group: PathBuf },
    /// Build a graph by merging conjugacy classes into colors, e.g. "0;1;2,3".
    Graph {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        merge: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write a randomly renamed isomorphic copy of a graph (uses --seed).
    Relabel {
        graph: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Print the type and principal section of Aut(WL(graph)).
    Section { graph: PathBuf },
    /// Automorphism group of a graph.
    Aut {
        graph: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Isomorphism test.
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Brute-force isomorphism test.
    Oracle {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn load(path: &Path) -> anyhow::Result<ColorCayleyGraph> {
    parse_graph(path).with_context(|| format!("reading {}", path.display()))
}

fn print_result(cli: &Cli, json: &IsoResultJson) -> anyhow::Result<()> {
    if cli.json {
        print!("{}", to_json_string(json)?);
    } else {
        println!("{}", json.verdict);
        println!("aut_order {}", json.aut_order);
        println!("decided_at_step {}", json.decided_at_step);
    }
    Ok(())
}

/// Runs a test, prints the result, writes the optional report; timing goes
/// only to the report so stdout stays byte-stable.
fn run_test(
    cli: &Cli,
    a: &Path,
    b: &Path,
    report: Option<&Path>,
    test: impl Fn(&ColorCayleyGraph, &ColorCayleyGraph) -> cayley_iso::Result<IsoResult>,
    with_section: bool,
) -> anyhow::Result<ExitCode> {
    let (ga, gb) = (load(a)?, load(b)?);
    let start = Instant::now();
    let r = test(&ga, &gb)?;
    let seconds = start.elapsed().as_secs_f64();
    let json = IsoResultJson::from_result(&r, ga.group().order())?;
    print_result(cli, &json)?;
    if let Some(path) = report {
        let section = if with_section { Some(section_of(&ga)?) } else { None };
        let rep = ResultReport {
            result: json,
            n: ga.group().order(),
            m: section.as_ref().map(|s| s.m()),
            section_type: section.as_ref().map(|s| s.kind.to_string()),
            seconds,
            groups: vec![GroupFile::from_group(ga.group()), GroupFile::from_group(gb.group())],
            fixture: Some(format!("{} {}", a.display(), b.display())),
        };
        emit_report(&rep, path)?;
    }
    Ok(match r.verdict {
        Verdict::Isomorphic => ExitCode::SUCCESS,
        Verdict::NonIsomorphic => ExitCode::from(1),
    })
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    match &cli.command {
        Command::Group { name, output } => {
            let g = builtin_group(name)?;
            write_group(output, &g)?;
            if cli.json {
                println!("{{\"order\": {}}}", g.order());
            } else {
                println!("order {}", g.order());
            }
        }
        Command::Classes { group } => {
            let g = parse_group(group)?;
            let classes = conjugacy_classes(&g);
            let rows: Vec<serde_json::Value> = classes
                .classes()
                .iter()
                .enumerate()
                .map(|(id, c)| {
                    serde_json::json!({
                        "id": id,
                        "size": c.len(),
                        "element_order": g.element_order(c[0]),
                        "representative": c[0],
                    })
                })
                .collect();
            if cli.json {
                print!("{}", to_json_string(&rows)?);
            } else {
                println!("id size order representative");
                for r in &rows {
                    println!("{} {} {} {}", r["id"], r["size"], r["element_order"], r["representative"]);
                }
            }
        }
        Command::Graph { group, merge, output } => {
            let g = parse_group(group)?;
            let graph = build_central_cayley(&g, merge_classes(&g, merge)?)?;
            write_graph(output, &graph)?;
            println!("colors {}", graph.color_count());
        }
        Command::Relabel { graph, output } => {
            let (copy, renaming) = random_relabeling(&load(graph)?, cli.seed)?;
            write_graph(output, &copy)?;
            if cli.json {
                print!("{}", to_json_string(&renaming.to_vec())?);
            }
        }
        Command::Section { graph } => {
            let s = section_of(&load(graph)?)?;
            if cli.json {
                let v = serde_json::json!({"type": s.kind.to_string(), "L": s.l.order(), "U": s.u.order(), "m": s.m()});
                print!("{}", to_json_string(&v)?);
            } else {
                println!("{}, L={}, U={}, m={}", s.kind, s.l.order(), s.u.order(), s.m());
            }
        }
        Command::Aut { graph, report } => {
            return run_test(cli, graph, graph, report.as_deref(), iso_test, true);
        }
        Command::Iso { a, b, report } => {
            return run_test(cli, a, b, report.as_deref(), iso_test, true);
        }
        Command::Oracle { a, b, report } => {
            let cap = cli.cap;
            return run_test(cli, a, b, report.as_deref(), |x, y| brute_force_oracle_with_cap(x, y, cap), false);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(err) if err.is_cap() => ExitCode::from(3),
                Some(Error::Internal(_)) => ExitCode::from(4),
                _ => ExitCode::from(2),
            }
        }
    }
}
