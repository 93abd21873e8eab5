use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use all2sat::harness::{run_experiment, ExperimentRecord};
use all2sat::implication_graph::{strong_components, ImplicationDigraph};
use all2sat::{
    count_models, enumerate_constrained, enumerate_cubes, enumerate_models, enumerate_partial,
    enumerate_renamings, parse_dimacs, ClauseSet, Cnf2, Error, InvolutionPoset, Literal,
};

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_UNSAT: u8 = 20;

#[derive(Parser)]
#[command(name = "all2sat", version, about = "Enumerate, count and compress the models of 2-CNF formulas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every model, one per line.
    Enumerate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModelFormat::Bits)]
        format: ModelFormat,
        /// Stop after this many models.
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Count the models without listing them.
    Count {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print disjoint cubes whose union is the model set.
    Cubes {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the projections of the models onto a literal set.
    Partial {
        file: PathBuf,
        /// Comma- or space-separated DIMACS literals, e.g. "1,-3".
        #[arg(long, allow_hyphen_values = true)]
        lits: String,
    },
    /// Print the models making some literals true and others false.
    Constrain {
        file: PathBuf,
        #[arg(long = "true", allow_hyphen_values = true, default_value = "")]
        true_lits: String,
        #[arg(long = "false", allow_hyphen_values = true, default_value = "")]
        false_lits: String,
        #[arg(long, value_enum, default_value_t = ModelFormat::Bits)]
        format: ModelFormat,
    },
    /// Print every Horn renaming of a CNF of arbitrary clause width.
    Horn {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Count random instances and print their statistics.
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 10)]
        instances: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Dump an intermediate structure for inspection.
    Export {
        file: PathBuf,
        #[arg(long, value_enum)]
        what: ExportKind,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelFormat {
    Bits,
    Lits,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportKind {
    /// Implication digraph arcs as literal pairs.
    Digraph,
    /// Condensation arcs between component ids.
    Components,
    /// Cover relation of the poset.
    Poset,
    /// Component ids paired with their mirror.
    Mirror,
}

enum Failure {
    Usage(String),
    Parse(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        if e.is_parse_error() {
            Failure::Parse(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out).and_then(|code| {
        out.flush()?;
        Ok(code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("parse error: {msg}");
            ExitCode::from(EXIT_PARSE)
        }
    }
}

fn run(cmd: Command, out: &mut impl Write) -> Outcome {
    match cmd {
        Command::Enumerate { file, format, limit } => {
            let models = enumerate_models(&load(&file)?);
            if !models.is_satisfiable() {
                writeln!(out, "s UNSATISFIABLE")?;
                return Ok(EXIT_UNSAT);
            }
            for m in models.take(limit.map_or(usize::MAX, |k| k as usize)) {
                write_model(out, &m, format)?;
            }
            Ok(EXIT_OK)
        }
        Command::Count { file, json } => {
            let report = count_models(&load(&file)?);
            if json {
                writeln!(out, "{}", serde_json::to_string(&report).expect("serializable"))?;
            } else {
                writeln!(out, "models {}", report.count)?;
                writeln!(out, "cubes {}", report.cubes)?;
                writeln!(out, "mean_twos {:.3}", report.mean_twos)?;
                writeln!(out, "poset_size {}", report.poset_size)?;
                writeln!(out, "largest_component {}", report.largest_component)?;
                writeln!(out, "rigid_size {}", report.rigid_size)?;
                writeln!(out, "halfcore_size {}", report.halfcore_size)?;
                writeln!(out, "isolated {}", report.isolated_count)?;
            }
            Ok(if report.satisfiable { EXIT_OK } else { EXIT_UNSAT })
        }
        Command::Cubes { file, json } => {
            let mut cubes = enumerate_cubes(&load(&file)?);
            let Some(instance) = cubes.instance().cloned() else {
                writeln!(out, "s UNSATISFIABLE")?;
                return Ok(EXIT_UNSAT);
            };
            for cube in &mut cubes {
                if json {
                    writeln!(out, "{}", cube.to_json(&instance))?;
                } else {
                    writeln!(out, "{}", cube.to_line(&instance))?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Partial { file, lits } => {
            let f = load(&file)?;
            let models = enumerate_partial(&f, &parse_literals(&lits)?)?;
            if !models.is_satisfiable() {
                writeln!(out, "s UNSATISFIABLE")?;
                return Ok(EXIT_UNSAT);
            }
            for m in models {
                writeln!(out, "{}", m.to_text())?;
            }
            Ok(EXIT_OK)
        }
        Command::Constrain {
            file,
            true_lits,
            false_lits,
            format,
        } => {
            let f = load(&file)?;
            let models = enumerate_constrained(&f, &parse_literals(&true_lits)?, &parse_literals(&false_lits)?)?;
            if !models.is_satisfiable() {
                writeln!(out, "s UNSATISFIABLE")?;
                return Ok(EXIT_UNSAT);
            }
            for m in models {
                write_model(out, &m, format)?;
            }
            Ok(EXIT_OK)
        }
        Command::Horn { file, json } => {
            let cs = ClauseSet::parse_dimacs(&read(&file)?)?;
            let renamings = enumerate_renamings(&cs);
            if !renamings.is_renamable() {
                if json {
                    writeln!(out, "[]")?;
                } else {
                    writeln!(out, "s NOT RENAMABLE")?;
                }
                return Ok(EXIT_UNSAT);
            }
            if json {
                let items: Vec<String> = renamings.map(|r| r.to_json()).collect();
                writeln!(out, "[{}]", items.join(","))?;
            } else {
                for r in renamings {
                    writeln!(out, "{r}")?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Bench {
            n,
            t,
            instances,
            seed,
            format,
        } => {
            let records = run_experiment(n, t, instances, seed)?;
            match format {
                TableFormat::Csv => {
                    writeln!(out, "{}", ExperimentRecord::CSV_HEADER)?;
                    for r in &records {
                        writeln!(out, "{}", r.to_csv())?;
                    }
                }
                TableFormat::Json => {
                    writeln!(out, "{}", serde_json::to_string_pretty(&records).expect("serializable"))?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Export { file, what } => {
            let f = load(&file)?;
            let digraph = ImplicationDigraph::build(&f);
            let text = match what {
                ExportKind::Digraph => digraph.to_edge_list(),
                ExportKind::Components => strong_components(&digraph).to_edge_list(),
                ExportKind::Poset | ExportKind::Mirror => match InvolutionPoset::build(strong_components(&digraph)) {
                    Ok(p) if matches!(what, ExportKind::Poset) => p.to_hasse_text(),
                    Ok(p) => p.mirror_listing(),
                    Err(e) => {
                        writeln!(out, "s UNSATISFIABLE")?;
                        eprintln!("{e}");
                        return Ok(EXIT_UNSAT);
                    }
                },
            };
            out.write_all(text.as_bytes())?;
            Ok(EXIT_OK)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Cnf2, Failure> {
    Ok(parse_dimacs(&read(path)?)?)
}

fn parse_literals(text: &str) -> Result<Vec<Literal>, Failure> {
    text.split(|ch: char| ch == ',' || ch.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<i64>()
                .ok()
                .and_then(Literal::from_dimacs)
                .ok_or_else(|| Failure::Usage(format!("invalid literal `{s}`")))
        })
        .collect()
}

fn write_model(out: &mut impl Write, m: &all2sat::Assignment, format: ModelFormat) -> io::Result<()> {
    match format {
        ModelFormat::Bits => writeln!(out, "{m}"),
        ModelFormat::Lits => {
            for l in m.to_literals() {
                write!(out, "{l} ")?;
            }
            writeln!(out, "0")
        }
    }
}
