use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pathalg::{
    enumerate_basis, hilbert_series, level_profile, load_graph, parse_poly, path_pair_relations,
    reduced_relations, save_graph, verify_basis_with, Algebra, Error, GeneratorSpec, Limits,
    VerifyOptions,
};

const EXIT_IO: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_INVALID: u8 = 3;
const EXIT_VERIFY: u8 = 4;
const EXIT_LIMIT: u8 = 5;

#[derive(Parser)]
#[command(name = "pathalg", version, about = "Path algebras of layered graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// subsets of {1..n}; one parameter n
    Boolean,
    /// a single path of length n; one parameter n
    Chain,
    /// set partitions of {1..n}; one parameter n
    Partition,
    /// subspaces of GF(q)^n; parameters q n
    Subspace,
}

#[derive(Subcommand)]
enum Command {
    /// Print a generated graph in the graph file format.
    Gen {
        family: Family,
        params: Vec<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a graph file and summarize it.
    Validate { graph: PathBuf },
    /// List basis sequences with level at most D.
    Basis {
        graph: PathBuf,
        #[arg(long)]
        max_level: u32,
    },
    /// Print the graded basis counts for levels 0..=D.
    Hilbert {
        graph: PathBuf,
        #[arg(long)]
        max_level: u32,
    },
    /// Reduce an edge expression to the basis.
    NormalForm {
        graph: PathBuf,
        #[arg(long)]
        expr: String,
    },
    /// List relation generators.
    Relations {
        graph: PathBuf,
        #[arg(long, conflicts_with = "path_pairs")]
        reduced: bool,
        #[arg(long)]
        path_pairs: bool,
    },
    /// Compare quotient dimensions with basis counts up to level D.
    Verify {
        graph: PathBuf,
        #[arg(long)]
        max_level: u32,
        /// Also check the reduced generators under the alternate chosen-edge map.
        #[arg(long)]
        alt_chosen: bool,
        /// Tab-separated output.
        #[arg(long)]
        tsv: bool,
        #[arg(long)]
        max_words: Option<usize>,
        #[arg(long)]
        max_rows: Option<usize>,
    },
}

enum Failure {
    Lib(Error),
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Lib(e.into())
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::Syntax { .. }
        | Error::UnknownSymbol { .. }
        | Error::UnknownVertex(_)
        | Error::UnknownEdge(_)
        | Error::BadMultiplicity { .. }
        | Error::NotComposable { .. }
        | Error::InvalidPath(_)
        | Error::NotBasis { .. } => EXIT_PARSE,
        Error::LevelMismatch { .. }
        | Error::NoUniqueMin { .. }
        | Error::DeadVertex { .. }
        | Error::BadChosen { .. }
        | Error::DanglingRef { .. }
        | Error::DuplicateId { .. } => EXIT_INVALID,
        Error::LimitExceeded { .. } | Error::BoundTooLarge { .. } => EXIT_LIMIT,
        Error::Io(_) | Error::MixedGraph => EXIT_IO,
    }
}

fn generator(family: Family, params: &[u32]) -> Result<GeneratorSpec, Failure> {
    let spec = match (family, params) {
        (Family::Boolean, &[n]) => GeneratorSpec::Boolean { n },
        (Family::Chain, &[n]) => GeneratorSpec::Chain { n },
        (Family::Partition, &[n]) => GeneratorSpec::Partition { n },
        (Family::Subspace, &[q, n]) => GeneratorSpec::Subspace { q, n },
        (Family::Subspace, _) => return Err(Failure::Usage("subspace takes two parameters: q n".into())),
        _ => return Err(Failure::Usage("this family takes one parameter: n".into())),
    };
    Ok(spec)
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    match cli.command {
        Command::Gen { family, params, out: file } => {
            let g = generator(family, &params)?.build()?;
            match file {
                Some(path) => save_graph(&g, path)?,
                None => write!(out, "{g}")?,
            }
        }
        Command::Validate { graph } => {
            let g = load_graph(graph)?;
            writeln!(
                out,
                "valid: {} vertices, {} edges, max level {}",
                g.vertex_count(),
                g.edge_count(),
                g.max_level()
            )?;
            for (level, count) in level_profile(&g) {
                writeln!(out, "level {level}: {count}")?;
            }
        }
        Command::Basis { graph, max_level } => {
            let g = load_graph(graph)?;
            for b in enumerate_basis(&g, max_level) {
                writeln!(out, "{}\t{}", b.level(), b.render(&g))?;
            }
        }
        Command::Hilbert { graph, max_level } => {
            let g = load_graph(graph)?;
            let counts: Vec<String> = hilbert_series(&g, max_level)
                .iter()
                .map(usize::to_string)
                .collect();
            writeln!(out, "{}", counts.join(" "))?;
        }
        Command::NormalForm { graph, expr } => {
            let g = load_graph(graph)?;
            let p = parse_poly(&expr, &g)?;
            let algebra = Algebra::new(g);
            let nf = algebra.normal_form(&p)?;
            writeln!(out, "{}", nf.render(algebra.graph()))?;
        }
        Command::Relations {
            graph, path_pairs, ..
        } => {
            let g = load_graph(graph)?;
            let gens = if path_pairs {
                path_pair_relations(&g, false)
            } else {
                reduced_relations(&g)
            };
            for r in gens {
                writeln!(out, "{}", r.render(&g))?;
            }
        }
        Command::Verify {
            graph,
            max_level,
            alt_chosen,
            tsv,
            max_words,
            max_rows,
        } => {
            let g = load_graph(graph)?;
            let defaults = Limits::default();
            let opts = VerifyOptions {
                limits: Limits {
                    max_words: max_words.unwrap_or(defaults.max_words),
                    max_rows: max_rows.unwrap_or(defaults.max_rows),
                },
                alternate_chosen: alt_chosen,
                reduced_override: None,
            };
            let report = verify_basis_with(&g, max_level, &opts)?;
            if tsv {
                write!(out, "{}", report.render_tsv())?;
            } else {
                write!(out, "{}", report.render_table())?;
            }
            if !report.passed() {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(EXIT_VERIFY),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_PARSE)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
