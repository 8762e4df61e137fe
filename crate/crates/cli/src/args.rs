use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "nilcoh", version, about = "Cohomology of nilpotent Lie algebras with complex structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate an algebra and its complex structure.
    Check(InputArgs),
    /// Betti numbers of the Chevalley–Eilenberg complex.
    Betti(InputArgs),
    /// Dolbeault numbers h^{p,q} of the algebra.
    Hodge(InputArgs),
    /// Pages of the Frölicher spectral sequence.
    Froelicher {
        #[command(flatten)]
        input: InputArgs,
        /// Pages to print: `R`, `A..B` (inclusive) or `A..`.
        #[arg(long)]
        pages: Option<PageRange>,
    },
    /// Pages of the Hochschild–Serre spectral sequence of an ideal.
    HochschildSerre {
        #[command(flatten)]
        input: InputArgs,
        /// `center`, `derived`, basis vectors `e4,e5` or vectors `(1,0,..),(0,1,..)`.
        #[arg(long, default_value = "center")]
        ideal: String,
        #[arg(long)]
        pages: Option<PageRange>,
    },
    /// Torus-bundle-series report for candidate filtrations.
    Series {
        #[command(flatten)]
        input: InputArgs,
        /// JSON file with an ascending filtration to test instead.
        #[arg(long)]
        filtration: Option<PathBuf>,
    },
    /// Abelian / parallelisable / rational / nilpotent flags of J.
    Classify(InputArgs),
    /// Whether the Dolbeault numbers are certified to be those of the nilmanifold.
    Status {
        #[command(flatten)]
        input: InputArgs,
        /// Extra candidate filtration (JSON file).
        #[arg(long)]
        filtration: Option<PathBuf>,
    },
    /// List the built-in catalog.
    Catalog {
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Built-in catalog entry.
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    pub catalog: Option<String>,
    /// Algebra file in the JSON input format.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Named complex structure of a catalog entry.
    #[arg(long = "J", alias = "j", requires = "catalog")]
    pub structure: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Load a non-integrable J with a warning instead of failing.
    #[arg(long)]
    pub allow_non_integrable: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

/// Inclusive range of page numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PageRange {
    pub start: usize,
    pub end: Option<usize>,
}

impl PageRange {
    pub fn contains(&self, r: usize) -> bool {
        r >= self.start && self.end.is_none_or(|e| r <= e)
    }
}

impl FromStr for PageRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |x: &str| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad page number {x:?}"))
        };
        match s.split_once("..") {
            None => {
                let r = num(s)?;
                Ok(PageRange { start: r, end: Some(r) })
            }
            Some((a, b)) => {
                let start = if a.is_empty() { 0 } else { num(a)? };
                let end = if b.is_empty() { None } else { Some(num(b)?) };
                if end.is_some_and(|e| e < start) {
                    return Err(format!("empty page range {s:?}"));
                }
                Ok(PageRange { start, end })
            }
        }
    }
}

/// Resolved command line.
#[derive(Debug)]
pub struct RunConfig {
    pub command: &'static str,
    pub input: Option<Input>,
    pub format: Format,
    pub allow_non_integrable: bool,
    pub pages: Option<PageRange>,
    pub ideal: Option<String>,
    pub filtration: Option<PathBuf>,
}

#[derive(Debug)]
pub enum Input {
    Catalog { name: String, structure: Option<String> },
    File(PathBuf),
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Self {
        let with_input = |command, input: InputArgs| RunConfig {
            command,
            input: Some(match (input.catalog, input.file) {
                (Some(name), _) => Input::Catalog { name, structure: input.structure },
                (None, Some(path)) => Input::File(path),
                (None, None) => unreachable!("clap requires one input"),
            }),
            format: input.format,
            allow_non_integrable: input.allow_non_integrable,
            pages: None,
            ideal: None,
            filtration: None,
        };
        match cli.command {
            Command::Check(i) => with_input("check", i),
            Command::Betti(i) => with_input("betti", i),
            Command::Hodge(i) => with_input("hodge", i),
            Command::Classify(i) => with_input("classify", i),
            Command::Froelicher { input, pages } => RunConfig {
                pages,
                ..with_input("froelicher", input)
            },
            Command::HochschildSerre { input, ideal, pages } => RunConfig {
                pages,
                ideal: Some(ideal),
                ..with_input("hochschild-serre", input)
            },
            Command::Series { input, filtration } => RunConfig {
                filtration,
                ..with_input("series", input)
            },
            Command::Status { input, filtration } => RunConfig {
                filtration,
                ..with_input("status", input)
            },
            Command::Catalog { format } => RunConfig {
                command: "catalog",
                input: None,
                format,
                allow_non_integrable: false,
                pages: None,
                ideal: None,
                filtration: None,
            },
        }
    }
}
