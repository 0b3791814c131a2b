use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "permchain",
    version,
    about = "Exact enumeration of permutations avoiding pattern chains"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker pool size (default: available parallelism)
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Forbid network access in OEIS lookups
    #[arg(long, global = true)]
    pub offline: bool,

    /// Override the brute-force oracle bounds
    #[arg(long = "max-brute", global = true)]
    pub max_brute: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
    Bfile,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Bfile => "bfile",
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count permutations avoiding a pattern chain
    Count(CountArgs),
    /// Reproduce one of the two summary tables
    Table(TableArgs),
    /// Show a pattern's block decomposition and forcing compositions
    Csigma(CsigmaArgs),
    /// Count compositions avoiding a set of composition patterns
    Compcount(CompcountArgs),
    /// Run a conjecture comparison report
    Conjecture(ConjectureArgs),
    /// Emit a sequence in OEIS b-file format
    Bfile(BfileArgs),
}

#[derive(Args, Debug)]
pub struct CountArgs {
    /// Level-1 patterns, semicolon-separated; `-` leaves level 1 unconstrained
    #[arg(long)]
    pub avoid: String,

    /// Patterns for the next level, repeatable once per level; `-` for an
    /// unconstrained level
    #[arg(long = "power-avoid")]
    pub power_avoid: Vec<String>,

    /// Single index to count at
    #[arg(long, conflicts_with = "n_range")]
    pub n: Option<usize>,

    /// Inclusive index range, e.g. 2..10
    #[arg(long = "n-range")]
    pub n_range: Option<String>,

    /// Counting method; auto picks the fastest applicable one
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,

    /// Run the next-slower oracle and attach match flags
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Auto,
    Recurrence,
    CompBrute,
    PermBrute,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Recurrence => "recurrence",
            Method::CompBrute => "comp-brute",
            Method::PermBrute => "perm-brute",
        }
    }
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Which table to reproduce
    #[arg(long, value_enum)]
    pub preset: TablePreset,

    /// Largest index to tabulate
    #[arg(long = "n-max")]
    pub n_max: usize,

    /// Attach brute-force oracle columns where bounds allow
    #[arg(long)]
    pub verify: bool,

    /// Cross-check rows against OEIS b-files
    #[arg(long)]
    pub oeis: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TablePreset {
    Table1,
    Table2,
}

#[derive(Args, Debug)]
pub struct CsigmaArgs {
    /// The square pattern to decompose
    #[arg(long)]
    pub sigma: String,
}

#[derive(Args, Debug)]
pub struct CompcountArgs {
    /// Composition patterns to avoid, e.g. "3,2;6"
    #[arg(long = "avoid-comps")]
    pub avoid_comps: String,

    #[arg(long, conflicts_with = "n_range")]
    pub n: Option<usize>,

    #[arg(long = "n-range")]
    pub n_range: Option<String>,

    #[arg(long, value_enum, default_value_t = CompMethod::Recurrence)]
    pub method: CompMethod,

    /// Cross-check against the other method where bounds allow
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CompMethod {
    Recurrence,
    Brute,
}

impl CompMethod {
    pub fn name(self) -> &'static str {
        match self {
            CompMethod::Recurrence => "recurrence",
            CompMethod::Brute => "brute",
        }
    }
}

#[derive(Args, Debug)]
pub struct ConjectureArgs {
    /// Which conjecture to compare: cube-2143 or chain-54321-132
    #[arg(long)]
    pub id: String,

    #[arg(long = "n-max")]
    pub n_max: usize,
}

#[derive(Args, Debug)]
pub struct BfileArgs {
    /// Level-1 patterns, as in `count`
    #[arg(long, conflicts_with = "preset_row")]
    pub avoid: Option<String>,

    #[arg(long = "power-avoid")]
    pub power_avoid: Vec<String>,

    /// A table row id such as table1-231 or table2-321
    #[arg(long = "preset-row")]
    pub preset_row: Option<String>,

    #[arg(long = "n-max")]
    pub n_max: usize,

    /// First index to emit
    #[arg(long, default_value_t = 0)]
    pub offset: i64,
}
