//! Subcommand implementations. Each returns the query echo, the result rows,
//! and an exit code; rendering happens in one place.

use std::collections::HashMap;
use std::path::PathBuf;
use std::time::Instant;

use serde_json::{json, Value};

use permchain::chain::{self, ChainSpec, OracleBounds};
use permchain::counting::{self, CompCounter, CountMethod, CountResult};
use permchain::oeis::{BFile, OeisClient, OeisId};
use permchain::pattern_class;
use permchain::sequences::formula;
use permchain::{BigInt, Error, PatternSet, Permutation};

use crate::args::{
    BfileArgs, Cli, Command, CompMethod, CompcountArgs, ConjectureArgs, CountArgs, CsigmaArgs,
    Format, Method, TableArgs, TablePreset,
};
use crate::report::{row, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_NETWORK: i32 = 4;

pub fn error_exit_code(error: &Error) -> i32 {
    match error {
        Error::ResourceLimit { .. } => EXIT_RESOURCE,
        Error::NetworkUnavailable(_) => EXIT_NETWORK,
        _ => EXIT_USAGE,
    }
}

pub struct Ctx {
    pub format: Format,
    pub offline: bool,
    pub bounds: OracleBounds,
    pub threads: usize,
}

struct CommandOutput {
    query: Value,
    rows: Vec<Value>,
    exit: i32,
    force_bfile: bool,
}

pub fn run(cli: Cli) -> i32 {
    let threads = cli
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    // A pool may already exist when run() is called twice in one process.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    let bounds = cli
        .max_brute
        .map(OracleBounds::with_override)
        .unwrap_or_default();
    let ctx = Ctx {
        format: cli.format,
        offline: cli.offline,
        bounds,
        threads,
    };
    let started = Instant::now();
    let outcome = match &cli.command {
        Command::Count(args) => cmd_count(args, &ctx),
        Command::Table(args) => cmd_table(args, &ctx),
        Command::Csigma(args) => cmd_csigma(args, &ctx),
        Command::Compcount(args) => cmd_compcount(args, &ctx),
        Command::Conjecture(args) => cmd_conjecture(args, &ctx),
        Command::Bfile(args) => cmd_bfile(args, &ctx),
    };
    match outcome {
        Ok(output) => {
            let report = Report {
                query: output.query,
                rows: output.rows,
                timing_ms: started.elapsed().as_millis() as u64,
            };
            let format = if output.force_bfile {
                Format::Bfile
            } else {
                ctx.format
            };
            print!("{}", report.render(format));
            output.exit
        }
        Err(error) => {
            eprintln!("error: {error}");
            error_exit_code(&error)
        }
    }
}

// ---------------------------------------------------------------------------
// Shared parsing
// ---------------------------------------------------------------------------

fn parse_level(text: &str) -> Result<Option<PatternSet>, Error> {
    if text == "-" {
        Ok(None)
    } else {
        Ok(Some(text.parse()?))
    }
}

fn parse_chain(avoid: &str, power_avoid: &[String]) -> Result<ChainSpec, Error> {
    let mut levels = vec![parse_level(avoid)?];
    for level in power_avoid {
        levels.push(parse_level(level)?);
    }
    ChainSpec::new(levels)
}

fn parse_range(n: Option<usize>, n_range: Option<&String>) -> Result<(usize, usize), Error> {
    match (n, n_range) {
        (Some(n), None) => Ok((n, n)),
        (None, Some(range)) => {
            let (lo, hi) = range
                .split_once("..")
                .ok_or_else(|| Error::Parse(format!("bad range {range:?}; expected a..b")))?;
            let lo: usize = lo
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad range start {lo:?}")))?;
            let hi: usize = hi
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad range end {hi:?}")))?;
            if lo > hi {
                return Err(Error::InvalidInput(format!("empty range {lo}..{hi}")));
            }
            Ok((lo, hi))
        }
        (None, None) => Err(Error::InvalidInput(
            "one of --n or --n-range is required".into(),
        )),
        (Some(_), Some(_)) => unreachable!("flags conflict"),
    }
}

fn level_echo(spec: &ChainSpec, index: usize) -> String {
    match &spec.levels()[index] {
        Some(set) => set.to_string(),
        None => "-".to_string(),
    }
}

// ---------------------------------------------------------------------------
// Counting plans
// ---------------------------------------------------------------------------

/// How a chain count is computed; verify runs the next-slower plan.
#[derive(Clone)]
enum Plan {
    /// Composition-avoidance recurrence for level-1 {312, 321}.
    Reduction(PatternSet),
    /// Closed forms for level-1 {312, 4321} and a length-3 square pattern.
    ClosedForm312_4321(Permutation),
    /// Composition iteration over the level-1 {312, 321} class.
    CompBrute,
    /// Pruned backtracking over the level-1 class.
    PermBrute,
    /// Filtering all of S_n.
    FullBrute,
}

fn fast_path(spec: &ChainSpec) -> Option<Plan> {
    let levels = spec.levels();
    if levels.len() != 2 {
        return None;
    }
    let (Some(level1), Some(level2)) = (&levels[0], &levels[1]) else {
        return None;
    };
    if chain::is_312_321(level1) {
        return Some(Plan::Reduction(level2.clone()));
    }
    if chain::is_312_4321(level1) && level2.len() == 1 && level2.patterns()[0].len() == 3 {
        return Some(Plan::ClosedForm312_4321(level2.patterns()[0].clone()));
    }
    None
}

fn brute_plan(spec: &ChainSpec) -> Plan {
    if spec.level1().is_some_and(chain::is_312_321) {
        Plan::CompBrute
    } else if spec.level1().is_some() {
        Plan::PermBrute
    } else {
        Plan::FullBrute
    }
}

fn choose_plan(method: Method, spec: &ChainSpec) -> Result<Plan, Error> {
    match method {
        Method::Auto => Ok(fast_path(spec).unwrap_or_else(|| brute_plan(spec))),
        Method::Recurrence => fast_path(spec).ok_or_else(|| {
            Error::InvalidInput(
                "no recurrence fast path for this chain; fast paths cover level-1 312;321 \
                 with one constrained second level, and level-1 312;4321 with a single \
                 length-3 second-level pattern"
                    .into(),
            )
        }),
        Method::CompBrute => {
            if spec.level1().is_some_and(chain::is_312_321) {
                Ok(Plan::CompBrute)
            } else {
                Err(Error::InvalidInput(
                    "comp-brute requires level-1 patterns 312;321".into(),
                ))
            }
        }
        Method::PermBrute => Ok(if spec.level1().is_some() {
            Plan::PermBrute
        } else {
            Plan::FullBrute
        }),
    }
}

fn eval_plan(
    plan: &Plan,
    n: usize,
    spec: &ChainSpec,
    bounds: &OracleBounds,
) -> Result<CountResult, Error> {
    match plan {
        Plan::Reduction(sigmas) => chain::count_chain_312_321_set(n, sigmas),
        Plan::ClosedForm312_4321(sigma) => chain::count_chain_312_4321(n, sigma),
        Plan::CompBrute | Plan::PermBrute => chain::count_chain_bruteforce(n, spec, true, bounds),
        Plan::FullBrute => chain::count_chain_bruteforce(n, spec, false, bounds),
    }
}

fn next_slower(plan: &Plan) -> Option<Plan> {
    match plan {
        Plan::Reduction(_) => Some(Plan::CompBrute),
        Plan::ClosedForm312_4321(_) => Some(Plan::PermBrute),
        Plan::CompBrute | Plan::PermBrute => Some(Plan::FullBrute),
        Plan::FullBrute => None,
    }
}

/// Runs the oracle plan; bound overruns produce null annotations rather than
/// failures.
fn oracle_fields(
    oracle: Option<&Plan>,
    n: usize,
    spec: &ChainSpec,
    bounds: &OracleBounds,
    value: &CountResult,
    exit: &mut i32,
) -> Result<Vec<(&'static str, Value)>, Error> {
    let Some(oracle) = oracle else {
        return Ok(vec![("oracle", Value::Null), ("match", Value::Null)]);
    };
    match eval_plan(oracle, n, spec, bounds) {
        Ok(reference) => {
            let matches = reference.count == value.count;
            if !matches {
                *exit = EXIT_MISMATCH;
            }
            Ok(vec![
                ("oracle", json!(reference.count.to_string())),
                ("match", json!(matches)),
            ])
        }
        Err(Error::ResourceLimit { .. }) => {
            Ok(vec![("oracle", Value::Null), ("match", Value::Null)])
        }
        Err(other) => Err(other),
    }
}

// ---------------------------------------------------------------------------
// count
// ---------------------------------------------------------------------------

fn cmd_count(args: &CountArgs, ctx: &Ctx) -> Result<CommandOutput, Error> {
    let spec = parse_chain(&args.avoid, &args.power_avoid)?;
    let (lo, hi) = parse_range(args.n, args.n_range.as_ref())?;
    let plan = choose_plan(args.method, &spec)?;
    let oracle = if args.verify {
        next_slower(&plan)
    } else {
        None
    };

    let mut rows = Vec::new();
    let mut exit = EXIT_OK;
    for n in lo..=hi {
        let result = eval_plan(&plan, n, &spec, &ctx.bounds)?;
        let mut fields = vec![
            ("n", json!(n)),
            ("value", json!(result.count.to_string())),
            ("method", json!(result.method.to_string())),
        ];
        if args.verify {
            fields.extend(oracle_fields(
                oracle.as_ref(),
                n,
                &spec,
                &ctx.bounds,
                &result,
                &mut exit,
            )?);
        }
        rows.push(row(fields));
    }

    let power_levels: Vec<String> = (1..spec.depth()).map(|i| level_echo(&spec, i)).collect();
    let query = json!({
        "command": "count",
        "avoid": level_echo(&spec, 0),
        "power_avoid": power_levels,
        "n_range": format!("{lo}..{hi}"),
        "method": args.method.name(),
        "verify": args.verify,
        "threads": ctx.threads,
        "format": ctx.format.name(),
    });
    Ok(CommandOutput {
        query,
        rows,
        exit,
        force_bfile: false,
    })
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------

const TABLE1_ROWS: &[(&str, &str)] = &[
    ("123", "table1-123"),
    ("132", "table1-132"),
    ("213", "table1-213"),
    ("231", "table1-231"),
    ("312", "table1-312"),
    ("1234", "table1-1234"),
    ("1243", "table1-1243"),
    ("2134", "table1-2134"),
    ("1324", "table1-1324"),
    ("1342", "table1-1342"),
    ("2314", "table1-2314"),
    ("1423", "table1-1423"),
    ("3124", "table1-3124"),
    ("2143", "table1-2143"),
    ("2341", "table1-2341"),
    ("3412", "table1-3412"),
];

const TABLE2_ROWS: &[(&str, &str)] = &[
    ("123", "table2-123"),
    ("132", "table2-132"),
    ("213", "table2-213"),
    ("231", "table2-231"),
    ("312", "table2-312"),
    ("321", "table2-321"),
];

fn table_rows(preset: TablePreset) -> (&'static [(&'static str, &'static str)], usize) {
    match preset {
        TablePreset::Table1 => (TABLE1_ROWS, 2),
        TablePreset::Table2 => (TABLE2_ROWS, 1),
    }
}

fn table_value(preset: TablePreset, n: usize, sigma: &Permutation) -> Result<CountResult, Error> {
    match preset {
        TablePreset::Table1 => chain::count_chain_312_321(n, sigma),
        TablePreset::Table2 => chain::count_chain_312_4321(n, sigma),
    }
}

fn table_base(preset: TablePreset) -> PatternSet {
    match preset {
        TablePreset::Table1 => chain::base_class_312_321(),
        TablePreset::Table2 => chain::base_class_312_4321(),
    }
}

fn cmd_table(args: &TableArgs, ctx: &Ctx) -> Result<CommandOutput, Error> {
    let (rows_spec, start_n) = table_rows(args.preset);
    let base = table_base(args.preset);
    let mut bfiles: HashMap<&'static str, BFile> = HashMap::new();
    if args.oeis {
        let client = oeis_client(ctx);
        for (_, formula_id) in rows_spec {
            if let Some(reference) = formula(formula_id).and_then(|f| f.oeis) {
                if !bfiles.contains_key(reference.id) {
                    let bfile = client.fetch(&OeisId::new(reference.id)?)?;
                    bfiles.insert(reference.id, bfile);
                }
            }
        }
    }

    let mut rows = Vec::new();
    let mut exit = EXIT_OK;
    for (sigma_text, formula_id) in rows_spec {
        let sigma: Permutation = sigma_text.parse()?;
        let spec = ChainSpec::two_level(base.clone(), PatternSet::single(sigma.clone())?);
        let oracle = args.verify.then_some(match args.preset {
            TablePreset::Table1 => Plan::CompBrute,
            TablePreset::Table2 => Plan::PermBrute,
        });
        for n in start_n..=args.n_max {
            let result = table_value(args.preset, n, &sigma)?;
            let mut fields = vec![
                ("sigma", json!(sigma.compact())),
                ("n", json!(n)),
                ("value", json!(result.count.to_string())),
            ];
            if args.verify {
                fields.extend(oracle_fields(
                    oracle.as_ref(),
                    n,
                    &spec,
                    &ctx.bounds,
                    &result,
                    &mut exit,
                )?);
            }
            if args.oeis {
                let reference = formula(formula_id).and_then(|f| f.oeis);
                let (id_field, match_field) = match reference {
                    Some(oeis_ref) => {
                        let bfile = &bfiles[oeis_ref.id];
                        match bfile.value(n as i64 + oeis_ref.shift) {
                            Some(reference_value) => {
                                let expected = reference_value + oeis_ref.add;
                                let matches = BigInt::from(result.count.clone()) == expected;
                                if !matches {
                                    exit = EXIT_MISMATCH;
                                }
                                (json!(oeis_ref.id), json!(matches))
                            }
                            None => (json!(oeis_ref.id), Value::Null),
                        }
                    }
                    None => (Value::Null, Value::Null),
                };
                fields.push(("oeis", id_field));
                fields.push(("oeis_match", match_field));
            }
            rows.push(row(fields));
        }
    }

    let query = json!({
        "command": "table",
        "preset": match args.preset { TablePreset::Table1 => "table1", TablePreset::Table2 => "table2" },
        "n_max": args.n_max,
        "verify": args.verify,
        "oeis": args.oeis,
        "threads": ctx.threads,
        "format": ctx.format.name(),
    });
    Ok(CommandOutput {
        query,
        rows,
        exit,
        force_bfile: false,
    })
}

fn oeis_client(ctx: &Ctx) -> OeisClient {
    let cache_dir = std::env::var_os("PERMCHAIN_OEIS_CACHE")
        .map(PathBuf::from)
        .unwrap_or_else(default_cache_dir);
    let mut client = OeisClient::new(cache_dir).offline(ctx.offline);
    if let Some(dir) = std::env::var_os("PERMCHAIN_OEIS_FIXTURES") {
        client = client.with_fixture_dir(PathBuf::from(dir));
    }
    client
}

fn default_cache_dir() -> PathBuf {
    match std::env::var_os("HOME") {
        Some(home) => PathBuf::from(home).join(".cache/permchain/oeis"),
        None => PathBuf::from(".permchain-oeis-cache"),
    }
}

// ---------------------------------------------------------------------------
// csigma
// ---------------------------------------------------------------------------

fn cmd_csigma(args: &CsigmaArgs, ctx: &Ctx) -> Result<CommandOutput, Error> {
    let sigma: Permutation = args.sigma.parse()?;
    let decomposition = pattern_class::decompose(&sigma)?;
    let base = pattern_class::base_composition(&decomposition);
    let members = pattern_class::forcing_set(&sigma)?;

    let blocks: Vec<String> = decomposition
        .blocks()
        .iter()
        .map(|b| format!("{:?}({})", b.kind(), b.size()))
        .collect();
    let rows: Vec<Value> = members
        .members()
        .iter()
        .enumerate()
        .map(|(index, comp)| {
            row(vec![
                ("index", json!(index)),
                ("composition", json!(comp.to_string())),
            ])
        })
        .collect();

    let query = json!({
        "command": "csigma",
        "sigma": sigma.to_string(),
        "blocks": blocks.join("+"),
        "base": base.to_string(),
        "members": members.len(),
        "format": ctx.format.name(),
    });
    Ok(CommandOutput {
        query,
        rows,
        exit: EXIT_OK,
        force_bfile: false,
    })
}

// ---------------------------------------------------------------------------
// compcount
// ---------------------------------------------------------------------------

fn cmd_compcount(args: &CompcountArgs, ctx: &Ctx) -> Result<CommandOutput, Error> {
    let patterns: permchain::CompositionSet = args.avoid_comps.parse()?;
    let (lo, hi) = parse_range(args.n, args.n_range.as_ref())?;
    let mut counter = CompCounter::new();

    let mut evaluate = |n: usize, method: CompMethod| -> Result<CountResult, Error> {
        match method {
            CompMethod::Recurrence => Ok(CountResult {
                n,
                count: counter.count(n, &patterns)?,
                method: CountMethod::Recurrence,
            }),
            CompMethod::Brute => {
                counting::count_avoiders_bruteforce(n, &patterns, ctx.bounds.compositions)
            }
        }
    };

    let other = match args.method {
        CompMethod::Recurrence => CompMethod::Brute,
        CompMethod::Brute => CompMethod::Recurrence,
    };

    let mut rows = Vec::new();
    let mut exit = EXIT_OK;
    for n in lo..=hi {
        let result = evaluate(n, args.method)?;
        let mut fields = vec![
            ("n", json!(n)),
            ("value", json!(result.count.to_string())),
            ("method", json!(result.method.to_string())),
        ];
        if args.verify {
            match evaluate(n, other) {
                Ok(reference) => {
                    let matches = reference.count == result.count;
                    if !matches {
                        exit = EXIT_MISMATCH;
                    }
                    fields.push(("oracle", json!(reference.count.to_string())));
                    fields.push(("match", json!(matches)));
                }
                Err(Error::ResourceLimit { .. }) => {
                    fields.push(("oracle", Value::Null));
                    fields.push(("match", Value::Null));
                }
                Err(other_error) => return Err(other_error),
            }
        }
        rows.push(row(fields));
    }

    let query = json!({
        "command": "compcount",
        "avoid_comps": patterns.to_string(),
        "n_range": format!("{lo}..{hi}"),
        "method": args.method.name(),
        "verify": args.verify,
        "threads": ctx.threads,
        "format": ctx.format.name(),
    });
    Ok(CommandOutput {
        query,
        rows,
        exit,
        force_bfile: false,
    })
}

// ---------------------------------------------------------------------------
// conjecture
// ---------------------------------------------------------------------------

fn cmd_conjecture(args: &ConjectureArgs, ctx: &Ctx) -> Result<CommandOutput, Error> {
    let rows = match args.id.as_str() {
        "cube-2143" => {
            let mut rows = Vec::new();
            for n in 1..=args.n_max {
                let comparison = chain::conjecture_cube_2143(n, &ctx.bounds)?;
                rows.push(row(vec![
                    ("n", json!(comparison.n)),
                    ("left", json!(comparison.left.to_string())),
                    ("right", json!(comparison.right.to_string())),
                    ("match", json!(comparison.equal)),
                ]));
            }
            rows
        }
        "chain-54321-132" => chain::conjecture_54321_132(args.n_max, &ctx.bounds)?
            .into_iter()
            .map(|check| {
                row(vec![
                    ("n", json!(check.n)),
                    ("value", json!(check.value.to_string())),
                    (
                        "predicted",
                        check
                            .predicted
                            .map_or(Value::Null, |p| json!(p.to_string())),
                    ),
                    ("match", check.matches.map_or(Value::Null, |m| json!(m))),
                ])
            })
            .collect(),
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown conjecture id {other:?}; valid ids: cube-2143, chain-54321-132"
            )))
        }
    };

    let query = json!({
        "command": "conjecture",
        "id": args.id,
        "n_max": args.n_max,
        "threads": ctx.threads,
        "format": ctx.format.name(),
    });
    // Conjectures are reported, never enforced.
    Ok(CommandOutput {
        query,
        rows,
        exit: EXIT_OK,
        force_bfile: false,
    })
}

// ---------------------------------------------------------------------------
// bfile
// ---------------------------------------------------------------------------

fn cmd_bfile(args: &BfileArgs, ctx: &Ctx) -> Result<CommandOutput, Error> {
    if args.offset < 0 {
        return Err(Error::InvalidInput(
            "sequence indices start at 0; --offset must be nonnegative".into(),
        ));
    }
    let offset = args.offset as usize;

    enum Source {
        Row(TablePreset, Permutation, String),
        Chain(ChainSpec, Plan),
    }

    let source = match (&args.preset_row, &args.avoid) {
        (Some(row_id), None) => {
            let entry = formula(row_id).ok_or_else(|| {
                Error::InvalidInput(format!(
                    "unknown table row {row_id:?}; rows are table1-<sigma> and table2-<sigma>"
                ))
            })?;
            let (prefix, sigma_text) = entry.id.split_once('-').expect("registered row ids");
            let sigma: Permutation = sigma_text.parse()?;
            let preset = match prefix {
                "table1" => TablePreset::Table1,
                _ => TablePreset::Table2,
            };
            Source::Row(preset, sigma, row_id.clone())
        }
        (None, Some(avoid)) => {
            let spec = parse_chain(avoid, &args.power_avoid)?;
            let plan = choose_plan(Method::Auto, &spec)?;
            Source::Chain(spec, plan)
        }
        (None, None) => {
            return Err(Error::InvalidInput(
                "one of --preset-row or --avoid is required".into(),
            ))
        }
        (Some(_), Some(_)) => unreachable!("flags conflict"),
    };

    let mut rows = Vec::new();
    if offset <= args.n_max {
        for n in offset..=args.n_max {
            let count = match &source {
                Source::Row(preset, sigma, _) => table_value(*preset, n, sigma)?.count,
                Source::Chain(spec, plan) => eval_plan(plan, n, spec, &ctx.bounds)?.count,
            };
            rows.push(row(vec![
                ("n", json!(n)),
                ("value", json!(count.to_string())),
            ]));
        }
    }

    let source_echo = match &source {
        Source::Row(_, _, id) => json!({ "preset_row": id }),
        Source::Chain(spec, _) => json!({
            "avoid": level_echo(spec, 0),
            "power_avoid": (1..spec.depth()).map(|i| level_echo(spec, i)).collect::<Vec<_>>(),
        }),
    };
    let query = json!({
        "command": "bfile",
        "source": source_echo,
        "offset": args.offset,
        "n_max": args.n_max,
        "format": "bfile",
    });
    Ok(CommandOutput {
        query,
        rows,
        exit: EXIT_OK,
        force_bfile: true,
    })
}
