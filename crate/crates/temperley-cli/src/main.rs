//! Command-line front end: group enumeration, coefficient tables of the
//! Kazhdan-Lusztig and Temperley-Lieb bases, verification checks and
//! structure-constant scans. Exit status: 0 on success, 1 when a check
//! finds a counterexample, 2 on configuration errors.

mod cache;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use temperley::coxeter::{format_word, CoxeterGraph, GroupTable};
use temperley::tl::{TlAlgebra, TlBasis};
use temperley::verify::{self, CheckReport};
use temperley::TABLE_FORMAT_VERSION;

use cache::Cache;

#[derive(Parser)]
#[command(
    name = "temperley",
    version,
    about = "Exact Hecke / Temperley-Lieb basis tables and checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the group: order, fully commutative count, longest word
    Group {
        #[command(flatten)]
        common: Common,
        /// Print one row per element
        #[arg(long)]
        list: bool,
    },
    /// Kazhdan-Lusztig coefficient table
    Kl {
        #[command(flatten)]
        common: Common,
    },
    /// Temperley-Lieb basis tables and structure constants
    Tl {
        #[command(flatten)]
        common: Common,
        /// Basis: t, b (monomial) or c (canonical)
        #[arg(long, default_value = "c")]
        basis: String,
        /// Dump the full multiplication table of the chosen basis
        #[arg(long)]
        structure: bool,
    },
    /// Run verification checks; exit 1 if any fails
    Verify {
        /// Checks to run
        #[arg(required = true, value_enum)]
        targets: Vec<Target>,
        #[command(flatten)]
        common: Common,
    },
    /// Scan structure constants and report violations
    Scan {
        /// What to scan for (currently: positivity)
        target: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Graph spec: a named type (A4, B3, D5, I2:7) or JSON
    /// {"rank": n, "bonds": [[i, j, m], ...]}
    #[arg(long)]
    graph: String,
    /// Output format
    #[arg(long, value_enum, default_value_t = OutFormat::Table)]
    out: OutFormat,
    /// Directory for cached coefficient tables
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Worker threads for verification scans
    #[arg(long)]
    jobs: Option<usize>,
    /// Enumeration cap (guards against infinite groups)
    #[arg(long, default_value_t = temperley::DEFAULT_MAX_ORDER)]
    max_order: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Projection,
    Lattice,
    Kernel,
    Positivity,
    #[value(name = "lemma-2-1-3")]
    Lemma213,
    Deletion,
    MonomialVsCanonical,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let common = match &cli.command {
        Command::Group { common, .. }
        | Command::Kl { common }
        | Command::Tl { common, .. }
        | Command::Verify { common, .. }
        | Command::Scan { common, .. } => common,
    };
    if let Some(jobs) = common.jobs {
        if jobs == 0 {
            bail!("--jobs must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("worker pool")?;
    }
    let graph = CoxeterGraph::parse(&common.graph)
        .with_context(|| format!("parsing graph spec {:?}", common.graph))?;
    let table = GroupTable::enumerate(graph, common.max_order).context("enumerating group")?;
    let cache = Cache::new(common.cache.clone());

    match cli.command {
        Command::Group { common, list } => {
            cmd_group(&table, &common, list);
            Ok(true)
        }
        Command::Kl { common } => {
            let kl = cache.kl_table(&table)?;
            let dump = kl.to_json(&table, "kl", TABLE_FORMAT_VERSION);
            print_table_dump(&table, &common, &dump);
            Ok(true)
        }
        Command::Tl {
            common,
            basis,
            structure,
        } => {
            let basis =
                TlBasis::parse(&basis).ok_or_else(|| anyhow!("--basis must be one of t, b, c"))?;
            cmd_tl(&table, &common, basis, structure, &cache)
        }
        Command::Verify { targets, common } => {
            let reports = run_targets(&table, &targets, &cache)?;
            print_reports(&common, &reports);
            Ok(reports.iter().all(CheckReport::passed))
        }
        Command::Scan { target, common } => {
            if target != "positivity" {
                bail!("unknown scan target {target:?} (expected: positivity)");
            }
            let reports = run_targets(&table, &[Target::Positivity], &cache)?;
            print_reports(&common, &reports);
            if common.out == OutFormat::Table {
                println!(
                    "{} negative coefficients",
                    reports[0].info["negative_coefficients"]
                );
            }
            Ok(reports.iter().all(CheckReport::passed))
        }
    }
}

fn cmd_group(table: &GroupTable, common: &Common, list: bool) {
    let rank = table.rank();
    let summary = json!({
        "graph": table.graph().label(),
        "order": table.order(),
        "fully_commutative": table.fc_count(),
        "max_length": table.max_length(),
        "longest_word": format_word(table.word(table.longest_element()), rank),
    });
    match common.out {
        OutFormat::Json => {
            let mut value = summary;
            if list {
                let elements: Vec<Value> = table
                    .elements()
                    .map(|w| {
                        json!({
                            "word": format_word(table.word(w), rank),
                            "length": table.length(w),
                            "fully_commutative": table.is_fc(w),
                            "content": table.content_generators(w).iter().map(|s| s + 1).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                value["elements"] = Value::Array(elements);
            }
            println!("{value}");
        }
        OutFormat::Table => {
            println!(
                "graph {}  order {}  fully commutative {}  max length {}",
                table.graph().label(),
                table.order(),
                table.fc_count(),
                table.max_length()
            );
            if list {
                for w in table.elements() {
                    println!(
                        "{:<12} length {:<3} {}",
                        format_word(table.word(w), rank),
                        table.length(w),
                        if table.is_fc(w) { "fc" } else { "complex" }
                    );
                }
            }
        }
    }
}

fn cmd_tl(
    table: &GroupTable,
    common: &Common,
    basis: TlBasis,
    structure: bool,
    cache: &Cache,
) -> anyhow::Result<bool> {
    let tl = TlAlgebra::new(table);
    let canonical = match basis {
        TlBasis::Canonical => Some(cache.canonical_table(&tl)?),
        _ => None,
    };
    let rank = table.rank();
    if structure {
        let consts = tl.structure_constants(basis, canonical.as_ref());
        let fc = tl.fc_elements();
        let products: Vec<Value> = fc
            .iter()
            .enumerate()
            .flat_map(|(i, &x)| {
                let consts = &consts;
                fc.iter().enumerate().map(move |(j, &y)| {
                    let expansion: Vec<Value> = consts[i][j]
                        .iter()
                        .map(|(z, c)| json!([format_word(table.word(*z), rank), c.to_json()]))
                        .collect();
                    json!([
                        format_word(table.word(x), rank),
                        format_word(table.word(y), rank),
                        expansion
                    ])
                })
            })
            .collect();
        let dump = json!({
            "version": TABLE_FORMAT_VERSION,
            "graph": table.graph().label(),
            "kind": format!("struct-{}", basis.name()),
            "products": products,
        });
        print_structure_dump(common, &dump);
        return Ok(true);
    }
    let dump = match basis {
        TlBasis::Canonical => {
            canonical
                .as_ref()
                .unwrap()
                .to_json(table, "tl-c", TABLE_FORMAT_VERSION)
        }
        _ => {
            let columns: Vec<Value> = tl
                .fc_elements()
                .iter()
                .map(|&w| {
                    let elt = match basis {
                        TlBasis::T => temperley::tl::TlElt::basis(w),
                        TlBasis::Monomial => tl.b_monomial(w).expect("fc index"),
                        TlBasis::Canonical => unreachable!(),
                    };
                    let entries: Vec<Value> = elt
                        .coords()
                        .map(|(x, c)| json!([format_word(table.word(x), rank), c.to_json()]))
                        .collect();
                    json!([format_word(table.word(w), rank), entries])
                })
                .collect();
            json!({
                "version": TABLE_FORMAT_VERSION,
                "graph": table.graph().label(),
                "kind": format!("tl-{}", basis.name()),
                "columns": columns,
            })
        }
    };
    print_table_dump(table, common, &dump);
    Ok(true)
}

fn print_table_dump(_table: &GroupTable, common: &Common, dump: &Value) {
    match common.out {
        OutFormat::Json => println!("{dump}"),
        OutFormat::Table => {
            println!("kind {}  graph {}", dump["kind"], dump["graph"]);
            for col in dump["columns"].as_array().into_iter().flatten() {
                let w = col[0].as_str().unwrap_or("?");
                let entries = col[1].as_array().cloned().unwrap_or_default();
                let rendered: Vec<String> = entries
                    .iter()
                    .map(|e| {
                        let poly = temperley::laurent::LaurentPoly::from_json(&e[1])
                            .map(|p| p.to_string())
                            .unwrap_or_else(|_| "?".into());
                        format!("{} -> {}", e[0].as_str().unwrap_or("?"), poly)
                    })
                    .collect();
                println!("{w}: {}", rendered.join("; "));
            }
        }
    }
}

fn print_structure_dump(common: &Common, dump: &Value) {
    match common.out {
        OutFormat::Json => println!("{dump}"),
        OutFormat::Table => {
            println!("kind {}  graph {}", dump["kind"], dump["graph"]);
            for row in dump["products"].as_array().into_iter().flatten() {
                let rendered: Vec<String> = row[2]
                    .as_array()
                    .cloned()
                    .unwrap_or_default()
                    .iter()
                    .map(|e| {
                        let poly = temperley::laurent::LaurentPoly::from_json(&e[1])
                            .map(|p| p.to_string())
                            .unwrap_or_else(|_| "?".into());
                        format!("({}) {}", poly, e[0].as_str().unwrap_or("?"))
                    })
                    .collect();
                println!(
                    "{} * {} = {}",
                    row[0].as_str().unwrap_or("?"),
                    row[1].as_str().unwrap_or("?"),
                    rendered.join(" + ")
                );
            }
        }
    }
}

fn run_targets(
    table: &GroupTable,
    targets: &[Target],
    cache: &Cache,
) -> anyhow::Result<Vec<CheckReport>> {
    let tl = TlAlgebra::new(table);
    let needs_kl = targets
        .iter()
        .any(|t| matches!(t, Target::Projection | Target::Kernel));
    let needs_ic = targets.iter().any(|t| {
        matches!(
            t,
            Target::Projection | Target::Positivity | Target::MonomialVsCanonical
        )
    });
    let kl = if needs_kl {
        Some(cache.kl_table(table)?)
    } else {
        None
    };
    let ic = if needs_ic {
        Some(cache.canonical_table(&tl)?)
    } else {
        None
    };

    let mut reports = Vec::new();
    for target in targets {
        let report = match target {
            Target::Projection => {
                verify::check_projection(&tl, kl.as_ref().unwrap(), ic.as_ref().unwrap())
            }
            Target::Lattice => verify::check_lattice(&tl),
            Target::Kernel => verify::check_kernel(&tl, kl.as_ref().unwrap()),
            Target::Positivity => verify::check_positivity(&tl, ic.as_ref().unwrap()),
            Target::Lemma213 => verify::check_append_bound(&tl),
            Target::Deletion => verify::check_deletion(&tl, 12),
            Target::MonomialVsCanonical => {
                verify::check_monomial_vs_canonical(&tl, ic.as_ref().unwrap())
            }
        }?;
        reports.push(report);
    }
    Ok(reports)
}

fn print_reports(common: &Common, reports: &[CheckReport]) {
    match common.out {
        OutFormat::Json => {
            let values: Vec<Value> = reports.iter().map(CheckReport::to_json).collect();
            println!("{}", Value::Array(values));
        }
        OutFormat::Table => {
            for rep in reports {
                println!(
                    "check={} graph={} scanned={} failures={} elapsed_ms={} {}",
                    rep.check,
                    rep.graph,
                    rep.scanned,
                    rep.failures.len(),
                    rep.elapsed_ms,
                    if rep.passed() { "PASS" } else { "FAIL" }
                );
                if let Some(first) = rep.failures.first() {
                    println!(
                        "  counterexample: element {} ({})",
                        first.element, first.detail
                    );
                }
            }
        }
    }
}
