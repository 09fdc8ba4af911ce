use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::{mpsc, Arc};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ntpgraph::analysis::verify_graph;
use ntpgraph::export::{self, ExportFormat};
use ntpgraph::{catalog, BuildOptions, ElementTable, NonFGraph, Permutation, PermutationGroup, VerificationReport};
use serde::Serialize;

mod source;

use source::GroupSource;

const DEFAULT_CLI_CAP: usize = 20_000;

#[derive(Parser)]
#[command(name = "ntpgraph", version, about = "Non-two-primes graphs of finite permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, prime divisors, solvability, classes and element orders.
    Info {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = InfoFormat::Text)]
        format: InfoFormat,
        #[arg(long, default_value_t = DEFAULT_CLI_CAP)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the graph on non-isolated elements.
    Graph {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = ntpgraph::DEFAULT_THRESHOLD)]
        k: usize,
        #[arg(long, default_value = "dot")]
        format: ExportFormat,
        #[arg(long, default_value_t = DEFAULT_CLI_CAP)]
        cap: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write the export here and its summary to `<PATH>.summary.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Distance between two elements given in cycle notation.
    Distance {
        #[command(flatten)]
        group: GroupArgs,
        x: String,
        y: String,
        #[arg(long, default_value_t = ntpgraph::DEFAULT_THRESHOLD)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_CLI_CAP)]
        cap: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Check connectivity, the diameter bound and the supporting properties.
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        /// Verify every group of the built-in sweep whose order fits the cap.
        #[arg(long)]
        catalog_all: bool,
        #[arg(long, default_value_t = DEFAULT_CLI_CAP)]
        cap: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Emit reports in input order rather than completion order.
        #[arg(long)]
        stable: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Default)]
struct GroupArgs {
    /// Catalog name or expression, e.g. `dihedral` or `direct_product(psl27,cyclic(5))`.
    #[arg(long)]
    catalog: Vec<String>,
    /// Parameter for a bare catalog name.
    #[arg(long)]
    n: Option<usize>,
    /// Group file: a `degree: n` line followed by `gen: <cycles>` lines.
    #[arg(long)]
    file: Vec<PathBuf>,
}

impl GroupArgs {
    fn sources(&self) -> Result<Vec<GroupSource>> {
        if self.n.is_some() && self.catalog.len() != 1 {
            bail!("--n needs exactly one --catalog");
        }
        let mut sources: Vec<GroupSource> =
            self.catalog.iter().map(|name| GroupSource::Catalog { name: name.clone(), n: self.n }).collect();
        sources.extend(self.file.iter().cloned().map(GroupSource::File));
        Ok(sources)
    }

    fn single(&self) -> Result<GroupSource> {
        let mut sources = self.sources()?;
        match sources.len() {
            1 => Ok(sources.remove(0)),
            0 => bail!("specify a group with --catalog or --file"),
            _ => bail!("this command takes exactly one group"),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum InfoFormat {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Info { group, format, cap, out } => cmd_info(&group.single()?, format, cap, out.as_deref()),
        Command::Graph { group, k, format, cap, jobs, out } => {
            cmd_graph(&group.single()?, k, format, cap, jobs, out.as_deref())
        }
        Command::Distance { group, x, y, k, cap, jobs } => cmd_distance(&group.single()?, &x, &y, k, cap, jobs),
        Command::Verify { group, catalog_all, cap, jobs, stable, out } => {
            let mut sources = group.sources()?;
            if catalog_all {
                sources.extend(catalog::SWEEP.iter().map(|e| GroupSource::Catalog { name: e.to_string(), n: None }));
            }
            if sources.is_empty() {
                bail!("specify groups with --catalog, --file or --catalog-all");
            }
            cmd_verify(sources, catalog_all, cap, jobs, stable, out.as_deref())
        }
    }
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn table_for(group: &PermutationGroup, cap: usize) -> Result<Arc<ElementTable>> {
    Ok(Arc::new(group.enumerate_elements(cap)?))
}

#[derive(Serialize)]
struct InfoSummary {
    group: String,
    degree: usize,
    order: u64,
    primes: ntpgraph::PrimeSet,
    solvable: bool,
    class_count: usize,
    element_orders: BTreeMap<u64, usize>,
}

fn cmd_info(source: &GroupSource, format: InfoFormat, cap: usize, out: Option<&Path>) -> Result<ExitCode> {
    let group = source.resolve()?;
    let table = table_for(&group, cap)?;
    let summary = InfoSummary {
        group: source.id(),
        degree: group.degree(),
        order: table.len() as u64,
        primes: table.group_primes(),
        solvable: group.is_solvable()?,
        class_count: table.class_count(),
        element_orders: table.order_histogram(),
    };
    let text = match format {
        InfoFormat::Json => serde_json::to_string_pretty(&summary)? + "\n",
        InfoFormat::Text => {
            let orders: Vec<String> = summary.element_orders.iter().map(|(o, c)| format!("{o}:{c}")).collect();
            format!(
                "group: {}\ndegree: {}\norder: {}\nprimes: {}\nsolvable: {}\nclasses: {}\nelement orders: {}\n",
                summary.group,
                summary.degree,
                summary.order,
                summary.primes,
                summary.solvable,
                summary.class_count,
                orders.join(" ")
            )
        }
    };
    write_output(out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn build_graph(group: &PermutationGroup, k: usize, cap: usize, jobs: usize) -> Result<NonFGraph> {
    if k == 0 {
        bail!("--k must be positive");
    }
    let table = table_for(group, cap)?;
    Ok(NonFGraph::build(table, BuildOptions { threshold: k, jobs: jobs.max(1), ..BuildOptions::default() }))
}

fn cmd_graph(
    source: &GroupSource,
    k: usize,
    format: ExportFormat,
    cap: usize,
    jobs: usize,
    out: Option<&Path>,
) -> Result<ExitCode> {
    let group = source.resolve()?;
    let graph = build_graph(&group, k, cap, jobs)?;
    write_output(out, &export::export(&graph, format))?;
    let summary = serde_json::to_string_pretty(&export::summary(&graph))? + "\n";
    match out {
        Some(path) => {
            let mut sidecar = path.as_os_str().to_owned();
            sidecar.push(".summary.json");
            fs::write(&sidecar, summary).context("writing summary")?;
        }
        None => eprint!("{summary}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn element_index(group: &PermutationGroup, table: &ElementTable, text: &str) -> Result<usize> {
    let p = Permutation::parse_cycles(text, group.degree()).with_context(|| format!("parsing {text:?}"))?;
    table.index_of(&p).with_context(|| format!("{} is not in the group", p.format_cycles()))
}

fn cmd_distance(source: &GroupSource, x: &str, y: &str, k: usize, cap: usize, jobs: usize) -> Result<ExitCode> {
    let group = source.resolve()?;
    let graph = build_graph(&group, k, cap, jobs)?;
    let i = element_index(&group, graph.table(), x)?;
    let j = element_index(&group, graph.table(), y)?;
    if graph.is_isolated(i) || graph.is_isolated(j) {
        println!("isolated");
    } else {
        match graph.distance(i, j)? {
            Some(d) => println!("{d}"),
            None => println!("unreachable"),
        }
    }
    Ok(ExitCode::SUCCESS)
}

enum VerifyResult {
    Report(VerificationReport),
    Error { group: String, message: String },
}

impl VerifyResult {
    fn to_json(&self) -> String {
        match self {
            VerifyResult::Report(r) => r.to_json(),
            VerifyResult::Error { group, message } => {
                serde_json::json!({ "group": group, "error": message }).to_string()
            }
        }
    }
}

fn verify_one(source: &GroupSource, cap: usize, jobs: usize) -> VerifyResult {
    let run = || -> Result<VerificationReport> {
        let group = source.resolve()?;
        let table = table_for(&group, cap)?;
        let graph = NonFGraph::build(table, BuildOptions { jobs, ..BuildOptions::default() });
        Ok(verify_graph(&graph, &source.id(), group.is_solvable()?))
    };
    match run() {
        Ok(report) => VerifyResult::Report(report),
        Err(err) => VerifyResult::Error { group: source.id(), message: format!("{err:#}") },
    }
}

fn cmd_verify(
    sources: Vec<GroupSource>,
    skip_oversized: bool,
    cap: usize,
    jobs: usize,
    stable: bool,
    out: Option<&Path>,
) -> Result<ExitCode> {
    let jobs = jobs.max(1);
    // The sweep silently skips groups above the cap; explicit groups report it.
    let sources: Vec<GroupSource> = if skip_oversized {
        sources.into_iter().filter(|s| s.resolve().map(|g| g.order() <= cap as u128).unwrap_or(true)).collect()
    } else {
        sources
    };

    let mut sink: Box<dyn Write> = match out {
        Some(path) => Box::new(fs::File::create(path).with_context(|| format!("creating {}", path.display()))?),
        None => Box::new(io::stdout()),
    };

    let (tx, rx) = mpsc::channel::<(usize, VerifyResult)>();
    let per_group_jobs = if sources.len() == 1 { jobs } else { 1 };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    let mut results: Vec<Option<VerifyResult>> = (0..sources.len()).map(|_| None).collect();
    let mut next_to_emit = 0;
    std::thread::scope(|scope| -> Result<()> {
        let sources = &sources;
        scope.spawn(move || {
            pool.scope(|s| {
                for (i, source) in sources.iter().enumerate() {
                    let tx = tx.clone();
                    s.spawn(move |_| {
                        let _ = tx.send((i, verify_one(source, cap, per_group_jobs)));
                    });
                }
            });
        });
        for (i, result) in rx {
            if stable {
                results[i] = Some(result);
                while let Some(Some(r)) = results.get(next_to_emit) {
                    writeln!(sink, "{}", r.to_json())?;
                    next_to_emit += 1;
                }
            } else {
                writeln!(sink, "{}", result.to_json())?;
                results[i] = Some(result);
            }
            sink.flush()?;
        }
        Ok(())
    })?;

    let results: Vec<VerifyResult> = results.into_iter().map(|r| r.expect("every group reported")).collect();
    let mut failed = 0;
    let mut errors = 0;
    let mut widest: Option<(u32, &str)> = None;
    for r in &results {
        match r {
            VerifyResult::Report(rep) => {
                if !rep.passed() {
                    failed += 1;
                }
                if let Some(d) = rep.diameter {
                    if widest.is_none_or(|(w, _)| d > w) {
                        widest = Some((d, &rep.group));
                    }
                }
            }
            VerifyResult::Error { group, message } => {
                errors += 1;
                eprintln!("error: {group}: {message}");
            }
        }
    }
    eprintln!(
        "verified {} groups: {} passed, {failed} failed, {errors} errors",
        results.len(),
        results.len() - failed - errors
    );
    if let Some((d, g)) = widest {
        eprintln!("largest diameter observed: {d} ({g})");
    }
    Ok(if failed > 0 {
        ExitCode::from(1)
    } else if errors > 0 {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}
