//! Command-line driver.
//!
//! Exit codes: 0 on success, 1 when a property check fails (a file that
//! is not k-geodetic, a construction precondition violation, an excess
//! mismatch), 2 on usage, parse or configuration errors.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use crate::analysis::{
    check_degree_balance, check_in_degree_range, check_out_regularity_threshold,
    check_size_bounds, lemma_suite, outlier_report, LemmaVerdict,
};
use crate::construct::{amalgamate, complete_digraph, directed_cycle, vertex_split};
use crate::digraph::{moore_bound, Digraph, GeodecityWitness};
use crate::format::{parse, render};
use crate::search::{
    enumerate_with_guard, DiregularFilter, SearchSpec, DEFAULT_ORDER_GUARD,
};

const ORDER_GUARD_ENV: &str = "GEODEX_ORDER_GUARD";

#[derive(Parser)]
#[command(
    name = "geodex",
    version,
    about = "Analyze, construct and exhaustively search k-geodetic digraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Moore bound M(d,k) = 1 + d + ... + d^k.
    Moore {
        #[arg(long)]
        d: u64,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// Analyze a digraph file: degrees, geodecity, outlier structure and
    /// every lemma check.
    Check {
        file: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        /// Assert that the order equals M(d,k) plus this excess.
        #[arg(long)]
        excess: Option<i64>,
    },
    /// Enumerate k-geodetic digraphs of order M(d,k) + excess, one
    /// representative per isomorphism class.
    Search {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        excess: usize,
        /// Exact in-degree sequence, comma-separated.
        #[arg(long = "in-degree-seq", value_delimiter = ',')]
        in_degree_seq: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value_t)]
        filter: FilterArg,
        /// Print only the class count.
        #[arg(long)]
        count_only: bool,
        /// Write each class to DIR/<canonical-form-hex>.gdx.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads for the search (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        max_results: Option<usize>,
    },
    /// Build a digraph and print it in file format.
    Construct {
        #[command(subcommand)]
        what: ConstructCmd,
    },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Complete digraph on M vertices.
    Complete { m: usize },
    /// Directed cycle on M vertices.
    Cycle { m: usize },
    /// Split a vertex: duplicate its out-neighbourhood onto a new vertex
    /// and redirect all but R of its in-arcs there.
    Split {
        file: PathBuf,
        #[arg(long)]
        vertex: usize,
        #[arg(long)]
        r: usize,
        /// Sources of the in-arcs to redirect (default: lowest ids).
        #[arg(long, value_delimiter = ',')]
        redirect: Option<Vec<usize>>,
    },
    /// Merge two non-adjacent vertices with identical out-neighbourhoods.
    Amalgamate {
        file: PathBuf,
        #[arg(long)]
        u1: usize,
        #[arg(long)]
        u2: usize,
    },
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum FilterArg {
    #[default]
    All,
    Diregular,
    NonDiregular,
}

impl From<FilterArg> for DiregularFilter {
    fn from(arg: FilterArg) -> Self {
        match arg {
            FilterArg::All => DiregularFilter::All,
            FilterArg::Diregular => DiregularFilter::OnlyDiregular,
            FilterArg::NonDiregular => DiregularFilter::OnlyNonDiregular,
        }
    }
}

/// Runs the CLI on `argv` (including the program name), writing to the
/// given streams, and returns the exit code.
pub fn run<I>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = String>,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let rendered = err.render().to_string();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{rendered}");
                    2
                }
            };
        }
    };
    match cli.command {
        Command::Moore { d, k } => match moore_bound(d, k) {
            Ok(value) => {
                let _ = writeln!(stdout, "{value}");
                0
            }
            Err(err) => {
                let _ = writeln!(stderr, "error: {err}");
                1
            }
        },
        Command::Check { file, d, k, excess } => cmd_check(&file, d, k, excess, stdout, stderr),
        Command::Search {
            d,
            k,
            excess,
            in_degree_seq,
            filter,
            count_only,
            out,
            threads,
            max_results,
        } => cmd_search(
            d,
            k,
            excess,
            in_degree_seq,
            filter,
            count_only,
            out,
            threads,
            max_results,
            stdout,
            stderr,
        ),
        Command::Construct { what } => cmd_construct(what, stdout, stderr),
    }
}

fn read_digraph(path: &Path, stderr: &mut dyn Write) -> Result<Digraph, i32> {
    let text = std::fs::read_to_string(path).map_err(|err| {
        let _ = writeln!(stderr, "error: cannot read {}: {err}", path.display());
        2
    })?;
    parse(&text).map_err(|err| {
        let _ = writeln!(stderr, "error: {}: {err}", path.display());
        2
    })
}

fn set_notation(set: impl IntoIterator<Item = usize>) -> String {
    let items: Vec<String> = set.into_iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn walk_notation(walk: &[usize]) -> String {
    if walk.len() == 1 {
        format!("{} (empty walk)", walk[0])
    } else {
        walk.iter().map(usize::to_string).collect::<Vec<_>>().join(" -> ")
    }
}

fn witness_lines(witness: &GeodecityWitness, out: &mut String) {
    let _ = writeln!(out, "  witness pair: {} -> {}", witness.source, witness.target);
    let _ = writeln!(out, "  walk a: {}", walk_notation(&witness.walk_a));
    let _ = writeln!(out, "  walk b: {}", walk_notation(&witness.walk_b));
}

fn verdict_line(verdict: &LemmaVerdict, out: &mut String) {
    let _ = write!(out, "  {}: ", verdict.lemma);
    let status = match (verdict.holds, verdict.hypothesis_met) {
        (true, true) => "holds".to_string(),
        (true, false) => "holds (hypothesis not met)".to_string(),
        (false, false) => format!(
            "fails outside hypothesis: {}",
            verdict.witness.as_ref().expect("failing verdict carries a witness")
        ),
        (false, true) => format!(
            "FAILS: {}",
            verdict.witness.as_ref().expect("failing verdict carries a witness")
        ),
    };
    let _ = writeln!(out, "{status}");
}

fn cmd_check(
    file: &Path,
    d: usize,
    k: usize,
    excess_flag: Option<i64>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    if d < 1 || k < 1 {
        let _ = writeln!(stderr, "error: --d and --k must be at least 1");
        return 2;
    }
    let g = match read_digraph(file, stderr) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let mut report = String::new();
    let mut failures = 0usize;

    let (out_deg, _) = g.degrees();
    let moore = moore_bound(d as u64, k as i64).map(|m| m.to_string());
    let excess = g.excess(d as u64, k as i64);
    let _ = writeln!(report, "order: {}", g.n());
    let _ = writeln!(report, "arcs: {}", g.arc_count());
    let _ = writeln!(
        report,
        "moore bound M({d},{k}): {}",
        moore.unwrap_or_else(|_| "overflow".into())
    );
    match excess_flag {
        Some(expected) if expected != excess => {
            let _ = writeln!(report, "excess: {excess} (expected {expected}: MISMATCH)");
            failures += 1;
        }
        _ => {
            let _ = writeln!(report, "excess: {excess}");
        }
    }
    let deg_line = |degs: &[usize]| {
        degs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
    };
    let _ = writeln!(report, "out-degrees: {}", deg_line(&out_deg));
    let regularity = g.regularity(d);
    let _ = writeln!(
        report,
        "in-degree sequence: {}",
        deg_line(&regularity.in_degree_sequence)
    );
    let _ = writeln!(
        report,
        "out-regular with degree {d}: {}",
        if regularity.out_regular { "yes" } else { "no" }
    );
    let _ = writeln!(
        report,
        "diregular with degree {d}: {}",
        if regularity.diregular { "yes" } else { "no" }
    );

    match g.is_k_geodetic(k) {
        Ok(()) => {
            let _ = writeln!(report, "{k}-geodetic: yes");
            let outliers =
                outlier_report(&g, d, k).expect("geodetic input cannot be rejected");
            let _ = writeln!(report, "S  (in-degree < {d}): {}", set_notation(outliers.s_set.iter().copied()));
            let _ = writeln!(report, "S' (in-degree > {d}): {}", set_notation(outliers.s_prime_set.iter().copied()));
            let _ = writeln!(report, "outlier sets:");
            for (u, outs) in outliers.outliers.iter().enumerate() {
                let _ = writeln!(report, "  O({u}) = {}", set_notation(outs.iter().copied()));
            }
            let _ = writeln!(report, "inverse outlier sets:");
            for (u, ins) in outliers.inverse_outliers.iter().enumerate() {
                let _ = writeln!(report, "  O-({u}) = {}", set_notation(ins.iter().copied()));
            }
            let _ = writeln!(report, "omega census:");
            for (omega, count) in &outliers.omega_census {
                let _ = writeln!(
                    report,
                    "  {} x {count}",
                    set_notation(omega.iter().copied())
                );
            }
            let verdicts = lemma_suite(&g, d, k).expect("geodetic input cannot be rejected");
            let _ = writeln!(report, "lemma checks:");
            for verdict in &verdicts {
                verdict_line(verdict, &mut report);
                if verdict.hypothesis_met && !verdict.holds {
                    failures += 1;
                }
            }
        }
        Err(witness) => {
            let _ = writeln!(report, "{k}-geodetic: no");
            witness_lines(&witness, &mut report);
            failures += 1;
            // outlier-based checks reject non-geodetic input; the
            // degree-based ones still evaluate
            let _ = writeln!(report, "lemma checks:");
            for verdict in [
                check_out_regularity_threshold(&g, d, k, excess),
                check_size_bounds(&g, d, k, excess),
                check_in_degree_range(&g, d, k, excess),
                Ok(check_degree_balance(&g, d)),
            ]
            .into_iter()
            .flatten()
            {
                verdict_line(&verdict, &mut report);
            }
            let _ = writeln!(
                report,
                "  (outlier-based checks rejected: input is not {k}-geodetic)"
            );
        }
    }

    let _ = write!(stdout, "{report}");
    if failures > 0 {
        1
    } else {
        0
    }
}

fn order_guard(stderr: &mut dyn Write) -> Result<usize, i32> {
    match std::env::var(ORDER_GUARD_ENV) {
        Ok(raw) => raw.trim().parse().map_err(|_| {
            let _ = writeln!(
                stderr,
                "error: {ORDER_GUARD_ENV} must be a non-negative integer, found {raw:?}"
            );
            2
        }),
        Err(_) => Ok(DEFAULT_ORDER_GUARD),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    d: usize,
    k: usize,
    excess: usize,
    in_degree_seq: Option<Vec<usize>>,
    filter: FilterArg,
    count_only: bool,
    out_dir: Option<PathBuf>,
    threads: Option<usize>,
    max_results: Option<usize>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let guard = match order_guard(stderr) {
        Ok(guard) => guard,
        Err(code) => return code,
    };
    let mut spec = match SearchSpec::new(d, k, excess) {
        Ok(spec) => spec,
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            return 2;
        }
    };
    spec.in_degree_sequence = in_degree_seq;
    spec.diregular_filter = filter.into();
    spec.count_only = count_only;
    spec.max_results = max_results;

    let outcome = match threads {
        Some(0) => {
            let _ = writeln!(stderr, "error: --threads must be at least 1");
            return 2;
        }
        Some(n) => {
            let pool = match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                Ok(pool) => pool,
                Err(err) => {
                    let _ = writeln!(stderr, "error: cannot build thread pool: {err}");
                    return 2;
                }
            };
            pool.install(|| enumerate_with_guard(&spec, guard))
        }
        None => enumerate_with_guard(&spec, guard),
    };
    let outcome = match outcome {
        Ok(outcome) => outcome,
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            if matches!(err, crate::search::SearchError::OrderGuardExceeded { .. }) {
                let _ = writeln!(stderr, "hint: set {ORDER_GUARD_ENV} to raise the guard");
            }
            return 2;
        }
    };

    if count_only {
        let _ = writeln!(stdout, "{}", outcome.summary.count);
        return 0;
    }
    if let Some(dir) = out_dir {
        if let Err(err) = std::fs::create_dir_all(&dir) {
            let _ = writeln!(stderr, "error: cannot create {}: {err}", dir.display());
            return 2;
        }
        for hit in &outcome.hits {
            let path = dir.join(format!("{}.gdx", hit.form.hex()));
            if let Err(err) = std::fs::write(&path, render(&hit.digraph)) {
                let _ = writeln!(stderr, "error: cannot write {}: {err}", path.display());
                return 2;
            }
        }
    } else {
        for (index, hit) in outcome.hits.iter().enumerate() {
            let _ = writeln!(stdout, "# class {index}: {}", hit.form.hex());
            let _ = write!(stdout, "{}", render(&hit.digraph));
        }
    }
    let _ = writeln!(stdout, "classes: {}", outcome.summary.count);
    let _ = writeln!(
        stdout,
        "all diregular: {}",
        if outcome.summary.all_diregular { "yes" } else { "no" }
    );
    0
}

fn cmd_construct(what: ConstructCmd, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let print = |g: &Digraph, preamble: &str, stdout: &mut dyn Write| {
        let _ = write!(stdout, "{preamble}{}", render(g));
        0
    };
    match what {
        ConstructCmd::Complete { m } => match complete_digraph(m) {
            Ok(g) => print(&g, "", stdout),
            Err(err) => {
                let _ = writeln!(stderr, "error: {err}");
                1
            }
        },
        ConstructCmd::Cycle { m } => match directed_cycle(m) {
            Ok(g) => print(&g, "", stdout),
            Err(err) => {
                let _ = writeln!(stderr, "error: {err}");
                1
            }
        },
        ConstructCmd::Split { file, vertex, r, redirect } => {
            let g = match read_digraph(&file, stderr) {
                Ok(g) => g,
                Err(code) => return code,
            };
            match vertex_split(&g, vertex, r, redirect.as_deref()) {
                Ok(split) => {
                    let preamble = format!("# split vertex {vertex}; new vertex id {}\n", g.n());
                    print(&split, &preamble, stdout)
                }
                Err(err) => {
                    let _ = writeln!(stderr, "error: {err}");
                    1
                }
            }
        }
        ConstructCmd::Amalgamate { file, u1, u2 } => {
            let g = match read_digraph(&file, stderr) {
                Ok(g) => g,
                Err(code) => return code,
            };
            match amalgamate(&g, u1, u2) {
                Ok(merged) => {
                    let map: Vec<String> = merged
                        .vertex_map
                        .iter()
                        .enumerate()
                        .map(|(old, new)| format!("{old}:{new}"))
                        .collect();
                    let preamble = format!(
                        "# merged vertex: {}\n# vertex map: {}\n",
                        merged.merged,
                        map.join(" ")
                    );
                    print(&merged.digraph, &preamble, stdout)
                }
                Err(err) => {
                    let _ = writeln!(stderr, "error: {err}");
                    1
                }
            }
        }
    }
}
