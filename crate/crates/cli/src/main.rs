//! `nltu` — exact enumeration of the Boolean functions computable by integer
//! threshold neurons, with and without saturating dendritic subunits, under
//! per-input synapse budgets.
//!
//! Subcommands: `enumerate` (ad-hoc function sets and witness dumps),
//! `oracle` (independent linear-separability ground truth, with a disk
//! cache), `figure1` / `figure2` / `figure3` (the report pipelines), and
//! `plot` (SVG charts from report CSVs).

mod chart;

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use nltu_core::experiments::{
    run_figure2, run_figure3, verify_figure1, CapacityReport, ExperimentOptions,
};
use nltu_core::oracle::{
    cache_file_path, capacity_from_entries, compute_oracle_entries, enumerate_monotone,
    load_oracle_cache, write_oracle_cache, DEFAULT_WEIGHT_BOUND,
};
use nltu_core::search::{
    enumerate_functions_with, EnumerateOptions, ModelKind, SearchSpec, DEFAULT_STATE_CAP,
};

#[derive(Parser)]
#[command(
    name = "nltu",
    version,
    about = "Exact function counts for integer threshold neurons with and without \
             saturating dendritic subunits"
)]
struct Cli {
    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RangeArgs {
    /// Arities to include: a single value ("4") or an inclusive range ("1..5").
    #[arg(long)]
    n: Option<String>,
    /// Alias accepting the same syntax as --n.
    #[arg(long, conflicts_with = "n")]
    n_range: Option<String>,
    /// Permit n=6, whose oracle generation takes minutes; off by default.
    #[arg(long)]
    allow_n6: bool,
}

#[derive(Args)]
struct CacheArg {
    /// Directory for oracle result caches (safe to delete at any time).
    #[arg(long, env = "NLTU_CACHE")]
    cache: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate every function computable at a fixed per-input synapse budget.
    Enumerate {
        /// Neuron model to enumerate: "ltu" or "nltu".
        #[arg(long, default_value = "nltu", value_parser = parse_model)]
        model: ModelKind,
        /// Number of inputs (1..=6).
        #[arg(long)]
        n: usize,
        /// Per-input synapse budget k.
        #[arg(long, default_value_t = 1)]
        budget: u32,
        /// Cap on subunit count (dendritic model only; default: n).
        #[arg(long)]
        d_max: Option<usize>,
        /// Abort after this many visited parameter states.
        #[arg(long)]
        state_cap: Option<u64>,
        /// Record one witness parameter set per function.
        #[arg(long)]
        witnesses: bool,
        /// Write the JSON result here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate or validate the linear-separability oracle for one arity.
    Oracle {
        /// Number of inputs (1..=6).
        #[arg(long)]
        n: usize,
        /// Largest integer weight the separability search certifies.
        #[arg(long, default_value_t = DEFAULT_WEIGHT_BOUND)]
        bound: u32,
        #[command(flatten)]
        cache: CacheArg,
        /// Also write the separable function set as JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-derive the worked three-input example; write figure1_verify.json.
    Figure1 {
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Minimal budgets to reach separable capacity; write figure2.csv/.json.
    Figure2 {
        #[command(flatten)]
        range: RangeArgs,
        /// Largest budget the search may try before reporting ">K".
        #[arg(long, default_value_t = 8)]
        budget: u32,
        #[arg(long)]
        state_cap: Option<u64>,
        #[command(flatten)]
        cache: CacheArg,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Function counts at one synapse per input; write figure3.csv/.json.
    Figure3 {
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long)]
        state_cap: Option<u64>,
        #[command(flatten)]
        cache: CacheArg,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Render an SVG chart from a report CSV.
    Plot {
        /// Report CSV produced by figure2 or figure3.
        #[arg(long)]
        input: PathBuf,
        /// Which chart shape to draw.
        #[arg(long, value_enum)]
        kind: chart::ChartKind,
        /// Output SVG path (default: input path with .svg extension).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        if workers == 0 {
            bail!("--workers must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .context("worker pool already initialized")?;
    }
    match cli.command {
        Command::Enumerate {
            model,
            n,
            budget,
            d_max,
            state_cap,
            witnesses,
            out,
        } => cmd_enumerate(model, n, budget, d_max, state_cap, witnesses, out),
        Command::Oracle {
            n,
            bound,
            cache,
            out,
        } => cmd_oracle(n, bound, cache.cache.as_deref(), out),
        Command::Figure1 { out } => cmd_figure1(&out),
        Command::Figure2 {
            range,
            budget,
            state_cap,
            cache,
            out,
        } => {
            let opts = experiment_options(&range, &[3, 4, 5], budget, state_cap, cache.cache)?;
            let report = run_figure2(&opts).context("figure2 pipeline failed")?;
            write_report(&report, &out, "figure2")
        }
        Command::Figure3 {
            range,
            state_cap,
            cache,
            out,
        } => {
            let opts = experiment_options(&range, &[3, 4, 5], 8, state_cap, cache.cache)?;
            let report = run_figure3(&opts).context("figure3 pipeline failed")?;
            write_report(&report, &out, "figure3")
        }
        Command::Plot { input, kind, out } => cmd_plot(&input, kind, out),
    }
}

fn parse_model(text: &str) -> Result<ModelKind, String> {
    text.parse().map_err(|e: nltu_core::Error| e.to_string())
}

/// Accepts "4" or an inclusive "1..5" / "1..=5".
fn parse_arity_selection(text: &str) -> Result<Vec<usize>> {
    let parse_one = |s: &str| -> Result<usize> {
        s.trim()
            .parse::<usize>()
            .with_context(|| format!("'{s}' is not an arity"))
    };
    if let Some((lo, hi)) = text.split_once("..") {
        let lo = parse_one(lo)?;
        let hi = parse_one(hi.trim_start_matches('='))?;
        if lo > hi {
            bail!("empty arity range '{text}'");
        }
        Ok((lo..=hi).collect())
    } else {
        Ok(vec![parse_one(text)?])
    }
}

fn experiment_options(
    range: &RangeArgs,
    default_n: &[usize],
    max_budget: u32,
    state_cap: Option<u64>,
    cache_dir: Option<PathBuf>,
) -> Result<ExperimentOptions> {
    let n_values = match range.n.as_deref().or(range.n_range.as_deref()) {
        Some(text) => parse_arity_selection(text)?,
        None => default_n.to_vec(),
    };
    for &n in &n_values {
        if n == 0 || n > 6 {
            bail!("arity {n} out of range: this tool handles 1..=6 inputs");
        }
        if n == 6 && !range.allow_n6 {
            bail!(
                "n=6 oracle generation takes minutes and is gated off by default; \
                 pass --allow-n6 to include it"
            );
        }
    }
    Ok(ExperimentOptions {
        n_values,
        max_budget,
        state_cap: state_cap.unwrap_or(DEFAULT_STATE_CAP),
        cache_dir,
        progress: true,
    })
}

fn cmd_enumerate(
    model: ModelKind,
    n: usize,
    budget: u32,
    d_max: Option<usize>,
    state_cap: Option<u64>,
    witnesses: bool,
    out: Option<PathBuf>,
) -> Result<()> {
    let mut spec = SearchSpec::new(model, n, budget)?;
    if let Some(d) = d_max {
        spec = spec.with_max_subunits(d)?;
    }
    if let Some(cap) = state_cap {
        spec = spec.with_state_cap(cap);
    }
    let result = enumerate_functions_with(
        &spec,
        EnumerateOptions {
            collect_witnesses: witnesses,
            progress: true,
        },
    )?;

    let functions: Vec<String> = result
        .functions
        .sorted_masks()
        .into_iter()
        .map(|m| format!("{m:#x}"))
        .collect();
    let mut doc = serde_json::json!({
        "model": model.to_string(),
        "n": n,
        "budget": budget,
        "max_subunits": spec.max_subunits(),
        "function_count": functions.len(),
        "capacity_bits": (functions.len() as f64).log2(),
        "states_visited": result.states_visited,
        "states_pruned": result.states_pruned,
        "functions": functions,
    });
    if let Some(map) = &result.witnesses {
        let mut witness_doc = serde_json::Map::new();
        for (mask, params) in map {
            witness_doc.insert(format!("{mask:#x}"), serde_json::to_value(params)?);
        }
        doc["witnesses"] = serde_json::Value::Object(witness_doc);
    }
    let rendered = serde_json::to_string_pretty(&doc)?;
    match out {
        Some(path) => {
            std::fs::write(&path, rendered + "\n")
                .with_context(|| format!("writing {}", path.display()))?;
            println!(
                "{model} n={n} budget={budget}: {} functions -> {}",
                result.functions.len(),
                path.display()
            );
        }
        None => println!("{rendered}"),
    }
    Ok(())
}

fn cmd_oracle(n: usize, bound: u32, cache_dir: Option<&Path>, out: Option<PathBuf>) -> Result<()> {
    let monotone_count = enumerate_monotone(n)?.len();
    let (entries, cache_status, cache_file) = match cache_dir {
        Some(dir) => {
            let path = cache_file_path(dir, n);
            if path.exists() {
                match load_oracle_cache(dir, n) {
                    Ok(entries) => (entries, "loaded", Some(path)),
                    Err(err) => {
                        eprintln!("[oracle] invalid cache ({err}); regenerating");
                        let entries = compute_oracle_entries(n, bound)?;
                        write_oracle_cache(dir, n, bound, &entries)?;
                        (entries, "regenerated", Some(path))
                    }
                }
            } else {
                let entries = compute_oracle_entries(n, bound)?;
                write_oracle_cache(dir, n, bound, &entries)?;
                (entries, "created", Some(path))
            }
        }
        None => (compute_oracle_entries(n, bound)?, "uncached", None),
    };
    let capacity = capacity_from_entries(n, &entries)?;

    let doc = serde_json::json!({
        "n": n,
        "weight_bound": bound,
        "monotone_count": monotone_count,
        "separable_count": capacity.len(),
        "cache_status": cache_status,
        "cache_file": cache_file.as_ref().map(|p| p.display().to_string()),
    });
    println!("{}", serde_json::to_string_pretty(&doc)?);

    if let Some(path) = out {
        let masks: Vec<String> = capacity
            .sorted_masks()
            .into_iter()
            .map(|m| format!("{m:#x}"))
            .collect();
        let set_doc = serde_json::json!({
            "n": n,
            "count": masks.len(),
            "masks": masks,
        });
        std::fs::write(&path, serde_json::to_string_pretty(&set_doc)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn cmd_figure1(out_dir: &Path) -> Result<()> {
    let report = verify_figure1()?;
    std::fs::create_dir_all(out_dir)
        .with_context(|| format!("creating {}", out_dir.display()))?;
    let path = out_dir.join("figure1_verify.json");
    std::fs::write(&path, report.to_json()? + "\n")
        .with_context(|| format!("writing {}", path.display()))?;
    for check in &report.checks {
        println!(
            "{} {} — {}",
            if check.pass { "PASS" } else { "FAIL" },
            check.name,
            check.detail
        );
    }
    println!("wrote {}", path.display());
    if !report.all_pass {
        bail!("worked-example verification failed");
    }
    Ok(())
}

fn write_report(report: &CapacityReport, out_dir: &Path, stem: &str) -> Result<()> {
    std::fs::create_dir_all(out_dir)
        .with_context(|| format!("creating {}", out_dir.display()))?;
    let csv_path = out_dir.join(format!("{stem}.csv"));
    let json_path = out_dir.join(format!("{stem}.json"));
    std::fs::write(&csv_path, report.to_csv())
        .with_context(|| format!("writing {}", csv_path.display()))?;
    std::fs::write(&json_path, report.to_json()? + "\n")
        .with_context(|| format!("writing {}", json_path.display()))?;
    println!(
        "wrote {} and {} ({} rows)",
        csv_path.display(),
        json_path.display(),
        report.rows.len()
    );
    Ok(())
}

fn cmd_plot(input: &Path, kind: chart::ChartKind, out: Option<PathBuf>) -> Result<()> {
    let text = std::fs::read_to_string(input)
        .with_context(|| format!("reading {}", input.display()))?;
    let rows = chart::parse_report_csv(&text)
        .map_err(|e| anyhow::anyhow!("{}: {e}", input.display()))?;
    let svg = chart::render_svg(&rows, kind).map_err(|e| anyhow::anyhow!(e))?;
    let out_path = out.unwrap_or_else(|| input.with_extension("svg"));
    std::fs::write(&out_path, svg)
        .with_context(|| format!("writing {}", out_path.display()))?;
    println!("wrote {}", out_path.display());
    Ok(())
}
