use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use rsir_core::cases::{
    builtin_source, case_names, compare, emit, run_case, run_label, CaseConfig, CaseRun, Physics, Reference,
};

/// One-dimensional compressible flow solver with internally reconstructed
/// HLL Riemann solvers.
#[derive(Debug, Parser)]
#[command(name = "rsir", version, about)]
struct Cli {
    /// More log output (-v info, -vv debug); RUST_LOG overrides.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the built-in cases.
    List,
    /// Run a case and write snapshots, manifest and plot script.
    Run {
        #[command(flatten)]
        source: Source,
        /// Output directory.
        #[arg(short, long, default_value = "out")]
        out: PathBuf,
    },
    /// L1 errors of several solvers and meshes against a reference.
    Compare {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_delimiter = ',', default_value = "rsir")]
        solvers: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        cells: Vec<usize>,
        /// `exact`, or `fine:<cells>:<solver>` for a fine-mesh run.
        #[arg(long, default_value = "exact")]
        reference: String,
        /// Print the table as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Run a grid of beta, CFL, mesh and solver values in parallel.
    Sweep {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_delimiter = ',')]
        beta: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        cfl: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        cells: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        solvers: Vec<String>,
        /// Write every run into its own subdirectory here.
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Worker threads (default: all cores).
        #[arg(short, long)]
        jobs: Option<usize>,
    },
}

#[derive(Debug, Args)]
struct Source {
    /// Built-in case name or path to a case file.
    case: String,
    /// Override a config key, e.g. `--set solver.beta=0.5`.
    #[arg(long = "set", value_name = "KEY=VALUE", value_parser = parse_assignment)]
    sets: Vec<(String, String)>,
}

fn parse_assignment(s: &str) -> std::result::Result<(String, String), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected KEY=VALUE, got `{s}`"))?;
    if k.trim().is_empty() {
        return Err(format!("empty key in `{s}`"));
    }
    Ok((k.trim().to_string(), v.trim().to_string()))
}

impl Source {
    fn text(&self) -> Result<String> {
        let path = Path::new(&self.case);
        if path.is_file() || self.case.ends_with(".toml") {
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
        } else {
            Ok(builtin_source(&self.case)?.to_string())
        }
    }

    fn run_with(&self, text: &str, extra: &[(String, String)]) -> Result<CaseRun> {
        let mut sets = self.sets.clone();
        sets.extend_from_slice(extra);
        let case = CaseConfig::parse_with_overrides(text, &sets).with_context(|| format!("case `{}`", self.case))?;
        Ok(run_case(&case)?)
    }
}

fn set(key: &str, value: impl ToString) -> (String, String) {
    (key.to_string(), value.to_string())
}

fn list() {
    for name in case_names() {
        let description = builtin_source(&name)
            .ok()
            .and_then(|text| CaseConfig::parse(text).ok())
            .map(|c| c.config.description)
            .unwrap_or_default();
        println!("{name:<26} {description}");
    }
}

fn run(source: &Source, out: &Path) -> Result<()> {
    let mut run = source.run_with(&source.text()?, &[])?;
    let written = emit(&mut run, out)?;
    let m = &run.manifest;
    println!(
        "{}: {} cells, {} steps, {} fallbacks, max conservation defect {:.2e}, {:.3} s",
        run_label(&run),
        m.cells,
        m.steps,
        m.fallbacks,
        m.max_defect(),
        m.wall_time_s
    );
    for path in written {
        println!("  wrote {}", path.display());
    }
    Ok(())
}

fn compare_cmd(source: &Source, solvers: &[String], cells: &[usize], reference: &str, json: bool) -> Result<()> {
    let text = source.text()?;
    let meshes: Vec<Vec<(String, String)>> = if cells.is_empty() {
        vec![vec![]]
    } else {
        cells.iter().map(|n| vec![set("cells", n)]).collect()
    };
    let jobs: Vec<Vec<(String, String)>> = solvers
        .iter()
        .flat_map(|s| {
            meshes
                .iter()
                .map(move |m| [vec![set("solver.kind", s)], m.clone()].concat())
        })
        .collect();
    let runs: Vec<CaseRun> = jobs
        .par_iter()
        .map(|extra| source.run_with(&text, extra))
        .collect::<Result<_>>()?;
    let fine;
    let reference = match reference.split(':').collect::<Vec<_>>().as_slice() {
        ["exact"] => Reference::Exact,
        ["fine", n, solver] => {
            let n: usize = n
                .parse()
                .with_context(|| format!("bad cell count `{n}` in --reference"))?;
            fine = source.run_with(&text, &[set("cells", n), set("solver.kind", solver)])?;
            Reference::Run(&fine)
        }
        _ => bail!("--reference must be `exact` or `fine:<cells>:<solver>`, got `{reference}`"),
    };
    let table = compare(&runs, reference)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&table)?);
    } else {
        print!("{}", table.to_text());
    }
    Ok(())
}

struct SweepGrid<'a> {
    beta: &'a [f64],
    cfl: &'a [f64],
    cells: &'a [usize],
    solvers: &'a [String],
}

impl SweepGrid<'_> {
    fn points(&self) -> Vec<Vec<(String, String)>> {
        fn axis<T: std::fmt::Display>(key: &str, values: &[T]) -> Vec<Option<(String, String)>> {
            if values.is_empty() {
                vec![None]
            } else {
                values.iter().map(|v| Some(set(key, v))).collect()
            }
        }
        let mut points = vec![vec![]];
        for values in [
            axis("solver.kind", self.solvers),
            axis("solver.beta", self.beta),
            axis("solver.cfl", self.cfl),
            axis("cells", self.cells),
        ] {
            points = points
                .into_iter()
                .flat_map(|p: Vec<(String, String)>| {
                    values.iter().map(move |v| p.iter().cloned().chain(v.clone()).collect())
                })
                .collect();
        }
        points
    }
}

fn sweep(source: &Source, grid: &SweepGrid<'_>, out: Option<&Path>) -> Result<()> {
    let text = source.text()?;
    let points = grid.points();
    log::info!("sweeping {} configurations", points.len());
    let results: Vec<Result<(CaseRun, Option<f64>)>> = points
        .par_iter()
        .map(|extra| {
            let mut run = source.run_with(&text, extra)?;
            let error = match run.case.physics {
                Physics::Euler { eos, .. } if eos.b == 0.0 => {
                    let table = compare(std::slice::from_ref(&run), Reference::Exact)?;
                    table.l1(&run_label(&run), "rho")
                }
                _ => None,
            };
            if let Some(dir) = out {
                let name: String = run_label(&run)
                    .chars()
                    .map(|c| {
                        if c.is_alphanumeric() || c == '.' || c == '-' {
                            c
                        } else {
                            '_'
                        }
                    })
                    .collect();
                emit(&mut run, &dir.join(name))?;
            }
            Ok((run, error))
        })
        .collect();

    println!(
        "{:<44} {:>7} {:>9} {:>9} {:>11} {:>12} {:>9}",
        "run", "cfl", "steps", "fallback", "max defect", "L1(rho)", "wall s"
    );
    let mut failures = 0;
    for (point, result) in points.iter().zip(results) {
        match result {
            Ok((run, error)) => {
                let m = &run.manifest;
                let error = error.map_or_else(|| "-".to_string(), |e| format!("{e:.4e}"));
                println!(
                    "{:<44} {:>7} {:>9} {:>9} {:>11.2e} {:>12} {:>9.3}",
                    run_label(&run),
                    m.cfl,
                    m.steps,
                    m.fallbacks,
                    m.max_defect(),
                    error,
                    m.wall_time_s
                );
            }
            Err(e) => {
                failures += 1;
                let label: Vec<String> = point.iter().map(|(k, v)| format!("{k}={v}")).collect();
                println!("{:<44} failed: {e:#}", label.join(" "));
            }
        }
    }
    if failures > 0 {
        bail!("{failures} of {} runs failed", points.len());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .parse_default_env()
        .init();

    let result = match &cli.command {
        Command::List => {
            list();
            Ok(())
        }
        Command::Run { source, out } => run(source, out),
        Command::Compare {
            source,
            solvers,
            cells,
            reference,
            json,
        } => compare_cmd(source, solvers, cells, reference, *json),
        Command::Sweep {
            source,
            beta,
            cfl,
            cells,
            solvers,
            out,
            jobs,
        } => {
            let grid = SweepGrid {
                beta,
                cfl,
                cells,
                solvers,
            };
            match jobs {
                Some(n) => rayon::ThreadPoolBuilder::new()
                    .num_threads(*n)
                    .build()
                    .context("building the worker pool")
                    .and_then(|pool| pool.install(|| sweep(source, &grid, out.as_deref()))),
                None => sweep(source, &grid, out.as_deref()),
            }
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
