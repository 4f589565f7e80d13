//! Command-line front end: spec files in, machine-readable reports out.
//!
//! Exit codes: 0 when every verdict matches expectations, 1 on a verdict
//! mismatch (a failing check, a failing scenario), 2 on usage or spec
//! errors.

mod report;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use monolim::conjugate::{conjugate, conjugate_fast};
use monolim::fitzpatrick::{check_class_f, check_class_fstar, is_monotone, ClassCheck};
use monolim::limits::{
    epi_convergence_report, liminf_graphs, liminf_resolvent, EpiConfig, EpiDomain, FnTerm,
    LiminfConfig,
};
use monolim::resolvent::{resolve, resolve_oracle};
use monolim::types::report::ConvergenceReport;
use monolim::verify::{run_scenario, scenario_names, ScenarioOutcome};
use monolim::{Axis, DualPair, Grid2, Point};

use report::{emit, emit_csv};
use spec::SpecFile;

#[derive(Parser)]
#[command(
    name = "monolim",
    version,
    about = "Monotone operator limits and representative functions on finite windows"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Graphs,
    Resolvent,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Discrete Legendre-Fenchel conjugate of a closed-form function.
    Conjugate {
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the value table as CSV (requires --out).
        #[arg(long)]
        csv: bool,
    },
    /// Fitzpatrick function of an operator on the window.
    Fitzpatrick {
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        csv: bool,
    },
    /// Class membership or monotonicity check.
    Check {
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the check tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Solve the resolvent inclusion for a probe pair.
    Resolve {
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graph lower limit of an operator sequence.
    Liminf {
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        tail: Option<u32>,
        #[arg(long)]
        nmax: Option<u32>,
    },
    /// Epi-convergence diagnostic for a function sequence.
    Epi {
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        tail: Option<u32>,
        #[arg(long)]
        nmax: Option<u32>,
    },
    /// Run catalog scenarios and write one report per scenario.
    Verify {
        /// Scenario name; omit with --all.
        name: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &PathBuf) -> anyhow::Result<SpecFile> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read spec {}", path.display()))?;
    SpecFile::parse(&text).with_context(|| format!("in spec {}", path.display()))
}

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Conjugate { spec, out, csv } => cmd_conjugate(&load(&spec)?, out, csv),
        Command::Fitzpatrick { spec, out, csv } => cmd_fitzpatrick(&load(&spec)?, out, csv),
        Command::Check { spec, out, tol } => cmd_check(&load(&spec)?, out, tol),
        Command::Resolve { spec, out } => cmd_resolve(&load(&spec)?, out),
        Command::Liminf {
            spec,
            out,
            method,
            tol,
            tail,
            nmax,
        } => cmd_liminf(&load(&spec)?, out, method, tol, tail, nmax),
        Command::Epi {
            spec,
            out,
            tol,
            tail,
            nmax,
        } => cmd_epi(&load(&spec)?, out, tol, tail, nmax),
        Command::Verify { name, all, out } => cmd_verify(name, all, out),
    }
}

#[derive(Serialize)]
struct ConjugateReport {
    command: &'static str,
    window: Axis,
    fast_brute_max_gap: f64,
    /// Pairs `(s, f*(s))` on the dual window.
    values: Vec<(f64, f64)>,
}

fn cmd_conjugate(spec: &SpecFile, out: Option<PathBuf>, csv: bool) -> anyhow::Result<ExitCode> {
    let axis = spec.axis()?;
    let f = spec
        .function
        .as_ref()
        .ok_or_else(|| anyhow!("conjugate requires a 'function'"))?
        .fixed()?
        .sample(&axis)
        .map_err(|e| anyhow!("{e}"))?;
    let brute = conjugate(&f, &axis).map_err(|e| anyhow!("{e}"))?;
    let fast = conjugate_fast(&f, &axis).map_err(|e| anyhow!("{e}"))?;
    let gap = (0..axis.len())
        .map(|i| (brute.value(i).raw() - fast.value(i).raw()).abs())
        .fold(0.0, f64::max);
    let values: Vec<(f64, f64)> = axis
        .points()
        .enumerate()
        .map(|(i, s)| (s, brute.value(i).raw()))
        .collect();
    let rep = ConjugateReport {
        command: "conjugate",
        window: axis,
        fast_brute_max_gap: gap,
        values,
    };
    if csv {
        let dir = out
            .as_deref()
            .ok_or_else(|| anyhow!("--csv requires --out"))?;
        let rows: Vec<Vec<f64>> = rep.values.iter().map(|(s, v)| vec![*s, *v]).collect();
        emit_csv(&["s", "conjugate"], &rows, dir, "conjugate.csv")?;
    }
    emit(&rep, out.as_deref(), "conjugate.json")?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct FitzpatrickReport {
    command: &'static str,
    window: Grid2,
    min_value: f64,
    max_value: f64,
    min_gap_to_coupling: f64,
    majorizes_coupling: ClassCheck,
}

fn cmd_fitzpatrick(spec: &SpecFile, out: Option<PathBuf>, csv: bool) -> anyhow::Result<ExitCode> {
    let grid = spec.grid()?;
    let op = spec
        .operator
        .as_ref()
        .ok_or_else(|| anyhow!("fitzpatrick requires an 'operator'"))?
        .fixed()?;
    let phi = monolim::fitzpatrick::fitzpatrick_fn_of(&op, &grid).map_err(|e| anyhow!("{e}"))?;
    let mut min_value = f64::INFINITY;
    let mut max_value = f64::NEG_INFINITY;
    let mut min_gap = f64::INFINITY;
    let mut rows = Vec::new();
    for (ix, iy) in grid.indices() {
        let (x, s) = grid.point(ix, iy);
        let v = phi.value(ix, iy).raw();
        min_value = min_value.min(v);
        max_value = max_value.max(v);
        min_gap = min_gap.min(v - x * s);
        if csv {
            rows.push(vec![x, s, v]);
        }
    }
    if csv {
        let dir = out
            .as_deref()
            .ok_or_else(|| anyhow!("--csv requires --out"))?;
        emit_csv(&["x", "xstar", "phi"], &rows, dir, "fitzpatrick.csv")?;
    }
    let rep = FitzpatrickReport {
        command: "fitzpatrick",
        window: grid,
        min_value,
        max_value,
        min_gap_to_coupling: min_gap,
        majorizes_coupling: check_class_f(&phi, 1e-9),
    };
    emit(&rep, out.as_deref(), "fitzpatrick.json")?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct CheckReport {
    command: &'static str,
    window: Grid2,
    check: ClassCheck,
}

fn cmd_check(spec: &SpecFile, out: Option<PathBuf>, tol: Option<f64>) -> anyhow::Result<ExitCode> {
    let grid = spec.grid()?;
    let kind = spec
        .check
        .as_ref()
        .map(|c| c.kind.clone())
        .ok_or_else(|| anyhow!("check requires a 'check' section"))?;
    let tol = tol.or(spec.tolerances.class).unwrap_or(1e-9);
    let check = match kind.as_str() {
        "class_f" => {
            let target = spec::check_target(spec, &grid)?;
            check_class_f(&target, tol)
        }
        "class_fstar" => {
            let target = spec::check_target(spec, &grid)?;
            check_class_fstar(&target, tol).map_err(|e| anyhow!("{e}"))?
        }
        "monotone" => {
            let op = spec
                .operator
                .as_ref()
                .ok_or_else(|| anyhow!("monotone check requires an 'operator'"))?

                .fixed()?;
            is_monotone(&op.sample(&grid).map_err(|e| anyhow!("{e}"))?)
        }
        other => bail!("unknown check kind '{other}' (class_f, class_fstar, monotone)"),
    };
    let passed = check.passed();
    let rep = CheckReport {
        command: "check",
        window: grid,
        check,
    };
    emit(&rep, out.as_deref(), "check.json")?;
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[derive(Serialize)]
struct ResolveReport {
    command: &'static str,
    probe: DualPair,
    solution: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_solution: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_gap: Option<f64>,
}

fn cmd_resolve(spec: &SpecFile, out: Option<PathBuf>) -> anyhow::Result<ExitCode> {
    let axis = spec.axis()?;
    let op = spec
        .operator
        .as_ref()
        .ok_or_else(|| anyhow!("resolve requires an 'operator'"))?
        .fixed()?;
    let probe = spec
        .probe
        .as_ref()
        .ok_or_else(|| anyhow!("resolve requires a 'probe' {{x, xstar}}"))?;
    let probe = DualPair::new(Point::one(probe.x), Point::one(probe.xstar));
    let z = resolve(&op, &probe).map_err(|e| anyhow!("{e}"))?.scalar();
    let oracle = resolve_oracle(&op, &probe, &axis).ok();
    let rep = ResolveReport {
        command: "resolve",
        probe,
        solution: z,
        oracle_solution: oracle,
        oracle_gap: oracle.map(|o| (o - z).abs()),
    };
    emit(&rep, out.as_deref(), "resolve.json")?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct LiminfReport {
    command: &'static str,
    window: Grid2,
    tol: f64,
    tail: u32,
    nmax: u32,
    probe_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    accepted_graphs: Option<Vec<DualPair>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    accepted_resolvent: Option<Vec<DualPair>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hausdorff_between_methods: Option<f64>,
}

fn cmd_liminf(
    spec: &SpecFile,
    out: Option<PathBuf>,
    method: Method,
    tol: Option<f64>,
    tail: Option<u32>,
    nmax: Option<u32>,
) -> anyhow::Result<ExitCode> {
    let grid = spec.grid()?;
    let nmax = nmax.or(spec.nmax).unwrap_or(monolim::limits::DEFAULT_N_MAX);
    let tail = tail.or(spec.tail).unwrap_or(monolim::limits::DEFAULT_TAIL);
    let tol = tol
        .or(spec.tolerances.tol)
        .unwrap_or(10.0 * grid.step());
    let seq = spec
        .sequence
        .as_ref()
        .ok_or_else(|| anyhow!("liminf requires a 'sequence'"))?
        .sequence(nmax)?;
    let probes = grid.probe_pairs(spec.probes.stride, spec.probes.margin);
    let cfg = LiminfConfig::new(tol, tail);

    let graphs = if method != Method::Resolvent {
        Some(liminf_graphs(&seq, &grid, &probes, &cfg).map_err(|e| anyhow!("{e}"))?)
    } else {
        None
    };
    let resolvent = if method != Method::Graphs {
        Some(liminf_resolvent(&seq, &probes, &cfg).map_err(|e| anyhow!("{e}"))?)
    } else {
        None
    };
    let between = match (&graphs, &resolvent) {
        (Some(a), Some(b)) if !a.is_empty() && !b.is_empty() => {
            Some(monolim::hausdorff(a, b).map_err(|e| anyhow!("{e}"))?)
        }
        _ => None,
    };
    let rep = LiminfReport {
        command: "liminf",
        window: grid,
        tol,
        tail,
        nmax,
        probe_count: probes.len(),
        accepted_graphs: graphs.map(|g| g.points().to_vec()),
        accepted_resolvent: resolvent.map(|g| g.points().to_vec()),
        hausdorff_between_methods: between,
    };
    emit(&rep, out.as_deref(), "liminf.json")?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct EpiReport {
    command: &'static str,
    window: Axis,
    nmax: u32,
    report: ConvergenceReport,
}

fn cmd_epi(
    spec: &SpecFile,
    out: Option<PathBuf>,
    tol: Option<f64>,
    tail: Option<u32>,
    nmax: Option<u32>,
) -> anyhow::Result<ExitCode> {
    let axis = spec.axis()?;
    let nmax = nmax.or(spec.nmax).unwrap_or(monolim::limits::DEFAULT_N_MAX);
    let seq = spec
        .function_sequence
        .as_ref()
        .ok_or_else(|| anyhow!("epi requires a 'function_sequence'"))?
        .sequence(nmax)?;
    let candidate = spec
        .candidate
        .as_ref()
        .ok_or_else(|| anyhow!("epi requires a 'candidate'"))?
        .fixed()?;
    let mut cfg = EpiConfig::default_for_step(axis.step());
    if let Some(t) = tol.or(spec.tolerances.tol) {
        cfg.tol = t;
    }
    if let Some(t) = tail.or(spec.tail) {
        cfg.tail = t;
    }
    let domain = EpiDomain::line(axis.clone(), spec.probes.stride, spec.probes.margin);
    let report = epi_convergence_report(&seq, &FnTerm::Spec(candidate), &domain, &cfg)
        .map_err(|e| anyhow!("{e}"))?;
    let passed = report.passed();
    let rep = EpiReport {
        command: "epi",
        window: axis,
        nmax,
        report,
    };
    emit(&rep, out.as_deref(), "epi.json")?;
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[derive(Serialize)]
struct VerifySummary {
    command: &'static str,
    total: usize,
    passed: usize,
    scenarios: Vec<(String, bool)>,
}

fn cmd_verify(
    name: Option<String>,
    all: bool,
    out: Option<PathBuf>,
) -> anyhow::Result<ExitCode> {
    let names: Vec<String> = if all {
        scenario_names().iter().map(|s| s.to_string()).collect()
    } else {
        vec![name.ok_or_else(|| anyhow!("provide a scenario name or --all"))?]
    };
    let mut outcomes: Vec<ScenarioOutcome> = Vec::new();
    for n in &names {
        let outcome = run_scenario(n).map_err(|e| anyhow!("{e}"))?;
        println!(
            "{}: {}",
            outcome.name,
            if outcome.passed { "PASS" } else { "FAIL" }
        );
        emit(&outcome, out.as_deref(), &format!("{}.json", outcome.name))?;
        outcomes.push(outcome);
    }
    let summary = VerifySummary {
        command: "verify",
        total: outcomes.len(),
        passed: outcomes.iter().filter(|o| o.passed).count(),
        scenarios: outcomes.iter().map(|o| (o.name.clone(), o.passed)).collect(),
    };
    if out.is_some() {
        emit(&summary, out.as_deref(), "summary.json")?;
    }
    Ok(if summary.passed == summary.total {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
