//! polyacc: univalence scans, accessibility checks, weighted Dirichlet
//! solves, and disk-image renders for layered maps, from the command line.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgAction, Args, Parser, Subcommand};
use num_complex::Complex64;
use polyacc_core::accessibility::{check_fully_accessible, estimate_alpha_sup, AccessVerdict};
use polyacc_core::kernel::{solve_dirichlet, t_alpha_residual, KernelParams};
use polyacc_core::render::{emit_csv, emit_svg, render_image, BoundingBox, RenderSpec};
use polyacc_core::univalence::{scan_univalence, GridSpec, ScanOptions, ScanTarget, ScanVerdict};
use serde::Serialize;
use serde_json::json;

use polyacc::input::{self, ExampleParams};
use polyacc::lavrentiev::{lavrentiev_lhs, ComparisonPair, ComparisonReport};
use polyacc::manifest::RunManifest;
use polyacc::reproduce::reproduce_paper;

fn parse_complex_arg(s: &str) -> Result<Complex64, String> {
    input::parse_complex(s)
}

#[derive(Parser)]
#[command(
    name = "polyacc",
    version,
    about = "Numerical toolkit for layered polyharmonic maps of the unit disk"
)]
struct Cli {
    /// Worker threads for parallel stages (0 = default; POLYACC_THREADS also sets this)
    #[arg(long, global = true, default_value_t = 0, value_name = "N")]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a built-in example map as spec JSON
    Example(ExampleArgs),
    /// Scan the injectivity criterion over a polar grid
    Univalence(UnivalenceArgs),
    /// Check or estimate full alpha-accessibility of the image
    Accessibility(AccessibilityArgs),
    /// Evaluate the Wirtinger jet and Jacobian at a point
    Jacobian(JacobianArgs),
    /// Solve the weighted Dirichlet problem at a point
    Kernel(KernelArgs),
    /// Finite-difference residual of the weighted Laplacian on a solved extension
    KernelResidual(KernelResidualArgs),
    /// Render circle and ray images to SVG (and optionally CSV)
    Render(RenderArgs),
    /// Pointwise boundary-comparison ratio for a built-in (G, K) pair
    Lavrentiev(LavrentievArgs),
    /// Rerun the verification battery into an artifact directory
    ReproducePaper(ReproduceArgs),
}

#[derive(Args, Default)]
struct ParamFlags {
    /// Layer count of the example family
    #[arg(long)]
    p: Option<u32>,
    /// Monomial degree where the family takes one
    #[arg(long)]
    n: Option<u32>,
    /// Complex parameter a as "re" or "re,im"
    #[arg(long, value_parser = parse_complex_arg)]
    a: Option<Complex64>,
    /// Complex parameter b
    #[arg(long, value_parser = parse_complex_arg)]
    b: Option<Complex64>,
    /// Complex parameter c
    #[arg(long, value_parser = parse_complex_arg)]
    c: Option<Complex64>,
    /// Complex parameter mu
    #[arg(long, value_parser = parse_complex_arg)]
    mu: Option<Complex64>,
    /// Complex parameter lambda
    #[arg(long, value_parser = parse_complex_arg)]
    lambda: Option<Complex64>,
}

impl ParamFlags {
    fn to_params(&self) -> ExampleParams {
        ExampleParams {
            p: self.p,
            n: self.n,
            a: self.a,
            b: self.b,
            c: self.c,
            mu: self.mu,
            lambda: self.lambda,
        }
    }
}

#[derive(Args)]
struct SpecSource {
    /// Path to a map spec JSON file
    #[arg(long, value_name = "FILE")]
    spec: Option<PathBuf>,
    /// Built-in example name: eg1, eg2, eg3, acc1, acc2
    #[arg(long, value_name = "NAME", conflicts_with = "spec")]
    example: Option<String>,
    #[command(flatten)]
    params: ParamFlags,
}

impl SpecSource {
    fn resolve_ph(&self) -> Result<polyacc_core::polyharmonic::PolyharmonicSpec, String> {
        input::resolve_polyharmonic(self.spec.as_deref(), self.example.as_deref(), &self.params.to_params())
    }

    fn resolve_target(&self, polyanalytic: bool) -> Result<Box<dyn ScanTarget>, String> {
        if polyanalytic {
            if self.example.is_some() {
                return Err("--polyanalytic requires --spec FILE, not --example".into());
            }
            Ok(Box::new(input::resolve_polyanalytic(self.spec.as_deref())?))
        } else {
            Ok(Box::new(self.resolve_ph()?))
        }
    }

    fn input_name(&self) -> Option<String> {
        self.spec
            .as_ref()
            .map(|p| p.display().to_string())
            .or_else(|| self.example.clone())
    }
}

#[derive(Args)]
struct ExampleArgs {
    /// Family name: eg1, eg2, eg3, acc1, acc2
    #[arg(long, value_name = "NAME")]
    name: String,
    /// Write the spec JSON here instead of stdout
    #[arg(long, value_name = "FILE")]
    emit: Option<PathBuf>,
    #[command(flatten)]
    params: ParamFlags,
}

#[derive(Args)]
struct UnivalenceArgs {
    #[command(flatten)]
    source: SpecSource,
    /// Interpret the spec file as a polyanalytic map
    #[arg(long)]
    polyanalytic: bool,
    /// Radial grid count
    #[arg(long, default_value_t = 100)]
    nr: usize,
    /// Angular grid count
    #[arg(long, default_value_t = 128)]
    ntheta: usize,
    /// Kernel-parameter grid count
    #[arg(long, default_value_t = 32)]
    nt: usize,
    /// Innermost scan radius
    #[arg(long, default_value_t = 0.01)]
    rmin: f64,
    /// Outermost scan radius
    #[arg(long, default_value_t = 0.99)]
    rmax: f64,
    /// Refine around the coarse minimum before deciding
    #[arg(long, default_value_t = true, action = ArgAction::Set, value_name = "BOOL")]
    refine: bool,
    /// Modulus below which the criterion counts as vanishing
    #[arg(long, default_value_t = 1e-9)]
    threshold: f64,
}

#[derive(Args)]
struct AccessibilityArgs {
    #[command(flatten)]
    source: SpecSource,
    /// Accessibility level to check, in [0, 1)
    #[arg(long, conflicts_with = "estimate")]
    alpha: Option<f64>,
    /// Estimate the supremal level instead of checking one
    #[arg(long)]
    estimate: bool,
    #[arg(long, default_value_t = 100)]
    nr: usize,
    #[arg(long, default_value_t = 128)]
    ntheta: usize,
    #[arg(long, default_value_t = 0.01)]
    rmin: f64,
    #[arg(long, default_value_t = 0.99)]
    rmax: f64,
}

#[derive(Args)]
struct JacobianArgs {
    #[command(flatten)]
    source: SpecSource,
    /// Interpret the spec file as a polyanalytic map
    #[arg(long)]
    polyanalytic: bool,
    /// Evaluation point as "re" or "re,im"
    #[arg(long, value_parser = parse_complex_arg, value_name = "Z")]
    at: Complex64,
}

#[derive(Args)]
struct KernelArgs {
    /// Weight exponent alpha (> -1)
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Boundary data: const:RE[,IM] | cos:K | sin:K | fourier:K:A:B[;...]
    #[arg(long)]
    boundary: String,
    /// Evaluation point inside the disk
    #[arg(long, value_parser = parse_complex_arg, value_name = "Z")]
    at: Complex64,
    /// Quadrature node count (even, >= 16)
    #[arg(long, default_value_t = 256)]
    nodes: usize,
}

#[derive(Args)]
struct KernelResidualArgs {
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Boundary data the extension is solved from
    #[arg(long)]
    boundary: String,
    /// Lattice step of the finite-difference stencil
    #[arg(long)]
    h: f64,
    #[arg(long, default_value_t = 256)]
    nodes: usize,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    source: SpecSource,
    /// Interpret the spec file as a polyanalytic map
    #[arg(long)]
    polyanalytic: bool,
    #[arg(long, default_value_t = 0.99)]
    rmax: f64,
    #[arg(long, default_value_t = 24)]
    circles: usize,
    #[arg(long, default_value_t = 24)]
    rays: usize,
    #[arg(long, default_value_t = 512)]
    samples: usize,
    #[arg(long, default_value_t = 800)]
    canvas: u32,
    #[arg(long, default_value_t = 1.0)]
    stroke: f64,
    /// Output SVG path
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
    /// Also write the sampled points as CSV
    #[arg(long, value_name = "FILE")]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct LavrentievArgs {
    /// Data set: shear, monomial-shear, halfplane
    #[arg(long, value_name = "NAME")]
    pair: String,
    /// Shear coefficient a (shear pair only)
    #[arg(long, value_parser = parse_complex_arg, default_value = "4")]
    a: Complex64,
    /// Shear coefficient b (shear pair only)
    #[arg(long, value_parser = parse_complex_arg, default_value = "1")]
    b: Complex64,
    /// Monomial degree (monomial-shear pair only)
    #[arg(long, default_value_t = 2)]
    n: u32,
    /// Evaluation point
    #[arg(long, value_parser = parse_complex_arg, value_name = "Z")]
    at: Complex64,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Output directory for reports, figures and the summary
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
}

fn init_threads(flag: usize) {
    let n = if flag > 0 {
        flag
    } else {
        std::env::var("POLYACC_THREADS")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
            .unwrap_or(0)
    };
    if n > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn print_report<T: Serialize>(report: &T) -> Result<(), String> {
    let body = serde_json::to_string_pretty(report).map_err(|e| e.to_string())?;
    println!("{body}");
    Ok(())
}

fn run_example(args: &ExampleArgs, started: Instant) -> Result<u8, String> {
    let spec = input::resolve_example(&args.name, &args.params.to_params())?;
    let mut manifest = RunManifest::new("example", Some(args.name.clone()), json!({}));
    if let Some(path) = &args.emit {
        let body = serde_json::to_string_pretty(&spec).map_err(|e| e.to_string())?;
        std::fs::write(path, body + "\n").map_err(|e| format!("{}: {e}", path.display()))?;
        manifest.add_output(path);
    }
    manifest.finish(started);
    manifest.emit_stderr();
    if args.emit.is_none() {
        print_report(&spec)?;
    }
    Ok(0)
}

fn run_univalence(args: &UnivalenceArgs, started: Instant) -> Result<u8, String> {
    let target = args.source.resolve_target(args.polyanalytic)?;
    let grid = GridSpec {
        r_min: args.rmin,
        r_max: args.rmax,
        n_r: args.nr,
        n_theta: args.ntheta,
        n_t: args.nt,
    };
    let opts = ScanOptions {
        refine: args.refine,
        zero_threshold: args.threshold,
    };
    let report = scan_univalence(&*target, &grid, &opts).map_err(|e| e.to_string())?;
    let mut manifest = RunManifest::new(
        "univalence",
        args.source.input_name(),
        json!({ "grid": grid, "refine": args.refine, "threshold": args.threshold, "polyanalytic": args.polyanalytic }),
    );
    manifest.finish(started);
    manifest.emit_stderr();
    print_report(&report)?;
    Ok(match report.verdict {
        ScanVerdict::NoViolationFound => 0,
        ScanVerdict::ViolationFound => 2,
        ScanVerdict::HypothesisFailed => 3,
    })
}

fn run_accessibility(args: &AccessibilityArgs, started: Instant) -> Result<u8, String> {
    let spec = args.source.resolve_ph()?;
    let grid = GridSpec {
        r_min: args.rmin,
        r_max: args.rmax,
        n_r: args.nr,
        n_theta: args.ntheta,
        n_t: 2,
    };
    let report = match (args.alpha, args.estimate) {
        (Some(alpha), false) => check_fully_accessible(&spec, alpha, &grid),
        (None, true) => estimate_alpha_sup(&spec, &grid),
        _ => return Err("pass exactly one of --alpha A or --estimate".into()),
    }
    .map_err(|e| e.to_string())?;
    let mut manifest = RunManifest::new(
        "accessibility",
        args.source.input_name(),
        json!({ "grid": grid, "alpha": args.alpha, "estimate": args.estimate }),
    );
    manifest.finish(started);
    manifest.emit_stderr();
    print_report(&report)?;
    Ok(match report.verdict {
        AccessVerdict::Holds | AccessVerdict::Estimated => 0,
        AccessVerdict::Fails | AccessVerdict::NotAccessibleAtResolution => 2,
        AccessVerdict::HypothesisFailed => 3,
    })
}

#[derive(Serialize)]
struct JetReport {
    z: [f64; 2],
    value: [f64; 2],
    dz: [f64; 2],
    dzbar: [f64; 2],
    jacobian: f64,
}

fn run_jacobian(args: &JacobianArgs, started: Instant) -> Result<u8, String> {
    let target = args.source.resolve_target(args.polyanalytic)?;
    let jet = target.wirtinger_jet(args.at).map_err(|e| e.to_string())?;
    let report = JetReport {
        z: [args.at.re, args.at.im],
        value: [jet.value.re, jet.value.im],
        dz: [jet.dz.re, jet.dz.im],
        dzbar: [jet.dzbar.re, jet.dzbar.im],
        jacobian: jet.jacobian(),
    };
    let mut manifest = RunManifest::new(
        "jacobian",
        args.source.input_name(),
        json!({ "at": [args.at.re, args.at.im], "polyanalytic": args.polyanalytic }),
    );
    manifest.finish(started);
    manifest.emit_stderr();
    print_report(&report)?;
    Ok(0)
}

#[derive(Serialize)]
struct KernelValueReport {
    alpha: f64,
    nodes: usize,
    z: [f64; 2],
    value: [f64; 2],
}

fn run_kernel(args: &KernelArgs, started: Instant) -> Result<u8, String> {
    let boundary = input::parse_boundary(&args.boundary)?;
    let params = KernelParams::new(args.alpha).with_nodes(args.nodes);
    let value = solve_dirichlet(&boundary, &params, args.at).map_err(|e| e.to_string())?;
    let report = KernelValueReport {
        alpha: args.alpha,
        nodes: args.nodes,
        z: [args.at.re, args.at.im],
        value: [value.re, value.im],
    };
    let mut manifest = RunManifest::new(
        "kernel",
        None,
        json!({ "alpha": args.alpha, "boundary": args.boundary, "nodes": args.nodes, "at": [args.at.re, args.at.im] }),
    );
    manifest.finish(started);
    manifest.emit_stderr();
    print_report(&report)?;
    Ok(0)
}

#[derive(Serialize)]
struct KernelResidualReport {
    alpha: f64,
    boundary: String,
    nodes: usize,
    h: f64,
    residual: f64,
}

fn run_kernel_residual(args: &KernelResidualArgs, started: Instant) -> Result<u8, String> {
    let boundary = input::parse_boundary(&args.boundary)?;
    let params = KernelParams::new(args.alpha).with_nodes(args.nodes);
    let f = |z: Complex64| solve_dirichlet(&boundary, &params, z);
    let residual = t_alpha_residual(&f, args.h, args.alpha).map_err(|e| e.to_string())?;
    let report = KernelResidualReport {
        alpha: args.alpha,
        boundary: args.boundary.clone(),
        nodes: args.nodes,
        h: args.h,
        residual,
    };
    let mut manifest = RunManifest::new(
        "kernel-residual",
        None,
        json!({ "alpha": args.alpha, "boundary": args.boundary, "nodes": args.nodes, "h": args.h }),
    );
    manifest.finish(started);
    manifest.emit_stderr();
    print_report(&report)?;
    Ok(0)
}

#[derive(Serialize)]
struct RenderReport {
    svg: String,
    csv: Option<String>,
    polylines: usize,
    bbox: BoundingBox,
}

fn run_render(args: &RenderArgs, started: Instant) -> Result<u8, String> {
    let target = args.source.resolve_target(args.polyanalytic)?;
    let rs = RenderSpec {
        n_circles: args.circles,
        n_rays: args.rays,
        samples_per_curve: args.samples,
        r_max: args.rmax,
        canvas_px: args.canvas,
        stroke_width: args.stroke,
    };
    let image = render_image(&*target, &rs).map_err(|e| e.to_string())?;
    emit_svg(&image, &rs, &args.out).map_err(|e| e.to_string())?;
    if let Some(csv) = &args.csv {
        emit_csv(&image, csv).map_err(|e| e.to_string())?;
    }

    let mut manifest = RunManifest::new(
        "render",
        args.source.input_name(),
        json!({ "render": rs, "polyanalytic": args.polyanalytic }),
    );
    manifest.add_output(&args.out);
    if let Some(csv) = &args.csv {
        manifest.add_output(csv);
    }
    manifest.finish(started);
    manifest.emit_stderr();
    let manifest_path = args.out.with_file_name("manifest.json");
    manifest.write_file(&manifest_path).map_err(|e| e.to_string())?;

    let report = RenderReport {
        svg: args.out.display().to_string(),
        csv: args.csv.as_ref().map(|p| p.display().to_string()),
        polylines: image.polylines.len(),
        bbox: image.bbox,
    };
    print_report(&report)?;
    Ok(0)
}

fn run_lavrentiev(args: &LavrentievArgs, started: Instant) -> Result<u8, String> {
    let pair = ComparisonPair::from_name(&args.pair).map_err(|e| e.to_string())?;
    let (g, k) = pair.build(args.a, args.b, args.n).map_err(|e| e.to_string())?;
    let lhs = lavrentiev_lhs(&g, &k, args.at).map_err(|e| e.to_string())?;
    let report = ComparisonReport {
        z: [args.at.re, args.at.im],
        lhs,
    };
    let mut manifest = RunManifest::new(
        "lavrentiev",
        Some(args.pair.clone()),
        json!({ "a": [args.a.re, args.a.im], "b": [args.b.re, args.b.im], "n": args.n, "at": [args.at.re, args.at.im] }),
    );
    manifest.finish(started);
    manifest.emit_stderr();
    print_report(&report)?;
    Ok(0)
}

fn run_reproduce(args: &ReproduceArgs, started: Instant) -> Result<u8, String> {
    let (summary, outputs) = reproduce_paper(&args.out).map_err(|e| e.to_string())?;
    let mut manifest = RunManifest::new(
        "reproduce-paper",
        None,
        json!({ "out": args.out.display().to_string() }),
    );
    for path in &outputs {
        manifest.add_output(path);
    }
    manifest.finish(started);
    manifest.emit_stderr();
    manifest
        .write_file(&args.out.join("manifest.json"))
        .map_err(|e| e.to_string())?;
    print_report(&summary)?;
    Ok(if summary.all_ok { 0 } else { 2 })
}

fn run(command: &Command, started: Instant) -> Result<u8, String> {
    match command {
        Command::Example(args) => run_example(args, started),
        Command::Univalence(args) => run_univalence(args, started),
        Command::Accessibility(args) => run_accessibility(args, started),
        Command::Jacobian(args) => run_jacobian(args, started),
        Command::Kernel(args) => run_kernel(args, started),
        Command::KernelResidual(args) => run_kernel_residual(args, started),
        Command::Render(args) => run_render(args, started),
        Command::Lavrentiev(args) => run_lavrentiev(args, started),
        Command::ReproducePaper(args) => run_reproduce(args, started),
    }
}

fn main() -> ExitCode {
    let started = Instant::now();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0u8,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    init_threads(cli.threads);
    match run(&cli.command, started) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
