use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use flatscan::complex::{load_grid, load_off, Shape};
use flatscan::distance::{bottleneck, wasserstein};
use flatscan::grassmann::sample_flats;
use flatscan::json::{diagram_from_json, dpht_from_json, dpht_to_string};
use flatscan::shapes::fixtures;
use flatscan::transform::{
    continuity_probe, dpht_scan, injectivity_probe, rotation_schedule, translation_schedule, DphtResult,
};
use flatscan::Flat;

mod demo;
mod plot;

#[derive(Parser)]
#[command(name = "flatscan", version, about = "Distance-from-flat persistent homology scans")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan a shape with random m-flats and write the diagrams as JSON
    Scan {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
        num_flats: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        max_degree: Option<usize>,
        /// Flats pass within this distance of the origin (default: bounding radius)
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Largest per-degree diagram distance between two scans of the same flats
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = Metric::Bottleneck)]
        metric: Metric,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
    },
    /// Euler curves and slice Euler characteristics only
    Euler {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
        num_flats: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Empirical probes
    Probe {
        #[command(subcommand)]
        probe: Probe,
    },
    /// Built-in demonstrations; exit status 1 if any check fails
    Demo {
        #[arg(value_enum)]
        name: demo::DemoName,
    },
    /// Render a scan or a single diagram as SVG
    Plot {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum Probe {
    /// Do slice Euler characteristics over pixel-centre lines separate random grids?
    Injectivity {
        #[arg(long, default_value_t = 5)]
        grid_size: usize,
        #[arg(long, default_value_t = 500)]
        pairs: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Degree-0 bottleneck along rotation and translation schedules of a line
    Continuity {
        /// Shape file (default: built-in 64×64 annulus)
        #[arg(long)]
        input: Option<PathBuf>,
        /// Height of the horizontal base line
        #[arg(long, default_value_t = 9.0)]
        offset: f64,
        #[arg(long, default_value_t = 8)]
        steps: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Metric {
    Bottleneck,
    Wasserstein,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn input_error(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure::new(2, format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(path, e))
}

fn write(path: &Path, text: &str) -> CmdResult {
    fs::write(path, text).map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))
}

fn load_shape(path: &Path) -> Result<Shape, Failure> {
    let text = read(path)?;
    let is_off = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("off"))
        || text.trim_start().starts_with("OFF");
    let shape = if is_off { load_off(&text) } else { load_grid(&text) };
    shape.map_err(|e| input_error(path, e))
}

fn shape_id(path: &Path) -> String {
    path.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned())
}

fn fmt_value(x: f64) -> String {
    if x.is_infinite() {
        "inf".into()
    } else {
        format!("{x}")
    }
}

fn sample(shape: &Shape, m: usize, count: u64, seed: u64, radius: Option<f64>) -> Result<Vec<Flat>, Failure> {
    let r = radius.unwrap_or_else(|| shape.bounding_radius()).max(1e-9);
    sample_flats(m, shape.ambient_dim(), count as usize, r, seed).map_err(|e| Failure::new(2, e.to_string()))
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    input: &Path,
    m: usize,
    num_flats: u64,
    seed: u64,
    epsilon: Option<f64>,
    max_degree: Option<usize>,
    radius: Option<f64>,
    out: &Path,
) -> CmdResult {
    let start = Instant::now();
    let shape = load_shape(input)?;
    let flats = sample(&shape, m, num_flats, seed, radius)?;
    let mut result = dpht_scan(&shape, m, &flats, max_degree, epsilon).map_err(|e| Failure::new(2, e.to_string()))?;
    result.shape_id = shape_id(input);
    write(out, &dpht_to_string(&result))?;
    println!(
        "{} flats, {} diagram points, {:.3}s",
        result.records.len(),
        result.total_points(),
        start.elapsed().as_secs_f64()
    );
    Ok(())
}

fn load_scan(path: &Path) -> Result<DphtResult, Failure> {
    let text = read(path)?;
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| input_error(path, e))?;
    dpht_from_json(&v).map_err(|e| input_error(path, e))
}

fn cmd_compare(a: &Path, b: &Path, metric: Metric, p: f64) -> CmdResult {
    let (ra, rb) = (load_scan(a)?, load_scan(b)?);
    let same_flats = ra.m == rb.m && ra.records.len() == rb.records.len() && ra.flats().eq(rb.flats());
    if !same_flats {
        return Err(Failure::new(3, "the two scans use different flat lists"));
    }
    let degrees = ra.records.iter().chain(&rb.records).map(|r| r.diagrams.len()).min().unwrap_or(0);
    for k in 0..degrees {
        let mut worst = (0.0f64, 0usize);
        for (i, (x, y)) in ra.records.iter().zip(&rb.records).enumerate() {
            let d = match metric {
                Metric::Bottleneck => bottleneck(&x.diagrams[k], &y.diagrams[k]),
                Metric::Wasserstein => wasserstein(&x.diagrams[k], &y.diagrams[k], p),
            }
            .map_err(|e| Failure::new(2, e.to_string()))?
            .value;
            if d > worst.0 {
                worst = (d, i);
            }
        }
        println!("degree {k}: {} (flat {})", fmt_value(worst.0), worst.1);
    }
    Ok(())
}

fn cmd_euler(input: &Path, m: usize, num_flats: u64, seed: u64, epsilon: Option<f64>, out: Option<&Path>) -> CmdResult {
    let shape = load_shape(input)?;
    let flats = sample(&shape, m, num_flats, seed, None)?;
    let result = dpht_scan(&shape, m, &flats, Some(0), epsilon).map_err(|e| Failure::new(2, e.to_string()))?;
    let rows: Vec<serde_json::Value> = result
        .records
        .iter()
        .map(|r| {
            let curve: Vec<serde_json::Value> = r
                .euler_curve
                .as_ref()
                .map(|c| c.breakpoints().iter().map(|&(x, chi)| serde_json::json!([x, chi])).collect())
                .unwrap_or_default();
            serde_json::json!({
                "basis": r.flat.basis(),
                "displacement": r.flat.displacement(),
                "euler_curve": curve,
                "slice_chi": r.slice_chi,
            })
        })
        .collect();
    let text = serde_json::to_string_pretty(&serde_json::json!({
        "shape_id": shape_id(input),
        "m": m,
        "flats": rows,
    }))
    .expect("JSON values serialise");
    match out {
        Some(path) => write(path, &text),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn cmd_probe(probe: &Probe) -> CmdResult {
    match probe {
        Probe::Injectivity { grid_size, pairs, seed } => {
            let r = injectivity_probe(*grid_size, *pairs, *seed).map_err(|e| Failure::new(2, e.to_string()))?;
            println!(
                "grid {0}×{0}, {1} lines: {2} of {3} pairs distinguished (fraction {4})",
                r.grid_size,
                r.line_count,
                r.distinguished,
                r.pairs,
                r.fraction()
            );
        }
        Probe::Continuity { input, offset, steps } => {
            let shape = match input {
                Some(path) => load_shape(path)?,
                None => fixtures::annulus().to_shape(),
            };
            if shape.ambient_dim() != 2 {
                return Err(Failure::new(2, "the continuity probe takes a 2D shape"));
            }
            let p = Flat::line(&[1.0, 0.0], &[0.0, *offset]).map_err(|e| Failure::new(2, e.to_string()))?;
            let run = |name: &str, schedule: Vec<Flat>| -> CmdResult {
                let r = continuity_probe(&shape, &p, &schedule, 0.05).map_err(|e| Failure::new(2, e.to_string()))?;
                println!("{name}");
                println!("  k  affine-dist  sup-gap  bottleneck");
                for (k, s) in r.steps.iter().enumerate() {
                    println!("{:>3}  {:.6}  {:.6}  {:.6}", k + 1, s.affine_distance, s.sup_gap, s.bottleneck);
                }
                println!("  stability violations: {}", r.stability_violations);
                Ok(())
            };
            let fail = |e: flatscan::Error| Failure::new(2, e.to_string());
            run("rotation", rotation_schedule(&p, &[0.0, *offset], *steps).map_err(fail)?)?;
            run("translation", translation_schedule(&p, &[0.0, 1.0], *steps).map_err(fail)?)?;
        }
    }
    Ok(())
}

fn cmd_plot(input: &Path, out: &Path) -> CmdResult {
    let text = read(input)?;
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| input_error(input, e))?;
    let svg = if v.get("flats").is_some() {
        plot::scan_svg(&dpht_from_json(&v).map_err(|e| input_error(input, e))?)
    } else {
        plot::diagram_svg(&diagram_from_json(&v).map_err(|e| input_error(input, e))?)
    };
    write(out, &svg)
}

fn configure_threads() {
    let Ok(value) = std::env::var("FLATSCAN_THREADS") else {
        return;
    };
    match value.parse::<usize>() {
        Ok(n) if n > 0 => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                log::warn!("could not size the thread pool: {e}");
            }
        }
        _ => log::warn!("ignoring FLATSCAN_THREADS={value}"),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    configure_threads();
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Scan {
            input,
            m,
            num_flats,
            seed,
            epsilon,
            max_degree,
            radius,
            out,
        } => cmd_scan(input, *m, *num_flats, *seed, *epsilon, *max_degree, *radius, out),
        Command::Compare { a, b, metric, p } => cmd_compare(a, b, *metric, *p),
        Command::Euler {
            input,
            m,
            num_flats,
            seed,
            epsilon,
            out,
        } => cmd_euler(input, *m, *num_flats, *seed, *epsilon, out.as_deref()),
        Command::Probe { probe } => cmd_probe(probe),
        Command::Demo { name } => {
            let mut report = String::new();
            let ok = demo::run(*name, &mut report);
            print!("{report}");
            if ok {
                Ok(())
            } else {
                Err(Failure::new(1, "demo failed"))
            }
        }
        Command::Plot { input, out } => cmd_plot(input, out),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("flatscan: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
