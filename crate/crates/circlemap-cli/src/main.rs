//! Command-line front end: parse map specs, run lifts, winding numbers,
//! distances, approximation and constraint experiments, and emit
//! machine-readable reports (JSON, or CSV tables for ladders).
//!
//! Exit codes: 0 on success, 2 on validation/schema errors, 1 on I/O
//! failures. Identical inputs produce byte-identical reports.

mod mapspec;
mod report;

use std::f64::consts::TAU;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use circlemap::{
    approximate_in_class, d0, d1, k_point_correct, lift, winding_number, AlgebraBackend,
    ApproxMethod, CircleClassSpec, CircleMap, CirclePoint, ConstraintSpec, LiftedMap,
    WINDING_RESIDUAL_TOL,
};
use clap::{Parser, Subcommand, ValueEnum};
use report::{fmt_f64, CsvReport, JsonReport};

/// Tolerance on the base-value residual reported by `approx`.
const BASE_TOL: f64 = 1e-10;

#[derive(Debug)]
pub enum CliError {
    Schema { path: String, message: String },
    Io(String),
    Flag(String),
    Lib(circlemap::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Schema { path, message } => write!(f, "schema error at {path}: {message}"),
            CliError::Io(message) => write!(f, "{message}"),
            CliError::Flag(message) => write!(f, "{message}"),
            CliError::Lib(err) => write!(f, "{err}"),
        }
    }
}

impl From<circlemap::Error> for CliError {
    fn from(err: circlemap::Error) -> Self {
        CliError::Lib(err)
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Piecewise-linear interpolation; size is the knot count.
    Pl,
    /// Endpoint-corrected Bernstein polynomial; size is the degree.
    Poly,
}

#[derive(Parser)]
#[command(
    name = "circlemap",
    version,
    about = "Circle-map lifts, winding numbers, a sup metric, and constructive approximation"
)]
struct Cli {
    /// Grid interval count used for sampling, lifting, and metrics.
    #[arg(long, global = true, env = "CIRCLEMAP_GRID_N", default_value_t = 1024)]
    grid_n: usize,

    /// Report format (default: json; the convergence table defaults to csv).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Seed recorded in reports; reserved for randomized demos.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the normalized lift of a map on the grid.
    Lift {
        /// Map-spec JSON file.
        #[arg(long)]
        input: PathBuf,
        /// Write the lift grid as CSV rows "t,value".
        #[arg(long)]
        emit_grid: Option<PathBuf>,
    },
    /// Compute the winding number of a map.
    Winding {
        #[arg(long)]
        input: PathBuf,
    },
    /// Distance between two maps: 2π times the sup distance of their lifts.
    Dist {
        /// Map-spec JSON file for the first map.
        #[arg(long)]
        f: PathBuf,
        /// Map-spec JSON file for the second map.
        #[arg(long)]
        g: PathBuf,
    },
    /// Class-preserving approximation (fixed base value and winding).
    Approx {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        /// Knot count (pl) or polynomial degree (poly).
        #[arg(long)]
        size: usize,
        /// Base value "x,y" on the circle; derived from the map if omitted.
        #[arg(long, requires = "class_m")]
        class_q: Option<String>,
        /// Winding number of the class; derived from the map if omitted.
        #[arg(long, requires = "class_q")]
        class_m: Option<i64>,
        /// Write the approximant as CSV rows "t,x,y" (loadable as a sampled map).
        #[arg(long)]
        emit_grid: Option<PathBuf>,
    },
    /// Sup-error and distance ladder across approximation sizes.
    Convergence {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        /// Comma-separated size ladder; method-specific default if omitted.
        #[arg(long)]
        sizes: Option<String>,
    },
    /// Constrained polynomial approximation of the lift: meets point
    /// constraints exactly while converging in sup norm.
    Swdemo {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated constraint points in [0, 1].
        #[arg(long)]
        points: String,
        /// Comma-separated target values, one per point.
        #[arg(long)]
        targets: String,
        /// Polynomial degree for the detailed residual report.
        #[arg(long)]
        size: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => print!("{out}"),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    let n = cli.grid_n;
    if n < 8 {
        return Err(CliError::Flag(format!(
            "--grid-n must be at least 8, got {n}"
        )));
    }
    let format = cli.format.unwrap_or(match cli.command {
        Command::Convergence { .. } => Format::Csv,
        _ => Format::Json,
    });
    match cli.command {
        Command::Lift { input, emit_grid } => {
            let map = mapspec::load_map_spec(&input)?;
            let lifted = lift(&map, n)?;
            let gap = lifted.endpoint_gap();
            let gap_integer = lifted.gap_integer()?;
            let residual = (gap - gap.round()).abs();
            if let Some(path) = emit_grid {
                write_lift_csv(&path, &lifted)?;
            }
            Ok(match format {
                Format::Json => {
                    let mut r = JsonReport::new("lift");
                    r.push_int("grid_n", n as i64);
                    r.push_int("seed", cli.seed as i64);
                    r.push_f64("start", lifted.start());
                    r.push_f64("endpoint_gap", gap);
                    r.push_int("gap_integer", gap_integer);
                    r.push_f64("gap_residual", residual);
                    r.push_f64("winding_residual_tolerance", WINDING_RESIDUAL_TOL);
                    r.push_f64("continuity_gap_rev", circlemap::circle::CONTINUITY_GAP);
                    r.finish()
                }
                Format::Csv => {
                    let mut t = CsvReport::new("grid_n,start,gap_integer,gap_residual");
                    t.push_row(&[
                        n.to_string(),
                        fmt_f64(lifted.start()),
                        gap_integer.to_string(),
                        fmt_f64(residual),
                    ]);
                    t.finish()
                }
            })
        }
        Command::Winding { input } => {
            let map = mapspec::load_map_spec(&input)?;
            let lifted = lift(&map, n)?;
            let winding = lifted.gap_integer()?;
            let gap = lifted.endpoint_gap();
            let residual = (gap - gap.round()).abs();
            Ok(match format {
                Format::Json => {
                    let mut r = JsonReport::new("winding");
                    r.push_int("grid_n", n as i64);
                    r.push_int("seed", cli.seed as i64);
                    r.push_int("winding", winding);
                    r.push_f64("gap_residual", residual);
                    r.push_f64("residual_tolerance", WINDING_RESIDUAL_TOL);
                    r.finish()
                }
                Format::Csv => {
                    let mut t = CsvReport::new("grid_n,winding,gap_residual");
                    t.push_row(&[n.to_string(), winding.to_string(), fmt_f64(residual)]);
                    t.finish()
                }
            })
        }
        Command::Dist { f, g } => {
            let map_f = mapspec::load_map_spec(&f)?;
            let map_g = mapspec::load_map_spec(&g)?;
            let lift_f = lift(&map_f, n)?;
            let lift_g = lift(&map_g, n)?;
            let distance = d0(&map_f, &map_g, n)?.value();
            Ok(match format {
                Format::Json => {
                    let mut r = JsonReport::new("dist");
                    r.push_f64("d0", distance);
                    r.push_int("N", n as i64);
                    r.push_int("lift_gap_f", lift_f.gap_integer()?);
                    r.push_int("lift_gap_g", lift_g.gap_integer()?);
                    r.push_f64("base_phase_f", lift_f.start());
                    r.push_f64("base_phase_g", lift_g.start());
                    r.push_int("seed", cli.seed as i64);
                    r.finish()
                }
                Format::Csv => {
                    let mut t =
                        CsvReport::new("N,d0,lift_gap_f,lift_gap_g,base_phase_f,base_phase_g");
                    t.push_row(&[
                        n.to_string(),
                        fmt_f64(distance),
                        lift_f.gap_integer()?.to_string(),
                        lift_g.gap_integer()?.to_string(),
                        fmt_f64(lift_f.start()),
                        fmt_f64(lift_g.start()),
                    ]);
                    t.finish()
                }
            })
        }
        Command::Approx {
            input,
            method,
            size,
            class_q,
            class_m,
            emit_grid,
        } => {
            let map = mapspec::load_map_spec(&input)?;
            let spec = class_spec(&map, class_q.as_deref(), class_m, n)?;
            let approx_method = to_method(method, size);
            let out = approximate_in_class(&map, &spec, approx_method, n)?;
            let winding_out = winding_number(&out, n)?.0;
            let base_residual = out.eval(0.0)?.chord_to(&spec.q());
            let sup_lift_error = d1(&lift(&map, n)?, &lift(&out, n)?)?.value();
            let d0_error = TAU * sup_lift_error;
            if let Some(path) = emit_grid {
                write_map_csv(&path, &out, n)?;
            }
            Ok(match format {
                Format::Json => {
                    let mut r = JsonReport::new("approx");
                    r.push_int("grid_n", n as i64);
                    r.push_int("seed", cli.seed as i64);
                    r.push_str("method", method_name(method));
                    r.push_int("size", size as i64);
                    r.push_int("class_m", spec.m());
                    r.push_f64("class_q_x", spec.q().x());
                    r.push_f64("class_q_y", spec.q().y());
                    r.push_f64("q_tilde", spec.q_tilde().0);
                    r.push_int("winding_out", winding_out);
                    r.push_f64("base_residual", base_residual);
                    r.push_f64("base_tolerance", BASE_TOL);
                    r.push_f64("sup_lift_error", sup_lift_error);
                    r.push_f64("d0_error", d0_error);
                    r.finish()
                }
                Format::Csv => {
                    let mut t = CsvReport::new(
                        "grid_n,method,size,class_m,winding_out,base_residual,sup_lift_error,d0_error",
                    );
                    t.push_row(&[
                        n.to_string(),
                        method_name(method).to_string(),
                        size.to_string(),
                        spec.m().to_string(),
                        winding_out.to_string(),
                        fmt_f64(base_residual),
                        fmt_f64(sup_lift_error),
                        fmt_f64(d0_error),
                    ]);
                    t.finish()
                }
            })
        }
        Command::Convergence {
            input,
            method,
            sizes,
        } => {
            let map = mapspec::load_map_spec(&input)?;
            let spec = class_spec(&map, None, None, n)?;
            let sizes = match sizes {
                Some(text) => parse_usize_list(&text)?,
                None => match method {
                    Method::Pl => vec![9, 17, 33, 65, 129],
                    Method::Poly => vec![8, 16, 32, 64, 128, 256],
                },
            };
            let lift_f = lift(&map, n)?;
            let mut rows = Vec::new();
            for &size in &sizes {
                let out = approximate_in_class(&map, &spec, to_method(method, size), n)?;
                let sup = d1(&lift_f, &lift(&out, n)?)?.value();
                rows.push((size, sup, TAU * sup));
            }
            Ok(match format {
                Format::Csv => {
                    let mut t = CsvReport::new("size,sup_error,d0_error");
                    for (size, sup, d0e) in rows {
                        t.push_row(&[size.to_string(), fmt_f64(sup), fmt_f64(d0e)]);
                    }
                    t.finish()
                }
                Format::Json => {
                    let mut r = JsonReport::new("convergence");
                    r.push_int("grid_n", n as i64);
                    r.push_int("seed", cli.seed as i64);
                    r.push_str("method", method_name(method));
                    r.push_raw(
                        "sizes",
                        format!(
                            "[{}]",
                            rows.iter()
                                .map(|(s, _, _)| s.to_string())
                                .collect::<Vec<_>>()
                                .join(",")
                        ),
                    );
                    r.push_f64_array(
                        "sup_errors",
                        &rows.iter().map(|(_, e, _)| *e).collect::<Vec<_>>(),
                    );
                    r.push_f64_array(
                        "d0_errors",
                        &rows.iter().map(|(_, _, e)| *e).collect::<Vec<_>>(),
                    );
                    r.finish()
                }
            })
        }
        Command::Swdemo {
            input,
            points,
            targets,
            size,
        } => {
            let map = mapspec::load_map_spec(&input)?;
            let points = parse_f64_list(&points)?;
            let targets = parse_f64_list(&targets)?;
            let constraints = ConstraintSpec::new(points.clone(), targets.clone())?;
            let lifted = lift(&map, n)?;
            let backend = AlgebraBackend::PolynomialsOnI;

            let mut ladder_sizes = vec![16usize, 32, 64, 128, 256];
            if !ladder_sizes.contains(&size) {
                ladder_sizes.push(size);
                ladder_sizes.sort_unstable();
            }
            let mut ladder_errors = Vec::new();
            let mut residuals = Vec::new();
            for &s in &ladder_sizes {
                let p = backend.approximate(lifted.grid(), s)?;
                let corrected = k_point_correct(&p, &constraints)?;
                let sup = lifted
                    .values()
                    .iter()
                    .enumerate()
                    .fold(0.0f64, |m, (j, v)| {
                        m.max((corrected.eval(j as f64 / n as f64) - v).abs())
                    });
                ladder_errors.push(sup);
                if s == size {
                    residuals = points
                        .iter()
                        .zip(&targets)
                        .map(|(x, v)| (corrected.eval(*x) - v).abs())
                        .collect();
                }
            }
            let max_residual = residuals.iter().fold(0.0f64, |m, r| m.max(*r));
            Ok(match format {
                Format::Json => {
                    let mut r = JsonReport::new("swdemo");
                    r.push_int("grid_n", n as i64);
                    r.push_int("seed", cli.seed as i64);
                    r.push_int("size", size as i64);
                    r.push_f64_array("points", &points);
                    r.push_f64_array("targets", &targets);
                    r.push_f64_array("residuals", &residuals);
                    r.push_f64("max_residual", max_residual);
                    r.push_f64("residual_tolerance", 1e-10);
                    r.push_raw(
                        "ladder_sizes",
                        format!(
                            "[{}]",
                            ladder_sizes
                                .iter()
                                .map(|s| s.to_string())
                                .collect::<Vec<_>>()
                                .join(",")
                        ),
                    );
                    r.push_f64_array("ladder_sup_errors", &ladder_errors);
                    r.finish()
                }
                Format::Csv => {
                    let mut t = CsvReport::new("size,sup_error");
                    for (s, e) in ladder_sizes.iter().zip(&ladder_errors) {
                        t.push_row(&[s.to_string(), fmt_f64(*e)]);
                    }
                    t.finish()
                }
            })
        }
    }
}

fn method_name(method: Method) -> &'static str {
    match method {
        Method::Pl => "pl",
        Method::Poly => "poly",
    }
}

fn to_method(method: Method, size: usize) -> ApproxMethod {
    match method {
        Method::Pl => ApproxMethod::Pl { knots: size },
        Method::Poly => ApproxMethod::Poly { degree: size },
    }
}

/// Class spec from explicit flags, or derived from the map itself.
fn class_spec(
    map: &CircleMap,
    class_q: Option<&str>,
    class_m: Option<i64>,
    n: usize,
) -> Result<CircleClassSpec, CliError> {
    let q = match class_q {
        Some(text) => {
            let coords = parse_f64_list(text)?;
            if coords.len() != 2 {
                return Err(CliError::Flag(format!(
                    "--class-q expects \"x,y\", got {text:?}"
                )));
            }
            CirclePoint::new(coords[0], coords[1])?
        }
        None => map.eval(0.0)?,
    };
    let m = match class_m {
        Some(m) => m,
        None => winding_number(map, n)?.0,
    };
    Ok(CircleClassSpec::new(q, m))
}

fn parse_f64_list(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Flag(format!("invalid number {s:?}: {e}")))
        })
        .collect()
}

fn parse_usize_list(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|e| CliError::Flag(format!("invalid size {s:?}: {e}")))
        })
        .collect()
}

fn write_lift_csv(path: &Path, lifted: &LiftedMap) -> Result<(), CliError> {
    let n = lifted.n_intervals();
    let mut out = String::from("t,value\n");
    for (j, v) in lifted.values().iter().enumerate() {
        out.push_str(&fmt_f64(j as f64 / n as f64));
        out.push(',');
        out.push_str(&fmt_f64(*v));
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn write_map_csv(path: &Path, map: &CircleMap, n: usize) -> Result<(), CliError> {
    let mut out = String::from("t,x,y\n");
    for j in 0..=n {
        let t = j as f64 / n as f64;
        let p = map.eval(t)?;
        out.push_str(&format!(
            "{},{},{}\n",
            fmt_f64(t),
            fmt_f64(p.x()),
            fmt_f64(p.y())
        ));
    }
    fs::write(path, out).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}
