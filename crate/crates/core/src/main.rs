use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use molien::error::Error;
use molien::group::DEFAULT_CLOSURE_CAP;
use molien::{molien_fubini, quad_molien, reynolds_dim, verify_semidirect, GroupSpec};

#[derive(Parser)]
#[command(name = "molien", version, about = "Molien series of compact matrix groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, ValueEnum)]
enum Mode {
    /// Exact circle integration; rational when the spec has no numeric
    /// hyperbolic entries.
    Exact,
    /// Trapezoid quadrature on the circle factor.
    Quad,
}

#[derive(Copy, Clone, PartialEq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the Molien series of a group description.
    Compute {
        spec: PathBuf,
        #[arg(long, default_value_t = 16)]
        max_degree: usize,
        /// Override the hyperbolic parameter from the file.
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        #[arg(long, default_value_t = 64)]
        quad_nodes: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Maximum allowed distance of each coefficient from an integer.
        #[arg(long, default_value_t = 1e-6)]
        round_tol: f64,
    },
    /// Cross-check the series against the quadrature and invariant-count
    /// oracles, degree by degree.
    Compare {
        spec: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long, default_value_t = 64)]
        quad_nodes: usize,
        /// Per-coefficient agreement tolerance for the quadrature leg.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Check the semidirect decomposition of a finite group description.
    VerifyDecomposition {
        spec: PathBuf,
        /// Closure enumeration limit.
        #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Test polynomials from a term-list file for invariance under the
    /// group description.
    CheckInvariants {
        spec: PathBuf,
        polys: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Exit code classes: 2 for unreadable or unparsable input, 3 for group
/// descriptions that violate structural invariants, 4 for coefficients that
/// refuse to round to integers; mismatches and failed checks use 1.
fn exit_class(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::MissingTheta => 2,
        Error::Rounding { .. } => 4,
        _ => 3,
    }
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_class(&e))
}

fn read_file(path: &Path) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        ExitCode::from(2)
    })
}

fn load_group(path: &Path, theta: Option<f64>) -> Result<GroupSpec, ExitCode> {
    let text = read_file(path)?;
    let file = molien::parse_spec(&text).map_err(fail)?;
    file.to_group_spec(theta).map_err(fail)
}

fn json_theta(spec: &GroupSpec) -> serde_json::Value {
    match spec.theta {
        Some(t) => json!(t),
        None => serde_json::Value::Null,
    }
}

fn run_compute(
    path: &Path,
    max_degree: usize,
    theta: Option<f64>,
    mode: Mode,
    quad_nodes: usize,
    format: Format,
    round_tol: f64,
) -> Result<ExitCode, ExitCode> {
    let spec = load_group(path, theta)?;
    let series = match mode {
        Mode::Exact => molien_fubini(&spec, max_degree),
        Mode::Quad => quad_molien(&spec, max_degree, quad_nodes),
    }
    .map_err(fail)?;
    let rounded_series = series.round_to_exact(round_tol).map_err(fail)?;
    let rounded = rounded_series.as_integers().expect("rounded series is integral");

    match format {
        Format::Json => {
            let payload = json!({
                "mode": match mode { Mode::Exact => "exact", Mode::Quad => "quad" },
                "theta": json_theta(&spec),
                "degree": max_degree,
                "coefficients": series.to_f64_vec(),
                "rounded": rounded,
            });
            println!("{payload}");
        }
        Format::Text => {
            for (d, c) in series.coeffs().iter().enumerate() {
                println!("{d:4}  {c}");
            }
            let items: Vec<String> = rounded.iter().map(|c| c.to_string()).collect();
            println!("rounded: [{}]", items.join(", "));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_compare(
    path: &Path,
    max_degree: usize,
    theta: Option<f64>,
    quad_nodes: usize,
    tol: f64,
) -> Result<ExitCode, ExitCode> {
    let spec = load_group(path, theta)?;
    let exact = molien_fubini(&spec, max_degree).map_err(fail)?;
    let quad = quad_molien(&spec, max_degree, quad_nodes).map_err(fail)?;
    let reynolds: Option<Vec<usize>> = if spec.circle_blocks.is_empty() {
        let group = spec.full_finite_group(DEFAULT_CLOSURE_CAP).map_err(fail)?;
        let dims = (0..=max_degree)
            .map(|d| reynolds_dim(&group, d as u32))
            .collect::<Result<_, _>>()
            .map_err(fail)?;
        Some(dims)
    } else {
        None
    };

    let mut mismatches = 0usize;
    println!("{:>4}  {:>22}  {:>22}  {:>10}  status", "d", "series", "quadrature", "invariants");
    for d in 0..=max_degree {
        let e = exact.coeff(d).to_f64();
        let q = quad.coeff(d).to_f64();
        let mut ok = (e - q).abs() <= tol;
        let inv_col = match &reynolds {
            Some(dims) => {
                ok &= (dims[d] as f64 - e).abs() <= tol;
                dims[d].to_string()
            }
            None => "-".to_string(),
        };
        if !ok {
            mismatches += 1;
        }
        println!(
            "{d:4}  {e:22.15e}  {q:22.15e}  {inv_col:>10}  {}",
            if ok { "ok" } else { "MISMATCH" }
        );
    }
    if mismatches > 0 {
        eprintln!("error: {mismatches} coefficient(s) disagree beyond {tol:e}");
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(path: &Path, cap: usize, format: Format) -> Result<ExitCode, ExitCode> {
    let text = read_file(path)?;
    let file = molien::parse_spec(&text).map_err(fail)?;
    let spec = file.to_group_spec(None).map_err(fail)?;
    if !spec.circle_blocks.is_empty() {
        eprintln!("error: decomposition checks need a fully finite description");
        return Ok(ExitCode::from(3));
    }
    let report = verify_semidirect(&spec.finite_factor, &spec.involutions, cap).map_err(fail)?;
    match format {
        Format::Json => println!("{}", serde_json::to_string(&report).expect("report serializes")),
        Format::Text => {
            println!("sigma_normal: {}", report.sigma_normal);
            println!("delta_normal: {}", report.delta_normal);
            println!("product_covers: {}", report.product_covers);
            println!("intersections_trivial: {}", report.intersections_trivial);
            println!("overall: {}", report.overall);
        }
    }
    if report.overall {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("error: decomposition fails: {}", report.failing().join(", "));
        Ok(ExitCode::FAILURE)
    }
}

fn run_check_invariants(
    spec_path: &Path,
    poly_path: &Path,
    tol: f64,
    samples: usize,
    theta: Option<f64>,
    format: Format,
) -> Result<ExitCode, ExitCode> {
    let spec = load_group(spec_path, theta)?;
    let text = read_file(poly_path)?;
    let polys = molien::parse_poly_file(&text).map_err(fail)?;

    let mut results = Vec::new();
    let mut failures = 0usize;
    for entry in &polys {
        let residual = molien::check_invariant_spec(&entry.poly, &spec, samples).map_err(fail)?;
        let pass = residual <= tol;
        if !pass {
            failures += 1;
        }
        results.push((entry.name.clone(), residual, pass));
    }
    match format {
        Format::Json => {
            let payload = json!({
                "tol": tol,
                "results": results.iter().map(|(name, residual, pass)| json!({
                    "name": name, "residual": residual, "pass": pass,
                })).collect::<Vec<_>>(),
                "overall": failures == 0,
            });
            println!("{payload}");
        }
        Format::Text => {
            for (name, residual, pass) in &results {
                println!(
                    "{name}: max residual {residual:.3e}  {}",
                    if *pass { "ok" } else { "FAIL" }
                );
            }
        }
    }
    if failures > 0 {
        eprintln!("error: {failures} polynomial(s) exceed the residual tolerance {tol:e}");
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Compute { spec, max_degree, theta, mode, quad_nodes, format, round_tol } => {
            run_compute(&spec, max_degree, theta, mode, quad_nodes, format, round_tol)
        }
        Command::Compare { spec, max_degree, theta, quad_nodes, tol } => {
            run_compare(&spec, max_degree, theta, quad_nodes, tol)
        }
        Command::VerifyDecomposition { spec, cap, format } => run_verify(&spec, cap, format),
        Command::CheckInvariants { spec, polys, tol, samples, theta, format } => {
            run_check_invariants(&spec, &polys, tol, samples, theta, format)
        }
    };
    match outcome {
        Ok(code) => code,
        Err(code) => code,
    }
}
