//! Command-line front end for spectral interpolation, quadrature and node
//! generation on the unit disk.
//!
//! Exit codes: 0 on success, 2 for usage or validation errors, 1 for
//! runtime errors (I/O and similar).

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rhodonea::analysis::{chebyshev_radial_grid, convergence_study, lebesgue_estimate, theta_grid};
use rhodonea::interpolation::{write_grid_csv, Interpolant};
use rhodonea::nodes::write_nodes_csv;
use rhodonea::quadrature::{
    clenshaw_curtis_from_coeffs, clenshaw_curtis_from_real_coeffs, reference_integral,
    QuadratureResult,
};
use rhodonea::transform::{forward_coeffs, forward_coeffs_real};
use rhodonea::variety::chebyshev_t;
use rhodonea::{DataGrid, FrequencyPair, NodalIndexSet, SpectralIndexSet, SpectralKind};

#[derive(Parser)]
#[command(
    name = "rhodonea",
    about = "Spectral interpolation, quadrature and node generation on the unit disk",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the interpolation node table
    Nodes(NodesArgs),
    /// Compute interpolation coefficients and optionally evaluate on a grid
    Interpolate(InterpolateArgs),
    /// Integrate node data or a built-in function over the disk
    Quadrature(QuadratureArgs),
    /// Estimate the Lebesgue constant of the interpolation scheme
    Lebesgue(LebesgueArgs),
    /// Run the built-in convergence study (three node sets, both spectral sets)
    ReproduceFig7(Fig7Args),
}

#[derive(Args)]
struct FreqArgs {
    /// Angular frequency parameter (>= 1)
    #[arg(long)]
    m1: usize,
    /// Radial frequency parameter (>= 1)
    #[arg(long)]
    m2: usize,
}

impl FreqArgs {
    fn freq(&self) -> Result<FrequencyPair, CliError> {
        FrequencyPair::new(self.m1, self.m2).map_err(|e| CliError::Validation(e.to_string()))
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SpectralArg {
    Rect,
    Triangle,
}

impl SpectralArg {
    fn set(self, freq: FrequencyPair) -> SpectralIndexSet {
        match self {
            SpectralArg::Rect => SpectralIndexSet::rectangular(freq),
            SpectralArg::Triangle => SpectralIndexSet::triangular(freq),
        }
    }

    fn kind(self) -> SpectralKind {
        match self {
            SpectralArg::Rect => SpectralKind::Rectangular,
            SpectralArg::Triangle => SpectralKind::Triangular,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    Real,
    Complex,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct NodesArgs {
    #[command(flatten)]
    freq: FreqArgs,
    /// Rotation of the generating curve, in units of pi (metadata only:
    /// the node set itself does not depend on it)
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Output path (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InterpolateArgs {
    #[command(flatten)]
    freq: FreqArgs,
    /// Spectral index set
    #[arg(long, value_enum, default_value_t = SpectralArg::Rect)]
    spectral: SpectralArg,
    /// Basis for the expansion coefficients
    #[arg(long, value_enum, default_value_t = BasisArg::Real)]
    basis: BasisArg,
    /// Built-in function: const1, fig7 or chebfourier:G1,G2
    #[arg(long, value_name = "NAME")]
    function: Option<String>,
    /// Sample file: one value per line (re or re,im) in canonical node order
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
    /// Coefficient output path (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also evaluate the interpolant on a polar grid and write it as CSV
    #[arg(long, value_name = "PATH")]
    eval_grid: Option<PathBuf>,
    /// Radial points of the evaluation grid
    #[arg(long, default_value_t = 100)]
    grid_r: usize,
    /// Angular points of the evaluation grid
    #[arg(long, default_value_t = 100)]
    grid_theta: usize,
}

#[derive(Args)]
struct QuadratureArgs {
    #[command(flatten)]
    freq: FreqArgs,
    /// Spectral index set (the quadrature value is the same for both)
    #[arg(long, value_enum, default_value_t = SpectralArg::Rect)]
    spectral: SpectralArg,
    /// Built-in function: const1, fig7 or chebfourier:G1,G2
    #[arg(long, value_name = "NAME")]
    function: Option<String>,
    /// Sample file: one value per line (re or re,im) in canonical node order
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
    /// Output path (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LebesgueArgs {
    #[command(flatten)]
    freq: FreqArgs,
    /// Spectral index set
    #[arg(long, value_enum, default_value_t = SpectralArg::Rect)]
    spectral: SpectralArg,
    /// Radial points of the evaluation grid
    #[arg(long, default_value_t = 30)]
    grid_r: usize,
    /// Angular points of the evaluation grid
    #[arg(long, default_value_t = 60)]
    grid_theta: usize,
    /// Output path (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Fig7Args {
    /// Radial points of the evaluation grid
    #[arg(long, default_value_t = 1000)]
    grid_r: usize,
    /// Angular points of the evaluation grid
    #[arg(long, default_value_t = 1000)]
    grid_theta: usize,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Output path (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

enum CliError {
    Validation(String),
    Runtime(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<rhodonea::Error> for CliError {
    fn from(e: rhodonea::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

/// Built-in real-valued test functions, selectable by name.
enum Builtin {
    Const1,
    Fig7,
    ChebFourier(u32, i64),
}

impl Builtin {
    fn parse(name: &str) -> Result<Self, CliError> {
        if name == "const1" {
            return Ok(Builtin::Const1);
        }
        if name == "fig7" {
            return Ok(Builtin::Fig7);
        }
        if let Some(rest) = name.strip_prefix("chebfourier:") {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() == 2 {
                if let (Ok(g1), Ok(g2)) = (parts[0].parse::<u32>(), parts[1].parse::<i64>()) {
                    return Ok(Builtin::ChebFourier(g1, g2));
                }
            }
            return Err(CliError::Validation(format!(
                "invalid chebfourier argument '{rest}': expected chebfourier:G1,G2"
            )));
        }
        Err(CliError::Validation(format!(
            "unknown function '{name}': expected const1, fig7 or chebfourier:G1,G2"
        )))
    }

    fn eval(&self, r: f64, theta: f64) -> f64 {
        match *self {
            Builtin::Const1 => 1.0,
            Builtin::Fig7 => rhodonea::analysis::test_function_polar(r, theta),
            Builtin::ChebFourier(g1, g2) => {
                chebyshev_t(g1 as usize, r) * (g2 as f64 * theta).cos()
            }
        }
    }
}

/// Node samples from a builtin function or an input file (exactly one).
fn load_samples(
    freq: FrequencyPair,
    function: &Option<String>,
    input: &Option<PathBuf>,
) -> Result<(DataGrid, Option<Builtin>), CliError> {
    match (function, input) {
        (Some(name), None) => {
            let builtin = Builtin::parse(name)?;
            let nodes = NodalIndexSet::new(freq);
            let values: Vec<f64> = (0..nodes.len())
                .map(|k| {
                    let p = nodes.coords(k);
                    builtin.eval(p.r, p.theta)
                })
                .collect();
            let data = DataGrid::from_real(nodes, &values)?;
            Ok((data, Some(builtin)))
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path)?;
            let mut values = Vec::new();
            for line in text.lines() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let mut parts = line.split(',').map(str::trim);
                let re = parts.next().and_then(|p| p.parse::<f64>().ok());
                let Some(re) = re else {
                    // Allow one non-numeric header line.
                    if values.is_empty() {
                        continue;
                    }
                    return Err(CliError::Validation(format!("cannot parse line '{line}'")));
                };
                let im = match parts.next() {
                    Some(p) => p
                        .parse::<f64>()
                        .map_err(|_| CliError::Validation(format!("cannot parse line '{line}'")))?,
                    None => 0.0,
                };
                if parts.next().is_some() {
                    return Err(CliError::Validation(format!("cannot parse line '{line}'")));
                }
                values.push(Complex64::new(re, im));
            }
            let nodes = NodalIndexSet::new(freq);
            if values.len() != nodes.len() {
                return Err(CliError::Validation(format!(
                    "expected {} values, got {}",
                    nodes.len(),
                    values.len()
                )));
            }
            Ok((DataGrid::new(nodes, values)?, None))
        }
        (Some(_), Some(_)) => Err(CliError::Validation(
            "--function and --in are mutually exclusive".into(),
        )),
        (None, None) => Err(CliError::Validation(
            "either --function or --in is required".into(),
        )),
    }
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn cmd_nodes(args: &NodesArgs) -> Result<(), CliError> {
    let freq = args.freq.freq()?;
    let set = NodalIndexSet::new(freq);
    let distinct = 2 * freq.m1() * freq.m2() + 1;
    let content = match args.format {
        FormatArg::Csv => {
            let mut buf = Vec::new();
            write_nodes_csv(&set, &mut buf)?;
            let mut text = String::from_utf8(buf).expect("csv is utf8");
            writeln!(
                text,
                "# count={} boundary_count={} center_multiplicity={} distinct_points={distinct} alpha={}",
                set.len(),
                set.boundary_count(),
                set.center_multiplicity(),
                args.alpha
            )
            .expect("write to string");
            text
        }
        FormatArg::Json => {
            let nodes: Vec<serde_json::Value> = set
                .indices()
                .iter()
                .enumerate()
                .map(|(k, i)| {
                    let p = set.coords(k);
                    serde_json::json!({
                        "i1": i.i1, "i2": i.i2,
                        "r": p.r, "theta": p.theta, "x": p.x, "y": p.y,
                        "weight": set.weight(k),
                    })
                })
                .collect();
            let value = serde_json::json!({
                "m1": freq.m1(),
                "m2": freq.m2(),
                "alpha": args.alpha,
                "count": set.len(),
                "boundary_count": set.boundary_count(),
                "center_multiplicity": set.center_multiplicity(),
                "distinct_points": distinct,
                "nodes": nodes,
            });
            format!("{:#}\n", value)
        }
    };
    write_output(&args.out, &content)
}

fn cmd_interpolate(args: &InterpolateArgs) -> Result<(), CliError> {
    let freq = args.freq.freq()?;
    if args.eval_grid.is_some() && (args.grid_r < 2 || args.grid_theta < 2) {
        return Err(CliError::Validation("grid sizes must be >= 2".into()));
    }
    let spectral = args.spectral.set(freq);
    let (data, _) = load_samples(freq, &args.function, &args.input)?;
    let (json, interp) = match args.basis {
        BasisArg::Complex => {
            let c = forward_coeffs(&data, &spectral)?;
            (c.to_json(), Interpolant::Complex(c))
        }
        BasisArg::Real => {
            let c = forward_coeffs_real(&data, &spectral)?;
            (c.to_json(), Interpolant::Real(c))
        }
    };
    let residual = interp.node_residual(&data)?;
    write_output(&args.out, &format!("{:#}\n", json))?;
    eprintln!("max node residual: {residual:e}");
    if let Some(path) = &args.eval_grid {
        let rs = chebyshev_radial_grid(args.grid_r);
        let ts = theta_grid(args.grid_theta);
        let values = interp.evaluate_grid(&rs, &ts)?;
        let mut buf = Vec::new();
        write_grid_csv(&rs, &ts, &values, &mut buf)?;
        fs::write(path, buf)?;
    }
    Ok(())
}

fn cmd_quadrature(args: &QuadratureArgs) -> Result<(), CliError> {
    let freq = args.freq.freq()?;
    let spectral = args.spectral.set(freq);
    let (data, builtin) = load_samples(freq, &args.function, &args.input)?;
    let result: QuadratureResult = if data.max_imag() == 0.0 {
        clenshaw_curtis_from_real_coeffs(&forward_coeffs_real(&data, &spectral)?)
    } else {
        clenshaw_curtis_from_coeffs(&forward_coeffs(&data, &spectral)?)
    };
    // `q` is the integral over the disk, matching the convention of the
    // built-in convergence study; `q_mean` = q / pi is the mean value.
    let q = result.disk_integral().re;
    let mut value = serde_json::json!({
        "m1": freq.m1(),
        "m2": freq.m2(),
        "q": q,
        "q_mean": result.value.re,
    });
    if let Some(builtin) = builtin {
        let i_ref = std::f64::consts::PI * reference_integral(|r, t| builtin.eval(r, t), 1e-13);
        value["i_ref"] = serde_json::json!(i_ref);
        value["rel_error"] = serde_json::json!((q - i_ref).abs() / i_ref.abs());
    }
    write_output(&args.out, &format!("{:#}\n", value))
}

fn cmd_lebesgue(args: &LebesgueArgs) -> Result<(), CliError> {
    let freq = args.freq.freq()?;
    if args.grid_r < 2 || args.grid_theta < 2 {
        return Err(CliError::Validation("grid sizes must be >= 2".into()));
    }
    let spectral = args.spectral.set(freq);
    let estimate = lebesgue_estimate(freq, &spectral, (args.grid_r, args.grid_theta));
    let value = serde_json::json!({
        "m1": freq.m1(),
        "m2": freq.m2(),
        "spectral": spectral.kind(),
        "grid_r": args.grid_r,
        "grid_theta": args.grid_theta,
        "estimate": estimate,
    });
    write_output(&args.out, &format!("{:#}\n", value))
}

fn cmd_reproduce_fig7(args: &Fig7Args) -> Result<(), CliError> {
    if args.grid_r < 2 || args.grid_theta < 2 {
        return Err(CliError::Validation("grid sizes must be >= 2".into()));
    }
    let ms = [
        FrequencyPair::new(10, 11)?,
        FrequencyPair::new(20, 21)?,
        FrequencyPair::new(30, 31)?,
    ];
    let grid = (args.grid_r, args.grid_theta);
    let mut reports = Vec::new();
    for arg in [SpectralArg::Rect, SpectralArg::Triangle] {
        let report = convergence_study(
            rhodonea::analysis::test_function_polar,
            &ms,
            arg.kind(),
            grid,
            false,
        )?;
        reports.push(report);
    }
    let content = match args.format {
        FormatArg::Csv => {
            let mut text = String::from("kind,m1,m2,sup_error,Q,rel_quad_error\n");
            for report in &reports {
                let kind = match report.spectral_kind {
                    SpectralKind::Rectangular => "rect",
                    SpectralKind::Triangular => "triangle",
                    SpectralKind::Omega => "omega",
                };
                for row in &report.rows {
                    writeln!(
                        text,
                        "{kind},{},{},{},{},{}",
                        row.m1, row.m2, row.sup_error, row.q, row.rel_quad_error
                    )
                    .expect("write to string");
                }
            }
            text
        }
        FormatArg::Json => format!(
            "{:#}\n",
            serde_json::json!({
                "rect": reports[0].to_json(),
                "triangle": reports[1].to_json(),
            })
        ),
    };
    write_output(&args.out, &content)
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Nodes(args) => cmd_nodes(args),
        Command::Interpolate(args) => cmd_interpolate(args),
        Command::Quadrature(args) => cmd_quadrature(args),
        Command::Lebesgue(args) => cmd_lebesgue(args),
        Command::ReproduceFig7(args) => cmd_reproduce_fig7(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
