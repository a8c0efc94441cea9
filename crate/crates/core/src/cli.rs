//! Command-line front end.
//!
//! Subcommands: `static`, `buckle`, `mesh2d`, `mesh1d`, `element`. Exit
//! codes: 0 success, 2 unreadable or invalid input, 3 solver failure, 4 I/O
//! failure. Errors are printed to stderr as a JSON object
//! `{"error": <name>, "message": <text>, "exit_code": <n>}`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::{DVector, Dim, Matrix, RawStorage};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::FemError;
use crate::fem1d::generate_uniform_1d_mesh;
use crate::fem2d::{quad8_mesh_rectangle, tri6_mesh_rectangle};
use crate::model::{
    validate_model, BucklingSolution, FrameModel, Point3, StaticSolution, DOFS_PER_NODE,
};
use crate::msa3d::{
    elastic_critical_load, local_elastic_stiffness_3d, local_geometric_stiffness_3d,
    solve_linear_elastic_frame, transformation_matrix_3d, GeometricLoads, SolverSettings,
};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "femkit",
    version,
    about = "Frame analysis and finite-element kernel utilities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[arg(long, global = true)]
    pub condition_limit: Option<f64>,

    #[arg(long, global = true)]
    pub eig_floor: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
#[allow(clippy::large_enum_variant)]
pub enum Command {
    /// Linear static analysis of a frame model.
    Static {
        #[arg(long)]
        model: PathBuf,
    },
    /// Elastic critical load factor of a frame model's load pattern.
    Buckle {
        #[arg(long)]
        model: PathBuf,
    },
    /// Structured Tri6 or Quad8 mesh of a rectangle.
    Mesh2d(Mesh2dArgs),
    /// Uniform 1D mesh.
    Mesh1d {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        x_min: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        x_max: f64,
        #[arg(long)]
        num_elements: usize,
    },
    /// Print an element matrix as row-major JSON.
    Element(ElementArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeshKind {
    Tri6,
    Quad8,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct Mesh2dArgs {
    #[arg(long, value_enum)]
    pub kind: MeshKind,
    #[arg(long)]
    pub nx: usize,
    #[arg(long)]
    pub ny: usize,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub x_lo: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub y_lo: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub x_hi: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub y_hi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementMatrix {
    Elastic,
    Geometric,
    Transform,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct ElementArgs {
    #[arg(long, value_enum)]
    pub matrix: ElementMatrix,
    #[arg(long = "E")]
    pub e: Option<f64>,
    #[arg(long)]
    pub nu: Option<f64>,
    #[arg(long = "A")]
    pub a: Option<f64>,
    #[arg(long = "L")]
    pub l: Option<f64>,
    #[arg(long = "Iy")]
    pub iy: Option<f64>,
    #[arg(long = "Iz")]
    pub iz: Option<f64>,
    #[arg(long = "J")]
    pub j: Option<f64>,
    #[arg(long = "I-rho")]
    pub i_rho: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub fx2: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub mx2: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub my1: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub mz1: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub my2: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub mz2: f64,
    /// Node i coordinates `x,y,z` (transform only).
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
    pub xi: Option<[f64; 3]>,
    /// Node j coordinates `x,y,z` (transform only).
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
    pub xj: Option<[f64; 3]>,
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
    pub local_z: Option<[f64; 3]>,
}

fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [x, y, z] = parts.as_slice() else {
        return Err(format!("expected x,y,z but got {s:?}"));
    };
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    Ok([num(x)?, num(y)?, num(z)?])
}

/// Everything one invocation needs, independent of argument parsing.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub settings: SolverSettings,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let mut settings = SolverSettings::default();
        if let Some(v) = cli.condition_limit {
            settings.condition_limit = v;
        }
        if let Some(v) = cli.eig_floor {
            settings.eig_positivity_floor = v;
        }
        RunConfig {
            command: cli.command,
            output_path: cli.out,
            format: cli.format,
            settings,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Unreadable input, schema mismatch, invalid model or arguments.
    Input {
        name: &'static str,
        message: String,
    },
    Solver(FemError),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input { .. } => EXIT_INPUT,
            CliError::Solver(_) => EXIT_SOLVER,
            CliError::Io(_) => EXIT_IO,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CliError::Input { name, .. } => name,
            CliError::Solver(e) => e.name(),
            CliError::Io(_) => "io-error",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let message = match self {
            CliError::Input { message, .. } => message.clone(),
            CliError::Solver(e) => e.to_string(),
            CliError::Io(e) => e.to_string(),
        };
        json!({ "error": self.name(), "message": message, "exit_code": self.exit_code() })
    }
}

fn input_error(name: &'static str, message: impl Into<String>) -> CliError {
    CliError::Input {
        name,
        message: message.into(),
    }
}

/// Errors raised by library calls on user-supplied parameters (not a solve).
fn argument_error(e: FemError) -> CliError {
    input_error("invalid-argument", e.to_string())
}

/// Per-node rows of a static report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeResult {
    pub node: usize,
    pub displacement: [f64; 6],
    pub reaction: [f64; 6],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StaticReport {
    pub schema_version: u32,
    pub command: String,
    pub settings: SolverSettings,
    pub nodes: Vec<NodeResult>,
}

impl StaticReport {
    pub fn new(solution: &StaticSolution, settings: SolverSettings) -> Self {
        let n = solution.displacements.len() / DOFS_PER_NODE;
        StaticReport {
            schema_version: SCHEMA_VERSION,
            command: "static".into(),
            settings,
            nodes: (0..n)
                .map(|node| NodeResult {
                    node,
                    displacement: solution.node_displacement(node),
                    reaction: solution.node_reaction(node),
                })
                .collect(),
        }
    }

    pub fn to_solution(&self) -> StaticSolution {
        let flat = |f: fn(&NodeResult) -> &[f64; 6]| {
            DVector::from_iterator(
                DOFS_PER_NODE * self.nodes.len(),
                self.nodes.iter().flat_map(|r| f(r).iter().copied()),
            )
        };
        StaticSolution {
            displacements: flat(|r| &r.displacement),
            reactions: flat(|r| &r.reaction),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BucklingReport {
    pub schema_version: u32,
    pub command: String,
    pub settings: SolverSettings,
    pub lambda_cr: f64,
    /// Mode shape in global DOF order.
    pub mode: Vec<f64>,
}

impl BucklingReport {
    pub fn new(solution: &BucklingSolution, settings: SolverSettings) -> Self {
        BucklingReport {
            schema_version: SCHEMA_VERSION,
            command: "buckle".into(),
            settings,
            lambda_cr: solution.lambda_cr,
            mode: solution.mode.iter().copied().collect(),
        }
    }

    pub fn to_solution(&self) -> BucklingSolution {
        BucklingSolution {
            lambda_cr: self.lambda_cr,
            mode: DVector::from_column_slice(&self.mode),
        }
    }
}

pub fn parse_static_report(text: &str) -> serde_json::Result<StaticSolution> {
    serde_json::from_str::<StaticReport>(text).map(|r| r.to_solution())
}

pub fn parse_buckling_report(text: &str) -> serde_json::Result<BucklingSolution> {
    serde_json::from_str::<BucklingReport>(text).map(|r| r.to_solution())
}

pub fn load_model(path: &Path) -> Result<FrameModel, CliError> {
    let text = fs::read_to_string(path).map_err(CliError::Io)?;
    let model = FrameModel::from_json(&text)
        .map_err(|e| input_error("parse-error", format!("{}: {e}", path.display())))?;
    let report = validate_model(&model);
    if !report.is_valid() {
        return Err(input_error("invalid-model", report.to_string()));
    }
    Ok(model)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    text
}

fn rows<R: Dim, C: Dim, S: RawStorage<f64, R, C>>(m: &Matrix<f64, R, C, S>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

fn static_csv(solution: &StaticSolution) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let header = [
        "node", "ux", "uy", "uz", "rx", "ry", "rz", "Fx", "Fy", "Fz", "Mx", "My", "Mz",
    ];
    let io = |e: csv::Error| CliError::Io(e.into());
    w.write_record(header).map_err(io)?;
    for node in 0..solution.displacements.len() / DOFS_PER_NODE {
        let mut record = vec![node.to_string()];
        record.extend(solution.node_displacement(node).iter().map(f64::to_string));
        record.extend(solution.node_reaction(node).iter().map(f64::to_string));
        w.write_record(&record).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn require(value: Option<f64>, flag: &str) -> Result<f64, CliError> {
    value.ok_or_else(|| input_error("missing-argument", format!("--{flag} is required")))
}

fn point(values: Option<[f64; 3]>, flag: &str) -> Result<Point3, CliError> {
    match values {
        Some(c) => Ok(Point3::from(c)),
        None => Err(input_error(
            "missing-argument",
            format!("--{flag} x,y,z is required"),
        )),
    }
}

fn element_report(args: &ElementArgs) -> Result<String, CliError> {
    let matrix = match args.matrix {
        ElementMatrix::Elastic => local_elastic_stiffness_3d(
            require(args.e, "E")?,
            require(args.nu, "nu")?,
            require(args.a, "A")?,
            require(args.l, "L")?,
            require(args.iy, "Iy")?,
            require(args.iz, "Iz")?,
            require(args.j, "J")?,
        ),
        ElementMatrix::Geometric => {
            let i_rho = match args.i_rho {
                Some(v) => v,
                None => require(args.iy, "Iy")? + require(args.iz, "Iz")?,
            };
            let loads = GeometricLoads {
                fx2: args.fx2,
                mx2: args.mx2,
                my1: args.my1,
                mz1: args.mz1,
                my2: args.my2,
                mz2: args.mz2,
            };
            local_geometric_stiffness_3d(
                require(args.l, "L")?,
                require(args.a, "A")?,
                i_rho,
                &loads,
            )
        }
        ElementMatrix::Transform => {
            transformation_matrix_3d(point(args.xi, "xi")?, point(args.xj, "xj")?, args.local_z)
        }
    }
    .map_err(argument_error)?;
    Ok(to_json(&json!({
        "schema_version": SCHEMA_VERSION,
        "matrix": args.matrix,
        "values": rows(&matrix),
    })))
}

/// Executes one command and returns the report text.
pub fn run(config: &RunConfig) -> Result<String, CliError> {
    config.settings.validate().map_err(argument_error)?;
    let csv_ok = matches!(config.command, Command::Static { .. });
    if config.format == Format::Csv && !csv_ok {
        return Err(input_error(
            "invalid-argument",
            "csv output is only available for the static command",
        ));
    }
    match &config.command {
        Command::Static { model } => {
            let model = load_model(model)?;
            let solution =
                solve_linear_elastic_frame(&model, &config.settings).map_err(CliError::Solver)?;
            match config.format {
                Format::Json => Ok(to_json(&StaticReport::new(&solution, config.settings))),
                Format::Csv => static_csv(&solution),
            }
        }
        Command::Buckle { model } => {
            let model = load_model(model)?;
            let solution =
                elastic_critical_load(&model, &config.settings).map_err(CliError::Solver)?;
            Ok(to_json(&BucklingReport::new(&solution, config.settings)))
        }
        Command::Mesh2d(a) => {
            let mesh = match a.kind {
                MeshKind::Tri6 => tri6_mesh_rectangle(a.x_lo, a.y_lo, a.x_hi, a.y_hi, a.nx, a.ny),
                MeshKind::Quad8 => quad8_mesh_rectangle(a.x_lo, a.y_lo, a.x_hi, a.y_hi, a.nx, a.ny),
            }
            .map_err(argument_error)?;
            Ok(to_json(&mesh))
        }
        Command::Mesh1d {
            x_min,
            x_max,
            num_elements,
        } => {
            let mesh =
                generate_uniform_1d_mesh(*x_min, *x_max, *num_elements).map_err(argument_error)?;
            Ok(to_json(&mesh))
        }
        Command::Element(args) => element_report(args),
    }
}

/// Parses `args`, runs, writes the report and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let config = RunConfig::from(cli);
    let result = run(&config).and_then(|report| match &config.output_path {
        Some(path) => fs::write(path, report).map_err(CliError::Io),
        None => std::io::stdout()
            .write_all(report.as_bytes())
            .map_err(CliError::Io),
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}
