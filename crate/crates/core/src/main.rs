use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use stickknot::arc::ArcPresentation;
use stickknot::certify::{self, CertifyOptions, KnotFlags, MatchStatus};
use stickknot::diagram::{arc_to_planar, project_polygon, PlanarDiagram};
use stickknot::invariants::{self, bracket_to_jones, DEFAULT_JONES_CAP};
use stickknot::lattice::{self, LatticePolygon};
use stickknot::{dataset, random, render};

const EXIT_BOUND_FAILED: u8 = 2;
const EXIT_MISMATCH: u8 = 3;
const EXIT_INVALID: u8 = 4;
const EXIT_USAGE: u8 = 64;

/// Lattice stick polygons from arc presentations.
#[derive(Parser)]
#[command(name = "stickknot", version)]
struct Cli {
    /// Seed for the `random` subcommand.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a presentation and print it in canonical form.
    Validate { file: PathBuf },
    /// Print the dual presentation.
    Dual { file: PathBuf },
    /// Cyclically shift page numbers or binding indices.
    Rotate(RotateArgs),
    /// Star-shape and torus-order classification.
    Star { file: PathBuf },
    /// Build a lattice polygon and print it as JSON.
    Build {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = BuildBranch::Auto)]
        branch: BuildBranch,
    },
    /// Alexander polynomial and determinant of a presentation or polygon.
    Invariant {
        file: PathBuf,
        /// Also compute the Jones polynomial.
        #[arg(long)]
        jones: bool,
    },
    /// Run the construction and check the stick count against crossing-number bounds.
    Certify {
        file: PathBuf,
        /// Crossing number of the knot.
        #[arg(long = "c")]
        c: usize,
        #[arg(long)]
        non_alternating_prime: bool,
        #[arg(long)]
        alternating: bool,
        #[arg(long)]
        prime: bool,
        /// Skip the Alexander comparison.
        #[arg(long)]
        skip_invariant: bool,
    },
    /// Export a polygon as SVG or OBJ.
    Render(RenderArgs),
    /// Bundled knot presentations.
    Dataset {
        #[command(subcommand)]
        action: DatasetAction,
    },
    /// Print a random valid presentation (uses --seed).
    Random {
        #[arg(long)]
        a: usize,
        /// Star-shaped presentation (odd a).
        #[arg(long)]
        star: bool,
    },
}

#[derive(Args)]
#[command(group(ArgGroup::new("shift").required(true).args(["pages", "bindings"])))]
struct RotateArgs {
    #[arg(long, allow_hyphen_values = true)]
    pages: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    bindings: Option<i64>,
    file: PathBuf,
}

#[derive(Args)]
#[command(group(ArgGroup::new("format").required(true).args(["svg", "obj"])))]
struct RenderArgs {
    polygon: PathBuf,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    obj: Option<PathBuf>,
}

#[derive(Subcommand)]
enum DatasetAction {
    List,
    Get { name: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildBranch {
    Auto,
    Basic,
    Reduced,
    Nonstar,
}

struct Failure {
    code: u8,
    message: String,
}

fn invalid(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: message.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Validate { file } => {
            emit(&read_presentation(&file)?);
            Ok(0)
        }
        Command::Dual { file } => {
            emit(&read_presentation(&file)?.dual().map_err(invalid)?);
            Ok(0)
        }
        Command::Rotate(args) => {
            let p = read_presentation(&args.file)?;
            let out = match (args.pages, args.bindings) {
                (Some(m), _) => p.rotate_pages(m),
                (_, Some(m)) => p.rotate_bindings(m),
                _ => unreachable!("clap requires one of the two"),
            };
            emit(&out);
            Ok(0)
        }
        Command::Star { file } => {
            let p = read_presentation(&file)?;
            let torus = if p.is_star_shaped() {
                p.torus_order_check().map_err(invalid)?
            } else {
                None
            };
            emit(&json!({
                "star_shaped": p.is_star_shaped(),
                "torus": torus,
                "torus_params": torus.map(|t| t.torus_params()),
            }));
            Ok(0)
        }
        Command::Build { file, branch } => {
            let p = read_presentation(&file)?;
            emit(&build(&p, branch)?);
            Ok(0)
        }
        Command::Invariant { file, jones } => invariant(&file, jones),
        Command::Certify {
            file,
            c,
            non_alternating_prime,
            alternating,
            prime,
            skip_invariant,
        } => {
            let p = read_presentation(&file)?;
            let opts = CertifyOptions {
                check_invariant: !skip_invariant,
            };
            let (_, cert) = certify::construct_auto(&p, opts).map_err(invalid)?;
            let flags = KnotFlags {
                alternating,
                prime,
                non_alternating_prime,
            };
            let cert = certify::check_bounds(&cert, c, flags);
            emit(&cert);
            if cert.invariant_match.status == MatchStatus::Mismatched {
                Ok(EXIT_MISMATCH)
            } else if !cert.all_bounds_hold() {
                Ok(EXIT_BOUND_FAILED)
            } else {
                Ok(0)
            }
        }
        Command::Render(args) => {
            let poly = read_polygon(&args.polygon)?;
            let (out, text) = match (args.svg, args.obj) {
                (Some(out), _) => (out, render::render_svg(&poly)),
                (_, Some(out)) => (out, render::render_obj(&poly)),
                _ => unreachable!("clap requires one of the two"),
            };
            fs::write(&out, text).map_err(|e| invalid(format!("{}: {e}", out.display())))?;
            Ok(0)
        }
        Command::Dataset { action } => {
            match action {
                DatasetAction::List => {
                    for e in dataset::entries() {
                        println!("{}", e.name);
                    }
                }
                DatasetAction::Get { name } => {
                    let entry = dataset::get(&name)
                        .ok_or_else(|| invalid(format!("no dataset entry {name}")))?;
                    emit(&entry);
                }
            }
            Ok(0)
        }
        Command::Random { a, star } => {
            let mut r = random::rng(cli.seed);
            let p = if star {
                if a % 2 == 0 || a < 3 {
                    return Err(Failure {
                        code: EXIT_USAGE,
                        message: "star-shaped presentations need odd a >= 3".into(),
                    });
                }
                random::random_star_presentation(&mut r, a)
            } else {
                if a < 2 {
                    return Err(Failure {
                        code: EXIT_USAGE,
                        message: "a must be at least 2".into(),
                    });
                }
                random::random_presentation(&mut r, a)
            };
            emit(&p);
            Ok(0)
        }
    }
}

fn build(p: &ArcPresentation, branch: BuildBranch) -> Result<LatticePolygon, Failure> {
    match branch {
        BuildBranch::Auto => Ok(certify::construct_auto(
            p,
            CertifyOptions {
                check_invariant: false,
            },
        )
        .map_err(invalid)?
        .0),
        BuildBranch::Basic => lattice::construct_basic(p).map_err(invalid),
        BuildBranch::Reduced => {
            let basic = lattice::construct_basic(p).map_err(invalid)?;
            lattice::reduce_ends(&basic, p).map_err(invalid)
        }
        BuildBranch::Nonstar => {
            let w = p
                .find_nonstar_witness()
                .ok_or_else(|| invalid("presentation is star shaped"))?;
            let nns = p.normalize_for_nonstar(&w).map_err(invalid)?;
            lattice::construct_nonstar(&nns).map_err(invalid)
        }
    }
}

fn invariant(file: &Path, jones: bool) -> Result<u8, Failure> {
    let value = read_json(file)?;
    let diagram: PlanarDiagram = if value.get("sticks").is_some() {
        let poly = polygon_from_value(value)?;
        project_polygon(&poly).map_err(invalid)?
    } else {
        let p: ArcPresentation = serde_json::from_value(value).map_err(invalid)?;
        arc_to_planar(&p)
    };
    let mut out = json!({
        "alexander": invariants::alexander(&diagram).coefficients(),
        "determinant": invariants::determinant(&diagram),
        "crossings": diagram.crossing_count(),
    });
    if jones {
        let bracket = invariants::jones_kauffman(&diagram, DEFAULT_JONES_CAP).map_err(invalid)?;
        let v = bracket_to_jones(&bracket)
            .ok_or_else(|| invalid("bracket exponents not divisible by 4"))?;
        out["jones"] = serde_json::to_value(v).expect("serializable");
    }
    emit(&out);
    Ok(0)
}

fn read_input(file: &Path) -> Result<String, Failure> {
    if file.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(invalid)?;
        Ok(s)
    } else {
        fs::read_to_string(file).map_err(|e| invalid(format!("{}: {e}", file.display())))
    }
}

fn read_json(file: &Path) -> Result<Value, Failure> {
    serde_json::from_str(&read_input(file)?).map_err(invalid)
}

fn read_presentation(file: &Path) -> Result<ArcPresentation, Failure> {
    serde_json::from_value(read_json(file)?).map_err(invalid)
}

fn polygon_from_value(value: Value) -> Result<LatticePolygon, Failure> {
    let poly: LatticePolygon = serde_json::from_value(value).map_err(invalid)?;
    lattice::validate_polygon(&poly).map_err(|v| {
        invalid(
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join("; "),
        )
    })?;
    Ok(poly)
}

fn read_polygon(file: &Path) -> Result<LatticePolygon, Failure> {
    polygon_from_value(read_json(file)?)
}

/// Compact JSON with sorted keys.
fn emit<T: Serialize>(value: &T) {
    let v = serde_json::to_value(value).expect("serializable");
    println!("{v}");
}
