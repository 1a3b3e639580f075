use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qbezier::cli::{self, BasisLabel, CliError, CliResult, Exit, LoadedNet};
use qbezier::stability::{COND_ORDER_TOL, DEFAULT_SUP_RESOLUTION};
use qbezier::{DomainPoint, MultiIndex3, QParam};

/// Triangular q-Bernstein bases and q-Bezier patches.
///
/// Net files are JSON: {"degree": n, "q": q, "kind": "scalar"|"points3d",
/// "entries": [{"i":..,"j":..,"k":..,"value": x or [x,y,z]}, ...]}.
#[derive(Parser)]
#[command(name = "qbezier", version)]
struct Args {
    /// Override the q stored in the net file. This reinterprets the same
    /// coefficients under a different basis and so CHANGES the represented
    /// polynomial. For basis-sample it is the shape parameter (default 1).
    #[arg(long, global = true)]
    q: Option<f64>,

    /// Tolerance for property checks (cond ratio must stay below 1 + tol).
    #[arg(long, global = true, default_value_t = COND_ORDER_TOL)]
    tol: f64,

    /// Seed for randomly drawn points (cond --random).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Bernstein,
    Qbernstein,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a net at (u, v) by corner cutting.
    Eval {
        net: PathBuf,
        #[arg(allow_hyphen_values = true)]
        u: f64,
        #[arg(allow_hyphen_values = true)]
        v: f64,
        /// Print every intermediate layer.
        #[arg(long)]
        tableau: bool,
    },
    /// Raise the degree of a net without changing the polynomial.
    Elevate {
        net: PathBuf,
        #[arg(long = "to")]
        to: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Rewrite a net in the classical Bernstein or the q-Bernstein basis.
    Convert {
        net: PathBuf,
        #[arg(long = "to", value_enum)]
        to: Target,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Compare condition numbers of the Bernstein and q-Bernstein representations.
    Cond {
        net: PathBuf,
        /// File of "u,v" lines.
        #[arg(long, conflicts_with_all = ["grid", "random"])]
        points: Option<PathBuf>,
        /// Use the barycentric grid of this resolution.
        #[arg(long, conflicts_with = "random")]
        grid: Option<usize>,
        /// Use this many random points of the triangle (see --seed).
        #[arg(long)]
        random: Option<usize>,
        /// Grid resolution of the sup-norm estimate.
        #[arg(long, default_value_t = DEFAULT_SUP_RESOLUTION)]
        sup_res: usize,
    },
    /// Sample one basis function on the barycentric grid as CSV.
    BasisSample {
        n: usize,
        i: usize,
        j: usize,
        k: usize,
        /// Grid resolution.
        #[arg(short, long, default_value_t = 20)]
        m: usize,
    },
    /// Tessellate a points3d net into an OBJ mesh.
    Tessellate {
        net: PathBuf,
        #[arg(short, long)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load(path: &Path, q: Option<f64>) -> CliResult<LoadedNet> {
    let net = cli::read_net(path)?;
    Ok(match q {
        Some(q) => net.with_q(QParam::new(q)?),
        None => net,
    })
}

fn emit(text: &str, out: Option<&PathBuf>) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(args: Args) -> CliResult<Exit> {
    let mut stdout = io::stdout().lock();
    let mut stderr = io::stderr().lock();
    match args.command {
        Command::Eval { net, u, v, tableau } => {
            let net = load(&net, args.q)?;
            cli::cmd_eval(&net, DomainPoint::new(u, v), tableau, &mut stdout, &mut stderr)
        }
        Command::Elevate { net, to, out } => {
            let net = load(&net, args.q)?;
            emit(&cli::cmd_elevate(&net, to)?.to_json(), out.as_ref())?;
            Ok(Exit::Success)
        }
        Command::Convert { net, to, out } => {
            let net = load(&net, args.q)?;
            let to = match to {
                Target::Bernstein => BasisLabel::Bernstein,
                Target::Qbernstein => BasisLabel::Qbernstein,
            };
            emit(&cli::cmd_convert(&net, to)?.to_json(), out.as_ref())?;
            Ok(Exit::Success)
        }
        Command::Cond { net, points, grid, random, sup_res } => {
            let net = load(&net, args.q)?;
            let pts = match (points, grid, random) {
                (Some(path), _, _) => cli::parse_points(&std::fs::read_to_string(path)?)?,
                (None, Some(m), _) => cli::grid_points(m)?,
                (None, None, Some(count)) => cli::random_points(count, args.seed),
                (None, None, None) => {
                    return Err(CliError::Usage("cond needs --points, --grid or --random".into()))
                }
            };
            cli::cmd_cond(&net, &pts, sup_res, args.tol, &mut stdout)
        }
        Command::BasisSample { n, i, j, k, m } => {
            let q = QParam::new(args.q.unwrap_or(1.0))?;
            cli::cmd_basis_sample(n, MultiIndex3::new(i, j, k), q, m, &mut stdout)
        }
        Command::Tessellate { net, m, out } => {
            let net = load(&net, args.q)?;
            emit(&cli::cmd_tessellate(&net, m)?, out.as_ref())?;
            Ok(Exit::Success)
        }
    }
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(exit) => ExitCode::from(exit.code() as u8),
        Err(e) => {
            eprintln!("qbezier: {e}");
            ExitCode::from(e.code() as u8)
        }
    }
}
