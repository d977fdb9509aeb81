use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use gainspec::bounds_max::{DEFAULT_KMAX, DEFAULT_R};
use gainspec::coloring::bipartition;
use gainspec::eig::eigenvalues;
use gainspec::frustration::{frustration_index, frustration_number, FrustrationOptions};
use gainspec::gen::{self, Seed};
use gainspec::report::{self, Format};
use gainspec::{ggf, GainError, GainGraph, Result, NEUTRAL_TOL};

/// Spectral bounds and frustration for complex unit gain graphs.
#[derive(Parser)]
#[command(name = "gainspec", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Md)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Md,
    Csv,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Md => Format::Markdown,
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Json => Format::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Bound comparison tables.
    #[command(subcommand)]
    Bounds(BoundsCommand),
    /// Exact frustration number and frustration index.
    Frustration {
        file: PathBuf,
        /// Lift the default size caps.
        #[arg(long)]
        force: bool,
    },
    /// Generate a graph in GGF format.
    Gen(GenArgs),
    /// Laplacian spectrum.
    Eig { file: PathBuf },
}

#[derive(Subcommand)]
enum BoundsCommand {
    /// Upper bounds for the smallest eigenvalue.
    Min {
        file: PathBuf,
        /// Use this value instead of the exact chromatic number.
        #[arg(long)]
        chi: Option<usize>,
    },
    /// Lower and upper bounds for the largest eigenvalue.
    Max {
        file: PathBuf,
        /// Shift for the n-recurrence, in (0, 1).
        #[arg(long, default_value_t = DEFAULT_R)]
        r: f64,
        /// Largest recurrence depth and matrix power tried.
        #[arg(long, default_value_t = DEFAULT_KMAX)]
        kmax: usize,
    },
    /// Bipartite bounds for the smallest eigenvalue.
    Bipartite { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Gains {
    One,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum Named {
    #[value(name = "k5_15")]
    K5_15,
}

#[derive(Args)]
struct GenArgs {
    /// Vertex count of a G(n, p) graph.
    #[arg(long, conflicts_with_all = ["n1", "n2", "named"])]
    n: Option<usize>,
    /// Edge probability.
    #[arg(long)]
    p: Option<f64>,
    /// First part size of a bipartite G(n1, n2, p) graph.
    #[arg(long, requires = "n2")]
    n1: Option<usize>,
    #[arg(long, requires = "n1")]
    n2: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Gains::One)]
    gains: Gains,
    /// A fixed named instance.
    #[arg(long, value_enum)]
    named: Option<Named>,
    /// Write here instead of stdout.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

fn tolerance() -> Result<f64> {
    match std::env::var("GAINSPEC_TOL") {
        Err(_) => Ok(NEUTRAL_TOL),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
            _ => Err(GainError::InvalidParameter(format!(
                "GAINSPEC_TOL must be a positive number, got {s:?}"
            ))),
        },
    }
}

fn label(path: &Path) -> String {
    path.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn run(cli: Cli) -> Result<String> {
    let format: Format = cli.format.into();
    match cli.command {
        Command::Bounds(BoundsCommand::Min { file, chi }) => {
            let g = ggf::load(&file)?;
            Ok(report::lambda1_table(&g, &label(&file), chi)?.render(format))
        }
        Command::Bounds(BoundsCommand::Max { file, r, kmax }) => {
            let g = ggf::load(&file)?;
            Ok(report::lambda_n_table(&g, &label(&file), r, kmax)?.render(format))
        }
        Command::Bounds(BoundsCommand::Bipartite { file }) => {
            let g = ggf::load(&file)?;
            let (v1, v2) = bipartition(&g)
                .ok_or_else(|| GainError::InvalidBipartition("underlying graph has an odd cycle".into()))?;
            Ok(report::bipartite_table(&g, &label(&file), (&v1, &v2))?.render(format))
        }
        Command::Frustration { file, force } => {
            let g = ggf::load(&file)?;
            frustration(
                &g,
                &label(&file),
                FrustrationOptions {
                    force,
                    tol: tolerance()?,
                },
                format,
            )
        }
        Command::Gen(args) => {
            let g = generate(&args)?;
            match args.out {
                Some(path) => {
                    ggf::save(&g, &path)?;
                    Ok(String::new())
                }
                None => Ok(ggf::write(&g)),
            }
        }
        Command::Eig { file } => {
            let g = ggf::load(&file)?;
            let s = eigenvalues(&g.laplacian())?;
            Ok(spectrum(&label(&file), s.values(), format))
        }
    }
}

fn generate(args: &GenArgs) -> Result<GainGraph> {
    let seed = Seed(args.seed);
    let g = match (args.named, args.n, args.n1.zip(args.n2)) {
        (Some(Named::K5_15), _, _) => return Ok(gen::signed_k5_15()),
        (None, Some(n), None) => gen::erdos_renyi(n, need_p(args)?, seed)?,
        (None, None, Some((n1, n2))) => gen::bipartite_erdos_renyi(n1, n2, need_p(args)?, seed)?,
        _ => {
            return Err(GainError::InvalidParameter(
                "give --named, --n, or --n1 with --n2".into(),
            ))
        }
    };
    Ok(match args.gains {
        Gains::One => g,
        // the gain stream is decorrelated from the edge stream by a fixed offset
        Gains::Random => gen::random_unit_gains(&g, Seed(args.seed.wrapping_add(0x5EED))),
    })
}

fn need_p(args: &GenArgs) -> Result<f64> {
    args.p
        .ok_or_else(|| GainError::InvalidParameter("--p is required".into()))
}

fn frustration(g: &GainGraph, label: &str, opts: FrustrationOptions, format: Format) -> Result<String> {
    let nu = frustration_number(g, opts)?;
    let eps = frustration_index(g, opts)?;
    let lambda1 = if g.n() == 0 {
        0.0
    } else {
        eigenvalues(&g.laplacian())?.lambda_min()
    };
    let vertices: Vec<String> = nu.witness.iter().map(|v| v.to_string()).collect();
    let edges: Vec<String> = eps
        .witness
        .iter()
        .map(|&k| {
            let e = &g.edges()[k];
            format!("{}-{}", e.u, e.v)
        })
        .collect();
    Ok(match format {
        Format::Markdown => {
            let mut out = format!("### {label}\n\n| Quantity | Value | Witness |\n|---|---:|---|\n");
            let _ = writeln!(out, "| λ₁ | {lambda1:.3} | |");
            let _ = writeln!(out, "| frustration number ν | {} | {} |", nu.value, vertices.join(" "));
            let _ = writeln!(out, "| frustration index ε | {} | {} |", eps.value, edges.join(" "));
            out
        }
        Format::Csv => format!(
            "graph,quantity,value,witness\n{label},lambda1,{lambda1:.12},\n{label},nu,{},{}\n{label},epsilon,{},{}\n",
            nu.value,
            vertices.join(" "),
            eps.value,
            edges.join(" ")
        ),
        Format::Json => {
            let pairs: Vec<[usize; 2]> = eps.witness.iter().map(|&k| [g.edges()[k].u, g.edges()[k].v]).collect();
            let v = json!({
                "graph": label,
                "lambda1": lambda1,
                "nu": { "value": nu.value, "vertices": nu.witness },
                "epsilon": { "value": eps.value, "edges": pairs },
            });
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
    })
}

fn spectrum(label: &str, values: &[f64], format: Format) -> String {
    match format {
        Format::Markdown => {
            let mut out = format!("### {label}\n\n| i | λᵢ |\n|---:|---:|\n");
            for (i, v) in values.iter().enumerate() {
                let _ = writeln!(out, "| {} | {v:.3} |", i + 1);
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("graph,i,eigenvalue\n");
            for (i, v) in values.iter().enumerate() {
                let _ = writeln!(out, "{label},{},{v:.12}", i + 1);
            }
            out
        }
        Format::Json => {
            serde_json::to_string_pretty(&json!({ "graph": label, "eigenvalues": values })).expect("serializable")
                + "\n"
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
