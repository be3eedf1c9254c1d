//! qmoduli: components, stability, and moduli shapes of module varieties
//! from the command line.
//!
//! Algebra arguments accept either a bundled catalog name or a path to a
//! JSON algebra document. Dimension vectors and weights are comma-separated
//! in declared vertex order. Exit codes: 0 success (including empty moduli),
//! 2 parse/usage errors, 3 unsupported algebra class, 4 exact-oracle scale
//! exceeded, 1 anything else.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use quiver_moduli::algebra::BoundQuiverAlgebra;
use quiver_moduli::components::{enumerate_components, generic_module, Component, RankSequence};
use quiver_moduli::dimvec::{DimensionVector, Weight};
use quiver_moduli::doc::{build_algebra, document_hash, parse_document, print_document, AlgebraDocument};
use quiver_moduli::error::Error;
use quiver_moduli::fp::PrimeField;
use quiver_moduli::moduli::moduli_shape;
use quiver_moduli::report;
use quiver_moduli::stability::{gr_theta, is_semistable, is_stable, StabilityParams};
use quiver_moduli::submodule::submodule_dimension_vectors;
use quiver_moduli::{catalog, SplitMix64};

#[derive(Parser)]
#[command(name = "qmoduli", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an algebra and print its class certificates.
    Validate {
        /// Catalog name or path to an algebra document.
        algebra: String,
    },
    /// List the irreducible components of mod(A, d).
    Components {
        algebra: String,
        #[arg(short = 'd', long = "dim", value_name = "D1,D2,...")]
        dim: String,
    },
    /// Full pipeline: components, stable decompositions, moduli shapes.
    Moduli {
        algebra: String,
        #[arg(short = 'd', long = "dim", value_name = "D1,D2,...")]
        dim: String,
        #[arg(short = 't', long = "theta", value_name = "T1,T2,...", allow_hyphen_values = true)]
        theta: String,
        #[command(flatten)]
        knobs: Knobs,
        #[arg(long = "format", value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Worker threads for per-component parallelism (0 = rayon default).
        #[arg(long = "threads", default_value_t = 0)]
        threads: usize,
    },
    /// Exact small-scale answers: submodules, stability verdicts, gr factors.
    Oracle {
        algebra: String,
        #[command(subcommand)]
        question: OracleQuestion,
    },
    /// Bundled algebra documents.
    Catalog {
        #[command(subcommand)]
        what: CatalogCmd,
    },
}

#[derive(Args)]
struct Knobs {
    #[arg(long = "seed", default_value_t = 0)]
    seed: u64,
    #[arg(long = "trials", default_value_t = 5)]
    trials: u32,
    #[arg(long = "prime", default_value_t = 10007)]
    prime: u64,
    #[arg(long = "oracle-prime", default_value_t = 5, value_parser = parse_oracle_prime)]
    oracle_prime: u64,
}

impl Knobs {
    fn params(&self) -> StabilityParams {
        StabilityParams {
            trials: self.trials,
            seed: self.seed,
            prime: self.prime,
            oracle_prime: self.oracle_prime,
        }
    }
}

#[derive(Subcommand)]
enum OracleQuestion {
    /// Dimension vectors of all submodules of a sampled module.
    Submodules {
        #[command(flatten)]
        spec: ModuleSpec,
    },
    /// Is the sampled module theta-semistable?
    Semistable {
        #[command(flatten)]
        spec: ModuleSpec,
        #[arg(short = 't', long = "theta", allow_hyphen_values = true)]
        theta: String,
    },
    /// Is the sampled module theta-stable?
    Stable {
        #[command(flatten)]
        spec: ModuleSpec,
        #[arg(short = 't', long = "theta", allow_hyphen_values = true)]
        theta: String,
    },
    /// Factors of a Jordan-Hoelder filtration in the semistable category.
    Gr {
        #[command(flatten)]
        spec: ModuleSpec,
        #[arg(short = 't', long = "theta", allow_hyphen_values = true)]
        theta: String,
    },
}

/// How oracle commands pick their module: a generic sample with the given
/// ranks (default: the first maximal rank sequence).
#[derive(Args)]
struct ModuleSpec {
    #[arg(short = 'd', long = "dim", value_name = "D1,D2,...")]
    dim: String,
    #[arg(short = 'r', long = "ranks", value_name = "R1,R2,...")]
    ranks: Option<String>,
    #[arg(long = "seed", default_value_t = 0)]
    seed: u64,
    #[arg(long = "oracle-prime", default_value_t = 5, value_parser = parse_oracle_prime)]
    oracle_prime: u64,
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// All bundled algebra names.
    List,
    /// Print one bundled document.
    Show { name: String },
}

fn parse_oracle_prime(s: &str) -> Result<u64, String> {
    match s {
        "2" => Ok(2),
        "3" => Ok(3),
        "5" => Ok(5),
        other => Err(format!("oracle prime must be 2, 3, or 5 (got {other})")),
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::MalformedDocument(_)
        | Error::UnknownVertex { .. }
        | Error::UnknownArrow(_)
        | Error::DuplicateId(_)
        | Error::NonComposableRelation { .. }
        | Error::DuplicateRelation { .. } => 2,
        Error::UnsupportedClass(_) | Error::CyclicQuiver => 3,
        Error::OracleScaleExceeded(_) => 4,
        _ => 1,
    }
}

fn load(name_or_path: &str) -> Result<(AlgebraDocument, Arc<BoundQuiverAlgebra>), Error> {
    if catalog::names().contains(&name_or_path) {
        let doc = catalog::document(name_or_path)?;
        let algebra = build_algebra(&doc)?;
        return Ok((doc, algebra));
    }
    let path = PathBuf::from(name_or_path);
    let text = std::fs::read_to_string(&path).map_err(|e| {
        Error::MalformedDocument(format!("cannot read `{}`: {e}", path.display()))
    })?;
    let doc = parse_document(&text)?;
    let algebra = build_algebra(&doc)?;
    Ok((doc, algebra))
}

fn parse_dim(algebra: &BoundQuiverAlgebra, text: &str) -> Result<DimensionVector, Error> {
    let values: Vec<u32> = text
        .split(',')
        .map(|t| t.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|e| Error::MalformedDocument(format!("bad dimension vector `{text}`: {e}")))?;
    if values.len() != algebra.quiver().vertex_count() {
        return Err(Error::MalformedDocument(format!(
            "dimension vector has {} entries, expected {}",
            values.len(),
            algebra.quiver().vertex_count()
        )));
    }
    Ok(DimensionVector::new(values))
}

fn parse_theta(algebra: &BoundQuiverAlgebra, text: &str) -> Result<Weight, Error> {
    let values: Vec<i64> = text
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Error::MalformedDocument(format!("bad weight `{text}`: {e}")))?;
    if values.len() != algebra.quiver().vertex_count() {
        return Err(Error::MalformedDocument(format!(
            "weight has {} entries, expected {}",
            values.len(),
            algebra.quiver().vertex_count()
        )));
    }
    Ok(Weight::new(values))
}

fn oracle_module(
    algebra: &Arc<BoundQuiverAlgebra>,
    spec: &ModuleSpec,
) -> Result<quiver_moduli::ExplicitModule, Error> {
    let d = parse_dim(algebra, &spec.dim)?;
    let prime: u64 = spec.oracle_prime;
    let ranks = match &spec.ranks {
        Some(text) => {
            let values: Vec<u32> = text
                .split(',')
                .map(|t| t.trim().parse::<u32>())
                .collect::<Result<_, _>>()
                .map_err(|e| Error::MalformedDocument(format!("bad rank sequence: {e}")))?;
            RankSequence::new(values)
        }
        None => enumerate_components(algebra, &d)?
            .first()
            .expect("at least one component")
            .ranks()
            .clone(),
    };
    let component = Component::new(algebra.clone(), d, ranks)?;
    let seed = SplitMix64::derived(spec.seed, 0x0CA1).next_u64();
    generic_module(&component, PrimeField::new(prime), seed)
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Validate { algebra } => {
            let (_, a) = load(&algebra)?;
            print!("{}", report::class_summary(&a));
            Ok(())
        }
        Command::Components { algebra, dim } => {
            let (_, a) = load(&algebra)?;
            let d = parse_dim(&a, &dim)?;
            let comps = enumerate_components(&a, &d)?;
            println!("{} component(s) of mod({}, {})", comps.len(), a.name(), d);
            let q = a.quiver();
            for (i, c) in comps.iter().enumerate() {
                let ranks: Vec<String> = (0..q.arrow_count())
                    .map(|x| format!("{}={}", q.arrow(x).name, c.ranks().get(x)))
                    .collect();
                print!(
                    "component #{i}: ranks [{}], dim C = {}, dim GL = {}",
                    ranks.join(", "),
                    c.dimension(),
                    c.gl_dimension()
                );
                if let Ok(defect) = c.string_defect() {
                    print!(", defect = {defect}, regular = {}", defect == 0);
                }
                println!();
            }
            Ok(())
        }
        Command::Moduli { algebra, dim, theta, knobs, format, threads } => {
            if threads > 0 {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global()
                    .ok();
            }
            let (doc, a) = load(&algebra)?;
            let d = parse_dim(&a, &dim)?;
            let theta = parse_theta(&a, &theta)?;
            let params = knobs.params();
            let analyses = moduli_shape(&a, &d, &theta, &params)?;
            let rep = report::build_report(
                a.name(),
                &document_hash(&doc),
                &d,
                &theta,
                &params,
                &analyses,
            );
            match format {
                Format::Json => print!("{}", report::to_json(&rep)),
                Format::Text => print!("{}", report::to_text(&rep)),
            }
            Ok(())
        }
        Command::Oracle { algebra, question } => {
            let (_, a) = load(&algebra)?;
            match question {
                OracleQuestion::Submodules { spec } => {
                    let m = oracle_module(&a, &spec)?;
                    let vectors = submodule_dimension_vectors(&m)?;
                    println!(
                        "{} submodule dimension vector(s) of a generic module of dim {} over F_{}",
                        vectors.len(),
                        m.dim(),
                        m.field().p()
                    );
                    for v in vectors {
                        println!("{v}");
                    }
                }
                OracleQuestion::Semistable { spec, theta } => {
                    let m = oracle_module(&a, &spec)?;
                    let theta = parse_theta(&a, &theta)?;
                    println!("semistable: {}", is_semistable(&m, &theta)?);
                }
                OracleQuestion::Stable { spec, theta } => {
                    let m = oracle_module(&a, &spec)?;
                    let theta = parse_theta(&a, &theta)?;
                    println!("stable: {}", is_stable(&m, &theta)?);
                }
                OracleQuestion::Gr { spec, theta } => {
                    let m = oracle_module(&a, &spec)?;
                    let theta = parse_theta(&a, &theta)?;
                    let factors = gr_theta(&m, &theta, spec.seed)?;
                    println!("{} stable factor class(es)", factors.len());
                    for (factor, mult) in factors {
                        println!("{} x dim {}", mult, factor.dim());
                    }
                }
            }
            Ok(())
        }
        Command::Catalog { what } => {
            match what {
                CatalogCmd::List => {
                    for name in catalog::names() {
                        println!("{name}");
                    }
                }
                CatalogCmd::Show { name } => {
                    let doc = catalog::document(&name)?;
                    print!("{}", print_document(&doc));
                }
            }
            Ok(())
        }
    }
}
