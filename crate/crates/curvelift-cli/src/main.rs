//! curvelift — exact-arithmetic computations for rational curves P¹ → Pⁿ:
//! parametric multiplicities at marked points, lifts to blow-ups, stratum
//! classification, and exhaustive finite-field censuses.
//!
//! Exit codes: 0 success, 1 domain error (e.g. a lift with no preferred
//! choice), 2 usage or input-parse error, 3 failed verification verdicts.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use curvelift_cli::{parse, records};
use curvelift_core::{
    census_strata, stratum_dimension, strata_csv, verify_partition, BlowupConfig, CensusParams,
    CensusReport, Error, FieldSpec, MorphismP1, StratumLabel,
};

const USAGE_EXIT: u8 = 2;

#[derive(Parser)]
#[command(
    name = "curvelift",
    version,
    about = "Rational curves on blow-ups of projective space: multiplicities, lifts, strata, censuses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parametric multiplicity of a map at a target point
    Multiplicity(MultiplicityArgs),
    /// Lift a map to the blow-up at marked points and show its components
    Lift(LiftArgs),
    /// Classify a map into its stratum on the blow-up
    Classify(LiftArgs),
    /// Covering degree and image degree of a parametrized curve
    GeometricDegree(MapArgs),
    /// Count morphisms per stratum over a prime field, with verification
    Census(CensusArgs),
    /// Run the census checks and fail (exit 3) on any violated verdict
    Verify(CensusArgs),
    /// Dimension of a stratum from its label
    Dims(DimsArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum OutputFormat {
    Human,
    Json,
    Csv,
}

#[derive(Args)]
struct FieldOutputArgs {
    /// Coefficient field: Q or F<p> with p prime
    #[arg(
        long,
        value_parser = parse::parse_field_flag,
        default_value = "Q",
        env = "CURVELIFT_FIELD"
    )]
    field: FieldSpec,
    /// Output format (csv only for strata tables)
    #[arg(
        long,
        value_enum,
        default_value_t = OutputFormat::Human,
        env = "CURVELIFT_OUTPUT"
    )]
    output: OutputFormat,
}

#[derive(Args)]
struct MapArgs {
    #[command(flatten)]
    common: FieldOutputArgs,
    /// Morphism "(F_0 : F_1 : …)" with homogeneous forms in u, v
    #[arg(long, env = "CURVELIFT_MAP")]
    map: String,
}

#[derive(Args)]
struct MultiplicityArgs {
    #[command(flatten)]
    map: MapArgs,
    /// Target point "(a:b:…)"
    #[arg(long, env = "CURVELIFT_POINT")]
    point: String,
}

#[derive(Args)]
struct LiftArgs {
    #[command(flatten)]
    map: MapArgs,
    /// Blown-up points, semicolon-separated: "(1:0:0); (0:1:0)"
    #[arg(long, env = "CURVELIFT_POINTS")]
    points: String,
}

#[derive(Args)]
struct CensusArgs {
    #[command(flatten)]
    common: FieldOutputArgs,
    /// Target dimension n of Pⁿ
    #[arg(long, env = "CURVELIFT_N")]
    n: usize,
    /// Morphism degree d ≥ 1
    #[arg(long, env = "CURVELIFT_D")]
    d: usize,
    /// Blown-up points, semicolon-separated (may be empty)
    #[arg(long, default_value = "", env = "CURVELIFT_POINTS")]
    points: String,
    /// Worker threads for the sharded enumeration (0 = shared pool)
    #[arg(long, default_value_t = 0, env = "CURVELIFT_SHARDS")]
    shards: usize,
    /// Highest exceptional-curve degree to tabulate
    #[arg(long, default_value_t = 3, env = "CURVELIFT_MAX_EXCEPTIONAL_DEGREE")]
    max_exceptional_degree: usize,
    /// Refuse to enumerate more than this many raw coefficient tuples
    #[arg(long, default_value_t = 1_000_000_000, env = "CURVELIFT_BUDGET")]
    budget: u64,
}

#[derive(Args)]
struct DimsArgs {
    #[command(flatten)]
    common: FieldOutputArgs,
    /// Target dimension n of Pⁿ
    #[arg(long, env = "CURVELIFT_N")]
    n: usize,
    /// Degree d of an interior stratum (with --m)
    #[arg(long, env = "CURVELIFT_D")]
    d: Option<usize>,
    /// Multiplicity vector of an interior stratum, comma-separated: "1,0"
    #[arg(long, env = "CURVELIFT_M")]
    m: Option<String>,
    /// Degree e of an exceptional stratum (alternative to --d/--m)
    #[arg(long, env = "CURVELIFT_EXCEPTIONAL_DEGREE")]
    exceptional_degree: Option<usize>,
}

/// A classified failure: what to print and which code to exit with.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: USAGE_EXIT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Syntax { .. }
            | Error::NotHomogeneous { .. }
            | Error::BadScalarLiteral { .. } => USAGE_EXIT,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Multiplicity(args) => multiplicity(args),
        Command::Lift(args) => lift(args, true),
        Command::Classify(args) => lift(args, false),
        Command::GeometricDegree(args) => geometric_degree(args),
        Command::Census(args) => census(args, false),
        Command::Verify(args) => census(args, true),
        Command::Dims(args) => dims(args),
    }
}

/// Parses --map, reporting any stripped common factor on stderr.
fn parse_map(field: FieldSpec, text: &str) -> Result<MorphismP1, Failure> {
    let (morphism, factor) = parse::parse_morphism(field, text)?;
    if let Some(g) = factor {
        eprintln!("note: stripped common factor {g} from the map");
    }
    Ok(morphism)
}

fn emit_json<T: serde::Serialize>(record: &T) {
    println!(
        "{}",
        serde_json::to_string(record).expect("record serialization")
    );
}

fn reject_csv(output: OutputFormat) -> Result<(), Failure> {
    if output == OutputFormat::Csv {
        Err(Failure::usage(
            "csv output is only available for strata tables (census, verify)",
        ))
    } else {
        Ok(())
    }
}

fn multiplicity(args: MultiplicityArgs) -> Result<u8, Failure> {
    let field = args.map.common.field;
    reject_csv(args.map.common.output)?;
    let f = parse_map(field, &args.map.map)?;
    let p = parse::parse_point(field, &args.point)?;
    let m = f.parametric_multiplicity(&p)?;
    match args.map.common.output {
        OutputFormat::Human => println!("multiplicity of {f} at {p}: {m}"),
        OutputFormat::Json => emit_json(&records::MultiplicityJson {
            map: f.to_string(),
            point: p.to_string(),
            multiplicity: m,
        }),
        OutputFormat::Csv => unreachable!("rejected above"),
    }
    Ok(0)
}

fn lift(args: LiftArgs, include_base: bool) -> Result<u8, Failure> {
    let field = args.map.common.field;
    reject_csv(args.map.common.output)?;
    let f = parse_map(field, &args.map.map)?;
    let points = parse::parse_point_list(field, &args.points)?;
    let config = BlowupConfig::new(field, f.target_dim(), points)?;
    let lifted = config.lift(&f)?;
    let stratum = lifted.stratum();
    let components = records::component_strings(&lifted);
    match args.map.common.output {
        OutputFormat::Human => {
            if include_base {
                println!("base: {f}");
            }
            println!("stratum: {stratum}");
            for (point, tuple) in config.points().iter().zip(&components) {
                println!("components at {point}: ({})", tuple.join(", "));
            }
        }
        OutputFormat::Json => {
            let stratum = records::StratumJson::from(&stratum);
            if include_base {
                emit_json(&records::LiftJson {
                    base: f.to_string(),
                    stratum,
                    components,
                });
            } else {
                emit_json(&records::ClassifyJson { stratum, components });
            }
        }
        OutputFormat::Csv => unreachable!("rejected above"),
    }
    Ok(0)
}

fn geometric_degree(args: MapArgs) -> Result<u8, Failure> {
    let field = args.common.field;
    reject_csv(args.common.output)?;
    let f = parse_map(field, &args.map)?;
    let result = f.geometric_degree()?;
    match args.common.output {
        OutputFormat::Human => {
            println!("map degree: {}", f.degree());
            println!("covering degree: {}", result.deg_g);
            println!("image degree: {}", result.deg_image);
        }
        OutputFormat::Json => emit_json(&records::GeometricDegreeJson {
            map: f.to_string(),
            deg_g: result.deg_g,
            deg_image: result.deg_image,
        }),
        OutputFormat::Csv => unreachable!("rejected above"),
    }
    Ok(0)
}

fn census(args: CensusArgs, verify: bool) -> Result<u8, Failure> {
    let FieldSpec::Prime(q) = args.common.field else {
        return Err(Failure::usage(
            "census requires a finite field: pass --field F<p> with p prime",
        ));
    };
    let points = parse::parse_point_list(args.common.field, &args.points)?;
    let mut params = CensusParams::new(args.n, args.d, q, points);
    params.max_exceptional_degree = args.max_exceptional_degree;
    params.budget = args.budget;
    params.shards = args.shards;
    let report = if verify {
        verify_partition(&params)?
    } else {
        census_strata(&params)?
    };
    match args.common.output {
        OutputFormat::Human => render_census_human(&report),
        OutputFormat::Json => emit_json(&records::census_json(&report)),
        OutputFormat::Csv => print!("{}", strata_csv(&report)),
    }
    if verify && !report.verdicts.all_true() {
        return Ok(3);
    }
    Ok(0)
}

fn render_census_human(report: &CensusReport) {
    let points: Vec<String> = report.params.points.iter().map(ToString::to_string).collect();
    println!(
        "census over F{} of degree-{} morphisms to P^{}, blown up at [{}]",
        report.params.q,
        report.params.d,
        report.params.n,
        points.join(", ")
    );
    println!("total morphisms: {}", report.total);
    println!("strata:");
    for (label, count) in &report.strata {
        println!("  {label}: {count}");
    }
    if !report.exceptional.is_empty() {
        println!("exceptional curves:");
        for (label, count) in &report.exceptional {
            println!("  {label}: {count}");
        }
    }
    let v = &report.verdicts;
    println!(
        "verdicts: disjoint={} exhaustive={} lift_unique={} round_trip={}",
        v.disjoint, v.exhaustive, v.lift_unique, v.round_trip
    );
    if let Some(c) = &report.counterexample {
        println!(
            "counterexample: index {} morphism {} ({})",
            c.index, c.morphism, c.detail
        );
    }
    println!("elapsed: {:.1?}", report.elapsed);
}

fn dims(args: DimsArgs) -> Result<u8, Failure> {
    reject_csv(args.common.output)?;
    let label = match (args.d, &args.m, args.exceptional_degree) {
        (Some(d), Some(m_text), None) => {
            let m = parse_multiplicity_list(m_text)?;
            StratumLabel::Interior { d, m }
        }
        (None, None, Some(e)) => StratumLabel::Exceptional { i: 1, e },
        _ => {
            return Err(Failure::usage(
                "pass either --d with --m (interior stratum) or --exceptional-degree",
            ))
        }
    };
    let dim = stratum_dimension(&label, args.n)?;
    match args.common.output {
        OutputFormat::Human => {
            let qualifier = match dim.kind {
                curvelift_core::DimensionKind::Exact => "exact",
                curvelift_core::DimensionKind::UpperBound => "upper bound",
            };
            println!("dimension of {label}: {} ({qualifier})", dim.value);
        }
        OutputFormat::Json => emit_json(&records::DimensionJson::from(&dim)),
        OutputFormat::Csv => unreachable!("rejected above"),
    }
    Ok(0)
}

fn parse_multiplicity_list(text: &str) -> Result<Vec<usize>, Failure> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| Failure::usage(format!("invalid multiplicity entry '{}'", part.trim())))
        })
        .collect()
}
