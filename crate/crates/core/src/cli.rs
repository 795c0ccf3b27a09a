//! Command-line driver: dimensions of the basic objects, diagram products,
//! and the verification suites, with exact scalars throughout and
//! byte-stable JSON output for a fixed configuration.

use crate::algebra::BasedAlgebra;
use crate::bipartition::{BiPartition, CellIndex};
use crate::creps::{cell_module, perm_module_b};
use crate::diagram::{enumerate_basis, enumerate_dangles, multiply, CDiagram};
use crate::report;
use crate::scalar::FieldSpec;
use crate::signed_perm::SignPlacement;
use crate::verify::{resolve_placement, run_suite, Suite, SuiteConfig};
use crate::wreps::{convention_oracle, perm_module_w, specht_module};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "brauer-typec",
    about = "Exact constructions and structural verification for type-C Brauer algebras",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlacementFlag {
    First,
    Second,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct FieldArgs {
    /// Field characteristic: 0 for the rationals, otherwise a prime
    #[arg(long = "char", default_value_t = 5)]
    characteristic: u64,
    /// Loop parameter, as an exact scalar ("3", "-1", "5/2")
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    delta: String,
}

impl FieldArgs {
    fn field(&self) -> Result<FieldSpec, String> {
        let probe = if self.characteristic == 0 {
            FieldSpec::rational_delta(0)
        } else {
            FieldSpec::prime(self.characteristic, 0).map_err(|e| e.to_string())?
        };
        let delta = probe.parse_scalar(&self.delta).map_err(|e| e.to_string())?;
        FieldSpec::new(self.characteristic, delta).map_err(|e| e.to_string())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the dimension of a requested object
    Dim(DimArgs),
    /// Multiply two diagrams and print the scalar, loop count and result
    Mult(MultArgs),
    /// Run a verification suite; exit 0 only if every instance passes
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum DimWhat {
    /// number of diagrams in the algebra basis
    Algebra,
    /// symmetric dangles with l arcs
    Dangles,
    /// permutation module of the hyperoctahedral group
    PermW,
    /// Specht module of the hyperoctahedral group
    Specht,
    /// cell module of the diagram algebra
    Theta,
    /// permutation module of the diagram algebra
    PermB,
}

#[derive(Args)]
struct DimArgs {
    #[arg(long, default_value_t = 2)]
    r: usize,
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, value_enum)]
    what: DimWhat,
    /// arc count for --what dangles
    #[arg(long)]
    l: Option<usize>,
    /// bi-partition, e.g. "2,1|1" ("-" for an empty component)
    #[arg(long)]
    lambda: Option<String>,
    /// cell index "layer:bi-partition", e.g. "1:1|-"
    #[arg(long)]
    idx: Option<String>,
    #[arg(long, value_enum, default_value = "auto")]
    placement: PlacementFlag,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct MultArgs {
    #[arg(long, default_value_t = 2)]
    r: usize,
    #[command(flatten)]
    field: FieldArgs,
    /// left and right diagrams, e.g. "[t-1:t1,b-1:b1]"
    diagrams: Vec<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// suite: w-decomp | duality | hom-ext-w | stratify | filtration | young | main
    suite: String,
    #[arg(long, default_value_t = 2)]
    r: usize,
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, value_enum, default_value = "auto")]
    placement: PlacementFlag,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// run even when the suite's hypotheses exclude the field; instances are
    /// marked instead of judged
    #[arg(long)]
    allow_out_of_hypothesis: bool,
}

fn placement_of(flag: PlacementFlag) -> Option<SignPlacement> {
    match flag {
        PlacementFlag::First => Some(SignPlacement::First),
        PlacementFlag::Second => Some(SignPlacement::Second),
        PlacementFlag::Auto => None,
    }
}

fn emit(text: String, out: &Option<std::path::PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| e.to_string()),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version printing
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Dim(args) => cmd_dim(args),
        Command::Mult(args) => cmd_mult(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn cmd_dim(args: DimArgs) -> Result<i32, String> {
    let field = args.field.field()?;
    let r = args.r;
    let need_lambda = || -> Result<BiPartition, String> {
        let text = args
            .lambda
            .as_ref()
            .ok_or("--lambda is required for this object")?;
        BiPartition::parse(text).map_err(|e| e.to_string())
    };
    let need_placement = || -> Result<SignPlacement, String> {
        match placement_of(args.placement) {
            Some(p) => Ok(p),
            None => convention_oracle().map_err(|e| e.to_string()),
        }
    };
    let (what, dim) = match args.what {
        DimWhat::Algebra => ("algebra".to_string(), enumerate_basis(r).len()),
        DimWhat::Dangles => {
            let l = args.l.ok_or("--l is required for --what dangles")?;
            if l > r {
                return Err(format!("l = {l} exceeds r = {r}"));
            }
            (format!("dangles l={l}"), enumerate_dangles(r, l).len())
        }
        DimWhat::PermW => {
            let lam = need_lambda()?;
            if lam.size() != r {
                return Err(format!("bi-partition {lam} is not of size {r}"));
            }
            let placement = need_placement()?;
            let alg = BasedAlgebra::hyperoctahedral(r, &field);
            (
                format!("perm-w {lam}"),
                perm_module_w(&alg, &lam, placement).module.dim,
            )
        }
        DimWhat::Specht => {
            let lam = need_lambda()?;
            if lam.size() != r {
                return Err(format!("bi-partition {lam} is not of size {r}"));
            }
            let placement = need_placement()?;
            let alg = BasedAlgebra::hyperoctahedral(r, &field);
            let pm = perm_module_w(&alg, &lam, placement);
            (format!("specht {lam}"), specht_module(&pm).0.dim)
        }
        DimWhat::Theta | DimWhat::PermB => {
            let text = args
                .idx
                .as_ref()
                .ok_or("--idx is required for this object")?;
            let idx = CellIndex::parse(text, r).map_err(|e| e.to_string())?;
            let placement = need_placement()?;
            let balg = BasedAlgebra::brauer_c(r, &field);
            match args.what {
                DimWhat::Theta => (
                    format!("theta {idx}"),
                    cell_module(&balg, &idx, placement)
                        .map_err(|e| e.to_string())?
                        .dim,
                ),
                _ => (
                    format!("perm-b {idx}"),
                    perm_module_b(&balg, &idx, placement)
                        .map_err(|e| e.to_string())?
                        .dim,
                ),
            }
        }
    };
    let text = match args.format {
        Format::Json => format!(
            "{{\"what\":{},\"r\":{},\"dim\":{}}}",
            serde_json::to_string(&what).unwrap(),
            r,
            dim
        ),
        Format::Csv => format!("what,r,dim\n{what},{r},{dim}"),
        Format::Text => dim.to_string(),
    };
    emit(text, &args.out)?;
    Ok(0)
}

fn cmd_mult(args: MultArgs) -> Result<i32, String> {
    let field = args.field.field()?;
    if args.diagrams.len() != 2 {
        return Err(format!(
            "expected exactly 2 diagrams, got {}",
            args.diagrams.len()
        ));
    }
    let a = CDiagram::parse(&args.diagrams[0], args.r).map_err(|e| e.to_string())?;
    let b = CDiagram::parse(&args.diagrams[1], args.r).map_err(|e| e.to_string())?;
    let (loops, prod) = multiply(&a, &b).map_err(|e| e.to_string())?;
    let scalar = field.delta().pow(loops as i64).map_err(|e| e.to_string())?;
    let text = match args.format {
        Format::Json => format!(
            "{{\"loops\":{},\"scalar\":{},\"diagram\":{}}}",
            loops,
            serde_json::to_string(&scalar.to_string()).unwrap(),
            serde_json::to_string(&prod.to_string()).unwrap()
        ),
        Format::Csv => format!("loops,scalar,diagram\n{},{},\"{}\"", loops, scalar, prod),
        Format::Text => {
            if scalar.is_one() {
                format!("loops: {loops}\n{prod}")
            } else {
                format!("loops: {loops}\n{scalar} · {prod}")
            }
        }
    };
    emit(text, &args.out)?;
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> Result<i32, String> {
    let suite =
        Suite::parse(&args.suite).ok_or_else(|| format!("unknown suite `{}`", args.suite))?;
    let field = args.field.field()?;
    let cfg = SuiteConfig {
        r: args.r,
        field,
        placement: placement_of(args.placement),
        seed: args.seed,
        allow_out_of_hypothesis: args.allow_out_of_hypothesis,
    };
    // resolve once so the report is stable even for auto placement
    let _ = resolve_placement(&cfg).map_err(|e| e.to_string())?;
    let reports = run_suite(suite, &cfg).map_err(|e| e.to_string())?;
    let text = match args.format {
        Format::Json => report::to_json(&reports),
        Format::Csv => report::to_csv(&reports),
        Format::Text => report::to_text(&reports),
    };
    emit(text, &args.out)?;
    Ok(if report::all_pass(&reports) { 0 } else { 1 })
}
