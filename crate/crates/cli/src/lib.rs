//! Command-line front end for `krfermion`.
//!
//! Exit codes: 0 success, 1 verification failures, 2 invalid input,
//! 3 unsupported case.

pub mod cache;
pub mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use krfermion::fermionic::{Decomposition, FactorList, KrFactor};
use krfermion::kr_tables::{kr_dimension, pim_recursive};
use krfermion::rep_oracle::{decomposition_dimension, tensor_decompose, weyl_dim};
use krfermion::verify::{VerificationReport, Verifier};
use krfermion::{Error, Family, LieType, RootSystem, Weight};

pub use cache::Cache;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "krfermion", version, about = "Kirillov-Reshetikhin decompositions via the fermionic formula")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Directory for memoized fermionic decompositions.
    #[arg(long, global = true, env = "KRFERMION_CACHE")]
    cache: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Branching set of a single classical KR module.
    Pim(PimArgs),
    /// Fermionic decomposition of a tensor product of KR modules.
    Fermionic(FermionicArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Tensor product of two irreducibles.
    Tensor(TensorArgs),
}

#[derive(Args, Debug)]
struct PimArgs {
    #[arg(long)]
    algebra: String,
    #[arg(long)]
    node: usize,
    #[arg(long)]
    level: usize,
}

#[derive(Args, Debug)]
struct FermionicArgs {
    #[arg(long)]
    algebra: String,
    /// Comma-separated `node:level` list, e.g. `2:1,3:2`.
    #[arg(long, allow_hyphen_values = true)]
    factors: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Branching,
    TypeATensor,
    Exceptional,
    Dimensions,
    All,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    /// Comma-separated algebras; `B2-4` expands to B2, B3, B4.
    #[arg(long)]
    algebra: String,
    #[arg(long, default_value_t = 2)]
    max_level: usize,
    /// Include elapsed time per report.
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug)]
struct TensorArgs {
    #[arg(long)]
    algebra: String,
    /// Highest weight in fundamental coordinates, e.g. `1,0`.
    #[arg(long, allow_hyphen_values = true)]
    left: String,
    #[arg(long, allow_hyphen_values = true)]
    right: String,
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_INVALID_INPUT,
            message: format!("cannot write output: {e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnsupportedType { .. } | Error::UnsupportedNode { .. } | Error::Overflow(_) => {
                EXIT_UNSUPPORTED
            }
            _ => EXIT_INVALID_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INVALID_INPUT,
        message: message.into(),
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let cache = match &cli.cache {
        Some(dir) => match Cache::open(dir) {
            Ok(c) => Some(c),
            Err(e) => {
                let _ = writeln!(err, "warning: cache disabled, cannot open {}: {e}", dir.display());
                None
            }
        },
        None => None,
    };
    let ctx = Context {
        format: cli.format,
        cache,
    };
    let result = match &cli.command {
        Command::Pim(a) => ctx.pim(a, out),
        Command::Fermionic(a) => ctx.fermionic(a, out),
        Command::Verify(a) => ctx.verify(a, out),
        Command::Tensor(a) => ctx.tensor(a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

struct Context {
    format: Format,
    cache: Option<Cache>,
}

pub fn parse_algebra(s: &str) -> Result<RootSystem, Error> {
    RootSystem::from_name(s)
}

/// `"B2-4,E6"` to `[B2, B3, B4, E6]`.
pub fn parse_algebra_list(s: &str) -> Result<Vec<LieType>, Error> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        match item.split_once('-') {
            Some((first, last)) => {
                let first: LieType = first.parse()?;
                let last: usize = last
                    .trim()
                    .parse()
                    .map_err(|_| Error::BadAlgebraName(item.to_string()))?;
                if last < first.rank() {
                    return Err(Error::BadAlgebraName(item.to_string()));
                }
                for rank in first.rank()..=last {
                    out.push(LieType::new(first.family(), rank)?);
                }
            }
            None => out.push(item.parse()?),
        }
    }
    if out.is_empty() {
        return Err(Error::BadAlgebraName(s.to_string()));
    }
    Ok(out)
}

pub fn parse_factors(rs: &RootSystem, s: &str) -> Result<FactorList, String> {
    let factors = s
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(str::parse::<KrFactor>)
        .collect::<Result<Vec<_>, _>>()?;
    FactorList::new(rs, factors).map_err(|e| e.to_string())
}

pub fn parse_weight(rs: &RootSystem, s: &str) -> Result<Weight, String> {
    let coords = s
        .split(',')
        .map(|c| c.trim().parse::<i64>().map_err(|_| format!("bad coordinate {c:?} in {s:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    let w = Weight(coords);
    rs.check_dominant(&w).map_err(|e| e.to_string())?;
    Ok(w)
}

impl Context {
    fn fermionic_decomposition(&self, rs: &RootSystem, factors: &FactorList) -> Decomposition {
        match &self.cache {
            Some(c) => c.fermionic(rs, factors),
            None => krfermion::fermionic::fermionic_decomposition(rs, factors),
        }
    }

    fn pim(&self, a: &PimArgs, out: &mut dyn Write) -> CmdResult {
        let rs = parse_algebra(&a.algebra)?;
        let factors = FactorList::single(&rs, a.node, a.level)?;
        let set = pim_recursive(&rs, a.node, a.level)?;
        let rows = render::rows(&rs, &set.to_decomposition())?;
        let total = kr_dimension(&rs, a.node, a.level)?;
        let header = format!("{} node {} level {}", rs.lie_type(), a.node, a.level);
        render::decomposition(
            out,
            self.format,
            &header,
            &rs,
            &factors,
            &rows,
            &total,
            render::DimCheck::None,
        )?;
        Ok(EXIT_OK)
    }

    fn fermionic(&self, a: &FermionicArgs, out: &mut dyn Write) -> CmdResult {
        let rs = parse_algebra(&a.algebra)?;
        let factors = parse_factors(&rs, &a.factors).map_err(invalid)?;
        let d = self.fermionic_decomposition(&rs, &factors);
        let rows = render::rows(&rs, &d)?;
        let total = decomposition_dimension(&rs, &d)?;
        // unavailable when some factor has no tabulated decomposition
        let factor_dims: Option<Vec<BigUint>> = factors
            .factors()
            .iter()
            .map(|f| kr_dimension(&rs, f.node, f.level).ok())
            .collect();
        let header = format!("{} {}", rs.lie_type(), factors);
        let check = match factor_dims {
            Some(dims) => render::DimCheck::Product(dims),
            None => render::DimCheck::Unavailable,
        };
        render::decomposition(out, self.format, &header, &rs, &factors, &rows, &total, check)?;
        Ok(EXIT_OK)
    }

    fn tensor(&self, a: &TensorArgs, out: &mut dyn Write) -> CmdResult {
        let rs = parse_algebra(&a.algebra)?;
        let left = parse_weight(&rs, &a.left).map_err(invalid)?;
        let right = parse_weight(&rs, &a.right).map_err(invalid)?;
        let d = tensor_decompose(&rs, &left, &right)?;
        let rows = render::rows(&rs, &d)?;
        let total = decomposition_dimension(&rs, &d)?;
        let dims = (weyl_dim(&rs, &left)?, weyl_dim(&rs, &right)?);
        render::tensor(out, self.format, &rs, &left, &right, &rows, &total, dims)?;
        Ok(EXIT_OK)
    }

    fn verify(&self, a: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
        let types = parse_algebra_list(&a.algebra)?;
        let verifier = Verifier::with_evaluator(|rs, f| self.fermionic_decomposition(rs, f));
        let mut reports: Vec<VerificationReport> = Vec::new();
        for lt in types {
            let rs = RootSystem::new(lt);
            let family = lt.family();
            let suites: Vec<Suite> = match a.suite {
                Suite::All if family.is_classical() => {
                    let mut s = vec![Suite::Branching];
                    if family == Family::A {
                        s.push(Suite::TypeATensor);
                    }
                    s.push(Suite::Dimensions);
                    s
                }
                Suite::All => vec![Suite::Exceptional],
                s => vec![s],
            };
            for suite in suites {
                let batch = match suite {
                    Suite::Branching => verifier.branching_suite(&rs, a.max_level)?,
                    Suite::TypeATensor => verifier.type_a_tensor_suite(&rs, a.max_level)?,
                    Suite::Exceptional => verifier.exceptional_suite(&rs, a.max_level)?,
                    Suite::Dimensions => verifier.dimension_suite(&rs, a.max_level)?,
                    Suite::All => unreachable!("expanded above"),
                };
                reports.extend(batch);
            }
        }
        if !a.timing {
            reports = reports.into_iter().map(VerificationReport::without_metadata).collect();
        }
        render::reports(out, self.format, &reports)?;
        Ok(if reports.iter().all(VerificationReport::passed) {
            EXIT_OK
        } else {
            EXIT_VERIFICATION_FAILED
        })
    }
}
