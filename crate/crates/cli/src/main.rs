use std::path::PathBuf;
use std::process::ExitCode;

use beilinson::artrans::{component_window, tau, tau_inverse, WindowOptions};
use beilinson::construct::{injective, m_module, projective, simple, w_module};
use beilinson::exactla::FieldSpec;
use beilinson::jordan::{check_cjt, check_constant_j_rank, check_eip, check_ekp, Strategy, Verdict};
use beilinson::rep::Rep;
use beilinson::{AlgebraData, Error};
use beilinson_cli::diagram::{to_ascii, to_dot};
use beilinson_cli::modfile::{read_rep, write_rep};
use beilinson_cli::verify::{self, Status, Suite, VerifyOptions};
use clap::{Parser, Subcommand, ValueEnum};

/// Modules over generalized Beilinson algebras B(n, r).
#[derive(Parser)]
#[command(name = "beilinson", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    M,
    W,
    Simple,
    Proj,
    Inj,
}

#[derive(Clone, Copy, ValueEnum)]
enum PropertyArg {
    Eip,
    Ekp,
    Crj,
    Cjt,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    Ascii,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Quick,
    Paper,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named module and echo its dimension vector.
    Construct {
        kind: Kind,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Vertex for simple, proj and inj.
        #[arg(long)]
        i: Option<usize>,
        /// `Q` or a prime p >= 5.
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide a rank property of a module file; prints the report as JSON.
    Check {
        property: PropertyArg,
        file: PathBuf,
        /// auto, exact-r2, groebner, sweep or randomized.
        #[arg(long, default_value = "auto")]
        strategy: String,
        /// Power for the constant-rank property.
        #[arg(long)]
        j: Option<usize>,
    },
    /// Auslander-Reiten translate of a module file.
    Tau {
        file: PathBuf,
        #[arg(long)]
        inverse: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify a window of the component containing W(m, n, r).
    Component {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[arg(long, default_value_t = 2)]
        quasi_length: usize,
        #[arg(long, default_value = "auto")]
        strategy: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Modules of larger total dimension are listed but not analysed.
        #[arg(long, default_value_t = 200)]
        size_cap: usize,
    },
    /// Run the verification claims and print a pass/fail table.
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        suite: SuiteArg,
        #[arg(long)]
        max_m: Option<usize>,
        /// Largest number of vertices used in the grids.
        #[arg(long, default_value_t = 4)]
        grid: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: TableFormat,
    },
}

/// Exit statuses besides success.
const FAILS: u8 = 1;
const INVALID: u8 = 2;
const BUDGET: u8 = 3;
const INCONCLUSIVE: u8 = 4;

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = if matches!(e, Error::Budget(_)) { BUDGET } else { INVALID };
        Failure { code, msg: e.to_string() }
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure { code: INVALID, msg: msg.into() }
}

fn parse_field(s: &str) -> Result<FieldSpec, Failure> {
    if s.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::Rationals);
    }
    let p: u64 = s.parse().map_err(|_| invalid(format!("field must be Q or a prime, got {s:?}")))?;
    FieldSpec::prime(p).map_err(|e| invalid(e.to_string()))
}

fn dims_line(m: &Rep) -> String {
    m.dims().iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
}

fn load(path: &PathBuf) -> Result<Rep, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    read_rep(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn save(m: &Rep, out: &Option<PathBuf>) -> Result<(), Failure> {
    if let Some(path) = out {
        std::fs::write(path, write_rep(m)).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn construct(kind: Kind, m: Option<usize>, n: usize, r: usize, i: Option<usize>, field: &str) -> Result<Rep, Failure> {
    let field = parse_field(field)?;
    let need_m = || m.ok_or_else(|| invalid("kinds m and w need --m"));
    let need_i = || i.ok_or_else(|| invalid("kinds simple, proj and inj need --i"));
    let alg = || AlgebraData::new(n, r).map_err(Failure::from);
    Ok(match kind {
        Kind::M => m_module(need_m()?, n, r, field)?,
        Kind::W => w_module(need_m()?, n, r, field)?,
        Kind::Simple => simple(alg()?, field, need_i()?)?,
        Kind::Proj => projective(alg()?, field, need_i()?)?,
        Kind::Inj => injective(alg()?, field, need_i()?)?,
    })
}

fn check(property: PropertyArg, file: &PathBuf, strategy: &str, j: Option<usize>) -> Result<u8, Failure> {
    let m = load(file)?;
    let strategy = Strategy::parse(strategy)?;
    let report = match property {
        PropertyArg::Eip => check_eip(&m, &strategy)?,
        PropertyArg::Ekp => check_ekp(&m, &strategy)?,
        PropertyArg::Cjt => check_cjt(&m, &strategy)?,
        PropertyArg::Crj => {
            let j = j.ok_or_else(|| invalid("property crj needs --j"))?;
            if j == 0 {
                return Err(invalid("--j must be at least 1"));
            }
            check_constant_j_rank(&m, j, &strategy)?
        }
    };
    println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
    Ok(match report.verdict {
        Verdict::Holds | Verdict::HoldsOverSampledPoints => 0,
        Verdict::Fails => FAILS,
        Verdict::Inconclusive => INCONCLUSIVE,
    })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Construct { kind, m, n, r, i, field, out } => {
            let rep = construct(kind, m, n, r, i, &field)?;
            save(&rep, &out)?;
            println!("{}", dims_line(&rep));
            Ok(0)
        }
        Command::Check { property, file, strategy, j } => check(property, &file, &strategy, j),
        Command::Tau { file, inverse, out } => {
            let m = load(&file)?;
            if !m.field().is_rational() {
                return Err(invalid("translates are computed over Q only"));
            }
            let t = if inverse { tau_inverse(&m)? } else { tau(&m)? };
            save(&t, &out)?;
            println!("{}", dims_line(&t));
            Ok(0)
        }
        Command::Component { n, r, m, radius, quasi_length, strategy, format, size_cap } => {
            let opts = WindowOptions { radius, quasi_length, strategy: Strategy::parse(&strategy)?, size_cap };
            let report = component_window(n, r, m, &opts)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize")),
                Format::Dot => print!("{}", to_dot(&report)),
                Format::Ascii => print!("{}", to_ascii(&report)),
            }
            Ok(0)
        }
        Command::Verify { suite, max_m, grid, format } => {
            let suite = match suite {
                SuiteArg::Quick => Suite::Quick,
                SuiteArg::Paper => Suite::Paper,
            };
            let opts = VerifyOptions { suite, max_m, grid };
            let table = matches!(format, TableFormat::Table);
            let results = verify::run(&opts, |res| {
                if table {
                    println!("{res}");
                }
            });
            if !table {
                println!("{}", serde_json::to_string_pretty(&results).expect("results serialize"));
            }
            Ok(if results.iter().any(|r| r.status == Status::Fail) { FAILS } else { 0 })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
