use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use comideal::report::{basis_report, chain_report, search, verify_report};
use comideal::variety::DEFAULT_MAX_MONOMIALS;
use comideal::{
    audit, builtin, check_theorem, random_members, AlgebraSlice, ChainKind, Corpus, Envelope, Error, FieldSpec,
    FiniteDimAlgebra, Identity, SearchTarget, Status, Table, TheoremParams, VarietySpec,
};

#[derive(Parser)]
#[command(name = "comideal", version, about = "Commutator ideals in relatively free algebras, computed exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quotient dimensions of the free algebra per multidegree.
    Basis {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Only the multidegree (1,...,1).
        #[arg(long)]
        multilinear: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check whether an identity holds in a variety.
    Verify {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// A bundled identity by name.
        #[arg(long, conflicts_with = "expr", required_unless_present = "expr")]
        builtin: Option<String>,
        /// An identity written out, e.g. "<x,y,z> - <y,x,z>".
        #[arg(long)]
        expr: Option<String>,
        /// Degree bound for substitutions into non-multilinear identities.
        #[arg(long, default_value_t = 5)]
        cap: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Dimension table of the lower central chain or the Lie powers.
    Chain {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, value_enum, default_value_t = Series::LowerCentral)]
        series: Series,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check a theorem instance up to the degree cap.
    Check {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        i: Option<u32>,
        #[arg(long)]
        j: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Audit finite-dimensional algebras given as structure constant files.
    Algebra {
        /// Algebra or corpus file; may be repeated.
        #[arg(long, required = true)]
        file: Vec<PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Look for counterexamples over increasing generator counts.
    Search {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long, default_value_t = 3)]
        gens: usize,
        #[arg(long, default_value_t = 5)]
        degree: u32,
        #[arg(long, default_value_t = 0)]
        char: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_MONOMIALS)]
        max_monomials: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Generate a corpus of random nilpotent Novikov or bicommutative algebras.
    Corpus {
        #[arg(long, default_value_t = 20240601)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

#[derive(Args)]
struct AlgebraArgs {
    /// Builtin variety; extra identities may be added with --identity.
    #[arg(long, required_unless_present = "identity")]
    variety: Option<String>,
    /// Defining identity (bundled name or expression); repeatable.
    #[arg(long)]
    identity: Vec<String>,
    #[arg(long, default_value_t = 2)]
    gens: usize,
    #[arg(long, default_value_t = 4)]
    degree: u32,
    /// 0 for the rationals, otherwise a prime.
    #[arg(long, default_value_t = 0)]
    char: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_MONOMIALS)]
    max_monomials: usize,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Series {
    LowerCentral,
    LiePowers,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    BicomRightNilpotency,
    AssocEvenEven,
}

impl AlgebraArgs {
    fn field(&self) -> Result<FieldSpec, Error> {
        FieldSpec::from_characteristic(self.char)
    }

    fn variety(&self) -> Result<VarietySpec, Error> {
        let mut v = match &self.variety {
            Some(name) => VarietySpec::builtin(name)?,
            None => VarietySpec::new("custom", Vec::new())?,
        };
        for (n, text) in self.identity.iter().enumerate() {
            let id = match builtin(text) {
                Ok(id) => id,
                Err(_) => Identity::from_text(&format!("identity{}", n + 1), text)?,
            };
            v = v.with_identity(id)?;
        }
        Ok(v)
    }

    fn slice(&self) -> Result<AlgebraSlice, Error> {
        AlgebraSlice::with_limit(&self.variety()?, self.field()?, self.gens, self.degree, self.max_monomials)
    }
}

fn emit<T: Serialize + Table>(command: &str, format: Format, report: T) {
    match format {
        Format::Table => print!("{}", report.table()),
        Format::Json => println!("{}", Envelope::new(command, report).to_json()),
    }
}

fn code(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

#[derive(Serialize)]
struct AuditBatch(Vec<AuditEntry>);

#[derive(Serialize)]
struct AuditEntry {
    source: String,
    report: comideal::AuditReport,
}

impl Table for AuditBatch {
    fn table(&self) -> String {
        self.0
            .iter()
            .map(|e| format!("{}\n{}", e.source, e.report.table()))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn load(path: &PathBuf) -> Result<Vec<(String, FiniteDimAlgebra)>, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
    let name = path.display().to_string();
    if value.get("algebras").is_some() {
        let corpus: Corpus = serde_json::from_value(value).map_err(|e| Error::Schema(format!("{name}: {e}")))?;
        return Ok(corpus
            .algebras()?
            .into_iter()
            .enumerate()
            .map(|(i, a)| (format!("{name}#{}", i + 1), a))
            .collect());
    }
    Ok(vec![(name, FiniteDimAlgebra::from_value(value)?)])
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Basis { algebra, multilinear, out } => {
            let r = basis_report(
                &algebra.variety()?,
                algebra.field()?,
                algebra.gens,
                algebra.degree,
                multilinear,
                algebra.max_monomials,
            )?;
            emit("basis", out.format, r);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            algebra,
            builtin: name,
            expr,
            cap,
            out,
        } => {
            let id = match (name, expr) {
                (Some(n), _) => builtin(&n)?,
                (None, Some(e)) => Identity::from_text("expr", &e)?,
                (None, None) => return Err(Error::Params("one of --builtin or --expr is required".into())),
            };
            let r = verify_report(&algebra.variety()?, algebra.field()?, &id, cap, algebra.max_monomials)?;
            let ok = r.verdict.holds();
            emit("verify", out.format, r);
            Ok(code(ok))
        }
        Command::Chain { algebra, series, out } => {
            let kind = match series {
                Series::LowerCentral => ChainKind::LowerCentral,
                Series::LiePowers => ChainKind::LiePowers,
            };
            let r = chain_report(&algebra.slice()?, kind)?;
            emit("chain", out.format, r);
            Ok(ExitCode::SUCCESS)
        }
        Command::Check {
            algebra,
            theorem,
            p,
            q,
            i,
            j,
            m,
            out,
        } => {
            let params = TheoremParams { p, q, i, j, m };
            let r = check_theorem(&theorem, &algebra.slice()?, &params)?;
            let ok = r.status != Status::Violated;
            emit("check", out.format, r);
            Ok(code(ok))
        }
        Command::Algebra { file, out } => {
            let mut algebras = Vec::new();
            for f in &file {
                algebras.extend(load(f)?);
            }
            let entries: Vec<AuditEntry> = algebras
                .into_par_iter()
                .map(|(source, a)| audit(&a).map(|report| AuditEntry { source, report }))
                .collect::<Result<_, _>>()?;
            let ok = entries.iter().all(|e| e.report.pass);
            emit("algebra", out.format, AuditBatch(entries));
            Ok(code(ok))
        }
        Command::Search {
            target,
            gens,
            degree,
            char,
            max_monomials,
            out,
        } => {
            let target = match target {
                Target::BicomRightNilpotency => SearchTarget::BicomRightNilpotency,
                Target::AssocEvenEven => SearchTarget::AssocEvenEven,
            };
            let r = search(target, FieldSpec::from_characteristic(char)?, gens, degree, max_monomials)?;
            let ok = r.status != Status::Violated;
            emit("search", out.format, r);
            Ok(code(ok))
        }
        Command::Corpus { seed, count } => {
            let corpus = random_members(seed, count)?;
            println!("{}", serde_json::to_string_pretty(&corpus).expect("corpus serializes"));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
