//! `homalt`: build Hom-algebras and check right Hom-alternative laws from the
//! command line.
//!
//! Exit codes: 0 every law holds, 1 some law fails, 2 bad input,
//! 3 a precondition (multiplicativity, idempotency, ...) is not met.

mod output;
mod suites;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use homalt::constructions::{
    albert5_base, albert5_twisted, derived_algebra, hom_module_distinguish, plus_algebra,
    yau_twist, AlbertParams,
};
use homalt::idempotents::{albert_decomposition, decompose_element, is_idempotent};
use homalt::io::{load_algebra, load_matrix, parse_coords, save_algebra};
use homalt::jordan::hom_jordan_admissibility;
use homalt::linalg::parse_scalar;
use homalt::operators::idempotent_operator_reports;
use homalt::powers::{
    check_nth_hom_power_associative, check_nth_hom_power_associative_polarized,
    third_fourth_reports,
};
use homalt::symbolic::{
    identity_by_name, right_alternative_identities, shipped_certificates, teichmuller_expansion,
    verify_chain, Certificate, Identity,
};
use homalt::{AlgebraError, CheckReport, Element, HomAlgebra};

use output::{Format, Printer};
use suites::{run_suites, Suite, SuiteConfig};

#[derive(Parser)]
#[command(
    name = "homalt",
    version,
    about = "Exact checks for right Hom-alternative algebras"
)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Args, Clone)]
struct AlgebraArg {
    /// `albert5`, `albert5:γ,δ,ε`, or a path to an algebra JSON file
    algebra: String,
    /// Twisting parameters `γ,δ,ε` for the built-in `albert5`
    #[arg(long)]
    twist: Option<String>,
}

#[derive(Args, Clone)]
struct Sampling {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 25)]
    samples: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Run named check suites
    Check {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// Comma-separated subset of axioms,powers,jordan,decompose,operators,identities,symbolic
        #[arg(long, default_value = "axioms")]
        suites: String,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, default_value_t = 5)]
        nmax: u32,
        /// Idempotent for the decompose and operators suites, e.g. `1,0,0,0,0`
        #[arg(long)]
        idempotent: Option<String>,
        /// Include per-suite wall-clock times in the report
        #[arg(long)]
        timing: bool,
    },
    /// Twist an algebra by a weak self-morphism given as a JSON matrix
    Twist {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        beta: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The nth derived algebra
    Derive {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        n: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The plus algebra with product (xy + yx)/2
    Plus {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the five-dimensional Albert algebra, optionally twisted
    Albert5 {
        #[arg(long)]
        twist: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Hom-power associativity
    Powers {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// Degree to check; all degrees 2..=n are checked
        #[arg(long, default_value_t = 5)]
        n: u32,
        /// Also run the exhaustive polarized check
        #[arg(long)]
        polarized: bool,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Hom-Jordan admissibility by both routes
    Jordan {
        #[command(flatten)]
        algebra: AlgebraArg,
    },
    /// Split the algebra along an idempotent
    Decompose {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        idempotent: String,
        /// Element to split as `ae + (b - ae)`
        #[arg(long)]
        element: Option<String>,
    },
    /// Operator identities of an idempotent
    Operators {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        idempotent: String,
        #[arg(long, default_value_t = 5)]
        nmax: u32,
    },
    /// Check a polynomial identity exhaustively on an algebra
    Identity {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// An identity `(= lhs rhs)`; without it and --name, all built-in identities
        #[arg(long)]
        eq: Option<String>,
        /// A built-in identity name
        #[arg(long, conflicts_with = "eq")]
        name: Option<String>,
    },
    /// Symbolic checks in the free multiplicative Hom-algebra
    Symbolic {
        /// Expand the Hom-Teichmüller identity
        #[arg(long)]
        teichmuller: bool,
        /// Verify the shipped proof certificates
        #[arg(long)]
        certificates: bool,
        /// Verify certificate files after the shipped ones
        #[arg(long)]
        file: Vec<PathBuf>,
    },
    /// Try to show two algebras are not isomorphic as Hom-modules
    Distinguish { first: String, second: String },
}

/// Failure modes mapped to exit codes.
enum Failure {
    Input(String),
    Precondition(String),
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        if e.is_precondition() {
            Failure::Precondition(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read_file(path: &std::path::Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_params(text: &str) -> CliResult<AlbertParams> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(Failure::Input(format!(
            "--twist expects γ,δ,ε, got `{text}`"
        )));
    }
    let s = |i: usize| parse_scalar(parts[i].trim());
    Ok(AlbertParams::new(s(0)?, s(1)?, s(2)?)?)
}

fn builtin(twist: Option<&str>) -> CliResult<HomAlgebra> {
    match twist {
        None => Ok(albert5_base()),
        Some(t) => Ok(albert5_twisted(&parse_params(t)?)?),
    }
}

fn load(source: &str, twist: Option<&str>) -> CliResult<HomAlgebra> {
    if source == "albert5" {
        return builtin(twist);
    }
    if let Some(params) = source.strip_prefix("albert5:") {
        if twist.is_some() {
            return Err(Failure::Input(
                "give the twist either inline or with --twist".into(),
            ));
        }
        return builtin(Some(params));
    }
    if twist.is_some() {
        return Err(Failure::Input(
            "--twist only applies to the built-in albert5".into(),
        ));
    }
    let text = read_file(std::path::Path::new(source))?;
    load_algebra(&text).map_err(|e| Failure::Input(format!("{source}: {e}")))
}

impl AlgebraArg {
    fn load(&self) -> CliResult<HomAlgebra> {
        load(&self.algebra, self.twist.as_deref())
    }
}

fn element(a: &HomAlgebra, coords: &str) -> CliResult<Element> {
    Ok(a.element(parse_coords(coords)?)?)
}

fn emit_algebra(a: &HomAlgebra, output: &Option<PathBuf>) -> CliResult<bool> {
    let text = save_algebra(a) + "\n";
    match output {
        None => print!("{text}"),
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?
        }
    }
    Ok(true)
}

fn parse_suites(text: &str) -> CliResult<Vec<Suite>> {
    text.split(',')
        .map(|s| s.trim().parse::<Suite>().map_err(Failure::Input))
        .collect()
}

fn check_sampling(s: &Sampling) -> CliResult<()> {
    if s.samples == 0 {
        return Err(Failure::Input("--samples must be at least 1".into()));
    }
    Ok(())
}

fn check_nmax(nmax: u32) -> CliResult<()> {
    if nmax < 2 {
        return Err(Failure::Input("--nmax must be at least 2".into()));
    }
    Ok(())
}

fn run(cli: Cli, out: &mut Printer) -> CliResult<bool> {
    match cli.command {
        Command::Check {
            algebra,
            suites,
            sampling,
            nmax,
            idempotent,
            timing,
        } => {
            check_sampling(&sampling)?;
            check_nmax(nmax)?;
            let a = algebra.load()?;
            let idempotent = idempotent.map(|c| element(&a, &c)).transpose()?;
            let config = SuiteConfig {
                suites: parse_suites(&suites)?,
                seed: sampling.seed,
                samples: sampling.samples,
                nmax,
                idempotent,
                timing,
            };
            let results = run_suites(&a, &config)?;
            Ok(out.suites(&algebra.algebra, &results))
        }
        Command::Twist {
            algebra,
            beta,
            output,
        } => {
            let a = algebra.load()?;
            let beta = load_matrix(&read_file(&beta)?)?;
            emit_algebra(&yau_twist(&a, &beta)?, &output)
        }
        Command::Derive { algebra, n, output } => {
            emit_algebra(&derived_algebra(&algebra.load()?, n)?, &output)
        }
        Command::Plus { algebra, output } => emit_algebra(&plus_algebra(&algebra.load()?), &output),
        Command::Albert5 { twist, output } => emit_algebra(&builtin(twist.as_deref())?, &output),
        Command::Powers {
            algebra,
            n,
            polarized,
            sampling,
        } => {
            check_sampling(&sampling)?;
            if n < 2 {
                return Err(Failure::Input("--n must be at least 2".into()));
            }
            let a = algebra.load()?;
            let mut reports = Vec::new();
            for k in 2..=n {
                reports.push(check_nth_hom_power_associative(
                    &a,
                    k,
                    sampling.samples,
                    sampling.seed,
                )?);
                if polarized {
                    reports.push(check_nth_hom_power_associative_polarized(&a, k)?);
                }
            }
            reports.extend(third_fourth_reports(&a, sampling.samples, sampling.seed)?);
            Ok(out.reports(&reports))
        }
        Command::Jordan { algebra } => {
            let adm = hom_jordan_admissibility(&algebra.load()?);
            let reports = vec![
                adm.via_plus.clone().named("hom-jordan-admissible(plus)"),
                adm.direct.clone().named("hom-jordan-admissible(direct)"),
                adm.into_report(),
            ];
            Ok(out.reports(&reports))
        }
        Command::Decompose {
            algebra,
            idempotent,
            element: b,
        } => {
            let a = algebra.load()?;
            let e = element(&a, &idempotent)?;
            let d = albert_decomposition(&a, &e)?;
            let split = b
                .map(|b| -> CliResult<_> { Ok(decompose_element(&a, &e, &element(&a, &b)?)?) })
                .transpose()?;
            Ok(out.decomposition(&d, split.as_ref(), d.alpha_closed(&a)?))
        }
        Command::Operators {
            algebra,
            idempotent,
            nmax,
        } => {
            check_nmax(nmax)?;
            let a = algebra.load()?;
            let e = element(&a, &idempotent)?;
            if !is_idempotent(&a, &e)? {
                return Err(AlgebraError::NotIdempotent.into());
            }
            Ok(out.reports(&idempotent_operator_reports(&a, &e, nmax)?))
        }
        Command::Identity { algebra, eq, name } => {
            let a = algebra.load()?;
            let identities = match (eq, name) {
                (Some(eq), _) => vec![Identity::new("identity", &eq)?],
                (None, Some(name)) => vec![identity_by_name(&name)
                    .ok_or_else(|| Failure::Input(format!("unknown identity `{name}`")))?],
                (None, None) => right_alternative_identities(),
            };
            let reports = identities
                .iter()
                .map(|id| id.check(&a))
                .collect::<homalt::Result<Vec<CheckReport>>>()?;
            Ok(out.reports(&reports))
        }
        Command::Symbolic {
            teichmuller,
            certificates,
            file,
        } => {
            let mut all_ok = true;
            let run_certificates = certificates || !file.is_empty() || !teichmuller;
            if teichmuller || !run_certificates {
                let (n, residue) = teichmuller_expansion();
                all_ok &= out.teichmuller(n, &residue);
            }
            if run_certificates {
                let mut certs = shipped_certificates();
                for f in &file {
                    certs.push(Certificate::from_json(&read_file(f)?)?);
                }
                let results: BTreeMap<usize, (String, bool)> =
                    verify_chain(&certs)?.into_iter().enumerate().collect();
                all_ok &= out.certificates(&results.into_values().collect::<Vec<_>>());
            }
            Ok(all_ok)
        }
        Command::Distinguish { first, second } => {
            let (a, b) = (load(&first, None)?, load(&second, None)?);
            let distinct = hom_module_distinguish(&a, &b)?;
            out.distinguish(distinct);
            Ok(true)
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("HOMALT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let format = match cli.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    let mut printer = Printer::new(format);
    match run(cli, &mut printer) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("precondition not met: {msg}");
            ExitCode::from(3)
        }
    }
}
