//! Batch front end: parse an algebra spec file, run the requested
//! computation, emit aligned tables or CSV.
//!
//! Exit codes: 0 on success, 1 on domain errors (invalid spec, unsupported
//! ideal class, resource budget), 2 on usage errors.

mod specfile;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cartier_core::{
    complexity_sequence, gauge_growth, parallel::run_with_jobs, parse_poly, report,
    theorem_consistency_check, CartierAlgebraSpec, CartierOperator, Ideal, MonomialOrder,
    OrderKind, Polynomial, RingContext,
};
use specfile::{parse_spec, SpecFile};

#[derive(Parser)]
#[command(name = "cartier", version, about = "Exact Cartier-operator computations over F_p[x_1..x_n]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Lex,
    Grevlex,
}

#[derive(Subcommand)]
enum Command {
    /// Apply the operator kappa^e ∘ f to a polynomial r
    Eval {
        #[arg(long)]
        spec: PathBuf,
        /// Operator level e >= 0
        #[arg(long)]
        e: u32,
        /// Operator multiplier
        #[arg(long)]
        f: String,
        /// Input polynomial
        #[arg(long)]
        r: String,
    },
    /// Compose two operators: levels add, the left multiplier twists
    Compose {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        f: String,
        #[arg(long)]
        e2: u32,
        #[arg(long)]
        f2: String,
    },
    /// Reduced Groebner basis of an ideal (--ideal, or the spec quotient)
    Gb {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long, value_enum)]
        order: Option<OrderArg>,
    },
    /// Colon ideal (I : J)
    Colon {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        ideal: String,
        /// The divisor ideal J
        #[arg(long)]
        by: String,
    },
    /// The colon ideal (I^[p^e] : I)
    Fedder {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long, default_value_t = 1)]
        e: u32,
    },
    /// F-purity at the origin via the colon-ideal criterion
    Fpure {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Check the subalgebra closure of the family rule
    Validate {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        e_max: Option<u32>,
    },
    /// Complexity sequence k_e, delta_k, d(J_e) with windowed estimates
    Complexity {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        e_max: Option<u32>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Gauge growth g(e) over the canonical minimal generators
    Gauge {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        e_max: Option<u32>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// validate + complexity + gauge + theorem check, one document
    Report {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        e_max: Option<u32>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

struct CliError(String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn load(path: &PathBuf) -> Result<SpecFile, CliError> {
    parse_spec(path).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn parse_in(ctx: &RingContext, text: &str) -> Result<Polynomial, CliError> {
    Ok(parse_poly(text, ctx)?)
}

fn ideal_arg(
    spec: &SpecFile,
    ideal: &Option<String>,
    what: &str,
) -> Result<Ideal, CliError> {
    match ideal {
        Some(text) => Ok(Ideal::parse(text, &spec.ctx)?),
        None => match &spec.quotient {
            Some(i) => Ok(i.clone()),
            None => Err(CliError(format!(
                "{what} needs --ideal or a quotient in the spec file"
            ))),
        },
    }
}

fn order_of(spec: &SpecFile, arg: Option<OrderArg>, ctx: &RingContext) -> MonomialOrder {
    let kind = match arg {
        Some(OrderArg::Lex) => OrderKind::Lexicographic,
        Some(OrderArg::Grevlex) => OrderKind::GradedReverseLexicographic,
        None => spec.order,
    };
    match kind {
        OrderKind::Lexicographic => MonomialOrder::lex(ctx),
        OrderKind::GradedReverseLexicographic => MonomialOrder::grevlex(ctx),
    }
}

fn header(spec: &SpecFile, e_max: u32) -> String {
    let quotient = match &spec.quotient {
        None => "none".to_string(),
        Some(i) => report::format_ideal(i.generators()),
    };
    let family = spec
        .algebra()
        .map(|a| a.family_name().to_string())
        .unwrap_or_else(|_| "invalid".into());
    format!(
        "ring     = {}\nfamily   = {}\nquotient = {}\ne_max    = {}\n",
        spec.ctx, family, quotient, e_max
    )
}

fn write_csv(path: &PathBuf, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content)
        .map_err(|e| CliError(format!("cannot write {}: {e}", path.display())))
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Eval { spec, e, f, r } => {
            let spec = load(&spec)?;
            let op = CartierOperator::new(e, parse_in(&spec.ctx, &f)?);
            let image = op.apply_mod(&parse_in(&spec.ctx, &r)?, spec.quotient.as_ref())?;
            println!("{image}");
            Ok(())
        }
        Command::Compose { spec, e, f, e2, f2 } => {
            let spec = load(&spec)?;
            let phi = CartierOperator::new(e, parse_in(&spec.ctx, &f)?);
            let psi = CartierOperator::new(e2, parse_in(&spec.ctx, &f2)?);
            let prod = phi.compose(&psi)?;
            println!("level      = {}", prod.level());
            println!("multiplier = {}", prod.multiplier());
            Ok(())
        }
        Command::Gb { spec, ideal, order } => {
            let spec = load(&spec)?;
            let i = ideal_arg(&spec, &ideal, "gb")?;
            let ord = order_of(&spec, order, &spec.ctx);
            let basis = i.reduced_basis(&ord)?;
            println!("{}", report::format_ideal(&basis));
            Ok(())
        }
        Command::Colon { spec, ideal, by } => {
            let spec = load(&spec)?;
            let i = Ideal::parse(&ideal, &spec.ctx)?;
            let j = Ideal::parse(&by, &spec.ctx)?;
            let quot = i.colon(&j)?;
            let basis = quot.reduced_basis(&quot.default_order())?;
            println!("{}", report::format_ideal(&basis));
            Ok(())
        }
        Command::Fedder { spec, ideal, e } => {
            let spec = load(&spec)?;
            let i = ideal_arg(&spec, &ideal, "fedder")?;
            let fed = i.fedder(e)?;
            let basis = fed.reduced_basis(&fed.default_order())?;
            println!("{}", report::format_ideal(&basis));
            Ok(())
        }
        Command::Fpure { spec, ideal } => {
            let spec = load(&spec)?;
            let i = ideal_arg(&spec, &ideal, "fpure")?;
            let pure = i.f_pure()?;
            println!("F-pure: {}", if pure { "yes" } else { "no" });
            Ok(())
        }
        Command::Validate { spec, e_max } => {
            let spec = load(&spec)?;
            let e_max = e_max.unwrap_or(spec.e_max);
            let algebra = spec.algebra()?;
            let outcome = algebra.validate(e_max)?;
            print!("{}", header(&spec, e_max));
            print!("{}", report::render_validation(&outcome));
            if outcome.is_valid() {
                Ok(())
            } else {
                Err(CliError("the family rule is not a subalgebra".into()))
            }
        }
        Command::Complexity {
            spec,
            e_max,
            csv,
            jobs,
        } => {
            let spec = load(&spec)?;
            let e_max = e_max.unwrap_or(spec.e_max);
            let algebra = spec.algebra()?;
            let outcome = run_with_jobs(jobs, || complexity_sequence(&algebra, e_max))?;
            print!("{}", header(&spec, e_max));
            print!("{}", report::render_complexity(&outcome));
            if let Some(path) = csv.or(spec.csv) {
                write_csv(&path, &report::csv_report(Some(&outcome), None))?;
            }
            Ok(())
        }
        Command::Gauge {
            spec,
            e_max,
            csv,
            jobs,
        } => {
            let spec = load(&spec)?;
            let e_max = e_max.unwrap_or(spec.e_max);
            let algebra = spec.algebra()?;
            let outcome = run_with_jobs(jobs, || gauge_growth(&algebra, e_max))?;
            print!("{}", header(&spec, e_max));
            print!("{}", report::render_gauge(&outcome));
            if let Some(path) = csv.or(spec.csv) {
                write_csv(&path, &report::csv_report(None, Some(&outcome)))?;
            }
            Ok(())
        }
        Command::Report {
            spec,
            e_max,
            csv,
            jobs,
        } => {
            let spec = load(&spec)?;
            let e_max = e_max.unwrap_or(spec.e_max);
            let algebra = spec.algebra()?;
            run_report(&spec, &algebra, e_max, csv, jobs)
        }
    }
}

fn run_report(
    spec: &SpecFile,
    algebra: &CartierAlgebraSpec,
    e_max: u32,
    csv: Option<PathBuf>,
    jobs: Option<usize>,
) -> Result<(), CliError> {
    let validation = algebra.validate(e_max)?;
    print!("{}", header(spec, e_max));
    print!("{}", report::render_validation(&validation));
    if !validation.is_valid() {
        return Err(CliError("the family rule is not a subalgebra".into()));
    }
    let (complexity, gauges, theorem) = run_with_jobs(jobs, || {
        let complexity = complexity_sequence(algebra, e_max)?;
        let gauges = gauge_growth(algebra, e_max)?;
        let theorem = theorem_consistency_check(algebra, e_max)?;
        Ok::<_, cartier_core::Error>((complexity, gauges, theorem))
    })?;
    println!();
    print!("{}", report::render_complexity(&complexity));
    println!();
    print!("{}", report::render_gauge(&gauges));
    println!();
    print!("{}", report::render_consistency(&theorem));
    if let Some(path) = csv.or_else(|| spec.csv.clone()) {
        write_csv(&path, &report::csv_report(Some(&complexity), Some(&gauges)))?;
    }
    Ok(())
}
