use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mockjac::borcherds::{borcherds_case, check_discriminant};
use mockjac::catalog::{ingest_hdata, lookup, HData};
use mockjac::mocktheta::eulerian;
use mockjac::series::fmt_exp;
use mockjac::verify::{run_suite, Suite};
use mockjac::{eta_expand, EtaQuotient, Error, QSeries};

/// Exact q-series computations for umbral moonshine.
#[derive(Parser)]
#[command(name = "mockjac", version)]
struct Cli {
    /// Ingested coefficient data (CSV)
    #[arg(long, global = true, env = "MOCKJAC_DATA")]
    data: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Human,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Print exponent/coefficient pairs of a series
    Expand {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 100)]
        order: i64,
    },
    /// Run a verification suite
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        #[arg(long)]
        order: Option<i64>,
    },
    /// Fit a twisted Borcherds product as a rational function of T
    Fit {
        #[arg(long)]
        lambency: String,
        #[arg(long = "D", allow_negative_numbers = true)]
        d: i64,
        #[arg(long, allow_negative_numbers = true)]
        r: i64,
        #[arg(long)]
        max_deg: Option<usize>,
    },
    /// Validate an ingestion file and summarize its tables
    Ingest { file: PathBuf },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Target {
    /// Eta quotient such as "1^24/2^24"
    #[arg(long)]
    eta: Option<String>,
    /// Principal modulus of a lambency such as "6+2"
    #[arg(long)]
    lambency: Option<String>,
    /// Eulerian series such as "3:psi"
    #[arg(long)]
    eulerian: Option<String>,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Input errors exit with 2, everything else with 1.
fn exit_for(e: &Error) -> ExitCode {
    match e {
        Error::ParseError { .. }
        | Error::CongruenceViolation { .. }
        | Error::DuplicateRecord { .. }
        | Error::UnknownLambency(_)
        | Error::UnknownName(_) => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn print_series(s: &QSeries) {
    for (x, c) in s.terms() {
        println!("{} {c}", fmt_exp(x));
    }
}

fn load_data(cli: &Cli) -> Result<Option<HData>, Error> {
    cli.data.as_deref().map(ingest_hdata).transpose()
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.cmd {
        Command::Expand { target: a, order } => {
            let s = if let Some(e) = &a.eta {
                eta_expand(&e.parse::<EtaQuotient>()?, *order)
            } else if let Some(l) = &a.lambency {
                eta_expand(&lookup(l)?.eta, *order)
            } else {
                eulerian(a.eulerian.as_deref().unwrap_or_default(), *order)?
            };
            print_series(&s);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, order } => {
            let h = load_data(cli)?;
            let start = Instant::now();
            let rep = run_suite(*suite, *order, h.as_ref());
            match cli.format {
                Format::Human => {
                    print!("{}", rep.render_human());
                    println!("wall time {:.2}s", start.elapsed().as_secs_f64());
                }
                Format::Records => print!("{}", rep.render_records()),
            }
            Ok(if rep.ok() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Fit {
            lambency,
            d,
            r,
            max_deg,
        } => {
            let l = lookup(lambency)?;
            check_discriminant(l.m, *d)?;
            let h = load_data(cli)?;
            let t = l
                .fixture
                .as_ref()
                .or_else(|| h.as_ref().and_then(|h| h.get(&l.symbol, "1A")))
                .ok_or_else(|| Error::MissingSource(format!("no table for {}", l.symbol)))?;
            let c = borcherds_case(l, t, *d, *r, *max_deg)?;
            let join = |v: &[mockjac::CycNum]| {
                v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
            };
            match cli.format {
                Format::Human => {
                    println!("lambency {} D={} r={}", c.lambency, c.d, c.r);
                    println!("window   q^{} (degree bound {})", c.window, c.degree_bound);
                    println!("degree   {}", c.fit.degree);
                    println!("field    {}", c.fit.field);
                    println!("P        [{}]", join(&c.fit.p));
                    println!("Q        [{}]", join(&c.fit.q));
                    println!(
                        "residual 0 on {} surplus coefficients ({} used)",
                        c.fit.surplus, c.fit.used
                    );
                }
                Format::Records => {
                    let rec = serde_json::json!({
                        "lambency": c.lambency,
                        "D": c.d,
                        "r": c.r,
                        "window": c.window,
                        "degree_bound": c.degree_bound,
                        "degree": c.fit.degree,
                        "field": c.fit.field,
                        "P": c.fit.p.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        "Q": c.fit.q.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        "used": c.fit.used,
                        "surplus": c.fit.surplus,
                    });
                    println!("{rec}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Ingest { file } => {
            let h = ingest_hdata(file)?;
            println!("provenance {}", h.provenance);
            for ((l, class), t) in &h.tables {
                let residues = t.known_residues().count();
                let records = t.fundamental_entries().count();
                println!("{l} {class}: {residues} residues, {records} nonzero coefficients");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    }
}
