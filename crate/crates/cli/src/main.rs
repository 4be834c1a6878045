use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use mgbar_core::acceptance::criteria;
use mgbar_core::divisor::divisor_monomials;
use mgbar_core::tau::format_tau_table;
use mgbar_core::{cache, format_rational, parse, Engine, Error, Space};

#[derive(Parser)]
#[command(name = "mgbar", version, about = "Exact intersection numbers on moduli spaces of curves")]
struct Cli {
    /// Memo cache file, loaded before and written after the command
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    /// Worker threads for independent top-level evaluations
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate monomials such as "M(4,0): d_irr^9", one result per line
    Eval {
        #[arg(required = true)]
        exprs: Vec<String>,
    },
    /// Every monomial of one degree in the divisor classes of a space
    Table {
        /// genus and number of points, e.g. 3,0
        #[arg(long, value_parser = parse_space)]
        space: Space,
        /// defaults to the dimension of the space
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Psi intersection numbers with all exponents at least 2
    Tau {
        #[arg(long)]
        gmax: u32,
    },
    /// Projection of the Jacobian locus to the lambda ring
    Jacobian {
        #[arg(long)]
        genus: u32,
    },
    /// Run the built-in acceptance checks
    Selftest,
}

fn parse_space(s: &str) -> Result<Space, String> {
    let (g, n) = s.split_once(',').ok_or("expected g,n")?;
    let g = g.trim().parse().map_err(|_| format!("bad genus '{g}'"))?;
    let n = n.trim().parse().map_err(|_| format!("bad point count '{n}'"))?;
    Space::new(g, n).map_err(|e| e.to_string())
}

fn run(cli: &Cli, engine: &Engine) -> Result<bool, Error> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    match &cli.command {
        Command::Eval { exprs } => {
            let parsed = exprs.iter().map(|t| parse(t)).collect::<Result<Vec<_>, _>>()?;
            for p in &parsed {
                let m = p.monomial();
                if m.degree() != m.space().dim() {
                    eprintln!(
                        "warning: '{p}' has degree {} but {} has dimension {}; the value is 0",
                        m.degree(),
                        m.space(),
                        m.space().dim()
                    );
                }
            }
            let values: Vec<_> =
                pool.install(|| parsed.par_iter().map(|p| engine.evaluate(p.monomial())).collect());
            for v in values {
                println!("{}", format_rational(&v));
            }
        }
        Command::Table { space, degree } => {
            let d = degree.unwrap_or(space.dim());
            if d != space.dim() {
                eprintln!("warning: degree {d} differs from the dimension {}; all values are 0", space.dim());
            }
            let monos = divisor_monomials(*space, d);
            let values: Vec<_> =
                pool.install(|| monos.par_iter().map(|m| engine.evaluate(m)).collect());
            for (m, v) in monos.iter().zip(values) {
                println!("{m}\t{}", format_rational(&v));
            }
        }
        Command::Tau { gmax } => {
            print!("{}", format_tau_table(&engine.export_tau_table(*gmax)?));
        }
        Command::Jacobian { genus } => {
            println!("{}", engine.jacobian_class(*genus)?);
        }
        Command::Selftest => {
            let mut ok = true;
            for c in criteria() {
                match (c.check)(engine) {
                    Ok(()) => println!("PASS  criterion {:>2}: {}", c.id, c.title),
                    Err(msg) => {
                        ok = false;
                        println!("FAIL  criterion {:>2}: {}: {msg}", c.id, c.title);
                    }
                }
            }
            return Ok(ok);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let engine = Engine::new();
    if let Some(path) = &cli.cache {
        if let Err(e) = cache::load(&engine, path) {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    let outcome = run(&cli, &engine);
    if let Some(path) = &cli.cache {
        if let Err(e) = cache::save(&engine, path) {
            eprintln!("error: could not write cache: {e}");
            return ExitCode::FAILURE;
        }
    }
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
