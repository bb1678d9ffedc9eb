use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use stairgf::polygons::{enumerate_punctured, enumerate_staircase, enumerate_three_choice, Convention, CountTable};
use stairgf::special::{catalog, Builder};
use stairgf::verify::DEFAULT_ORDER;
use stairgf::{FixtureSet, LaurentSeries, Verifier, VerifyError};

const OK: u8 = 0;
const FAILED: u8 = 1;
const USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "stairgf", version, about = "Exact checks on staircase-type polygon generating functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a named series
    Series {
        /// Catalog name, e.g. P_P
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        /// Coefficients below x^order are printed
        #[arg(long, default_value_t = DEFAULT_ORDER, value_parser = clap::value_parser!(i64).range(1..))]
        order: i64,
        /// List the catalog instead
        #[arg(long, conflicts_with = "name")]
        list: bool,
    },
    /// Run one check, or `all`
    Check {
        id: String,
        #[arg(long, default_value_t = DEFAULT_ORDER, value_parser = clap::value_parser!(i64).range(1..))]
        order: i64,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
        /// Run checks concurrently; reports keep catalog order
        #[arg(long)]
        parallel: bool,
    },
    /// Brute-force polygon counts by half-perimeter
    Enumerate {
        #[arg(value_enum)]
        class: Class,
        #[arg(long)]
        max: u32,
        /// Three-choice counting convention
        #[arg(long, value_enum, default_value_t = ConventionArg::Default)]
        convention: ConventionArg,
    },
    /// Inspect the embedded fixtures
    Fixtures {
        #[arg(long, conflicts_with = "dump")]
        list: bool,
        /// Print one fixture, parsed
        #[arg(long, value_name = "NAME")]
        dump: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Text,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum Class {
    Staircase,
    Punctured,
    ThreeChoice,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Default,
    Strict,
    Polygons,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Default => Convention::default(),
            ConventionArg::Strict => Convention::strict(),
            ConventionArg::Polygons => Convention::polygons(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(match cli.command {
        Command::Series { list: true, .. } => list_series(),
        Command::Series { name, order, .. } => series(name.as_deref().unwrap_or_default(), order),
        Command::Check { id, order, output, parallel } => check(&id, order, output, parallel),
        Command::Enumerate { class, max, convention } => enumerate(class, max, convention.into()),
        Command::Fixtures { dump: Some(name), .. } => dump_fixture(&name),
        Command::Fixtures { .. } => list_fixtures(),
    })
}

fn list_series() -> u8 {
    for (name, recipe) in catalog() {
        println!("{name:<18} {recipe}");
    }
    OK
}

fn series(name: &str, order: i64) -> u8 {
    match Builder::default().build(name, order) {
        Ok(s) => {
            println!("{} = {}", s.name, s.series.render("x"));
            OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            if !catalog().iter().any(|(n, _)| *n == name) {
                eprintln!("available series:");
                for (n, _) in catalog() {
                    eprintln!("  {n}");
                }
                return USAGE;
            }
            FAILED
        }
    }
}

fn check(id: &str, order: i64, output: Output, parallel: bool) -> u8 {
    let v = Verifier::default();
    let reports = if id.eq_ignore_ascii_case("all") {
        v.run_all(order, parallel)
    } else {
        v.run_check(id, order).map(|r| vec![r])
    };
    let reports = match reports {
        Ok(r) => r,
        Err(e @ VerifyError::UnknownCheck { .. }) => {
            eprintln!("error: {e}");
            eprintln!("checks: {}", stairgf::verify::catalog().iter().map(|c| c.0).collect::<Vec<_>>().join(" "));
            return USAGE;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return USAGE;
        }
    };
    for r in &reports {
        match output {
            Output::Text => println!("{r}"),
            Output::Machine => println!("{}", r.to_json()),
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    if let Output::Text = output {
        println!("{} checks, {} passed, {failed} failed", reports.len(), reports.len() - failed);
    }
    if failed == 0 {
        OK
    } else {
        FAILED
    }
}

/// The series each class is compared against, if there is one.
fn reference(class: Class, max: u32) -> Option<LaurentSeries> {
    match class {
        Class::Staircase => Builder::default().get("P_S", max as i64 + 1).ok(),
        Class::Punctured => FixtureSet::embedded().get("P_P_series").ok()?.series().ok(),
        Class::ThreeChoice => FixtureSet::embedded().get("P_T_series").ok()?.series().ok(),
    }
}

fn enumerate(class: Class, max: u32, convention: Convention) -> u8 {
    let table: Result<CountTable, _> = match class {
        Class::Staircase => enumerate_staircase(max),
        Class::Punctured => enumerate_punctured(max),
        Class::ThreeChoice => enumerate_three_choice(max, convention),
    };
    let table = match table {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return USAGE;
        }
    };
    let reference = reference(class, max);
    let mut mismatches = 0;
    for (n, count) in table.iter() {
        let expected = reference.as_ref().filter(|s| (n as i64) < s.trunc()).map(|s| s.coeff(n as i64));
        match expected {
            Some(e) if e.to_string() == count.to_string() => println!("{n} {count} match"),
            Some(e) => {
                mismatches += 1;
                println!("{n} {count} mismatch (expected {e})");
            }
            None => println!("{n} {count}"),
        }
    }
    if mismatches == 0 {
        OK
    } else {
        FAILED
    }
}

fn list_fixtures() -> u8 {
    for f in FixtureSet::embedded().iter() {
        println!("{:<20} {:<13} {}", f.name, f.kind().as_str(), f.source);
    }
    OK
}

fn dump_fixture(name: &str) -> u8 {
    let set = FixtureSet::embedded();
    match set.get(name).and_then(|f| f.render()) {
        Ok(text) => {
            println!("{text}");
            OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            USAGE
        }
    }
}
