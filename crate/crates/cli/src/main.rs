use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use permfact::atlas::groups::build;
use permfact::atlas::spec::GroupSpec;
use permfact::factorization::search_metacyclic_transitive;
use permfact::numtheory::zsigmondy;
use permfact::structure::classes::DEFAULT_SEED;
use permfact::structure::metacyclic::max_metacyclic_order;
use permfact::verifier::recipe::{candidates, Recipe};
use permfact::verifier::suite::{canonicalize, render_records, render_text};
use permfact::verifier::{discover, load_claims, run_suite, SuiteOptions, Summary};

#[derive(Parser)]
#[command(name = "verify", version, about = "Check group factorization claims")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a claims file
    Suite {
        #[arg(long)]
        claims: PathBuf,
        /// table tag (table1, thmHA, ...) or claim id prefix
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// also run claims marked stretch
        #[arg(long)]
        stretch: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// report zero timings so runs can be diffed
        #[arg(long)]
        canonical: bool,
    },
    /// Facts about a single group
    Group {
        #[command(subcommand)]
        what: GroupCmd,
    },
    /// Subgroup searches in a group
    Search {
        #[arg(long)]
        group: String,
        #[arg(long)]
        metacyclic: bool,
        #[arg(long)]
        transitive: bool,
        /// subgroup order, for searches that are not metacyclic
        #[arg(long)]
        order: Option<u128>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Smallest primitive prime divisor of a^m - 1
    Zsigmondy { a: u64, m: u32 },
    /// Find constants that claim files quote
    Discover {
        #[command(subcommand)]
        what: DiscoverCmd,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    Order { spec: String },
}

#[derive(Subcommand)]
enum DiscoverCmd {
    /// a 7-set of M23 with stabilizer 2^4:A7
    Heptad,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> permfact::Result<ExitCode> {
    match cli.cmd {
        Cmd::Suite { claims, filter, jobs, seed, stretch, format, canonical } => {
            let claims = load_claims(&claims)?;
            let mut reports = run_suite(&claims, &SuiteOptions { filter, jobs, seed, stretch })?;
            if canonical {
                canonicalize(&mut reports);
            }
            match format {
                Format::Text => print!("{}", render_text(&reports)),
                Format::Records => print!("{}", render_records(&reports)),
            }
            return Ok(if Summary::of(&reports).ok() { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
        Cmd::Group { what: GroupCmd::Order { spec } } => {
            let g = build(&GroupSpec::parse(&spec)?)?.group;
            println!("{}", g.order());
        }
        Cmd::Search { group, metacyclic, transitive, order, seed } => {
            let built = build(&GroupSpec::parse(&group)?)?;
            let g = &built.group;
            match (metacyclic, transitive, order) {
                (true, true, None) => {
                    let (found, exact) = search_metacyclic_transitive(g, seed)?;
                    for (f, s) in &found {
                        println!("order {:>6}  C{} . C{}  {}", f.group.order(), f.witness.c_order, f.witness.quotient_order, s);
                    }
                    println!("{} classes{}", found.len(), if exact { "" } else { " (deduplication partial)" });
                }
                (true, false, None) => {
                    let (m, w) = max_metacyclic_order(g, seed)?;
                    println!("largest metacyclic subgroup: order {m} = {} * {}", w.c_order, w.quotient_order);
                    println!("c = {}\nb = {}", w.c, w.b);
                }
                (_, _, Some(n)) => {
                    let mut text = format!("search(order={n}");
                    if transitive {
                        text.push_str(", transitive");
                    }
                    if metacyclic {
                        text.push_str(", metacyclic");
                    }
                    text.push(')');
                    let recipe = Recipe::parse(&text)?;
                    let mut count = 0usize;
                    candidates(&built, &recipe, seed, &mut |h| {
                        count += 1;
                        let gens: Vec<String> = h.gens().iter().map(|p| p.to_string()).collect();
                        println!("{}", gens.join(", "));
                        count < 20
                    })?;
                    println!("{count} shown");
                }
                (false, _, None) => {
                    return Err(permfact::Error::InvalidArgument("give --metacyclic or --order".into()));
                }
            }
        }
        Cmd::Zsigmondy { a, m } => match zsigmondy(a, m) {
            Some(r) => println!("{r}"),
            None => println!("none (Zsigmondy exception)"),
        },
        Cmd::Discover { what: DiscoverCmd::Heptad } => {
            let h = discover::heptad()?;
            let pts: Vec<String> = h.iter().map(|x| x.to_string()).collect();
            println!("set_stab([{}])", pts.join(","));
        }
    }
    Ok(ExitCode::SUCCESS)
}
