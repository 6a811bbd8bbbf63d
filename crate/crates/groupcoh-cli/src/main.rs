//! Batch command line tool over the groupcoh library.
//!
//! Groups come from the built-in catalog (`--id`), a catalog file
//! (`--catalog` with `--id`), or inline cycle notation (`--group
//! "degree:(..); (..)"`).  Every subcommand prints one deterministic
//! report; exit codes are 0 for success, 1 for an invariant violation,
//! 2 for bad input, and 3 for an exceeded cap.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use groupcoh::algebra::GroupAlgebra;
use groupcoh::blocks::block_decomposition;
use groupcoh::catalog::{self, CatalogEntry};
use groupcoh::error::Error;
use groupcoh::ext::tate_cohomology;
use groupcoh::field::Fq;
use groupcoh::fixture::standard_module;
use groupcoh::group::PermGroup;
use groupcoh::nucleus::{classify, nucleus};
use groupcoh::report::{
    blocks_section, classify_section, group_section, nucleus_section, primes_dividing,
    window_section, Format, Report, Section,
};
use groupcoh::verify::invariant_suite;

#[derive(Parser)]
#[command(
    name = "groupcoh",
    version,
    about = "Exact Tate cohomology, blocks, and nucleus classification of small finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GroupArgs {
    /// Inline group `degree:generators`, cycles separated by `;`
    #[arg(long, conflicts_with = "id")]
    group: Option<String>,

    /// Catalog file replacing the built-in catalog
    #[arg(long)]
    catalog: Option<PathBuf>,

    /// Catalog entry id, for example S3 or C2xA4
    #[arg(long)]
    id: Option<String>,
}

#[derive(Args)]
struct ComputeArgs {
    /// Coefficient characteristic
    #[arg(long)]
    prime: u32,

    /// Coefficient field degree over the prime field
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=2))]
    field_ext: u32,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Bound on any resolution term dimension
    #[arg(long, default_value_t = 1 << 14)]
    size_cap: u64,
}

#[derive(Clone, Copy, Debug)]
struct Window {
    lo: i64,
    hi: i64,
}

impl FromStr for Window {
    type Err = String;

    fn from_str(s: &str) -> Result<Window, String> {
        let (lo, hi) = s.split_once(':').ok_or("window must be written lo:hi")?;
        let lo: i64 = lo.trim().parse().map_err(|_| "bad window start")?;
        let hi: i64 = hi.trim().parse().map_err(|_| "bad window end")?;
        if lo > hi {
            return Err(format!("window [{lo}, {hi}] is empty"));
        }
        Ok(Window { lo, hi })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Order, conjugacy classes, Sylow subgroups, p-nilpotency
    Info {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value = "table")]
        format: Format,
    },
    /// Block decomposition of the group algebra
    Blocks {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        compute: ComputeArgs,
        #[arg(long, default_value = "table")]
        format: Format,
    },
    /// Tate cohomology window of a named module
    Tate {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        compute: ComputeArgs,
        /// k, regular, permutation, omega:n, cosets:p, simple:i, pim:i, random:d
        #[arg(long, default_value = "k")]
        module: String,
        #[arg(long, default_value = "-4:4", allow_hyphen_values = true)]
        window: Window,
        #[arg(long, default_value = "table")]
        format: Format,
    },
    /// The nucleus on the poset of elementary abelian subgroups
    Nucleus {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        prime: u32,
        #[arg(long, default_value = "table")]
        format: Format,
    },
    /// Conjecture verdicts for one group and prime
    Classify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        prime: u32,
        #[arg(long, default_value = "table")]
        format: Format,
    },
    /// Classify every catalog entry at every prime dividing its order
    Scan {
        /// Catalog file replacing the built-in catalog
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Skip entries above this order
        #[arg(long)]
        max_order: Option<u64>,
        #[arg(long, default_value = "table")]
        format: Format,
    },
    /// Run the invariant suite; nonzero exit on any violation
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        /// Restrict to one prime (default: every prime dividing the order)
        #[arg(long)]
        prime: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Bound on the parameter-system search degree
        #[arg(long, default_value_t = 6)]
        degree_cap: usize,
        #[arg(long, default_value_t = 1 << 14)]
        size_cap: u64,
        #[arg(long, default_value = "table")]
        format: Format,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(clean) => {
            if clean {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(match e {
                Error::Input(_) => 2,
                Error::Cap { .. } => 3,
                Error::Internal(_) => 1,
            })
        }
    }
}

fn load_catalog(path: &Option<PathBuf>) -> groupcoh::Result<Vec<CatalogEntry>> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| {
                Error::input(format!("cannot read catalog {}: {e}", p.display()))
            })?;
            catalog::parse_catalog(&text)
        }
        None => catalog::builtin(),
    }
}

fn resolve_group(args: &GroupArgs) -> groupcoh::Result<(String, PermGroup)> {
    if let Some(spec) = &args.group {
        let (degree, gens) = spec
            .split_once(':')
            .ok_or_else(|| Error::input("inline groups are written degree:generators"))?;
        let degree: usize = degree
            .trim()
            .parse()
            .map_err(|_| Error::input(format!("bad degree in inline group `{spec}`")))?;
        let gens: Vec<&str> =
            gens.split(';').map(str::trim).filter(|g| !g.is_empty()).collect();
        return Ok((spec.clone(), PermGroup::parse(degree, &gens)?));
    }
    if let Some(id) = &args.id {
        let entries = load_catalog(&args.catalog)?;
        let entry = catalog::find(&entries, id)?;
        return Ok((entry.id.clone(), entry.group()?));
    }
    Err(Error::input("give a group with --id or --group"))
}

fn coefficient_field(compute: &ComputeArgs) -> groupcoh::Result<Fq> {
    if compute.field_ext == 1 {
        Fq::prime(compute.prime)
    } else {
        Fq::quadratic(compute.prime)
    }
}

fn emit(report: &Report, format: Format) {
    print!("{}", report.render(format));
}

fn run(cli: Cli) -> groupcoh::Result<bool> {
    match cli.command {
        Command::Info { group, format } => {
            let (id, g) = resolve_group(&group)?;
            let mut report = Report::new();
            report.meta("group", &id);
            report.push(group_section(&id, &g));
            emit(&report, format);
        }
        Command::Blocks { group, compute, format } => {
            let (id, g) = resolve_group(&group)?;
            let field = coefficient_field(&compute)?;
            let alg = GroupAlgebra::new(g, field)?;
            let blocks = block_decomposition(&alg)?;
            let mut report = Report::new();
            report.meta("group", &id);
            report.meta("field", field);
            report.push(blocks_section(&alg, &blocks)?);
            emit(&report, format);
        }
        Command::Tate { group, compute, module, window, format } => {
            let (id, g) = resolve_group(&group)?;
            let field = coefficient_field(&compute)?;
            let alg = GroupAlgebra::new(g, field)?;
            let m = standard_module(&alg, &module, compute.seed, compute.size_cap)?;
            let w = tate_cohomology(&alg, &m, window.lo, window.hi, compute.seed, compute.size_cap)?;
            let mut report = Report::new();
            report.meta("group", &id);
            report.meta("field", field);
            report.meta("seed", compute.seed);
            report.push(window_section(&module, field, &w));
            emit(&report, format);
        }
        Command::Nucleus { group, prime, format } => {
            let (id, g) = resolve_group(&group)?;
            let mut report = Report::new();
            report.meta("group", &id);
            report.meta("prime", prime);
            report.push(nucleus_section(&nucleus(&g, prime)?));
            emit(&report, format);
        }
        Command::Classify { group, prime, format } => {
            let (id, g) = resolve_group(&group)?;
            let status = classify(&g, prime)?;
            let mut report = Report::new();
            report.meta("group", &id);
            report.meta("prime", prime);
            report.push(classify_section(&id, &status));
            report.push(nucleus_section(&nucleus(&g, prime)?));
            emit(&report, format);
        }
        Command::Scan { catalog, max_order, format } => {
            let entries = load_catalog(&catalog)?;
            let mut report = Report::new();
            if let Some(n) = max_order {
                report.meta("max order", n);
            }
            let mut section = Section::new("scan");
            let mut scanned = 0usize;
            for entry in &entries {
                let g = entry.group()?;
                if max_order.is_some_and(|n| g.order() > n) {
                    continue;
                }
                scanned += 1;
                for p in primes_dividing(g.order()) {
                    let status = classify(&g, p)?;
                    let class = nucleus(&g, p)?.classification;
                    section.row(
                        format!("{} p={p}", entry.id),
                        format!("{class}; C1-C8 {}", status.verdicts[0]),
                    );
                }
            }
            report.meta("entries scanned", scanned);
            report.push(section);
            emit(&report, format);
        }
        Command::Verify { group, prime, seed, degree_cap, size_cap, format } => {
            let targets: Vec<(String, PermGroup)> =
                if group.id.is_some() || group.group.is_some() {
                    vec![resolve_group(&group)?]
                } else {
                    let entries = load_catalog(&group.catalog)?;
                    ["S3", "C4", "C2xC2", "A4"]
                        .iter()
                        .map(|id| {
                            let entry = catalog::find(&entries, id)?;
                            Ok((entry.id.clone(), entry.group()?))
                        })
                        .collect::<groupcoh::Result<_>>()?
                };
            let mut report = Report::new();
            report.meta("seed", seed);
            let mut clean = true;
            for (id, g) in &targets {
                let primes = match prime {
                    Some(p) => vec![p],
                    None => primes_dividing(g.order()),
                };
                for p in primes {
                    let outcome = invariant_suite(id, g, p, seed, degree_cap, size_cap)?;
                    clean &= outcome.all_passed();
                    report.push(outcome.section());
                }
            }
            report.meta("violations", if clean { "none" } else { "present" });
            emit(&report, format);
            return Ok(clean);
        }
    }
    Ok(true)
}
