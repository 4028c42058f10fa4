//! Command-line surface: check one group, inspect witnesses and the star
//! property, sweep families, and cross-check the default catalog.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use selfnorm_cli::run::{self, OutputFormat, RunConfig};
use selfnorm_cli::sweep;
use selfnorm_core::lattice::LatticeBudget;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "selfnorm",
    version,
    about = "Decides whether every non-nilpotent subgroup of a finite group is self-normalizing",
    after_help = "Exit codes: 0 member, 1 non-member, 2 refused (budget/disagreement), 3 usage.\n\
                  SELFNORM_BUDGET overrides the default brute-force budget (order cap 2000)."
)]
struct Cli {
    /// Brute-force budget: the largest group order enumerated exactly.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Worker count for sweeps; never changes any output byte except
    /// timings.
    #[arg(long, global = true, default_value_t = 1)]
    parallel: usize,
    /// Certify fingerprint matches with a generator-mapping isomorphism
    /// search (orders up to 200).
    #[arg(long, global = true)]
    slow_iso: bool,
    /// Seed for seeded sampling (sd-random sweeps).
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Run both deciders on one group spec and cross-check them.
    Check {
        /// Group spec: C:n, D:n, Q:8, Dic:n, S:n, A:n, SL:2:q, PSL:2:q,
        /// table:<path>, sd:<path>.
        spec: String,
    },
    /// Brute-force decision only, printing the rejection witness if any.
    Witness { spec: String },
    /// Per-invariant-subgroup star outcomes for a semidirect spec file.
    Star { path: PathBuf },
    /// Sweep a family: D, C, SL2, PSL2 over an inclusive range `a..b`, or
    /// sd-random with --order-max/--count.
    Sweep {
        family: String,
        /// Inclusive parameter range `a..b` (family sweeps).
        range: Option<String>,
        /// Largest base-group order for sd-random.
        #[arg(long, default_value_t = 64)]
        order_max: u64,
        /// Number of sd-random samples.
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// Cross-check the whole default catalog; exits non-zero on any
    /// decider disagreement.
    Crosscheck,
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("range must be a..b, got {s:?}"))?;
    let lo: u32 = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad range start {lo:?}"))?;
    let hi: u32 = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad range end {hi:?}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn budget_from(cli_budget: Option<usize>) -> LatticeBudget {
    let order = cli_budget
        .or_else(|| {
            std::env::var("SELFNORM_BUDGET")
                .ok()
                .and_then(|v| v.parse::<usize>().ok())
        })
        .unwrap_or(LatticeBudget::default().max_order);
    LatticeBudget::with_max_order(order)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig {
        budget: budget_from(cli.budget),
        slow_iso: cli.slow_iso,
        seed: cli.seed,
        parallel: cli.parallel,
        format: match cli.format {
            Format::Text => OutputFormat::Text,
            Format::Json => OutputFormat::Json,
        },
    };

    let code = match &cli.cmd {
        Cmd::Check { spec } => emit(run::run_check(spec, &cfg)),
        Cmd::Witness { spec } => emit(run::run_witness(spec, &cfg)),
        Cmd::Star { path } => emit(run::run_star(path, &cfg)),
        Cmd::Sweep {
            family,
            range,
            order_max,
            count,
        } => {
            if family == "sd-random" {
                let (rows, disagreement) = sweep::sweep_sd_random(*order_max, *count, &cfg);
                print_rows(&rows, cfg.format);
                if disagreement {
                    run::EXIT_REFUSED
                } else {
                    run::EXIT_MEMBER
                }
            } else {
                let Some(range) = range else {
                    eprintln!("error: family sweeps need a range, e.g. `sweep D 3..16`");
                    return ExitCode::from(run::EXIT_USAGE as u8);
                };
                match parse_range(range) {
                    Err(e) => {
                        eprintln!("error: {e}");
                        run::EXIT_USAGE
                    }
                    Ok(r) => match sweep::sweep_family(family, r, &cfg) {
                        Err(e) => {
                            eprintln!("error: {e}");
                            run::EXIT_USAGE
                        }
                        Ok((rows, disagreement)) => {
                            print_rows(&rows, cfg.format);
                            if disagreement {
                                run::EXIT_REFUSED
                            } else {
                                run::EXIT_MEMBER
                            }
                        }
                    },
                }
            }
        }
        Cmd::Crosscheck => {
            let (docs, all_agree) = sweep::crosscheck_catalog(&cfg);
            match cfg.format {
                OutputFormat::Json => {
                    let json = serde_json::to_string_pretty(&docs).expect("reports serialize");
                    println!("{json}");
                }
                OutputFormat::Text => {
                    for d in &docs {
                        let verdicts: Vec<String> = d
                            .verdicts
                            .iter()
                            .map(|v| format!("{}={}", v.decider, v.status))
                            .collect();
                        println!(
                            "{:<12} order {:>5}  {}  agree={}",
                            d.spec,
                            d.order,
                            verdicts.join(" "),
                            match d.agreement {
                                Some(true) => "yes",
                                Some(false) => "NO",
                                None => "-",
                            }
                        );
                    }
                }
            }
            if all_agree {
                run::EXIT_MEMBER
            } else {
                eprintln!("DECIDER DISAGREEMENT in the catalog cross-check");
                run::EXIT_REFUSED
            }
        }
    };
    ExitCode::from(code as u8)
}

fn print_rows(rows: &[sweep::SweepRow], format: OutputFormat) {
    match format {
        OutputFormat::Text => print!("{}", sweep::render_rows(rows)),
        OutputFormat::Json => print!("{}", sweep::rows_to_json(rows)),
    }
}

fn emit(out: run::RunOutput) -> i32 {
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.exit
}
