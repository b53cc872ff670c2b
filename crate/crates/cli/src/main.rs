//! `hyperop`: enumeration, composition, reduction, differentials,
//! cohomology, series tables and the verification suite.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use hyperop_core::cohomology::CochainComplex;
use hyperop_core::differential::{differential_lin, Convention};
use hyperop_core::oeis;
use hyperop_core::verify::{verify, Status, VerifyConfig};
use hyperop_core::{compose_lin, compose_reduced, enumerate, insert_labeled, reduce, Family, HyperForest, LinComb, Signs};
use hyperop_series::{hilbert, SeriesId};
use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "hyperop", version, about = "Workbench for operads of rooted trees and hypertrees")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the canonical elements of a family in one arity.
    Enumerate {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        arity: usize,
    },
    /// Partial composition `S o_i T`.
    ///
    /// With labels `1..n` and `1..m` the standard relabeling is used;
    /// otherwise the label sets must be disjoint apart from `i`.
    Compose {
        #[arg(long, default_value = "FG")]
        family: Family,
        #[arg(long)]
        signs: bool,
        s: String,
        i: u32,
        t: String,
    },
    /// Normal form of a sum of forests under the rewriting system.
    Reduce {
        #[arg(long)]
        signs: bool,
        #[arg(required = true)]
        forests: Vec<String>,
    },
    /// The differential of a sum of forests.
    Diff {
        #[arg(long, default_value = "dgComGreg")]
        convention: Convention,
        #[arg(required = true)]
        forests: Vec<String>,
    },
    /// Dimensions and Betti numbers of one arity.
    Cohomology {
        #[arg(long)]
        arity: usize,
        #[arg(long, default_value = "dgComGreg")]
        convention: Convention,
        /// Write the matrices as `row col numerator denominator` triplets.
        #[arg(long)]
        dump_matrices: Option<PathBuf>,
    },
    /// Coefficients `n! [t^n]` of a Hilbert series, or OEIS comparisons.
    Series {
        /// One of RT, Greg, FH, FG, FRG, ComPreLie, ComPreLie_dual, ComGreg,
        /// ComGreg_dual, FMan.
        #[arg(long, default_value = "FH")]
        family: String,
        #[arg(long, default_value_t = 6)]
        order: usize,
        /// Compare enumeration counts with b-files instead.
        #[arg(long)]
        oeis: bool,
        /// Directory of `bNNNNNN.txt` files.
        #[arg(long)]
        bfile: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        max_arity: usize,
    },
    /// Run the full verification suite.
    Verify {
        #[arg(long, default_value_t = 6)]
        max_arity: usize,
        #[arg(long, default_value_t = 20231)]
        seed: u64,
        #[arg(long)]
        bfile: Option<PathBuf>,
        /// Fail when the b-file comparisons cannot run.
        #[arg(long)]
        oeis: bool,
    },
}

enum Failure {
    Usage(String),
    Check(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn parse(s: &str) -> Result<HyperForest, Failure> {
    HyperForest::parse_labeled(s).map_err(|e| Failure::Usage(format!("`{s}`: {e}")))
}

fn standard(f: &HyperForest) -> bool {
    let mut ls = f.labels();
    ls.sort_unstable();
    ls.iter().copied().eq(1..=f.arity() as u32)
}

fn sum(forests: &[String], family: Family) -> Result<LinComb, Failure> {
    let mut v = LinComb::zero();
    for s in forests {
        let f = parse(s)?;
        if !family.admits(&f) {
            return Err(Failure::Usage(format!("`{s}` is not in {family}")));
        }
        v = &v + &LinComb::from_forest(f);
    }
    Ok(v)
}

fn signs(on: bool) -> Signs {
    if on {
        Signs::Koszul
    } else {
        Signs::Ignore
    }
}

fn print_lincomb(v: &LinComb, format: Format) {
    match format {
        Format::Text => println!("{v}"),
        Format::Json => {
            let terms: Vec<_> = v.iter().map(|(f, c)| json!({"forest": f.to_string(), "coeff": c.to_string()})).collect();
            println!("{}", json!({"result": v.to_string(), "terms": terms}));
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let format = cli.format;
    match cli.command {
        Command::Enumerate { family, arity } => {
            let all = enumerate(family, arity)?;
            match format {
                Format::Text => all.iter().for_each(|f| println!("{f}")),
                Format::Json => {
                    let items: Vec<String> = all.iter().map(ToString::to_string).collect();
                    println!("{}", json!({"family": family.name(), "arity": arity, "count": all.len(), "elements": items}));
                }
            }
        }
        Command::Compose { family, signs: on, s, i, t } => {
            let (a, b) = (parse(&s)?, parse(&t)?);
            for (text, f) in [(&s, &a), (&t, &b)] {
                if !family.admits(f) {
                    return Err(Failure::Usage(format!("`{text}` is not in {family}")));
                }
            }
            let v = if standard(&a) && standard(&b) {
                let (a, b) = (LinComb::from_forest(a), LinComb::from_forest(b));
                if family == Family::FRG {
                    compose_reduced(&a, i, &b, signs(on))?
                } else {
                    compose_lin(&a, i, &b, signs(on))?
                }
            } else {
                let v = insert_labeled(&a, i, &b, signs(on))?;
                if family == Family::FRG {
                    reduce(&v, signs(on))
                } else {
                    v
                }
            };
            print_lincomb(&v, format);
        }
        Command::Reduce { signs: on, forests } => {
            print_lincomb(&reduce(&sum(&forests, Family::FG)?, signs(on)), format);
        }
        Command::Diff { convention, forests } => {
            let v = sum(&forests, convention.family())?;
            print_lincomb(&differential_lin(&v, convention)?, format);
        }
        Command::Cohomology { arity, convention, dump_matrices } => {
            let start = Instant::now();
            let c = CochainComplex::build(arity, convention)?;
            let (dims, betti) = (c.dims(), c.betti());
            let euler = c.euler_char();
            if let Some(dir) = dump_matrices {
                c.dump_matrices(&dir)?;
            }
            let ms = start.elapsed().as_millis();
            match format {
                Format::Text => {
                    println!("arity {arity}, {convention}");
                    println!("dims  {dims:?}");
                    println!("betti {betti:?}");
                    println!("euler {euler}");
                }
                Format::Json => println!(
                    "{}",
                    json!({"arity": arity, "convention": convention.name(), "dims_per_degree": dims,
                           "betti": betti, "euler_char": euler, "elapsed_ms": ms})
                ),
            }
        }
        Command::Series { family, order, oeis: true, bfile, max_arity } => {
            let _ = (family, order);
            let dir = bfile
                .or_else(oeis::bfile_dir_from_env)
                .ok_or_else(|| Failure::Usage(format!("--oeis needs --bfile or {}", oeis::BFILE_DIR_VAR)))?;
            let (done, missing) = oeis::compare_dir(&dir, max_arity)?;
            let bad: Vec<&str> = done.iter().filter(|c| !c.matched()).map(|c| c.id.as_str()).collect();
            match format {
                Format::Text => {
                    for c in &done {
                        match c.found_at {
                            Some(k) => println!("{} match ({} terms from index {k})", c.id, c.compared),
                            None => println!("{} MISMATCH ({} terms)", c.id, c.compared),
                        }
                    }
                    for id in &missing {
                        println!("{id} missing");
                    }
                }
                Format::Json => println!("{}", json!({"compared": done, "missing": missing})),
            }
            if !bad.is_empty() {
                return Err(Failure::Check(format!("no match for {}", bad.join(", "))));
            }
        }
        Command::Series { family, order, .. } => {
            let id: SeriesId = family.parse()?;
            let s = hilbert(id, order)?;
            let coeffs: Vec<String> = (0..=order).map(|n| s.egf_coeff(n).to_string()).collect();
            match format {
                Format::Text => {
                    for (n, c) in coeffs.iter().enumerate().skip(1) {
                        println!("{n}\t{c}");
                    }
                }
                Format::Json => println!("{}", json!({"series": id.name(), "order": order, "egf_coefficients": coeffs})),
            }
        }
        Command::Verify { max_arity, seed, bfile, oeis: need_oeis } => {
            let mut cfg = VerifyConfig {
                max_arity,
                seed,
                ..VerifyConfig::default()
            };
            if bfile.is_some() {
                cfg.bfile_dir = bfile;
            }
            let report = verify(&cfg);
            match format {
                Format::Text => {
                    println!("seed {}", report.seed);
                    for c in &report.checks {
                        let tag = match c.status {
                            Status::Pass => "pass",
                            Status::Fail => "FAIL",
                            Status::Skipped => "skip",
                        };
                        println!("{tag:4} {:22} {:>7} ms  {}", c.check_id, c.elapsed_ms, c.details);
                    }
                }
                Format::Json => println!("{}", report.to_json()),
            }
            let failed: Vec<&str> = report
                .checks
                .iter()
                .filter(|c| c.status == Status::Fail || (need_oeis && c.status == Status::Skipped))
                .map(|c| c.check_id.as_str())
                .collect();
            if !failed.is_empty() {
                return Err(Failure::Check(format!("failed: {}", failed.join(", "))));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
    }
}
