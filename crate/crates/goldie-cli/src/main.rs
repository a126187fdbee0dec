//! Command-line surface for exact Goldie rank computation.
//!
//! Exit codes: 0 success, 2 validation error, 3 spanning-assumption
//! violation, 4 inconclusive oracle.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use goldie_cli::{instance, report, CliError};
use goldie_core::analysis::{analyze, goldie_family, goldie_rank};
use goldie_core::closure::{closure_inclusion, region_closure};
use goldie_core::oracle::oracle_component_count;
use goldie_core::rat::int;
use goldie_core::weyl::{format_element, parse_expression, WeylAlgebra, WeylElement};

#[derive(Parser)]
#[command(
    name = "goldie",
    version,
    about = "Exact Goldie ranks of primitive quotients via lattice point counting"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full region analysis: partition, signs, spanning check, components
    Analyze {
        file: PathBuf,
        /// Emit the report as JSON
        #[arg(long)]
        json: bool,
        /// Also list the component representatives
        #[arg(long)]
        dset: bool,
    },
    /// Goldie rank of the instance
    Rank {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Quasi-polynomial of the dilation family over x = 1..=xmax
    Family {
        file: PathBuf,
        #[arg(long)]
        xmax: u64,
        /// Cross-check every admissible row against the rebuilt dilated
        /// instance
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Brute-force component count over a radius schedule
    Oracle {
        file: PathBuf,
        /// Comma-separated increasing radii, e.g. 10,15
        #[arg(long)]
        radius: String,
        #[arg(long)]
        json: bool,
    },
    /// Normal-ordering checks and expression normalization
    WeylCheck {
        /// Number of variables
        #[arg(long)]
        n: usize,
        /// Number of non-inverted variables
        #[arg(long)]
        r: usize,
        /// Sweep all weights in [-box, box]^n through the torus-action check
        #[arg(long = "box")]
        box_radius: Option<i64>,
        /// Normalize one expression in the textual monomial syntax
        #[arg(long)]
        expr: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Closure inclusion between two instances on one arrangement
    Include {
        file_a: PathBuf,
        file_b: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn emit<T: serde::Serialize>(json: bool, value: &T, human: String) -> Result<(), CliError> {
    if json {
        let text = serde_json::to_string(value)
            .map_err(|e| CliError::validation(format!("serialization failed: {e}")))?;
        println!("{text}");
    } else {
        print!("{human}");
    }
    Ok(())
}

fn run(cmd: Cmd) -> Result<ExitCode, CliError> {
    match cmd {
        Cmd::Analyze { file, json, dset } => {
            let inst = instance::load(&file)?;
            let alpha = instance::require_alpha(&inst)?;
            let a = analyze(&inst.spec, alpha)?;
            let rep = report::analysis_report(&inst.spec, alpha, &a, dset);
            emit(json, &rep, report::render_analysis(&rep))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Rank { file, json } => {
            let inst = instance::load(&file)?;
            let alpha = instance::require_alpha(&inst)?;
            let rank = goldie_rank(&inst.spec, alpha)?;
            let rep = report::RankReport {
                instance: instance::echo(&inst.spec, alpha),
                goldie_rank: rank,
            };
            emit(json, &rep, format!("{rank}\n"))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Family {
            file,
            xmax,
            verify,
            json,
        } => {
            if xmax == 0 {
                return Err(CliError::validation("xmax must be at least 1".into()));
            }
            let inst = instance::load(&file)?;
            let alpha = instance::require_alpha(&inst)?;
            let fam = goldie_family(&inst.spec, alpha, xmax, verify)?;
            let rep = report::family_report(&inst.spec, &fam);
            emit(json, &rep, report::render_family(&rep))?;
            if verify {
                let mismatch = fam.rows.iter().any(|r| {
                    r.admissible
                        && r.predicted.is_some()
                        && r.direct.is_some()
                        && r.predicted != r.direct
                });
                if mismatch {
                    return Err(CliError::validation(
                        "verification failed: quasi-polynomial disagrees with direct counts"
                            .into(),
                    ));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Oracle { file, radius, json } => {
            let schedule: Vec<u32> = radius
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| CliError::validation(format!("bad radius {t:?}")))
                })
                .collect::<Result<_, _>>()?;
            let inst = instance::load(&file)?;
            let alpha = instance::require_alpha(&inst)?;
            let res = oracle_component_count(&inst.spec, alpha, &schedule)?;
            let rep = report::oracle_report(&inst.spec, alpha, &res);
            emit(json, &rep, report::render_oracle(&rep))?;
            if !res.stabilized {
                eprintln!("oracle did not stabilize over the given schedule");
                return Ok(ExitCode::from(4));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::WeylCheck {
            n,
            r,
            box_radius,
            expr,
            json,
        } => {
            let alg = WeylAlgebra::new(n, r)?;
            let mut rep = report::WeylCheckReport {
                n,
                r,
                box_radius,
                weights_checked: None,
                normal_form: None,
                ok: true,
            };
            let mut human = String::new();
            if let Some(text) = &expr {
                let terms = parse_expression(text)?;
                let element = alg.normalize_sum(&terms)?;
                let rendered = format_element(&element);
                human += &format!("normal form: {rendered}\n");
                rep.normal_form = Some(rendered);
            }
            if let Some(b) = box_radius {
                if b < 0 {
                    return Err(CliError::validation("box must be nonnegative".into()));
                }
                let side = 2 * b as u128 + 1;
                let total = side.checked_pow(n as u32).unwrap_or(u128::MAX);
                if total > 200_000 {
                    return Err(CliError::validation(
                        "weight sweep too large; lower --box or --n".into(),
                    ));
                }
                let checked = sweep_torus_action(&alg, b)?;
                rep.weights_checked = Some(checked);
                human += &format!("checked {checked} weights: torus action exact\n");
            }
            if expr.is_none() && box_radius.is_none() {
                return Err(CliError::validation(
                    "nothing to do: pass --expr and/or --box".into(),
                ));
            }
            emit(json, &rep, human)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Include { file_a, file_b, json } => {
            let a = instance::load(&file_a)?;
            let b = instance::load(&file_b)?;
            let alpha_a = instance::require_alpha(&a)?;
            let alpha_b = instance::require_alpha(&b)?;
            if a.spec != b.spec {
                return Err(CliError::validation(
                    "instances disagree on the arrangement or character".into(),
                ));
            }
            let rc_a = region_closure(&a.spec, alpha_a)?;
            let rc_b = region_closure(&b.spec, alpha_b)?;
            let forward = closure_inclusion(&a.spec, &rc_a, &b.spec, &rc_b)?;
            let reverse = closure_inclusion(&b.spec, &rc_b, &a.spec, &rc_a)?;
            let rep = report::IncludeReport { forward, reverse };
            let human = format!(
                "closure(A) within closure(B): {forward}\nclosure(B) within closure(A): {reverse}\n"
            );
            emit(json, &rep, human)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Exhaustive torus-action check: the commutator of each diagonal generator
/// with each weight monomial in the box must be the weight-scaled monomial;
/// inverses of inverted variables must cancel.
fn sweep_torus_action(alg: &WeylAlgebra, b: i64) -> Result<usize, CliError> {
    let n = alg.n;
    let mut weights: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &weights {
            for v in -b..=b {
                let mut w2 = w.clone();
                w2.push(v);
                next.push(w2);
            }
        }
        weights = next;
    }
    for alpha in &weights {
        let monomial = alg.weight_monomial(alpha)?;
        let element = WeylElement::from_monomial(monomial);
        for i in 0..n {
            let lhs = alg.commutator(&alg.pi(i), &element);
            let rhs = element.scale(&int(alpha[i]));
            if lhs != rhs {
                return Err(CliError::validation(format!(
                    "torus action failed at weight {alpha:?}, index {}",
                    i + 1
                )));
            }
        }
    }
    for i in alg.r..alg.n {
        let prod = alg.normalize(
            int(1),
            &[
                goldie_core::weyl::GenPower::X { index: i, power: 1 },
                goldie_core::weyl::GenPower::X { index: i, power: -1 },
            ],
        )?;
        if prod != alg.one() {
            return Err(CliError::validation(format!(
                "x{} times its inverse failed to cancel",
                i + 1
            )));
        }
    }
    Ok(weights.len())
}
