//! JSON-emitting command-line front end.
//!
//! Exit codes: 0 success, 1 a verified assertion failed (or two computation
//! paths disagreed), 2 unusable input, 3 a resource cap was hit. Output is
//! JSON only — one object per line — with keys in a fixed order and all
//! big integers as decimal strings, so identical invocations produce
//! byte-identical output.

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::json;
use std::str::FromStr;

use crate::congruence::check_congruence;
use crate::groups::{make_group, GroupSpec};
use crate::measure::{
    cyclotomic_resultant, cyclotomic_resultant_checked, measure_by_determinant_capped,
    norm_factorization, two_adic_decomposition, MeasureResult, DEFAULT_GROUP_ORDER_CAP,
};
use crate::poly::{parse_polynomial, poly_terms_json, reduce_mod_ideal};
use crate::search::{lambda_search, verify_witness, SearchConfig};
use crate::verify::{run_claims, VerifyOptions};
use crate::{Error, Result};

#[derive(Parser)]
#[command(
    name = "lindmahler",
    about = "Exact Lind-Mahler measures over finite abelian groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON (accepted for compatibility; JSON is the only format).
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the search.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Seed for randomized subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest group order the dense measure paths accept.
    #[arg(long, global = true, default_value_t = DEFAULT_GROUP_ORDER_CAP)]
    max_group_order: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Measure of one polynomial, with optional factorizations.
    Measure {
        /// Cyclic factor orders, e.g. "2,8".
        #[arg(long)]
        group: String,
        /// Polynomial text, e.g. "y^2+y+1".
        #[arg(long)]
        poly: String,
        /// Include the p-group norm factorization.
        #[arg(long)]
        factors: bool,
        /// Include the Gaussian-integer norm chain (cyclic 2-power groups).
        #[arg(long)]
        two_adic: bool,
    },
    /// Search a coefficient box for the least measure above 1.
    Lambda {
        #[arg(long)]
        group: String,
        /// Coefficient bound c: the box is [-c, c]^|G|.
        #[arg(long, default_value_t = 1)]
        bound: i64,
        /// Box-size refusal threshold.
        #[arg(long)]
        budget: Option<u128>,
        /// Run even when the box exceeds the budget.
        #[arg(long)]
        force: bool,
        /// Disable the orbit-minimality skip test.
        #[arg(long)]
        no_symmetry: bool,
        /// Disable the p-group F(1,...,1) divisibility prune.
        #[arg(long)]
        no_prune: bool,
        /// Report every witness attaining the minimum.
        #[arg(long)]
        all_witnesses: bool,
    },
    /// Check the measure congruence on one polynomial or random trials.
    Congruence {
        #[arg(long)]
        group: String,
        #[arg(long, conflicts_with = "random")]
        poly: Option<String>,
        /// Number of random polynomials to test instead of --poly.
        #[arg(long)]
        random: Option<usize>,
    },
    /// Cyclotomic resultant values |Res(Phi_j, Phi_k)| for k < j <= max.
    ResultantTable {
        #[arg(long, default_value_t = 64)]
        max: u64,
        /// Cross-check the closed form against the generic resultant.
        #[arg(long)]
        check: bool,
    },
    /// Run the self-verification battery.
    Verify {
        /// Only claims whose id starts with this prefix.
        #[arg(long)]
        only: Option<String>,
        /// Trial count for the randomized congruence suite.
        #[arg(long, default_value_t = 500)]
        trials: usize,
        /// Largest cyclotomic index in the resultant table claim.
        #[arg(long, default_value_t = 64)]
        max: u64,
    },
    /// Check |M_G(F)| against an expected value by two independent paths.
    Witness {
        #[arg(long)]
        group: String,
        #[arg(long)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        expected: String,
    },
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::VerificationFailed(_) | Error::NonIntegral(_) => 1,
        Error::ResourceLimit(_) => 3,
        Error::InvalidGroup(_)
        | Error::Parse { .. }
        | Error::NotPGroup(_)
        | Error::InvalidInput(_) => 2,
    }
}

fn parse_group(text: &str) -> Result<GroupSpec> {
    let orders = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidGroup(format!("bad cyclic order {t:?}")))
        })
        .collect::<Result<Vec<u64>>>()?;
    make_group(&orders)
}

fn measure_json(group: &GroupSpec, poly: &str, m: &MeasureResult) -> serde_json::Value {
    json!({
        "group": group.orders(),
        "poly": poly,
        "M": m.m_int.to_string(),
        "log_measure": m.log_measure,
        "method": serde_json::to_value(m.method).expect("method serializes"),
    })
}

fn execute(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Measure { group, poly, factors, two_adic } => {
            let g = parse_group(group)?;
            let f = parse_polynomial(poly, g.num_factors())?;
            let m = measure_by_determinant_capped(&g, &f, cli.max_group_order)?;
            let mut doc = measure_json(&g, poly, &m);
            if *factors {
                let nf = norm_factorization(&g, &f)?;
                let entries: Vec<serde_json::Value> = nf
                    .factors
                    .iter()
                    .map(|(defect, value)| {
                        json!({"defect": defect, "value": value.to_string()})
                    })
                    .collect();
                doc["factors"] = json!(entries);
            }
            if *two_adic {
                let orders = g.orders();
                if orders.len() != 1 || !orders[0].is_power_of_two() || orders[0] < 8 {
                    return Err(Error::InvalidInput(
                        "the norm chain needs a cyclic group of order 2^n, n >= 3".into(),
                    ));
                }
                let td = two_adic_decomposition(orders[0].trailing_zeros(), &f)?;
                let r_factors: Vec<serde_json::Value> = td
                    .r_factors
                    .iter()
                    .map(|r| json!({"r": r.to_string(), "norm": r.norm().to_string()}))
                    .collect();
                doc["two_adic"] = json!({
                    "n0": td.n0.to_string(),
                    "n1": td.n1.to_string(),
                    "n2": td.n2.to_string(),
                    "r_factors": r_factors,
                });
            }
            println!("{doc}");
            Ok(0)
        }
        Command::Lambda { group, bound, budget, force, no_symmetry, no_prune, all_witnesses } => {
            let mut cfg = SearchConfig::new(parse_group(group)?);
            cfg.coeff_bound = *bound;
            cfg.thread_count = cli.threads;
            cfg.symmetry_reduction = !no_symmetry;
            cfg.prune_even_f1 = !no_prune;
            cfg.report_all_witnesses = *all_witnesses;
            if let Some(b) = budget {
                cfg.candidate_budget = *b;
            }
            cfg.force = *force;
            let report = lambda_search(&cfg)?;
            let witnesses: Vec<serde_json::Value> = report
                .witnesses
                .iter()
                .map(|w| {
                    let p = w.to_polynomial();
                    json!({"text": p.to_string(), "terms": poly_terms_json(&p)})
                })
                .collect();
            let doc = json!({
                "group": cfg.group.orders(),
                "bound": cfg.coeff_bound,
                "lambda": report.lambda_found.as_ref().map(|l| l.to_string()),
                "witnesses": witnesses,
                "explored": report.explored,
                "pruned": report.pruned,
                "exhaustive_in_box": report.exhaustive_in_box,
            });
            println!("{doc}");
            Ok(0)
        }
        Command::Congruence { group, poly, random } => {
            let g = parse_group(group)?;
            let mut all_ok = true;
            match (poly, random) {
                (Some(text), None) => {
                    let f = parse_polynomial(text, g.num_factors())?;
                    let rep = check_congruence(&g, &f)?;
                    all_ok = rep.satisfied;
                    println!(
                        "{}",
                        json!({
                            "group": g.orders(),
                            "poly": text,
                            "modulus": rep.modulus.to_string(),
                            "lhs_residue": rep.lhs_residue.to_string(),
                            "rhs_residue": rep.rhs_residue.to_string(),
                            "satisfied": rep.satisfied,
                        })
                    );
                }
                (None, Some(trials)) => {
                    use rand::{Rng, SeedableRng};
                    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cli.seed);
                    let size = g.order_usize().ok_or_else(|| {
                        Error::ResourceLimit("group too large for random trials".into())
                    })?;
                    for _ in 0..*trials {
                        let coeffs: Vec<BigInt> = (0..size)
                            .map(|_| BigInt::from(rng.gen_range(-4i64..=4)))
                            .collect();
                        let elt =
                            crate::poly::GroupRingElement::from_coeffs(g.clone(), coeffs);
                        let p = elt.to_polynomial();
                        let rep = check_congruence(&g, &p)?;
                        all_ok &= rep.satisfied;
                        println!(
                            "{}",
                            json!({
                                "group": g.orders(),
                                "poly": p.to_string(),
                                "modulus": rep.modulus.to_string(),
                                "lhs_residue": rep.lhs_residue.to_string(),
                                "rhs_residue": rep.rhs_residue.to_string(),
                                "satisfied": rep.satisfied,
                            })
                        );
                    }
                }
                _ => {
                    return Err(Error::InvalidInput(
                        "pass exactly one of --poly or --random".into(),
                    ))
                }
            }
            Ok(if all_ok { 0 } else { 1 })
        }
        Command::ResultantTable { max, check } => {
            for j in 2..=*max {
                for k in 1..j {
                    let value = if *check {
                        cyclotomic_resultant_checked(j, k)?
                    } else {
                        cyclotomic_resultant(j, k)?
                    };
                    println!(
                        "{}",
                        json!({"j": j, "k": k, "value": value.to_string(), "checked": check})
                    );
                }
            }
            Ok(0)
        }
        Command::Verify { only, trials, max } => {
            let opts = VerifyOptions {
                only: only.clone(),
                trials: *trials,
                max_resultant_index: *max,
                seed: cli.seed,
            };
            let results = run_claims(&opts);
            if results.is_empty() {
                return Err(Error::InvalidInput(format!(
                    "no claim id starts with {:?}",
                    only.as_deref().unwrap_or("")
                )));
            }
            let mut all_ok = true;
            for r in &results {
                all_ok &= r.pass;
                println!("{}", serde_json::to_string(r).expect("claim serializes"));
            }
            Ok(if all_ok { 0 } else { 1 })
        }
        Command::Witness { group, poly, expected } => {
            let g = parse_group(group)?;
            let f = parse_polynomial(poly, g.num_factors())?;
            let want = BigInt::from_str(expected)
                .map_err(|_| Error::InvalidInput(format!("bad integer {expected:?}")))?;
            let pass = verify_witness(&g, &f, &want)?;
            let measured = measure_by_determinant_capped(&g, &f, cli.max_group_order)?;
            let reduced = reduce_mod_ideal(&f, &g).to_polynomial();
            println!(
                "{}",
                json!({
                    "group": g.orders(),
                    "poly": poly,
                    "reduced": reduced.to_string(),
                    "expected": want.to_string(),
                    "measured": measured.m_int.to_string(),
                    "pass": pass,
                })
            );
            Ok(if pass { 0 } else { 1 })
        }
    }
}
