//! Run the whole self-verification battery and summarize per claim.
//!
//! Each claim checks one published value or structural identity from
//! several directions at once (closed forms, independent computation
//! paths, randomized trials). `cargo run --example verify_claims` takes
//! around half a minute; the acceptance test runs the same battery.

use std::collections::BTreeMap;

use lindmahler::verify::{run_claims, VerifyOptions};

fn main() {
    let opts = VerifyOptions::default();
    let results = run_claims(&opts);

    let mut by_claim: BTreeMap<&str, (u32, u32)> = BTreeMap::new();
    for r in &results {
        let entry = by_claim.entry(r.claim.as_str()).or_default();
        entry.1 += 1;
        if r.pass {
            entry.0 += 1;
        } else {
            println!("FAIL {}: expected {}, got {}", r.claim, r.expected, r.got);
        }
    }

    for (claim, (pass, total)) in &by_claim {
        println!("{claim:28} {pass}/{total}");
    }
    let all = results.iter().all(|r| r.pass);
    println!("{}", if all { "all claims hold" } else { "FAILURES PRESENT" });
    std::process::exit(if all { 0 } else { 1 });
}
