//! Acceptance gate: run every claim in the verification battery and print
//! one line per criterion. Exits nonzero if any assertion fails.

use lindmahler::verify::{run_claims, VerifyOptions, CLAIM_IDS};

fn main() {
    let results = run_claims(&VerifyOptions::default());

    let mut all_ok = true;
    for (i, id) in CLAIM_IDS.iter().enumerate() {
        let mine: Vec<_> = results.iter().filter(|r| r.claim == *id).collect();
        let passed = mine.iter().filter(|r| r.pass).count();
        let ok = !mine.is_empty() && passed == mine.len();
        all_ok &= ok;
        println!(
            "criterion {:2} {:28} {} ({passed}/{} assertions)",
            i + 1,
            id,
            if ok { "PASS" } else { "FAIL" },
            mine.len()
        );
        if !ok {
            for r in mine.iter().filter(|r| !r.pass) {
                println!("    expected {}, got {}", r.expected, r.got);
            }
        }
    }

    if !all_ok {
        std::process::exit(1);
    }
}
