//! Exhaustive search for the Lind-Lehmer constant of small groups.
//!
//! lambda(G) is the least |M_G(F)| exceeding 1. The search walks the box of
//! coefficient arrays with entries in [-c, c], prunes arrays whose
//! F(1,...,1) is divisible by p (their measures are huge), skips arrays
//! that are not minimal in their symmetry orbit, and bounds partial
//! products to abort early. Every reported witness is recomputed through
//! the determinant path before the report is returned.

use lindmahler::search::{lambda_search, verify_witness, SearchConfig};
use lindmahler::{make_group, parse_polynomial};

fn main() -> lindmahler::Result<()> {
    for orders in [vec![2u64, 4], vec![3, 3], vec![2, 8]] {
        let group = make_group(&orders)?;
        let mut cfg = SearchConfig::new(group.clone());
        cfg.coeff_bound = 1;
        cfg.report_all_witnesses = false;

        let report = lambda_search(&cfg)?;
        let lambda = report.lambda_found.expect("these boxes contain a witness");
        println!(
            "lambda(Z_{}) = {lambda}   [explored {}, pruned {:?}, exhaustive: {}]",
            group.orders_string().replace(',', " x Z_"),
            report.explored,
            report.pruned,
            report.exhaustive_in_box
        );
        for w in &report.witnesses {
            println!("  witness: {}", w.to_polynomial());
        }
    }

    // Independent confirmation of a known minimizer on a group too large to
    // search here: y^2 + y + 1 attains 9 on every Z_2 x Z_{2^n}, n >= 3.
    let group = make_group(&[2, 64])?;
    let f = parse_polynomial("y^2+y+1", 2)?;
    assert!(verify_witness(&group, &f, &9.into())?);
    println!("confirmed M_{{2,64}}(y^2+y+1) = 9 by two independent paths");
    Ok(())
}
