//! Gaussian-integer norm chain for cyclic 2-power groups.
//!
//! Over Z_{2^n} the measure splits as
//!
//!     M(F) = N0 * N1 * N2 * prod_j N(R_j)^2,   3 <= j <= n,
//!
//! where N0 = F(1), N1 = F(-1), N2 is the Z[i]-norm of F(i), and R_j is a
//! resultant computed inside Z[i]. Every odd factor beyond N0 * N1 is a
//! norm from Z[i], hence 1 mod 4 — the obstruction that forces lambda = 3
//! on these groups.

use lindmahler::measure::{measure_by_determinant, two_adic_decomposition};
use lindmahler::{make_group, parse_polynomial};

fn main() -> lindmahler::Result<()> {
    for (n, text) in [(3u32, "x^2+x+1"), (4, "x^2+x+1"), (5, "x^3-x+5"), (4, "3*x - 2")] {
        let f = parse_polynomial(text, 1)?;
        let td = two_adic_decomposition(n, &f)?;

        println!("Z_{}: F = {text}", 1u64 << n);
        println!("  N0 = {}, N1 = {}, N2 = {}", td.n0, td.n1, td.n2);
        for r in &td.r_factors {
            println!("  R = {r}, N(R) = {}", r.norm());
        }

        let group = make_group(&[1u64 << n])?;
        let direct = measure_by_determinant(&group, &f)?.m_int;
        assert_eq!(td.measure(), direct);
        println!("  chain product = {} (matches the determinant)", direct);
    }
    Ok(())
}
