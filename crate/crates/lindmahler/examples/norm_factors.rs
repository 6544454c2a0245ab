//! Factor a p-group measure into algebraic-integer norms.
//!
//! Over G = Z_{p^a1} x ... x Z_{p^ak} the measure splits into one integer
//! factor per exponent defect (t_1, ..., t_k); the factor at defect t is a
//! norm from the cyclotomic field at the divisor tuple (p^{a1-t1}, ...).
//! Their product recovers M_G(F) exactly.

use lindmahler::measure::{measure_by_determinant, norm_factorization};
use lindmahler::{make_group, parse_polynomial};

fn main() -> lindmahler::Result<()> {
    for (orders, text) in [
        (vec![2u64, 8], "y^2+y+1"),
        (vec![3, 9], "y+1"),
        (vec![4, 4], "x*y + x + y - 1"),
    ] {
        let group = make_group(&orders)?;
        let f = parse_polynomial(text, group.num_factors())?;
        let nf = norm_factorization(&group, &f)?;

        println!(
            "M_{{{}}}({text}): prime {}, exponents {:?}",
            group.orders_string(),
            nf.prime,
            nf.exponents
        );
        for (defect, value) in &nf.factors {
            println!("  defect {defect:?}: {value}");
        }

        let m = measure_by_determinant(&group, &f)?.m_int;
        assert_eq!(nf.product(), m);
        println!("  product = {m}");
    }
    Ok(())
}
