//! Compute M_G(F) three independent ways and watch them agree.
//!
//! The determinant path multiplies the group-ring action matrix out over Z,
//! the resultant path multiplies one integer resultant per divisor class,
//! and the float ladder evaluates |F| at every character numerically and
//! certifies the nearest integer. The first two are exact; the ladder is a
//! cross-check with a proven error radius.

use lindmahler::measure::{
    measure_by_determinant, measure_by_resultants, measure_float_ladder,
};
use lindmahler::{make_group, parse_polynomial};

fn main() -> lindmahler::Result<()> {
    let cases = [
        (vec![4u64], "x^2+x+1"),
        (vec![2, 8], "y^2+y+1"),
        (vec![3, 9], "y+1"),
        (vec![5], "x+1"),
        (vec![2, 2, 2], "x*y*z + x + y + z - 2"),
    ];

    for (orders, text) in cases {
        let group = make_group(&orders)?;
        let f = parse_polynomial(text, group.num_factors())?;

        let det = measure_by_determinant(&group, &f)?;
        let res = measure_by_resultants(&group, &f)?;
        let flt = measure_float_ladder(&group, &f)?;
        assert_eq!(det.m_int, res.m_int);
        assert_eq!(det.m_int, flt.m_int);

        println!("M_{{{}}}({text}) = {}", group.orders_string(), det.m_int);
        match det.log_measure {
            Some(m) => println!("  log-measure m = {m:.6}"),
            None => println!("  measure is 0: F vanishes at some character"),
        }
    }
    Ok(())
}
