//! Parse polynomial text, reduce it modulo the group ideal, and test
//! whether it vanishes at every character.
//!
//! Variables are positional: x, y, z for up to three cyclic factors,
//! x1..x9 beyond that. Reduction folds each exponent modulo the order of
//! its factor, so the reduced form is the element of Z[G] the polynomial
//! represents.

use lindmahler::poly::{is_zero_mod_ideal, reduce_mod_ideal};
use lindmahler::{make_group, parse_polynomial};

fn main() -> lindmahler::Result<()> {
    let group = make_group(&[2, 4])?;

    for text in ["x*y^5 + y - 3", "x^2 - 1", "(x - 1)*(y^2 + 1)"] {
        let f = parse_polynomial(text, group.num_factors())?;
        let reduced = reduce_mod_ideal(&f, &group);
        println!("{text:18} over Z_2 x Z_4");
        println!("  reduced:  {}", reduced.to_polynomial());
        println!("  coeffs:   {:?}", reduced.coeffs());
        println!(
            "  vanishes at every character: {}",
            is_zero_mod_ideal(&f, &group)
        );
    }

    // x^2 - 1 is in the ideal (x^2 - 1, y^4 - 1) itself, so its measure is 0
    // and every character value is 0.
    let f = parse_polynomial("x^2 - 1", group.num_factors())?;
    assert!(is_zero_mod_ideal(&f, &group));
    Ok(())
}
