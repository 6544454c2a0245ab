//! Residue constraints that every p-group measure obeys.
//!
//! With k cyclic factors, M is congruent to F(1,...,1)^|G| mod p^k, and the
//! achievable residues are exactly the |G|-th powers of units. When p
//! divides F(1,...,1) the measure is divisible by |G| * p^k outright. These
//! constraints are what let a search discard most of a coefficient box and
//! what pin lambda on several families.

use lindmahler::congruence::{allowed_residues, check_congruence, divisibility_when_p_divides};
use lindmahler::measure::measure_by_determinant;
use lindmahler::{make_group, parse_polynomial};

fn main() -> lindmahler::Result<()> {
    let group = make_group(&[2, 4])?;
    for text in ["y^2+y+1", "x*y^3 - 2*y + 3", "x + y + 1"] {
        let f = parse_polynomial(text, 2)?;
        let rep = check_congruence(&group, &f)?;
        println!(
            "Z_2 x Z_4, F = {text}: M = {} = {} mod {}, F(1,1)^|G| = {} mod {} -> {}",
            measure_by_determinant(&group, &f)?.m_int,
            rep.lhs_residue,
            rep.modulus,
            rep.rhs_residue,
            rep.modulus,
            if rep.satisfied { "satisfied" } else { "VIOLATED" }
        );
    }

    // p | F(1,...,1) forces |G| * p^k to divide M.
    let f = parse_polynomial("x + y", 2)?;
    assert!(divisibility_when_p_divides(&group, &f)?);
    let m = measure_by_determinant(&group, &f)?.m_int;
    println!("F = x + y has even F(1,1): M = {m} is divisible by 8 * 4 = 32");

    // Over Z_3 x Z_{3^n} the only residues mod 9 are 1 and 8; the least
    // measure above 1 compatible with that is 8, attained by y + 1.
    let g39 = make_group(&[3, 9])?;
    let residues = allowed_residues(&g39)?;
    println!(
        "allowed residues of M mod 9 over Z_3 x Z_9: {:?}",
        residues.iter().map(|r| r.to_string()).collect::<Vec<_>>()
    );
    let m = measure_by_determinant(&g39, &parse_polynomial("y+1", 2)?)?.m_int;
    println!("M_{{3,9}}(y+1) = {m}");
    Ok(())
}
