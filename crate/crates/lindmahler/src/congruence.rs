//! The p-group congruence on measures and the predicates it licenses.
//!
//! For G = Z_{p^a1} x ... x Z_{p^ak}, every measure satisfies
//! M_G(F) = F(1,...,1)^{|G|} mod p^k. Two consequences drive search pruning:
//! when p | F(1,...,1) the whole measure is divisible by |G| * p^k, and when
//! p does not divide F(1,...,1) the residue of M mod p^k is confined to the
//! |G|-th powers of units.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::groups::{p_group_structure, GroupSpec};
use crate::measure::measure_by_resultants;
use crate::poly::IntPolynomial;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct CongruenceReport {
    pub modulus: BigInt,
    pub lhs_residue: BigInt,
    pub rhs_residue: BigInt,
    pub satisfied: bool,
}

/// Compare M_G(F) mod p^k against F(1,...,1)^{|G|} mod p^k.
///
/// The congruence holds for every F, so `satisfied: false` means an
/// arithmetic bug somewhere.
pub fn check_congruence(group: &GroupSpec, f: &IntPolynomial) -> Result<CongruenceReport> {
    let st = p_group_structure(group)
        .ok_or_else(|| Error::NotPGroup(group.orders_string()))?;
    let modulus = BigInt::from(st.prime).pow(st.num_factors as u32);
    let m = measure_by_resultants(group, f)?.m_int;
    let lhs_residue = m.mod_floor(&modulus);
    let rhs_residue = f
        .eval_at_ones()
        .mod_floor(&modulus)
        .modpow(group.cardinality(), &modulus);
    Ok(CongruenceReport {
        satisfied: lhs_residue == rhs_residue,
        modulus,
        lhs_residue,
        rhs_residue,
    })
}

/// When p | F(1,...,1), the measure picks up the full factor |G| * p^k.
/// Returns whether it does (always true; a verification predicate).
pub fn divisibility_when_p_divides(group: &GroupSpec, f: &IntPolynomial) -> Result<bool> {
    let st = p_group_structure(group)
        .ok_or_else(|| Error::NotPGroup(group.orders_string()))?;
    let p = BigInt::from(st.prime);
    let f1 = f.eval_at_ones();
    if !f1.mod_floor(&p).is_zero() {
        return Err(Error::InvalidInput(format!(
            "{} does not divide F(1,...,1) = {f1}",
            st.prime
        )));
    }
    let m = measure_by_resultants(group, f)?.m_int;
    let divisor = group.cardinality() * p.pow(st.num_factors as u32);
    Ok(m.mod_floor(&divisor).is_zero())
}

/// Residues mod p^k that M_G(F) can take when p does not divide F(1,...,1):
/// the set of |G|-th powers of units, by direct enumeration.
pub fn allowed_residues(group: &GroupSpec) -> Result<BTreeSet<BigInt>> {
    let st = p_group_structure(group)
        .ok_or_else(|| Error::NotPGroup(group.orders_string()))?;
    let k = st.num_factors as u32;
    if (st.prime as f64).powi(k as i32) > (1u64 << 20) as f64 {
        return Err(Error::ResourceLimit(format!(
            "unit enumeration mod {}^{k} is too large",
            st.prime
        )));
    }
    let pk = st.prime.pow(k);
    let modulus = BigInt::from(pk);
    let mut set = BTreeSet::new();
    for u in 1..pk {
        if u % st.prime != 0 {
            set.insert(BigInt::from(u).modpow(group.cardinality(), &modulus));
        }
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::make_group;
    use crate::poly::parse_polynomial;
    use num_traits::One;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn grp(orders: &[u64]) -> GroupSpec {
        make_group(orders).unwrap()
    }

    fn poly(text: &str, vars: usize) -> IntPolynomial {
        parse_polynomial(text, vars).unwrap()
    }

    #[test]
    fn congruence_named_cases() {
        let r = check_congruence(&grp(&[2, 4]), &poly("y^2+y+1", 2)).unwrap();
        assert_eq!(r.modulus, BigInt::from(4));
        assert_eq!(r.lhs_residue, BigInt::one());
        assert_eq!(r.rhs_residue, BigInt::one());
        assert!(r.satisfied);

        let r = check_congruence(&grp(&[9]), &poly("x+1", 1)).unwrap();
        assert_eq!(r.modulus, BigInt::from(3));
        assert_eq!(r.lhs_residue, BigInt::from(2));
        assert_eq!(r.rhs_residue, BigInt::from(2));
        assert!(r.satisfied);

        let r = check_congruence(&grp(&[3, 9]), &poly("y+1", 2)).unwrap();
        assert_eq!(r.modulus, BigInt::from(9));
        assert_eq!(r.lhs_residue, BigInt::from(8));
        assert_eq!(r.rhs_residue, BigInt::from(8));
        assert!(r.satisfied);
    }

    #[test]
    fn rejects_mixed_order_groups() {
        assert!(matches!(
            check_congruence(&grp(&[6]), &poly("x+1", 1)),
            Err(Error::NotPGroup(_))
        ));
        assert!(matches!(allowed_residues(&grp(&[10])), Err(Error::NotPGroup(_))));
    }

    #[test]
    fn divisibility_named_cases() {
        // F(1,1) = 2, so M gains the factor |G| * p^k = 8 * 4
        assert!(divisibility_when_p_divides(&grp(&[2, 4]), &poly("x+y", 2)).unwrap());
        // F(1) = 3 over Z_3: factor 3 * 3
        assert!(divisibility_when_p_divides(&grp(&[3]), &poly("x+2", 1)).unwrap());
        // M = 0 is divisible by everything
        assert!(divisibility_when_p_divides(&grp(&[2]), &poly("x+1", 1)).unwrap());
        // precondition: p must divide F(1,...,1)
        assert!(matches!(
            divisibility_when_p_divides(&grp(&[2]), &poly("x", 1)),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn allowed_residue_sets() {
        let ones: BTreeSet<BigInt> = [BigInt::one()].into_iter().collect();
        assert_eq!(allowed_residues(&grp(&[2, 4])).unwrap(), ones);
        assert_eq!(allowed_residues(&grp(&[8])).unwrap(), ones);
        let pm_one: BTreeSet<BigInt> =
            [BigInt::one(), BigInt::from(8)].into_iter().collect();
        assert_eq!(allowed_residues(&grp(&[3, 9])).unwrap(), pm_one);
        assert_eq!(allowed_residues(&grp(&[3, 3])).unwrap(), pm_one);
    }

    fn random_poly(rng: &mut ChaCha8Rng, group: &GroupSpec, bound: i64) -> IntPolynomial {
        let terms: Vec<(Vec<u32>, BigInt)> = (0..rng.gen_range(1..=5))
            .map(|_| {
                let exps: Vec<u32> = group
                    .orders()
                    .iter()
                    .map(|&n| rng.gen_range(0..n as u32))
                    .collect();
                (exps, BigInt::from(rng.gen_range(-bound..=bound)))
            })
            .collect();
        IntPolynomial::from_terms(group.num_factors(), terms)
    }

    #[test]
    fn congruence_holds_on_random_p_groups() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let groups = [vec![2u64, 4], vec![8], vec![4, 4], vec![3, 3], vec![9], vec![27], vec![5, 5], vec![25]];
        for _ in 0..60 {
            let g = grp(&groups[rng.gen_range(0..groups.len())]);
            let f = random_poly(&mut rng, &g, 4);
            let r = check_congruence(&g, &f).unwrap();
            assert!(r.satisfied, "group {g}, poly {f:?}");
        }
    }

    #[test]
    fn residues_land_in_allowed_set() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let groups = [vec![2u64, 4], vec![3, 9], vec![9], vec![4, 4]];
        let mut seen = 0;
        while seen < 40 {
            let g = grp(&groups[rng.gen_range(0..groups.len())]);
            let st = p_group_structure(&g).unwrap();
            let f = random_poly(&mut rng, &g, 4);
            let p = BigInt::from(st.prime);
            if f.eval_at_ones().mod_floor(&p).is_zero() {
                assert!(divisibility_when_p_divides(&g, &f).unwrap());
            } else {
                let modulus = BigInt::from(st.prime.pow(st.num_factors as u32));
                let m = measure_by_resultants(&g, &f).unwrap().m_int;
                let allowed = allowed_residues(&g).unwrap();
                assert!(allowed.contains(&m.mod_floor(&modulus)), "group {g}");
            }
            seen += 1;
        }
    }

    #[test]
    fn mod_nine_residues_force_eight() {
        // any |m| > 1 with m = +-1 mod 9 has |m| >= 8: the numeric step that
        // turns the congruence into a lower bound for 3-groups
        for m in -1000i64..=1000 {
            if m.abs() <= 1 {
                continue;
            }
            let r = m.rem_euclid(9);
            if r == 1 || r == 8 {
                assert!(m.abs() >= 8, "m = {m}");
            }
        }
    }
}
