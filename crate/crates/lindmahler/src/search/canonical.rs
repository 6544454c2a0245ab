//! Orbit symmetries of the coefficient box and canonical representatives.
//!
//! |M_G| is constant under four measure-preserving moves: negating the whole
//! element, multiplying by a monomial (translating the coefficient array by a
//! group element), inverting any subset of coordinates x_i -> x_i^{-1}, and
//! permuting coordinates of equal cyclic order. The canonical form of an
//! element is the least array in its orbit, under a coefficient order that
//! ranks small magnitudes first and zero last, so canonical arrays lead with
//! their smallest positive entry.

use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::HashSet;

use crate::groups::GroupSpec;
use crate::poly::GroupRingElement;

/// Total order on coefficients: 1 < -1 < 2 < -2 < ... < 0.
#[inline]
pub fn coeff_key(v: i64) -> u64 {
    if v == 0 {
        u64::MAX
    } else {
        (v.unsigned_abs() << 1) - u64::from(v > 0)
    }
}

fn key_cmp(a: &BigInt, b: &BigInt) -> std::cmp::Ordering {
    use num_traits::Signed;
    let (za, zb) = (a.is_zero(), b.is_zero());
    match (za, zb) {
        (true, true) => std::cmp::Ordering::Equal,
        (true, false) => std::cmp::Ordering::Greater,
        (false, true) => std::cmp::Ordering::Less,
        (false, false) => (a.abs(), b.is_positive()).cmp(&(b.abs(), a.is_positive())),
    }
}

/// Compare two coefficient arrays in the canonical (key-lexicographic) order.
pub fn array_cmp(a: &[BigInt], b: &[BigInt]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let c = key_cmp(x, y);
        if c != std::cmp::Ordering::Equal {
            return c;
        }
    }
    std::cmp::Ordering::Equal
}

/// Index maps `m` with `(transformed c)[u] = c[m[u]]`, one per symmetry.
///
/// `full` carries the whole translation-inversion-permutation group (global
/// negation is handled as a sign flag at comparison time); `translations`
/// is the subgroup the search uses as its cheap skip test.
pub struct SymmetryTable {
    pub full: Vec<Vec<u16>>,
    pub translations: Vec<Vec<u16>>,
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// All coordinate permutations that fix the order multiset: the product of
/// symmetric groups on positions of equal n_i.
fn order_preserving_perms(orders: &[u64]) -> Vec<Vec<usize>> {
    let mut classes: Vec<(u64, Vec<usize>)> = Vec::new();
    for (i, &n) in orders.iter().enumerate() {
        match classes.iter_mut().find(|(o, _)| *o == n) {
            Some((_, v)) => v.push(i),
            None => classes.push((n, vec![i])),
        }
    }
    let mut perms: Vec<Vec<usize>> = vec![vec![0; orders.len()]];
    for (_, positions) in &classes {
        let class_perms = permutations(positions);
        let mut next = Vec::with_capacity(perms.len() * class_perms.len());
        for base in &perms {
            for cp in &class_perms {
                let mut p = base.clone();
                for (slot, &src) in positions.iter().zip(cp) {
                    p[*slot] = src;
                }
                next.push(p);
            }
        }
        perms = next;
    }
    perms
}

impl SymmetryTable {
    pub fn build(group: &GroupSpec) -> Self {
        let size = group.order_usize().expect("group fits in memory");
        let orders = group.orders();
        let k = orders.len();
        let tuples: Vec<Vec<u64>> = (0..size).map(|i| group.tuple_at(i)).collect();

        let perms = order_preserving_perms(orders);
        // coordinates where inversion is not the identity
        let invertible: Vec<usize> =
            (0..k).filter(|&i| orders[i] >= 3).collect();

        let mut full_set: HashSet<Vec<u16>> = HashSet::new();
        let mut full = Vec::new();
        let mut translations = Vec::new();
        let mut scratch = vec![0u64; k];
        for perm in &perms {
            for inv_mask in 0..(1u32 << invertible.len()) {
                for g in 0..size {
                    let gt = &tuples[g];
                    let mut map = vec![0u16; size];
                    for (u, ut) in tuples.iter().enumerate() {
                        // source element: permute, then invert, then shift
                        for i in 0..k {
                            scratch[i] = ut[perm[i]];
                        }
                        for (bit, &coord) in invertible.iter().enumerate() {
                            if inv_mask >> bit & 1 == 1 {
                                scratch[coord] =
                                    (orders[coord] - scratch[coord]) % orders[coord];
                            }
                        }
                        for i in 0..k {
                            scratch[i] = (scratch[i] + gt[i]) % orders[i];
                        }
                        map[u] = group.index_of(&scratch) as u16;
                    }
                    let is_translation = perm.iter().enumerate().all(|(i, &p)| i == p)
                        && inv_mask == 0;
                    if full_set.insert(map.clone()) {
                        full.push(map.clone());
                    }
                    if is_translation {
                        translations.push(map);
                    }
                }
            }
        }
        SymmetryTable { full, translations }
    }
}

/// Least element of the full symmetry orbit of `elt`.
pub fn canonical_form(elt: &GroupRingElement, group: &GroupSpec) -> GroupRingElement {
    debug_assert_eq!(elt.group().orders(), group.orders());
    let table = SymmetryTable::build(group);
    canonical_with_table(elt, group, &table)
}

pub fn canonical_with_table(
    elt: &GroupRingElement,
    group: &GroupSpec,
    table: &SymmetryTable,
) -> GroupRingElement {
    let c = elt.coeffs();
    let mut best: Option<Vec<BigInt>> = None;
    let mut buf = vec![BigInt::zero(); c.len()];
    for map in &table.full {
        for negate in [false, true] {
            for (u, slot) in buf.iter_mut().enumerate() {
                let v = &c[map[u] as usize];
                *slot = if negate { -v } else { v.clone() };
            }
            let better = match &best {
                None => true,
                Some(b) => array_cmp(&buf, b) == std::cmp::Ordering::Less,
            };
            if better {
                best = Some(buf.clone());
            }
        }
    }
    GroupRingElement::from_coeffs(group.clone(), best.expect("orbit is nonempty"))
}

/// Skip test for the search: is `c` minimal in its orbit under translations
/// and global negation? Aborts each comparison at the first deciding slot.
#[inline]
pub fn is_subgroup_minimal(c: &[i64], translations: &[Vec<u16>]) -> bool {
    for map in translations {
        let mut lt = false; // transformed < original with positive sign
        let mut lt_neg = false; // with negated sign
        let mut undecided = 3u32;
        for (u, &src) in map.iter().enumerate() {
            let orig = coeff_key(c[u]);
            let v = c[src as usize];
            if undecided & 1 != 0 {
                let t = coeff_key(v);
                if t != orig {
                    if t < orig {
                        lt = true;
                        break;
                    }
                    undecided &= !1;
                }
            }
            if undecided & 2 != 0 {
                let t = coeff_key(-v);
                if t != orig {
                    if t < orig {
                        lt_neg = true;
                        break;
                    }
                    undecided &= !2;
                }
            }
            if undecided == 0 {
                break;
            }
        }
        if lt || lt_neg {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::make_group;
    use crate::measure::measure_by_determinant;
    use crate::poly::{parse_polynomial, reduce_mod_ideal};
    use num_traits::One;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn coefficient_order_ranks_zero_last() {
        let seq = [1i64, -1, 2, -2, 3, -3];
        for w in seq.windows(2) {
            assert!(coeff_key(w[0]) < coeff_key(w[1]));
        }
        assert!(coeff_key(-1000) < coeff_key(0));
    }

    #[test]
    fn negative_constant_normalizes() {
        let g = make_group(&[2]).unwrap();
        let minus_one = reduce_mod_ideal(
            &parse_polynomial("0-1", 1).unwrap(),
            &g,
        );
        let canon = canonical_form(&minus_one, &g);
        assert_eq!(canon.coeffs(), &[BigInt::one(), BigInt::zero()]);
        // the whole orbit {1, -1, x, -x} lands on the same representative
        for text in ["1", "x", "0-x"] {
            let e = reduce_mod_ideal(&parse_polynomial(text, 1).unwrap(), &g);
            assert_eq!(canonical_form(&e, &g), canon);
        }
    }

    #[test]
    fn coordinate_swap_identifies_variables() {
        let g = make_group(&[2, 2]).unwrap();
        let x = reduce_mod_ideal(&parse_polynomial("x", 2).unwrap(), &g);
        let y = reduce_mod_ideal(&parse_polynomial("y", 2).unwrap(), &g);
        assert_eq!(canonical_form(&x, &g), canonical_form(&y, &g));
    }

    #[test]
    fn canonical_form_preserves_measure_magnitude() {
        let g = make_group(&[2, 4]).unwrap();
        let table = SymmetryTable::build(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..100 {
            let coeffs: Vec<BigInt> =
                (0..8).map(|_| BigInt::from(rng.gen_range(-2i64..=2))).collect();
            let e = GroupRingElement::from_coeffs(g.clone(), coeffs);
            let canon = canonical_with_table(&e, &g, &table);
            let m1 = measure_by_determinant(&g, &e.to_polynomial()).unwrap().m_int;
            let m2 = measure_by_determinant(&g, &canon.to_polynomial()).unwrap().m_int;
            assert_eq!(m1.magnitude(), m2.magnitude());
        }
    }

    #[test]
    fn canonical_form_is_idempotent_and_minimal() {
        let g = make_group(&[2, 4]).unwrap();
        let table = SymmetryTable::build(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..50 {
            let coeffs: Vec<BigInt> =
                (0..8).map(|_| BigInt::from(rng.gen_range(-1i64..=1))).collect();
            let e = GroupRingElement::from_coeffs(g.clone(), coeffs);
            let canon = canonical_with_table(&e, &g, &table);
            assert_eq!(canonical_with_table(&canon, &g, &table), canon);
            assert_ne!(
                array_cmp(e.coeffs(), canon.coeffs()),
                std::cmp::Ordering::Less
            );
        }
    }

    #[test]
    fn subgroup_test_agrees_with_direct_minimum() {
        let g = make_group(&[2, 4]).unwrap();
        let table = SymmetryTable::build(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..300 {
            let c: Vec<i64> = (0..8).map(|_| rng.gen_range(-1i64..=1)).collect();
            // brute force: is c minimal among +-(translates of c)?
            let mut minimal = true;
            for map in &table.translations {
                for neg in [false, true] {
                    let t: Vec<BigInt> = map
                        .iter()
                        .map(|&s| {
                            let v = c[s as usize];
                            BigInt::from(if neg { -v } else { v })
                        })
                        .collect();
                    let orig: Vec<BigInt> = c.iter().map(|&v| BigInt::from(v)).collect();
                    if array_cmp(&t, &orig) == std::cmp::Ordering::Less {
                        minimal = false;
                    }
                }
            }
            assert_eq!(is_subgroup_minimal(&c, &table.translations), minimal, "{c:?}");
        }
    }

    #[test]
    fn table_sizes_match_group_structure() {
        // Z2 x Z2: 4 translations, coordinate swap, no inversions
        let t = SymmetryTable::build(&make_group(&[2, 2]).unwrap());
        assert_eq!(t.translations.len(), 4);
        assert_eq!(t.full.len(), 8);
        // Z4: 4 translations x inversion
        let t = SymmetryTable::build(&make_group(&[4]).unwrap());
        assert_eq!(t.translations.len(), 4);
        assert_eq!(t.full.len(), 8);
        // Z2 x Z4: translations 8, inversion on the 4-coordinate
        let t = SymmetryTable::build(&make_group(&[2, 4]).unwrap());
        assert_eq!(t.translations.len(), 8);
        assert_eq!(t.full.len(), 16);
    }
}
