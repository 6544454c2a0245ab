//! Exact character evaluation and the inverse transform.
//!
//! A character value lives in the cyclotomic field of order `N = lcm(n_i)`;
//! it is carried exactly as a length-`N` integer vector `v` meaning
//! `sum v[r] * w_N^r`. Recovery inverts evaluation:
//! `a(T) = (1/|G|) * sum_j value_j * w_N^{-<T,j>}`, a rational integer, so the
//! accumulated sum must reduce to a constant modulo the cyclotomic polynomial
//! and that constant must be divisible by `|G|` — anything else means the
//! input vectors were not an evaluation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::GroupRingElement;
use crate::cyclo::{cyclotomic, UniPoly};
use crate::groups::{enumerate_characters, GroupSpec};
use crate::{Error, Result};

/// `w_N`-exponent of the character `j` at the group element `t`.
pub(crate) fn pairing(group: &GroupSpec, n_lcm: u64, j: &[u64], t: &[u64]) -> u64 {
    let mut acc = 0u64;
    for ((&ji, &ti), &ni) in j.iter().zip(t).zip(group.orders()) {
        let stride = n_lcm / ni;
        acc = (acc + (stride % n_lcm) * ((ji * ti) % n_lcm)) % n_lcm;
    }
    acc
}

/// Exact value of the element at every character, in character order.
pub fn evaluate_characters_exact(elt: &GroupRingElement) -> Vec<Vec<BigInt>> {
    let group = elt.group();
    let n_lcm = group.exponent_lcm();
    let size = group.order_usize().unwrap();
    let tuples: Vec<Vec<u64>> = (0..size).map(|i| group.tuple_at(i)).collect();
    enumerate_characters(group)
        .map(|chi| {
            let mut v = vec![BigInt::zero(); n_lcm as usize];
            for (idx, c) in elt.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let r = pairing(group, n_lcm, &chi.0, &tuples[idx]);
                v[r as usize] += c;
            }
            v
        })
        .collect()
}

/// Invert [`evaluate_characters_exact`]: recover the reduced coefficients
/// from the |G| character values.
pub fn coefficient_recovery(values: &[Vec<BigInt>], group: &GroupSpec) -> Result<GroupRingElement> {
    let size = group
        .order_usize()
        .ok_or_else(|| Error::InvalidInput("group too large for recovery".into()))?;
    let n_lcm = group.exponent_lcm();
    if values.len() != size {
        return Err(Error::InvalidInput(format!(
            "expected {size} character values, got {}",
            values.len()
        )));
    }
    for v in values {
        if v.len() != n_lcm as usize {
            return Err(Error::InvalidInput(format!(
                "character values must have length {n_lcm}"
            )));
        }
    }
    let phi = cyclotomic(n_lcm);
    let order = BigInt::from(size);
    let chars: Vec<Vec<u64>> = enumerate_characters(group).map(|c| c.0).collect();
    let mut coeffs = Vec::with_capacity(size);
    for idx in 0..size {
        let t = group.tuple_at(idx);
        let mut acc = vec![BigInt::zero(); n_lcm as usize];
        for (j, v) in chars.iter().zip(values) {
            // multiply by w_N^{-<t,j>}: rotate the vector
            let shift = (n_lcm - pairing(group, n_lcm, j, &t)) % n_lcm;
            for (r, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    acc[(r + shift as usize) % n_lcm as usize] += c;
                }
            }
        }
        let rem = UniPoly::new(acc).rem_monic(&phi);
        if rem.degree().map_or(false, |d| d > 0) {
            return Err(Error::NonIntegral(format!(
                "character sum at index {idx} is not rational"
            )));
        }
        let c = rem.coeff(0);
        let (q, r) = c.div_rem(&order);
        if !r.is_zero() {
            return Err(Error::NonIntegral(format!(
                "character sum at index {idx} is not divisible by |G| = {size}"
            )));
        }
        coeffs.push(q);
    }
    Ok(GroupRingElement::from_coeffs(group.clone(), coeffs))
}
