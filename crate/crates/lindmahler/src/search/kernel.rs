//! Fixed-width evaluation kernel for the lambda search.
//!
//! The search evaluates millions of small coefficient arrays, so the
//! divisor-class product is precompiled per group: for each class the slot of
//! every group element is tabulated, and the reduction modulo Phi_L collapses
//! to a dot product with the constant column of x^j mod Phi_L. All arithmetic
//! runs in checked i128; on overflow the candidate is redone with the exact
//! big-integer path.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use num_integer::Integer;

use crate::cyclo::{self, UniPoly};
use crate::groups::GroupSpec;
use crate::measure::resultant_factors;
use crate::poly::GroupRingElement;
use crate::{Error, Result};

const MAX_CLASS_LCM: u64 = 256;

/// One divisor class, compiled: cyclic length, element-to-slot tables (one
/// per primitive character tuple), and the reduction column.
struct ClassPlan {
    l: usize,
    prim_slots: Vec<Vec<u16>>,
    red0: Vec<i128>,
}

pub struct KernelPlans {
    group: GroupSpec,
    classes: Vec<ClassPlan>,
    max_l: usize,
}

/// Reusable buffers for [`measure_candidate`]; one per worker thread.
pub struct KernelScratch {
    s: Vec<i128>,
    acc: Vec<i128>,
    next: Vec<i128>,
}

/// Classification of one candidate against the current search bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// M = 0.
    Zero,
    /// |M| = 1.
    Unit,
    /// 2 <= |M| <= bound: a candidate, with its magnitude.
    Small(u64),
    /// |M| > bound (possibly detected from a partial product).
    Big,
}

impl KernelPlans {
    pub fn build(group: &GroupSpec) -> Result<Self> {
        let size = group
            .order_usize()
            .ok_or_else(|| Error::ResourceLimit("group too large to search".into()))?;
        let orders = group.orders();
        let k = orders.len();
        let tuples: Vec<Vec<u64>> = (0..size).map(|i| group.tuple_at(i)).collect();
        let divisor_lists: Vec<Vec<u64>> =
            orders.iter().map(|&n| cyclo::divisors(n)).collect();

        let mut classes = Vec::new();
        let mut idxs = vec![0usize; k];
        'tuples: loop {
            let d: Vec<u64> =
                idxs.iter().zip(&divisor_lists).map(|(&i, l)| l[i]).collect();
            classes.push(compile_class(&d, &tuples)?);
            let mut pos = k;
            while pos > 0 {
                pos -= 1;
                idxs[pos] += 1;
                if idxs[pos] < divisor_lists[pos].len() {
                    continue 'tuples;
                }
                idxs[pos] = 0;
            }
            break;
        }
        // cheap classes first so zero factors and bound overruns cut early
        classes.sort_by_key(|c| (c.l, c.prim_slots.len()));
        let max_l = classes.iter().map(|c| c.l).max().unwrap_or(1);
        Ok(KernelPlans { group: group.clone(), classes, max_l })
    }

    pub fn scratch(&self) -> KernelScratch {
        KernelScratch {
            s: vec![0; self.max_l],
            acc: vec![0; self.max_l],
            next: vec![0; self.max_l],
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }
}

fn compile_class(d: &[u64], tuples: &[Vec<u64>]) -> Result<ClassPlan> {
    let l = d.iter().fold(1u64, |acc, &di| acc.lcm(&di));
    if l > MAX_CLASS_LCM {
        return Err(Error::ResourceLimit(format!(
            "divisor class {d:?} needs cyclic length {l} > {MAX_CLASS_LCM}"
        )));
    }
    let lus = l as usize;
    let units: Vec<Vec<u64>> = d
        .iter()
        .map(|&di| {
            if di == 1 {
                vec![0]
            } else {
                (1..di).filter(|&u| u.gcd(&di) == 1).collect()
            }
        })
        .collect();
    let mut prim_slots = Vec::new();
    let mut uidx = vec![0usize; d.len()];
    'tuples: loop {
        let mut slots = vec![0u16; tuples.len()];
        for (idx, t) in tuples.iter().enumerate() {
            let mut pos = 0u64;
            for i in 0..d.len() {
                let e = (units[i][uidx[i]] * (t[i] % d[i])) % d[i];
                pos = (pos + e * (l / d[i])) % l;
            }
            slots[idx] = pos as u16;
        }
        prim_slots.push(slots);
        let mut pos = d.len();
        while pos > 0 {
            pos -= 1;
            uidx[pos] += 1;
            if uidx[pos] < units[pos].len() {
                continue 'tuples;
            }
            uidx[pos] = 0;
        }
        break;
    }
    let phi = cyclo::cyclotomic(l);
    let mut red0 = Vec::with_capacity(lus);
    for j in 0..lus {
        let mut cs = vec![BigInt::zero(); j + 1];
        cs[j] = BigInt::one();
        let rem = UniPoly::new(cs).rem_monic(&phi);
        let c0 = rem.coeff(0);
        red0.push(i128::try_from(&c0).map_err(|_| {
            Error::ResourceLimit(format!("reduction column overflows at length {l}"))
        })?);
    }
    Ok(ClassPlan { l: lus, prim_slots, red0 })
}

/// |M_G| of the array `coeffs` classified against `bound`.
///
/// The partial product is abandoned as soon as its magnitude exceeds `bound`
/// strictly, which discards only arrays whose final |M| exceeds the bound or
/// is zero: every remaining factor is a nonzero integer on the first kind,
/// and a zero factor forces M = 0 on the second.
pub fn measure_candidate(
    coeffs: &[i64],
    plans: &KernelPlans,
    bound: u64,
    scratch: &mut KernelScratch,
) -> Outcome {
    match fast_measure(coeffs, plans, bound, scratch) {
        Some(outcome) => outcome,
        None => exact_measure(coeffs, plans, bound),
    }
}

fn fast_measure(
    coeffs: &[i64],
    plans: &KernelPlans,
    bound: u64,
    scratch: &mut KernelScratch,
) -> Option<Outcome> {
    let mut total: i128 = 1;
    for class in &plans.classes {
        let l = class.l;
        let acc = &mut scratch.acc[..l];
        acc.fill(0);
        acc[0] = 1;
        for slots in &class.prim_slots {
            let s = &mut scratch.s[..l];
            s.fill(0);
            for (idx, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    s[slots[idx] as usize] += c as i128;
                }
            }
            let next = &mut scratch.next[..l];
            next.fill(0);
            for (j, &sj) in s.iter().enumerate() {
                if sj == 0 {
                    continue;
                }
                for (i, &ai) in acc.iter().enumerate() {
                    if ai != 0 {
                        let mut idx = i + j;
                        if idx >= l {
                            idx -= l;
                        }
                        next[idx] = next[idx].checked_add(ai.checked_mul(sj)?)?;
                    }
                }
            }
            acc.copy_from_slice(next);
        }
        let mut factor: i128 = 0;
        for (aj, rj) in acc.iter().zip(&class.red0) {
            if *aj != 0 {
                factor = factor.checked_add(aj.checked_mul(*rj)?)?;
            }
        }
        if factor == 0 {
            return Some(Outcome::Zero);
        }
        total = total.checked_mul(factor)?;
        if total.unsigned_abs() > u128::from(bound) {
            return Some(Outcome::Big);
        }
    }
    let mag = total.unsigned_abs();
    Some(if mag == 1 { Outcome::Unit } else { Outcome::Small(mag as u64) })
}

/// Big-integer fallback for the rare candidate that overflows i128.
fn exact_measure(coeffs: &[i64], plans: &KernelPlans, bound: u64) -> Outcome {
    let big: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
    let elt = GroupRingElement::from_coeffs(plans.group.clone(), big);
    let factors = resultant_factors(&plans.group, &elt.to_polynomial())
        .expect("kernel groups stay under the order cap");
    let m = factors.into_iter().fold(BigInt::one(), |acc, (_, v)| acc * v);
    if m.is_zero() {
        Outcome::Zero
    } else {
        let mag = m.abs();
        if mag.is_one() {
            Outcome::Unit
        } else {
            match u64::try_from(&mag) {
                Ok(v) if v <= bound => Outcome::Small(v),
                _ => Outcome::Big,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::make_group;
    use crate::measure::measure_by_resultants;
    use crate::poly::GroupRingElement;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn reference_magnitude(group: &GroupSpec, coeffs: &[i64]) -> BigInt {
        let big: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        let elt = GroupRingElement::from_coeffs(group.clone(), big);
        measure_by_resultants(group, &elt.to_polynomial())
            .unwrap()
            .m_int
            .abs()
    }

    #[test]
    fn kernel_matches_exact_path_on_randoms() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for orders in [vec![2, 4], vec![3, 3], vec![8], vec![2, 2, 2], vec![6]] {
            let g = make_group(&orders).unwrap();
            let plans = KernelPlans::build(&g).unwrap();
            let mut scratch = plans.scratch();
            let size = g.order_usize().unwrap();
            for _ in 0..60 {
                let coeffs: Vec<i64> =
                    (0..size).map(|_| rng.gen_range(-3i64..=3)).collect();
                let got = measure_candidate(&coeffs, &plans, u64::MAX, &mut scratch);
                let want = reference_magnitude(&g, &coeffs);
                match got {
                    Outcome::Zero => assert!(want.is_zero(), "{coeffs:?}"),
                    Outcome::Unit => assert!(want.is_one(), "{coeffs:?}"),
                    Outcome::Small(v) => assert_eq!(BigInt::from(v), want, "{coeffs:?}"),
                    Outcome::Big => panic!("nothing exceeds u64::MAX here: {coeffs:?}"),
                }
            }
        }
    }

    #[test]
    fn bound_is_inclusive_at_equality() {
        // x^2+x+1 over Z4 has |M| = 3: equal bound keeps it, lower discards
        let g = make_group(&[4]).unwrap();
        let plans = KernelPlans::build(&g).unwrap();
        let mut scratch = plans.scratch();
        let coeffs = [1i64, 1, 1, 0];
        assert_eq!(measure_candidate(&coeffs, &plans, 3, &mut scratch), Outcome::Small(3));
        assert_eq!(measure_candidate(&coeffs, &plans, 2, &mut scratch), Outcome::Big);
    }

    #[test]
    fn big_coefficients_fall_back_to_exact_path() {
        let g = make_group(&[2, 4]).unwrap();
        let plans = KernelPlans::build(&g).unwrap();
        let mut scratch = plans.scratch();
        // 2^62-scale coefficients overflow the i128 convolution long before
        // the final product; outcome must still be correct
        let c = 1i64 << 62;
        let coeffs = [c, c - 1, c - 2, 3, c, 5, c, 7];
        let want = reference_magnitude(&g, &coeffs);
        match measure_candidate(&coeffs, &plans, u64::MAX, &mut scratch) {
            Outcome::Big => assert!(want > BigInt::from(u64::MAX)),
            Outcome::Small(v) => assert_eq!(BigInt::from(v), want),
            Outcome::Zero => assert!(want.is_zero()),
            Outcome::Unit => assert!(want.is_one()),
        }
    }

    #[test]
    fn refuses_huge_cyclic_lengths() {
        let g = make_group(&[512]).unwrap();
        assert!(matches!(KernelPlans::build(&g), Err(Error::ResourceLimit(_))));
    }
}
