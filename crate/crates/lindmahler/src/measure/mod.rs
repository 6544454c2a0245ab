//! Exact Lind-Mahler measures by three independent routes.
//!
//! `M_G(F)` is the product of `F` over all tuples of roots of unity picked
//! out by the characters of `G`. It is computed here as a group determinant,
//! as a product of cyclotomic-resultant factors indexed by divisor tuples,
//! and (as a cross-check) by certified ball arithmetic. The divisor-tuple
//! factorization specializes to the norm factors `N_t` for p-groups and to
//! the Gaussian-integer factors `R_j` for cyclic 2-groups.

pub mod ball;
pub mod gaussian;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cyclo::{self, UniPoly};
use crate::groups::{enumerate_characters, p_group_structure, GroupSpec};
use crate::linalg;
use crate::poly::{pairing, reduce_mod_ideal, IntPolynomial};
use crate::{Error, Result};

pub use ball::{ComplexBall, RealBall};
pub use gaussian::GaussianInteger;

/// Largest |G| any measure path accepts unless a caller raises the cap.
pub const DEFAULT_GROUP_ORDER_CAP: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeasureMethod {
    Determinant,
    Resultants,
    FloatCheck,
}

impl MeasureMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            MeasureMethod::Determinant => "determinant",
            MeasureMethod::Resultants => "resultants",
            MeasureMethod::FloatCheck => "float-check",
        }
    }
}

#[derive(Debug, Clone)]
pub struct MeasureResult {
    /// The exact integer M_G(F).
    pub m_int: BigInt,
    /// log|M| / |G|; `None` when M = 0.
    pub log_measure: Option<f64>,
    pub method: MeasureMethod,
}

impl MeasureResult {
    pub fn new(m_int: BigInt, group: &GroupSpec, method: MeasureMethod) -> Self {
        let log_measure = if m_int.is_zero() {
            None
        } else {
            let order = group.cardinality().to_f64().unwrap_or(f64::INFINITY);
            Some(ln_abs(&m_int) / order)
        };
        MeasureResult { m_int, log_measure, method }
    }
}

/// Natural log of |x| without overflowing f64 conversion; x must be nonzero.
pub fn ln_abs(x: &BigInt) -> f64 {
    let bits = x.bits();
    assert!(bits > 0, "log of zero");
    if bits <= 512 {
        x.abs().to_f64().expect("fits").ln()
    } else {
        let shift = bits - 64;
        let top = (x.abs() >> shift).to_f64().expect("64-bit window");
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
}

fn order_within_cap(group: &GroupSpec, cap: usize) -> Result<usize> {
    match group.order_usize() {
        Some(n) if n <= cap => Ok(n),
        _ => Err(Error::ResourceLimit(format!(
            "group order {} exceeds cap {cap}",
            group.cardinality()
        ))),
    }
}

/// M_G(F) as the determinant of the |G| x |G| matrix D[g][h] = c_{g-h},
/// where c is F reduced into the group ring.
pub fn measure_by_determinant(group: &GroupSpec, f: &IntPolynomial) -> Result<MeasureResult> {
    measure_by_determinant_capped(group, f, DEFAULT_GROUP_ORDER_CAP)
}

pub fn measure_by_determinant_capped(
    group: &GroupSpec,
    f: &IntPolynomial,
    cap: usize,
) -> Result<MeasureResult> {
    let size = order_within_cap(group, cap)?;
    let elt = reduce_mod_ideal(f, group);
    let tuples: Vec<Vec<u64>> = (0..size).map(|i| group.tuple_at(i)).collect();
    let orders = group.orders();
    let mut m = vec![vec![BigInt::zero(); size]; size];
    for g in 0..size {
        for h in 0..size {
            let diff: Vec<u64> = tuples[g]
                .iter()
                .zip(&tuples[h])
                .zip(orders)
                .map(|((&a, &b), &n)| (a + n - b) % n)
                .collect();
            m[g][h] = elt.coeffs()[group.index_of(&diff)].clone();
        }
    }
    Ok(MeasureResult::new(linalg::det_exact(m), group, MeasureMethod::Determinant))
}

/// One factor of M_G(F) per divisor tuple (d_1|n_1, ..., d_k|n_k), in
/// odometer order with the last coordinate fastest and divisors ascending.
///
/// The factor at `d` is the product of F over all character tuples of exact
/// orders `d`; it is a rational integer because the Galois group of
/// Q(zeta_L)/Q, L = lcm(d_i), permutes those tuples.
pub fn resultant_factors(group: &GroupSpec, f: &IntPolynomial) -> Result<Vec<(Vec<u64>, BigInt)>> {
    resultant_factors_capped(group, f, DEFAULT_GROUP_ORDER_CAP)
}

pub fn resultant_factors_capped(
    group: &GroupSpec,
    f: &IntPolynomial,
    cap: usize,
) -> Result<Vec<(Vec<u64>, BigInt)>> {
    order_within_cap(group, cap)?;
    let elt = reduce_mod_ideal(f, group);
    let mut terms: Vec<(Vec<u64>, BigInt)> = Vec::new();
    for (idx, c) in elt.coeffs().iter().enumerate() {
        if !c.is_zero() {
            terms.push((group.tuple_at(idx), c.clone()));
        }
    }
    let divisor_lists: Vec<Vec<u64>> =
        group.orders().iter().map(|&n| cyclo::divisors(n)).collect();
    let k = group.num_factors();
    let mut out = Vec::new();
    let mut idxs = vec![0usize; k];
    'tuples: loop {
        let d: Vec<u64> = idxs.iter().zip(&divisor_lists).map(|(&i, l)| l[i]).collect();
        let factor = class_factor(&d, &terms)?;
        out.push((d, factor));
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
    Ok(out)
}

/// Product of F over the characters whose component orders are exactly `d`,
/// computed in Z[x]/(x^L - 1) and reduced modulo Phi_L to a constant.
fn class_factor(d: &[u64], terms: &[(Vec<u64>, BigInt)]) -> Result<BigInt> {
    let l = d.iter().fold(1u64, |acc, &di| acc.lcm(&di));
    let lus = l as usize;
    let mut acc = vec![BigInt::zero(); lus];
    acc[0] = BigInt::one();
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
    let mut uidx = vec![0usize; d.len()];
    'tuples: loop {
        let mut s = vec![BigInt::zero(); lus];
        for (t, c) in terms {
            let mut pos = 0u64;
            for i in 0..d.len() {
                let e = (units[i][uidx[i]] * (t[i] % d[i])) % d[i];
                pos = (pos + e * (l / d[i])) % l;
            }
            s[pos as usize] += c;
        }
        let mut next = vec![BigInt::zero(); lus];
        for (j, bj) in s.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            for (i, ai) in acc.iter().enumerate() {
                if !ai.is_zero() {
                    next[(i + j) % lus] += ai * bj;
                }
            }
        }
        acc = next;
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
    let rem = UniPoly::new(acc).rem_monic(&cyclo::cyclotomic(l));
    match rem.degree() {
        None => Ok(BigInt::zero()),
        Some(0) => Ok(rem.coeff(0)),
        Some(_) => Err(Error::NonIntegral(format!(
            "divisor-class product is not rational at {d:?}"
        ))),
    }
}

/// M_G(F) as the product of all divisor-class factors.
pub fn measure_by_resultants(group: &GroupSpec, f: &IntPolynomial) -> Result<MeasureResult> {
    measure_by_resultants_capped(group, f, DEFAULT_GROUP_ORDER_CAP)
}

pub fn measure_by_resultants_capped(
    group: &GroupSpec,
    f: &IntPolynomial,
    cap: usize,
) -> Result<MeasureResult> {
    let factors = resultant_factors_capped(group, f, cap)?;
    let m = factors.iter().fold(BigInt::one(), |acc, (_, v)| acc * v);
    Ok(MeasureResult::new(m, group, MeasureMethod::Resultants))
}

/// Certified floating cross-check: the character product in ball arithmetic.
///
/// Returns the unique integer in the final ball, or `None` when the ball is
/// still too wide at this precision (caller retries with more bits).
pub fn measure_float_check(
    group: &GroupSpec,
    f: &IntPolynomial,
    precision_bits: u32,
) -> Result<Option<BigInt>> {
    if precision_bits < 64 {
        return Err(Error::InvalidInput(format!(
            "precision {precision_bits} below the 64-bit floor"
        )));
    }
    order_within_cap(group, DEFAULT_GROUP_ORDER_CAP)?;
    let elt = reduce_mod_ideal(f, group);
    let n_lcm = group.exponent_lcm();
    let roots = ball::roots_of_unity(n_lcm, precision_bits);
    let mut terms: Vec<(Vec<u64>, BigInt)> = Vec::new();
    for (idx, c) in elt.coeffs().iter().enumerate() {
        if !c.is_zero() {
            terms.push((group.tuple_at(idx), c.clone()));
        }
    }
    let mut acc = ComplexBall::one(precision_bits);
    for chi in enumerate_characters(group) {
        let mut val = ComplexBall::zero(precision_bits);
        for (t, c) in &terms {
            let r = pairing(group, n_lcm, &chi.0, t);
            val = val.add(&roots[r as usize].mul_int(c));
        }
        acc = acc.mul(&val);
    }
    // the true product is a rational integer, so a certified ball must
    // straddle the real axis
    if !acc.im.contains_zero() {
        return Ok(None);
    }
    Ok(acc.re.unique_integer())
}

/// Run the float check on a doubling precision ladder, 128 to 4096 bits.
pub fn measure_float_ladder(group: &GroupSpec, f: &IntPolynomial) -> Result<MeasureResult> {
    let mut prec = 128;
    while prec <= 4096 {
        if let Some(m) = measure_float_check(group, f, prec)? {
            return Ok(MeasureResult::new(m, group, MeasureMethod::FloatCheck));
        }
        prec *= 2;
    }
    Err(Error::ResourceLimit(
        "ball certification failed up to 4096 bits".into(),
    ))
}

/// Norm factors of a p-group measure, keyed by exponent defect.
///
/// For G = Z_{p^a1} x ... x Z_{p^ak}, the factor at defect (t_1, ..., t_k)
/// is the divisor-class factor at (p^{a1-t1}, ..., p^{ak-tk}).
#[derive(Debug, Clone)]
pub struct NormFactorization {
    pub prime: u64,
    pub exponents: Vec<u32>,
    pub factors: BTreeMap<Vec<u32>, BigInt>,
}

impl NormFactorization {
    pub fn product(&self) -> BigInt {
        self.factors.values().fold(BigInt::one(), |acc, v| acc * v)
    }
}

pub fn norm_factorization(group: &GroupSpec, f: &IntPolynomial) -> Result<NormFactorization> {
    let st = p_group_structure(group)
        .ok_or_else(|| Error::NotPGroup(group.orders_string()))?;
    let mut factors = BTreeMap::new();
    for (d, val) in resultant_factors(group, f)? {
        let defect: Vec<u32> = d
            .iter()
            .zip(&st.exponents)
            .map(|(&di, &alpha)| alpha - prime_power_log(di, st.prime))
            .collect();
        factors.insert(defect, val);
    }
    Ok(NormFactorization { prime: st.prime, exponents: st.exponents, factors })
}

fn prime_power_log(mut d: u64, p: u64) -> u32 {
    let mut e = 0;
    while d > 1 {
        debug_assert_eq!(d % p, 0);
        d /= p;
        e += 1;
    }
    e
}

/// |Res(Phi_j, Phi_k)| for j > k >= 1 by the closed form: q^phi(k) when
/// j = k * q^a for a prime q, and 1 otherwise.
pub fn cyclotomic_resultant(j: u64, k: u64) -> Result<BigInt> {
    if k < 1 || j <= k {
        return Err(Error::InvalidInput(format!("need j > k >= 1, got j={j}, k={k}")));
    }
    if j % k != 0 {
        return Ok(BigInt::one());
    }
    match prime_power_base(j / k) {
        Some(q) => {
            let phi = cyclo::euler_phi(k);
            if phi > 1 << 20 {
                return Err(Error::ResourceLimit(format!(
                    "phi({k}) = {phi} makes the resultant astronomically large"
                )));
            }
            Ok(BigInt::from(q).pow(phi as u32))
        }
        None => Ok(BigInt::one()),
    }
}

/// Closed form cross-checked against the generic subresultant algorithm.
pub fn cyclotomic_resultant_checked(j: u64, k: u64) -> Result<BigInt> {
    let closed = cyclotomic_resultant(j, k)?;
    let generic = cyclo::resultant(&cyclo::cyclotomic(j), &cyclo::cyclotomic(k)).abs();
    if closed != generic {
        return Err(Error::VerificationFailed(format!(
            "|Res(Phi_{j}, Phi_{k})|: closed form {closed}, generic {generic}"
        )));
    }
    Ok(closed)
}

fn prime_power_base(q: u64) -> Option<u64> {
    if q < 2 {
        return None;
    }
    let mut p = 0;
    for cand in 2.. {
        if cand * cand > q {
            p = q;
            break;
        }
        if q % cand == 0 {
            p = cand;
            break;
        }
    }
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
    }
    if rest == 1 {
        Some(p)
    } else {
        None
    }
}

/// The factor chain of M_{Z_{2^n}}(f): rational factors N_0 = f(1),
/// N_1 = f(-1), N_2 = |f(i)|^2, and one Gaussian integer R_j per 3 <= j <= n
/// with N_j = |R_j|^2.
#[derive(Debug, Clone)]
pub struct TwoAdicDecomposition {
    pub n0: BigInt,
    pub n1: BigInt,
    pub n2: BigInt,
    /// R_3, ..., R_n.
    pub r_factors: Vec<GaussianInteger>,
}

impl TwoAdicDecomposition {
    /// N_3, ..., N_n.
    pub fn norm_factors(&self) -> Vec<BigInt> {
        self.r_factors.iter().map(|r| r.norm()).collect()
    }

    /// M_{Z_{2^n}}(f) = N_0 N_1 N_2 prod N_j.
    pub fn measure(&self) -> BigInt {
        let mut m = &self.n0 * &self.n1 * &self.n2;
        for r in &self.r_factors {
            m *= r.norm();
        }
        m
    }
}

/// Split M_{Z_{2^n}}(f) into its N_j factors with Gaussian witnesses R_j.
///
/// R_j is the resultant of y^{2^{j-2}} - i (the half of Phi_{2^j} whose
/// roots are the primitive 2^j-th roots with exponent 1 mod 4) with f, so
/// conj(R_j) collects the other half and N_j = R_j conj(R_j).
pub fn two_adic_decomposition(n: u32, f: &IntPolynomial) -> Result<TwoAdicDecomposition> {
    if n < 3 {
        return Err(Error::InvalidInput(format!("decomposition needs n >= 3, got {n}")));
    }
    if n > 10 {
        return Err(Error::ResourceLimit(format!(
            "2^{n} exceeds the supported decomposition range (n <= 10)"
        )));
    }
    if f.num_vars() != 1 {
        return Err(Error::InvalidInput(format!(
            "decomposition needs a univariate polynomial, got {} variables",
            f.num_vars()
        )));
    }
    let coeffs = univariate_coeffs(f)?;
    let n0 = f.eval_int_point(&[BigInt::one()]);
    let n1 = f.eval_int_point(&[BigInt::from(-1)]);
    let n2 = gaussian::eval_at_i(&coeffs).norm();
    let r_factors: Vec<GaussianInteger> = (3..=n)
        .map(|j| gaussian::resultant_x_pow_minus_i(1usize << (j - 2), &coeffs))
        .collect();
    let dec = TwoAdicDecomposition { n0, n1, n2, r_factors };
    if (1usize << n) <= DEFAULT_GROUP_ORDER_CAP {
        verify_against_class_factors(n, f, &dec)?;
    }
    Ok(dec)
}

fn verify_against_class_factors(n: u32, f: &IntPolynomial, dec: &TwoAdicDecomposition) -> Result<()> {
    let group = crate::groups::make_group(&[1u64 << n])?;
    let factors = resultant_factors(&group, f)?;
    for (idx, (_, got)) in factors.iter().enumerate() {
        let want = match idx {
            0 => dec.n0.clone(),
            1 => dec.n1.clone(),
            2 => dec.n2.clone(),
            j => dec.r_factors[j - 3].norm(),
        };
        if *got != want {
            return Err(Error::VerificationFailed(format!(
                "N_{idx} mismatch: |R|^2 gives {want}, class factor gives {got}"
            )));
        }
    }
    Ok(())
}

fn univariate_coeffs(f: &IntPolynomial) -> Result<Vec<BigInt>> {
    let mut deg = 0usize;
    for (e, _) in f.terms() {
        deg = deg.max(e[0] as usize);
    }
    if deg > 1 << 20 {
        return Err(Error::ResourceLimit(format!("degree {deg} too large to densify")));
    }
    let mut v = vec![BigInt::zero(); deg + 1];
    for (e, c) in f.terms() {
        v[e[0] as usize] = c.clone();
    }
    Ok(v)
}
