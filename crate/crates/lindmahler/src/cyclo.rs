//! Univariate integer polynomials, resultants, and cyclotomic polynomials.
//!
//! Resultants are computed with the subresultant PRS (fraction-free, no
//! coefficient blowup); a Sylvester-determinant evaluation doubles as an
//! independent oracle in tests and in the resultant table's checked mode.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

/// Dense univariate polynomial over Z, coefficients stored low-to-high.
/// Invariant: no trailing zero coefficient; the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly { coeffs: vec![BigInt::one()] }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        assert!(n >= 1);
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = -BigInt::one();
        coeffs[n] = BigInt::one();
        UniPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient; panics on the zero polynomial.
    pub fn lc(&self) -> &BigInt {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        UniPoly::new(out)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        UniPoly::new(out)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn mul_scalar(&self, s: &BigInt) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Divide every coefficient by `s`, which must divide exactly.
    fn div_scalar_exact(&self, s: &BigInt) -> UniPoly {
        assert!(!s.is_zero());
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let (q, r) = c.div_rem(s);
                debug_assert!(r.is_zero(), "inexact scalar division in PRS");
                q
            })
            .collect();
        UniPoly { coeffs }
    }

    /// Positive gcd of the coefficients; 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &UniPoly) -> Option<UniPoly> {
        assert!(!d.is_zero());
        if self.is_zero() {
            return Some(UniPoly::zero());
        }
        let (dn, dd) = (self.degree().unwrap(), d.degree().unwrap());
        if dn < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); dn - dd + 1];
        for k in (0..=dn - dd).rev() {
            let lead = std::mem::take(&mut rem[k + dd]);
            if lead.is_zero() {
                continue;
            }
            let (q, r) = lead.div_rem(d.lc());
            if !r.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().take(dd).enumerate() {
                rem[k + i] -= &q * dc;
            }
            quot[k] = q;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(UniPoly::new(quot))
        } else {
            None
        }
    }

    /// Remainder of `self` modulo a monic divisor.
    pub fn rem_monic(&self, m: &UniPoly) -> UniPoly {
        assert!(m.is_monic(), "rem_monic requires a monic modulus");
        let dm = m.degree().unwrap();
        let mut rem = self.coeffs.clone();
        while rem.len() > dm {
            let lead = rem.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            let k = rem.len() - dm;
            for (i, mc) in m.coeffs.iter().take(dm).enumerate() {
                rem[k + i] -= &lead * mc;
            }
        }
        UniPoly::new(rem)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `self(-x)`.
    pub fn compose_neg(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        UniPoly { coeffs }
    }
}

/// Pseudo-remainder: the unique R with `lc(B)^(deg A - deg B + 1) * A = Q*B + R`
/// and `deg R < deg B`. Requires `deg A >= deg B >= 0`, `B` nonzero.
pub fn pseudo_rem(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let da = a.degree().expect("pseudo_rem: zero dividend");
    let db = b.degree().expect("pseudo_rem: zero divisor");
    assert!(da >= db);
    let lb = b.lc().clone();
    let mut rem = a.coeffs.clone();
    // remaining power of lc(B) still owed after the loop below
    let mut owed = (da - db + 1) as isize;
    for k in (db..=da).rev() {
        if rem.len() <= k {
            continue;
        }
        let lead = rem[k].clone();
        rem.truncate(k);
        for c in rem.iter_mut() {
            *c = &*c * &lb;
        }
        if !lead.is_zero() {
            for (i, bc) in b.coeffs.iter().take(db).enumerate() {
                rem[k - db + i] -= &lead * bc;
            }
        }
        while rem.last().is_some_and(|c| c.is_zero()) {
            rem.pop();
        }
        owed -= 1;
    }
    let mut r = UniPoly::new(rem);
    while owed > 0 {
        r = r.mul_scalar(&lb);
        owed -= 1;
    }
    r
}

/// Resultant of two integer polynomials (subresultant PRS, fraction-free).
///
/// `Res(A, B) = lc(A)^deg(B) * prod B(alpha)` over the roots of `A`; for two
/// constants the convention is 1; anything against the zero polynomial is 0.
pub fn resultant(a: &UniPoly, b: &UniPoly) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let ca = a.content();
    let cb = b.content();
    let mut f = a.div_scalar_exact(&ca);
    let mut g_poly = b.div_scalar_exact(&cb);
    let da = f.degree().unwrap();
    let db = g_poly.degree().unwrap();
    let t = ca.pow(db as u32) * cb.pow(da as u32);
    if da == 0 && db == 0 {
        return t;
    }
    if da == 0 {
        // f is a primitive constant (+-1)
        return t * f.lc().pow(db as u32);
    }
    if db == 0 {
        return t * g_poly.lc().pow(da as u32);
    }
    let mut s = 1i32;
    if da < db {
        std::mem::swap(&mut f, &mut g_poly);
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let d_f = f.degree().unwrap();
        let d_g = g_poly.degree().unwrap();
        if d_g == 0 {
            break;
        }
        let delta = d_f - d_g;
        if d_f % 2 == 1 && d_g % 2 == 1 {
            s = -s;
        }
        let r = pseudo_rem(&f, &g_poly);
        if r.is_zero() {
            // common factor of positive degree
            return BigInt::zero();
        }
        f = g_poly;
        let denom = &g * (&h).pow(delta as u32);
        g_poly = r.div_scalar_exact(&denom);
        g = f.lc().clone();
        h = if delta == 0 {
            h
        } else {
            let num = (&g).pow(delta as u32);
            let den = (&h).pow((delta - 1) as u32);
            let (q, rr) = num.div_rem(&den);
            debug_assert!(rr.is_zero());
            q
        };
    }
    let d = f.degree().unwrap();
    let c = g_poly.lc();
    let num = c.pow(d as u32);
    let den = (&h).pow((d - 1) as u32);
    let (q, rr) = num.div_rem(&den);
    debug_assert!(rr.is_zero());
    let res = t * q;
    if s < 0 {
        -res
    } else {
        res
    }
}

/// Resultant as the Sylvester-matrix determinant. Independent of
/// [`resultant`]; used as a cross-check.
pub fn resultant_sylvester(a: &UniPoly, b: &UniPoly) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let m = a.degree().unwrap();
    let n = b.degree().unwrap();
    if m == 0 {
        return a.lc().pow(n as u32);
    }
    if n == 0 {
        return b.lc().pow(m as u32);
    }
    let size = m + n;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for t in 0..=m {
            mat[i][i + t] = a.coeff(m - t);
        }
    }
    for j in 0..m {
        for t in 0..=n {
            mat[n + j][j + t] = b.coeff(n - t);
        }
    }
    crate::linalg::det_bareiss(mat)
}

/// Sorted divisors of `n`.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Euler totient by trial-division factorization.
pub fn euler_phi(mut n: u64) -> u64 {
    assert!(n >= 1);
    let mut phi = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut pk = 1;
            n /= p;
            while n % p == 0 {
                pk *= p;
                n /= p;
            }
            phi *= pk * (p - 1);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        phi *= n - 1;
    }
    phi
}

/// The n-th cyclotomic polynomial, by the divisor sieve
/// `Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d`, cached per process.
pub fn cyclotomic(n: u64) -> UniPoly {
    static CACHE: OnceLock<Mutex<HashMap<u64, UniPoly>>> = OnceLock::new();
    assert!(n >= 1);
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(p) = guard.get(&n) {
        return p.clone();
    }
    let divs = divisors(n);
    for &d in &divs {
        if guard.contains_key(&d) {
            continue;
        }
        let mut num = UniPoly::x_pow_minus_one(d as usize);
        for &e in &divs {
            if e < d && d % e == 0 {
                let phi_e = guard.get(&e).expect("divisors visited in ascending order");
                num = num.div_exact(phi_e).expect("cyclotomic sieve division is exact");
            }
        }
        guard.insert(d, num);
    }
    guard.get(&n).unwrap().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), UniPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2), UniPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(3), UniPoly::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), UniPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), UniPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(8), UniPoly::from_i64(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic(9), UniPoly::from_i64(&[1, 0, 0, 1, 0, 0, 1]));
        assert_eq!(cyclotomic(12), UniPoly::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn cyclotomic_degree_is_phi_and_product_recovers_xn_minus_one() {
        for n in 1u64..=40 {
            assert_eq!(cyclotomic(n).degree().unwrap() as u64, euler_phi(n));
            let mut prod = UniPoly::one();
            for d in divisors(n) {
                prod = prod.mul(&cyclotomic(d));
            }
            assert_eq!(prod, UniPoly::x_pow_minus_one(n as usize));
        }
    }

    #[test]
    fn cyclotomic_value_at_one() {
        // Phi_n(1) = p for prime powers p^k, 1 for n with two prime factors
        assert_eq!(cyclotomic(9).eval(&BigInt::from(1)), BigInt::from(3));
        assert_eq!(cyclotomic(16).eval(&BigInt::from(1)), BigInt::from(2));
        assert_eq!(cyclotomic(15).eval(&BigInt::from(1)), BigInt::from(1));
        assert_eq!(cyclotomic(36).eval(&BigInt::from(1)), BigInt::from(1));
    }

    #[test]
    fn cyclotomic_105_has_coefficient_minus_two() {
        let p = cyclotomic(105);
        assert_eq!(p.coeff(7), BigInt::from(-2));
        assert_eq!(p.coeff(41), BigInt::from(-2));
    }

    #[test]
    fn euler_phi_values() {
        let want = [1u64, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (i, &w) in want.iter().enumerate() {
            assert_eq!(euler_phi(i as u64 + 1), w);
        }
        assert_eq!(euler_phi(64), 32);
        assert_eq!(euler_phi(105), 48);
    }

    #[test]
    fn divisors_sorted() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(16), vec![1, 2, 4, 8, 16]);
        assert_eq!(divisors(1), vec![1]);
    }

    #[test]
    fn resultant_linear_factors() {
        // Res(x - a, x - b) = a - b
        let a = UniPoly::from_i64(&[-5, 1]);
        let b = UniPoly::from_i64(&[-2, 1]);
        assert_eq!(resultant(&a, &b), BigInt::from(3));
        assert_eq!(resultant(&b, &a), BigInt::from(-3));
    }

    #[test]
    fn resultant_known_values() {
        // Res(x^2+1, x^2-2) = (i^2-2)(( -i)^2-2) = 9
        let a = UniPoly::from_i64(&[1, 0, 1]);
        let b = UniPoly::from_i64(&[-2, 0, 1]);
        assert_eq!(resultant(&a, &b), BigInt::from(9));
        // Res(Phi_1, Phi_2) = Phi_2(1) = 2
        assert_eq!(resultant(&cyclotomic(1), &cyclotomic(2)), BigInt::from(2));
        // Res(Phi_2, Phi_4) = Phi_4(-1) = 2
        assert_eq!(resultant(&cyclotomic(2), &cyclotomic(4)), BigInt::from(2));
        // constants
        assert_eq!(resultant(&UniPoly::from_i64(&[3]), &UniPoly::from_i64(&[0, 0, 1])), BigInt::from(9));
        assert_eq!(resultant(&UniPoly::from_i64(&[4]), &UniPoly::from_i64(&[7])), BigInt::one());
        assert_eq!(resultant(&UniPoly::zero(), &cyclotomic(3)), BigInt::zero());
    }

    #[test]
    fn resultant_shared_root_is_zero() {
        let a = cyclotomic(6).mul(&cyclotomic(4));
        let b = cyclotomic(6).mul(&UniPoly::from_i64(&[3, 1]));
        assert_eq!(resultant(&a, &b), BigInt::zero());
    }

    fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize, bound: i64) -> UniPoly {
        let deg = rng.gen_range(0..=max_deg);
        let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect();
        UniPoly::from_i64(&coeffs)
    }

    #[test]
    fn prs_matches_sylvester_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 60 {
            let a = random_poly(&mut rng, 6, 20);
            let b = random_poly(&mut rng, 6, 20);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            assert_eq!(resultant(&a, &b), resultant_sylvester(&a, &b), "a={a:?} b={b:?}");
            checked += 1;
        }
    }

    #[test]
    fn resultant_swap_sign_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..40 {
            let a = random_poly(&mut rng, 5, 9);
            let b = random_poly(&mut rng, 5, 9);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let (m, n) = (a.degree().unwrap(), b.degree().unwrap());
            let lhs = resultant(&a, &b);
            let mut rhs = resultant(&b, &a);
            if m % 2 == 1 && n % 2 == 1 {
                rhs = -rhs;
            }
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn pseudo_rem_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..40 {
            let a = random_poly(&mut rng, 7, 12);
            let b = random_poly(&mut rng, 4, 12);
            if b.is_zero() || a.is_zero() {
                continue;
            }
            let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
            if da < db {
                continue;
            }
            let r = pseudo_rem(&a, &b);
            // lc(b)^(da-db+1) * a - r is divisible by b
            let scaled = a.mul_scalar(&b.lc().pow((da - db + 1) as u32));
            let diff = scaled.sub(&r);
            assert!(diff.is_zero() || diff.div_exact(&b).is_some(), "a={a:?} b={b:?}");
            assert!(r.is_zero() || r.degree().unwrap() < db);
        }
    }

    #[test]
    fn rem_monic_reduces() {
        let m = cyclotomic(4);
        let p = UniPoly::from_i64(&[1, 1, 1]); // x^2+x+1 mod x^2+1 = x
        assert_eq!(p.rem_monic(&m), UniPoly::from_i64(&[0, 1]));
        let q = UniPoly::from_i64(&[0, 0, 0, 0, 2]); // 2x^4 mod x^2+1 = 2
        assert_eq!(q.rem_monic(&m), UniPoly::from_i64(&[2]));
    }
}
