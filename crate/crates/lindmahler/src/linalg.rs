//! Exact integer determinants: Bareiss fraction-free elimination for small
//! matrices, Chinese-remainder reconstruction under a Hadamard bound for
//! large ones.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Dimension at which [`det_exact`] switches from Bareiss to CRT.
pub const DET_CRT_CROSSOVER: usize = 64;

/// Determinant by Bareiss one-step fraction-free elimination; every interior
/// division is exact.
pub fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut neg = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            neg = !neg;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                let (q, r) = t.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = std::mem::take(&mut m[n - 1][n - 1]);
    if neg {
        -det
    } else {
        det
    }
}

/// An integer `B` with `|det| <= B` (Hadamard row bound, rounded up).
pub fn hadamard_bound(m: &[Vec<BigInt>]) -> BigInt {
    let mut bound = BigInt::one();
    for row in m {
        let s: BigInt = row.iter().map(|a| a * a).sum();
        if s.is_zero() {
            return BigInt::zero();
        }
        bound *= s.sqrt() + 1;
    }
    bound
}

/// Determinant by modular elimination and CRT lifting under the Hadamard
/// bound.
pub fn det_crt(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let bound = hadamard_bound(m);
    if bound.is_zero() {
        return BigInt::zero();
    }
    let need = BigInt::from(2) * &bound + 1;
    let mut residue = BigInt::zero();
    let mut modulus = BigInt::one();
    let mut p = 1u64 << 62;
    while modulus < need {
        p = prev_prime(p);
        let r = det_mod_p(m, p);
        // lift: residue stays the CRT solution mod modulus * p
        let pm = BigInt::from(p);
        let m_inv = modular_inverse_u64(
            (&modulus % &pm).to_u64().unwrap(),
            p,
        );
        let r_cur = (&residue % &pm).mod_floor(&pm).to_u64().unwrap();
        let delta = mul_mod(r.wrapping_sub(r_cur).wrapping_add(p) % p, m_inv, p);
        residue += &modulus * BigInt::from(delta);
        modulus *= &pm;
    }
    // symmetric lift to (-modulus/2, modulus/2)
    if &residue * 2 > modulus {
        residue -= &modulus;
    }
    residue
}

/// Bareiss below [`DET_CRT_CROSSOVER`], CRT at or above it.
pub fn det_exact(m: Vec<Vec<BigInt>>) -> BigInt {
    if m.len() < DET_CRT_CROSSOVER {
        det_bareiss(m)
    } else {
        det_crt(&m)
    }
}

fn det_mod_p(m: &[Vec<BigInt>], p: u64) -> u64 {
    let n = m.len();
    let pm = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|row| row.iter().map(|x| x.mod_floor(&pm).to_u64().unwrap()).collect())
        .collect();
    let mut det = 1u64;
    let mut neg = false;
    for k in 0..n {
        let Some(r) = (k..n).find(|&r| a[r][k] != 0) else {
            return 0;
        };
        if r != k {
            a.swap(k, r);
            neg = !neg;
        }
        let pivot = a[k][k];
        det = mul_mod(det, pivot, p);
        let inv = modular_inverse_u64(pivot, p);
        for i in k + 1..n {
            if a[i][k] == 0 {
                continue;
            }
            let factor = mul_mod(a[i][k], inv, p);
            for j in k..n {
                let sub = mul_mod(factor, a[k][j], p);
                a[i][j] = (a[i][j] + p - sub) % p;
            }
        }
    }
    if neg && det != 0 {
        det = p - det;
    }
    det
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn modular_inverse_u64(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Largest prime strictly below `n`.
fn prev_prime(mut n: u64) -> u64 {
    loop {
        n -= 1;
        if is_prime_u64(n) {
            return n;
        }
    }
}

/// Deterministic Miller-Rabin, valid for all u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn det_naive(m: &[Vec<BigInt>]) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        if n == 1 {
            return m[0][0].clone();
        }
        let mut det = BigInt::zero();
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<BigInt>> = (1..n)
                .map(|i| (0..n).filter(|&c| c != j).map(|c| m[i][c].clone()).collect())
                .collect();
            let term = &m[0][j] * det_naive(&minor);
            if j % 2 == 0 {
                det += term;
            } else {
                det -= term;
            }
        }
        det
    }

    #[test]
    fn bareiss_known_values() {
        assert_eq!(det_bareiss(mat(&[&[1, 0], &[0, 1]])), BigInt::one());
        assert_eq!(det_bareiss(mat(&[&[2, 3], &[4, 5]])), BigInt::from(-2));
        assert_eq!(
            det_bareiss(mat(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])),
            BigInt::from(-3)
        );
        assert_eq!(det_bareiss(mat(&[&[1, 2], &[2, 4]])), BigInt::zero());
        // zero pivot forces a row swap
        assert_eq!(det_bareiss(mat(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
    }

    #[test]
    fn bareiss_crt_naive_agree_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..30 {
            let n = rng.gen_range(1..=5);
            let m: Vec<Vec<BigInt>> = (0..n)
                .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-30i64..=30))).collect())
                .collect();
            let want = det_naive(&m);
            assert_eq!(det_bareiss(m.clone()), want);
            assert_eq!(det_crt(&m), want);
            assert_eq!(det_exact(m.clone()), want);
        }
    }

    #[test]
    fn crt_handles_multi_prime_magnitudes() {
        // diagonal of large entries so |det| needs several 62-bit primes
        let n = 8;
        let big = BigInt::from(i64::MAX / 3);
        let mut m = vec![vec![BigInt::zero(); n]; n];
        let mut want = BigInt::one();
        for i in 0..n {
            let v = &big + i;
            want *= &v;
            m[i][i] = v;
        }
        assert_eq!(det_crt(&m), want);
        assert_eq!(det_crt(&m.iter().map(|r| r.iter().map(|x| -x).collect()).collect::<Vec<_>>()), want);
    }

    #[test]
    fn hadamard_bound_dominates() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..20 {
            let n = rng.gen_range(1..=5);
            let m: Vec<Vec<BigInt>> = (0..n)
                .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect())
                .collect();
            assert!(det_naive(&m).abs() <= hadamard_bound(&m));
        }
    }

    #[test]
    fn primality_spot_checks() {
        assert!(is_prime_u64((1 << 61) - 1)); // Mersenne
        assert!(!is_prime_u64((1 << 62) - 1));
        assert!(is_prime_u64(2));
        assert!(!is_prime_u64(1));
        let p = prev_prime(1 << 62);
        assert!(is_prime_u64(p) && p < (1 << 62));
    }
}
