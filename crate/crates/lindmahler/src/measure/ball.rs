//! Fixed-point ball arithmetic with certified integer rounding.
//!
//! A ball is `mid/2^prec +- rad/2^prec` with integer `mid`, `rad >= 0`. All
//! operations widen the radius conservatively, so the true value always stays
//! inside the ball; addition and integer scaling are exact, multiplication
//! rounds the midpoint and accounts for it in the radius.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone)]
pub struct RealBall {
    mid: BigInt,
    rad: BigInt,
    prec: u32,
}

impl RealBall {
    pub fn zero(prec: u32) -> Self {
        RealBall { mid: BigInt::zero(), rad: BigInt::zero(), prec }
    }

    pub fn from_bigint(x: &BigInt, prec: u32) -> Self {
        RealBall { mid: x << prec, rad: BigInt::zero(), prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.prec, o.prec);
        RealBall { mid: &self.mid + &o.mid, rad: &self.rad + &o.rad, prec: self.prec }
    }

    pub fn sub(&self, o: &Self) -> Self {
        debug_assert_eq!(self.prec, o.prec);
        RealBall { mid: &self.mid - &o.mid, rad: &self.rad + &o.rad, prec: self.prec }
    }

    pub fn neg(&self) -> Self {
        RealBall { mid: -&self.mid, rad: self.rad.clone(), prec: self.prec }
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.prec, o.prec);
        let scale = BigInt::one() << self.prec;
        let mid_full = &self.mid * &o.mid;
        let mid = mid_full.div_floor(&scale);
        // |a|rb + |b|ra + ra*rb, scaled down, plus slack for both floors
        let err = self.mid.abs() * &o.rad + o.mid.abs() * &self.rad + &self.rad * &o.rad;
        let rad = err.div_floor(&scale) + 2;
        RealBall { mid, rad, prec: self.prec }
    }

    /// Exact scaling by an integer.
    pub fn mul_int(&self, k: &BigInt) -> Self {
        RealBall { mid: &self.mid * k, rad: &self.rad * k.abs(), prec: self.prec }
    }

    /// Division by a positive integer (one ulp of rounding slack).
    pub fn div_uint(&self, d: u64) -> Self {
        assert!(d > 0);
        let d = BigInt::from(d);
        RealBall {
            mid: self.mid.div_floor(&d),
            rad: self.rad.div_floor(&d) + 2,
            prec: self.prec,
        }
    }

    /// Drop `guard` low bits of working precision.
    fn round_to(&self, prec: u32) -> Self {
        assert!(prec <= self.prec);
        let shift = self.prec - prec;
        let scale = BigInt::one() << shift;
        RealBall {
            mid: self.mid.div_floor(&scale),
            rad: self.rad.div_floor(&scale) + 2,
            prec,
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs() <= self.rad
    }

    /// The unique integer inside the ball, if there is exactly one.
    pub fn unique_integer(&self) -> Option<BigInt> {
        let scale = BigInt::one() << self.prec;
        let lo = &self.mid - &self.rad;
        let hi = &self.mid + &self.rad;
        let first = (lo + &scale - BigInt::one()).div_floor(&scale); // ceil
        let last = hi.div_floor(&scale);
        if first == last {
            Some(first)
        } else {
            None
        }
    }

    /// Midpoint as f64, for diagnostics only.
    pub fn mid_f64(&self) -> f64 {
        let num = self.mid.to_f64().unwrap_or(f64::NAN);
        num / 2f64.powi(self.prec as i32)
    }
}

#[derive(Debug, Clone)]
pub struct ComplexBall {
    pub re: RealBall,
    pub im: RealBall,
}

impl ComplexBall {
    pub fn zero(prec: u32) -> Self {
        ComplexBall { re: RealBall::zero(prec), im: RealBall::zero(prec) }
    }

    pub fn one(prec: u32) -> Self {
        ComplexBall { re: RealBall::from_bigint(&BigInt::one(), prec), im: RealBall::zero(prec) }
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexBall { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        ComplexBall {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        ComplexBall { re: self.re.mul_int(k), im: self.im.mul_int(k) }
    }
}

const GUARD_BITS: u32 = 32;

/// `atan(1/x)` scaled by `2^bits`, with an error bound in ulps.
fn atan_inv_scaled(x: u64, bits: u32) -> (BigInt, BigInt) {
    let one = BigInt::one() << bits;
    let x = BigInt::from(x);
    let xx = &x * &x;
    let mut power = one.div_floor(&x);
    let mut acc = BigInt::zero();
    let mut k = 0u64;
    let mut terms = 0u64;
    while !power.is_zero() {
        let term = power.div_floor(&BigInt::from(2 * k + 1));
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        power = power.div_floor(&xx);
        k += 1;
        terms += 1;
    }
    // each term contributes <= 2 ulps of floor error; the dropped tail is
    // below one ulp once `power` reaches zero
    (acc, BigInt::from(2 * terms + 2))
}

/// pi as a ball at the requested precision (Machin's formula), cached.
pub fn pi_ball(prec: u32) -> RealBall {
    static CACHE: OnceLock<Mutex<HashMap<u32, RealBall>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&prec) {
        return p.clone();
    }
    let bits = prec + GUARD_BITS;
    let (a, ea) = atan_inv_scaled(5, bits);
    let (b, eb) = atan_inv_scaled(239, bits);
    let mid = 16 * a - 4 * b;
    let rad = 16 * ea + 4 * eb;
    let pi = RealBall { mid, rad, prec: bits }.round_to(prec);
    cache.lock().unwrap().insert(prec, pi.clone());
    pi
}

/// `(sin t, cos t)` for `|t| <= pi`, by Taylor series with alternating-tail
/// bounds.
pub fn sin_cos(theta: &RealBall) -> (RealBall, RealBall) {
    let prec = theta.prec;
    let t2 = theta.mul(theta);
    // sin: t - t^3/3! + t^5/5! - ...
    let mut sin = theta.clone();
    let mut term = theta.clone();
    let mut k = 1u64;
    loop {
        term = term.mul(&t2).div_uint(2 * k * (2 * k + 1));
        let size = term.mid.abs() + &term.rad;
        if k % 2 == 1 {
            sin = sin.sub(&term);
        } else {
            sin = sin.add(&term);
        }
        // |t| <= pi, so terms decrease strictly from k >= 2 on and the true
        // remainder is bounded by the magnitude of the next term
        if k >= 2 && size <= BigInt::from(4) {
            sin.rad += size + 1;
            break;
        }
        k += 1;
    }
    // cos: 1 - t^2/2! + t^4/4! - ...
    let mut cos = RealBall::from_bigint(&BigInt::one(), prec);
    let mut term = RealBall::from_bigint(&BigInt::one(), prec);
    let mut k = 1u64;
    loop {
        term = term.mul(&t2).div_uint((2 * k - 1) * (2 * k));
        let size = term.mid.abs() + &term.rad;
        if k % 2 == 1 {
            cos = cos.sub(&term);
        } else {
            cos = cos.add(&term);
        }
        if k >= 2 && size <= BigInt::from(4) {
            cos.rad += size + 1;
            break;
        }
        k += 1;
    }
    (sin, cos)
}

/// Certified balls for `w_n^0 .. w_n^(n-1)`, `w_n = exp(2*pi*i/n)`.
pub fn roots_of_unity(n: u64, prec: u32) -> Vec<ComplexBall> {
    assert!(n >= 1);
    let pi = pi_ball(prec);
    (0..n)
        .map(|j| {
            // angle 2*pi*j/n reduced to [-pi, pi]
            let num = if 2 * j > n { 2 * (j as i64) - 2 * (n as i64) } else { 2 * j as i64 };
            let theta = pi.mul_int(&BigInt::from(num)).div_uint(n);
            let (sin, cos) = sin_cos(&theta);
            ComplexBall { re: cos, im: sin }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_matches_f64() {
        let pi = pi_ball(128);
        assert!((pi.mid_f64() - std::f64::consts::PI).abs() < 1e-12);
        assert!(pi.rad < BigInt::from(1u64 << 20));
    }

    #[test]
    fn sin_cos_pythagoras() {
        let prec = 128;
        for n in [3u64, 5, 8, 12] {
            for w in roots_of_unity(n, prec) {
                let s2c2 = w.re.mul(&w.re).add(&w.im.mul(&w.im));
                let one = s2c2.sub(&RealBall::from_bigint(&BigInt::one(), prec));
                assert!(one.contains_zero(), "n={n}");
                assert_eq!(s2c2.unique_integer(), Some(BigInt::one()));
            }
        }
    }

    #[test]
    fn roots_multiply_to_one() {
        let prec = 192;
        let n = 7u64;
        let roots = roots_of_unity(n, prec);
        let mut acc = ComplexBall::one(prec);
        for _ in 0..n {
            acc = acc.mul(&roots[1]);
        }
        assert_eq!(acc.re.unique_integer(), Some(BigInt::one()));
        assert!(acc.im.contains_zero());
        // product of ALL n-th roots of unity is (-1)^(n+1) for n odd -> 1
        let mut prod = ComplexBall::one(prec);
        for r in &roots {
            prod = prod.mul(r);
        }
        assert_eq!(prod.re.unique_integer(), Some(BigInt::one()));
    }

    #[test]
    fn unique_integer_boundaries() {
        let prec = 64;
        let half = RealBall {
            mid: (BigInt::from(5) << prec) / 2,
            rad: BigInt::one() << 62,
            prec,
        };
        assert_eq!(half.unique_integer(), None); // 2.5 +- 0.25 holds no integer... none
        let three = RealBall {
            mid: BigInt::from(3) << prec,
            rad: BigInt::one() << 62,
            prec,
        };
        assert_eq!(three.unique_integer(), Some(BigInt::from(3)));
        let wide = RealBall { mid: BigInt::from(3) << prec, rad: BigInt::from(2) << prec, prec };
        assert_eq!(wide.unique_integer(), None);
    }

    #[test]
    fn exactness_of_linear_ops() {
        let prec = 96;
        let a = RealBall::from_bigint(&BigInt::from(7), prec);
        let b = a.mul_int(&BigInt::from(-3));
        assert_eq!(b.mid, BigInt::from(-21) << prec);
        assert!(b.rad.is_zero());
        let c = a.add(&b);
        assert_eq!(c.mid, BigInt::from(-14) << prec);
        assert!(c.rad.is_zero());
    }
}
