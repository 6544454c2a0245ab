//! Gaussian integers and the exact resultant against `y^m - i`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// `re + im*i` with arbitrary-precision components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussianInteger {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInteger {
    pub fn new(re: BigInt, im: BigInt) -> Self {
        GaussianInteger { re, im }
    }

    pub fn from_i64(re: i64, im: i64) -> Self {
        Self::new(BigInt::from(re), BigInt::from(im))
    }

    pub fn zero() -> Self {
        Self::from_i64(0, 0)
    }

    pub fn one() -> Self {
        Self::from_i64(1, 0)
    }

    pub fn i_unit() -> Self {
        Self::from_i64(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.re, -&self.im)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    /// `|z|^2 = re^2 + im^2`.
    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiply by `i^k`.
    pub fn mul_i_pow(&self, k: u32) -> Self {
        match k % 4 {
            0 => self.clone(),
            1 => Self::new(-&self.im, self.re.clone()),
            2 => self.neg(),
            _ => Self::new(self.im.clone(), -&self.re),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`
    /// in Z[i].
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero());
        let n = d.norm();
        let num = self.mul(&d.conj());
        let (qr, rr) = num_integer::Integer::div_rem(&num.re, &n);
        let (qi, ri) = num_integer::Integer::div_rem(&num.im, &n);
        if rr.is_zero() && ri.is_zero() {
            Some(Self::new(qr, qi))
        } else {
            None
        }
    }
}

impl std::fmt::Display for GaussianInteger {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let one = BigInt::one();
        let im_part = if self.im == one {
            "i".to_string()
        } else if self.im == -&one {
            "-i".to_string()
        } else {
            format!("{}i", self.im)
        };
        if self.re.is_zero() {
            return write!(f, "{im_part}");
        }
        if self.im.is_negative() {
            write!(f, "{}{im_part}", self.re)
        } else {
            write!(f, "{}+{im_part}", self.re)
        }
    }
}

/// Bareiss fraction-free determinant over Z[i]; interior divisions are exact
/// in any integral domain.
pub fn det_bareiss_gaussian(mut m: Vec<Vec<GaussianInteger>>) -> GaussianInteger {
    let n = m.len();
    if n == 0 {
        return GaussianInteger::one();
    }
    let mut neg = false;
    let mut prev = GaussianInteger::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return GaussianInteger::zero();
            };
            m.swap(k, r);
            neg = !neg;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.exact_div(&prev).expect("Bareiss division must be exact");
            }
            m[i][k] = GaussianInteger::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if neg {
        det.neg()
    } else {
        det
    }
}

/// `f(i)` for an integer polynomial given by its coefficients (low-to-high).
pub fn eval_at_i(coeffs: &[BigInt]) -> GaussianInteger {
    let mut acc = GaussianInteger::zero();
    for (e, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = GaussianInteger::new(c.clone(), BigInt::zero()).mul_i_pow(e as u32 % 4);
        acc = acc.add(&term);
    }
    acc
}

/// `Res(y^m - i, f)`: the product of `f` over the roots of the monic
/// Gaussian polynomial `y^m - i`, computed as the determinant of the
/// multiplication-by-`f` matrix on `Z[i][y]/(y^m - i)`.
pub fn resultant_x_pow_minus_i(m: usize, coeffs: &[BigInt]) -> GaussianInteger {
    assert!(m >= 1);
    // fold: y^(q*m + s) = i^q * y^s
    let mut r = vec![GaussianInteger::zero(); m];
    for (e, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (q, s) = (e / m, e % m);
        let term = GaussianInteger::new(c.clone(), BigInt::zero()).mul_i_pow((q % 4) as u32);
        r[s] = r[s].add(&term);
    }
    // column t holds r(y) * y^t reduced mod y^m - i
    let mut mat = vec![vec![GaussianInteger::zero(); m]; m];
    for t in 0..m {
        for (s, v) in r.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let dest = s + t;
            if dest < m {
                mat[dest][t] = mat[dest][t].add(v);
            } else {
                mat[dest - m][t] = mat[dest - m][t].add(&v.mul_i_pow(1));
            }
        }
    }
    det_bareiss_gaussian(mat)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussianInteger {
        GaussianInteger::from_i64(re, im)
    }

    #[test]
    fn arithmetic_basics() {
        let a = g(1, 2);
        let b = g(3, -1);
        assert_eq!(a.mul(&b), g(5, 5));
        assert_eq!(a.mul(&a.conj()), g(5, 0));
        assert_eq!(a.norm(), BigInt::from(5));
        assert_eq!(a.mul_i_pow(1), g(-2, 1));
        assert_eq!(a.mul_i_pow(2), g(-1, -2));
        assert_eq!(a.mul_i_pow(3), g(2, -1));
        assert_eq!(a.mul_i_pow(4), a);
    }

    #[test]
    fn exact_division() {
        let a = g(5, 5);
        assert_eq!(a.exact_div(&g(3, -1)), Some(g(1, 2)));
        assert_eq!(a.exact_div(&g(2, 0)), None);
        assert_eq!(g(0, 2).exact_div(&g(1, 1)), Some(g(1, 1)));
    }

    #[test]
    fn gaussian_determinants() {
        assert_eq!(
            det_bareiss_gaussian(vec![vec![g(1, 0), g(0, 0)], vec![g(0, 0), g(1, 0)]]),
            g(1, 0)
        );
        assert_eq!(
            det_bareiss_gaussian(vec![vec![g(0, 1), g(1, 0)], vec![g(1, 0), g(0, 1)]]),
            g(-2, 0)
        );
        // singular
        assert_eq!(
            det_bareiss_gaussian(vec![vec![g(1, 1), g(2, 2)], vec![g(2, 2), g(4, 4)]]),
            g(0, 0)
        );
    }

    #[test]
    fn eval_at_i_cycles() {
        // 1 + x + x^2 + x^3 at i: 1 + i - 1 - i = 0
        let coeffs: Vec<BigInt> = (0..4).map(|_| BigInt::from(1)).collect();
        assert_eq!(eval_at_i(&coeffs), g(0, 0));
        // x^2 + x + 1 at i: i
        let f: Vec<BigInt> = [1, 1, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(eval_at_i(&f), g(0, 1));
    }

    #[test]
    fn resultant_against_y2_minus_i() {
        // f = y^2 + y + 1: product over the two square roots of i is
        // (i + 1)^2 - i = i
        let f: Vec<BigInt> = [1, 1, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(resultant_x_pow_minus_i(2, &f), g(0, 1));
        // constant c: Res = c^m
        let c: Vec<BigInt> = vec![BigInt::from(3)];
        assert_eq!(resultant_x_pow_minus_i(2, &c), g(9, 0));
        // f = y: product of roots of y^2 - i is -(-i)... the constant term
        // of y^2 - i is -i, so the root product is -i and Res = -i
        let y: Vec<BigInt> = vec![BigInt::zero(), BigInt::from(1)];
        assert_eq!(resultant_x_pow_minus_i(2, &y), g(0, -1));
    }
}
