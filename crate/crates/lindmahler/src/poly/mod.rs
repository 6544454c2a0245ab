//! Multivariate integer polynomials, reduction modulo the ideal
//! `I = (x_1^{n_1} - 1, ..., x_k^{n_k} - 1)`, and the named constructions.

mod parse;
mod recovery;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::groups::GroupSpec;
use crate::{Error, Result};

pub use parse::parse_polynomial;
pub(crate) use recovery::pairing;
pub use recovery::{coefficient_recovery, evaluate_characters_exact};

/// Sparse multivariate polynomial over Z.
///
/// Invariant: no stored zero coefficients; every exponent tuple has length
/// `num_vars`. Equality is equality of term maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    num_vars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl IntPolynomial {
    pub fn zero(num_vars: usize) -> Self {
        IntPolynomial { num_vars, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(num_vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; num_vars], c);
        }
        p
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, BigInt::one())
    }

    /// The variable `x_idx` (zero-based).
    pub fn variable(num_vars: usize, idx: usize) -> Self {
        assert!(idx < num_vars);
        let mut exps = vec![0u32; num_vars];
        exps[idx] = 1;
        Self::monomial(exps, BigInt::one())
    }

    pub fn monomial(exponents: Vec<u32>, coeff: BigInt) -> Self {
        let num_vars = exponents.len();
        let mut p = Self::zero(num_vars);
        p.add_term(exponents, coeff);
        p
    }

    pub fn from_terms<I>(num_vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponents: &[u32]) -> BigInt {
        self.terms.get(exponents).cloned().unwrap_or_else(BigInt::zero)
    }

    fn add_term(&mut self, exponents: Vec<u32>, coeff: BigInt) {
        assert_eq!(exponents.len(), self.num_vars);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        assert_eq!(self.num_vars, other.num_vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &IntPolynomial) -> IntPolynomial {
        assert_eq!(self.num_vars, other.num_vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> IntPolynomial {
        IntPolynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        assert_eq!(self.num_vars, other.num_vars);
        let mut out = Self::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea
                    .iter()
                    .zip(eb)
                    .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow in product"))
                    .collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> IntPolynomial {
        let mut base = self.clone();
        let mut acc = Self::one(self.num_vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `F(1, ..., 1)`: the coefficient sum.
    pub fn eval_at_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn eval_int_point(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), self.num_vars);
        let mut acc = BigInt::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(exps) {
                for _ in 0..e {
                    term *= x;
                }
            }
            acc += term;
        }
        acc
    }
}

/// One term of the JSON polynomial form.
#[derive(Debug, Clone, Serialize)]
pub struct TermJson {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

/// Terms in exponent-tuple order, coefficients as decimal strings.
pub fn poly_terms_json(f: &IntPolynomial) -> Vec<TermJson> {
    f.terms().map(|(e, c)| TermJson { exponents: e.clone(), coeff: c.to_string() }).collect()
}

/// The residue of a polynomial modulo `I`, as a dense coefficient array over
/// the group's exponent tuples in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    group: GroupSpec,
    coeffs: Vec<BigInt>,
}

impl GroupRingElement {
    pub fn from_coeffs(group: GroupSpec, coeffs: Vec<BigInt>) -> Self {
        assert_eq!(Some(coeffs.len()), group.order_usize());
        GroupRingElement { group, coeffs }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval_at_ones(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// The reduced representative as a polynomial with per-variable degree
    /// below the factor orders.
    pub fn to_polynomial(&self) -> IntPolynomial {
        let mut p = IntPolynomial::zero(self.group.num_factors());
        for (idx, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let tuple = self.group.tuple_at(idx);
            p.add_term(tuple.iter().map(|&e| e as u32).collect(), c.clone());
        }
        p
    }
}

impl std::fmt::Display for IntPolynomial {
    /// Renders in the input grammar: `x,y,z` for up to three variables,
    /// `x1..x9` beyond, terms in descending exponent order.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let name = |i: usize| -> String {
            if self.num_vars <= 3 {
                ["x", "y", "z"][i].to_string()
            } else {
                format!("x{}", i + 1)
            }
        };
        for (pos, (exps, c)) in self.terms.iter().rev().enumerate() {
            let mut monomial = Vec::new();
            for (i, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => monomial.push(name(i)),
                    _ => monomial.push(format!("{}^{e}", name(i))),
                }
            }
            let mag = if c.sign() == num_bigint::Sign::Minus { -c } else { c.clone() };
            if pos == 0 {
                if c.sign() == num_bigint::Sign::Minus {
                    write!(f, "-")?;
                }
            } else if c.sign() == num_bigint::Sign::Minus {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if monomial.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", monomial.join("*"))?;
            } else {
                write!(f, "{mag}*{}", monomial.join("*"))?;
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.to_polynomial().fmt(f)
    }
}

/// Reduce `F` modulo `I`: fold every exponent `e_i` to `e_i mod n_i` and
/// accumulate coefficients.
pub fn reduce_mod_ideal(f: &IntPolynomial, group: &GroupSpec) -> GroupRingElement {
    assert_eq!(
        f.num_vars(),
        group.num_factors(),
        "polynomial has {} variables but the group has {} factors",
        f.num_vars(),
        group.num_factors()
    );
    let size = group.order_usize().expect("group too large for dense reduction");
    let mut coeffs = vec![BigInt::zero(); size];
    for (exps, c) in f.terms() {
        let folded: Vec<u64> = exps
            .iter()
            .zip(group.orders())
            .map(|(&e, &n)| e as u64 % n)
            .collect();
        coeffs[group.index_of(&folded)] += c;
    }
    GroupRingElement { group: group.clone(), coeffs }
}

/// Vanishing test: `F` vanishes at every character of `G` exactly when its
/// reduction mod `I` is zero.
pub fn is_zero_mod_ideal(f: &IntPolynomial, group: &GroupSpec) -> bool {
    reduce_mod_ideal(f, group).is_zero()
}

/// The trivial-bound witness `-1 + prod_i (1 + x_i + ... + x_i^{n_i - 1})`,
/// whose measure has absolute value `|G| - 1`.
pub fn trivial_bound_poly(group: &GroupSpec) -> Result<IntPolynomial> {
    if group.cardinality() < &BigInt::from(3) {
        return Err(Error::InvalidInput(format!(
            "trivial bound needs |G| >= 3, got {}",
            group.cardinality()
        )));
    }
    let k = group.num_factors();
    let mut prod = IntPolynomial::one(k);
    for (i, &n) in group.orders().iter().enumerate() {
        let ones = IntPolynomial::from_terms(
            k,
            (0..n as u32).map(|e| {
                let mut exps = vec![0u32; k];
                exps[i] = e;
                (exps, BigInt::one())
            }),
        );
        prod = prod.mul(&ones);
    }
    Ok(prod.sub(&IntPolynomial::one(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::make_group;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(text: &str, vars: usize) -> IntPolynomial {
        parse_polynomial(text, vars).unwrap()
    }

    #[test]
    fn term_accumulation_drops_zeros() {
        let a = p("x - x + 3", 1);
        assert_eq!(a.num_terms(), 1);
        assert_eq!(a.coeff(&[0]), BigInt::from(3));
        let b = p("x*y - x*y", 2);
        assert!(b.is_zero());
    }

    #[test]
    fn eval_at_ones_is_coefficient_sum() {
        let f = p("3*x^2 - x + 4", 1);
        assert_eq!(f.eval_at_ones(), BigInt::from(6));
        assert_eq!(f.eval_int_point(&[BigInt::from(2)]), BigInt::from(14));
    }

    #[test]
    fn reduce_folds_exponents() {
        let g = make_group(&[2]).unwrap();
        let r = reduce_mod_ideal(&p("x^2", 1), &g);
        assert_eq!(r.coeffs(), &[BigInt::one(), BigInt::zero()]);

        let g24 = make_group(&[2, 4]).unwrap();
        let a = reduce_mod_ideal(&p("y^4+y", 2), &g24);
        let b = reduce_mod_ideal(&p("1+y", 2), &g24);
        assert_eq!(a, b);

        let c = reduce_mod_ideal(&p("y^2+y+1", 2), &g24);
        let mut want = vec![BigInt::zero(); 8];
        want[0] = BigInt::one(); // (0,0)
        want[1] = BigInt::one(); // (0,1)
        want[2] = BigInt::one(); // (0,2)
        assert_eq!(c.coeffs(), &want[..]);
    }

    #[test]
    fn vanishing_test_examples() {
        let g2 = make_group(&[2]).unwrap();
        assert!(is_zero_mod_ideal(&p("x^2-1", 1), &g2));

        let g24 = make_group(&[2, 4]).unwrap();
        assert!(!is_zero_mod_ideal(&p("(x-1)*(y^2-1)", 2), &g24));

        let g42 = make_group(&[4, 2]).unwrap();
        let gen = p("x^4-1", 2);
        let f = gen.mul(&p("3*x*y - y + 2", 2));
        assert!(is_zero_mod_ideal(&f, &g42));
        assert!(!is_zero_mod_ideal(&p("x^2-1", 2), &g42));
    }

    #[test]
    fn trivial_bound_examples() {
        let g = make_group(&[2, 4]).unwrap();
        let f = trivial_bound_poly(&g).unwrap();
        // -1 + (1+x)(1+y+y^2+y^3): constant 0, all other coefficients 1
        let r = reduce_mod_ideal(&f, &g);
        assert_eq!(r.coeffs()[0], BigInt::zero());
        assert!(r.coeffs()[1..].iter().all(|c| c.is_one()));
        assert_eq!(f.eval_at_ones(), BigInt::from(7));

        assert!(trivial_bound_poly(&make_group(&[2]).unwrap()).is_err());
    }

    #[test]
    fn to_polynomial_round_trips() {
        let g = make_group(&[3, 2]).unwrap();
        let f = p("2*x^2*y - x + 5", 2);
        let r = reduce_mod_ideal(&f, &g);
        assert_eq!(reduce_mod_ideal(&r.to_polynomial(), &g), r);
    }

    fn random_poly(rng: &mut ChaCha8Rng, vars: usize, max_exp: u32, terms: usize) -> IntPolynomial {
        IntPolynomial::from_terms(
            vars,
            (0..terms).map(|_| {
                let exps: Vec<u32> = (0..vars).map(|_| rng.gen_range(0..=max_exp)).collect();
                (exps, BigInt::from(rng.gen_range(-6i64..=6)))
            }),
        )
    }

    #[test]
    fn ring_axioms_on_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..200 {
            let vars = rng.gen_range(1..=3);
            let f = random_poly(&mut rng, vars, 5, 8);
            let g = random_poly(&mut rng, vars, 5, 8);
            let h = random_poly(&mut rng, vars, 5, 8);
            let lhs = f.add(&g).mul(&h);
            let rhs = f.mul(&h).add(&g.mul(&h));
            assert_eq!(lhs, rhs);
            assert_eq!(f.mul(&g), g.mul(&f));
            assert_eq!(f.sub(&f), IntPolynomial::zero(vars));
        }
    }

    #[test]
    fn reduction_is_idempotent_ring_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let groups = [vec![2u64, 4], vec![8], vec![3, 3], vec![2, 2, 4], vec![5, 2]];
        for _ in 0..200 {
            let orders = &groups[rng.gen_range(0..groups.len())];
            let g = make_group(orders).unwrap();
            let f1 = random_poly(&mut rng, orders.len(), 9, 6);
            let f2 = random_poly(&mut rng, orders.len(), 9, 6);
            let direct = reduce_mod_ideal(&f1.mul(&f2), &g);
            let staged = reduce_mod_ideal(
                &reduce_mod_ideal(&f1, &g)
                    .to_polynomial()
                    .mul(&reduce_mod_ideal(&f2, &g).to_polynomial()),
                &g,
            );
            assert_eq!(direct, staged);
            let once = reduce_mod_ideal(&f1, &g);
            assert_eq!(reduce_mod_ideal(&once.to_polynomial(), &g), once);
        }
    }

    #[test]
    fn ideal_members_vanish() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..100 {
            let orders = [vec![2u64, 4], vec![9], vec![3, 3]][rng.gen_range(0..3)].clone();
            let g = make_group(&orders).unwrap();
            let k = orders.len();
            // sum of h_i * (x_i^{n_i} - 1)
            let mut f = IntPolynomial::zero(k);
            for (i, &n) in orders.iter().enumerate() {
                let mut gen_exps = vec![0u32; k];
                gen_exps[i] = n as u32;
                let gen = IntPolynomial::monomial(gen_exps, BigInt::one())
                    .sub(&IntPolynomial::one(k));
                f = f.add(&gen.mul(&random_poly(&mut rng, k, 6, 4)));
            }
            assert!(is_zero_mod_ideal(&f, &g));
        }
    }
}
