//! Finite abelian groups as ordered products of cyclic factors.
//!
//! A group is described by the sequence of its cyclic factor orders. The
//! factor sequence is kept exactly as given: several constructions elsewhere
//! in the crate are coordinate-sensitive, so no canonical reordering happens
//! here. Symmetry reduction for searches lives in [`crate::search`].

use num_bigint::BigInt;
use num_traits::One;

use crate::{Error, Result};

/// A finite abelian group `Z_n1 x ... x Z_nk`, `n_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    orders: Vec<u64>,
    cardinality: BigInt,
}

/// Decomposition of a p-group: every factor order is a power of one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PGroupStructure {
    pub prime: u64,
    pub num_factors: usize,
    /// `exponents[i]` is the `alpha_i` with `orders[i] = prime^alpha_i`.
    pub exponents: Vec<u32>,
}

/// Index tuple `(j_1, ..., j_k)` of a character, `0 <= j_i < n_i`.
///
/// The character sends the i-th generator to `exp(2*pi*I*j_i/n_i)`; index 0
/// is the trivial component.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharacterIndex(pub Vec<u64>);

/// Build a validated [`GroupSpec`] from cyclic factor orders.
pub fn make_group(orders: &[u64]) -> Result<GroupSpec> {
    if orders.is_empty() {
        return Err(Error::InvalidGroup("order list is empty".into()));
    }
    for &n in orders {
        if n < 2 {
            return Err(Error::InvalidGroup(format!("cyclic order {n} < 2")));
        }
        if n > u32::MAX as u64 {
            return Err(Error::InvalidGroup(format!("cyclic order {n} exceeds 2^32-1")));
        }
    }
    let cardinality = orders.iter().fold(BigInt::one(), |acc, &n| acc * n);
    Ok(GroupSpec { orders: orders.to_vec(), cardinality })
}

impl GroupSpec {
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn num_factors(&self) -> usize {
        self.orders.len()
    }

    /// `|G|` as an arbitrary-precision integer.
    pub fn cardinality(&self) -> &BigInt {
        &self.cardinality
    }

    /// `|G|` as a machine integer, when it fits.
    pub fn order_usize(&self) -> Option<usize> {
        let mut acc: usize = 1;
        for &n in &self.orders {
            acc = acc.checked_mul(usize::try_from(n).ok()?)?;
        }
        Some(acc)
    }

    /// The comma-separated order list, the form used on the CLI and in JSON.
    pub fn orders_string(&self) -> String {
        let parts: Vec<String> = self.orders.iter().map(|n| n.to_string()).collect();
        parts.join(",")
    }

    /// Least common multiple of the factor orders: every character value lies
    /// in the cyclotomic field of this order.
    pub fn exponent_lcm(&self) -> u64 {
        self.orders
            .iter()
            .fold(1u64, |acc, &n| num_integer::lcm(acc, n))
    }

    /// Rank of the exponent tuple `e` (with `0 <= e_i < n_i`) in
    /// lexicographic order, last coordinate fastest.
    pub fn index_of(&self, tuple: &[u64]) -> usize {
        debug_assert_eq!(tuple.len(), self.orders.len());
        let mut idx = 0usize;
        for (&e, &n) in tuple.iter().zip(&self.orders) {
            debug_assert!(e < n);
            idx = idx * n as usize + e as usize;
        }
        idx
    }

    /// Inverse of [`GroupSpec::index_of`].
    pub fn tuple_at(&self, mut index: usize) -> Vec<u64> {
        let mut tuple = vec![0u64; self.orders.len()];
        for i in (0..self.orders.len()).rev() {
            let n = self.orders[i] as usize;
            tuple[i] = (index % n) as u64;
            index /= n;
        }
        debug_assert_eq!(index, 0);
        tuple
    }
}

impl std::fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Return the p-group decomposition of `G`, or `None` if the factor orders
/// are not all powers of one prime.
pub fn p_group_structure(group: &GroupSpec) -> Option<PGroupStructure> {
    let p = smallest_prime_factor(group.orders()[0]);
    let mut exponents = Vec::with_capacity(group.num_factors());
    for &n in group.orders() {
        exponents.push(prime_power_exponent(n, p)?);
    }
    Some(PGroupStructure { prime: p, num_factors: group.num_factors(), exponents })
}

fn smallest_prime_factor(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 2;
    }
    n
}

/// `alpha` such that `n = p^alpha`, if it exists (`alpha >= 1`).
fn prime_power_exponent(mut n: u64, p: u64) -> Option<u32> {
    let mut alpha = 0u32;
    while n % p == 0 {
        n /= p;
        alpha += 1;
    }
    if n == 1 && alpha >= 1 {
        Some(alpha)
    } else {
        None
    }
}

/// Iterate the `|G|` character index tuples in lexicographic order.
pub fn enumerate_characters(group: &GroupSpec) -> CharacterIter {
    CharacterIter { orders: group.orders().to_vec(), state: None, done: false }
}

pub struct CharacterIter {
    orders: Vec<u64>,
    state: Option<Vec<u64>>,
    done: bool,
}

impl Iterator for CharacterIter {
    type Item = CharacterIndex;

    fn next(&mut self) -> Option<CharacterIndex> {
        if self.done {
            return None;
        }
        match &mut self.state {
            None => {
                let first = vec![0u64; self.orders.len()];
                self.state = Some(first.clone());
                Some(CharacterIndex(first))
            }
            Some(tuple) => {
                // odometer increment, last coordinate fastest
                for i in (0..tuple.len()).rev() {
                    tuple[i] += 1;
                    if tuple[i] < self.orders[i] {
                        return Some(CharacterIndex(tuple.clone()));
                    }
                    tuple[i] = 0;
                }
                self.done = true;
                None
            }
        }
    }
}
