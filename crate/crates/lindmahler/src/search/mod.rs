//! Exhaustive search for the least |M_G(F)| > 1 over a coefficient box.
//!
//! Candidates are the reduced elements with coefficients in [-c, c],
//! enumerated in odometer order (last group index fastest). Two filters cut
//! the space, both value-safe: the p-group F(1,...,1) divisibility prune
//! (a pruned candidate has |M| = 0 or |M| >= |G| p^k) and a symmetry skip
//! test that keeps exactly the arrays minimal in their translation-negation
//! suborbit. Workers own disjoint rank ranges and share one monotone atomic
//! bound; the merge is a deterministic min-reduction, so the report is
//! independent of thread count.

pub mod canonical;
pub mod kernel;

use std::collections::BTreeMap;
use std::ops::Range;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_traits::Signed;

use crate::groups::GroupSpec;
use crate::measure::{measure_by_determinant, measure_by_resultants};
use crate::poly::{GroupRingElement, IntPolynomial};
use crate::{Error, Result};

pub use canonical::{canonical_form, SymmetryTable};
pub use kernel::{measure_candidate, KernelPlans, Outcome};

pub const DEFAULT_CANDIDATE_BUDGET: u128 = 200_000_000;

const PRUNE_F1: &str = "f1_divisible";
const PRUNE_SYMMETRY: &str = "non_canonical";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub group: GroupSpec,
    /// Coefficients range over [-coeff_bound, coeff_bound].
    pub coeff_bound: i64,
    pub thread_count: usize,
    /// Skip arrays that are not minimal in their translation-negation orbit.
    pub symmetry_reduction: bool,
    /// On p-groups, skip arrays with p | F(1,...,1).
    pub prune_even_f1: bool,
    /// Report every witness attaining the minimum, not just the least one.
    pub report_all_witnesses: bool,
    /// Refuse boxes with more than this many arrays unless `force` is set.
    pub candidate_budget: u128,
    pub force: bool,
}

impl SearchConfig {
    pub fn new(group: GroupSpec) -> Self {
        SearchConfig {
            group,
            coeff_bound: 1,
            thread_count: 1,
            symmetry_reduction: true,
            prune_even_f1: true,
            report_all_witnesses: false,
            candidate_budget: DEFAULT_CANDIDATE_BUDGET,
            force: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    /// Least |M| > 1 found in the box, if any candidate exists.
    pub lambda_found: Option<BigInt>,
    /// Canonical forms attaining it, sorted; one entry unless
    /// `report_all_witnesses`.
    pub witnesses: Vec<GroupRingElement>,
    pub explored: u64,
    pub pruned: BTreeMap<String, u64>,
    /// Whether the reported minimum is provably the box minimum (the f1
    /// prune can only hide values when it cut candidates and nothing below
    /// the |G| p^k divisibility floor was found).
    pub exhaustive_in_box: bool,
    pub box_config: SearchConfig,
}

/// Number of coefficient arrays in the box, `None` on u128 overflow.
pub fn space_size(config: &SearchConfig) -> Option<u128> {
    let size = config.group.order_usize()?;
    let base = u128::try_from(2 * config.coeff_bound + 1).ok()?;
    base.checked_pow(u32::try_from(size).ok()?)
}

/// Split the box into `thread_count` near-equal contiguous rank ranges.
pub fn partition_space(config: &SearchConfig) -> Vec<Range<u128>> {
    let space = space_size(config).expect("space size checked before partitioning");
    let n = config.thread_count.max(1) as u128;
    let chunk = space / n;
    let extra = space % n;
    let mut ranges = Vec::with_capacity(n as usize);
    let mut start = 0u128;
    for i in 0..n {
        let len = chunk + u128::from(i < extra);
        ranges.push(start..start + len);
        start += len;
    }
    ranges
}

struct WorkerOutcome {
    best: u64,
    witnesses: Vec<Vec<i64>>,
    explored: u64,
    pruned_f1: u64,
    pruned_symmetry: u64,
}

/// Odometer over one rank range with the derived state the filters need.
struct BoxWalker {
    digits: Vec<u64>,
    coeffs: Vec<i64>,
    base: u64,
    bound: i64,
    f1: i64,
    nonzero: usize,
}

impl BoxWalker {
    fn seek(config: &SearchConfig, rank: u128) -> Self {
        let size = config.group.order_usize().expect("order checked");
        let c = config.coeff_bound;
        let base = (2 * c + 1) as u64;
        let mut digits = vec![0u64; size];
        let mut rem = rank;
        for i in (0..size).rev() {
            digits[i] = (rem % u128::from(base)) as u64;
            rem /= u128::from(base);
        }
        let coeffs: Vec<i64> = digits.iter().map(|&d| d as i64 - c).collect();
        let f1 = coeffs.iter().sum();
        let nonzero = coeffs.iter().filter(|&&v| v != 0).count();
        BoxWalker { digits, coeffs, base, bound: c, f1, nonzero }
    }

    #[inline]
    fn advance(&mut self) {
        let mut pos = self.digits.len();
        while pos > 0 {
            pos -= 1;
            if self.digits[pos] + 1 < self.base {
                self.digits[pos] += 1;
                let old = self.coeffs[pos];
                self.coeffs[pos] = old + 1;
                self.f1 += 1;
                if old == 0 {
                    self.nonzero += 1;
                } else if old == -1 {
                    self.nonzero -= 1;
                }
                return;
            }
            // wrap +c -> -c: sum drops by 2c, nonzero count unchanged
            self.digits[pos] = 0;
            self.coeffs[pos] = -self.bound;
            self.f1 -= 2 * self.bound;
        }
    }
}

fn run_range(
    config: &SearchConfig,
    range: Range<u128>,
    plans: &KernelPlans,
    translations: &[Vec<u16>],
    prune_modulus: Option<i64>,
    shared_bound: &AtomicU64,
) -> WorkerOutcome {
    let mut out = WorkerOutcome {
        best: u64::MAX,
        witnesses: Vec::new(),
        explored: 0,
        pruned_f1: 0,
        pruned_symmetry: 0,
    };
    if range.is_empty() {
        return out;
    }
    let mut walker = BoxWalker::seek(config, range.start);
    let mut scratch = plans.scratch();
    let mut remaining = range.end - range.start;
    loop {
        if let Some(p) = prune_modulus {
            if walker.f1.rem_euclid(p) == 0 {
                out.pruned_f1 += 1;
                remaining -= 1;
                if remaining == 0 {
                    break;
                }
                walker.advance();
                continue;
            }
        }
        if config.symmetry_reduction {
            // cheap rejections first: a canonical array has positive lead
            // coefficient, or is identically zero
            let c0 = walker.coeffs[0];
            let minimal = (c0 > 0 || (c0 == 0 && walker.nonzero == 0))
                && canonical::is_subgroup_minimal(&walker.coeffs, translations);
            if !minimal {
                out.pruned_symmetry += 1;
                remaining -= 1;
                if remaining == 0 {
                    break;
                }
                walker.advance();
                continue;
            }
        }
        out.explored += 1;
        let bound = shared_bound.load(Ordering::Relaxed);
        match measure_candidate(&walker.coeffs, plans, bound, &mut scratch) {
            Outcome::Zero | Outcome::Unit | Outcome::Big => {}
            Outcome::Small(v) => {
                if v < out.best {
                    out.best = v;
                    out.witnesses.clear();
                    out.witnesses.push(walker.coeffs.clone());
                    shared_bound.fetch_min(v, Ordering::Relaxed);
                } else if v == out.best {
                    out.witnesses.push(walker.coeffs.clone());
                }
            }
        }
        remaining -= 1;
        if remaining == 0 {
            break;
        }
        walker.advance();
    }
    out
}

pub fn lambda_search(config: &SearchConfig) -> Result<SearchReport> {
    if config.coeff_bound < 1 {
        return Err(Error::InvalidInput("coefficient bound must be >= 1".into()));
    }
    let space = space_size(config).ok_or_else(|| {
        Error::ResourceLimit("search space size overflows u128".into())
    })?;
    if space > config.candidate_budget && !config.force {
        return Err(Error::ResourceLimit(format!(
            "box holds {space} arrays, over the budget of {}; pass force to run anyway",
            config.candidate_budget
        )));
    }
    let plans = KernelPlans::build(&config.group)?;
    let table = SymmetryTable::build(&config.group);
    let prune_modulus = if config.prune_even_f1 {
        crate::groups::p_group_structure(&config.group).map(|st| st.prime as i64)
    } else {
        None
    };

    let ranges = partition_space(config);
    let shared_bound = AtomicU64::new(u64::MAX);
    let outcomes: Vec<WorkerOutcome> = std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|range| {
                let plans = &plans;
                let translations = table.translations.as_slice();
                let shared_bound = &shared_bound;
                scope.spawn(move || {
                    run_range(config, range, plans, translations, prune_modulus, shared_bound)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
    });

    let mut pruned = BTreeMap::new();
    if prune_modulus.is_some() {
        pruned.insert(PRUNE_F1.to_string(), outcomes.iter().map(|o| o.pruned_f1).sum());
    }
    if config.symmetry_reduction {
        pruned.insert(
            PRUNE_SYMMETRY.to_string(),
            outcomes.iter().map(|o| o.pruned_symmetry).sum(),
        );
    }
    let explored = outcomes.iter().map(|o| o.explored).sum();

    let best = outcomes.iter().map(|o| o.best).min().unwrap_or(u64::MAX);
    let (lambda_found, witnesses) = if best == u64::MAX {
        (None, Vec::new())
    } else {
        let lambda = BigInt::from(best);
        let mut canon: Vec<GroupRingElement> = Vec::new();
        for o in outcomes.iter().filter(|o| o.best == best) {
            for coeffs in &o.witnesses {
                let big: Vec<BigInt> = coeffs.iter().map(|&v| BigInt::from(v)).collect();
                let elt = GroupRingElement::from_coeffs(config.group.clone(), big);
                let c = canonical::canonical_with_table(&elt, &config.group, &table);
                if !canon.contains(&c) {
                    canon.push(c);
                }
            }
        }
        canon.sort_by(|a, b| canonical::array_cmp(a.coeffs(), b.coeffs()));
        if !config.report_all_witnesses {
            canon.truncate(1);
        }
        for w in &canon {
            let check = measure_by_determinant(&config.group, &w.to_polynomial())?;
            if check.m_int.abs() != lambda {
                return Err(Error::VerificationFailed(format!(
                    "witness recomputation gave |M| = {}, search found {}",
                    check.m_int.abs(),
                    lambda
                )));
            }
        }
        (Some(lambda), canon)
    };

    let exhaustive_in_box = match prune_modulus {
        None => true,
        Some(p) => {
            // pruned candidates satisfy |M| = 0 or |G| p^k | M
            let st = crate::groups::p_group_structure(&config.group)
                .expect("prune implies p-group");
            let floor = config.group.cardinality()
                * BigInt::from(p).pow(st.num_factors as u32);
            matches!(&lambda_found, Some(l) if *l < floor)
        }
    };

    Ok(SearchReport {
        lambda_found,
        witnesses,
        explored,
        pruned,
        exhaustive_in_box,
        box_config: config.clone(),
    })
}

/// Check |M_G(F)| = |expected| by the determinant path, cross-checked
/// against the divisor-class product.
pub fn verify_witness(group: &GroupSpec, f: &IntPolynomial, expected: &BigInt) -> Result<bool> {
    let det = measure_by_determinant(group, f)?;
    let res = measure_by_resultants(group, f)?;
    if det.m_int != res.m_int {
        return Err(Error::VerificationFailed(format!(
            "measure paths disagree: determinant {} vs divisor-class product {}",
            det.m_int, res.m_int
        )));
    }
    Ok(det.m_int.abs() == expected.abs())
}
