//! Permutations and their run statistics.
//!
//! A permutation of `{1, ..., n}` is stored in one-line notation. Positions
//! are 1-based throughout: position `i` is a *descent* when `p_i > p_{i+1}`,
//! an *ascent* otherwise, and the permutation *changes direction* at an
//! interior position that is a peak or a valley. A permutation with `k - 1`
//! direction changes has `k` runs (maximal monotone segments); a singleton
//! has 0 runs by convention, and there are no empty permutations.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Default cap for operations that walk all `n!` permutations.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 12;

/// Errors from constructing, parsing, or enumerating permutations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("a permutation must have at least one entry")]
    Empty,
    #[error("entry {value} is outside 1..={n}")]
    EntryOutOfRange { value: usize, n: usize },
    #[error("entry {value} appears more than once")]
    DuplicateEntry { value: usize },
    #[error("pair index {j} is outside 1..={max}")]
    PairIndexOutOfRange { j: usize, max: usize },
    #[error("enumerating {n}! permutations exceeds the limit n <= {limit}")]
    EnumerationLimit { n: usize, limit: usize },
    #[error("cannot parse permutation from {0:?}")]
    Unparseable(String),
}

/// A permutation of `{1, ..., n}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<usize>,
}

/// Run count together with the descent/ascent position sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunStatistics {
    pub runs: usize,
    pub descent_positions: BTreeSet<usize>,
    pub ascent_positions: BTreeSet<usize>,
}

/// Largest valid pair index `j` for length `n`: `⌊(n - 2) / 2⌋`.
///
/// The `j`-th rightmost disjoint position pair is `(n+1-2j, n+2-2j)`; this
/// bound keeps every such pair clear of the first one or two positions.
pub fn half_ascending_bound(n: usize) -> usize {
    n.saturating_sub(2) / 2
}

/// Run count of any sequence of distinct values (0 for len <= 1).
pub fn runs_of(seq: &[usize]) -> usize {
    if seq.len() <= 1 {
        return 0;
    }
    let mut runs = 1;
    for i in 1..seq.len() - 1 {
        if (seq[i - 1] < seq[i]) != (seq[i] < seq[i + 1]) {
            runs += 1;
        }
    }
    runs
}

/// Number of descents (adjacent drops) in a sequence of distinct values.
pub fn descents_of(seq: &[usize]) -> usize {
    seq.windows(2).filter(|w| w[0] > w[1]).count()
}

impl Permutation {
    /// Validates one-line entries: nonempty, each of `1..=n` exactly once.
    pub fn new(entries: Vec<usize>) -> Result<Self, PermError> {
        if entries.is_empty() {
            return Err(PermError::Empty);
        }
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &value in &entries {
            if value < 1 || value > n {
                return Err(PermError::EntryOutOfRange { value, n });
            }
            if seen[value] {
                return Err(PermError::DuplicateEntry { value });
            }
            seen[value] = true;
        }
        Ok(Permutation { entries })
    }

    /// The identity permutation `1 2 ... n`. Panics if `n` is zero.
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "no empty permutations");
        Permutation { entries: (1..=n).collect() }
    }

    pub(crate) fn from_entries_unchecked(entries: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(entries.clone()).is_ok());
        Permutation { entries }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Number of maximal monotone segments; 0 for a singleton.
    pub fn run_count(&self) -> usize {
        runs_of(&self.entries)
    }

    /// 1-based positions `i` with `p_i > p_{i+1}`.
    pub fn descent_positions(&self) -> BTreeSet<usize> {
        self.entries
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// 1-based positions `i` with `p_i < p_{i+1}`.
    pub fn ascent_positions(&self) -> BTreeSet<usize> {
        self.entries
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] < w[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn descent_count(&self) -> usize {
        descents_of(&self.entries)
    }

    /// Run count plus both position sets in one pass-friendly bundle.
    pub fn run_statistics(&self) -> RunStatistics {
        RunStatistics {
            runs: self.run_count(),
            descent_positions: self.descent_positions(),
            ascent_positions: self.ascent_positions(),
        }
    }

    /// The complement `q_i = n + 1 - p_i`.
    ///
    /// An involution that swaps ascents with descents and therefore
    /// preserves the run count.
    pub fn complement(&self) -> Permutation {
        let n = self.n();
        Permutation {
            entries: self.entries.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    /// Largest valid pair index for this permutation's length.
    pub fn max_pair_index(&self) -> usize {
        half_ascending_bound(self.n())
    }

    /// True when the rightmost `j` disjoint pairs all ascend:
    /// `p_{n+1-2i} < p_{n+2-2i}` for every `1 <= i <= j`.
    ///
    /// `j = 0` is vacuously true; `j` beyond [`half_ascending_bound`] is
    /// rejected.
    pub fn is_j_half_ascending(&self, j: usize) -> Result<bool, PermError> {
        let max = self.max_pair_index();
        if j > max {
            return Err(PermError::PairIndexOutOfRange { j, max });
        }
        let n = self.n();
        Ok((1..=j).all(|i| self.entries[n - 2 * i] < self.entries[n + 1 - 2 * i]))
    }

    /// True when every odd position ascends: `p_1 < p_2`, `p_3 < p_4`, ...
    ///
    /// For even `n` this is the fully half-ascending condition (all `n/2`
    /// disjoint pairs ascend).
    pub fn ascends_at_odd_positions(&self) -> bool {
        self.entries.chunks_exact(2).all(|w| w[0] < w[1])
    }

    /// True when every even position ascends: `p_2 < p_3`, `p_4 < p_5`, ...
    pub fn ascends_at_even_positions(&self) -> bool {
        self.entries[1..].chunks_exact(2).all(|w| w[0] < w[1])
    }

    /// The statistic `t_j`: runs of the prefix `p_1 .. p_{n-2j}` plus
    /// descents of the suffix `p_{n-2j} .. p_n` (the boundary entry is
    /// shared). By convention `t_0` is the plain run count.
    pub fn t_statistic(&self, j: usize) -> Result<usize, PermError> {
        if j == 0 {
            return Ok(self.run_count());
        }
        let max = self.max_pair_index();
        if j > max {
            return Err(PermError::PairIndexOutOfRange { j, max });
        }
        let cut = self.n() - 2 * j;
        Ok(runs_of(&self.entries[..cut]) + descents_of(&self.entries[cut - 1..]))
    }

    /// Swaps the two entries of the `j`-th rightmost disjoint pair
    /// (positions `n+1-2j` and `n+2-2j`). An involution.
    pub fn swap_pair(&self, j: usize) -> Result<Permutation, PermError> {
        let max = self.max_pair_index();
        if j == 0 || j > max {
            return Err(PermError::PairIndexOutOfRange { j, max });
        }
        let n = self.n();
        let mut entries = self.entries.clone();
        entries.swap(n - 2 * j, n + 1 - 2 * j);
        Ok(Permutation { entries })
    }
}

impl fmt::Display for Permutation {
    /// Compact digits for `n <= 9`, space-separated entries otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for v in &self.entries {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let words: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", words.join(" "))
        }
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Accepts compact digit strings like `"243165"` (entries 1..9) or
    /// separator-delimited entries like `"10 2 1 ..."` / `"2,4,3,1,6,5"`.
    fn from_str(s: &str) -> Result<Self, PermError> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(PermError::Unparseable(s.to_string()));
        }
        let entries: Vec<usize> = if trimmed.contains([' ', ',']) {
            trimmed
                .split([' ', ','])
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| PermError::Unparseable(s.to_string())))
                .collect::<Result<_, _>>()?
        } else {
            trimmed
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| PermError::Unparseable(s.to_string()))
                })
                .collect::<Result<_, _>>()?
        };
        Permutation::new(entries)
    }
}

/// Lexicographic stream of all permutations of `{1, ..., n}`.
#[derive(Debug, Clone)]
pub struct Permutations {
    next: Option<Vec<usize>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut advanced = current.clone();
        if next_lexicographic(&mut advanced) {
            self.next = Some(advanced);
        }
        Some(Permutation { entries: current })
    }
}

/// All permutations of `{1, ..., n}` in lexicographic order, refusing
/// `n` above [`DEFAULT_ENUMERATION_LIMIT`].
pub fn enumerate_permutations(n: usize) -> Result<Permutations, PermError> {
    enumerate_permutations_with(n, DEFAULT_ENUMERATION_LIMIT)
}

/// As [`enumerate_permutations`], with an explicit limit override.
pub fn enumerate_permutations_with(n: usize, limit: usize) -> Result<Permutations, PermError> {
    if n == 0 {
        return Err(PermError::Empty);
    }
    if n > limit {
        return Err(PermError::EnumerationLimit { n, limit });
    }
    Ok(Permutations { next: Some((1..=n).collect()) })
}

/// Advances to the lexicographic successor in place; false at the last one.
fn next_lexicographic(a: &mut [usize]) -> bool {
    let Some(i) = a.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = a.iter().rposition(|&x| x > a[i]).expect("successor exists");
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

/// Hot-path visitor over all `n!` one-line arrays, reusing one buffer.
pub(crate) fn visit_permutations(n: usize, mut f: impl FnMut(&[usize])) {
    debug_assert!(n >= 1);
    let mut buf: Vec<usize> = (1..=n).collect();
    loop {
        f(&buf);
        if !next_lexicographic(&mut buf) {
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// Independent run oracle: greedily split into maximal monotone segments.
    fn runs_by_greedy_segments(seq: &[usize]) -> usize {
        if seq.len() <= 1 {
            return 0;
        }
        let mut segments = 0;
        let mut start = 0;
        while start + 1 < seq.len() {
            let rising = seq[start] < seq[start + 1];
            let mut end = start + 1;
            while end + 1 < seq.len() && (seq[end] < seq[end + 1]) == rising {
                end += 1;
            }
            segments += 1;
            start = end;
        }
        segments
    }

    #[test]
    fn run_count_of_seven_entry_example_is_three() {
        assert_eq!(perm("3561247").run_count(), 3);
    }

    #[test]
    fn run_count_handles_degenerate_lengths() {
        assert_eq!(perm("1").run_count(), 0);
        assert_eq!(perm("12").run_count(), 1);
        assert_eq!(perm("21").run_count(), 1);
        assert_eq!(Permutation::identity(6).run_count(), 1);
        assert_eq!(perm("2413").run_count(), 3);
    }

    #[test]
    fn run_count_matches_greedy_segment_oracle_exhaustively() {
        for n in 1..=6 {
            for p in enumerate_permutations(n).unwrap() {
                assert_eq!(p.run_count(), runs_by_greedy_segments(p.entries()));
            }
        }
    }

    #[test]
    fn descents_and_ascents_partition_the_positions() {
        let p = perm("243165");
        assert_eq!(p.descent_positions(), BTreeSet::from([2, 3, 5]));
        assert_eq!(p.ascent_positions(), BTreeSet::from([1, 4]));
        assert_eq!(p.descent_count(), 3);
        for q in enumerate_permutations(5).unwrap() {
            let stats = q.run_statistics();
            assert_eq!(stats.descent_positions.len() + stats.ascent_positions.len(), 4);
            assert!(stats.descent_positions.is_disjoint(&stats.ascent_positions));
        }
    }

    #[test]
    fn complement_follows_the_definition() {
        assert_eq!(perm("3561247").complement(), perm("5327641"));
        assert_eq!(Permutation::identity(4).complement(), perm("4321"));
    }

    #[test]
    fn complement_is_an_involution_preserving_runs_and_swapping_descents() {
        for p in enumerate_permutations(6).unwrap() {
            let c = p.complement();
            assert_eq!(c.complement(), p);
            assert_eq!(c.run_count(), p.run_count());
            assert_eq!(c.descent_positions(), p.ascent_positions());
        }
    }

    #[test]
    fn half_ascending_checks_rightmost_pairs() {
        assert!(perm("1234").is_j_half_ascending(1).unwrap());
        assert!(perm("2134").is_j_half_ascending(1).unwrap());
        assert!(!perm("1243").is_j_half_ascending(1).unwrap());
        assert!(perm("4321").is_j_half_ascending(0).unwrap());
        assert_eq!(
            perm("1234").is_j_half_ascending(2),
            Err(PermError::PairIndexOutOfRange { j: 2, max: 1 })
        );
    }

    #[test]
    fn half_ascending_sets_halve_once_per_pair() {
        // n = 6, j = 2: 6!/2^2 = 180.
        let count = enumerate_permutations(6)
            .unwrap()
            .filter(|p| p.is_j_half_ascending(2).unwrap())
            .count();
        assert_eq!(count, 180);
    }

    #[test]
    fn odd_and_even_position_ascent_predicates() {
        assert!(perm("1234").ascends_at_odd_positions());
        assert!(!perm("2134").ascends_at_odd_positions());
        let full = enumerate_permutations(6)
            .unwrap()
            .filter(Permutation::ascends_at_odd_positions)
            .count();
        assert_eq!(full, 90); // 6!/2^3
        let even = enumerate_permutations(5)
            .unwrap()
            .filter(Permutation::ascends_at_even_positions)
            .count();
        assert_eq!(even, 30); // 5!/2^2
    }

    #[test]
    fn t_statistic_examples_for_n_four() {
        // t_1 = runs(p_1 p_2) + descents(p_2 p_3 p_4).
        assert_eq!(perm("1234").t_statistic(1).unwrap(), 1);
        for s in ["1324", "1423", "2314", "2413", "3412"] {
            assert_eq!(perm(s).t_statistic(1).unwrap(), 2, "t_1({s})");
        }
    }

    #[test]
    fn t_zero_is_the_run_count() {
        for p in enumerate_permutations(5).unwrap() {
            assert_eq!(p.t_statistic(0).unwrap(), p.run_count());
        }
    }

    #[test]
    fn t_statistic_rejects_out_of_range_pair_index() {
        assert_eq!(
            perm("12345").t_statistic(2),
            Err(PermError::PairIndexOutOfRange { j: 2, max: 1 })
        );
    }

    #[test]
    fn swap_pair_touches_the_advertised_positions() {
        assert_eq!(perm("1234").swap_pair(1).unwrap(), perm("1243"));
        assert_eq!(perm("123456").swap_pair(2).unwrap(), perm("124356"));
        assert_eq!(
            perm("123").swap_pair(1),
            Err(PermError::PairIndexOutOfRange { j: 1, max: 0 })
        );
    }

    #[test]
    fn swap_pair_is_an_involution_changing_runs_by_exactly_one() {
        for n in 4..=6 {
            for p in enumerate_permutations(n).unwrap() {
                for j in 1..=half_ascending_bound(n) {
                    let q = p.swap_pair(j).unwrap();
                    assert_eq!(q.swap_pair(j).unwrap(), p);
                    if j == 1 {
                        let diff = p.run_count().abs_diff(q.run_count());
                        assert_eq!(diff, 1, "runs must move by 1: {p} <-> {q}");
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let all: Vec<String> = enumerate_permutations(3)
            .unwrap()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(all, ["123", "132", "213", "231", "312", "321"]);
        assert_eq!(enumerate_permutations(1).unwrap().count(), 1);
        assert_eq!(enumerate_permutations(6).unwrap().count(), 720);
    }

    #[test]
    fn enumeration_guard_refuses_oversized_n_until_overridden() {
        assert!(matches!(
            enumerate_permutations(13),
            Err(PermError::EnumerationLimit { n: 13, limit: 12 })
        ));
        assert!(enumerate_permutations_with(13, 13).is_ok());
        assert!(matches!(enumerate_permutations(0), Err(PermError::Empty)));
    }

    #[test]
    fn construction_rejects_malformed_entries() {
        assert_eq!(Permutation::new(vec![]), Err(PermError::Empty));
        assert_eq!(
            Permutation::new(vec![1, 5, 2]),
            Err(PermError::EntryOutOfRange { value: 5, n: 3 })
        );
        assert_eq!(
            Permutation::new(vec![2, 2, 1]),
            Err(PermError::DuplicateEntry { value: 2 })
        );
    }

    #[test]
    fn parsing_accepts_compact_and_separated_forms() {
        assert_eq!(perm("2,4,3,1,6,5"), perm("243165"));
        assert_eq!("10 2 3 4 5 6 7 8 9 1".parse::<Permutation>().unwrap().n(), 10);
        assert!("".parse::<Permutation>().is_err());
        assert!("12x".parse::<Permutation>().is_err());
        assert!("102".parse::<Permutation>().is_err()); // digit 0 invalid
    }

    #[test]
    fn display_roundtrips_through_parsing() {
        for s in ["1", "243165", "3561247"] {
            assert_eq!(perm(s).to_string(), s);
        }
        let wide = Permutation::identity(11);
        assert_eq!(wide.to_string().parse::<Permutation>().unwrap(), wide);
    }
}
