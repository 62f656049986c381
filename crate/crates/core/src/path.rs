//! Labeled northeast lattice paths and their permutation bijection.
//!
//! A path is a sequence of unit steps, each horizontal (east) or vertical
//! (north) with a positive integer label. Writing `e_i` for the label of the
//! `i`-th edge, a path is valid when
//!
//! 1. the first edge is horizontal with label 1;
//! 2. consecutive edges in the same direction satisfy `e_i >= e_{i+1}`;
//! 3. consecutive perpendicular edges satisfy `e_i + e_{i+1} <= i + 1`.
//!
//! These force `e_i <= i - 1` for `i >= 2`, and the constraints on an edge
//! depend only on its predecessor, which is what licenses the
//! dynamic-programming counter. Valid paths of `n` edges are in bijection
//! with permutations of `{1, ..., n}`; vertical edges correspond exactly to
//! descent positions, so paths with `k` vertical edges are counted by the
//! Eulerian number `A(n, k)`.

use crate::perm::Permutation;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

/// Default cap for streaming every path of `n` edges.
pub const DEFAULT_PATH_ENUMERATION_LIMIT: usize = 12;

/// Step direction. `Horizontal` sorts before `Vertical`, which fixes the
/// lexicographic enumeration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Horizontal,
    Vertical,
}

impl Direction {
    pub fn letter(self) -> char {
        match self {
            Direction::Horizontal => 'H',
            Direction::Vertical => 'V',
        }
    }
}

/// One labeled step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub direction: Direction,
    pub label: usize,
}

impl Edge {
    pub fn horizontal(label: usize) -> Self {
        Edge { direction: Direction::Horizontal, label }
    }

    pub fn vertical(label: usize) -> Self {
        Edge { direction: Direction::Vertical, label }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.direction.letter(), self.label)
    }
}

/// Which validity condition an edge list breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// The first edge must be horizontal with label 1.
    FirstEdge,
    /// Labels must be positive.
    PositiveLabel,
    /// Same-direction neighbors must have weakly decreasing labels.
    SameDirection,
    /// Perpendicular neighbors at index `i` must satisfy `e_i + e_{i+1} <= i + 1`.
    Perpendicular,
}

/// A validity failure: which condition broke, and the 1-based edge index
/// (for the junction conditions, the index of the earlier edge).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub index: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.condition {
            Condition::FirstEdge => "first edge must be horizontal with label 1",
            Condition::PositiveLabel => "labels must be positive",
            Condition::SameDirection => "same-direction labels must weakly decrease",
            Condition::Perpendicular => "perpendicular labels exceed the index bound",
        };
        write!(f, "{what} (at edge {})", self.index)
    }
}

/// Errors from path construction and enumeration.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("a path must have at least one edge")]
    Empty,
    #[error("invalid path: {0}")]
    Invalid(Violation),
    #[error("enumerating paths of {n} edges exceeds the limit n <= {limit}")]
    EnumerationLimit { n: usize, limit: usize },
}

/// Direction restrictions on enumerated path families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Restriction {
    /// No restriction.
    All,
    /// Every even-indexed edge is horizontal (image of the half-ascending
    /// permutations for even `n`).
    EvenHorizontal,
    /// Every odd-indexed edge with index >= 3 is horizontal (image of the
    /// odd-`n` permutations ascending at every even position).
    OddHorizontal,
}

impl Restriction {
    /// May the edge at 1-based `index` point vertically?
    fn allows_vertical_at(self, index: usize) -> bool {
        match self {
            Restriction::All => index >= 2,
            Restriction::EvenHorizontal => index >= 2 && index % 2 == 1,
            Restriction::OddHorizontal => index >= 2 && index % 2 == 0,
        }
    }
}

impl fmt::Display for Restriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Restriction::All => write!(f, "all"),
            Restriction::EvenHorizontal => write!(f, "even-horizontal"),
            Restriction::OddHorizontal => write!(f, "odd-horizontal"),
        }
    }
}

/// Checks conditions (1)-(3) plus label positivity over a raw edge list.
pub fn validate_edges(edges: &[Edge]) -> Result<(), Violation> {
    let Some(first) = edges.first() else {
        return Err(Violation { condition: Condition::FirstEdge, index: 1 });
    };
    if first.direction != Direction::Horizontal || first.label != 1 {
        return Err(Violation { condition: Condition::FirstEdge, index: 1 });
    }
    for (idx, pair) in edges.windows(2).enumerate() {
        let i = idx + 1; // 1-based index of the earlier edge
        let (prev, cur) = (pair[0], pair[1]);
        if cur.label == 0 {
            return Err(Violation { condition: Condition::PositiveLabel, index: i + 1 });
        }
        if prev.direction == cur.direction {
            if prev.label < cur.label {
                return Err(Violation { condition: Condition::SameDirection, index: i });
            }
        } else if prev.label + cur.label > i + 1 {
            return Err(Violation { condition: Condition::Perpendicular, index: i });
        }
    }
    Ok(())
}

/// A valid labeled path. Construction enforces the validity conditions, so
/// every value of this type satisfies them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledPath {
    edges: Vec<Edge>,
}

impl LabeledPath {
    /// Validates and wraps an edge list.
    pub fn new(edges: Vec<Edge>) -> Result<Self, PathError> {
        if edges.is_empty() {
            return Err(PathError::Empty);
        }
        validate_edges(&edges).map_err(PathError::Invalid)?;
        Ok(LabeledPath { edges })
    }

    pub(crate) fn from_edges_unchecked(edges: Vec<Edge>) -> Self {
        debug_assert!(validate_edges(&edges).is_ok());
        LabeledPath { edges }
    }

    pub fn n(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertical_count(&self) -> usize {
        self.edges
            .iter()
            .filter(|e| e.direction == Direction::Vertical)
            .count()
    }

    /// True when every even-indexed edge is horizontal.
    pub fn horizontal_at_even_indices(&self) -> bool {
        self.edges
            .iter()
            .skip(1)
            .step_by(2)
            .all(|e| e.direction == Direction::Horizontal)
    }

    /// True when every odd-indexed edge with index >= 3 is horizontal.
    pub fn horizontal_at_odd_indices(&self) -> bool {
        self.edges
            .iter()
            .skip(2)
            .step_by(2)
            .all(|e| e.direction == Direction::Horizontal)
    }

    pub fn satisfies(&self, restriction: Restriction) -> bool {
        match restriction {
            Restriction::All => true,
            Restriction::EvenHorizontal => self.horizontal_at_even_indices(),
            Restriction::OddHorizontal => self.horizontal_at_odd_indices(),
        }
    }

    /// The bijection image of a permutation.
    ///
    /// For each position `i >= 2`, rank-relabel the first `i` entries and
    /// let `q_i` be the rank of `p_i`: a descent at `i - 1` maps to a
    /// vertical edge labeled `q_i`, an ascent to a horizontal edge labeled
    /// `i + 1 - q_i`. Vertical edges therefore sit exactly at the edge
    /// indices following descents.
    pub fn from_permutation(p: &Permutation) -> LabeledPath {
        let entries = p.entries();
        let mut edges = vec![Edge::horizontal(1)];
        for i in 2..=entries.len() {
            let value = entries[i - 1];
            let rank = entries[..i].iter().filter(|&&v| v <= value).count();
            let edge = if entries[i - 2] > entries[i - 1] {
                Edge::vertical(rank)
            } else {
                Edge::horizontal(i + 1 - rank)
            };
            edges.push(edge);
        }
        LabeledPath::from_edges_unchecked(edges)
    }

    /// The inverse bijection.
    ///
    /// The last edge determines the last entry of the truncated-to-length-`l`
    /// permutation (`label` if vertical, `l + 1 - label` if horizontal);
    /// rebuilding forward re-inserts each entry by shifting the ranks above
    /// it.
    pub fn to_permutation(&self) -> Permutation {
        let n = self.n();
        let mut values = Vec::with_capacity(n);
        for l in 1..=n {
            let edge = self.edges[l - 1];
            values.push(match edge.direction {
                Direction::Vertical => edge.label,
                Direction::Horizontal => l + 1 - edge.label,
            });
        }
        let mut entries: Vec<usize> = Vec::with_capacity(n);
        for (l, &v) in values.iter().enumerate() {
            debug_assert!(v >= 1 && v <= l + 1);
            for e in entries.iter_mut() {
                if *e >= v {
                    *e += 1;
                }
            }
            entries.push(v);
        }
        Permutation::from_entries_unchecked(entries)
    }
}

impl fmt::Display for LabeledPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.edges.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", words.join(" "))
    }
}

/// Streams every valid path with `n` edges and exactly `k` vertical edges
/// under the restriction, in lexicographic edge order (`H` before `V`,
/// labels ascending).
pub fn enumerate_paths(
    n: usize,
    k: usize,
    restriction: Restriction,
) -> Result<PathEnumeration, PathError> {
    enumerate_paths_with(n, k, restriction, DEFAULT_PATH_ENUMERATION_LIMIT)
}

/// As [`enumerate_paths`], with an explicit limit override.
pub fn enumerate_paths_with(
    n: usize,
    k: usize,
    restriction: Restriction,
    limit: usize,
) -> Result<PathEnumeration, PathError> {
    if n == 0 {
        return Err(PathError::Empty);
    }
    if n > limit {
        return Err(PathError::EnumerationLimit { n, limit });
    }
    // vertical_capacity[p] = how many of the positions p..=n may be vertical
    let mut vertical_capacity = vec![0usize; n + 2];
    for p in (1..=n).rev() {
        vertical_capacity[p] =
            vertical_capacity[p + 1] + usize::from(restriction.allows_vertical_at(p));
    }
    let mut enumeration = PathEnumeration {
        n,
        k,
        restriction,
        vertical_capacity,
        stack: Vec::with_capacity(n),
        edges: Vec::with_capacity(n),
        verticals: 0,
    };
    let first = enumeration.candidates_for_next();
    enumeration.stack.push(first.into_iter());
    Ok(enumeration)
}

/// Backtracking iterator behind [`enumerate_paths`].
pub struct PathEnumeration {
    n: usize,
    k: usize,
    restriction: Restriction,
    vertical_capacity: Vec<usize>,
    stack: Vec<std::vec::IntoIter<Edge>>,
    edges: Vec<Edge>,
    verticals: usize,
}

impl PathEnumeration {
    /// Valid continuations for the next position, in lexicographic order,
    /// pruned so the vertical budget `k` stays reachable.
    fn candidates_for_next(&self) -> Vec<Edge> {
        let pos = self.edges.len() + 1;
        let remaining_capacity = self.vertical_capacity[pos + 1];
        let mut out = Vec::new();
        if pos == 1 {
            if self.k <= remaining_capacity {
                out.push(Edge::horizontal(1));
            }
            return out;
        }
        let prev = *self.edges.last().expect("nonempty prefix");
        let max_for = |same_direction: bool| {
            if same_direction {
                prev.label
            } else {
                pos - prev.label
            }
        };
        // Horizontal first: H sorts before V.
        if self.verticals + remaining_capacity >= self.k {
            let max = max_for(prev.direction == Direction::Horizontal);
            out.extend((1..=max).map(Edge::horizontal));
        }
        if self.restriction.allows_vertical_at(pos)
            && self.verticals < self.k
            && self.verticals + 1 + remaining_capacity >= self.k
        {
            let max = max_for(prev.direction == Direction::Vertical);
            out.extend((1..=max).map(Edge::vertical));
        }
        out
    }

    fn retract(&mut self) {
        if let Some(edge) = self.edges.pop() {
            if edge.direction == Direction::Vertical {
                self.verticals -= 1;
            }
        }
    }
}

impl Iterator for PathEnumeration {
    type Item = LabeledPath;

    fn next(&mut self) -> Option<LabeledPath> {
        loop {
            let frame = self.stack.last_mut()?;
            let Some(edge) = frame.next() else {
                self.stack.pop();
                self.retract();
                continue;
            };
            if edge.direction == Direction::Vertical {
                self.verticals += 1;
            }
            self.edges.push(edge);
            if self.edges.len() == self.n {
                debug_assert_eq!(self.verticals, self.k);
                let path = LabeledPath::from_edges_unchecked(self.edges.clone());
                self.retract();
                return Some(path);
            }
            let candidates = self.candidates_for_next();
            self.stack.push(candidates.into_iter());
        }
    }
}

/// Counts the paths [`enumerate_paths`] would yield without enumerating
/// them, by dynamic programming over `(position, direction, label)` states.
pub fn count_paths_dp(n: usize, k: usize, restriction: Restriction) -> Result<BigInt, PathError> {
    if n == 0 {
        return Err(PathError::Empty);
    }
    // layer[dir][label][v] = number of length-`pos` prefixes ending in an
    // edge (dir, label) with v vertical edges so far.
    let dirs = [Direction::Horizontal, Direction::Vertical];
    let mut layer = vec![vec![vec![BigInt::zero(); k + 1]; n + 1]; 2];
    layer[0][1][0] = BigInt::one();
    for pos in 2..=n {
        let mut next = vec![vec![vec![BigInt::zero(); k + 1]; n + 1]; 2];
        for (d, &prev_dir) in dirs.iter().enumerate() {
            for prev_label in 1..=n {
                for v in 0..=k {
                    let weight = layer[d][prev_label][v].clone();
                    if weight.is_zero() {
                        continue;
                    }
                    let horizontal_max = if prev_dir == Direction::Horizontal {
                        prev_label
                    } else {
                        pos - prev_label
                    };
                    for label in 1..=horizontal_max {
                        next[0][label][v] += &weight;
                    }
                    if v < k && restriction.allows_vertical_at(pos) {
                        let vertical_max = if prev_dir == Direction::Vertical {
                            prev_label
                        } else {
                            pos - prev_label
                        };
                        for label in 1..=vertical_max {
                            next[1][label][v + 1] += &weight;
                        }
                    }
                }
            }
        }
        layer = next;
    }
    let mut total = BigInt::zero();
    for d in 0..2 {
        for label in 1..=n {
            total += &layer[d][label][k];
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::enumerate_permutations;
    use proptest::prelude::*;

    fn path(edges: &[(char, usize)]) -> LabeledPath {
        LabeledPath::new(
            edges
                .iter()
                .map(|&(c, label)| match c {
                    'H' => Edge::horizontal(label),
                    'V' => Edge::vertical(label),
                    _ => panic!("bad direction {c}"),
                })
                .collect(),
        )
        .unwrap()
    }

    fn worked_example() -> LabeledPath {
        path(&[('H', 1), ('H', 1), ('V', 2), ('V', 1), ('H', 1), ('V', 5)])
    }

    #[test]
    fn validation_accepts_the_worked_example() {
        assert_eq!(worked_example().to_string(), "H1 H1 V2 V1 H1 V5");
    }

    #[test]
    fn validation_pinpoints_each_condition() {
        let first = validate_edges(&[Edge::vertical(1)]).unwrap_err();
        assert_eq!(first, Violation { condition: Condition::FirstEdge, index: 1 });

        let rising = validate_edges(&[Edge::horizontal(1), Edge::horizontal(2)]).unwrap_err();
        assert_eq!(rising, Violation { condition: Condition::SameDirection, index: 1 });

        // e_1 + e_2 = 3 > 2 breaks the perpendicular bound at index 1.
        let wide = validate_edges(&[Edge::horizontal(1), Edge::vertical(2)]).unwrap_err();
        assert_eq!(wide, Violation { condition: Condition::Perpendicular, index: 1 });

        let zero = validate_edges(&[Edge::horizontal(1), Edge::horizontal(0)]).unwrap_err();
        assert_eq!(zero, Violation { condition: Condition::PositiveLabel, index: 2 });

        assert!(matches!(LabeledPath::new(vec![]), Err(PathError::Empty)));
    }

    #[test]
    fn labels_are_bounded_by_index_minus_one() {
        // Derived from the validity conditions, not separately enforced.
        for n in 1..=7 {
            for p in enumerate_permutations(n).unwrap() {
                for (idx, edge) in LabeledPath::from_permutation(&p).edges().iter().enumerate() {
                    let i = idx + 1;
                    let bound = (i - 1).max(1);
                    assert!(edge.label <= bound, "e_{i} = {} in {p}", edge.label);
                }
            }
        }
    }

    #[test]
    fn bijection_matches_the_worked_example_both_ways() {
        let p: Permutation = "243165".parse().unwrap();
        assert_eq!(LabeledPath::from_permutation(&p), worked_example());
        assert_eq!(worked_example().to_permutation(), p);
    }

    #[test]
    fn bijection_images_of_extreme_permutations() {
        let identity = Permutation::identity(5);
        assert_eq!(LabeledPath::from_permutation(&identity).to_string(), "H1 H1 H1 H1 H1");
        let reversal: Permutation = "54321".parse().unwrap();
        assert_eq!(LabeledPath::from_permutation(&reversal).to_string(), "H1 V1 V1 V1 V1");
    }

    #[test]
    fn bijection_roundtrips_and_tracks_descents_exhaustively() {
        for n in 1..=6 {
            for p in enumerate_permutations(n).unwrap() {
                let image = LabeledPath::from_permutation(&p);
                assert_eq!(image.to_permutation(), p);
                assert_eq!(image.vertical_count(), p.descent_count());
            }
        }
    }

    #[test]
    fn enumeration_of_two_edge_paths_is_exact() {
        let flat: Vec<String> = enumerate_paths(2, 0, Restriction::All)
            .unwrap()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(flat, ["H1 H1"]);
        let step: Vec<String> = enumerate_paths(2, 1, Restriction::All)
            .unwrap()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(step, ["H1 V1"]);
    }

    #[test]
    fn enumeration_is_lexicographic_with_horizontal_first() {
        let all: Vec<String> = (0..=2)
            .flat_map(|k| enumerate_paths(3, k, Restriction::All).unwrap())
            .map(|p| p.to_string())
            .collect();
        // "H1 V2 H1" is absent: labels 2 and 1 at perpendicular junction 1
        // would need 2 + 1 <= 1 + 1.
        assert_eq!(
            all,
            [
                "H1 H1 H1",
                "H1 H1 V1", "H1 H1 V2", "H1 V1 H1", "H1 V1 H2",
                "H1 V1 V1",
            ]
        );
        // Within fixed k the stream is sorted; P(3, 1) shown above.
        let k1: Vec<LabeledPath> = enumerate_paths(3, 1, Restriction::All).unwrap().collect();
        let mut sorted = k1.clone();
        sorted.sort();
        assert_eq!(k1, sorted);
    }

    #[test]
    fn path_counts_match_the_eulerian_row() {
        // |P(4, k)| for k = 0..3.
        let observed: Vec<usize> = (0..=3)
            .map(|k| enumerate_paths(4, k, Restriction::All).unwrap().count())
            .collect();
        assert_eq!(observed, [1, 11, 11, 1]);
    }

    #[test]
    fn enumeration_respects_the_limit() {
        assert!(matches!(
            enumerate_paths(13, 3, Restriction::All),
            Err(PathError::EnumerationLimit { n: 13, limit: 12 })
        ));
        assert!(enumerate_paths_with(13, 0, Restriction::All, 13).is_ok());
        assert!(matches!(enumerate_paths(0, 0, Restriction::All), Err(PathError::Empty)));
    }

    #[test]
    fn restricted_streams_only_contain_conforming_paths() {
        for k in 0..=2 {
            for p in enumerate_paths(5, k, Restriction::EvenHorizontal).unwrap() {
                assert!(p.horizontal_at_even_indices());
            }
            for p in enumerate_paths(5, k, Restriction::OddHorizontal).unwrap() {
                assert!(p.horizontal_at_odd_indices());
            }
        }
    }

    #[test]
    fn even_horizontal_counts_match_the_half_ascending_table() {
        let table = crate::dist::half_ascending_descent_distribution(6).unwrap();
        for k in 0..=5 {
            let paths = enumerate_paths(6, k, Restriction::EvenHorizontal).unwrap().count();
            assert_eq!(BigInt::from(paths), table.count(k), "V(6, {k})");
        }
    }

    #[test]
    fn odd_horizontal_counts_are_half_the_doubled_odd_table() {
        let table = crate::dist::odd_t_distribution(5).unwrap();
        for k in 0..=4 {
            let paths = enumerate_paths(5, k, Restriction::OddHorizontal).unwrap().count();
            assert_eq!(BigInt::from(2 * paths), table.count(k), "V'(5, {k})");
        }
    }

    #[test]
    fn dp_count_agrees_with_enumeration_for_every_cell() {
        let restrictions = [Restriction::All, Restriction::EvenHorizontal, Restriction::OddHorizontal];
        for n in 1..=6 {
            for k in 0..=n {
                for r in restrictions {
                    let streamed = enumerate_paths(n, k, r).unwrap().count();
                    assert_eq!(
                        count_paths_dp(n, k, r).unwrap(),
                        BigInt::from(streamed),
                        "n={n} k={k} {r}"
                    );
                }
            }
        }
    }

    #[test]
    fn dp_count_handles_edge_cells() {
        assert_eq!(count_paths_dp(1, 0, Restriction::All).unwrap(), BigInt::one());
        assert_eq!(count_paths_dp(1, 1, Restriction::All).unwrap(), BigInt::zero());
        assert_eq!(count_paths_dp(6, 6, Restriction::All).unwrap(), BigInt::zero());
        assert!(count_paths_dp(0, 0, Restriction::All).is_err());
    }

    #[test]
    fn available_labels_form_downward_closed_intervals() {
        // For every valid prefix and either direction, the labels that keep
        // the path valid are exactly 1..=max for some max >= 1, checked
        // against the full validator rather than the enumeration's own
        // transition formula.
        for n in 1..=5 {
            for p in enumerate_permutations(n).unwrap() {
                let prefix = LabeledPath::from_permutation(&p);
                let i = prefix.n();
                for direction in [Direction::Horizontal, Direction::Vertical] {
                    let valid: Vec<usize> = (1..=i + 3)
                        .filter(|&label| {
                            let mut edges = prefix.edges().to_vec();
                            edges.push(Edge { direction, label });
                            validate_edges(&edges).is_ok()
                        })
                        .collect();
                    let max = *valid.last().unwrap_or(&0);
                    assert!(max >= 1, "no continuation from {prefix} going {direction:?}");
                    assert_eq!(valid, (1..=max).collect::<Vec<_>>());
                }
            }
        }
    }

    proptest! {
        #[test]
        fn bijection_roundtrips_on_random_permutations(
            entries in (1usize..=9).prop_flat_map(|n| {
                Just((1..=n).collect::<Vec<usize>>()).prop_shuffle()
            })
        ) {
            let p = Permutation::new(entries).unwrap();
            let image = LabeledPath::from_permutation(&p);
            prop_assert_eq!(image.to_permutation(), p);
        }
    }
}
