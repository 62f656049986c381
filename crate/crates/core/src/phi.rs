//! Suffix-swap map on pairs of labeled lattice paths, with an exhaustive
//! auditor.
//!
//! Embed a path with `k - 1` vertical edges at `(0, 0)` and one with `k + 1`
//! vertical edges at `(1, -1)`. Point `j` of each embedding has coordinate
//! sum `j`, so the embeddings can only meet at equal indices; the first path
//! starts above the second and ends below it, so a first common point always
//! exists. Swapping the suffixes after that point yields two edge sequences
//! with exactly `k` vertical edges each. The swap is *defined* when both
//! results are valid paths — only the junction at the split can fail — and
//! where defined it is injective, because the outputs meet first at the same
//! point and swapping back recovers the inputs.
//!
//! [`audit_quasi_injection`] checks all of this exhaustively for one `(n, k)`
//! cell: definedness bookkeeping, injectivity, closure of restricted
//! families, the junction case analysis, and the pair-counting inequalities
//! that make the target counts log-concave.

use crate::path::{
    enumerate_paths_with, validate_edges, Direction, Edge, LabeledPath, PathError, Restriction,
    Violation,
};
use rayon::prelude::*;
use std::collections::HashMap;
use std::time::Instant;
use thiserror::Error;

/// Default cap on the quadratic pair scans inside one audit cell.
pub const DEFAULT_PAIR_LIMIT: u64 = 10_000_000;

/// A lattice point.
pub type Point = (i64, i64);

/// Errors from [`apply_phi`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PhiError {
    #[error("paths must have equal length, got {low} and {high}")]
    LengthMismatch { low: usize, high: usize },
    #[error("vertical counts must differ by two, got {low} and {high}")]
    VerticalMismatch { low: usize, high: usize },
    #[error("embedded paths never meet")]
    NoIntersection,
}

/// Errors from [`audit_quasi_injection`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AuditError {
    #[error("auditing (n, k) = ({n}, {k}) requires 1 <= k <= n - 2")]
    UnsupportedCell { n: usize, k: usize },
    #[error("audit needs {required} pair comparisons, over the limit {limit}")]
    PairLimit { required: u64, limit: u64 },
    #[error(transparent)]
    Path(#[from] PathError),
}

/// The points visited by a path laid out from `origin`, origin included.
pub fn embed(path: &LabeledPath, origin: Point) -> Vec<Point> {
    let mut points = Vec::with_capacity(path.n() + 1);
    let (mut x, mut y) = origin;
    points.push((x, y));
    for edge in path.edges() {
        match edge.direction {
            Direction::Horizontal => x += 1,
            Direction::Vertical => y += 1,
        }
        points.push((x, y));
    }
    points
}

/// First index at which two embeddings coincide, with the common point.
pub fn first_intersection(a: &[Point], b: &[Point]) -> Option<(usize, Point)> {
    a.iter()
        .zip(b.iter())
        .position(|(p, q)| p == q)
        .map(|j| (j, a[j]))
}

/// Outcome of the suffix swap on one pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PhiOutcome {
    /// Both spliced sequences are valid paths.
    Defined {
        /// Low-prefix output: the low path up to the split, the high suffix after.
        first: LabeledPath,
        /// High-prefix output.
        second: LabeledPath,
        intersection: Point,
        split_index: usize,
    },
    /// At least one spliced sequence breaks a validity condition.
    Undefined {
        first_violation: Option<Violation>,
        second_violation: Option<Violation>,
        intersection: Point,
        split_index: usize,
    },
}

/// Swaps the suffixes of `low` (embedded at the origin) and `high` (embedded
/// at `(1, -1)`) after their first common point. `high` must have exactly
/// two more vertical edges than `low`; both outputs then sit halfway
/// between.
pub fn apply_phi(low: &LabeledPath, high: &LabeledPath) -> Result<PhiOutcome, PhiError> {
    let n = low.n();
    if high.n() != n {
        return Err(PhiError::LengthMismatch { low: n, high: high.n() });
    }
    let low_verticals = low.vertical_count();
    let high_verticals = high.vertical_count();
    if low_verticals + 2 != high_verticals {
        return Err(PhiError::VerticalMismatch { low: low_verticals, high: high_verticals });
    }
    let a = embed(low, (0, 0));
    let b = embed(high, (1, -1));
    let Some((split, point)) = first_intersection(&a, &b) else {
        return Err(PhiError::NoIntersection);
    };
    let (first, second) = splice(low.edges(), high.edges(), split);
    let first_check = validate_edges(&first);
    let second_check = validate_edges(&second);
    Ok(match (first_check, second_check) {
        (Ok(()), Ok(())) => PhiOutcome::Defined {
            first: LabeledPath::from_edges_unchecked(first),
            second: LabeledPath::from_edges_unchecked(second),
            intersection: point,
            split_index: split,
        },
        (first_check, second_check) => PhiOutcome::Undefined {
            first_violation: first_check.err(),
            second_violation: second_check.err(),
            intersection: point,
            split_index: split,
        },
    })
}

fn splice(low: &[Edge], high: &[Edge], split: usize) -> (Vec<Edge>, Vec<Edge>) {
    let mut first = low[..split].to_vec();
    first.extend_from_slice(&high[split..]);
    let mut second = high[..split].to_vec();
    second.extend_from_slice(&low[split..]);
    (first, second)
}

/// Everything one audit cell measures. All counts are exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditRecord {
    pub n: usize,
    pub k: usize,
    pub restriction: Restriction,
    /// Number of source paths with `k - 1` vertical edges.
    pub source_low: u64,
    /// Number of source paths with `k + 1` vertical edges.
    pub source_high: u64,
    /// Number of target paths with `k` vertical edges.
    pub target: u64,
    /// `source_low * source_high`.
    pub domain_pairs: u64,
    pub defined: u64,
    pub undefined: u64,
    /// Distinct output pairs over the defined part of the domain.
    pub image_size: u64,
    /// Every defined pair produced a distinct output pair.
    pub injective: bool,
    /// Target-pair embeddings (first at the origin, second at `(1, -1)`)
    /// that share a point.
    pub target_intersecting_pairs: u64,
    /// Intersecting target pairs not hit by the map.
    pub intersecting_nonimage: u64,
    /// Defined and undefined pairs partition the domain, the image consists
    /// of intersecting pairs, and the undefined pairs fit inside the
    /// intersecting pairs left over — so the domain is no bigger than the
    /// intersecting target pairs.
    pub counting_step_holds: bool,
    /// `source_low * source_high <= target^2`.
    pub product_inequality_holds: bool,
    /// Every output of a defined pair was found among the enumerated
    /// (restriction-conforming) target paths.
    pub closure_holds: bool,
    /// Pairs whose outgoing edges at the split share a direction.
    pub b_equals_d_pairs: u64,
    /// Pairs where both inputs run straight through the meeting point, so
    /// both outputs turn there.
    pub cross_junction_pairs: u64,
    /// Pairs where both inputs turn at the meeting point, so both outputs
    /// run straight.
    pub bounce_junction_pairs: u64,
    /// Pairs where the junction-only analysis disagrees with full
    /// revalidation of the outputs, or where the incoming edges at the
    /// meeting point are not horizontal-from-low and vertical-from-high.
    pub specialized_mismatches: u64,
    pub elapsed_ms: u128,
}

#[derive(Default)]
struct Tally {
    defined: u64,
    undefined: u64,
    b_equals_d: u64,
    cross: u64,
    bounce: u64,
    mismatches: u64,
    closure_misses: u64,
    image: Vec<(u32, u32)>,
}

/// Audits one `(n, k)` cell exhaustively under the default pair limit.
pub fn audit_quasi_injection(
    n: usize,
    k: usize,
    restriction: Restriction,
) -> Result<AuditRecord, AuditError> {
    audit_quasi_injection_with(n, k, restriction, DEFAULT_PAIR_LIMIT)
}

/// As [`audit_quasi_injection`], with an explicit pair limit.
pub fn audit_quasi_injection_with(
    n: usize,
    k: usize,
    restriction: Restriction,
    limit: u64,
) -> Result<AuditRecord, AuditError> {
    if n < 3 || k == 0 || k + 2 > n {
        return Err(AuditError::UnsupportedCell { n, k });
    }
    let started = Instant::now();
    let low: Vec<LabeledPath> = enumerate_paths_with(n, k - 1, restriction, n)?.collect();
    let high: Vec<LabeledPath> = enumerate_paths_with(n, k + 1, restriction, n)?.collect();
    let target: Vec<LabeledPath> = enumerate_paths_with(n, k, restriction, n)?.collect();
    let domain_pairs = low.len() as u64 * high.len() as u64;
    let target_pairs = target.len() as u64 * target.len() as u64;
    let required = domain_pairs.max(target_pairs);
    if required > limit {
        return Err(AuditError::PairLimit { required, limit });
    }

    let low_points: Vec<Vec<Point>> = low.iter().map(|p| embed(p, (0, 0))).collect();
    let high_points: Vec<Vec<Point>> = high.iter().map(|p| embed(p, (1, -1))).collect();
    let target_index: HashMap<&[Edge], u32> = target
        .iter()
        .enumerate()
        .map(|(i, p)| (p.edges(), i as u32))
        .collect();

    let tallies: Vec<Tally> = low
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let mut tally = Tally::default();
            for (j, q) in high.iter().enumerate() {
                scan_pair(p, q, &low_points[i], &high_points[j], &target_index, &mut tally);
            }
            tally
        })
        .collect();
    let mut merged = Tally::default();
    for tally in tallies {
        merged.defined += tally.defined;
        merged.undefined += tally.undefined;
        merged.b_equals_d += tally.b_equals_d;
        merged.cross += tally.cross;
        merged.bounce += tally.bounce;
        merged.mismatches += tally.mismatches;
        merged.closure_misses += tally.closure_misses;
        merged.image.extend(tally.image);
    }
    let found = merged.image.len();
    merged.image.sort_unstable();
    merged.image.dedup();
    let image_size = merged.image.len() as u64;
    let injective = merged.image.len() == found && merged.closure_misses == 0;
    let closure_holds = merged.closure_misses == 0;

    // Intersecting target pairs, and the check that the image sits inside them.
    let target_points_low: Vec<Vec<Point>> = target.iter().map(|p| embed(p, (0, 0))).collect();
    let target_points_high: Vec<Vec<Point>> = target.iter().map(|p| embed(p, (1, -1))).collect();
    let target_intersecting_pairs: u64 = target_points_low
        .par_iter()
        .map(|u| {
            target_points_high
                .iter()
                .filter(|v| first_intersection(u, v).is_some())
                .count() as u64
        })
        .sum();
    let image_intersects = merged.image.iter().all(|&(x, y)| {
        first_intersection(&target_points_low[x as usize], &target_points_high[y as usize])
            .is_some()
    });
    let intersecting_nonimage = target_intersecting_pairs.saturating_sub(image_size);
    let counting_step_holds = merged.defined + merged.undefined == domain_pairs
        && image_intersects
        && merged.undefined <= intersecting_nonimage;
    let product_inequality_holds = domain_pairs <= target_pairs;

    Ok(AuditRecord {
        n,
        k,
        restriction,
        source_low: low.len() as u64,
        source_high: high.len() as u64,
        target: target.len() as u64,
        domain_pairs,
        defined: merged.defined,
        undefined: merged.undefined,
        image_size,
        injective,
        target_intersecting_pairs,
        intersecting_nonimage,
        counting_step_holds,
        product_inequality_holds,
        closure_holds,
        b_equals_d_pairs: merged.b_equals_d,
        cross_junction_pairs: merged.cross,
        bounce_junction_pairs: merged.bounce,
        specialized_mismatches: merged.mismatches,
        elapsed_ms: started.elapsed().as_millis(),
    })
}

/// Processes one domain pair: classifies the junction, predicts definedness
/// from the junction alone, splices, revalidates, and records the image.
fn scan_pair(
    p: &LabeledPath,
    q: &LabeledPath,
    p_points: &[Point],
    q_points: &[Point],
    target_index: &HashMap<&[Edge], u32>,
    tally: &mut Tally,
) {
    let Some((split, _)) = first_intersection(p_points, q_points) else {
        tally.mismatches += 1;
        tally.undefined += 1;
        return;
    };
    let n = p.n();
    if split < 1 || split >= n {
        tally.mismatches += 1;
        tally.undefined += 1;
        return;
    }
    let incoming_low = p.edges()[split - 1];
    let incoming_high = q.edges()[split - 1];
    let outgoing_low = p.edges()[split];
    let outgoing_high = q.edges()[split];

    if outgoing_low.direction == outgoing_high.direction {
        tally.b_equals_d += 1;
    } else if outgoing_low.direction == Direction::Horizontal {
        // Both inputs continue straight, so the outputs cross.
        tally.cross += 1;
    } else {
        // Both inputs turn, so the outputs pass straight through.
        tally.bounce += 1;
    }

    let geometry_ok = incoming_low.direction == Direction::Horizontal
        && incoming_high.direction == Direction::Vertical;
    let junction_ok = |incoming: Edge, outgoing: Edge| {
        if incoming.direction == outgoing.direction {
            incoming.label >= outgoing.label
        } else {
            incoming.label + outgoing.label <= split + 1
        }
    };
    let predicted =
        geometry_ok && junction_ok(incoming_low, outgoing_high) && junction_ok(incoming_high, outgoing_low);

    let (first, second) = splice(p.edges(), q.edges(), split);
    let actual = validate_edges(&first).is_ok() && validate_edges(&second).is_ok();
    if predicted != actual {
        tally.mismatches += 1;
    }
    if actual {
        tally.defined += 1;
        match (
            target_index.get(first.as_slice()),
            target_index.get(second.as_slice()),
        ) {
            (Some(&x), Some(&y)) => tally.image.push((x, y)),
            _ => tally.closure_misses += 1,
        }
    } else {
        tally.undefined += 1;
    }
}
