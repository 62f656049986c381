//! Exact enumerative engine for permutation run statistics.
//!
//! Everything here is integer-exact: distribution tables count permutations
//! with arbitrary-precision integers, polynomial factorization uses synthetic
//! division with explicit remainder checks, and every enumeration walks its
//! objects in a fixed lexicographic order so repeated runs are byte-identical.
//!
//! The modules build on each other:
//!
//! * [`perm`] — permutations, run/descent statistics, half-ascending
//!   predicates, the rightmost-pair swap, lexicographic enumeration;
//! * [`poly`] — integer polynomials, exact division by `x` and `(x + 1)`,
//!   log-concavity and unimodality scans;
//! * [`dist`] — distribution tables for the statistics, factorization of the
//!   run polynomial, and the pair-invariance check;
//! * [`path`] — labeled northeast lattice paths, the permutation bijection,
//!   direction-restricted enumeration, and a dynamic-programming counter;
//! * [`phi`] — the tail-swap map on path pairs and its exhaustive audit.

pub mod dist;
pub mod path;
pub mod perm;
pub mod phi;
pub mod poly;

pub use dist::{DistributionTable, FactorizationResult, Statistic};
pub use path::{Direction, Edge, LabeledPath, Restriction};
pub use perm::{Permutation, RunStatistics};
pub use phi::{AuditRecord, PhiOutcome};
pub use poly::IntPolynomial;
