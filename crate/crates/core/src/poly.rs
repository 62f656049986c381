//! Integer polynomials with exact division and shape tests.
//!
//! Coefficients are arbitrary-precision integers: the polynomials handled
//! here have coefficients that sum to `n!`, and the audits square them.
//! Division by `(x + 1)` is synthetic division at the root `-1`, one stage
//! per power, with an explicit remainder check at every stage so a failed
//! division reports exactly which power broke and what the remainder was.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

/// Raised when an exact division has a nonzero remainder.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DivisionError {
    /// Division by `(x + 1)^j` failed at the given 1-based stage.
    #[error("not divisible by (x + 1): stage {stage} left remainder {remainder}")]
    NotDivisible { stage: usize, remainder: BigInt },
    /// Division by `x^k` failed because a low-order coefficient is nonzero.
    #[error("not divisible by x: coefficient of x^{power} is {coefficient}")]
    NotDivisibleByX { power: usize, coefficient: BigInt },
}

/// A polynomial with integer coefficients, stored densely by ascending power.
///
/// The coefficient vector is kept normalized (no trailing zeros); the zero
/// polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// The zero polynomial.
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        IntPolynomial { coeffs: vec![BigInt::one()] }
    }

    /// Builds a polynomial from coefficients by ascending power.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.normalize();
        p
    }

    /// Convenience constructor from machine integers, ascending power.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `(x + 1)^m`, the binomial row as a polynomial.
    pub fn x_plus_one_power(m: usize) -> Self {
        let step = IntPolynomial::from_ints(&[1, 1]);
        let mut acc = IntPolynomial::one();
        for _ in 0..m {
            acc = &acc * &step;
        }
        acc
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficients by ascending power, without trailing zeros.
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// The coefficient of `x^k` (zero outside the stored range).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Evaluates at `x` by Horner's rule.
    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Multiplies by `x^k`.
    pub fn shifted_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    /// Divides exactly by `x^k`, failing if any removed coefficient is nonzero.
    pub fn divide_exact_by_x(&self, k: usize) -> Result<Self, DivisionError> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        for power in 0..k.min(self.coeffs.len()) {
            if !self.coeffs[power].is_zero() {
                return Err(DivisionError::NotDivisibleByX {
                    power,
                    coefficient: self.coeffs[power].clone(),
                });
            }
        }
        if k >= self.coeffs.len() {
            return Ok(Self::zero());
        }
        Ok(IntPolynomial { coeffs: self.coeffs[k..].to_vec() })
    }

    /// Divides exactly by `(x + 1)^j` via `j` stages of synthetic division at
    /// the root `-1`; any stage with a nonzero remainder aborts the division.
    pub fn divide_exact_x_plus_one(&self, j: usize) -> Result<Self, DivisionError> {
        let mut quotient = self.clone();
        for stage in 1..=j {
            let (q, remainder) = quotient.synthetic_divide_x_plus_one();
            if !remainder.is_zero() {
                return Err(DivisionError::NotDivisible { stage, remainder });
            }
            quotient = q;
        }
        Ok(quotient)
    }

    /// One synthetic-division step by `(x + 1)`: returns (quotient, remainder).
    fn synthetic_divide_x_plus_one(&self) -> (Self, BigInt) {
        let Some(d) = self.degree() else {
            return (Self::zero(), BigInt::zero());
        };
        if d == 0 {
            return (Self::zero(), self.coeffs[0].clone());
        }
        let mut q = vec![BigInt::zero(); d];
        let mut carry = self.coeffs[d].clone();
        for i in (1..=d).rev() {
            let next = &self.coeffs[i - 1] - &carry;
            q[i - 1] = carry;
            carry = next;
        }
        (IntPolynomial::from_coeffs(q), carry)
    }
}

impl std::ops::Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                write!(f, "{}", term(c, k))?;
                first = false;
            } else if c.is_negative() {
                write!(f, " - {}", term(&-c, k))?;
            } else {
                write!(f, " + {}", term(c, k))?;
            }
        }
        Ok(())
    }
}

fn term(c: &BigInt, k: usize) -> String {
    match (k, c.is_one()) {
        (0, _) => format!("{c}"),
        (1, true) => "x".to_string(),
        (1, false) => format!("{c}x"),
        (_, true) => format!("x^{k}"),
        (_, false) => format!("{c}x^{k}"),
    }
}

/// First interior index `k` with `c[k-1] * c[k+1] > c[k]^2`, if any.
///
/// Indices are 0-based positions in the slice; out-of-range neighbors count
/// as zero, so the boundary inequalities hold vacuously and only interior
/// indices can violate.
pub fn log_concavity_violation(coeffs: &[BigInt]) -> Option<usize> {
    (1..coeffs.len().saturating_sub(1))
        .find(|&k| &coeffs[k - 1] * &coeffs[k + 1] > &coeffs[k] * &coeffs[k])
}

/// True when `c[k-1] * c[k+1] <= c[k]^2` holds at every interior index.
pub fn is_log_concave(coeffs: &[BigInt]) -> bool {
    log_concavity_violation(coeffs).is_none()
}

/// Witness peak index if the sequence weakly rises then weakly falls.
///
/// Returns the first index attaining the maximum; `None` when the sequence
/// is not unimodal. Empty and single-element sequences are trivially
/// unimodal with peak 0.
pub fn unimodal_peak(coeffs: &[BigInt]) -> Option<usize> {
    if coeffs.is_empty() {
        return Some(0);
    }
    let peak = coeffs
        .iter()
        .enumerate()
        .max_by(|(i, a), (j, b)| a.cmp(b).then(j.cmp(i)))
        .map(|(i, _)| i)
        .expect("nonempty");
    let rises = coeffs[..=peak].windows(2).all(|w| w[0] <= w[1]);
    let falls = coeffs[peak..].windows(2).all(|w| w[0] >= w[1]);
    (rises && falls).then_some(peak)
}

/// True when the sequence weakly rises then weakly falls.
pub fn is_unimodal(coeffs: &[BigInt]) -> bool {
    unimodal_peak(coeffs).is_some()
}

/// True when the nonzero entries occupy one contiguous index interval.
pub fn has_contiguous_support(coeffs: &[BigInt]) -> bool {
    let Some(first) = coeffs.iter().position(|c| !c.is_zero()) else {
        return true;
    };
    let last = coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(first);
    coeffs[first..=last].iter().all(|c| !c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_ints(coeffs)
    }

    fn big(coeffs: &[i64]) -> Vec<BigInt> {
        coeffs.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn division_peels_one_factor_from_the_degree_four_run_polynomial() {
        // (2x + 12x^2 + 10x^3) / (x + 1) = 2x + 10x^2
        let quotient = p(&[0, 2, 12, 10]).divide_exact_x_plus_one(1).unwrap();
        assert_eq!(quotient, p(&[0, 2, 10]));
    }

    #[test]
    fn division_reports_stage_and_remainder_when_inexact() {
        // 2x + 4x^2 evaluates to 2 at x = -1, so the first stage must fail.
        let err = p(&[0, 2, 4]).divide_exact_x_plus_one(1).unwrap_err();
        assert_eq!(
            err,
            DivisionError::NotDivisible { stage: 1, remainder: BigInt::from(2) }
        );
    }

    #[test]
    fn second_stage_failure_is_attributed_to_the_second_power() {
        // (x + 1)(2x + 4x^2) divides once but not twice.
        let doubled = &p(&[1, 1]) * &p(&[0, 2, 4]);
        let err = doubled.divide_exact_x_plus_one(2).unwrap_err();
        assert_eq!(
            err,
            DivisionError::NotDivisible { stage: 2, remainder: BigInt::from(2) }
        );
    }

    #[test]
    fn dividing_zero_by_anything_is_zero() {
        assert_eq!(IntPolynomial::zero().divide_exact_x_plus_one(3).unwrap(), IntPolynomial::zero());
        assert_eq!(IntPolynomial::zero().divide_exact_by_x(2).unwrap(), IntPolynomial::zero());
    }

    #[test]
    fn dividing_by_x_requires_a_root_at_zero() {
        assert_eq!(p(&[0, 2, 12, 10]).divide_exact_by_x(1).unwrap(), p(&[2, 12, 10]));
        let err = p(&[1, 2]).divide_exact_by_x(1).unwrap_err();
        assert_eq!(
            err,
            DivisionError::NotDivisibleByX { power: 0, coefficient: BigInt::one() }
        );
    }

    #[test]
    fn multiplication_reconstructs_the_run_polynomial() {
        // (x + 1)(2x + 10x^2) = 2x + 12x^2 + 10x^3
        assert_eq!(&p(&[1, 1]) * &p(&[0, 2, 10]), p(&[0, 2, 12, 10]));
    }

    #[test]
    fn evaluation_matches_hand_computation() {
        let r4 = p(&[0, 2, 12, 10]);
        assert_eq!(r4.evaluate(&BigInt::from(1)), BigInt::from(24));
        assert_eq!(r4.evaluate(&BigInt::from(-1)), BigInt::zero());
        assert_eq!(IntPolynomial::zero().evaluate(&BigInt::from(7)), BigInt::zero());
    }

    #[test]
    fn binomial_rows_are_log_concave_and_unimodal() {
        let row = IntPolynomial::x_plus_one_power(4);
        assert_eq!(row, p(&[1, 4, 6, 4, 1]));
        assert!(is_log_concave(row.coefficients()));
        assert_eq!(unimodal_peak(row.coefficients()), Some(2));
    }

    #[test]
    fn internal_zero_breaks_log_concavity_at_the_middle_index() {
        assert_eq!(log_concavity_violation(&big(&[1, 0, 1])), Some(1));
        assert!(!is_log_concave(&big(&[1, 0, 1])));
    }

    #[test]
    fn run_row_for_n_four_is_unimodal_with_interior_peak() {
        // Coefficients 2, 12, 10 (slice indices 0..3): peak at slice index 1.
        assert_eq!(unimodal_peak(&big(&[2, 12, 10])), Some(1));
        assert!(is_log_concave(&big(&[2, 12, 10])));
    }

    #[test]
    fn zigzag_is_not_unimodal() {
        assert_eq!(unimodal_peak(&big(&[1, 2, 1, 2])), None);
    }

    #[test]
    fn support_contiguity_detects_gaps() {
        assert!(has_contiguous_support(&big(&[0, 1, 2, 1])));
        assert!(has_contiguous_support(&big(&[])));
        assert!(!has_contiguous_support(&big(&[1, 0, 1])));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[0, 2, 12, 10]).to_string(), "2x + 12x^2 + 10x^3");
        assert_eq!(p(&[1, -1]).to_string(), "1 - x");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }
}
