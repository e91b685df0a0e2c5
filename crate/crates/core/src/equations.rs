//! The integer system behind the construction.
//!
//! For order `n` we need `n²` nonnegative triples `(a_i, b_i, c_i)` with
//!
//! ```text
//! a_i + 2 b_i + 3 c_i = n      for every i
//! Σ a_i = n,  Σ b_i = 3·C(n,2),  Σ c_i = 2·C(n,3)
//! ```
//!
//! A solution exists exactly for `n = 1` and for `n ≡ 0, 2 (mod 3)` with
//! `n ≠ 3`. [`solve_system`] returns the columns of an explicit `3 × n²`
//! matrix chosen by `n mod 6`, with hand-built matrices for the small orders
//! 5, 9, 11, 15 and 21.

use std::fmt;

use thiserror::Error;

use crate::blocks::binomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Infeasibility {
    /// Every triple for `n = 3` is `(3,0,0)`, `(1,1,0)` or `(0,0,1)`; nine
    /// b's summing to 9 force every `a_i = 0`, contradicting `Σ a_i = 3`.
    OrderThree,
    /// For `n ≡ 1 (mod 3)`, `n > 1`, each index needs `a_i ≥ 1` or
    /// `b_i ≥ 2`, so `n² ≤ n + (3/2)·C(n,2)`, impossible for `n > 1`.
    OneModThree,
}

impl fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::OrderThree => f.write_str("exceptional order 3"),
            Self::OneModThree => f.write_str("order ≡ 1 (mod 3)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquationsError {
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("order {order} is infeasible: {reason}")]
    Infeasible { order: usize, reason: Infeasibility },
}

/// `Ok(())` when a symmetric latin cube of order `n` exists.
pub fn feasible(n: usize) -> Result<(), EquationsError> {
    match n {
        0 => Err(EquationsError::ZeroOrder),
        1 => Ok(()),
        3 => Err(EquationsError::Infeasible { order: 3, reason: Infeasibility::OrderThree }),
        _ if n % 3 == 1 => Err(EquationsError::Infeasible { order: n, reason: Infeasibility::OneModThree }),
        _ => Ok(()),
    }
}

pub fn is_feasible(n: usize) -> bool {
    feasible(n).is_ok()
}

/// `(a, b, c)`: how many blocks of size 1, 2 and 3 a class starts with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl Triple {
    pub const fn new(a: u64, b: u64, c: u64) -> Self {
        Self { a, b, c }
    }

    pub fn weight(&self) -> u128 {
        u128::from(self.a) + 2 * u128::from(self.b) + 3 * u128::from(self.c)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.a, self.b, self.c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemSolution {
    order: usize,
    triples: Vec<Triple>,
}

impl SystemSolution {
    /// Wraps triples without checking them; see [`validate_solution`].
    pub fn new(order: usize, triples: Vec<Triple>) -> Self {
        Self { order, triples }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn into_triples(self) -> Vec<Triple> {
        self.triples
    }
}

fn push_block(out: &mut Vec<Triple>, count: u64, t: Triple) {
    out.extend(std::iter::repeat_n(t, count as usize));
}

/// Columns of the matrix for order `n`, left to right.
pub fn solve_system(n: usize) -> Result<SystemSolution, EquationsError> {
    feasible(n)?;
    let m = n as u64;
    let mut cols = Vec::with_capacity(n * n);
    let t = Triple::new;
    match (n, n % 6) {
        (1, _) => cols.push(t(1, 0, 0)),
        (_, 0) => {
            cols.push(t(m, 0, 0));
            push_block(&mut cols, 3 * (m - 1), t(0, m / 2, 0));
            push_block(&mut cols, (m - 1) * (m - 2), t(0, 0, m / 3));
        }
        (_, 2) => {
            cols.push(t(m, 0, 0));
            push_block(&mut cols, m - 1, t(0, m / 2, 0));
            push_block(&mut cols, m * (m - 1), t(0, 1, (m - 2) / 3));
        }
        (9, _) => {
            cols.push(t(9, 0, 0));
            push_block(&mut cols, 36, t(0, 3, 1));
            push_block(&mut cols, 44, t(0, 0, 3));
        }
        (15, _) => {
            cols.push(t(15, 0, 0));
            push_block(&mut cols, 52, t(0, 6, 1));
            // printed as (0,3,1), which has weight 9; (0,3,3) balances every equation
            cols.push(t(0, 3, 3));
            push_block(&mut cols, 171, t(0, 0, 5));
        }
        (21, _) => {
            cols.push(t(21, 0, 0));
            push_block(&mut cols, 70, t(0, 9, 1));
            push_block(&mut cols, 370, t(0, 0, 7));
        }
        (_, 3) => {
            debug_assert!(n >= 27);
            cols.push(t(m, 0, 0));
            push_block(&mut cols, 3 * (m + 2), t(0, (m - 3) / 2, 1));
            cols.push(t(0, 9, (m - 18) / 3));
            push_block(&mut cols, m * m - 3 * m - 8, t(0, 0, m / 3));
        }
        (5, _) => {
            push_block(&mut cols, 20, t(0, 1, 1));
            push_block(&mut cols, 5, t(1, 2, 0));
        }
        (11, _) => {
            // printed first column (11,0,1) has weight 14
            cols.push(t(11, 0, 0));
            push_block(&mut cols, 105, t(0, 1, 3));
            push_block(&mut cols, 15, t(0, 4, 1));
        }
        (_, 5) => {
            debug_assert!(n >= 17);
            cols.push(t(m, 0, 0));
            cols.push(t(0, 7, (m - 14) / 3));
            // block widths as printed are transposed; these satisfy Σb and Σc
            push_block(&mut cols, m * m - m - 4, t(0, 1, (m - 2) / 3));
            push_block(&mut cols, m + 2, t(0, (m - 3) / 2, 1));
        }
        _ => unreachable!("feasible orders are 1 or ≡ 0,2 mod 3"),
    }
    Ok(SystemSolution::new(n, cols))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolutionViolation {
    Length { expected: usize, got: usize },
    Weight { index: usize, triple: Triple },
    SumA { got: u128, want: u128 },
    SumB { got: u128, want: u128 },
    SumC { got: u128, want: u128 },
}

impl fmt::Display for SolutionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Length { expected, got } => write!(f, "expected {expected} triples, got {got}"),
            Self::Weight { index, triple } => {
                write!(f, "triple {index} ({triple}) has weight {}", triple.weight())
            }
            Self::SumA { got, want } => write!(f, "sum of a is {got}, expected {want}"),
            Self::SumB { got, want } => write!(f, "sum of b is {got}, expected {want}"),
            Self::SumC { got, want } => write!(f, "sum of c is {got}, expected {want}"),
        }
    }
}

/// Rechecks every equation of the system with exact integers.
pub fn validate_solution(sol: &SystemSolution) -> Vec<SolutionViolation> {
    let n = sol.order() as u64;
    let mut out = Vec::new();
    let expected = (n * n) as usize;
    if sol.triples().len() != expected {
        out.push(SolutionViolation::Length { expected, got: sol.triples().len() });
    }
    for (k, tr) in sol.triples().iter().enumerate() {
        if tr.weight() != u128::from(n) {
            out.push(SolutionViolation::Weight { index: k + 1, triple: *tr });
        }
    }
    let sum = |f: fn(&Triple) -> u64| sol.triples().iter().map(|t| u128::from(f(t))).sum::<u128>();
    let (sa, sb, sc) = (sum(|t| t.a), sum(|t| t.b), sum(|t| t.c));
    if sa != u128::from(n) {
        out.push(SolutionViolation::SumA { got: sa, want: u128::from(n) });
    }
    let wb = 3 * binomial(n, 2);
    if sb != wb {
        out.push(SolutionViolation::SumB { got: sb, want: wb });
    }
    let wc = 2 * binomial(n, 3);
    if sc != wc {
        out.push(SolutionViolation::SumC { got: sc, want: wc });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn feasibility_examples() {
        assert_eq!(feasible(0), Err(EquationsError::ZeroOrder));
        assert!(feasible(1).is_ok());
        assert_eq!(
            feasible(3),
            Err(EquationsError::Infeasible { order: 3, reason: Infeasibility::OrderThree })
        );
        assert_eq!(
            feasible(7),
            Err(EquationsError::Infeasible { order: 7, reason: Infeasibility::OneModThree })
        );
        assert!(feasible(6).is_ok() && feasible(8).is_ok());
        assert_eq!(Infeasibility::OneModThree.to_string(), "order ≡ 1 (mod 3)");
    }

    #[test]
    fn small_matrices() {
        let t = Triple::new;
        assert_eq!(solve_system(1).unwrap().triples(), &[t(1, 0, 0)]);
        assert_eq!(solve_system(2).unwrap().triples(), &[t(2, 0, 0), t(0, 1, 0), t(0, 1, 0), t(0, 1, 0)]);
        let s5 = solve_system(5).unwrap().into_triples();
        assert_eq!(s5.len(), 25);
        assert!(s5[..20].iter().all(|&x| x == t(0, 1, 1)));
        assert!(s5[20..].iter().all(|&x| x == t(1, 2, 0)));
        let s9 = solve_system(9).unwrap().into_triples();
        assert_eq!(s9[0], t(9, 0, 0));
        assert!(s9[1..37].iter().all(|&x| x == t(0, 3, 1)));
        assert!(s9[37..].iter().all(|&x| x == t(0, 0, 3)));
        assert_eq!(s9.len(), 81);
    }

    #[test]
    fn every_case_validates() {
        for n in (1..=200).filter(|&n| is_feasible(n)) {
            let sol = solve_system(n).unwrap();
            assert_eq!(sol.triples().len(), n * n, "n={n}");
            let v = validate_solution(&sol);
            assert!(v.is_empty(), "n={n}: {v:?}");
        }
    }

    #[test]
    fn infeasible_orders_are_rejected() {
        for n in [3, 4, 7, 10, 13, 40] {
            assert!(matches!(solve_system(n), Err(EquationsError::Infeasible { .. })));
        }
    }

    #[test]
    fn decremented_solution_fails() {
        let mut triples = solve_system(2).unwrap().into_triples();
        triples[1].b -= 1;
        let v = validate_solution(&SystemSolution::new(2, triples));
        assert!(v.iter().any(|x| matches!(x, SolutionViolation::Weight { index: 2, .. })));
        assert!(v.iter().any(|x| matches!(x, SolutionViolation::SumB { got: 2, want: 3 })));
    }
}
