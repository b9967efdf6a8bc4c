//! Exact linear algebra over the rationals.
//!
//! Rational input rows are cleared to integers, then reduced by
//! fraction-free (Bareiss) elimination: each update step
//! `a_ij <- (pivot * a_ij - a_ic * a_pj) / prev` divides exactly by the
//! previous pivot, keeping the intermediate entries integral and modest.
//! Back-substitution happens over rationals. Pivots are chosen in a fixed
//! order (leftmost column, first nonzero row), so all outputs are
//! deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivot_cols: Vec<usize>,
    cols: usize,
}

fn clear_row(row: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in row {
        lcm = lcm.lcm(&x.denominator());
    }
    row.iter()
        .map(|x| x.numerator() * (&lcm / x.denominator()))
        .collect()
}

/// Fraction-free row echelon reduction on the first `cols` columns; any
/// extra columns (e.g. an appended right-hand side) are carried along but
/// never pivoted on.
fn echelon(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let n_rows = rows.len();
    let mut pivot_cols = Vec::new();
    let mut prev = BigInt::one();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pivot_row) = (rank..n_rows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let pivot = rows[rank][col].clone();
        for r in rank + 1..n_rows {
            let factor = rows[r][col].clone();
            for c in 0..rows[r].len() {
                let val = &pivot * &rows[r][c] - &factor * &rows[rank][c];
                debug_assert!((&val % &prev).is_zero(), "Bareiss division must be exact");
                rows[r][c] = val / &prev;
            }
        }
        prev = pivot;
        pivot_cols.push(col);
        rank += 1;
        if rank == n_rows {
            break;
        }
    }
    Echelon {
        rows,
        pivot_cols,
        cols,
    }
}

impl Echelon {
    /// Solves the homogeneous system for the given assignment of free
    /// columns by back-substitution.
    fn back_substitute(&self, mut x: Vec<Rational>, rhs_col: Option<usize>) -> Vec<Rational> {
        for (k, &pc) in self.pivot_cols.iter().enumerate().rev() {
            let row = &self.rows[k];
            let mut acc = match rhs_col {
                Some(rc) => Rational::from_bigints(row[rc].clone(), BigInt::one()),
                None => Rational::zero(),
            };
            for c in pc + 1..self.cols {
                if row[c].is_zero() || x[c].is_zero() {
                    continue;
                }
                acc = &acc - &(&Rational::from_bigints(row[c].clone(), BigInt::one()) * &x[c]);
            }
            x[pc] = &acc / &Rational::from_bigints(row[pc].clone(), BigInt::one());
        }
        x
    }
}

/// Scales a rational vector to a primitive integer vector whose first
/// nonzero entry is positive.
pub fn normalize_primitive(v: &[Rational]) -> Vec<Rational> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(&x.denominator());
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numerator() * (&lcm / x.denominator()))
        .collect();
    let mut gcd = BigInt::zero();
    for x in &ints {
        gcd = gcd.gcd(x);
    }
    if gcd.is_zero() {
        return v.to_vec();
    }
    let sign = ints
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| if x.is_negative() { -1 } else { 1 })
        .unwrap_or(1);
    let scale = gcd * BigInt::from(sign);
    ints.iter()
        .map(|x| Rational::from_bigints(x / &scale, BigInt::one()))
        .collect()
}

/// Canonical basis of `{x : A x = 0}`: one primitive vector per free
/// column, with a 1 in that free coordinate before normalization.
pub fn nullspace(matrix: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    debug_assert!(matrix.iter().all(|r| r.len() == cols));
    let ech = echelon(matrix.iter().map(|r| clear_row(r)).collect(), cols);
    let mut basis = Vec::new();
    for free in 0..cols {
        if ech.pivot_cols.contains(&free) {
            continue;
        }
        let mut x = vec![Rational::zero(); cols];
        x[free] = Rational::one();
        let x = ech.back_substitute(x, None);
        basis.push(normalize_primitive(&x));
    }
    basis
}

/// Rank of the matrix.
pub fn rank(matrix: &[Vec<Rational>], cols: usize) -> usize {
    echelon(matrix.iter().map(|r| clear_row(r)).collect(), cols)
        .pivot_cols
        .len()
}

/// Solves `A x = b` exactly. Returns the particular solution with all free
/// variables set to zero, or `None` when the system is inconsistent.
pub fn solve(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(matrix.len(), rhs.len());
    let cols = matrix.first().map(|r| r.len()).unwrap_or(0);
    let augmented: Vec<Vec<BigInt>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut full: Vec<Rational> = row.to_vec();
            full.push(b.clone());
            clear_row(&full)
        })
        .collect();
    let ech = echelon(augmented, cols);
    // a pivot-free row with nonzero right-hand side is a contradiction
    for row in ech.rows.iter().skip(ech.pivot_cols.len()) {
        if row[..cols].iter().all(|x| x.is_zero()) && !row[cols].is_zero() {
            return None;
        }
    }
    let x = vec![Rational::zero(); cols];
    Some(ech.back_substitute(x, Some(cols)))
}
