//! Exact linear algebra over ℚ by fraction-free elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// How a linear system failed to have a unique solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveFailure {
    /// The columns are dependent.
    Singular,
    /// No vector satisfies every equation.
    Inconsistent,
}

/// Scales each rational row by the lcm of its denominators.
fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            row.iter()
                .map(|c| c.numer() * (&l / c.denom()))
                .collect()
        })
        .collect()
}

/// Solves `A x = b` for a system with at least as many equations as unknowns.
///
/// Bareiss elimination on the integer-scaled augmented matrix: every
/// intermediate division is exact, so entries stay integral and bounded by
/// minors of the input.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> std::result::Result<Vec<Rational>, SolveFailure> {
    let m = a.len();
    assert_eq!(m, b.len(), "row count mismatch");
    let n = a.first().map_or(0, |r| r.len());
    let augmented: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, v)| {
            assert_eq!(row.len(), n, "ragged matrix");
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let mut mat = integer_rows(&augmented);
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..m).find(|&r| !mat[r][k].is_zero()).ok_or(SolveFailure::Singular)?;
        mat.swap(k, pivot);
        for i in k + 1..m {
            for j in k + 1..=n {
                let v = &mat[k][k] * &mat[i][j] - &mat[i][k] * &mat[k][j];
                mat[i][j] = v / &prev;
            }
            mat[i][k] = BigInt::zero();
        }
        prev = mat[k][k].clone();
    }
    if (n..m).any(|r| !mat[r][n].is_zero()) {
        return Err(SolveFailure::Inconsistent);
    }
    let mut x = vec![Rational::zero(); n];
    for k in (0..n).rev() {
        let mut acc = Rational::from_integer(mat[k][n].clone());
        for j in k + 1..n {
            acc -= Rational::from_integer(mat[k][j].clone()) * &x[j];
        }
        x[k] = acc / Rational::from_integer(mat[k][k].clone());
    }
    Ok(x)
}

/// [`solve`] with failures mapped onto the crate error type.
pub fn solve_unique(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>> {
    solve(a, b).map_err(|f| match f {
        SolveFailure::Singular => Error::precondition("linear system is singular"),
        SolveFailure::Inconsistent => Error::precondition("linear system is inconsistent"),
    })
}

/// Determinant of a square rational matrix.
pub fn determinant(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    if n == 0 {
        return Rational::one();
    }
    let scales: Vec<BigInt> = a
        .iter()
        .map(|row| row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom())))
        .collect();
    let mut mat = integer_rows(a);
    let mut prev = BigInt::one();
    let mut sign = false;
    for k in 0..n {
        let pivot = match (k..n).find(|&r| !mat[r][k].is_zero()) {
            Some(p) => p,
            None => return Rational::zero(),
        };
        if pivot != k {
            mat.swap(k, pivot);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &mat[k][k] * &mat[i][j] - &mat[i][k] * &mat[k][j];
                mat[i][j] = v / &prev;
            }
            mat[i][k] = BigInt::zero();
        }
        prev = mat[k][k].clone();
    }
    let scale: BigInt = scales.iter().product();
    let det = Rational::new(mat[n - 1][n - 1].clone(), scale);
    if sign {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{from_frac, from_int};

    #[test]
    fn solves_square_system() {
        let a = vec![vec![from_int(2), from_int(1)], vec![from_int(1), from_int(3)]];
        let b = vec![from_int(3), from_int(5)];
        assert_eq!(solve(&a, &b).unwrap(), vec![from_frac(4, 5), from_frac(7, 5)]);
    }

    #[test]
    fn overdetermined_consistent_and_not() {
        let a = vec![
            vec![from_int(1), from_int(0)],
            vec![from_int(0), from_frac(1, 2)],
            vec![from_int(1), from_int(1)],
        ];
        assert_eq!(
            solve(&a, &[from_int(1), from_int(1), from_int(3)]).unwrap(),
            vec![from_int(1), from_int(2)]
        );
        assert_eq!(
            solve(&a, &[from_int(1), from_int(1), from_int(4)]),
            Err(SolveFailure::Inconsistent)
        );
    }

    #[test]
    fn singular_detected() {
        let a = vec![vec![from_int(1), from_int(2)], vec![from_int(2), from_int(4)]];
        assert_eq!(solve(&a, &[from_int(1), from_int(2)]), Err(SolveFailure::Singular));
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let a = vec![
            vec![from_int(0), from_int(2), from_frac(1, 3)],
            vec![from_int(1), from_int(-1), from_int(4)],
            vec![from_int(5), from_int(0), from_int(2)],
        ];
        let by_hand = from_int(0) * (from_int(-2) - from_int(0))
            - from_int(2) * (from_int(2) - from_int(20))
            + from_frac(1, 3) * (from_int(0) + from_int(5));
        assert_eq!(determinant(&a), by_hand);
    }
}
