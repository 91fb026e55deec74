use num_rational::BigRational;
use num_traits::Zero;

use super::{PolyError, Result};

/// Solves `A x = b` exactly by Gauss-Jordan elimination.
///
/// Returns `Ok(None)` when the system is inconsistent. Underdetermined
/// systems get the solution with every free variable set to zero.
pub fn solve_linear(a: &[Vec<BigRational>], b: &[BigRational]) -> Result<Option<Vec<BigRational>>> {
    let rows = a.len();
    if b.len() != rows {
        return Err(PolyError::Dimension(format!(
            "{rows} rows but right-hand side of length {}",
            b.len()
        )));
    }
    let cols = a.first().map_or(0, Vec::len);
    if let Some(bad) = a.iter().position(|r| r.len() != cols) {
        return Err(PolyError::Dimension(format!(
            "row {bad} has length {}, expected {cols}",
            a[bad].len()
        )));
    }

    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[row].clone();
        for (r, target) in m.iter_mut().enumerate() {
            if r != row && !target[col].is_zero() {
                let factor = target[col].clone();
                for (v, p) in target.iter_mut().zip(&pivot_row).skip(col) {
                    *v -= &factor * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }

    // A zero row with nonzero right-hand side means no solution.
    if m[row..].iter().any(|r| !r[cols].is_zero()) {
        return Ok(None);
    }

    let mut x = vec![BigRational::zero(); cols];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = m[r][cols].clone();
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::super::{rat, ratio};
    use super::*;

    fn mat(rows: &[&[BigRational]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.to_vec()).collect()
    }

    fn residual_ok(a: &[Vec<BigRational>], x: &[BigRational], b: &[BigRational]) -> bool {
        a.iter().zip(b).all(|(row, rhs)| {
            let lhs: BigRational = row.iter().zip(x).map(|(u, v)| u * v).sum();
            &lhs == rhs
        })
    }

    #[test]
    fn identity_returns_rhs() {
        let a = mat(&[&[rat(1), rat(0)], &[rat(0), rat(1)]]);
        let b = vec![ratio(3, 7), rat(-2)];
        assert_eq!(solve_linear(&a, &b).unwrap(), Some(b));
    }

    #[test]
    fn inconsistent_scalar_system() {
        assert_eq!(solve_linear(&[vec![rat(0)]], &[rat(1)]).unwrap(), None);
    }

    #[test]
    fn rational_three_by_three() {
        let a = mat(&[
            &[ratio(1, 2), rat(3), rat(-1)],
            &[rat(2), ratio(-5, 3), rat(4)],
            &[rat(0), rat(7), ratio(2, 9)],
        ]);
        let b = vec![rat(1), ratio(1, 4), rat(-3)];
        let x = solve_linear(&a, &b).unwrap().expect("invertible");
        assert!(residual_ok(&a, &x, &b));
    }

    #[test]
    fn underdetermined_and_overdetermined() {
        let a = mat(&[&[rat(1), rat(1)]]);
        let x = solve_linear(&a, &[rat(4)]).unwrap().unwrap();
        assert!(residual_ok(&a, &x, &[rat(4)]));

        let a = mat(&[&[rat(1)], &[rat(2)], &[rat(3)]]);
        assert!(solve_linear(&a, &[rat(1), rat(2), rat(3)])
            .unwrap()
            .is_some());
        assert!(solve_linear(&a, &[rat(1), rat(2), rat(4)])
            .unwrap()
            .is_none());
    }

    #[test]
    fn dimension_mismatch() {
        let a = mat(&[&[rat(1), rat(0)], &[rat(0)]]);
        assert!(matches!(
            solve_linear(&a, &[rat(1), rat(1)]),
            Err(PolyError::Dimension(_))
        ));
        assert!(solve_linear(&[vec![rat(1)]], &[]).is_err());
    }
}
