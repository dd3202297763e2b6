//! Exact linear feasibility `A x = b, x >= 0` over the rationals by the
//! phase-one simplex method with Bland's rule.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A feasible point, or `None` when the system has no nonnegative solution.
pub fn feasible_point(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let width = n + m + 1;
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        let flip = rhs.is_negative();
        let mut t = vec![BigRational::zero(); width];
        for (j, v) in row.iter().enumerate() {
            t[j] = if flip { -v.clone() } else { v.clone() };
        }
        t[n + i] = BigRational::one();
        t[width - 1] = if flip { -rhs.clone() } else { rhs.clone() };
        rows.push(t);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // reduced costs of the artificial objective; last entry is minus its value
    let mut cost = vec![BigRational::zero(); width];
    for row in &rows {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[width - 1] -= &row[width - 1];
    }

    while let Some(col) = (0..n + m).find(|&j| cost[j].is_negative()) {
        let mut pivot: Option<(usize, BigRational)> = None;
        for (i, row) in rows.iter().enumerate() {
            if row[col].is_positive() {
                let ratio = &row[width - 1] / &row[col];
                let better = match &pivot {
                    None => true,
                    Some((k, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*k]),
                };
                if better {
                    pivot = Some((i, ratio));
                }
            }
        }
        // unbounded is impossible for phase one: the objective is bounded below by 0
        let (r, _) = pivot?;
        let p = rows[r][col].clone();
        for v in rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
        let f = cost[col].clone();
        for (v, pv) in cost.iter_mut().zip(&pivot_row) {
            *v -= &f * pv;
        }
        basis[r] = col;
    }
    if !cost[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = rows[i][width - 1].clone();
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn check(a: &[Vec<BigRational>], b: &[BigRational], x: &[BigRational]) {
        assert!(x.iter().all(|v| !v.is_negative()));
        for (row, rhs) in a.iter().zip(b) {
            let s: BigRational = row.iter().zip(x).map(|(c, v)| c * v).sum();
            assert_eq!(&s, rhs);
        }
    }

    #[test]
    fn simple_systems() {
        let a = vec![vec![q(1, 1), q(1, 1)], vec![q(1, 1), q(-1, 1)]];
        let b = vec![q(1, 1), q(1, 3)];
        let x = feasible_point(&a, &b).unwrap();
        assert_eq!(x, vec![q(2, 3), q(1, 3)]);
        check(&a, &b, &x);
        let infeasible = vec![vec![q(1, 1), q(1, 1)]];
        assert!(feasible_point(&infeasible, &[q(-1, 1)]).is_none());
    }

    #[test]
    fn degenerate_and_redundant_rows() {
        let a = vec![
            vec![q(1, 1), q(-1, 1), q(0, 1)],
            vec![q(0, 1), q(1, 1), q(-1, 1)],
            vec![q(1, 1), q(0, 1), q(-1, 1)],
            vec![q(1, 1), q(1, 1), q(1, 1)],
        ];
        let b = vec![q(0, 1), q(0, 1), q(0, 1), q(1, 1)];
        let x = feasible_point(&a, &b).unwrap();
        check(&a, &b, &x);
        assert_eq!(x, vec![q(1, 3); 3]);
    }
}
