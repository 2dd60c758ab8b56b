//! Exact extremization of a linear objective over a small polytope by
//! vertex enumeration.
//!
//! The feasible sets here are probability polytopes with at most nine mass
//! points, so enumeration beats a general LP solver: every vertex is the
//! unique solution of a square system formed by the equality constraints
//! plus a choice of active inequalities. We solve all such systems, keep the
//! feasible ones, and extremize the objective over them.

use crate::error::SimError;

/// min/max of `objective . x` subject to `eq . x = rhs` for every equality,
/// `ineq . x <= rhs` for every inequality. Nonnegativity must be passed
/// explicitly as inequalities. Equality rows must be linearly independent.
pub struct VertexProblem {
    pub objective: Vec<f64>,
    pub equalities: Vec<(Vec<f64>, f64)>,
    pub inequalities: Vec<(Vec<f64>, f64)>,
}

const PIVOT_EPS: f64 = 1e-10;
const FEAS_EPS: f64 = 1e-9;

/// Solve the square system `a x = b` in place. Returns None when singular.
fn solve_square(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("rows remain");
        if a[pivot_row][col].abs() < PIVOT_EPS {
            return None;
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for row in (col + 1)..n {
            let factor = a[row][col] / a[col][col];
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in (row + 1)..n {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}

/// Rank of a small matrix, by elimination with partial pivoting.
fn rank(rows: &[Vec<f64>]) -> usize {
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let n_cols = match m.first() {
        Some(r) => r.len(),
        None => return 0,
    };
    let mut rank = 0;
    for col in 0..n_cols {
        let Some(pivot) = (rank..m.len()).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
        else {
            break;
        };
        if m[pivot][col].abs() < PIVOT_EPS {
            continue;
        }
        m.swap(rank, pivot);
        for row in (rank + 1)..m.len() {
            let factor = m[row][col] / m[rank][col];
            for k in col..n_cols {
                m[row][k] -= factor * m[rank][k];
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Iterate k-subsets of 0..n in lexicographic order.
fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Enumerate vertices and return (min, max) of the objective.
pub fn extremize(problem: &VertexProblem) -> Result<(f64, f64), SimError> {
    let n = problem.objective.len();
    let eq_rows: Vec<Vec<f64>> = problem.equalities.iter().map(|(a, _)| a.clone()).collect();
    let eq_rank = rank(&eq_rows);
    if eq_rank != problem.equalities.len() {
        return Err(SimError::OracleDegenerate(format!(
            "equality system has rank {eq_rank} < {} rows",
            problem.equalities.len()
        )));
    }
    if eq_rank > n {
        return Err(SimError::OracleDegenerate("more equalities than variables".into()));
    }
    let free = n - eq_rank;
    let mut best: Option<(f64, f64)> = None;

    for_each_combination(problem.inequalities.len(), free, |active| {
        let mut a: Vec<Vec<f64>> = Vec::with_capacity(n);
        let mut b: Vec<f64> = Vec::with_capacity(n);
        for (row, rhs) in &problem.equalities {
            a.push(row.clone());
            b.push(*rhs);
        }
        for &i in active {
            let (row, rhs) = &problem.inequalities[i];
            a.push(row.clone());
            b.push(*rhs);
        }
        let Some(x) = solve_square(a, b) else { return };
        // feasibility of the candidate vertex
        for (row, rhs) in &problem.equalities {
            let lhs: f64 = row.iter().zip(&x).map(|(a, x)| a * x).sum();
            if (lhs - rhs).abs() > FEAS_EPS {
                return;
            }
        }
        for (row, rhs) in &problem.inequalities {
            let lhs: f64 = row.iter().zip(&x).map(|(a, x)| a * x).sum();
            if lhs > rhs + FEAS_EPS {
                return;
            }
        }
        let value: f64 = problem.objective.iter().zip(&x).map(|(c, x)| c * x).sum();
        best = Some(match best {
            None => (value, value),
            Some((lo, hi)) => (lo.min(value), hi.max(value)),
        });
    });

    best.ok_or_else(|| SimError::InfeasibleObservables("no feasible vertex exists".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extremizes_over_a_simplex() {
        // max/min of x0 over the 3-point probability simplex
        let problem = VertexProblem {
            objective: vec![1.0, 0.0, 0.0],
            equalities: vec![(vec![1.0, 1.0, 1.0], 1.0)],
            inequalities: vec![
                (vec![-1.0, 0.0, 0.0], 0.0),
                (vec![0.0, -1.0, 0.0], 0.0),
                (vec![0.0, 0.0, -1.0], 0.0),
            ],
        };
        let (lo, hi) = extremize(&problem).unwrap();
        assert!((lo - 0.0).abs() < 1e-12);
        assert!((hi - 1.0).abs() < 1e-12);
    }

    #[test]
    fn respects_extra_inequalities() {
        // same simplex but x0 <= 0.25
        let problem = VertexProblem {
            objective: vec![1.0, 0.0, 0.0],
            equalities: vec![(vec![1.0, 1.0, 1.0], 1.0)],
            inequalities: vec![
                (vec![-1.0, 0.0, 0.0], 0.0),
                (vec![0.0, -1.0, 0.0], 0.0),
                (vec![0.0, 0.0, -1.0], 0.0),
                (vec![1.0, 0.0, 0.0], 0.25),
            ],
        };
        let (lo, hi) = extremize(&problem).unwrap();
        assert!((lo - 0.0).abs() < 1e-12);
        assert!((hi - 0.25).abs() < 1e-12);
    }

    #[test]
    fn reports_infeasibility() {
        let problem = VertexProblem {
            objective: vec![1.0],
            equalities: vec![(vec![1.0], 2.0)],
            inequalities: vec![(vec![1.0], 1.0), (vec![-1.0], 0.0)],
        };
        assert!(matches!(extremize(&problem), Err(SimError::InfeasibleObservables(_))));
    }

    #[test]
    fn rejects_dependent_equalities() {
        let problem = VertexProblem {
            objective: vec![1.0, 0.0],
            equalities: vec![(vec![1.0, 1.0], 1.0), (vec![2.0, 2.0], 2.0)],
            inequalities: vec![],
        };
        assert!(matches!(extremize(&problem), Err(SimError::OracleDegenerate(_))));
    }
}
