//! Exact Gaussian elimination over the rational-function field.

use super::ratfunc::RatFunc;

/// Row-reduces `rows` in place; returns pivot columns.
fn row_reduce(rows: &mut [Vec<RatFunc>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("pivot is nonzero");
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone();
            for j in col..rows[i].len() {
                let sub = &factor * &rows[r][j];
                rows[i][j] = &rows[i][j] - &sub;
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Rank of a matrix given as rows.
pub fn rank(rows: &[Vec<RatFunc>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m = rows.to_vec();
    row_reduce(&mut m, ncols).len()
}

/// Solves `A x = b`. Returns `None` when the system is inconsistent; free
/// variables are set to zero.
pub fn solve(a: &[Vec<RatFunc>], b: &[RatFunc]) -> Option<Vec<RatFunc>> {
    let ncols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<RatFunc>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut m, ncols);
    for row in m.iter().skip(pivots.len()) {
        if !row[ncols].is_zero() {
            return None;
        }
    }
    let mut x = vec![RatFunc::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][ncols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> RatFunc {
        RatFunc::from_int(n)
    }

    #[test]
    fn solves_square_system() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let b = vec![q(3), q(5)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(x, vec![RatFunc::from_ratio(4, 5), RatFunc::from_ratio(7, 5)]);
    }

    #[test]
    fn detects_inconsistency() {
        let a = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert!(solve(&a, &[q(1), q(3)]).is_none());
        assert_eq!(rank(&a), 1);
    }

    #[test]
    fn symbolic_rank() {
        let e = RatFunc::sym("eps");
        let a = vec![vec![e.clone(), q(1)], vec![&e * &e, e.clone()]];
        assert_eq!(rank(&a), 1);
    }
}
