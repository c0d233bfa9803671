//! Exact Gaussian elimination over the rationals.

use num_traits::Zero;

use crate::symkernel::Rational;

/// Row-reduces `m` in place and returns the rank.
fn reduce(m: &mut [Vec<Rational>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for v in m[rank].iter_mut() {
            *v = &*v / &pivot;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..cols {
                    let d = &f * &m[rank][c];
                    m[r][c] -= d;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    reduce(&mut m)
}

/// Solves `a · x = b` for square nonsingular `a`.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|r| r.len() != n) {
        return None;
    }
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    if reduce(&mut m) < n || (0..n).any(|i| m[i][i].is_zero()) {
        return None;
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::{int, rat};

    #[test]
    fn solves_small_systems() {
        let a = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        assert_eq!(solve(&a, &[int(3), int(5)]).unwrap(), vec![rat(4, 5), rat(7, 5)]);
        let singular = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert!(solve(&singular, &[int(1), int(1)]).is_none());
        assert_eq!(rank(&singular), 1);
        assert_eq!(rank(&a), 2);
    }
}
