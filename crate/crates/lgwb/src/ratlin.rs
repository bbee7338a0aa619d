//! Exact rational linear algebra at desk scale (Gaussian elimination).

use crate::laurent::Rat;
use num_traits::{One, Signed, Zero};

/// Row-reduce in place; returns pivot columns.
fn row_reduce(rows: &mut [Vec<Rat>]) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return vec![];
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rat::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() * &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let s = rows[r][j].clone() * &f;
                    rows[i][j] = rows[i][j].clone() - s;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    pivots
}

pub(crate) fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    row_reduce(&mut m).len()
}

/// Determinant of a square rational matrix.
pub(crate) fn det(rows: &[Vec<Rat>]) -> Rat {
    let n = rows.len();
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let mut d = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(c, p);
            d = -d;
        }
        d *= &m[c][c];
        let inv = Rat::one() / m[c][c].clone();
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = m[i][c].clone() * &inv;
                for j in c..n {
                    let s = m[c][j].clone() * &f;
                    m[i][j] = m[i][j].clone() - s;
                }
            }
        }
    }
    d
}

/// Solve `A x = b` for square nonsingular `A`.
pub(crate) fn solve_square(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n].clone()).collect())
}

/// Solve `A x = b` in general: a particular solution plus a nullspace basis,
/// or `None` if the system is inconsistent.
pub(crate) fn solve_affine(a: &[Vec<Rat>], b: &[Rat]) -> Option<(Vec<Rat>, Vec<Vec<Rat>>)> {
    let nrows = a.len();
    let ncols = if nrows == 0 { 0 } else { a[0].len() };
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.iter().any(|&c| c == ncols) {
        return None; // a row reduced to 0 = 1
    }
    let mut particular = vec![Rat::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug[r][ncols].clone();
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![Rat::zero(); ncols];
        v[f] = Rat::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -aug[r][f].clone();
        }
        basis.push(v);
    }
    Some((particular, basis))
}

/// Nullspace basis of `A`.
pub(crate) fn nullspace(a: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let b = vec![Rat::zero(); a.len()];
    solve_affine(a, &b).map(|(_, basis)| basis).unwrap_or_default()
}

/// Inverse of an integer matrix, when it is invertible over the integers.
pub(crate) fn int_inverse(m: &[Vec<i32>]) -> Option<Vec<Vec<i32>>> {
    let n = m.len();
    let rows: Vec<Vec<Rat>> = m
        .iter()
        .map(|r| r.iter().map(|&x| crate::laurent::rat_int(x as i64)).collect())
        .collect();
    let d = det(&rows);
    if !d.abs().is_one() {
        return None;
    }
    let mut inv = vec![vec![0i32; n]; n];
    for j in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[j] = Rat::one();
        let col = solve_square(&rows, &e)?;
        for i in 0..n {
            debug_assert!(col[i].is_integer());
            inv[i][j] = col[i].to_integer().try_into().ok()?;
        }
    }
    Some(inv)
}

/// Integer matrix product.
pub(crate) fn int_mul(a: &[Vec<i32>], b: &[Vec<i32>]) -> Vec<Vec<i32>> {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    let mut out = vec![vec![0i32; m]; n];
    for i in 0..n {
        for j in 0..m {
            for t in 0..k {
                out[i][j] += a[i][t] * b[t][j];
            }
        }
    }
    out
}
