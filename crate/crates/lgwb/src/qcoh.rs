//! Quantum multiplication by the first Chern class on benchmark spaces.
//!
//! Matrices are tabulated from the standard small quantum products of CP^n
//! and CP^1 x CP^1, with a degree-d class weighted by `e^{-d Lambda}`. This
//! gives an eigenvalue oracle independent of the critical-point solver.

use crate::critical::poly_roots;
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Quantum multiplication by `c1(X)` in a fixed additive basis of `H*(X)`.
#[derive(Clone, Debug)]
pub struct C1Matrix {
    /// Column `j` holds the expansion of `c1 * basis_j`.
    pub entries: Vec<Vec<Complex64>>,
    pub basis_labels: Vec<String>,
    pub space_label: String,
}

impl C1Matrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }
}

/// A minimum-cost pairing between two complex multisets.
#[derive(Clone, Debug)]
pub struct MultisetMatch {
    /// `(left value, right value, distance)` for each retained pair.
    pub pairs: Vec<(Complex64, Complex64, f64)>,
    /// Largest distance among retained pairs (0 when there are none).
    pub max_distance: f64,
    /// Leftovers from the left and right inputs.
    pub unmatched: (Vec<Complex64>, Vec<Complex64>),
}

impl MultisetMatch {
    /// True when nothing is left over.
    pub fn complete(&self) -> bool {
        self.unmatched.0.is_empty() && self.unmatched.1.is_empty()
    }
}

/// `c1 = (n+1) H` on `CP^n` in the basis `(1, H, ..., H^n)`, with
/// `H * H^n = e^{-Lambda} * 1`.
pub fn c1_matrix_cpn(n: usize, lambda: f64) -> Result<C1Matrix> {
    if n < 1 {
        return Err(Error::InvalidParameter("CP^n requires n >= 1".into()));
    }
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter(
            "CP^n area Lambda must be positive".into(),
        ));
    }
    let d = n + 1;
    let mut entries = vec![vec![Complex64::new(0.0, 0.0); d]; d];
    let w = d as f64;
    for j in 0..n {
        entries[j + 1][j] = Complex64::new(w, 0.0);
    }
    entries[0][n] = Complex64::new(w * (-lambda).exp(), 0.0);
    let basis_labels = (0..d)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "H".to_string(),
            i => format!("H^{i}"),
        })
        .collect();
    Ok(C1Matrix {
        entries,
        basis_labels,
        space_label: format!("cp{n}"),
    })
}

/// `c1 = 2H1 + 2H2` on `CP^1 x CP^1` in the basis `(1, H1, H2, H1H2)`, with
/// `Hi * Hi = e^{-Lambda_i} * 1`.
pub fn c1_matrix_p1p1(lambda1: f64, lambda2: f64) -> Result<C1Matrix> {
    if !(lambda1 > 0.0 && lambda2 > 0.0) {
        return Err(Error::InvalidParameter(
            "CP^1 x CP^1 areas must be positive".into(),
        ));
    }
    let q1 = (-lambda1).exp();
    let q2 = (-lambda2).exp();
    let z = Complex64::new(0.0, 0.0);
    let c = |x: f64| Complex64::new(x, 0.0);
    // Columns: images of 1, H1, H2, H1H2 under 2H1 + 2H2.
    let entries = vec![
        vec![z, c(2.0 * q1), c(2.0 * q2), z],
        vec![c(2.0), z, z, c(2.0 * q2)],
        vec![c(2.0), z, z, c(2.0 * q1)],
        vec![z, c(2.0), c(2.0), z],
    ];
    Ok(C1Matrix {
        entries,
        basis_labels: vec!["1".into(), "H1".into(), "H2".into(), "H1H2".into()],
        space_label: "p1p1".into(),
    })
}

/// Characteristic polynomial coefficients (ascending, monic) via the
/// Faddeev-LeVerrier recursion.
pub fn char_poly(m: &C1Matrix) -> Vec<Complex64> {
    let n = m.dim();
    let a = &m.entries;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    coeffs[n] = Complex64::new(1.0, 0.0);
    // M_0 = I; M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_{k-1} ...)/k.
    let mut mk: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect();
    for k in 1..=n {
        let am: Vec<Vec<Complex64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|l| a[i][l] * mk[l][j]).sum())
                    .collect()
            })
            .collect();
        let trace: Complex64 = (0..n).map(|i| am[i][i]).sum();
        let ck = -trace / k as f64;
        coeffs[n - k] = ck;
        mk = am;
        for i in 0..n {
            mk[i][i] += ck;
        }
    }
    coeffs
}

/// Spectrum of the c1 matrix: characteristic polynomial, then root finding.
pub fn eigenvalues(m: &C1Matrix) -> Result<Vec<Complex64>> {
    poly_roots(&char_poly(m), 1e-13)
}

/// Minimum-cost pairing of two complex multisets. Pairs whose distance
/// exceeds `tol` are broken back into the unmatched lists, as are leftovers
/// when the cardinalities differ.
pub fn match_multisets(a: &[Complex64], b: &[Complex64], tol: f64) -> MultisetMatch {
    let (small, large, swapped) = if a.len() <= b.len() {
        (a, b, false)
    } else {
        (b, a, true)
    };
    // Exhaustive assignment of the smaller side into the larger; benchmark
    // multisets have at most ~6 elements.
    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut used = vec![false; large.len()];
    let mut current = Vec::with_capacity(small.len());
    fn recurse(
        small: &[Complex64],
        large: &[Complex64],
        used: &mut [bool],
        current: &mut Vec<usize>,
        cost: f64,
        best: &mut Option<(f64, Vec<usize>)>,
    ) {
        if let Some((bc, _)) = best {
            if cost >= *bc {
                return;
            }
        }
        let i = current.len();
        if i == small.len() {
            *best = Some((cost, current.clone()));
            return;
        }
        for j in 0..large.len() {
            if !used[j] {
                used[j] = true;
                current.push(j);
                recurse(small, large, used, current, cost + (small[i] - large[j]).norm(), best);
                current.pop();
                used[j] = false;
            }
        }
    }
    recurse(small, large, &mut used, &mut current, 0.0, &mut best);

    let mut pairs = Vec::new();
    let mut left_over: Vec<Complex64> = Vec::new();
    let mut right_over: Vec<Complex64> = Vec::new();
    let mut taken = vec![false; large.len()];
    if let Some((_, assign)) = best {
        for (i, &j) in assign.iter().enumerate() {
            let d = (small[i] - large[j]).norm();
            if d <= tol {
                taken[j] = true;
                if swapped {
                    pairs.push((large[j], small[i], d));
                } else {
                    pairs.push((small[i], large[j], d));
                }
            } else if swapped {
                right_over.push(small[i]);
            } else {
                left_over.push(small[i]);
            }
        }
    }
    for (j, &t) in taken.iter().enumerate() {
        if !t {
            if swapped {
                left_over.push(large[j]);
            } else {
                right_over.push(large[j]);
            }
        }
    }
    let max_distance = pairs.iter().map(|p| p.2).fold(0.0, f64::max);
    let sort_key = |v: &Complex64| (v.re, v.im);
    pairs.sort_by(|x, y| {
        sort_key(&x.0)
            .0
            .total_cmp(&sort_key(&y.0).0)
            .then(x.0.im.total_cmp(&y.0.im))
    });
    left_over.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    right_over.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    MultisetMatch {
        pairs,
        max_distance,
        unmatched: (left_over, right_over),
    }
}
