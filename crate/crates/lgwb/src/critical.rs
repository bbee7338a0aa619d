//! Critical points of numeric superpotentials on the algebraic torus.
//!
//! Multistart Newton runs in logarithmic coordinates `x = log z` so the
//! iteration respects the multiplicative geometry and cannot be attracted to
//! the coordinate hyperplanes. A Durand-Kerner engine handles univariate
//! eliminations.

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::polytope::LatticePolytope;
use crate::superpotential::SuperpotentialSpec;
use num_complex::Complex64;
use std::f64::consts::TAU;

/// A located critical point with its diagnostics.
#[derive(Clone, Debug)]
pub struct CriticalPoint {
    pub z: Vec<Complex64>,
    pub value: Complex64,
    /// max_i |z_i dW/dz_i| at the point.
    pub residual: f64,
    pub in_domain: Option<bool>,
    /// Number of converged seeds merged into this point.
    pub basin_count: usize,
    /// Singular Hessian of the log-gradient system at the point.
    pub degenerate: bool,
}

/// Multistart Newton configuration.
#[derive(Clone, Debug)]
pub struct SolverConfig {
    /// Radius grid per variable; `None` derives one from the domain polytope
    /// or the coefficient scale.
    pub grid_radii: Option<Vec<Vec<f64>>>,
    /// Angles per variable.
    pub grid_angles: usize,
    pub newton_tol: f64,
    pub max_iter: usize,
    pub dedup_tol: f64,
    /// Seed for the deterministic jitter only.
    pub rng_seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            grid_radii: None,
            grid_angles: 8,
            newton_tol: 1e-10,
            max_iter: 100,
            dedup_tol: 1e-6,
            rng_seed: 0,
        }
    }
}

/// The log-gradient system `[z_1 dW/dz_1, ..., z_n dW/dz_n]`.
pub fn gradient_system(spec: &SuperpotentialSpec) -> Vec<LaurentPoly> {
    (0..spec.nvars())
        .map(|i| spec.poly.log_derivative(i))
        .collect()
}

/// Flat numeric view of a Laurent polynomial for fast repeated evaluation.
struct NumPoly {
    terms: Vec<(Vec<i32>, Complex64)>,
}

impl NumPoly {
    fn compile(p: &LaurentPoly, param_values: &[Complex64]) -> NumPoly {
        let terms = p
            .terms()
            .map(|(e, c)| (e.clone(), c.eval(param_values)))
            .collect();
        NumPoly { terms }
    }

    /// Evaluate at `z = exp(x)` given the coordinate exponentials.
    fn eval_at(&self, z: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = *c;
            for (zi, &k) in z.iter().zip(e) {
                t *= zi.powi(k);
            }
            acc += t;
        }
        acc
    }

    /// Sum of term magnitudes at `z`: the natural scale against which a
    /// small value indicates genuine cancellation.
    fn scale_at(&self, z: &[Complex64]) -> f64 {
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut t = c.norm();
            for (zi, &k) in z.iter().zip(e) {
                t *= zi.norm().powi(k);
            }
            acc += t;
        }
        acc
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn unit_jitter(state: &mut u64) -> f64 {
    // Uniform in [-1, 1).
    (splitmix64(state) >> 11) as f64 / (1u64 << 52) as f64 * 2.0 - 1.0
}

/// Gaussian elimination with partial pivoting for small complex systems.
fn solve_complex(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = a.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].norm().total_cmp(&a[j][c].norm()))?;
        if a[p][c].norm() == 0.0 {
            return None;
        }
        a.swap(c, p);
        b.swap(c, p);
        for i in c + 1..n {
            let f = a[i][c] / a[c][c];
            for j in c..n {
                let s = a[c][j] * f;
                a[i][j] -= s;
            }
            let s = b[c] * f;
            b[i] -= s;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let mut s = b[i];
        for j in i + 1..n {
            s -= a[i][j] * x[j];
        }
        x[i] = s / a[i][i];
    }
    Some(x)
}

fn det_complex(mut a: Vec<Vec<Complex64>>) -> Complex64 {
    let n = a.len();
    let mut d = Complex64::new(1.0, 0.0);
    for c in 0..n {
        let p = match (c..n).max_by(|&i, &j| a[i][c].norm().total_cmp(&a[j][c].norm())) {
            Some(p) => p,
            None => return Complex64::new(0.0, 0.0),
        };
        if a[p][c].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if p != c {
            a.swap(c, p);
            d = -d;
        }
        d *= a[c][c];
        for i in c + 1..n {
            let f = a[i][c] / a[c][c];
            for j in c..n {
                let s = a[c][j] * f;
                a[i][j] -= s;
            }
        }
    }
    d
}

/// One Newton run in log coordinates; returns the converged log-point.
#[allow(clippy::too_many_arguments)]
fn newton_from(
    seed: &[Complex64],
    grad_num: &[NumPoly],
    hess_num: &[Vec<NumPoly>],
    w_num: &NumPoly,
    newton_tol: f64,
    max_iter: usize,
    last_diag: &mut String,
) -> Option<Vec<Complex64>> {
    let mut x = seed.to_vec();
    for _ in 0..max_iter {
        let z: Vec<Complex64> = x.iter().map(|xi| xi.exp()).collect();
        if z.iter().any(|zi| !zi.norm().is_finite() || zi.norm() == 0.0) {
            return None;
        }
        let f: Vec<Complex64> = grad_num.iter().map(|g| g.eval_at(&z)).collect();
        // Each component must be small relative to its own term-magnitude
        // scale (and to 1 + |W|): with tiny coefficients the naive
        // |f| <= tol*(1+|W|) test is satisfied on open regions far from any
        // critical point.
        let wmag = w_num.eval_at(&z).norm();
        let converged = f.iter().zip(grad_num).all(|(fi, g)| {
            fi.norm() <= newton_tol * g.scale_at(&z).min(1.0 + wmag)
        });
        if converged {
            return Some(x);
        }
        let jac: Vec<Vec<Complex64>> = hess_num
            .iter()
            .map(|row| row.iter().map(|h| h.eval_at(&z)).collect())
            .collect();
        let Some(dx) = solve_complex(jac, f) else {
            *last_diag = "singular Jacobian during iteration".into();
            return None;
        };
        let step: f64 = dx.iter().map(|d| d.norm()).fold(0.0, f64::max);
        if !step.is_finite() || step > 50.0 {
            return None;
        }
        for (xi, di) in x.iter_mut().zip(&dx) {
            *xi -= di;
        }
    }
    None
}

fn wrap_angle(t: f64) -> f64 {
    t - TAU * (t / TAU).round()
}

/// Radius grid from the domain polytope: the vertex barycenter and the
/// vertex-to-barycenter midpoints, pushed through `|z_i| = e^{-2 pi phi_i}`.
fn domain_radii(p: &LatticePolytope) -> Vec<Vec<f64>> {
    let verts = p.vertices();
    let n = p.dim();
    let coords: Vec<Vec<f64>> = verts
        .iter()
        .map(|v| v.coords.iter().map(crate::laurent::rat_to_f64).collect())
        .collect();
    let mut bary = vec![0.0; n];
    for c in &coords {
        for (b, x) in bary.iter_mut().zip(c) {
            *b += x / coords.len() as f64;
        }
    }
    let mut points = vec![bary.clone()];
    for c in &coords {
        points.push(
            c.iter()
                .zip(&bary)
                .map(|(x, b)| 0.5 * (x + b))
                .collect::<Vec<f64>>(),
        );
    }
    (0..n)
        .map(|i| {
            let mut radii: Vec<f64> = points.iter().map(|p| (-TAU * p[i]).exp()).collect();
            radii.sort_by(f64::total_cmp);
            radii.dedup_by(|a, b| (*a - *b).abs() < 1e-12 * b.abs());
            radii
        })
        .collect()
}

/// Fallback radius grid for chartless potentials, scaled by the smallest
/// coefficient magnitude.
fn coefficient_radii(spec: &SuperpotentialSpec, params: &[Complex64]) -> Vec<Vec<f64>> {
    let n = spec.nvars();
    let min_coeff = spec
        .poly
        .terms()
        .map(|(_, c)| c.eval(params).norm())
        .fold(f64::INFINITY, f64::min)
        .max(1e-300);
    let s = min_coeff.powf(1.0 / (n as f64 + 1.0));
    (0..n).map(|_| vec![s, 0.3, 1.0]).collect()
}

/// All critical points of a numeric superpotential found by multistart
/// Newton, deduplicated modulo `2 pi i` and deterministically ordered.
pub fn solve_critical(spec: &SuperpotentialSpec, cfg: &SolverConfig) -> Result<Vec<CriticalPoint>> {
    if !spec.is_numeric() {
        return Err(Error::InvalidParameter(
            "solve_critical requires a numeric-mode superpotential".into(),
        ));
    }
    let n = spec.nvars();
    let params = spec.param_values()?;
    let grads = gradient_system(spec);
    let grad_num: Vec<NumPoly> = grads.iter().map(|g| NumPoly::compile(g, &params)).collect();
    let hess_num: Vec<Vec<NumPoly>> = grads
        .iter()
        .map(|g| {
            (0..n)
                .map(|j| NumPoly::compile(&g.log_derivative(j), &params))
                .collect()
        })
        .collect();
    let w_num = NumPoly::compile(&spec.poly, &params);
    if grads.iter().all(|g| g.is_zero()) {
        return Err(Error::NoSeedConverged(
            "gradient system is identically zero (degenerate potential)".into(),
        ));
    }

    let radii: Vec<Vec<f64>> = match &cfg.grid_radii {
        Some(r) => {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: r.len(),
                });
            }
            r.clone()
        }
        None => match &spec.domain {
            Some(p) => domain_radii(p),
            None => coefficient_radii(spec, &params),
        },
    };

    // Deterministic seed enumeration: cartesian product of (radius, angle)
    // choices per variable, with small jitter on the log coordinates.
    let mut choices: Vec<Vec<Complex64>> = Vec::new();
    for i in 0..n {
        let mut c = Vec::new();
        for &r in &radii[i] {
            for a in 0..cfg.grid_angles {
                let theta = TAU * (a as f64 + 0.5) / cfg.grid_angles as f64;
                c.push(Complex64::new(r.ln(), theta));
            }
        }
        choices.push(c);
    }
    let mut seeds: Vec<Vec<Complex64>> = vec![vec![]];
    for c in &choices {
        let mut next = Vec::with_capacity(seeds.len() * c.len());
        for s in &seeds {
            for &x in c {
                let mut s2 = s.clone();
                s2.push(x);
                next.push(s2);
            }
        }
        seeds = next;
    }
    let mut rng = cfg.rng_seed.wrapping_add(0x5851f42d4c957f2d);
    for s in seeds.iter_mut() {
        for x in s.iter_mut() {
            *x += Complex64::new(1e-3 * unit_jitter(&mut rng), 1e-3 * unit_jitter(&mut rng));
        }
    }
    // Scatter extra deterministic random seeds across the log-radius range;
    // the structured grid alone can miss basins hugging the domain boundary.
    let ranges: Vec<(f64, f64)> = radii
        .iter()
        .map(|r| {
            let lo = r.iter().copied().fold(f64::INFINITY, f64::min).ln() - 1.0;
            let hi = r.iter().copied().fold(f64::NEG_INFINITY, f64::max).ln() + 1.0;
            (lo, hi)
        })
        .collect();
    for _ in 0..800 * n {
        let s: Vec<Complex64> = ranges
            .iter()
            .map(|&(lo, hi)| {
                let re = lo + 0.5 * (unit_jitter(&mut rng) + 1.0) * (hi - lo);
                let im = std::f64::consts::PI * unit_jitter(&mut rng);
                Complex64::new(re, im)
            })
            .collect();
        seeds.push(s);
    }

    struct Found {
        x: Vec<Complex64>,
        count: usize,
    }
    let mut found: Vec<Found> = Vec::new();
    let mut last_diag = String::from("no seeds");
    let absorb = |seed: &[Complex64], found: &mut Vec<Found>, last_diag: &mut String| -> bool {
        let Some(x) = newton_from(
            seed,
            &grad_num,
            &hess_num,
            &w_num,
            cfg.newton_tol,
            cfg.max_iter,
            last_diag,
        ) else {
            return false;
        };
        // Dedup in log coordinates modulo the 2 pi i lattice.
        for f in found.iter_mut() {
            let close = f.x.iter().zip(&x).all(|(a, b)| {
                (a.re - b.re).abs() < cfg.dedup_tol && wrap_angle(a.im - b.im).abs() < cfg.dedup_tol
            });
            if close {
                f.count += 1;
                return false;
            }
        }
        found.push(Found { x, count: 1 });
        true
    };
    for seed in &seeds {
        absorb(seed, &mut found, &mut last_diag);
    }
    if found.len() > 512 {
        return Err(Error::NoSeedConverged(format!(
            "{} distinct converged points; the system is degenerate at this tolerance",
            found.len()
        )));
    }

    // Refinement passes: the structured grid plus scatter can still miss a
    // root whose basin is tiny, but every observed miss shares its torus
    // (the log-moduli) with a found root, e.g. under a sign symmetry of the
    // potential. Re-seed dense angle grids on the tori of found roots until
    // nothing new turns up.
    let torus_angles: usize = if n <= 2 { 24 } else { 8 };
    for _ in 0..3 {
        let tori: Vec<Vec<f64>> = found
            .iter()
            .map(|f| f.x.iter().map(|xi| xi.re).collect())
            .collect();
        let mut new_found = 0;
        for torus in &tori {
            let mut angle_seeds: Vec<Vec<Complex64>> = vec![vec![]];
            for &logr in torus {
                let mut next = Vec::with_capacity(angle_seeds.len() * torus_angles);
                for s in &angle_seeds {
                    for a in 0..torus_angles {
                        let theta = TAU * (a as f64 + 0.25) / torus_angles as f64;
                        let mut s2 = s.clone();
                        s2.push(Complex64::new(logr, theta));
                        next.push(s2);
                    }
                }
                angle_seeds = next;
            }
            for seed in &angle_seeds {
                if absorb(seed, &mut found, &mut last_diag) {
                    new_found += 1;
                }
            }
        }
        if new_found == 0 {
            break;
        }
    }

    if found.is_empty() {
        return Err(Error::NoSeedConverged(last_diag));
    }

    let mut points: Vec<CriticalPoint> = found
        .into_iter()
        .map(|f| {
            let z: Vec<Complex64> = f
                .x
                .iter()
                .map(|xi| Complex64::new(xi.re, wrap_angle(xi.im)).exp())
                .collect();
            let residual = grad_num
                .iter()
                .map(|g| g.eval_at(&z).norm())
                .fold(0.0, f64::max);
            let jac: Vec<Vec<Complex64>> = hess_num
                .iter()
                .map(|row| row.iter().map(|h| h.eval_at(&z)).collect())
                .collect();
            let scale: f64 = jac
                .iter()
                .map(|row| row.iter().map(|v| v.norm()).sum::<f64>().max(1e-300))
                .product();
            let degenerate = det_complex(jac).norm() <= 1e-8 * scale;
            CriticalPoint {
                value: w_num.eval_at(&z),
                z,
                residual,
                in_domain: None,
                basin_count: f.count,
                degenerate,
            }
        })
        .collect();
    sort_points(&mut points);
    Ok(points)
}

/// Deterministic ordering: by value (re, im), then by coordinates.
pub fn sort_points(points: &mut [CriticalPoint]) {
    points.sort_by(|a, b| {
        a.value
            .re
            .total_cmp(&b.value.re)
            .then(a.value.im.total_cmp(&b.value.im))
            .then_with(|| {
                for (x, y) in a.z.iter().zip(&b.z) {
                    let c = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
                    if c != std::cmp::Ordering::Equal {
                        return c;
                    }
                }
                std::cmp::Ordering::Equal
            })
    });
}

/// All complex roots (with multiplicity) of `c[0] + c[1] x + ... + c[d] x^d`
/// by Durand-Kerner iteration from a staggered circle.
pub fn poly_roots(coeffs: &[Complex64], tol: f64) -> Result<Vec<Complex64>> {
    let d = coeffs.len().saturating_sub(1);
    if d == 0 || coeffs[d].norm() == 0.0 {
        return Err(Error::InvalidParameter(
            "polynomial must have degree >= 1 with nonzero leading coefficient".into(),
        ));
    }
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / coeffs[d]).collect();
    let eval = |x: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in monic.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };
    // Cauchy-style radius bound, staggered initial angles.
    let radius = 1.0 + monic[..d].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut roots: Vec<Complex64> = (0..d)
        .map(|k| {
            let theta = TAU * k as f64 / d as f64 + 0.4;
            Complex64::from_polar(radius.min(2.0), theta)
        })
        .collect();
    let max_iter = 1000;
    let mut converged = false;
    for _ in 0..max_iter {
        let mut max_update = 0.0f64;
        for i in 0..d {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if j != i {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() == 0.0 {
                // Collided guesses; nudge deterministically.
                roots[i] += Complex64::new(1e-6, 1e-6);
                continue;
            }
            let delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            max_update = max_update.max(delta.norm());
        }
        if max_update < tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence(max_iter));
    }
    let scale = 1.0 + radius.powi(d as i32);
    for r in &roots {
        if eval(*r).norm() > tol.max(1e-12) * scale * 1e3 {
            return Err(Error::NoConvergence(max_iter));
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(roots)
}

/// Critical points of the Hirzebruch surface potential via the univariate
/// elimination `z2^{m-2} (z2^2 - e^{-B})^2 - m^2 e^{-A} = 0` and the back
/// substitution `z1 = m e^{-A} z2^{1-m} / (z2^2 - e^{-B})`.
pub fn hirzebruch_critical(m: u32, a: f64, b: f64) -> Result<Vec<CriticalPoint>> {
    let spec = crate::superpotential::hirzebruch(m, a, b)?;
    let eb = (-b).exp();
    let ea = (-a).exp();
    // Laurent exponents m+2, m, m-2 and 0; shift by max(0, 2-m) to make an
    // ordinary polynomial (for m = 1 the elimination is genuinely Laurent
    // and clears to degree 4).
    let shift = 2i64.saturating_sub(m as i64).max(0) as usize;
    let degree = m as usize + 2 + shift;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); degree + 1];
    let m_i = m as i64;
    coeffs[(m_i + 2 + shift as i64) as usize] += Complex64::new(1.0, 0.0);
    coeffs[(m_i + shift as i64) as usize] += Complex64::new(-2.0 * eb, 0.0);
    coeffs[(m_i - 2 + shift as i64) as usize] += Complex64::new(eb * eb, 0.0);
    coeffs[shift] += Complex64::new(-((m * m) as f64) * ea, 0.0);
    let roots = poly_roots(&coeffs, 1e-13)?;

    let grads = gradient_system(&spec);
    let grad_num: Vec<NumPoly> = grads.iter().map(|g| NumPoly::compile(g, &[])).collect();
    let w_num = NumPoly::compile(&spec.poly, &[]);
    let mut points = Vec::with_capacity(roots.len());
    for z2 in roots {
        let denom = z2 * z2 - eb;
        if denom.norm() < 1e-9 * eb {
            return Err(Error::DegenerateRecovery(format!(
                "root z2 = {z2} has z2^2 = e^-B within tolerance"
            )));
        }
        let z1 = m as f64 * ea * z2.powi(1 - m as i32) / denom;
        let z = vec![z1, z2];
        let residual = grad_num
            .iter()
            .map(|g| g.eval_at(&z).norm())
            .fold(0.0, f64::max);
        let wmag = w_num.eval_at(&z).norm();
        if residual > 1e-8 * (1.0 + wmag) {
            return Err(Error::DegenerateRecovery(format!(
                "recovered point has gradient residual {residual}"
            )));
        }
        points.push(CriticalPoint {
            value: w_num.eval_at(&z),
            z,
            residual,
            in_domain: None,
            basin_count: 1,
            degenerate: false,
        });
    }
    sort_points(&mut points);
    Ok(points)
}

/// Set the `in_domain` flag from strict Log-membership.
pub fn filter_in_domain(
    points: &mut [CriticalPoint],
    p: &LatticePolytope,
    tol: f64,
) -> Result<()> {
    for pt in points.iter_mut() {
        pt.in_domain = Some(p.contains_log(&pt.z, true, tol)?);
    }
    Ok(())
}
