//! Exact lattice geometry of Delzant moment polytopes in facet presentation.
//!
//! A polytope is `{ phi in R^n : <nu(F), phi> + alpha(F) >= 0 }` with
//! primitive integer normals and exact rational offsets. Offsets are stored
//! in moment-map units; the weight exponent of a facet's superpotential term
//! is `2*pi*alpha(F)`.

use crate::error::{Error, Result};
use crate::laurent::{rat_int, rat_to_f64, Rat};
use crate::ratlin;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::f64::consts::TAU;

/// One facet inequality `<normal, phi> + offset >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<i32>,
    pub offset: Rat,
}

/// Facet-form rational polytope, validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    dim: usize,
    facets: Vec<Facet>,
    name: Option<String>,
}

/// A vertex with all facets it saturates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub coords: Vec<Rat>,
    pub incident_facets: Vec<usize>,
}

/// Outcome of the Delzant smoothness check.
#[derive(Clone, Debug)]
pub struct DelzantCheck {
    pub is_delzant: bool,
    pub diagnostic: Option<String>,
}

#[derive(Deserialize)]
struct PolytopeFile {
    dim: usize,
    facets: Vec<FacetFile>,
    #[serde(default)]
    name: Option<String>,
}

#[derive(Deserialize)]
struct FacetFile {
    normal: Vec<i64>,
    two_pi_alpha: serde_json::Value,
}

fn parse_rat(v: &serde_json::Value) -> Result<Rat> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(rat_int(i))
            } else {
                Err(Error::Parse(format!("offset must be an integer or \"p/q\" string, got {n}")))
            }
        }
        serde_json::Value::String(s) => {
            let s = s.trim();
            let (num, den) = match s.split_once('/') {
                Some((a, b)) => (a.trim(), b.trim()),
                None => (s, "1"),
            };
            let n: i64 = num
                .parse()
                .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
            let d: i64 = den
                .parse()
                .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
            if d == 0 {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(n.into(), d.into()))
        }
        _ => Err(Error::Parse("offset must be an integer or \"p/q\" string".into())),
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl LatticePolytope {
    /// Validate and build a polytope from facet data.
    ///
    /// Normals are reduced to primitive vectors (scaling offsets to match);
    /// unbounded, lower-dimensional, and redundant presentations are rejected.
    pub fn new(dim: usize, facets: Vec<(Vec<i64>, Rat)>, name: Option<String>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidPolytope("dimension must be positive".into()));
        }
        let mut clean = Vec::with_capacity(facets.len());
        for (i, (normal, offset)) in facets.into_iter().enumerate() {
            if normal.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: normal.len(),
                });
            }
            let g = normal.iter().fold(0i64, |acc, &x| gcd(acc, x));
            if g == 0 {
                return Err(Error::InvalidPolytope(format!("facet {i} has zero normal")));
            }
            let prim: Vec<i32> = normal
                .iter()
                .map(|&x| {
                    i32::try_from(x / g)
                        .map_err(|_| Error::InvalidPolytope(format!("facet {i} normal too large")))
                })
                .collect::<Result<_>>()?;
            clean.push(Facet {
                normal: prim,
                offset: offset / rat_int(g),
            });
        }
        let p = LatticePolytope {
            dim,
            facets: clean,
            name,
        };
        p.check_bounded()?;
        let verts = p.vertices();
        if verts.is_empty() {
            return Err(Error::InvalidPolytope("no vertices (empty polytope)".into()));
        }
        if p.affine_rank(&verts) != dim {
            return Err(Error::InvalidPolytope("polytope is not full-dimensional".into()));
        }
        p.check_irredundant(&verts)?;
        Ok(p)
    }

    /// Parse the polytope JSON format:
    /// `{"dim": n, "facets": [{"normal": [..], "two_pi_alpha": "p/q"}], "name": ..}`.
    pub fn parse(text: &str) -> Result<Self> {
        let file: PolytopeFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let facets = file
            .facets
            .iter()
            .map(|f| Ok((f.normal.clone(), parse_rat(&f.two_pi_alpha)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(file.dim, facets, file.name)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    fn normal_rows(&self) -> Vec<Vec<Rat>> {
        self.facets
            .iter()
            .map(|f| f.normal.iter().map(|&x| rat_int(x as i64)).collect())
            .collect()
    }

    /// Bounded iff the recession cone `{d : <nu,d> >= 0 for all F}` is `{0}`.
    ///
    /// The cone is nontrivial iff the normals fail to span, or some extreme
    /// ray (on `n-1` independent active constraints) satisfies every
    /// inequality; both are checked exactly.
    fn check_bounded(&self) -> Result<()> {
        let rows = self.normal_rows();
        if ratlin::rank(&rows) != self.dim {
            return Err(Error::Unbounded);
        }
        if self.dim == 1 {
            for dir in [1i64, -1] {
                if self.facets.iter().all(|f| f.normal[0] as i64 * dir >= 0) {
                    return Err(Error::Unbounded);
                }
            }
            return Ok(());
        }
        let m = self.facets.len();
        let k = self.dim - 1;
        for subset in subsets(m, k) {
            let sub: Vec<Vec<Rat>> = subset.iter().map(|&i| rows[i].clone()).collect();
            if ratlin::rank(&sub) != k {
                continue;
            }
            for d in ratlin::nullspace(&sub) {
                for dir in [d.clone(), d.iter().map(|x| -x.clone()).collect::<Vec<_>>()] {
                    let ok = self.facets.iter().all(|f| {
                        let s: Rat = f
                            .normal
                            .iter()
                            .zip(&dir)
                            .map(|(&n, x)| rat_int(n as i64) * x)
                            .sum();
                        !s.is_negative()
                    });
                    if ok && dir.iter().any(|x| !x.is_zero()) {
                        return Err(Error::Unbounded);
                    }
                }
            }
        }
        Ok(())
    }

    fn affine_rank(&self, verts: &[Vertex]) -> usize {
        if verts.len() < 2 {
            return 0;
        }
        let base = &verts[0].coords;
        let rows: Vec<Vec<Rat>> = verts[1..]
            .iter()
            .map(|v| {
                v.coords
                    .iter()
                    .zip(base)
                    .map(|(a, b)| a.clone() - b.clone())
                    .collect()
            })
            .collect();
        ratlin::rank(&rows)
    }

    fn check_irredundant(&self, verts: &[Vertex]) -> Result<()> {
        let key = |vs: &[Vertex]| -> Vec<Vec<Rat>> {
            let mut coords: Vec<Vec<Rat>> = vs.iter().map(|v| v.coords.clone()).collect();
            coords.sort();
            coords
        };
        let full = key(verts);
        for i in 0..self.facets.len() {
            let mut reduced = self.clone();
            reduced.facets.remove(i);
            if reduced.facets.len() < self.dim {
                continue;
            }
            if key(&reduced.vertices()) == full {
                return Err(Error::RedundantFacet(i));
            }
        }
        Ok(())
    }

    fn satisfies_all(&self, point: &[Rat]) -> bool {
        self.facets.iter().all(|f| {
            let s: Rat = f
                .normal
                .iter()
                .zip(point)
                .map(|(&n, x)| rat_int(n as i64) * x)
                .sum::<Rat>()
                + f.offset.clone();
            !s.is_negative()
        })
    }

    /// Enumerate all vertices by brute force over n-subsets of facets.
    pub fn vertices(&self) -> Vec<Vertex> {
        let rows = self.normal_rows();
        let mut seen: BTreeMap<Vec<Rat>, ()> = BTreeMap::new();
        for subset in subsets(self.facets.len(), self.dim) {
            let a: Vec<Vec<Rat>> = subset.iter().map(|&i| rows[i].clone()).collect();
            let b: Vec<Rat> = subset.iter().map(|&i| -self.facets[i].offset.clone()).collect();
            let Some(x) = ratlin::solve_square(&a, &b) else {
                continue;
            };
            if self.satisfies_all(&x) {
                seen.entry(x).or_insert(());
            }
        }
        seen.into_keys()
            .map(|coords| {
                let incident = self
                    .facets
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| {
                        let s: Rat = f
                            .normal
                            .iter()
                            .zip(&coords)
                            .map(|(&n, x)| rat_int(n as i64) * x)
                            .sum::<Rat>()
                            + f.offset.clone();
                        s.is_zero()
                    })
                    .map(|(i, _)| i)
                    .collect();
                Vertex {
                    coords,
                    incident_facets: incident,
                }
            })
            .collect()
    }

    /// Delzant iff at every vertex exactly `n` facets meet and their normals
    /// have determinant `+-1`.
    pub fn is_delzant(&self) -> DelzantCheck {
        for v in self.vertices() {
            if v.incident_facets.len() != self.dim {
                return DelzantCheck {
                    is_delzant: false,
                    diagnostic: Some(format!(
                        "vertex {} has {} incident facets (expected {})",
                        fmt_point(&v.coords),
                        v.incident_facets.len(),
                        self.dim
                    )),
                };
            }
            let rows: Vec<Vec<Rat>> = v
                .incident_facets
                .iter()
                .map(|&i| {
                    self.facets[i]
                        .normal
                        .iter()
                        .map(|&x| rat_int(x as i64))
                        .collect()
                })
                .collect();
            let d = ratlin::det(&rows);
            if !d.abs().is_one() {
                return DelzantCheck {
                    is_delzant: false,
                    diagnostic: Some(format!(
                        "vertex {} has normal determinant {}",
                        fmt_point(&v.coords),
                        d
                    )),
                };
            }
        }
        DelzantCheck {
            is_delzant: true,
            diagnostic: None,
        }
    }

    /// True iff some interior point is at equal facet distance from all
    /// facets (the symplectic form is proportional to the anticanonical one).
    pub fn is_monotone(&self) -> bool {
        // Unknowns (p_1..p_n, t): <nu_F, p> + alpha_F - t = 0 for all F, t > 0.
        let a: Vec<Vec<Rat>> = self
            .facets
            .iter()
            .map(|f| {
                let mut row: Vec<Rat> = f.normal.iter().map(|&x| rat_int(x as i64)).collect();
                row.push(rat_int(-1));
                row
            })
            .collect();
        let b: Vec<Rat> = self.facets.iter().map(|f| -f.offset.clone()).collect();
        match ratlin::solve_affine(&a, &b) {
            None => false,
            Some((particular, basis)) => {
                let t = &particular[self.dim];
                t.is_positive() || basis.iter().any(|v| !v[self.dim].is_zero())
            }
        }
    }

    /// Enlarge by `t` in all directions (offsets `alpha -> alpha + t`); the
    /// renormalization amount is `k = 2*pi*t` in area units.
    pub fn inflate(&self, t: &Rat) -> LatticePolytope {
        let facets = self
            .facets
            .iter()
            .map(|f| Facet {
                normal: f.normal.clone(),
                offset: f.offset.clone() + t,
            })
            .collect();
        LatticePolytope {
            dim: self.dim,
            facets,
            name: self.name.clone(),
        }
    }

    /// The Log map `z -> (-(1/2pi) log|z_i|)_i` into moment coordinates.
    pub fn log_map(z: &[Complex64]) -> Result<Vec<f64>> {
        if z.iter().any(|zi| zi.norm() == 0.0) {
            return Err(Error::ZeroCoordinate);
        }
        Ok(z.iter().map(|zi| -zi.norm().ln() / TAU).collect())
    }

    /// Membership of `Log(z)` in the (interior of the) polytope.
    pub fn contains_log(&self, z: &[Complex64], strict: bool, tol: f64) -> Result<bool> {
        if z.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: z.len(),
            });
        }
        let phi = Self::log_map(z)?;
        Ok(self.facets.iter().all(|f| {
            let s: f64 = f
                .normal
                .iter()
                .zip(&phi)
                .map(|(&n, x)| n as f64 * x)
                .sum::<f64>()
                + rat_to_f64(&f.offset);
            if strict {
                s > tol
            } else {
                s >= -tol
            }
        }))
    }

    /// Apply a unimodular transformation to the normal fan: each normal
    /// `nu` becomes `sigma * nu` (offsets unchanged). Vertices transform by
    /// `sigma^-T`, so lattice properties are preserved.
    pub fn apply_unimodular(&self, sigma: &[Vec<i32>]) -> Result<LatticePolytope> {
        if ratlin::int_inverse(sigma).is_none() {
            return Err(Error::NotUnimodular);
        }
        let facets = self
            .facets
            .iter()
            .map(|f| {
                let normal = sigma
                    .iter()
                    .map(|row| row.iter().zip(&f.normal).map(|(&a, &b)| a * b).sum())
                    .collect();
                Facet {
                    normal,
                    offset: f.offset.clone(),
                }
            })
            .collect();
        Ok(LatticePolytope {
            dim: self.dim,
            facets,
            name: self.name.clone(),
        })
    }
}

fn fmt_point(coords: &[Rat]) -> String {
    let body: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
    format!("({})", body.join(", "))
}

/// All k-subsets of {0..m-1} in lexicographic order.
fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(start: usize, m: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..m {
            current.push(i);
            rec(i + 1, m, k, current, out);
            current.pop();
        }
    }
    rec(0, m, k, &mut current, &mut out);
    out
}

/// The standard simplex polytope of CP^n with offset `a` on the far facet
/// (moment units, so the line area is `2*pi*a`).
pub fn cpn_simplex(n: usize, a: Rat) -> Result<LatticePolytope> {
    let mut facets = Vec::new();
    for i in 0..n {
        let mut nu = vec![0i64; n];
        nu[i] = 1;
        facets.push((nu, Rat::zero()));
    }
    facets.push((vec![-1i64; n], a));
    LatticePolytope::new(n, facets, Some(format!("cp{n}")))
}

/// Product of projective lines with per-factor offsets.
pub fn p1p1_rectangle(a1: Rat, a2: Rat) -> Result<LatticePolytope> {
    LatticePolytope::new(
        2,
        vec![
            (vec![1, 0], Rat::zero()),
            (vec![0, 1], Rat::zero()),
            (vec![-1, 0], a1),
            (vec![0, -1], a2),
        ],
        Some("p1p1".into()),
    )
}

/// Hirzebruch surface F_m trapezoid: normals (1,0),(0,1),(0,-1),(-1,-m).
pub fn hirzebruch_polytope(m: u32, a: Rat, b: Rat) -> Result<LatticePolytope> {
    LatticePolytope::new(
        2,
        vec![
            (vec![1, 0], Rat::zero()),
            (vec![0, 1], Rat::zero()),
            (vec![0, -1], b),
            (vec![-(1i64), -(m as i64)], a),
        ],
        Some(format!("f{m}")),
    )
}
