//! Chart gluings across walls: corrected monomial changes of variables,
//! exact chart-identity verification, exponent-lattice monodromy, and
//! lost-critical-value accounting.

use crate::critical::{solve_critical, SolverConfig};
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, LaurentRational, ParamCoeff, SubstitutionMap};
use crate::qcoh::{match_multisets, MultisetMatch};
use crate::ratlin::{int_inverse, int_mul};
use crate::superpotential::SuperpotentialSpec;
use num_complex::Complex64;
use num_traits::One;

/// Outcome of an exact chart-identity check.
#[derive(Clone, Debug)]
pub struct GluingVerdict {
    pub identity_holds: bool,
    /// The source potential pushed through the substitution.
    pub transformed: LaurentRational,
    /// The target potential as a rational function.
    pub expected: LaurentRational,
}

/// The wall-crossing correction `z_i -> z_i * h^{pairing_i}` for a factor
/// `h = 1 + O(z_alpha)` and pairing integers `[del beta_i] . [del alpha]`.
pub fn wall_map(h: &LaurentPoly, pairings: &[i32]) -> Result<SubstitutionMap> {
    let n = h.nvars();
    if pairings.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: pairings.len(),
        });
    }
    let zero_exp = vec![0i32; n];
    let const_ok = h.terms().any(|(e, c)| {
        e == &zero_exp
            && c.single_term()
                .is_some_and(|(pe, r)| pe.iter().all(|&k| k == 0) && r.is_one())
    });
    if !const_ok {
        return Err(Error::BadCorrectionFactor);
    }
    let params: Vec<&str> = h.params().iter().map(String::as_str).collect();
    let assignments = pairings
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let zi = LaurentPoly::var(i, n, &params);
            if p >= 0 {
                LaurentRational::from_poly(zi.mul(&h.pow(p as u32)))
            } else {
                LaurentRational::new(zi, h.pow((-p) as u32))
                    .expect("correction factor is nonzero")
            }
        })
        .collect();
    SubstitutionMap::new(assignments)
}

/// Substitute `m` into the source potential and compare exactly against the
/// target potential.
pub fn verify_chart_identity(
    w_src: &SuperpotentialSpec,
    w_dst: &SuperpotentialSpec,
    m: &SubstitutionMap,
) -> Result<GluingVerdict> {
    let transformed = w_src.poly.substitute(m)?;
    let expected = LaurentRational::from_poly(w_dst.poly.clone());
    Ok(GluingVerdict {
        identity_holds: transformed.rational_eq(&expected),
        transformed,
        expected,
    })
}

/// The exponent-lattice monodromy `map_neg^{-1} . map_pos` of two monomial
/// chart maps into a common target chart.
pub fn monodromy(map_pos: &SubstitutionMap, map_neg: &SubstitutionMap) -> Result<Vec<Vec<i32>>> {
    let pos = map_pos.monomial_part().ok_or(Error::NotMonomial)?;
    let neg = map_neg.monomial_part().ok_or(Error::NotMonomial)?;
    // Row convention (row i = source exponents of target variable i) turns
    // composition into left multiplication, so the loop pos then neg^{-1}
    // is M_neg * M_pos^{-1}.
    let pos_inv = int_inverse(pos).ok_or(Error::NotUnimodular)?;
    let composite = int_mul(neg, &pos_inv);
    if int_inverse(&composite).is_none() {
        return Err(Error::NotUnimodular);
    }
    Ok(composite)
}

/// Solve both charts and match critical-value multisets; values lost by the
/// change of variables surface as unmatched leftovers.
///
/// `m` maps the source chart's variables into the target chart; it is used
/// to cross-check that target critical points reproduce source values where
/// the map is defined.
pub fn lost_values(
    w_src: &SuperpotentialSpec,
    w_dst: &SuperpotentialSpec,
    m: &SubstitutionMap,
    cfg: &SolverConfig,
) -> Result<MultisetMatch> {
    let src_pts = solve_critical(w_src, cfg)?;
    let dst_pts = solve_critical(w_dst, cfg)?;
    let scale = src_pts
        .iter()
        .chain(&dst_pts)
        .map(|p| p.value.norm())
        .fold(1.0, f64::max);
    // The lost value of the documented scenario is exactly 0 analytically.
    let snap = |v: Complex64| if v.norm() < 1e-10 * scale { Complex64::new(0.0, 0.0) } else { v };
    let src_vals: Vec<Complex64> = src_pts.iter().map(|p| snap(p.value)).collect();
    let dst_vals: Vec<Complex64> = dst_pts.iter().map(|p| snap(p.value)).collect();

    // Value transport: a target critical point with well-defined source
    // coordinates must carry the same potential value.
    for pt in &dst_pts {
        let Ok(src_coords) = m.eval(&pt.z, &[]) else {
            continue;
        };
        if src_coords
            .iter()
            .any(|c| !c.norm().is_finite() || c.norm() < 1e-8)
        {
            continue;
        }
        let transported = w_src.eval(&src_coords)?;
        if (transported - pt.value).norm() > 1e-6 * (1.0 + pt.value.norm()) {
            return Err(Error::DegenerateRecovery(format!(
                "chart map does not transport the critical value at {:?}: {} vs {}",
                pt.z, transported, pt.value
            )));
        }
    }

    Ok(match_multisets(&src_vals, &dst_vals, 1e-8))
}

fn var_poly(i: usize, params: &[&str]) -> LaurentPoly {
    LaurentPoly::var(i, 2, params)
}

/// The gluing `u -> z1 + z2, w -> z1/z2` from a Chekanov-type chart with
/// variables `(u, w)` into a Clifford-type chart `(z1, z2)`.
pub fn gluing_uw(params: &[&str]) -> SubstitutionMap {
    let z1 = var_poly(0, params);
    let z2 = var_poly(1, params);
    let u = LaurentRational::from_poly(z1.add(&z2));
    let w = LaurentRational::new(z1, z2).expect("z2 is nonzero");
    SubstitutionMap::new(vec![u, w]).expect("assignments are nonzero")
}

/// The closed-form inverse gluing `z1 -> u w/(1+w), z2 -> u/(1+w)` from a
/// Clifford-type chart `(z1, z2)` into a Chekanov-type chart `(u, w)`.
pub fn gluing_uw_inverse(params: &[&str]) -> SubstitutionMap {
    let u = var_poly(0, params);
    let w = var_poly(1, params);
    let one = LaurentPoly::one(2, params);
    let one_w = one.add(&w);
    let z1 = LaurentRational::new(u.mul(&w), one_w.clone()).expect("1+w is nonzero");
    let z2 = LaurentRational::new(u, one_w).expect("1+w is nonzero");
    SubstitutionMap::new(vec![z1, z2]).expect("assignments are nonzero")
}

/// The uncorrected classical chart map in the paper's table order `(w, u)`:
/// `w -> z1/z2, u -> z2` (the side of the wall where the disc count is
/// unchanged).
pub fn classical_pos() -> SubstitutionMap {
    let z1 = var_poly(0, &[]);
    let z2 = var_poly(1, &[]);
    let w = LaurentRational::new(z1, z2.clone()).expect("z2 is nonzero");
    let u = LaurentRational::from_poly(z2);
    SubstitutionMap::new(vec![w, u]).expect("assignments are nonzero")
}

/// The classical chart map on the other side of the wall, order `(w, u)`:
/// `w -> z1/z2, u -> z1`.
pub fn classical_neg() -> SubstitutionMap {
    let z1 = var_poly(0, &[]);
    let z2 = var_poly(1, &[]);
    let w = LaurentRational::new(z1.clone(), z2).expect("z2 is nonzero");
    let u = LaurentRational::from_poly(z1);
    SubstitutionMap::new(vec![w, u]).expect("assignments are nonzero")
}

/// The quantum-corrected positive chart map, order `(w, u)`:
/// `w -> z1/z2, u -> z1 + z2` (classical map corrected by the factor 1+w).
pub fn quantum_pos() -> SubstitutionMap {
    let z1 = var_poly(0, &[]);
    let z2 = var_poly(1, &[]);
    let w = LaurentRational::new(z1.clone(), z2.clone()).expect("z2 is nonzero");
    let u = LaurentRational::from_poly(z1.add(&z2));
    SubstitutionMap::new(vec![w, u]).expect("assignments are nonzero")
}

/// The correction factor `h = 1 + w` in a chart ring ordered `(w, u)`.
pub fn correction_one_plus_w(params: &[&str]) -> LaurentPoly {
    let nparams = params.len();
    LaurentPoly::one(2, params).add(&LaurentPoly::monomial(
        vec![1, 0],
        ParamCoeff::one(nparams),
        params,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superpotential::{cp2_chekanov, cp2_clifford, p1p1_chekanov, p1p1_clifford};

    #[test]
    fn wall_map_quantum_correction() {
        // (w, u) ring: pairing 0 on w, 1 on u.
        let h = correction_one_plus_w(&[]);
        let m = wall_map(&h, &[0, 1]).unwrap();
        // w -> w unchanged.
        let w = LaurentRational::from_poly(LaurentPoly::var(0, 2, &[]));
        assert!(m.assignments()[0].rational_eq(&w));
        // u -> u (1 + w).
        let u = LaurentPoly::var(1, 2, &[]);
        let expect = LaurentRational::from_poly(u.mul(&h));
        assert!(m.assignments()[1].rational_eq(&expect));
        // Composite with the classical map gives the quantum table.
        let q = m.compose(&classical_pos()).unwrap();
        for (a, b) in q.assignments().iter().zip(quantum_pos().assignments()) {
            assert!(a.rational_eq(b));
        }
    }

    #[test]
    fn wall_map_identity_and_inverse_factor() {
        let one = LaurentPoly::one(2, &[]);
        let m = wall_map(&one, &[3, -2]).unwrap();
        let id = SubstitutionMap::identity(2, &[]);
        for (a, b) in m.assignments().iter().zip(id.assignments()) {
            assert!(a.rational_eq(b));
        }
        let h = correction_one_plus_w(&[]);
        let m = wall_map(&h, &[0, -1]).unwrap();
        let u = LaurentPoly::var(1, 2, &[]);
        let expect = LaurentRational::new(u, h).unwrap();
        assert!(m.assignments()[1].rational_eq(&expect));
    }

    #[test]
    fn wall_map_rejects_bad_constant_term() {
        // h = 2 + w.
        let h = correction_one_plus_w(&[]).add(&LaurentPoly::one(2, &[]));
        assert!(matches!(
            wall_map(&h, &[0, 1]),
            Err(Error::BadCorrectionFactor)
        ));
        // h = w (no constant term).
        let h = LaurentPoly::var(0, 2, &[]);
        assert!(matches!(
            wall_map(&h, &[0, 1]),
            Err(Error::BadCorrectionFactor)
        ));
    }

    #[test]
    fn wall_map_pairings_add_under_composition() {
        let h = correction_one_plus_w(&[]);
        let m1 = wall_map(&h, &[0, 2]).unwrap();
        let m2 = wall_map(&h, &[0, -1]).unwrap();
        let m12 = m1.compose(&m2).unwrap();
        let msum = wall_map(&h, &[0, 1]).unwrap();
        for (a, b) in m12.assignments().iter().zip(msum.assignments()) {
            assert!(a.rational_eq(b));
        }
    }

    #[test]
    fn cp2_chart_identity_holds() {
        let chekanov = cp2_chekanov(None).unwrap();
        let clifford = cp2_clifford(None).unwrap();
        let v = verify_chart_identity(&chekanov, &clifford, &gluing_uw(&["q"])).unwrap();
        assert!(v.identity_holds);
    }

    #[test]
    fn cp2_chart_identity_reverse() {
        let chekanov = cp2_chekanov(None).unwrap();
        let clifford = cp2_clifford(None).unwrap();
        let v = verify_chart_identity(&clifford, &chekanov, &gluing_uw_inverse(&["q"])).unwrap();
        assert!(v.identity_holds);
    }

    #[test]
    fn p1p1_chart_identity_holds() {
        let chekanov = p1p1_chekanov(None).unwrap();
        let clifford = p1p1_clifford(None).unwrap();
        let v = verify_chart_identity(&chekanov, &clifford, &gluing_uw(&["q1", "q2"])).unwrap();
        assert!(v.identity_holds);
    }

    #[test]
    fn uncorrected_classical_map_fails() {
        let chekanov = cp2_chekanov(None).unwrap();
        let clifford = cp2_clifford(None).unwrap();
        // u -> z2, w -> z1/z2 without the 1+w correction.
        let z1 = LaurentPoly::var(0, 2, &["q"]);
        let z2 = LaurentPoly::var(1, 2, &["q"]);
        let m = SubstitutionMap::new(vec![
            LaurentRational::from_poly(z2.clone()),
            LaurentRational::new(z1, z2).unwrap(),
        ])
        .unwrap();
        let v = verify_chart_identity(&chekanov, &clifford, &m).unwrap();
        assert!(!v.identity_holds);
    }

    #[test]
    fn monodromy_matrix() {
        let m = monodromy(&classical_pos(), &classical_neg()).unwrap();
        assert_eq!(m, vec![vec![1, 0], vec![1, 1]]);
        let inv = monodromy(&classical_neg(), &classical_pos()).unwrap();
        assert_eq!(inv, vec![vec![1, 0], vec![-1, 1]]);
        let id = monodromy(&classical_pos(), &classical_pos()).unwrap();
        assert_eq!(id, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn monodromy_rejects_nonmonomial() {
        assert!(matches!(
            monodromy(&quantum_pos(), &classical_neg()),
            Err(Error::NotMonomial)
        ));
    }

    #[test]
    fn monomial_maps_compose_as_matrices() {
        let a = classical_pos();
        let b = classical_neg();
        let ab = a.compose(&b).unwrap();
        let expect = int_mul(
            a.monomial_part().unwrap(),
            b.monomial_part().unwrap(),
        );
        assert_eq!(ab.monomial_part().unwrap(), &expect);
    }

    #[test]
    fn p1p1_lost_values() {
        let l = 2.0 * 10f64.ln();
        let chekanov = p1p1_chekanov(Some((l, l))).unwrap();
        let clifford = p1p1_clifford(Some((l, l))).unwrap();
        let m = lost_values(&chekanov, &clifford, &gluing_uw(&[]), &SolverConfig::default())
            .unwrap();
        assert_eq!(m.pairs.len(), 2);
        assert!(m.unmatched.0.is_empty());
        assert_eq!(m.unmatched.1.len(), 2);
        assert!(m.unmatched.1.iter().all(|v| v.norm() < 1e-12));
        assert!(m.max_distance <= 1e-8);
    }

    #[test]
    fn cp2_no_lost_values() {
        let l = 3.0 * 10f64.ln();
        let chekanov = cp2_chekanov(Some(l)).unwrap();
        let clifford = cp2_clifford(Some(l)).unwrap();
        let m = lost_values(&chekanov, &clifford, &gluing_uw(&[]), &SolverConfig::default())
            .unwrap();
        assert!(m.complete(), "unmatched: {:?}", m.unmatched);
        assert_eq!(m.pairs.len(), 3);
        assert!(m.max_distance <= 1e-8);
    }

    #[test]
    fn identity_map_loses_nothing() {
        let l = 3.0 * 10f64.ln();
        let w = cp2_clifford(Some(l)).unwrap();
        let m = lost_values(&w, &w, &SubstitutionMap::identity(2, &[]), &SolverConfig::default())
            .unwrap();
        assert!(m.complete());
        assert!(m.max_distance <= 1e-12);
    }
}
