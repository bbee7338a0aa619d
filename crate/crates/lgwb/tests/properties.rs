//! Randomized property suites for the exact layer and the solvers.

use lgwb::critical::{hirzebruch_critical, poly_roots, solve_critical, SolverConfig};
use lgwb::laurent::{rat, rat_from_f64, LaurentPoly, ParamCoeff};
use lgwb::polytope::cpn_simplex;
use lgwb::qcoh::match_multisets;
use lgwb::superpotential::{
    cp2_chekanov, p1p1_clifford, toric_superpotential, Mode,
};
use lgwb::wallcross::gluing_uw;
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::TAU;

/// A small random Laurent polynomial in two variables, exact coefficients.
fn laurent_strategy() -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec(
        (
            -3i32..=3,
            -3i32..=3,
            -9i64..=9,
            1i64..=6,
        ),
        0..5,
    )
    .prop_map(|terms| {
        let mut p = LaurentPoly::zero(2, &[]);
        for (e1, e2, n, d) in terms {
            p = p.add(&LaurentPoly::monomial(
                vec![e1, e2],
                ParamCoeff::from_rat(rat(n, d), 0),
                &[],
            ));
        }
        p
    })
}

/// A nonzero point on the two-torus, bounded away from 0 and infinity.
fn torus_point() -> impl Strategy<Value = Vec<Complex64>> {
    proptest::collection::vec((0.3f64..2.0, 0.0f64..TAU), 2).prop_map(|polar| {
        polar
            .into_iter()
            .map(|(r, t)| Complex64::from_polar(r, t))
            .collect()
    })
}

/// A random 2x2 unimodular matrix built from elementary shears and swaps.
fn unimodular_strategy() -> impl Strategy<Value = Vec<Vec<i32>>> {
    proptest::collection::vec((-2i32..=2, proptest::bool::ANY), 1..4).prop_map(|ops| {
        let mut m = [[1i32, 0], [0, 1]];
        for (k, upper) in ops {
            // Multiply by a shear, alternating rows.
            let s = if upper { [[1, k], [0, 1]] } else { [[1, 0], [k, 1]] };
            let mut r = [[0i32; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    r[i][j] = s[i][0] * m[0][j] + s[i][1] * m[1][j];
                }
            }
            m = r;
        }
        vec![m[0].to_vec(), m[1].to_vec()]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ring_axioms(a in laurent_strategy(), b in laurent_strategy(), c in laurent_strategy()) {
        // Associativity, commutativity, distributivity -- all exact.
        prop_assert_eq!(a.add(&b).add(&c).sub(&a.add(&b.add(&c))).num_terms(), 0);
        prop_assert_eq!(a.add(&b).sub(&b.add(&a)).num_terms(), 0);
        prop_assert_eq!(a.mul(&b).sub(&b.mul(&a)).num_terms(), 0);
        prop_assert_eq!(a.mul(&b).mul(&c).sub(&a.mul(&b.mul(&c))).num_terms(), 0);
        prop_assert_eq!(a.mul(&b.add(&c)).sub(&a.mul(&b).add(&a.mul(&c))).num_terms(), 0);
        // Additive inverse and zero.
        prop_assert_eq!(a.add(&a.neg()).num_terms(), 0);
        prop_assert_eq!(a.mul(&LaurentPoly::one(2, &[])).sub(&a).num_terms(), 0);
    }

    #[test]
    fn evaluation_is_a_homomorphism(
        a in laurent_strategy(),
        b in laurent_strategy(),
        z in torus_point(),
    ) {
        let lhs = a.mul(&b).eval(&z, &[]).unwrap();
        let rhs = a.eval(&z, &[]).unwrap() * b.eval(&z, &[]).unwrap();
        let scale = 1.0 + lhs.norm().max(rhs.norm());
        prop_assert!((lhs - rhs).norm() <= 1e-9 * scale);
        let lhs = a.add(&b).eval(&z, &[]).unwrap();
        let rhs = a.eval(&z, &[]).unwrap() + b.eval(&z, &[]).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + lhs.norm().max(rhs.norm())));
    }

    #[test]
    fn log_derivative_is_a_derivation(a in laurent_strategy(), b in laurent_strategy()) {
        for i in 0..2 {
            let lhs = a.mul(&b).log_derivative(i);
            let rhs = a.log_derivative(i).mul(&b).add(&a.mul(&b.log_derivative(i)));
            prop_assert_eq!(lhs.sub(&rhs).num_terms(), 0);
        }
    }

    #[test]
    fn substitution_commutes_with_evaluation(z in torus_point()) {
        // The CP2 gluing map on the symbolic Chekanov potential.
        let w = cp2_chekanov(None).unwrap();
        let m = gluing_uw(&["q"]);
        let q = [Complex64::new(1e-3, 0.0)];
        // Avoid the pole u = z1 + z2 = 0.
        prop_assume!((z[0] + z[1]).norm() > 1e-3);
        let substituted = w.poly.substitute(&m).unwrap();
        let via_sub = substituted.eval(&z, &q).unwrap();
        let uv = m.eval(&z, &q).unwrap();
        let direct = w.poly.eval(&uv, &q).unwrap();
        let scale = 1.0 + via_sub.norm().max(direct.norm());
        prop_assert!(
            (via_sub - direct).norm() <= 1e-12 * scale,
            "mismatch {:e}",
            (via_sub - direct).norm()
        );
    }

    #[test]
    fn vieta_roundtrip(
        coeffs in proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 3..6),
    ) {
        let mut cs: Vec<Complex64> = coeffs
            .into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect();
        cs.push(Complex64::new(1.0, 0.0)); // monic
        let roots = match poly_roots(&cs, 1e-13) {
            Ok(r) => r,
            // Clustered random coefficients may legitimately defeat the
            // iteration; the contract only promises roots when it returns.
            Err(_) => return Ok(()),
        };
        // Rebuild the monic polynomial from the roots.
        let mut rebuilt = vec![Complex64::new(1.0, 0.0)];
        for r in &roots {
            let mut next = vec![Complex64::new(0.0, 0.0); rebuilt.len() + 1];
            for (i, &co) in rebuilt.iter().enumerate() {
                next[i + 1] += co;
                next[i] -= co * r;
            }
            rebuilt = next;
        }
        for (a, b) in rebuilt.iter().zip(&cs) {
            prop_assert!((a - b).norm() <= 1e-8, "coefficient drift {:e}", (a - b).norm());
        }
    }
}

proptest! {
    // Solver-backed properties are slow; the spec asks for a handful of
    // random unimodular matrices.
    #![proptest_config(ProptestConfig::with_cases(5))]

    #[test]
    fn unimodular_relabeling_preserves_critical_values(sigma in unimodular_strategy()) {
        let lambda = 2.0;
        let p = cpn_simplex(2, rat_from_f64(lambda / TAU)).unwrap();
        let p2 = p.apply_unimodular(&sigma).unwrap();
        let w1 = toric_superpotential(&p, Mode::Numeric).unwrap();
        let w2 = toric_superpotential(&p2, Mode::Numeric).unwrap();
        let v1: Vec<Complex64> = solve_critical(&w1, &SolverConfig::default())
            .unwrap()
            .iter()
            .map(|pt| pt.value)
            .collect();
        let v2: Vec<Complex64> = solve_critical(&w2, &SolverConfig::default())
            .unwrap()
            .iter()
            .map(|pt| pt.value)
            .collect();
        let m = match_multisets(&v1, &v2, 1e-9);
        prop_assert!(m.complete() && m.max_distance <= 1e-9,
            "sigma {:?}: max distance {:e}, unmatched {:?}", sigma, m.max_distance, m.unmatched);
    }

    #[test]
    fn unimodular_relabeling_preserves_polytope_shape(sigma in unimodular_strategy()) {
        let p = cpn_simplex(2, rat(3, 2)).unwrap();
        let p2 = p.apply_unimodular(&sigma).unwrap();
        prop_assert_eq!(p.vertices().len(), p2.vertices().len());
        prop_assert_eq!(p.is_delzant().is_delzant, p2.is_delzant().is_delzant);
        prop_assert_eq!(p.is_monotone(), p2.is_monotone());
    }
}

#[test]
fn root_count_completeness() {
    // CP^2: exactly 3.
    let p = cpn_simplex(2, rat(1, 1)).unwrap();
    let w = toric_superpotential(&p, Mode::Numeric).unwrap();
    assert_eq!(solve_critical(&w, &SolverConfig::default()).unwrap().len(), 3);
    // CP^1 x CP^1: exactly 4.
    let w = p1p1_clifford(Some((1.5, 2.5))).unwrap();
    assert_eq!(solve_critical(&w, &SolverConfig::default()).unwrap().len(), 4);
    // F_m: the elimination clears to degree max(m+2, 4) -- the Laurent
    // exponent m-2 is negative for m = 1, so F_1 (which is Fano with
    // rank-4 cohomology) has 4 critical points, not 3.
    let b = 10f64.ln();
    for m in 1u32..=5 {
        let a = m as f64 * b + 4.0;
        let expected = (m as usize + 2).max(4);
        let pts = hirzebruch_critical(m, a, b).unwrap();
        assert_eq!(pts.len(), expected, "F_{m}");
    }
}
