//! Superpotential construction: the toric facet formula and the closed-form
//! chart families (CP^2 and CP^1 x CP^1 in Clifford/Chekanov coordinates,
//! Hirzebruch surfaces).

use crate::error::{Error, Result};
use crate::laurent::{rat_from_f64, rat_to_f64, LaurentPoly, ParamCoeff, Rat};
use crate::polytope::LatticePolytope;
use num_complex::Complex64;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::f64::consts::TAU;

/// Coefficient handling: formal parameters for exact identities, or floats
/// baked in for the solver.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    Numeric,
}

/// How a formal parameter is defined, and its numeric value when known.
#[derive(Clone, Debug)]
pub struct ParamBinding {
    pub name: String,
    pub definition: String,
    pub value: Option<f64>,
}

/// A superpotential with its chart data.
#[derive(Clone, Debug)]
pub struct SuperpotentialSpec {
    pub poly: LaurentPoly,
    pub variable_names: Vec<String>,
    pub parameter_bindings: Vec<ParamBinding>,
    pub domain: Option<LatticePolytope>,
    pub chart_label: String,
}

impl SuperpotentialSpec {
    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn is_numeric(&self) -> bool {
        self.parameter_bindings.iter().all(|b| b.value.is_some())
    }

    pub fn param_values(&self) -> Result<Vec<Complex64>> {
        self.parameter_bindings
            .iter()
            .map(|b| {
                b.value
                    .map(|v| Complex64::new(v, 0.0))
                    .ok_or_else(|| Error::UnassignedParameter(b.name.clone()))
            })
            .collect()
    }

    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64> {
        self.poly.eval(z, &self.param_values()?)
    }

    pub fn var_refs(&self) -> Vec<&str> {
        self.variable_names.iter().map(|s| s.as_str()).collect()
    }

    pub fn render(&self) -> String {
        self.poly.render(&self.var_refs())
    }
}

/// Whether a non-Delzant polytope is a hard error or merely tolerated
/// (inflation can collapse an edge of a non-Fano trapezoid and destroy
/// smoothness while the facet formula stays perfectly usable).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DelzantPolicy {
    Require,
    Allow,
}

/// The toric superpotential: one term `e^{-2 pi alpha(F)} z^{nu(F)}` per facet.
///
/// In symbolic mode each distinct nonzero offset gets a fresh parameter
/// (offsets compared exactly as rationals; zero offsets give coefficient 1).
pub fn toric_superpotential(p: &LatticePolytope, mode: Mode) -> Result<SuperpotentialSpec> {
    toric_superpotential_with(p, mode, DelzantPolicy::Require)
}

/// As [`toric_superpotential`], with an explicit smoothness policy.
pub fn toric_superpotential_with(
    p: &LatticePolytope,
    mode: Mode,
    policy: DelzantPolicy,
) -> Result<SuperpotentialSpec> {
    let check = p.is_delzant();
    if !check.is_delzant && policy == DelzantPolicy::Require {
        return Err(Error::NotDelzant(
            check.diagnostic.unwrap_or_else(|| "unknown vertex".into()),
        ));
    }
    let n = p.dim();
    let variable_names: Vec<String> = (1..=n).map(|i| format!("z{i}")).collect();
    match mode {
        Mode::Numeric => {
            let mut poly = LaurentPoly::zero(n, &[]);
            for f in p.facets() {
                let weight = (-TAU * rat_to_f64(&f.offset)).exp();
                let coeff = ParamCoeff::from_rat(rat_from_f64(weight), 0);
                poly = poly.add(&LaurentPoly::monomial(
                    f.normal.clone(),
                    coeff,
                    &[],
                ));
            }
            Ok(SuperpotentialSpec {
                poly,
                variable_names,
                parameter_bindings: vec![],
                domain: Some(p.clone()),
                chart_label: p.name().unwrap_or("toric").to_string(),
            })
        }
        Mode::Symbolic => {
            let mut distinct: Vec<Rat> = Vec::new();
            for f in p.facets() {
                if !f.offset.is_zero() && !distinct.contains(&f.offset) {
                    distinct.push(f.offset.clone());
                }
            }
            distinct.sort();
            let names: Vec<String> = (1..=distinct.len()).map(|i| format!("q{i}")).collect();
            let prefs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            let mut poly = LaurentPoly::zero(n, &prefs);
            for f in p.facets() {
                let coeff = if f.offset.is_zero() {
                    ParamCoeff::one(names.len())
                } else {
                    let idx = distinct.iter().position(|o| o == &f.offset).unwrap();
                    ParamCoeff::param(idx, Rat::one(), names.len())
                };
                poly = poly.add(&LaurentPoly::monomial(f.normal.clone(), coeff, &prefs));
            }
            let parameter_bindings = names
                .iter()
                .zip(&distinct)
                .map(|(name, off)| ParamBinding {
                    name: name.clone(),
                    definition: format!("exp(-2*pi*({off}))"),
                    value: None,
                })
                .collect();
            Ok(SuperpotentialSpec {
                poly,
                variable_names,
                parameter_bindings,
                domain: Some(p.clone()),
                chart_label: p.name().unwrap_or("toric").to_string(),
            })
        }
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0) {
        return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
    }
    Ok(())
}

fn numeric_coeff(weight: f64) -> ParamCoeff {
    ParamCoeff::from_rat(rat_from_f64(weight), 0)
}

fn symbolic_q(i: usize, n: usize) -> ParamCoeff {
    ParamCoeff::param(i, Rat::one(), n)
}

/// Weights as coefficients: either `e^{-lambda}` floats or formal parameters.
enum Weights {
    Numeric(Vec<f64>),
    Symbolic(Vec<String>),
}

impl Weights {
    fn params(&self) -> Vec<String> {
        match self {
            Weights::Numeric(_) => vec![],
            Weights::Symbolic(names) => names.clone(),
        }
    }

    fn coeff(&self, i: usize) -> ParamCoeff {
        match self {
            Weights::Numeric(vals) => numeric_coeff((-vals[i]).exp()),
            Weights::Symbolic(names) => symbolic_q(i, names.len()),
        }
    }

    fn bindings(&self, defs: &[&str]) -> Vec<ParamBinding> {
        match self {
            Weights::Numeric(_) => vec![],
            Weights::Symbolic(names) => names
                .iter()
                .zip(defs)
                .map(|(n, d)| ParamBinding {
                    name: n.clone(),
                    definition: d.to_string(),
                    value: None,
                })
                .collect(),
        }
    }
}

fn build(
    weights: &Weights,
    defs: &[&str],
    vars: &[&str],
    terms: Vec<(Vec<i32>, ParamCoeff)>,
    domain: Option<LatticePolytope>,
    label: &str,
) -> SuperpotentialSpec {
    let params = weights.params();
    let prefs: Vec<&str> = params.iter().map(|s| s.as_str()).collect();
    let mut poly = LaurentPoly::zero(vars.len(), &prefs);
    for (e, c) in terms {
        poly = poly.add(&LaurentPoly::monomial(e, c, &prefs));
    }
    SuperpotentialSpec {
        poly,
        variable_names: vars.iter().map(|s| s.to_string()).collect(),
        parameter_bindings: match weights {
            Weights::Numeric(vals) => {
                // Numeric mode bakes the weights into the coefficients; keep
                // an informational record of the areas used.
                let _ = vals;
                vec![]
            }
            Weights::Symbolic(_) => weights.bindings(defs),
        },
        domain,
        chart_label: label.to_string(),
    }
}

/// `W = z1 + z2 + e^{-L} / (z1 z2)` on the Clifford chart of CP^2.
pub fn cp2_clifford(lambda: Option<f64>) -> Result<SuperpotentialSpec> {
    let weights = match lambda {
        Some(l) => {
            check_positive("lambda", l)?;
            Weights::Numeric(vec![l])
        }
        None => Weights::Symbolic(vec!["q".into()]),
    };
    let q = weights.coeff(0);
    let one = match &weights {
        Weights::Numeric(_) => ParamCoeff::from_rat(Rat::one(), 0),
        Weights::Symbolic(n) => ParamCoeff::from_rat(Rat::one(), n.len()),
    };
    let domain = lambda
        .map(|l| crate::polytope::cpn_simplex(2, rat_from_f64(l / TAU)))
        .transpose()?;
    Ok(build(
        &weights,
        &["exp(-L)"],
        &["z1", "z2"],
        vec![
            (vec![1, 0], one.clone()),
            (vec![0, 1], one),
            (vec![-1, -1], q),
        ],
        domain,
        "clifford",
    ))
}

/// `W = u + e^{-L}(1+w)^2 / (u^2 w)` on the Chekanov chart of CP^2,
/// stored expanded. Chart variables ordered `(u, w)`; no polytope domain.
pub fn cp2_chekanov(lambda: Option<f64>) -> Result<SuperpotentialSpec> {
    let weights = match lambda {
        Some(l) => {
            check_positive("lambda", l)?;
            Weights::Numeric(vec![l])
        }
        None => Weights::Symbolic(vec!["q".into()]),
    };
    let q = weights.coeff(0);
    let one = match &weights {
        Weights::Numeric(_) => ParamCoeff::from_rat(Rat::one(), 0),
        Weights::Symbolic(n) => ParamCoeff::from_rat(Rat::one(), n.len()),
    };
    Ok(build(
        &weights,
        &["exp(-L)"],
        &["u", "w"],
        vec![
            (vec![1, 0], one),
            (vec![-2, -1], q.clone()),
            (vec![-2, 0], q.scale(&crate::laurent::rat_int(2))),
            (vec![-2, 1], q),
        ],
        None,
        "chekanov",
    ))
}

/// `W = z1 + z2 + e^{-L1}/z1 + e^{-L2}/z2` on the Clifford chart of
/// CP^1 x CP^1.
pub fn p1p1_clifford(lambdas: Option<(f64, f64)>) -> Result<SuperpotentialSpec> {
    let weights = match lambdas {
        Some((l1, l2)) => {
            check_positive("lambda1", l1)?;
            check_positive("lambda2", l2)?;
            Weights::Numeric(vec![l1, l2])
        }
        None => Weights::Symbolic(vec!["q1".into(), "q2".into()]),
    };
    let one = match &weights {
        Weights::Numeric(_) => ParamCoeff::from_rat(Rat::one(), 0),
        Weights::Symbolic(n) => ParamCoeff::from_rat(Rat::one(), n.len()),
    };
    let domain = lambdas
        .map(|(l1, l2)| {
            crate::polytope::p1p1_rectangle(rat_from_f64(l1 / TAU), rat_from_f64(l2 / TAU))
        })
        .transpose()?;
    Ok(build(
        &weights,
        &["exp(-L1)", "exp(-L2)"],
        &["z1", "z2"],
        vec![
            (vec![1, 0], one.clone()),
            (vec![0, 1], one),
            (vec![-1, 0], weights.coeff(0)),
            (vec![0, -1], weights.coeff(1)),
        ],
        domain,
        "clifford",
    ))
}

/// `W = u + e^{-L1}(1+w)/(uw) + e^{-L2}(1+w)/u` on the Chekanov chart of
/// CP^1 x CP^1. Chart variables ordered `(u, w)`; no polytope domain.
pub fn p1p1_chekanov(lambdas: Option<(f64, f64)>) -> Result<SuperpotentialSpec> {
    let weights = match lambdas {
        Some((l1, l2)) => {
            check_positive("lambda1", l1)?;
            check_positive("lambda2", l2)?;
            Weights::Numeric(vec![l1, l2])
        }
        None => Weights::Symbolic(vec!["q1".into(), "q2".into()]),
    };
    let one = match &weights {
        Weights::Numeric(_) => ParamCoeff::from_rat(Rat::one(), 0),
        Weights::Symbolic(n) => ParamCoeff::from_rat(Rat::one(), n.len()),
    };
    let q1 = weights.coeff(0);
    let q2 = weights.coeff(1);
    Ok(build(
        &weights,
        &["exp(-L1)", "exp(-L2)"],
        &["u", "w"],
        vec![
            (vec![1, 0], one),
            (vec![-1, -1], q1.clone()),
            (vec![-1, 0], q1.add(&q2)),
            (vec![-1, 1], q2),
        ],
        None,
        "chekanov",
    ))
}

/// `W = z1 + z2 + e^{-A}/(z1 z2^m) + e^{-B}/z2` for the Hirzebruch
/// surface F_m. Requires `m >= 1` and `A > m B > 0`.
pub fn hirzebruch(m: u32, a: f64, b: f64) -> Result<SuperpotentialSpec> {
    if m < 1 {
        return Err(Error::InvalidParameter("m must be >= 1".into()));
    }
    check_positive("B", b)?;
    if !(a > m as f64 * b) {
        return Err(Error::InvalidParameter(format!(
            "need A > m*B (A = {a}, m*B = {})",
            m as f64 * b
        )));
    }
    let weights = Weights::Numeric(vec![a, b]);
    let one = ParamCoeff::from_rat(Rat::one(), 0);
    let domain = crate::polytope::hirzebruch_polytope(m, rat_from_f64(a / TAU), rat_from_f64(b / TAU))?;
    Ok(build(
        &weights,
        &[],
        &["z1", "z2"],
        vec![
            (vec![1, 0], one.clone()),
            (vec![0, 1], one),
            (vec![-1, -(m as i32)], weights.coeff(0)),
            (vec![0, -1], weights.coeff(1)),
        ],
        Some(domain),
        "hirzebruch",
    ))
}

/// Numeric coefficients by exponent vector (numeric mode only).
pub fn numeric_terms(spec: &SuperpotentialSpec) -> BTreeMap<Vec<i32>, f64> {
    let mut out = BTreeMap::new();
    for (e, c) in spec.poly.terms() {
        out.insert(e.clone(), c.eval(&[]).re);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::rat;
    use crate::polytope::{cpn_simplex, hirzebruch_polytope, p1p1_rectangle};

    #[test]
    fn toric_cp2_symbolic_formula() {
        let p = cpn_simplex(2, rat(3, 2)).unwrap();
        let w = toric_superpotential(&p, Mode::Symbolic).unwrap();
        assert_eq!(w.render(), "q1*z1^-1*z2^-1 + z2 + z1");
        assert_eq!(w.parameter_bindings.len(), 1);
    }

    #[test]
    fn toric_p1p1_symbolic_two_params() {
        let p = p1p1_rectangle(rat(1, 1), rat(2, 1)).unwrap();
        let w = toric_superpotential(&p, Mode::Symbolic).unwrap();
        assert_eq!(w.parameter_bindings.len(), 2);
        assert_eq!(w.poly.num_terms(), 4);
        // Equal offsets share a parameter.
        let p = p1p1_rectangle(rat(1, 1), rat(1, 1)).unwrap();
        let w = toric_superpotential(&p, Mode::Symbolic).unwrap();
        assert_eq!(w.parameter_bindings.len(), 1);
    }

    #[test]
    fn toric_numeric_coefficients_bounded() {
        let p = hirzebruch_polytope(3, rat(2, 1), rat(1, 2)).unwrap();
        let w = toric_superpotential(&p, Mode::Numeric).unwrap();
        for coeff in numeric_terms(&w).values() {
            assert!(*coeff <= 1.0 + 1e-15, "coefficient {coeff} exceeds 1");
        }
    }

    #[test]
    fn toric_rejects_non_delzant() {
        let p = crate::polytope::LatticePolytope::new(
            2,
            vec![
                (vec![1, 0], Rat::zero()),
                (vec![0, 1], Rat::zero()),
                (vec![-1, -2], crate::laurent::rat_int(2)),
            ],
            None,
        )
        .unwrap();
        assert!(matches!(
            toric_superpotential(&p, Mode::Numeric),
            Err(Error::NotDelzant(_))
        ));
    }

    #[test]
    fn hirzebruch_matches_toric_path() {
        let m = 3;
        let (a, b) = (7.0, 1.0);
        let fam = hirzebruch(m, a, b).unwrap();
        let p = hirzebruch_polytope(m, rat_from_f64(a / TAU), rat_from_f64(b / TAU)).unwrap();
        let toric = toric_superpotential(&p, Mode::Numeric).unwrap();
        let tf = numeric_terms(&fam);
        let tt = numeric_terms(&toric);
        assert_eq!(tf.keys().collect::<Vec<_>>(), tt.keys().collect::<Vec<_>>());
        for (e, c) in &tf {
            let d = tt[e];
            assert!((c - d).abs() <= 1e-12 * c.abs().max(d.abs()).max(1e-300));
        }
    }

    #[test]
    fn chekanov_expansions() {
        let w = cp2_chekanov(None).unwrap();
        assert_eq!(w.render(), "q*u^-2*w^-1 + 2*q*u^-2 + q*u^-2*w + u");
        let w = p1p1_chekanov(None).unwrap();
        assert_eq!(w.poly.num_terms(), 4);
    }

    #[test]
    fn p1p1_chekanov_equal_areas_simplifies() {
        // With L1 = L2 the middle coefficient is 2 e^{-L}.
        let l = 2.0 * 10f64.ln();
        let w = p1p1_chekanov(Some((l, l))).unwrap();
        let terms = numeric_terms(&w);
        assert!((terms[&vec![-1, 0]] - 2.0 * 1e-2).abs() < 1e-15);
    }

    #[test]
    fn rescaling_under_inflation() {
        let p = hirzebruch_polytope(3, rat(2, 1), rat(1, 2)).unwrap();
        let t = rat(1, 1);
        let k = TAU * 1.0;
        let w = toric_superpotential(&p, Mode::Numeric).unwrap();
        // Large inflations can collapse the trapezoid's short edge, so the
        // inflated polytope is only accepted under the permissive policy.
        let wk =
            toric_superpotential_with(&p.inflate(&t), Mode::Numeric, DelzantPolicy::Allow).unwrap();
        let base = numeric_terms(&w);
        let scaled = numeric_terms(&wk);
        for (e, c) in &base {
            let rescaled = scaled[e] * k.exp();
            assert!((rescaled - c).abs() <= 1e-12 * c.abs());
        }
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(cp2_clifford(Some(-1.0)).is_err());
        assert!(hirzebruch(2, 1.0, 1.0).is_err());
        assert!(hirzebruch(0, 3.0, 1.0).is_err());
    }
}
