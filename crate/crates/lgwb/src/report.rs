//! Machine-readable analysis reports.
//!
//! Field order is fixed by struct declaration order, every float is rendered
//! with 17 significant digits, and serialization is byte-deterministic.

use crate::critical::CriticalPoint;
use crate::polytope::LatticePolytope;
use crate::qcoh::MultisetMatch;
use crate::wallcross::GluingVerdict;
use num_complex::Complex64;
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub tool_version: String,
    pub input_echo: InputEcho,
    pub superpotential: String,
    pub critical_points: Vec<CriticalPointOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenvalue_check: Option<MultisetMatchOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<VerdictsOut>,
    pub config_echo: ConfigEcho,
}

#[derive(Serialize)]
pub struct InputEcho {
    /// "polytope", "family", or "wallcross".
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Numeric family / benchmark parameters, sorted by name.
    pub params: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polytope: Option<PolytopeEcho>,
}

#[derive(Serialize)]
pub struct PolytopeEcho {
    pub dim: usize,
    pub facets: Vec<FacetEcho>,
    pub is_delzant: bool,
    pub is_monotone: bool,
}

#[derive(Serialize)]
pub struct FacetEcho {
    pub normal: Vec<i32>,
    /// Exact rational offset in moment units, rendered as "p/q".
    pub two_pi_alpha: String,
}

#[derive(Serialize)]
pub struct CriticalPointOut {
    /// Coordinates as (re, im) pairs.
    pub z: Vec<[f64; 2]>,
    pub value: [f64; 2],
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_domain: Option<bool>,
    pub basin_count: usize,
    pub degenerate: bool,
}

#[derive(Serialize)]
pub struct MultisetMatchOut {
    pub pairs: Vec<PairOut>,
    pub max_distance: f64,
    pub unmatched_left: Vec<[f64; 2]>,
    pub unmatched_right: Vec<[f64; 2]>,
}

#[derive(Serialize)]
pub struct PairOut {
    pub left: [f64; 2],
    pub right: [f64; 2],
    pub distance: f64,
}

#[derive(Serialize)]
pub struct VerdictsOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gluing: Option<GluingOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monodromy: Option<Vec<Vec<i32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lost_values: Option<MultisetMatchOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub renormalization: Option<RenormalizationOut>,
}

#[derive(Serialize)]
pub struct GluingOut {
    pub identity_holds: bool,
    pub transformed: String,
    pub expected: String,
}

#[derive(Serialize)]
pub struct RenormalizationOut {
    pub k: f64,
    /// Largest relative termwise deviation of `e^k W_k` from `W`.
    pub max_rel_error: f64,
    pub identity_holds: bool,
}

#[derive(Serialize)]
pub struct ConfigEcho {
    pub grid_angles: usize,
    pub newton_tol: f64,
    pub max_iter: usize,
    pub dedup_tol: f64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inflate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub benchmark: Option<String>,
    pub classical: bool,
}

fn cpair(v: Complex64) -> [f64; 2] {
    [v.re, v.im]
}

pub fn critical_point_out(p: &CriticalPoint) -> CriticalPointOut {
    CriticalPointOut {
        z: p.z.iter().map(|&z| cpair(z)).collect(),
        value: cpair(p.value),
        residual: p.residual,
        in_domain: p.in_domain,
        basin_count: p.basin_count,
        degenerate: p.degenerate,
    }
}

pub fn multiset_match_out(m: &MultisetMatch) -> MultisetMatchOut {
    MultisetMatchOut {
        pairs: m
            .pairs
            .iter()
            .map(|&(l, r, d)| PairOut {
                left: cpair(l),
                right: cpair(r),
                distance: d,
            })
            .collect(),
        max_distance: m.max_distance,
        unmatched_left: m.unmatched.0.iter().copied().map(cpair).collect(),
        unmatched_right: m.unmatched.1.iter().copied().map(cpair).collect(),
    }
}

pub fn gluing_out(v: &GluingVerdict, var_names: &[&str]) -> GluingOut {
    GluingOut {
        identity_holds: v.identity_holds,
        transformed: v.transformed.render(var_names),
        expected: v.expected.render(var_names),
    }
}

pub fn polytope_echo(p: &LatticePolytope) -> PolytopeEcho {
    PolytopeEcho {
        dim: p.dim(),
        facets: p
            .facets()
            .iter()
            .map(|f| FacetEcho {
                normal: f.normal.clone(),
                two_pi_alpha: f.offset.to_string(),
            })
            .collect(),
        is_delzant: p.is_delzant().is_delzant,
        is_monotone: p.is_monotone(),
    }
}

/// Render a float with 17 significant digits (round-trip exact for f64),
/// as a valid JSON number.
pub fn format_f64(v: f64) -> String {
    format!("{:.16e}", v)
}

struct SigDigitFormatter;

impl serde_json::ser::Formatter for SigDigitFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        writer.write_all(format_f64(value).as_bytes())
    }
}

/// Serialize the report deterministically, with a trailing newline.
pub fn to_json(report: &AnalysisReport) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigDigitFormatter);
    report
        .serialize(&mut ser)
        .expect("report serialization cannot fail");
    out.push(b'\n');
    String::from_utf8(out).expect("report is valid UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_rendering_has_17_significant_digits() {
        // 17 significant digits render the stored double exactly.
        assert_eq!(format_f64(0.3), "2.9999999999999999e-1");
        assert_eq!(format_f64(-1.0 / 3.0), "-3.3333333333333331e-1");
        for v in [0.3, std::f64::consts::PI, 1e-300, -7.25, 3.0 * 10f64.ln()] {
            let s = format_f64(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "round trip failed for {s}");
        }
    }

    #[test]
    fn report_serialization_is_deterministic() {
        let make = || AnalysisReport {
            schema: SCHEMA_VERSION,
            tool_version: "test".into(),
            input_echo: InputEcho {
                kind: "family".into(),
                name: Some("cp2_clifford".into()),
                params: [("lambda".to_string(), 3.0 * 10f64.ln())].into(),
                polytope: None,
            },
            superpotential: "z1 + z2 + q*z1^-1*z2^-1".into(),
            critical_points: vec![],
            eigenvalue_check: None,
            verdicts: None,
            config_echo: ConfigEcho {
                grid_angles: 8,
                newton_tol: 1e-10,
                max_iter: 100,
                dedup_tol: 1e-6,
                seed: 0,
                inflate: None,
                benchmark: None,
                classical: false,
            },
        };
        let a = to_json(&make());
        let b = to_json(&make());
        assert_eq!(a, b);
        assert!(a.starts_with("{\"schema\":1,\"tool_version\":"));
        assert!(a.ends_with('\n'));
        assert!(a.contains(&format_f64(3.0 * 10f64.ln())));
    }
}
