//! Command-line front end for the Landau-Ginzburg workbench.

use clap::{Args, Parser, Subcommand};
use lgwb::critical::{filter_in_domain, solve_critical, sort_points, CriticalPoint, SolverConfig};
use lgwb::laurent::{rat_from_f64, rat_to_f64};
use lgwb::polytope::LatticePolytope;
use lgwb::qcoh::{c1_matrix_cpn, c1_matrix_p1p1, eigenvalues, match_multisets, MultisetMatch};
use lgwb::report::{
    self, AnalysisReport, ConfigEcho, GluingOut, InputEcho, RenormalizationOut, VerdictsOut,
};
use lgwb::superpotential::{
    cp2_chekanov, cp2_clifford, hirzebruch, numeric_terms, p1p1_chekanov, p1p1_clifford,
    toric_superpotential_with, DelzantPolicy, Mode, SuperpotentialSpec,
};
use lgwb::wallcross::{gluing_uw, lost_values, monodromy, verify_chart_identity};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::process::ExitCode;

const EXIT_INPUT_ERROR: u8 = 1;
const EXIT_VERIFICATION_FAILURE: u8 = 2;
const MATCH_TOL: f64 = 1e-8;
const DOMAIN_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(
    name = "lgwb",
    version,
    about = "Landau-Ginzburg workbench: toric mirror superpotentials, critical points, \
             quantum c1 eigenvalue checks, and wall-crossing verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SolverFlags {
    /// Newton convergence tolerance (relative to 1 + |W|).
    #[arg(long, default_value_t = 1e-10)]
    newton_tol: f64,
    /// Number of seed angles per variable.
    #[arg(long, default_value_t = 8)]
    grid_angles: usize,
    /// Maximum Newton iterations per seed.
    #[arg(long, default_value_t = 100)]
    max_iter: usize,
    /// Deduplication tolerance in log coordinates.
    #[arg(long, default_value_t = 1e-6)]
    dedup_tol: f64,
    /// Seed for the deterministic start-point jitter.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl SolverFlags {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            grid_radii: None,
            grid_angles: self.grid_angles,
            newton_tol: self.newton_tol,
            max_iter: self.max_iter,
            dedup_tol: self.dedup_tol,
            rng_seed: self.seed,
        }
    }
}

#[derive(Args, Clone)]
struct OutFlag {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a polytope file: build W, solve, filter, optionally benchmark.
    Analyze {
        /// Polytope JSON file.
        polytope: std::path::PathBuf,
        /// Check critical values against this benchmark's c1 eigenvalues
        /// (cp1|cp2|cp3|p1p1).
        #[arg(long)]
        benchmark: Option<String>,
        /// Inflate the polytope offsets by k/2pi before analysis.
        #[arg(long)]
        inflate: Option<f64>,
        #[command(flatten)]
        solver: SolverFlags,
        #[command(flatten)]
        out: OutFlag,
    },
    /// Analyze a named superpotential family.
    Family {
        /// cp2_clifford | cp2_chekanov | p1p1_clifford | p1p1_chekanov | hirzebruch
        name: String,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        l1: Option<f64>,
        #[arg(long)]
        l2: Option<f64>,
        /// Hirzebruch index m.
        #[arg(long)]
        m: Option<u32>,
        /// Hirzebruch area parameter A.
        #[arg(long)]
        a: Option<f64>,
        /// Hirzebruch area parameter B.
        #[arg(long)]
        b: Option<f64>,
        /// Check critical values against this benchmark (cp2|p1p1).
        #[arg(long)]
        benchmark: Option<String>,
        #[command(flatten)]
        solver: SolverFlags,
        #[command(flatten)]
        out: OutFlag,
    },
    /// Verify a chart-gluing preset: identity, monodromy, lost values.
    Wallcross {
        /// cp2 | p1p1
        preset: String,
        /// Use the uncorrected classical map (documents the discontinuity).
        #[arg(long)]
        classical: bool,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        l1: Option<f64>,
        #[arg(long)]
        l2: Option<f64>,
        #[command(flatten)]
        solver: SolverFlags,
        #[command(flatten)]
        out: OutFlag,
    },
    /// Emit CSV of polytope outline and critical-point Log images (dim 2).
    Plotdata {
        /// Polytope JSON file.
        polytope: std::path::PathBuf,
        #[arg(long)]
        inflate: Option<f64>,
        #[command(flatten)]
        solver: SolverFlags,
        #[command(flatten)]
        out: OutFlag,
    },
    /// Analyze an inflated polytope and verify the rescaling identity
    /// e^k W_k == W.
    Renormalize {
        /// Polytope JSON file.
        polytope: std::path::PathBuf,
        /// Inflation amount k (offsets grow by k/2pi).
        #[arg(long)]
        inflate: f64,
        #[command(flatten)]
        solver: SolverFlags,
        #[command(flatten)]
        out: OutFlag,
    },
}

fn log_enabled() -> bool {
    std::env::var("LGWB_LOG").map(|v| !v.is_empty()).unwrap_or(false)
}

macro_rules! diag {
    ($($arg:tt)*) => {
        if log_enabled() {
            eprintln!("[lgwb] {}", format!($($arg)*));
        }
    };
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze {
            polytope,
            benchmark,
            inflate,
            solver,
            out,
        } => cmd_analyze(&polytope, benchmark.as_deref(), inflate, &solver, &out),
        Command::Family {
            name,
            lambda,
            l1,
            l2,
            m,
            a,
            b,
            benchmark,
            solver,
            out,
        } => cmd_family(
            &name,
            FamilyParams { lambda, l1, l2, m, a, b },
            benchmark.as_deref(),
            &solver,
            &out,
        ),
        Command::Wallcross {
            preset,
            classical,
            lambda,
            l1,
            l2,
            solver,
            out,
        } => cmd_wallcross(&preset, classical, lambda, l1, l2, &solver, &out),
        Command::Plotdata {
            polytope,
            inflate,
            solver,
            out,
        } => cmd_plotdata(&polytope, inflate, &solver, &out),
        Command::Renormalize {
            polytope,
            inflate,
            solver,
            out,
        } => cmd_renormalize(&polytope, inflate, &solver, &out),
    };
    match result {
        Ok(verified) => {
            if verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFICATION_FAILURE)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT_ERROR)
        }
    }
}

/// Ok(true) = report written and all verifications passed; Ok(false) = report
/// written but a verification failed; Err = input error.
type CmdResult = Result<bool, String>;

fn load_polytope(path: &std::path::Path) -> Result<LatticePolytope, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    LatticePolytope::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(out: &OutFlag, content: &str) -> Result<(), String> {
    match &out.out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn config_echo(solver: &SolverFlags, inflate: Option<f64>, benchmark: Option<&str>, classical: bool) -> ConfigEcho {
    ConfigEcho {
        grid_angles: solver.grid_angles,
        newton_tol: solver.newton_tol,
        max_iter: solver.max_iter,
        dedup_tol: solver.dedup_tol,
        seed: solver.seed,
        inflate,
        benchmark: benchmark.map(str::to_string),
        classical,
    }
}

/// Benchmark areas recovered from the polytope: the offset sum is
/// translation invariant and `Lambda = 2 pi * sum(alpha)` for the simplex;
/// for a rectangle the per-axis pair sums give the two areas.
fn benchmark_eigenvalues(
    name: &str,
    p: &LatticePolytope,
) -> Result<Vec<Complex64>, String> {
    let offset_sum =
        |idx: &[usize]| -> f64 { idx.iter().map(|&i| rat_to_f64(&p.facets()[i].offset)).sum() };
    match name {
        "cp1" | "cp2" | "cp3" => {
            let n: usize = name[2..].parse().unwrap();
            if p.dim() != n || p.facets().len() != n + 1 {
                return Err(format!(
                    "benchmark {name} expects a {n}-simplex with {} facets",
                    n + 1
                ));
            }
            let all: Vec<usize> = (0..p.facets().len()).collect();
            let lambda = TAU * offset_sum(&all);
            eigenvalues(&c1_matrix_cpn(n, lambda).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())
        }
        "p1p1" => {
            if p.dim() != 2 || p.facets().len() != 4 {
                return Err("benchmark p1p1 expects a rectangle with 4 facets".into());
            }
            let mut axis = [Vec::new(), Vec::new()];
            for (i, f) in p.facets().iter().enumerate() {
                match f.normal.as_slice() {
                    [x, 0] if *x != 0 => axis[0].push(i),
                    [0, y] if *y != 0 => axis[1].push(i),
                    _ => return Err("benchmark p1p1 expects axis-aligned facets".into()),
                }
            }
            if axis[0].len() != 2 || axis[1].len() != 2 {
                return Err("benchmark p1p1 expects two facets per axis".into());
            }
            let l1 = TAU * offset_sum(&axis[0]);
            let l2 = TAU * offset_sum(&axis[1]);
            eigenvalues(&c1_matrix_p1p1(l1, l2).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())
        }
        other => Err(format!(
            "unknown benchmark {other:?} (expected cp1|cp2|cp3|p1p1)"
        )),
    }
}

fn eigenvalue_check(
    benchmark: Option<&str>,
    p: Option<&LatticePolytope>,
    explicit: Option<Vec<Complex64>>,
    points: &[CriticalPoint],
) -> Result<Option<MultisetMatch>, String> {
    let Some(name) = benchmark else {
        return Ok(None);
    };
    let evs = match explicit {
        Some(e) => e,
        None => {
            let p = p.ok_or("benchmark check needs a polytope or family parameters")?;
            benchmark_eigenvalues(name, p)?
        }
    };
    let values: Vec<Complex64> = points.iter().map(|pt| pt.value).collect();
    diag!("benchmark {name}: {} eigenvalues vs {} critical values", evs.len(), values.len());
    Ok(Some(match_multisets(&evs, &values, MATCH_TOL)))
}

fn cmd_analyze(
    path: &std::path::Path,
    benchmark: Option<&str>,
    inflate: Option<f64>,
    solver: &SolverFlags,
    out: &OutFlag,
) -> CmdResult {
    let base = load_polytope(path)?;
    let poly = match inflate {
        Some(k) => base.inflate(&rat_from_f64(k / TAU)),
        None => base,
    };
    let w = toric_superpotential_with(&poly, Mode::Numeric, DelzantPolicy::Allow)
        .map_err(|e| e.to_string())?;
    diag!("superpotential: {}", w.render());
    let mut points = solve_critical(&w, &solver.config()).map_err(|e| e.to_string())?;
    filter_in_domain(&mut points, &poly, DOMAIN_TOL).map_err(|e| e.to_string())?;
    let check = eigenvalue_check(benchmark, Some(&poly), None, &points)?;
    let verified = check
        .as_ref()
        .map(|m| m.complete() && m.max_distance <= MATCH_TOL)
        .unwrap_or(true);

    let report = AnalysisReport {
        schema: report::SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").into(),
        input_echo: InputEcho {
            kind: "polytope".into(),
            name: poly.name().map(str::to_string),
            params: BTreeMap::new(),
            polytope: Some(report::polytope_echo(&poly)),
        },
        superpotential: w.render(),
        critical_points: points.iter().map(report::critical_point_out).collect(),
        eigenvalue_check: check.as_ref().map(report::multiset_match_out),
        verdicts: None,
        config_echo: config_echo(solver, inflate, benchmark, false),
    };
    emit(out, &report::to_json(&report))?;
    Ok(verified)
}

struct FamilyParams {
    lambda: Option<f64>,
    l1: Option<f64>,
    l2: Option<f64>,
    m: Option<u32>,
    a: Option<f64>,
    b: Option<f64>,
}

fn build_family(name: &str, p: &FamilyParams) -> Result<(SuperpotentialSpec, BTreeMap<String, f64>), String> {
    let need = |v: Option<f64>, flag: &str| {
        v.ok_or_else(|| format!("family {name} requires --{flag}"))
    };
    let mut params = BTreeMap::new();
    let spec = match name {
        "cp2_clifford" | "cp2_chekanov" => {
            let l = need(p.lambda, "lambda")?;
            params.insert("lambda".into(), l);
            if name == "cp2_clifford" {
                cp2_clifford(Some(l))
            } else {
                cp2_chekanov(Some(l))
            }
        }
        "p1p1_clifford" | "p1p1_chekanov" => {
            let l1 = need(p.l1, "l1")?;
            let l2 = need(p.l2, "l2")?;
            params.insert("l1".into(), l1);
            params.insert("l2".into(), l2);
            if name == "p1p1_clifford" {
                p1p1_clifford(Some((l1, l2)))
            } else {
                p1p1_chekanov(Some((l1, l2)))
            }
        }
        "hirzebruch" => {
            let m = p.m.ok_or("family hirzebruch requires --m")?;
            // Default to the e^{-B} = 0.1, A = mB + 3 regime.
            let b = p.b.unwrap_or_else(|| 10f64.ln());
            let a = p.a.unwrap_or(m as f64 * b + 3.0);
            params.insert("m".into(), m as f64);
            params.insert("a".into(), a);
            params.insert("b".into(), b);
            hirzebruch(m, a, b)
        }
        other => {
            return Err(format!(
                "unknown family {other:?} (expected cp2_clifford|cp2_chekanov|p1p1_clifford|p1p1_chekanov|hirzebruch)"
            ))
        }
    }
    .map_err(|e| e.to_string())?;
    Ok((spec, params))
}

fn cmd_family(
    name: &str,
    fp: FamilyParams,
    benchmark: Option<&str>,
    solver: &SolverFlags,
    out: &OutFlag,
) -> CmdResult {
    let (w, params) = build_family(name, &fp)?;
    diag!("superpotential: {}", w.render());
    let mut points = solve_critical(&w, &solver.config()).map_err(|e| e.to_string())?;
    if let Some(domain) = &w.domain {
        filter_in_domain(&mut points, domain, DOMAIN_TOL).map_err(|e| e.to_string())?;
    }
    let explicit = match benchmark {
        Some("cp2") => Some(
            eigenvalues(
                &c1_matrix_cpn(2, fp.lambda.ok_or("benchmark cp2 requires --lambda")?)
                    .map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?,
        ),
        Some("p1p1") => Some(
            eigenvalues(
                &c1_matrix_p1p1(
                    fp.l1.ok_or("benchmark p1p1 requires --l1")?,
                    fp.l2.ok_or("benchmark p1p1 requires --l2")?,
                )
                .map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?,
        ),
        Some(other) => return Err(format!("unknown benchmark {other:?} for a family")),
        None => None,
    };
    let check = eigenvalue_check(benchmark, None, explicit, &points)?;
    let verified = check
        .as_ref()
        .map(|m| m.complete() && m.max_distance <= MATCH_TOL)
        .unwrap_or(true);

    let report = AnalysisReport {
        schema: report::SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").into(),
        input_echo: InputEcho {
            kind: "family".into(),
            name: Some(name.into()),
            params,
            polytope: w.domain.as_ref().map(report::polytope_echo),
        },
        superpotential: w.render(),
        critical_points: points.iter().map(report::critical_point_out).collect(),
        eigenvalue_check: check.as_ref().map(report::multiset_match_out),
        verdicts: None,
        config_echo: config_echo(solver, None, benchmark, false),
    };
    emit(out, &report::to_json(&report))?;
    Ok(verified)
}

fn cmd_wallcross(
    preset: &str,
    classical: bool,
    lambda: Option<f64>,
    l1: Option<f64>,
    l2: Option<f64>,
    solver: &SolverFlags,
    out: &OutFlag,
) -> CmdResult {
    let mut params = BTreeMap::new();
    // Symbolic pair for the exact identity, numeric pair for lost values.
    let (src_sym, dst_sym, src_num, dst_num, sym_params) = match preset {
        "cp2" => {
            let l = lambda.unwrap_or(3.0 * 10f64.ln());
            params.insert("lambda".into(), l);
            (
                cp2_chekanov(None),
                cp2_clifford(None),
                cp2_chekanov(Some(l)),
                cp2_clifford(Some(l)),
                vec!["q"],
            )
        }
        "p1p1" => {
            let l1 = l1.unwrap_or(2.0 * 10f64.ln());
            let l2 = l2.unwrap_or(l1);
            params.insert("l1".into(), l1);
            params.insert("l2".into(), l2);
            (
                p1p1_chekanov(None),
                p1p1_clifford(None),
                p1p1_chekanov(Some((l1, l2))),
                p1p1_clifford(Some((l1, l2))),
                vec!["q1", "q2"],
            )
        }
        other => return Err(format!("unknown preset {other:?} (expected cp2|p1p1)")),
    };
    let src_sym = src_sym.map_err(|e| e.to_string())?;
    let dst_sym = dst_sym.map_err(|e| e.to_string())?;
    let src_num = src_num.map_err(|e| e.to_string())?;
    let dst_num = dst_num.map_err(|e| e.to_string())?;

    let map = if classical {
        // Uncorrected: u -> z2, w -> z1/z2.
        use lgwb::laurent::{LaurentPoly, LaurentRational, SubstitutionMap};
        let z1 = LaurentPoly::var(0, 2, &sym_params);
        let z2 = LaurentPoly::var(1, 2, &sym_params);
        SubstitutionMap::new(vec![
            LaurentRational::from_poly(z2.clone()),
            LaurentRational::new(z1, z2).map_err(|e| e.to_string())?,
        ])
        .map_err(|e| e.to_string())?
    } else {
        gluing_uw(&sym_params)
    };
    let verdict = verify_chart_identity(&src_sym, &dst_sym, &map).map_err(|e| e.to_string())?;
    diag!("chart identity holds: {}", verdict.identity_holds);
    let mono = monodromy(
        &lgwb::wallcross::classical_pos(),
        &lgwb::wallcross::classical_neg(),
    )
    .map_err(|e| e.to_string())?;
    let lost = lost_values(&src_num, &dst_num, &gluing_uw(&[]), &solver.config())
        .map_err(|e| e.to_string())?;

    let dst_vars = dst_sym.var_refs();
    let gluing: GluingOut = report::gluing_out(&verdict, &dst_vars);
    let mut points = solve_critical(&dst_num, &solver.config()).map_err(|e| e.to_string())?;
    sort_points(&mut points);

    let report = AnalysisReport {
        schema: report::SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").into(),
        input_echo: InputEcho {
            kind: "wallcross".into(),
            name: Some(preset.into()),
            params,
            polytope: None,
        },
        superpotential: dst_num.render(),
        critical_points: points.iter().map(report::critical_point_out).collect(),
        eigenvalue_check: None,
        verdicts: Some(VerdictsOut {
            gluing: Some(gluing),
            monodromy: Some(mono),
            lost_values: Some(report::multiset_match_out(&lost)),
            renormalization: None,
        }),
        config_echo: config_echo(solver, None, None, classical),
    };
    emit(out, &report::to_json(&report))?;
    Ok(verdict.identity_holds)
}

fn cmd_plotdata(
    path: &std::path::Path,
    inflate: Option<f64>,
    solver: &SolverFlags,
    out: &OutFlag,
) -> CmdResult {
    let base = load_polytope(path)?;
    let poly = match inflate {
        Some(k) => base.inflate(&rat_from_f64(k / TAU)),
        None => base,
    };
    if poly.dim() != 2 {
        return Err("plotdata requires a 2-dimensional polytope".into());
    }
    let w = toric_superpotential_with(&poly, Mode::Numeric, DelzantPolicy::Allow)
        .map_err(|e| e.to_string())?;
    let points = solve_critical(&w, &solver.config()).map_err(|e| e.to_string())?;

    // Order vertices counterclockwise around the centroid for a closed loop.
    let verts = poly.vertices();
    let mut vcoords: Vec<(f64, f64)> = verts
        .iter()
        .map(|v| (rat_to_f64(&v.coords[0]), rat_to_f64(&v.coords[1])))
        .collect();
    let (cx, cy) = vcoords
        .iter()
        .fold((0.0, 0.0), |(sx, sy), (x, y)| (sx + x, sy + y));
    let (cx, cy) = (cx / vcoords.len() as f64, cy / vcoords.len() as f64);
    vcoords.sort_by(|a, b| {
        (a.1 - cy)
            .atan2(a.0 - cx)
            .total_cmp(&(b.1 - cy).atan2(b.0 - cx))
    });

    let mut csv = String::from("kind,x,y\n");
    for (x, y) in &vcoords {
        csv.push_str(&format!(
            "vertex,{},{}\n",
            report::format_f64(*x),
            report::format_f64(*y)
        ));
    }
    if let Some(first) = vcoords.first() {
        csv.push_str(&format!(
            "vertex,{},{}\n",
            report::format_f64(first.0),
            report::format_f64(first.1)
        ));
    }
    for p in &points {
        let img = LatticePolytope::log_map(&p.z).map_err(|e| e.to_string())?;
        csv.push_str(&format!(
            "critical,{},{}\n",
            report::format_f64(img[0]),
            report::format_f64(img[1])
        ));
    }
    emit(out, &csv)?;
    Ok(true)
}

fn cmd_renormalize(
    path: &std::path::Path,
    k: f64,
    solver: &SolverFlags,
    out: &OutFlag,
) -> CmdResult {
    let base = load_polytope(path)?;
    let inflated = base.inflate(&rat_from_f64(k / TAU));
    let w0 = toric_superpotential_with(&base, Mode::Numeric, DelzantPolicy::Allow)
        .map_err(|e| e.to_string())?;
    let wk = toric_superpotential_with(&inflated, Mode::Numeric, DelzantPolicy::Allow)
        .map_err(|e| e.to_string())?;

    // Termwise comparison of e^k W_k against W.
    let t0 = numeric_terms(&w0);
    let tk = numeric_terms(&wk);
    let mut max_rel = 0.0f64;
    let ek = k.exp();
    if t0.keys().ne(tk.keys()) {
        return Err("inflation changed the monomial support".into());
    }
    for (e, &c0) in &t0 {
        let rescaled = ek * tk[e];
        max_rel = max_rel.max((rescaled - c0).abs() / c0.abs());
    }
    let identity_holds = max_rel <= 1e-12;
    diag!("renormalization max relative error: {max_rel:e}");

    let mut points = solve_critical(&wk, &solver.config()).map_err(|e| e.to_string())?;
    filter_in_domain(&mut points, &inflated, DOMAIN_TOL).map_err(|e| e.to_string())?;

    let report = AnalysisReport {
        schema: report::SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").into(),
        input_echo: InputEcho {
            kind: "polytope".into(),
            name: inflated.name().map(str::to_string),
            params: BTreeMap::new(),
            polytope: Some(report::polytope_echo(&inflated)),
        },
        superpotential: wk.render(),
        critical_points: points.iter().map(report::critical_point_out).collect(),
        eigenvalue_check: None,
        verdicts: Some(VerdictsOut {
            gluing: None,
            monodromy: None,
            lost_values: None,
            renormalization: Some(RenormalizationOut {
                k,
                max_rel_error: max_rel,
                identity_holds,
            }),
        }),
        config_echo: config_echo(solver, Some(k), None, false),
    };
    emit(out, &report::to_json(&report))?;
    Ok(identity_holds)
}
