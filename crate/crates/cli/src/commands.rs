use std::path::PathBuf;

use hyperrho::analytic::f_r;
use hyperrho::labeling::{
    certify_by_combination, construct_normal_labeling, verify_consistency, verify_normal,
};
use hyperrho::search::certify_space;
use hyperrho::{
    BoundCertificate, EqualityClass, Error, Hypergraph, LabelingReport, SearchSpace,
    SolverOptions, Verdict,
};
use serde_json::{json, Value};
use thiserror::Error;

use crate::render::{sig, text_pairs, tsv_pairs, Report};

/// `bound` exits 3 once the radius exceeds `f_r(e)` by more than this.
const GAP_FLOOR: f64 = -1e-6;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("certificate failed: {0}")]
    Certificate(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Core(Error::NotConverged) => 2,
            CliError::Core(Error::TheoremViolation(_)) => 3,
            CliError::Core(_) => 1,
            CliError::Certificate(_) => 4,
        }
    }
}

fn describe(h: &Hypergraph) -> String {
    match h.complete_order() {
        Some(k) if h.covered_vertices().len() == k => format!("K_{k}^{}", h.rank()),
        _ => h
            .edges()
            .iter()
            .map(|e| e.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join(" | "),
    }
}

pub fn rho(h: &Hypergraph, opts: &SolverOptions) -> Result<Report, CliError> {
    let sol = hyperrho::spectral_radius(h, opts)?;
    let json = json!({
        "command": "rho",
        "rank": h.rank(),
        "vertex_count": h.vertex_count(),
        "edges": h.edge_count(),
        "rho": sol.rho,
        "lower": sol.lower,
        "upper": sol.upper,
        "residual": sol.residual,
        "iterations": sol.iterations,
        "converged": sol.converged,
        "component": sol.component,
        "perron": sol.perron,
    });
    let perron = sol.perron.iter().map(|&x| sig(x)).collect::<Vec<_>>();
    let pairs = [
        ("rho", sig(sol.rho)),
        ("bracket", format!("[{}, {}]", sig(sol.lower), sig(sol.upper))),
        ("residual", sig(sol.residual)),
        ("iterations", sol.iterations.to_string()),
        ("converged", sol.converged.to_string()),
        ("perron", perron.join(" ")),
    ];
    let mut tsv = tsv_pairs(&pairs[..5]);
    for (v, x) in sol.perron.iter().enumerate() {
        tsv.push_str(&format!("x{v}\t{x}\n"));
    }
    let mut report = Report::new(json, text_pairs(&pairs), tsv);
    if !sol.converged {
        report.code = 2;
        report.diagnostic = Some(format!(
            "error: no convergence after {} iterations (bracket width {:e})",
            sol.iterations,
            sol.upper - sol.lower
        ));
    }
    Ok(report)
}

fn class_name(c: EqualityClass) -> &'static str {
    match c {
        EqualityClass::Strict => "strict",
        EqualityClass::EqualityComplete => "equality_complete",
        EqualityClass::EqualityViolation => "equality_violation",
        EqualityClass::BoundViolation => "bound_violation",
    }
}

pub fn bound(h: &Hypergraph, opts: &SolverOptions) -> Result<Report, CliError> {
    let sol = hyperrho::spectral_radius(h, opts)?;
    let cert = BoundCertificate::new(h, &sol)?;
    let json = json!({
        "command": "bound",
        "rank": cert.rank,
        "vertex_count": cert.vertex_count,
        "e": cert.e,
        "f_r": cert.fr_e,
        "rho": cert.rho,
        "gap": cert.gap,
        "equality_class": cert.equality_class,
        "converged": sol.converged,
    });
    let pairs = [
        ("e", cert.e.to_string()),
        ("f_r", sig(cert.fr_e)),
        ("rho", sig(cert.rho)),
        ("gap", sig(cert.gap)),
        ("equality_class", class_name(cert.equality_class).to_string()),
    ];
    let mut report = Report::new(json, text_pairs(&pairs), tsv_pairs(&pairs));
    if !sol.converged {
        report.code = 2;
        report.diagnostic = Some("error: solver did not converge".into());
    } else if cert.gap < GAP_FLOOR || cert.is_violation() {
        report.code = 3;
        report.diagnostic = Some(format!(
            "error: rho = {} against f_r(e) = {} ({})",
            cert.rho,
            cert.fr_e,
            class_name(cert.equality_class)
        ));
    }
    Ok(report)
}

pub struct CertifyArgs {
    pub combine: bool,
    pub vertex: Option<usize>,
    pub labeling_out: Option<PathBuf>,
    pub check_tol: Option<f64>,
}

fn failing_slack(report: &LabelingReport) -> String {
    let mut parts = Vec::new();
    if report.vertex_slack > report.tol {
        parts.push(format!("vertex slack {:e}", report.vertex_slack));
    }
    if report.edge_slack > report.tol {
        parts.push(format!("edge slack {:e}", report.edge_slack));
    }
    if let Some(d) = report.consistency_defect.filter(|&d| d > report.tol) {
        parts.push(format!("consistency defect {d:e}"));
    }
    format!("{} above tolerance {:e}", parts.join(", "), report.tol)
}

fn write_labeling(path: &PathBuf, tsv: &str) -> Result<(), CliError> {
    std::fs::write(path, tsv).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn certify(h: &Hypergraph, opts: &SolverOptions, args: &CertifyArgs) -> Result<Report, CliError> {
    let comps = h.non_trivial_components().len();
    if comps != 1 {
        return Err(Error::NotConnected(comps).into());
    }
    let sol = hyperrho::spectral_radius(h, opts)?;
    if !sol.converged {
        return Err(Error::NotConverged.into());
    }
    let tol = args.check_tol.unwrap_or((10.0 * sol.residual).max(1e-9));
    let (b, alpha) = construct_normal_labeling(h, &sol)?;
    let normal = verify_normal(&b, alpha, tol);
    let consistency = verify_consistency(&b, tol)?;
    if !normal.verdict.passed() {
        return Err(CliError::Certificate(failing_slack(&normal)));
    }
    if !consistency.verdict.passed() {
        return Err(CliError::Certificate(failing_slack(&consistency)));
    }
    let r = h.rank();
    let bound = alpha.powf(-1.0 / r as f64);

    let mut pairs = vec![
        ("rho", sig(sol.rho)),
        ("alpha", sig(alpha)),
        ("bound", sig(bound)),
        ("vertex_slack", sig(normal.vertex_slack)),
        ("edge_slack", sig(normal.edge_slack)),
        ("consistency_defect", sig(consistency.consistency_defect.unwrap_or(0.0))),
        ("verdict", "normal".to_string()),
    ];
    let mut labeling_tsv = b.to_tsv();

    let combination = if args.combine && r >= 3 {
        let v = args.vertex.unwrap_or_else(|| sol.argmax());
        let cert = certify_by_combination(h, v, opts, tol).map_err(|e| match e {
            Error::VertexOutOfRange { .. } | Error::NotConverged => CliError::Core(e),
            other => CliError::Certificate(other.to_string()),
        })?;
        if !cert.report.verdict.is_subnormal() {
            return Err(CliError::Certificate(failing_slack(&cert.report)));
        }
        pairs.extend([
            ("combine_vertex", cert.combined.vertex.to_string()),
            ("combine_degree", cert.combined.degree.to_string()),
            ("x", sig(cert.combined.x)),
            ("y", sig(cert.combined.y)),
            ("combined_alpha", sig(cert.combined.alpha)),
            ("combined_bound", sig(cert.bound)),
            ("combined_verdict", verdict_name(cert.report.verdict).to_string()),
        ]);
        labeling_tsv = cert.combined.labeling.to_tsv();
        json!({
            "vertex": cert.combined.vertex,
            "degree": cert.combined.degree,
            "f_r": cert.combined.fr_e,
            "x": cert.combined.x,
            "y": cert.combined.y,
            "alpha": cert.combined.alpha,
            "link_rho": cert.link_rho,
            "base_rho": cert.base_rho,
            "empty_base": cert.combined.empty_base,
            "vertex_slack": cert.report.vertex_slack,
            "edge_slack": cert.report.edge_slack,
            "verdict": cert.report.verdict,
            "bound": cert.bound,
        })
    } else {
        Value::Null
    };
    if args.combine && r < 3 {
        eprintln!("note: rank {r} has no combined certificate; emitting the normal labeling only");
    }
    if let Some(path) = &args.labeling_out {
        write_labeling(path, &labeling_tsv)?;
    }

    let json = json!({
        "command": "certify",
        "rank": r,
        "e": h.edge_count(),
        "rho": sol.rho,
        "residual": sol.residual,
        "tol": tol,
        "alpha": alpha,
        "bound": bound,
        "vertex_slack": normal.vertex_slack,
        "edge_slack": normal.edge_slack,
        "consistency_defect": consistency.consistency_defect,
        "verdict": Verdict::Normal,
        "combination": combination,
    });
    Ok(Report::new(json, text_pairs(&pairs), tsv_pairs(&pairs)))
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Normal => "normal",
        Verdict::NotNormal => "not_normal",
        Verdict::Subnormal => "subnormal",
        Verdict::StrictlySubnormal => "strictly_subnormal",
        Verdict::NotSubnormal => "not_subnormal",
        Verdict::Consistent => "consistent",
        Verdict::Inconsistent => "inconsistent",
    }
}

fn edges_string(edges: &[Vec<usize>]) -> String {
    edges
        .iter()
        .map(|e| e.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn search(space: &SearchSpace, opts: &SolverOptions, csv: bool) -> Result<Report, CliError> {
    let certs = certify_space(space, opts)?;
    let fr_e = hyperrho::fr_value(space.rank, space.edges as f64)?;
    let best = certs
        .iter()
        .fold(None::<&BoundCertificate>, |acc, c| match acc {
            Some(b) if b.rho >= c.rho => Some(b),
            _ => Some(c),
        });
    let equalities = certs
        .iter()
        .filter(|c| c.equality_class == EqualityClass::EqualityComplete)
        .count();
    let violations = certs.iter().filter(|c| c.is_violation()).count();

    let maximizer = best.map(|b| {
        let h = Hypergraph::new(b.rank, b.vertex_count, b.edges.clone()).expect("canonical form");
        (describe(&h), b)
    });
    let json = json!({
        "command": "search",
        "rank": space.rank,
        "edges": space.edges,
        "max_vertices": space.max_vertices,
        "connected": space.connected,
        "classes": certs.len(),
        "f_r": fr_e,
        "maximizer": maximizer.as_ref().map(|(name, b)| json!({
            "name": name,
            "edges": b.edges,
            "rho": b.rho,
            "gap": b.gap,
            "equality_class": b.equality_class,
        })),
        "equality_complete": equalities,
        "violations": violations,
        "certificates": certs,
    });
    let mut pairs = vec![
        ("classes", certs.len().to_string()),
        ("f_r", sig(fr_e)),
        ("equality_complete", equalities.to_string()),
        ("violations", violations.to_string()),
    ];
    if let Some((name, b)) = &maximizer {
        pairs.push(("maximizer", name.clone()));
        pairs.push(("max_rho", sig(b.rho)));
        pairs.push(("gap", sig(b.gap)));
    }
    let mut report = Report::new(json, text_pairs(&pairs), tsv_pairs(&pairs));
    if csv {
        let mut out = String::from("edges,rho,f_r,gap,equality_class\n");
        for c in &certs {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                edges_string(&c.edges),
                c.rho,
                c.fr_e,
                c.gap,
                class_name(c.equality_class)
            ));
        }
        report.raw = Some(out);
    }
    if violations > 0 {
        report.code = 3;
        report.diagnostic = Some(format!("error: {violations} class(es) meet or exceed f_r(e)"));
    }
    Ok(report)
}

pub fn fr(rank: usize, from: f64, to: f64, step: f64) -> Result<Report, CliError> {
    if from.is_nan() || to.is_nan() || from > to {
        return Err(CliError::Input(format!("empty range {from}..{to}")));
    }
    let count = ((to - from) / step * (1.0 + 1e-12)).floor() as usize + 1;
    let mut rows = Vec::with_capacity(count);
    for i in 0..count {
        rows.push(f_r(rank, from + step * i as f64)?);
    }
    let mut text = format!("{:>12}  {:>12}  {:>12}  {:>12}\n", "e", "s", "f_r", "f_r'");
    let mut tsv = String::from("e\ts\tf_r\tderivative\n");
    for ev in &rows {
        let d = ev.derivative.map_or("-".to_string(), sig);
        text.push_str(&format!(
            "{:>12}  {:>12}  {:>12}  {:>12}\n",
            sig(ev.e),
            sig(ev.s),
            sig(ev.value),
            d
        ));
        tsv.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            ev.e,
            ev.s,
            ev.value,
            ev.derivative.map_or("".to_string(), |d| d.to_string())
        ));
    }
    let json = json!({
        "command": "fr",
        "rank": rank,
        "rows": rows.iter().map(|ev| json!({
            "e": ev.e,
            "s": ev.s,
            "f_r": ev.value,
            "derivative": ev.derivative,
        })).collect::<Vec<_>>(),
    });
    Ok(Report::new(json, text, tsv))
}
