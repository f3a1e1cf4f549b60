//! Named verification suites and their dispatch, shared by the binary and the
//! acceptance tests.

use crate::liedata::{AlgType, AlgebraData, LieError};
use crate::lop::lowrank::check_lowrank;
use crate::lop::relrbar::check_relrbar;
use crate::lop::structure::{check_mirror_relations, check_main_structure, check_psi_consistency, psi_gauss_pair, z_series};
use crate::lop::{build_lops_checked, check_gauss, gaussian_generators, LOperators};
use crate::poly::{U, V};
use crate::quasidet::GaussFactors;
use crate::relation::GaussPair;
use crate::report::SuiteReport;
use crate::ring::Ring;
use crate::rmatrix::{check_crossing, check_unitarity, check_ybe, RCatalog};
use crate::scalars::Scalar;
use crate::series::{f_rhs, f_series, verify_fu_product, Series};
use crate::tensor::Mat;
use crate::vecrep::check_drinfeld_window;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::time::Instant;
use thiserror::Error;

/// Every suite name, in output order.
pub const SUITES: [&str; 13] = [
    "cartan",
    "crossing",
    "drinfeld-rep",
    "eiprei",
    "f-series",
    "gauss",
    "lowrank",
    "main-structure",
    "psi",
    "relrbar",
    "unitarity",
    "ybe",
    "zseries",
];

const R_SUITES: [&str; 3] = ["ybe", "unitarity", "crossing"];
const L_SUITES: [&str; 7] = ["gauss", "lowrank", "relrbar", "eiprei", "zseries", "psi", "main-structure"];

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite '{0}'")]
    Unknown(String),
    #[error(transparent)]
    Rank(#[from] LieError),
    #[error("N = {n} exceeds QAV_MAX_N = {max}; raise QAV_MAX_N to run cubic-size checks")]
    Resource { n: usize, max: usize },
}

#[derive(Clone, Debug)]
pub struct Options {
    pub order: usize,
    pub window: usize,
    /// ψ_m depth for the psi suite; the smallest valid m when absent.
    pub m: Option<usize>,
    pub max_n: usize,
}

impl Default for Options {
    fn default() -> Options {
        Options { order: 10, window: 3, m: None, max_n: crate::rmatrix::max_n_from_env() }
    }
}

/// Suite names selected by `name`, which is a suite or `all`.
pub fn select(name: &str) -> Result<Vec<&'static str>, SuiteError> {
    if name == "all" {
        return Ok(SUITES.to_vec());
    }
    SUITES.iter().find(|s| **s == name).map(|s| vec![*s]).ok_or_else(|| SuiteError::Unknown(name.into()))
}

fn needs_guard(suite: &str) -> bool {
    R_SUITES.contains(&suite) || L_SUITES.contains(&suite)
}

/// The order at which L⁺ and L⁻ are built: relrbar needs 2W modes.
pub fn lop_order(suites: &[&str], opts: &Options) -> usize {
    if suites.contains(&"relrbar") {
        opts.order.max(2 * opts.window)
    } else {
        opts.order
    }
}

pub struct Shared {
    pub cat: Option<Result<RCatalog, String>>,
    pub lops: Option<Result<(LOperators, GaussPair), String>>,
}

/// Builds whatever the selected suites share.
pub fn prepare(alg: &AlgebraData, suites: &[&str], opts: &Options) -> Result<Shared, SuiteError> {
    if suites.iter().any(|s| needs_guard(s)) && alg.dim > opts.max_n {
        return Err(SuiteError::Resource { n: alg.dim, max: opts.max_n });
    }
    let want_r = suites.iter().any(|s| R_SUITES.contains(s));
    let want_l = suites.iter().any(|s| L_SUITES.contains(s));
    let k = lop_order(suites, opts);
    let (cat, lops) = rayon::join(
        || want_r.then(|| RCatalog::build(alg, opts.order).map_err(|e| e.to_string())),
        || {
            want_l.then(|| {
                let l = build_lops_checked(alg, k, k, opts.max_n).map_err(|e| e.to_string())?;
                let g = gaussian_generators(&l).map_err(|e| e.to_string())?;
                Ok((l, g))
            })
        },
    );
    Ok(Shared { cat, lops })
}

/// Runs the selected suites in parallel; reports come back in `suites` order.
pub fn run(alg: &AlgebraData, suites: &[&str], opts: &Options) -> Result<Vec<SuiteReport>, SuiteError> {
    run_with(alg, suites, opts).map(|x| x.0)
}

fn failed(suite: &str, alg: &AlgebraData, what: &str, why: &str) -> SuiteReport {
    let mut rep = SuiteReport::new(suite, &alg.name());
    rep.fail(what, why);
    rep
}

fn run_one(alg: &AlgebraData, suite: &str, opts: &Options, shared: &Shared) -> SuiteReport {
    let t0 = Instant::now();
    let mut rep = if R_SUITES.contains(&suite) {
        match shared.cat.as_ref().expect("catalog prepared") {
            Err(e) => failed(suite, alg, "R-matrix construction", e),
            Ok(cat) => match suite {
                "ybe" => check_ybe(cat, opts.max_n).unwrap_or_else(|e| failed(suite, alg, "YBE", &e.to_string())),
                "unitarity" => check_unitarity(cat),
                _ => check_crossing(cat, opts.order).unwrap_or_else(|e| failed(suite, alg, "crossing", &e.to_string())),
            },
        }
    } else if L_SUITES.contains(&suite) {
        match shared.lops.as_ref().expect("L-operators prepared") {
            Err(e) => failed(suite, alg, "L-operator construction", e),
            Ok((lops, gp)) => run_lop_suite(alg, suite, opts, lops, gp),
        }
    } else {
        match suite {
            "cartan" => check_cartan(alg),
            "f-series" => check_f_series(alg, opts.order),
            _ => check_drinfeld_window(alg, opts.window),
        }
    };
    rep.suite = suite.into();
    rep.elapsed_ms = t0.elapsed().as_millis();
    rep
}

/// ψ_m depth reducing the algebra to B1 or D2.
pub fn lowrank_depth(alg: &AlgebraData) -> usize {
    match alg.typ {
        AlgType::B => alg.n - 1,
        AlgType::D => alg.n - 2,
    }
}

fn run_lop_suite(alg: &AlgebraData, suite: &str, opts: &Options, lops: &LOperators, gp: &GaussPair) -> SuiteReport {
    match suite {
        "gauss" => check_gauss(lops, gp),
        "lowrank" => {
            let m = lowrank_depth(alg);
            let small = AlgebraData::new(alg.typ, alg.n - m).expect("reduced rank is valid");
            if m == 0 {
                return check_lowrank(gp, alg.typ, &alg.name(), gp.order());
            }
            match psi_gauss_pair(lops, gp, m) {
                Ok(red) => {
                    let mut rep = check_lowrank(&red, alg.typ, &alg.name(), red.order());
                    rep.convention(format!("applied to the psi_{m} images, which carry the {} relations", small.name()));
                    rep
                }
                Err(e) => failed(suite, alg, &format!("psi_{m} images"), &e),
            }
        }
        "relrbar" => check_relrbar(gp, alg, opts.window),
        "eiprei" => check_mirror_relations(alg, gp),
        "zseries" => z_series(lops, gp).report,
        "psi" => {
            let max = match alg.typ {
                AlgType::B => alg.n.saturating_sub(1),
                AlgType::D => alg.n.saturating_sub(2),
            };
            match opts.m {
                Some(m) => check_psi_consistency(lops, gp, m),
                None if max >= 1 => check_psi_consistency(lops, gp, 1),
                None => {
                    let mut rep = SuiteReport::new("psi", &alg.name()).with_order(gp.order());
                    rep.skip("psi_m consistency", format!("no m leaves a supported algebra of type {} below rank {}", alg.typ, alg.n));
                    rep
                }
            }
        }
        _ => check_main_structure(alg, gp),
    }
}

/// B = CA and B(q): symmetry, exact inverses and the closed-form tables.
pub fn check_cartan(alg: &AlgebraData) -> SuiteReport {
    let n = alg.n;
    let mut rep = SuiteReport::new("cartan", &alg.name());
    let sym_i = |m: &[Vec<i64>]| (0..n).all(|i| (0..n).all(|j| m[i][j] == m[j][i]));
    rep.record("B is symmetric", if sym_i(&alg.bmat) { Ok(()) } else { Err(format!("{:?}", alg.bmat)) });
    let mut bad = None;
    for i in 0..n {
        for j in 0..n {
            let a = &alg.roots[i];
            let b = &alg.roots[j];
            let ab: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
            let aa: i64 = a.iter().map(|x| x * x).sum();
            if 2 * ab != alg.cartan[i][j] * aa {
                bad.get_or_insert(format!("A_{},{} = {} vs 2({ab})/{aa}", i + 1, j + 1, alg.cartan[i][j]));
            }
        }
    }
    rep.record("A_ij = 2(alpha_i, alpha_j)/(alpha_i, alpha_i)", bad.map_or(Ok(()), Err));
    let mut bad = None;
    for i in 0..n {
        for j in 0..n {
            let mut acc = Scalar::zero();
            for k in 0..n {
                acc = acc.add(&Scalar::int(alg.bmat[i][k]).mul(&alg.btilde[k][j]));
            }
            let want = if i == j { Scalar::one() } else { Scalar::zero() };
            if acc != want {
                bad.get_or_insert(format!("({},{}): {acc}", i + 1, j + 1));
            }
            if alg.btilde[i][j] != alg.btilde_closed(i + 1, j + 1) {
                bad.get_or_insert(format!("B-tilde ({},{}) = {} vs table {}", i + 1, j + 1, alg.btilde[i][j], alg.btilde_closed(i + 1, j + 1)));
            }
        }
    }
    rep.record("B * B-tilde = 1 and B-tilde matches its closed form", bad.map_or(Ok(()), Err));
    let bq = alg.bq();
    rep.record(
        "B(q) is symmetric",
        if (0..n).all(|i| (0..n).all(|j| bq[i][j] == bq[j][i])) { Ok(()) } else { Err("B(q) differs from its transpose".into()) },
    );
    match alg.btilde_q() {
        Ok(inv) => {
            rep.pass("B(q) * B-tilde(q) = 1 and B-tilde(q) matches its closed form");
            rep.record(
                "B-tilde(q) is symmetric",
                if (0..n).all(|i| (0..n).all(|j| inv[i][j] == inv[j][i])) {
                    Ok(())
                } else {
                    Err("B-tilde(q) differs from its transpose".into())
                },
            );
        }
        Err(e) => rep.fail("B(q) * B-tilde(q) = 1 and B-tilde(q) matches its closed form", e.to_string()),
    }
    rep
}

/// f(u): the functional equation, freeness of the coefficients, and the
/// q-adic comparison with the truncated infinite product for k ≤ 4.
pub fn check_f_series(alg: &AlgebraData, order: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("f-series", &alg.name()).with_order(order);
    let f = match f_series(alg, order) {
        Ok(f) => f,
        Err(e) => return failed("f-series", alg, "solve f(u) f(u xi) = r(u)", &e.to_string()),
    };
    let lhs = f.rmul(&f.scale_var(&alg.xi));
    let rhs = f_rhs(alg, order);
    rep.record(
        format!("f(u) f(u xi) = 1/((1-uq^-2)(1-uq^2)(1-u xi)(1-u/xi)) through u^{order}"),
        match (0..=order).find(|&k| lhs.coeff(k) != rhs.coeff(k)) {
            None => Ok(()),
            Some(k) => Err(format!("u^{k}: {} vs {}", lhs.coeff(k), rhs.coeff(k))),
        },
    );
    rep.record("f(0) = 1", if f.coeff(0).is_one() { Ok(()) } else { Err(f.coeff(0).to_string()) });
    let bad = (0..=order).find(|&k| {
        let c = f.coeff(k);
        !(c.is_w_free() && c.is_free_of(U) && c.is_free_of(V))
    });
    rep.record(
        format!("f_k is free of u, v and w for k <= {order}"),
        bad.map_or(Ok(()), |k| Err(format!("f_{k} = {}", f.coeff(k)))),
    );
    match verify_fu_product(alg, order.min(4), order) {
        Ok(r) => rep.merge(r),
        Err(e) => rep.fail("q-adic product comparison", e.to_string()),
    }
    rep
}

fn series_json(s: &Series<Mat>) -> Value {
    json!(s.coeffs().iter().map(|c| c.to_json()).collect::<Vec<_>>())
}

fn factors_json(g: &GaussFactors<Series<Mat>>) -> Value {
    let size = g.size();
    let mut f = Vec::new();
    let mut e = Vec::new();
    for i in 0..size {
        for j in 0..i {
            f.push(json!({"i": i + 1, "j": j + 1, "coeffs": series_json(&g.f[i][j])}));
            e.push(json!({"i": j + 1, "j": i + 1, "coeffs": series_json(&g.e[j][i])}));
        }
    }
    let h: Vec<Value> = g.h.iter().enumerate().map(|(i, x)| json!({"i": i + 1, "coeffs": series_json(x)})).collect();
    json!({"f": f, "h": h, "e": e})
}

/// Gauss factors of L⁺ and L⁻ in the matrix JSON format.
pub fn gauss_dump(alg: &AlgebraData, lops: &LOperators, gp: &GaussPair) -> Value {
    json!({
        "schema": 1,
        "algebra": alg.name(),
        "order": gp.order(),
        "wiring": lops.wiring.describe(),
        "plus": factors_json(&gp.plus),
        "minus": factors_json(&gp.minus),
    })
}

/// The shared object a check run can dump: R-bar for the R-matrix suites,
/// the Gauss factors otherwise.
pub fn dump(alg: &AlgebraData, shared: &Shared) -> Option<Value> {
    if let Some(Ok((l, g))) = &shared.lops {
        return Some(gauss_dump(alg, l, g));
    }
    if let Some(Ok(cat)) = &shared.cat {
        return Some(json!({"schema": 1, "algebra": alg.name(), "rbar": cat.rbar.to_json()}));
    }
    None
}

/// The JSON document for a list of reports.
pub fn reports_json(reports: &[SuiteReport]) -> Value {
    json!({"schema": 1, "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>()})
}

/// As `run`, also returning the shared data for callers that dump it.
pub fn run_with(alg: &AlgebraData, suites: &[&str], opts: &Options) -> Result<(Vec<SuiteReport>, Shared), SuiteError> {
    let shared = prepare(alg, suites, opts)?;
    let reports = suites.par_iter().map(|s| run_one(alg, s, opts, &shared)).collect();
    Ok((reports, shared))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_covers_every_suite_once() {
        let mut s = select("all").unwrap();
        s.dedup();
        assert_eq!(s.len(), 13);
        assert!(select("nope").is_err());
    }

    #[test]
    fn cartan_passes_low_ranks() {
        for (t, n) in [(AlgType::B, 1), (AlgType::B, 4), (AlgType::D, 2), (AlgType::D, 4)] {
            let r = check_cartan(&AlgebraData::new(t, n).unwrap());
            assert!(r.passed(), "{}", r.to_text());
        }
    }

    #[test]
    fn guard_rejects_large_n() {
        let alg = AlgebraData::new(AlgType::B, 9).unwrap();
        let opts = Options { max_n: 6, ..Options::default() };
        assert!(matches!(run(&alg, &["ybe"], &opts), Err(SuiteError::Resource { .. })));
        // Suites without cubic-size work are not guarded.
        assert!(run(&alg, &["cartan"], &opts).is_ok());
    }
}
