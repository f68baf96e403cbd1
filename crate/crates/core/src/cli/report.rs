use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::{fmt_rational, Parity, Rational};
use crate::cfunction::{c_evaluate, high_enough, km_nonvanishing, zeros_predicate, CFactor, FactorStatus, ZeroClause};
use crate::chains::{apply_reflection, compatible_chain, is_palindrome, reversal_chain, simple_system, DeltaEpsChain};
use crate::error::Result;
use crate::pair::{build_pair, kp_dimensions, PairParams};
use crate::roots::restricted::weyl_vector_supertrace_from;
use crate::roots::{
    full_root_table, oracle_verify_roots, positive_closed_form, prop_rho_checks, weyl_vector, AStarWeight, HWeight, RestrictedRootDatum,
    RootSystem,
};
use crate::sphericity::{classify_with, enumerate_spherical, gl_dominance_check, self_dual_check, SphericityReport};

const SCHEMA: u64 = 1;

fn r(q: &Rational) -> Value {
    Value::String(fmt_rational(q))
}

fn params_json(p: &PairParams) -> Value {
    json!({ "p": p.p, "q": p.q, "r": p.r, "s": p.s })
}

fn astar(w: &AStarWeight) -> Value {
    json!({ "delta": w.ldelta.iter().map(r).collect::<Vec<_>>(), "eps": w.leps.iter().map(r).collect::<Vec<_>>() })
}

fn hweight(w: &HWeight) -> Value {
    json!({
        "name": w.to_string(),
        "delta": w.delta.iter().map(r).collect::<Vec<_>>(),
        "eps": w.eps.iter().map(r).collect::<Vec<_>>(),
    })
}

fn float(x: f64) -> String {
    format!("{x:.11e}")
}

fn complex(z: Option<Complex64>) -> Value {
    match z {
        Some(z) => json!({ "re": float(z.re), "im": float(z.im) }),
        None => Value::Null,
    }
}

fn header(command: &str, params: &PairParams) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command));
    m.insert("params".into(), params_json(params));
    m
}

fn restricted_json(d: &RestrictedRootDatum) -> Value {
    json!({
        "name": d.name(),
        "root": astar(&d.root),
        "even_dim": d.even_dim,
        "odd_dim": d.odd_dim,
        "m": d.m,
        "m_double": d.m_double,
        "isotropic": d.isotropic,
        "indivisible": d.indivisible,
        "norm": r(&d.norm_sqr()),
    })
}

pub fn pair(params: &PairParams) -> Result<Value> {
    let pair = build_pair(*params)?;
    let (dim_k, dim_p) = kp_dimensions(&pair)?;
    let mut m = header("pair", params);
    m.insert("dims".into(), json!({ "even": params.m(), "odd": params.n() }));
    let n = params.size();
    m.insert(
        "sigma".into(),
        json!((0..n).map(|i| pair.sigma.get(i, i).to_string()).collect::<Vec<_>>()),
    );
    m.insert(
        "h_basis".into(),
        json!(pair
            .h_basis
            .iter()
            .map(|h| json!({ "name": h.slot.to_string(), "matrix": h.matrix.to_string() }))
            .collect::<Vec<_>>()),
    );
    m.insert(
        "a_basis".into(),
        json!(pair.a_elements().map(|h| h.slot.to_string()).collect::<Vec<_>>()),
    );
    m.insert("rank".into(), json!(params.rank()));
    m.insert("dim_k".into(), json!(dim_k));
    m.insert("dim_p".into(), json!(dim_p));
    Ok(Value::Object(m))
}

pub fn roots(params: &PairParams) -> Result<Value> {
    let pair = build_pair(*params)?;
    let table = full_root_table(&pair);
    let report = oracle_verify_roots(&pair)?;
    let mut m = header("roots", params);
    m.insert(
        "roots".into(),
        json!(table
            .iter()
            .map(|row| json!({
                "root": row.root.to_string(),
                "parity": row.parity.to_string(),
                "row": row.table_tag,
                "vector": row.root_vector.to_string(),
            }))
            .collect::<Vec<_>>()),
    );
    m.insert("count".into(), json!(table.len()));
    m.insert("zero_weight_dim".into(), json!(report.zero_weight_dim));
    m.insert("oracle_agrees".into(), json!(report.ok()));
    m.insert("mismatches".into(), json!(report.mismatches));
    Ok(Value::Object(m))
}

pub fn restricted_roots(params: &PairParams) -> Result<Value> {
    let pair = build_pair(*params)?;
    let positive = RootSystem::compute(&pair)?.positive();
    let mut m = header("roots", params);
    m.insert(
        "positive_roots".into(),
        json!(positive.iter().map(restricted_json).collect::<Vec<_>>()),
    );
    m.insert("count".into(), json!(positive.len()));
    Ok(Value::Object(m))
}

pub fn rho(params: &PairParams) -> Result<Value> {
    let pair = build_pair(*params)?;
    let sys = RootSystem::compute(&pair)?;
    let positive = sys.positive();
    let rho = weyl_vector(&positive);
    let rho_str = weyl_vector_supertrace_from(&pair, &sys.full)?;
    let mut m = header("rho", params);
    m.insert("rho".into(), astar(&rho));
    m.insert("rho_supertrace".into(), astar(&rho_str));
    m.insert("agree".into(), json!(rho == rho_str));
    m.insert(
        "pairings".into(),
        json!(positive
            .iter()
            .map(|d| json!({ "root": d.name(), "value": r(&rho.pairing(&d.root)) }))
            .collect::<Vec<_>>()),
    );
    Ok(Value::Object(m))
}

fn clause_name(c: ZeroClause) -> &'static str {
    match c {
        ZeroClause::IsotropicOrthogonal => "isotropic_orthogonal",
        ZeroClause::EvenNonPositive => "even_non_positive",
        ZeroClause::OddNegative => "odd_negative",
    }
}

pub fn cfunction(params: &PairParams, lam: &AStarWeight, shift: bool) -> Value {
    let positive = positive_closed_form(params);
    let rho = weyl_vector(&positive);
    let at = if shift && !positive.is_empty() {
        lam.add(&rho)
    } else {
        lam.clone()
    };
    let c = c_evaluate(&positive, &at);
    let mut m = header("cfunction", params);
    m.insert("weight".into(), astar(lam));
    m.insert("shifted".into(), json!(shift));
    m.insert("evaluated_at".into(), astar(&at));
    let factors: Vec<Value> = c
        .per_factor
        .iter()
        .map(|f| {
            let (kind, extra) = match &f.factor {
                CFactor::Anisotropic { m, m_double, .. } => ("anisotropic", json!({ "m": m, "m_double": m_double })),
                CFactor::Isotropic { qexp, .. } => ("isotropic", json!({ "qexp": qexp })),
            };
            let order = match f.status {
                FactorStatus::Zero(k) | FactorStatus::Pole(k) => k,
                _ => 0,
            };
            json!({
                "root": f.factor.alpha().root_name(),
                "kind": kind,
                "multiplicities": extra,
                "argument": r(&f.argument),
                "status": f.status.label(),
                "order": order,
                "value": complex(f.value),
            })
        })
        .collect();
    m.insert("factors".into(), json!(factors));
    m.insert("value".into(), complex(c.value));
    m.insert("zero_flag".into(), json!(c.zero_flag));
    m.insert("pole_flag".into(), json!(c.pole_flag));
    m.insert("notes".into(), json!(c.notes));
    m.insert("high_enough".into(), json!(high_enough(&positive, lam)));
    m.insert("km_nonvanishing".into(), json!(km_nonvanishing(&positive, lam)));
    if shift {
        let verdict = zeros_predicate(&positive, lam);
        m.insert(
            "zeros_predicate".into(),
            json!({
                "zero": verdict.zero,
                "witnesses": verdict.witnesses.iter().map(|w| json!({
                    "root": w.root.root_name(),
                    "clause": clause_name(w.clause),
                    "value": r(&w.value),
                })).collect::<Vec<_>>(),
            }),
        );
        m.insert("predicate_matches_flag".into(), json!(verdict.zero == c.zero_flag));
    }
    Value::Object(m)
}

fn report_json(rep: &SphericityReport) -> Value {
    json!({
        "weight": astar(&rep.lam),
        "gl_dominant": rep.gl_dominant,
        "cond_even_lambda_alpha": rep.cond_even_lambda_alpha,
        "cond_gl_pairing": rep.cond_gl_pairing,
        "high_enough": rep.high_enough,
        "c_nonzero_at_shift": rep.c_nonzero_at_shift,
        "self_dual": rep.self_dual,
        "atypical": rep.atypical,
        "atypical_witness": rep.atypical_witness.as_ref().map(HWeight::to_string),
        "notes": rep.notes,
    })
}

pub fn classify(params: &PairParams, lam: &AStarWeight) -> Result<Value> {
    let positive = positive_closed_form(params);
    let rep = classify_with(params, &positive, lam)?;
    let mut m = header("spherical", params);
    m.insert("report".into(), report_json(&rep));
    Ok(Value::Object(m))
}

pub fn spherical(params: &PairParams, bound: u32) -> Result<Value> {
    let positive = positive_closed_form(params);
    let weights = enumerate_spherical(params, bound);
    let reports = weights
        .par_iter()
        .map(|lam| classify_with(params, &positive, lam))
        .collect::<Result<Vec<_>>>()?;
    let mut m = header("spherical", params);
    m.insert("bound".into(), json!(bound));
    m.insert("count".into(), json!(reports.len()));
    m.insert(
        "weights".into(),
        json!(reports
            .iter()
            .map(|rep| json!({
                "weight": astar(&rep.lam),
                "high_enough": rep.high_enough,
                "c_nonzero_at_shift": rep.c_nonzero_at_shift,
                "self_dual": rep.self_dual,
            }))
            .collect::<Vec<_>>()),
    );
    m.insert("atypical".into(), json!(reports.first().is_some_and(|rep| rep.atypical)));
    Ok(Value::Object(m))
}

pub fn selfdual(params: &PairParams, lam: &AStarWeight) -> Result<Value> {
    let w = lam.embed(params);
    let chain = compatible_chain(params);
    let rc = reversal_chain(&chain);
    let image = crate::chains::apply_chain(&w, &rc)?;
    let mut m = header("selfdual", params);
    m.insert("weight".into(), astar(lam));
    m.insert("embedded".into(), hweight(&w));
    m.insert("image".into(), hweight(&image));
    m.insert("spherical".into(), json!(gl_dominance_check(params, lam)));
    m.insert("self_dual".into(), json!(self_dual_check(params, lam)?));
    Ok(Value::Object(m))
}

pub fn chain(params: &PairParams, chain: Option<&str>, lam: Option<&AStarWeight>) -> Result<Value> {
    let mut m = header("chain", params);
    let chain = match chain {
        Some(s) => DeltaEpsChain::parse_full(s, params)?,
        None => {
            let PairParams { r, s, .. } = *params;
            let segment = if r > s { format!("e{}..e{r}", s + 1) } else { "empty".into() };
            m.insert("fourth_segment".into(), json!(segment));
            compatible_chain(params)
        }
    };
    m.insert("chain".into(), json!(chain.to_string()));
    m.insert("palindrome".into(), json!(is_palindrome(&chain)));
    let simple = if chain.len() >= 2 { simple_system(&chain)? } else { Vec::new() };
    let parities: Vec<Parity> = chain
        .symbols()
        .windows(2)
        .map(|w| if w[0].kind == w[1].kind { Parity::Even } else { Parity::Odd })
        .collect();
    m.insert(
        "simple_roots".into(),
        json!(simple
            .iter()
            .zip(&parities)
            .map(|(a, p)| json!({ "root": a.to_string(), "parity": p.to_string() }))
            .collect::<Vec<_>>()),
    );
    let rc = reversal_chain(&chain);
    m.insert(
        "reversal_steps".into(),
        json!(rc.steps.iter().map(ToString::to_string).collect::<Vec<_>>()),
    );
    m.insert("odd_steps".into(), json!(rc.odd_count()));
    if let Some(lam) = lam {
        let mut w = lam.embed(params);
        let start = w.clone();
        let mut trajectory = vec![w.to_string()];
        for step in &rc.steps {
            w = apply_reflection(&w, step)?;
            trajectory.push(w.to_string());
        }
        m.insert("weight".into(), astar(lam));
        m.insert("trajectory".into(), json!(trajectory));
        m.insert("image".into(), hweight(&w));
        m.insert("reverses_weight".into(), json!(w == start.neg()));
    }
    Ok(Value::Object(m))
}

struct Suite {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn suite_roots(params: &PairParams) -> Result<Suite> {
    let pair = build_pair(*params)?;
    let rep = oracle_verify_roots(&pair)?;
    let closed = crate::roots::restricted_root_data_closed_form(params);
    let restricted_ok = crate::roots::restricted::restricted_from_full(
        params,
        &RootSystem::compute(&pair)?
            .full
            .iter()
            .map(|(w, p, _)| (w.clone(), *p))
            .collect::<Vec<_>>(),
    ) == closed;
    let mut detail = format!(
        "{} roots, zero-weight dim {}, total {}",
        rep.root_count, rep.zero_weight_dim, rep.bookkeeping_total
    );
    if let Some(first) = rep.mismatches.first() {
        detail = format!("{} mismatches, first: {first}", rep.mismatches.len());
    } else if !restricted_ok {
        detail = "restricted data differ between diagonalization and closed form".into();
    }
    Ok(Suite {
        name: "root_table_oracle",
        passed: rep.ok() && restricted_ok,
        detail,
    })
}

fn suite_rho(params: &PairParams) -> Result<Suite> {
    let pair = build_pair(*params)?;
    let sys = RootSystem::compute(&pair)?;
    let rho = weyl_vector(&sys.positive());
    let rho_str = weyl_vector_supertrace_from(&pair, &sys.full)?;
    Ok(Suite {
        name: "weyl_vector",
        passed: rho == rho_str,
        detail: format!("rho = {rho}, supertrace = {rho_str}"),
    })
}

fn suite_flips(params: &PairParams) -> Result<Suite> {
    let sigma = crate::roots::restricted_root_data_closed_form(params);
    let positive = positive_closed_form(params);
    let checks = prop_rho_checks(&positive, &sigma, 3);
    let failed: Vec<_> = checks.iter().filter(|c| !c.holds()).collect();
    let detail = match failed.first() {
        None => format!("{} checks", checks.len()),
        Some(c) => format!(
            "{} of {} fail, first at {} after {} flips",
            failed.len(),
            checks.len(),
            c.alpha.root_name(),
            c.flips
        ),
    };
    Ok(Suite {
        name: "rho_flips",
        passed: failed.is_empty(),
        detail,
    })
}

fn suite_spherical(params: &PairParams) -> Result<Suite> {
    let positive = positive_closed_form(params);
    let weights = enumerate_spherical(params, 4);
    let reports = weights
        .par_iter()
        .map(|lam| classify_with(params, &positive, lam))
        .collect::<Result<Vec<_>>>()?;
    let bad: Vec<&SphericityReport> = reports
        .iter()
        .filter(|rep| !rep.self_dual || !rep.cond_gl_pairing || (rep.high_enough && !rep.c_nonzero_at_shift))
        .collect();
    let detail = match bad.first() {
        None => format!("{} spherical weights", reports.len()),
        Some(rep) => format!("{} of {} fail, first at {}", bad.len(), reports.len(), rep.lam),
    };
    Ok(Suite {
        name: "spherical_self_dual",
        passed: bad.is_empty(),
        detail,
    })
}

pub fn verify(params: &PairParams) -> Result<(Value, bool)> {
    let runners: [fn(&PairParams) -> Result<Suite>; 4] = [suite_roots, suite_rho, suite_flips, suite_spherical];
    let suites = runners.par_iter().map(|f| f(params)).collect::<Result<Vec<_>>>()?;
    let ok = suites.iter().all(|s| s.passed);
    let mut m = header("verify", params);
    m.insert(
        "suites".into(),
        json!(suites
            .iter()
            .map(|s| json!({ "name": s.name, "passed": s.passed, "detail": s.detail }))
            .collect::<Vec<_>>()),
    );
    m.insert("passed".into(), json!(ok));
    Ok((Value::Object(m), ok))
}
