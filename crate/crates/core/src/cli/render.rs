//! Report rendering. JSON keys are sorted and every integer is a decimal
//! string; TSV has a header row and LF line endings.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::schema::spec_to_json;
use super::Format;
use crate::basis::{divisor_of_element, enumerate_basis_with, verify_holomorphic};
use crate::boseck::{boseck_table_with, BoseckTable};
use crate::decomp::expected_dimension;
use crate::deform::deform_report;
use crate::error::Result;
use crate::extension::ExtensionSpec;
use crate::modrep::{jordan_kernel_dim, oracle_sweep};
use crate::par::ExecMode;
use crate::sweep::SweepConfig;
use crate::verify::{verify_spec as run_checks, verify_sweep as run_sweep, Check, Status};

pub const SCHEMA_VERSION: &str = "polydiff/1";

/// Largest Jordan block size checked by `oracle`.
const JORDAN_LIMIT: usize = 16;

fn s(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

fn strings<T: ToString>(items: &[T]) -> Value {
    Value::Array(items.iter().map(|x| s(x.to_string())).collect())
}

fn joined<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn envelope(command: &str, spec: Option<&ExtensionSpec>, body: Value) -> Value {
    let mut doc = json!({ "schema": SCHEMA_VERSION, "command": command });
    if let Some(spec) = spec {
        doc["spec"] = spec_to_json(spec);
    }
    if let (Value::Object(out), Value::Object(extra)) = (&mut doc, body) {
        out.extend(extra);
    }
    doc
}

fn to_json(doc: &Value) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("serializable");
    out.push('\n');
    out
}

fn clean(field: &str) -> String {
    field.replace(['\t', '\n', '\r'], " ")
}

fn tsv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join("\t");
    out.push('\n');
    for row in rows {
        out.push_str(&row.iter().map(|f| clean(f)).collect::<Vec<_>>().join("\t"));
        out.push('\n');
    }
    out
}

fn tables(spec: &ExtensionSpec, orders: &[u32], mode: ExecMode) -> Result<Vec<BoseckTable>> {
    orders.iter().map(|&m| boseck_table_with(spec, m, mode)).collect()
}

fn nu_strings(t: &BoseckTable) -> Vec<Vec<String>> {
    (0..t.delta.len()).map(|i| (0..t.len()).map(|k| t.nu_at(i, k).to_string()).collect()).collect()
}

fn summary_line(spec: &ExtensionSpec, t: &BoseckTable) -> String {
    format!(
        "{} p={} |G|={} places={} g_base={} g={} deg Diff={}",
        spec.kind().name(),
        t.characteristic,
        t.group_order,
        spec.place_count(),
        t.g_base,
        t.g_top,
        t.deg_diff
    )
}

pub fn table(spec: &ExtensionSpec, orders: &[u32], format: Format, mode: ExecMode) -> Result<String> {
    let tabs = tables(spec, orders, mode)?;
    Ok(match format {
        Format::Json => {
            let results: Vec<Value> = tabs
                .iter()
                .map(|t| {
                    json!({
                        "m": s(t.m),
                        "characteristic": s(&t.characteristic),
                        "group_order": s(&t.group_order),
                        "delta": strings(&t.delta),
                        "ramification": strings(&t.ramification),
                        "places_above": strings(&t.places_above),
                        "deg_diff": s(&t.deg_diff),
                        "g_base": s(&t.g_base),
                        "genus": s(&t.g_top),
                        "gamma": strings(&t.gamma),
                        "nu": nu_strings(t),
                    })
                })
                .collect();
            to_json(&envelope("table", Some(spec), json!({ "results": results })))
        }
        Format::Tsv => {
            let places = spec.place_count();
            let mut header = vec!["m".to_string(), "k".into(), "gamma".into()];
            header.extend((1..=places).map(|i| format!("nu_{i}")));
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            let rows = tabs.iter().flat_map(|t| {
                let nu = nu_strings(t);
                (0..t.len()).map(move |k| {
                    let mut row = vec![t.m.to_string(), k.to_string(), t.gamma[k].to_string()];
                    row.extend(nu.iter().map(|col| col[k].clone()));
                    row
                })
            });
            tsv(&header, rows)
        }
        Format::Pretty => {
            let mut out = String::new();
            for t in &tabs {
                let _ = writeln!(out, "{}  m={}", summary_line(spec, t), t.m);
                let _ = writeln!(out, "  δ = ({})", joined(&t.delta, ", "));
                let nu = nu_strings(t);
                for k in 0..t.len() {
                    let row: Vec<&str> = nu.iter().map(|col| col[k].as_str()).collect();
                    let _ = writeln!(out, "  k={k:<4} Γ={:<8} ν=({})", t.gamma[k], row.join(", "));
                }
            }
            out
        }
    })
}

pub fn decompose(spec: &ExtensionSpec, orders: &[u32], format: Format, mode: ExecMode) -> Result<String> {
    let tabs = tables(spec, orders, mode)?;
    let decs = tabs.iter().map(crate::decomp::decompose).collect::<Result<Vec<_>>>()?;
    Ok(match format {
        Format::Json => {
            let results: Vec<Value> = tabs
                .iter()
                .zip(&decs)
                .map(|(t, d)| {
                    let modules: Vec<Value> = (0..d.d.len())
                        .map(|i| json!({ "label": s(d.label(i)), "dim": s(d.module_dim(i)), "multiplicity": s(&d.d[i]) }))
                        .collect();
                    json!({
                        "m": s(t.m),
                        "gamma": strings(&t.gamma),
                        "d": strings(&d.d),
                        "modules": modules,
                        "total_dim": s(&d.total_dim),
                        "expected_dim": s(expected_dimension(&t.g_top, t.m)),
                        "genus": s(&t.g_top),
                    })
                })
                .collect();
            to_json(&envelope("decompose", Some(spec), json!({ "results": results })))
        }
        Format::Tsv => tsv(
            &["m", "label", "module_dim", "multiplicity"],
            decs.iter().flat_map(|d| {
                (0..d.d.len()).map(move |i| {
                    vec![d.m.to_string(), d.label(i).to_string(), d.module_dim(i).to_string(), d.d[i].to_string()]
                })
            }),
        ),
        Format::Pretty => {
            let mut out = String::new();
            for (t, d) in tabs.iter().zip(&decs) {
                let _ = writeln!(out, "{}  m={}", summary_line(spec, t), t.m);
                let _ = writeln!(out, "  Γ = ({})", joined(&t.gamma, ", "));
                let _ = writeln!(out, "  d = ({})", joined(&d.d, ", "));
                let terms: Vec<String> = (0..d.d.len())
                    .filter(|&i| d.d[i] != BigInt::from(0))
                    .map(|i| format!("{}·V_{}", d.d[i], d.label(i)))
                    .collect();
                let sum = if terms.is_empty() { "0".to_string() } else { terms.join(" ⊕ ") };
                let _ = writeln!(out, "  Ω(m) ≅ {sum}   (dim {})", d.total_dim);
            }
            out
        }
    })
}

pub fn basis(spec: &ExtensionSpec, orders: &[u32], format: Format, mode: ExecMode) -> Result<String> {
    let mut sections = Vec::with_capacity(orders.len());
    for &m in orders {
        let t = boseck_table_with(spec, m, mode)?;
        let elems = enumerate_basis_with(spec, m, mode)?;
        let mut rows = Vec::with_capacity(elems.len());
        for e in elems {
            let div = divisor_of_element(&e, spec, &t)?;
            let holo = verify_holomorphic(&e, spec, &t);
            rows.push((e, div, holo));
        }
        sections.push((t, rows));
    }
    Ok(match format {
        Format::Json => {
            let results: Vec<Value> = sections
                .iter()
                .map(|(t, rows)| {
                    let elements: Vec<Value> = rows
                        .iter()
                        .map(|(e, div, holo)| {
                            json!({
                                "k": s(e.k),
                                "exponents": strings(&e.exponents),
                                "nu_x": s(&e.nu_x),
                                "g_exponents": strings(&e.g_exponents),
                                "holomorphic": holo.holomorphic,
                                "divisor": {
                                    "ramified_coeffs": strings(&div.ramified_coeffs),
                                    "ramified_counts": strings(&div.ramified_counts),
                                    "infinity_coeff": s(&div.infinity_coeff),
                                    "infinity_places": s(&div.infinity_places),
                                    "residual_degree": s(&div.residual_degree),
                                    "degree": s(div.total_degree()),
                                },
                            })
                        })
                        .collect();
                    json!({ "m": s(t.m), "count": s(rows.len()), "elements": elements })
                })
                .collect();
            to_json(&envelope("basis", Some(spec), json!({ "results": results })))
        }
        Format::Tsv => tsv(
            &["m", "k", "exponents", "nu_x", "g_exponents", "degree", "holomorphic"],
            sections.iter().flat_map(|(t, rows)| {
                rows.iter().map(move |(e, div, holo)| {
                    vec![
                        t.m.to_string(),
                        e.k.to_string(),
                        joined(&e.exponents, ","),
                        e.nu_x.to_string(),
                        joined(&e.g_exponents, ","),
                        div.total_degree().to_string(),
                        holo.holomorphic.to_string(),
                    ]
                })
            }),
        ),
        Format::Pretty => {
            let mut out = String::new();
            for (t, rows) in &sections {
                let _ = writeln!(out, "{}  m={}  ({} elements)", summary_line(spec, t), t.m, rows.len());
                for (e, div, holo) in rows {
                    let _ = writeln!(
                        out,
                        "  k={:<4} x^{:<6} exps=({}) P-exps=({}) deg={} {}",
                        e.k,
                        e.nu_x,
                        joined(&e.exponents, ","),
                        joined(&e.g_exponents, ","),
                        div.total_degree(),
                        if holo.holomorphic { "holomorphic" } else { "NOT holomorphic" }
                    );
                }
            }
            out
        }
    })
}

pub fn deform(spec: &ExtensionSpec, format: Format) -> Result<String> {
    let r = deform_report(spec)?;
    let opt = |v: &Option<BigInt>| v.as_ref().map(s).unwrap_or(Value::Null);
    let pairs: Vec<(&str, String)> = vec![
        ("delta", r.delta.to_string()),
        ("group_order", r.group_order.to_string()),
        ("covariant_total", r.covariant_total.to_string()),
        ("covariant_total_oracle", r.covariant_total_oracle.as_ref().map_or("-".into(), ToString::to_string)),
        ("h1_quotient", r.h1_quotient.to_string()),
        ("h1_local", r.h1_local.to_string()),
        ("closed_form", r.closed_form.as_ref().map_or("-".into(), ToString::to_string)),
        ("closed_form_agrees", r.closed_form_agrees().map_or("-".into(), |b| b.to_string())),
    ];
    Ok(match format {
        Format::Json => {
            let body = json!({
                "delta": s(&r.delta),
                "group_order": s(&r.group_order),
                "d": strings(&r.decomposition.d),
                "covariant_dims": strings(&r.covariant_dims),
                "covariant_total": s(&r.covariant_total),
                "covariant_total_oracle": opt(&r.covariant_total_oracle),
                "h1_quotient": s(&r.h1_quotient),
                "h1_local": s(&r.h1_local),
                "closed_form": opt(&r.closed_form),
                "closed_form_agrees": r.closed_form_agrees(),
            });
            to_json(&envelope("deform", Some(spec), body))
        }
        Format::Tsv => tsv(&["quantity", "value"], pairs.into_iter().map(|(k, v)| vec![k.to_string(), v])),
        Format::Pretty => {
            let mut out = format!("{} |G|={} δ={}\n", spec.kind().name(), r.group_order, r.delta);
            let _ = writeln!(out, "  d(Ω(2))        = ({})", joined(&r.decomposition.d, ", "));
            let _ = writeln!(out, "  covariant dims = ({})", joined(&r.covariant_dims, ", "));
            for (k, v) in pairs.iter().skip(2) {
                let _ = writeln!(out, "  {k:<22} {v}");
            }
            out
        }
    })
}

pub fn oracle(p: u64, n: u32, format: Format, mode: ExecMode) -> Result<String> {
    let report = oracle_sweep(p, n, mode)?;
    let q = report.rows.len();
    let mut jordan_checked = 0usize;
    let mut jordan_failures = Vec::new();
    for k in 1..=q.min(JORDAN_LIMIT) {
        for i in 0..=k {
            jordan_checked += 1;
            let dim = jordan_kernel_dim(k, i, p, n)?;
            if dim != i.min(k) {
                jordan_failures.push((k, i, dim));
            }
        }
    }
    let mismatches = report.rows.iter().filter(|r| !r.agrees()).count();
    Ok(match format {
        Format::Json => {
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "j": s(r.j),
                        "covariant_oracle": s(r.covariant_oracle),
                        "covariant_closed": s(r.covariant_closed),
                        "fixed_space": s(r.fixed_space),
                        "agrees": r.agrees(),
                    })
                })
                .collect();
            let failures: Vec<Value> =
                jordan_failures.iter().map(|(k, i, d)| json!({ "k": s(k), "i": s(i), "kernel_dim": s(d) })).collect();
            let body = json!({
                "p": s(p),
                "n": s(n),
                "modulus": strings(&report.modulus),
                "rows": rows,
                "mismatches": s(mismatches),
                "all_agree": report.all_agree(),
                "jordan": { "checked": s(jordan_checked), "failures": failures },
            });
            to_json(&envelope("oracle", None, body))
        }
        Format::Tsv => tsv(
            &["j", "covariant_oracle", "covariant_closed", "fixed_space", "agrees"],
            report.rows.iter().map(|r| {
                vec![
                    r.j.to_string(),
                    r.covariant_oracle.to_string(),
                    r.covariant_closed.to_string(),
                    r.fixed_space.to_string(),
                    r.agrees().to_string(),
                ]
            }),
        ),
        Format::Pretty => {
            let mut out = format!("F_{}^{} modulus ({})\n", p, n, joined(&report.modulus, ", "));
            for r in &report.rows {
                let _ = writeln!(
                    out,
                    "  j={:<5} covariants oracle={} closed={} fixed={}{}",
                    r.j,
                    r.covariant_oracle,
                    r.covariant_closed,
                    r.fixed_space,
                    if r.agrees() { "" } else { "  MISMATCH" }
                );
            }
            let _ = writeln!(out, "  {mismatches} of {q} rows disagree with the closed form");
            let _ = writeln!(out, "  Jordan kernels: {} checked, {} wrong", jordan_checked, jordan_failures.len());
            out
        }
    })
}

pub struct VerifyOutput {
    pub text: String,
    pub failures: usize,
}

fn status_name(status: Status) -> &'static str {
    match status {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Skip => "skip",
    }
}

fn check_json(c: &Check) -> Value {
    json!({ "name": c.name, "status": status_name(c.status), "detail": c.detail })
}

fn count(checks: &[&Check], status: Status) -> usize {
    checks.iter().filter(|c| c.status == status).count()
}

fn tally(checks: &[&Check]) -> Value {
    json!({
        "pass": s(count(checks, Status::Pass)),
        "fail": s(count(checks, Status::Fail)),
        "skip": s(count(checks, Status::Skip)),
    })
}

pub fn verify_spec(spec: &ExtensionSpec, orders: &[u32], format: Format, mode: ExecMode) -> VerifyOutput {
    let results: Vec<(u32, Vec<Check>)> = orders.iter().map(|&m| (m, run_checks(spec, m, mode))).collect();
    let all: Vec<&Check> = results.iter().flat_map(|(_, c)| c).collect();
    let failures = count(&all, Status::Fail);
    let text = match format {
        Format::Json => {
            let per_m: Vec<Value> = results
                .iter()
                .map(|(m, checks)| json!({ "m": s(m), "checks": checks.iter().map(check_json).collect::<Vec<_>>() }))
                .collect();
            to_json(&envelope("verify", Some(spec), json!({ "results": per_m, "summary": tally(&all) })))
        }
        Format::Tsv => tsv(
            &["m", "check", "status", "detail"],
            results.iter().flat_map(|(m, checks)| {
                checks.iter().map(move |c| vec![m.to_string(), c.name.into(), status_name(c.status).into(), c.detail.clone()])
            }),
        ),
        Format::Pretty => {
            let mut out = String::new();
            for (m, checks) in &results {
                let _ = writeln!(out, "m={m}");
                for c in checks {
                    let _ = writeln!(out, "  {c}");
                }
            }
            let _ = writeln!(out, "{} failures", failures);
            out
        }
    };
    VerifyOutput { text, failures }
}

pub fn verify_sweep(cfg: &SweepConfig, orders: &[u32], format: Format, mode: ExecMode) -> VerifyOutput {
    let entries = run_sweep(cfg, orders, mode);
    let all: Vec<&Check> = entries.iter().flat_map(|e| &e.checks).collect();
    let failures = count(&all, Status::Fail);
    let text = match format {
        Format::Json => {
            let list: Vec<Value> = entries
                .iter()
                .map(|e| {
                    json!({
                        "index": s(e.index),
                        "m": s(e.m),
                        "spec": spec_to_json(&e.spec),
                        "checks": e.checks.iter().map(check_json).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let body = json!({
                "seed": s(cfg.seed),
                "count": s(cfg.count),
                "entries": list,
                "summary": tally(&all),
            });
            to_json(&envelope("verify", None, body))
        }
        Format::Tsv => tsv(
            &["index", "kind", "m", "check", "status", "detail"],
            entries.iter().flat_map(|e| {
                e.checks.iter().map(move |c| {
                    vec![
                        e.index.to_string(),
                        e.spec.kind().name().into(),
                        e.m.to_string(),
                        c.name.into(),
                        status_name(c.status).into(),
                        c.detail.clone(),
                    ]
                })
            }),
        ),
        Format::Pretty => {
            let mut out = format!("sweep seed={} specs={} orders=({})\n", cfg.seed, cfg.count, joined(orders, ", "));
            for e in &entries {
                for c in e.checks.iter().filter(|c| c.status == Status::Fail) {
                    let _ = writeln!(out, "  spec #{} ({}) m={}: {c}", e.index, e.spec.kind().name(), e.m);
                }
            }
            let _ = writeln!(
                out,
                "{} checks: {} pass, {} fail, {} skip",
                all.len(),
                count(&all, Status::Pass),
                failures,
                count(&all, Status::Skip)
            );
            out
        }
    };
    VerifyOutput { text, failures }
}
