//! JSON and plain-text rendering of duality reports.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value as Json};

use crate::c0::{DecayCert, DecayVerdict};
use crate::config::{CheckSpec, ProblemConfig};
use crate::dual::{DualReport, PairEvidence, RouteOutcome, TransferReport};
use crate::num::{fmt_f64, fmt_rational};
use crate::verdict::Verdict;

pub const REPORT_VERSION: &str = "1";

/// How rationals are printed: `p/q`, or a 12-significant-digit float.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumberStyle {
    Exact,
    Float,
}

impl NumberStyle {
    pub fn of(spec: &CheckSpec) -> NumberStyle {
        if spec.exact {
            NumberStyle::Exact
        } else {
            NumberStyle::Float
        }
    }

    pub fn rational(self, r: &BigRational) -> String {
        match self {
            NumberStyle::Exact => fmt_rational(r),
            NumberStyle::Float => fmt_f64(r.to_f64().unwrap_or(f64::NAN)),
        }
    }
}

pub fn verdict_json(v: &Verdict) -> Json {
    json!({
        "level": v.level.as_str(),
        "certificate": v.certificate,
        "witness": v.witness,
    })
}

fn decay_json(d: &DecayVerdict, style: NumberStyle) -> Json {
    let mut m = Map::new();
    m.insert("level".into(), json!(d.level.as_str()));
    if let Some(c) = &d.certificate {
        let mut cert = Map::new();
        cert.insert("kind".into(), json!(c.kind()));
        cert.insert("text".into(), json!(c.to_string()));
        if let DecayCert::ExceptionalSet { sizes } = c {
            let rows: Vec<Json> =
                sizes.iter().map(|(e, n)| json!({"epsilon": style.rational(e), "size": n})).collect();
            cert.insert("sizes".into(), Json::Array(rows));
        }
        m.insert("certificate".into(), Json::Object(cert));
    }
    if let Some(w) = &d.witness {
        m.insert("witness".into(), json!(w.to_string()));
    }
    if let Some(r) = &d.reason {
        m.insert("reason".into(), json!(r));
    }
    Json::Object(m)
}

fn pair_json(p: &PairEvidence, style: NumberStyle) -> Json {
    json!({
        "s": p.s.to_string(),
        "t": p.t.to_string(),
        "side": p.side.name(),
        "quotient": p.text,
        "decay": decay_json(&p.decay, style),
    })
}

fn route_json(r: &RouteOutcome) -> Json {
    json!({
        "id": r.id.as_str(),
        "side": r.side.name(),
        "verdict": r.verdict.level.as_str(),
        "certificate": r.verdict.certificate,
        "reason": if r.verdict.is_yes() { None } else { r.verdict.witness.clone() },
        "witnesses": r.witnesses,
    })
}

/// The full machine-readable report with sorted keys. `timings` is present
/// only when supplied.
pub fn report_json(
    report: &DualReport,
    config: Option<&ProblemConfig>,
    spec: &CheckSpec,
    timings: Option<&BTreeMap<String, f64>>,
) -> Json {
    let style = NumberStyle::of(spec);
    let mut top = Map::new();
    top.insert("version".into(), json!(REPORT_VERSION));
    top.insert("semigroup".into(), json!(report.semigroup));
    top.insert("weight".into(), json!(report.weight));
    top.insert("config_echo".into(), json!(config.map(|c| c.echo())));
    top.insert(
        "check".into(),
        json!({
            "budget": spec.budget,
            "tail_budget": spec.tail_budget,
            "epsilons": spec.epsilons.iter().map(|e| style.rational(e)).collect::<Vec<_>>(),
            "arithmetic": if spec.exact { "exact" } else { "float" },
        }),
    );
    top.insert(
        "verdicts".into(),
        json!({
            "left": verdict_json(&report.left),
            "right": verdict_json(&report.right),
            "both": verdict_json(&report.both),
        }),
    );
    top.insert("routes".into(), Json::Array(report.routes.iter().map(route_json).collect()));
    top.insert("pairs".into(), Json::Array(report.pairs.iter().map(|p| pair_json(p, style)).collect()));
    top.insert("weak_cancellativity".into(), verdict_json(&report.weak_cancellativity));
    top.insert("reciprocal_in_c0".into(), decay_json(&report.reciprocal, style));
    top.insert("weight_check".into(), verdict_json(&report.weight_check));
    top.insert("notes".into(), json!(report.notes));
    if let Some(t) = timings {
        let ms: BTreeMap<&String, String> = t.iter().map(|(k, v)| (k, fmt_f64(*v))).collect();
        top.insert("timings".into(), json!(ms));
    }
    Json::Object(top)
}

pub fn transfer_json(t: &TransferReport, config: Option<&ProblemConfig>, spec: &CheckSpec) -> Json {
    json!({
        "local_equivalence": verdict_json(&t.local_equivalence),
        "first": report_json(&t.first, config, spec, None),
        "second": report_json(&t.second, None, spec, None),
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(j: &Json) -> String {
    let mut s = serde_json::to_string_pretty(j).expect("json values always serialize");
    s.push('\n');
    s
}

fn line(out: &mut String, label: &str, v: &Verdict) {
    out.push_str(&format!("{label:<6} {}\n", v.summary()));
    let detail = if v.is_yes() { &v.certificate } else { &v.witness };
    if let Some(d) = detail {
        if !d.is_empty() && !v.is_no() {
            out.push_str(&format!("       {d}\n"));
        }
    }
}

/// Human-readable summary.
pub fn render_text(report: &DualReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("semigroup: {}\nweight:    {}\n", report.semigroup, report.weight));
    line(&mut out, "left", &report.left);
    line(&mut out, "right", &report.right);
    line(&mut out, "both", &report.both);
    out.push_str(&format!("weak cancellativity: {}\n", report.weak_cancellativity.summary()));
    out.push_str(&format!("1/ω in c₀: {}\n", report.reciprocal.to_verdict().summary()));
    out.push_str("routes:\n");
    for r in &report.routes {
        out.push_str(&format!("  {:<22} {:<5} {}\n", r.id.as_str(), r.side.name(), r.verdict.level.as_str()));
    }
    for n in &report.notes {
        out.push_str(&format!("note: {n}\n"));
    }
    out
}
