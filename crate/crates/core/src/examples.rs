//! Built-in regression suite: four worked examples of weighted semigroup
//! algebras and the equivalence suite for weights on `(ℤ, min)`, each with
//! its expected verdicts.

use crate::config::parse_config;
use crate::dual::{check_dual, example2_equivalences, DualError, DualReport};
use crate::verdict::{Level, Verdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteRow {
    pub id: String,
    pub description: String,
    pub expected: String,
    pub actual: String,
}

impl SuiteRow {
    pub fn pass(&self) -> bool {
        self.expected == self.actual
    }
}

/// Named configs used by the suite; they are also shipped as golden files.
pub const CONFIGS: [(&str, &str); 9] = [
    ("ex1_max_one", "[semigroup]\nfamily = \"max\"\ncarrier = \"nat\"\n[weight]\nexpr = \"1\"\ntail = \"bounded\"\n"),
    ("ex1_max_linear", "[semigroup]\nfamily = \"max\"\ncarrier = \"nat\"\n[weight]\nexpr = \"1+n\"\ntail = \"zero\"\n"),
    ("ex1_max_exp", "[semigroup]\nfamily = \"max\"\ncarrier = \"nat\"\n[weight]\nexpr = \"exp(n)\"\ntail = \"zero\"\n"),
    ("ex1_min_linear", "[semigroup]\nfamily = \"min\"\ncarrier = \"nat\"\n[weight]\nexpr = \"1+n\"\ntail = \"zero\"\n"),
    ("ex1_min_one", "[semigroup]\nfamily = \"min\"\ncarrier = \"nat\"\n[weight]\nexpr = \"1\"\ntail = \"bounded\"\n"),
    (
        "ex2_int_min_piecewise",
        "[semigroup]\nfamily = \"min\"\ncarrier = \"int\"\n[weight]\nexpr = \"if n>=1 then 1+n else 1\"\ntail_pos = \"zero\"\ntail_neg = \"bounded\"\n",
    ),
    (
        "ex3_product",
        "[semigroup]\nfamily = \"product\"\ncarrier = \"nat_pair\"\nleft = \"plus\"\nright = \"right_zero\"\n[weight]\nexpr = \"exp(-m)*(1+n)\"\ntail_m_pos = \"unbounded\"\ntail_n_pos = \"zero\"\n",
    ),
    ("ex4_left_zero", "[semigroup]\nfamily = \"left_zero\"\ncarrier = \"nat\"\n[weight]\nexpr = \"1\"\ntail = \"bounded\"\n"),
    ("ex4_right_zero", "[semigroup]\nfamily = \"right_zero\"\ncarrier = \"nat\"\n[weight]\nexpr = \"1\"\ntail = \"bounded\"\n"),
];

const EX2_WEIGHTS: [(&str, &str); 4] = [
    ("piecewise", "expr = \"if n>=1 then 1+n else 1\"\ntail_pos = \"zero\"\ntail_neg = \"bounded\"\n"),
    ("constant", "expr = \"1\"\ntail_pos = \"bounded\"\ntail_neg = \"bounded\"\n"),
    ("absolute", "expr = \"1+abs(n)\"\ntail_pos = \"zero\"\ntail_neg = \"zero\"\n"),
    ("exp_negative_side", "expr = \"if n>=0 then 1 else exp(-n)\"\ntail_pos = \"bounded\"\ntail_neg = \"zero\"\n"),
];

pub fn config_text(name: &str) -> Option<&'static str> {
    CONFIGS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

fn run(name: &str) -> Result<DualReport, String> {
    let text = config_text(name).ok_or_else(|| format!("no config {name}"))?;
    let cfg = parse_config(text).map_err(|d| d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; "))?;
    check_dual(&cfg.semigroup, &cfg.weight, &cfg.check).map_err(|e| e.to_string())
}

fn yn(l: Level) -> &'static str {
    match l {
        Level::YesUniversal | Level::YesSampled => "yes",
        Level::No => "no",
        Level::Unknown => "unknown",
    }
}

fn sides(r: &DualReport) -> String {
    format!("left={} right={}", r.left.level, r.right.level)
}

fn witness_pair(v: &Verdict) -> String {
    v.witness
        .as_deref()
        .and_then(|w| w.strip_prefix("pair "))
        .and_then(|w| w.split(':').next())
        .unwrap_or("none")
        .to_string()
}

fn row(id: &str, description: &str, expected: &str, actual: Result<String, String>) -> SuiteRow {
    SuiteRow {
        id: id.into(),
        description: description.into(),
        expected: expected.into(),
        actual: actual.unwrap_or_else(|e| format!("error: {e}")),
    }
}

/// Runs every example. `inject` replaces the expectation of the row with
/// that id by a wrong value, which must then show up as a failure.
pub fn run_suite(inject: Option<&str>) -> Vec<SuiteRow> {
    let mut rows = Vec::new();
    for (name, w) in [("ex1_max_one", "ω=1"), ("ex1_max_linear", "ω=1+n"), ("ex1_max_exp", "ω=e^n")] {
        rows.push(row(
            &format!("ex1i/{name}"),
            &format!("(N,max) with {w} is dual"),
            "both=yes-universal",
            run(name).map(|r| format!("both={}", r.both.level)),
        ));
    }
    rows.push(row(
        "ex1ii/linear",
        "(N,min) with ω=1+n is dual",
        "both=yes-universal",
        run("ex1_min_linear").map(|r| format!("both={}", r.both.level)),
    ));
    rows.push(row(
        "ex1ii/constant",
        "(N,min) with ω=1 fails at the pair (1,1)",
        "both=no pair=(1,1)",
        run("ex1_min_one").map(|r| format!("both={} pair={}", r.both.level, witness_pair(&r.left))),
    ));
    rows.push(row(
        "ex2/piecewise",
        "(Z,min) with the piecewise weight is dual although 1/ω is not in c₀",
        "both=yes reciprocal=no",
        run("ex2_int_min_piecewise").map(|r| format!("both={} reciprocal={}", yn(r.both.level), yn(r.reciprocal.level))),
    ));
    for (wname, body) in EX2_WEIGHTS {
        let text = format!("[semigroup]\nfamily = \"min\"\ncarrier = \"int\"\n[weight]\n{body}");
        let actual = parse_config(&text)
            .map_err(|d| d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; "))
            .and_then(|cfg| example2_equivalences(&cfg.weight, &cfg.check).map_err(|e: DualError| e.to_string()))
            .map(|e| {
                let levels: Vec<&str> = e.rows().iter().map(|(_, v)| yn(v.level)).collect();
                if levels.iter().all(|l| *l == levels[0]) {
                    format!("agree={}", levels[0])
                } else {
                    format!("disagree={}", levels.join(","))
                }
            });
        let expected = if wname == "constant" || wname == "exp_negative_side" { "agree=no" } else { "agree=yes" };
        rows.push(row(
            &format!("ex2-equiv/{wname}"),
            "the four equivalent conditions agree",
            expected,
            actual,
        ));
    }
    rows.push(row(
        "ex3/product",
        "(N,+)×(N,right zero) with ω=e^(-m)(1+n) is dual without weak cancellativity or 1/ω in c₀",
        "both=yes-universal wc=no[(2,2)·(1,2)⁻¹ = {1}×N] reciprocal=no",
        run("ex3_product").map(|r| {
            let wc = r.weak_cancellativity.witness.clone().unwrap_or_default();
            let wc = wc.rsplit(": ").next().unwrap_or_default().to_string();
            format!("both={} wc={}[{}] reciprocal={}", r.both.level, yn(r.weak_cancellativity.level), wc, yn(r.reciprocal.level))
        }),
    ));
    rows.push(row(
        "ex4/left_zero",
        "left zero semigroup with ω=1 is dual on one side only",
        "left=yes-universal right=no",
        run("ex4_left_zero").map(|r| sides(&r)),
    ));
    rows.push(row(
        "ex4/right_zero",
        "right zero semigroup with ω=1 mirrors the left zero case",
        "left=no right=yes-universal",
        run("ex4_right_zero").map(|r| sides(&r)),
    ));
    if let Some(id) = inject {
        inject_failure(&mut rows, id);
    }
    rows
}

/// Replaces the expectation of row `id` by a wrong value.
pub fn inject_failure(rows: &mut [SuiteRow], id: &str) {
    for r in rows.iter_mut().filter(|r| r.id == id) {
        r.expected = format!("not {}", r.expected);
    }
}

pub fn suite_table(rows: &[SuiteRow]) -> String {
    let width = rows.iter().map(|r| r.id.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in rows {
        let mark = if r.pass() { "PASS" } else { "FAIL" };
        out.push_str(&format!("{mark}  {:<width$}  {}\n", r.id, r.actual));
        if !r.pass() {
            out.push_str(&format!("      {:<width$}  expected {}\n", "", r.expected));
        }
    }
    let passed = rows.iter().filter(|r| r.pass()).count();
    out.push_str(&format!("{passed}/{} passed\n", rows.len()));
    out
}

pub fn suite_json(rows: &[SuiteRow]) -> serde_json::Value {
    serde_json::json!({
        "rows": rows.iter().map(|r| serde_json::json!({
            "id": r.id,
            "description": r.description,
            "expected": r.expected,
            "actual": r.actual,
            "pass": r.pass(),
        })).collect::<Vec<_>>(),
        "passed": rows.iter().filter(|r| r.pass()).count(),
        "total": rows.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_and_injection_fails() {
        let rows = run_suite(None);
        for r in &rows {
            assert!(r.pass(), "{r:?}");
        }
        let rows = run_suite(Some("ex4/left_zero"));
        assert_eq!(rows.iter().filter(|r| !r.pass()).count(), 1);
        assert!(suite_table(&rows).contains("FAIL  ex4/left_zero"));
    }
}
