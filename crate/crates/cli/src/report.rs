//! Text and JSON rendering of evaluation results.

use eve_core::convert::BinaryCounts;
use eve_core::densemat::{DEFAULT_EIGEN_TOL, DEFAULT_MAX_SWEEPS, DEFAULT_RANK_TOL};
use eve_core::measures::{MeasureReport, MeasureValues};
use eve_core::spectral::POSITIVE_CUTOFF;
use serde_json::{json, Map, Value};

use crate::run::{Evaluation, MatrixSummary, SpectrumSummary};

pub fn fmt_value(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_string(), |x| format!("{x:.4}"))
}

fn fmt_list(values: &[f64]) -> String {
    values.iter().map(|v| format!("{v:.4}")).collect::<Vec<_>>().join("  ")
}

fn measures_json(values: &MeasureValues) -> Value {
    let map: Map<String, Value> = values.iter().map(|(m, v)| (m.id().to_string(), json!(v))).collect();
    Value::Object(map)
}

fn matrix_json(m: &MatrixSummary) -> Value {
    json!({ "n": m.n, "total": m.total, "ir": m.ir })
}

fn spectrum_json(s: &SpectrumSummary) -> Value {
    let mut v = json!({
        "lambdas": s.lambdas,
        "mus": s.mus,
        "thr_min": s.thr_min,
        "thr_max": s.thr_max,
        "dominant": s.dominant,
    });
    if let Some(note) = &s.note {
        v["note"] = json!(note);
    }
    v
}

fn counts_json(c: &BinaryCounts) -> Value {
    json!({ "a": c.a, "b": c.b, "c": c.c, "d": c.d, "m_pairs": c.m_pairs })
}

fn tolerances_json() -> Value {
    json!({
        "jacobi_tol": DEFAULT_EIGEN_TOL,
        "jacobi_max_sweeps": DEFAULT_MAX_SWEEPS,
        "positive_eigenvalue_cutoff_per_class": POSITIVE_CUTOFF,
        "rank_tol": DEFAULT_RANK_TOL,
    })
}

fn tolerance_lines() -> String {
    format!(
        "tolerances: jacobi {DEFAULT_EIGEN_TOL:e} (max {DEFAULT_MAX_SWEEPS} sweeps), positive eigenvalue > {POSITIVE_CUTOFF:e} * n, rank pivot {DEFAULT_RANK_TOL:e} * max|entry|\n"
    )
}

pub fn evaluation_json(ev: &Evaluation) -> String {
    let r = &ev.report;
    let mut out = json!({
        "matrix": matrix_json(&ev.matrix),
        "source": r.source.to_string(),
        "spectrum": ev.spectrum.as_ref().map(spectrum_json),
        "measures": measures_json(&r.values),
        "unsupported": r.unsupported.iter().map(|m| m.id()).collect::<Vec<_>>(),
    });
    if let Some(per_class) = &r.per_class {
        out["per_class"] = per_class
            .iter()
            .enumerate()
            .map(|(j, v)| json!({ "class": j + 1, "measures": measures_json(v) }))
            .collect();
    }
    if let Some(p) = &ev.pairs {
        out["pairs"] = counts_json(&p.counts);
        if let Some(lit) = &p.literal {
            out["pairs_literal"] = counts_json(lit);
        }
        if let Some(lr) = &p.literal_report {
            out["measures_literal"] = measures_json(&lr.values);
        }
    }
    if ev.echo_tolerance {
        out["tolerances"] = tolerances_json();
    }
    let mut text = serde_json::to_string_pretty(&out).expect("json values are finite");
    text.push('\n');
    text
}

fn matrix_header(m: &MatrixSummary) -> String {
    format!("matrix: {} classes, total {}, ir {}\n", m.n, m.total, fmt_value(m.ir))
}

fn spectrum_block(s: &SpectrumSummary) -> String {
    let mut out = String::new();
    out.push_str(&format!("lambda  {}\n", fmt_list(&s.lambdas)));
    if let Some(mus) = &s.mus {
        out.push_str(&format!("mu      {}\n", fmt_list(mus)));
    }
    if let (Some(lo), Some(hi)) = (s.thr_min, s.thr_max) {
        out.push_str(&format!("bounds  [{lo:.4}, {hi:.4}]\n"));
    }
    if let Some(d) = s.dominant {
        out.push_str(&format!("diagonally dominant: {}\n", if d { "yes" } else { "no" }));
    }
    if let Some(note) = &s.note {
        out.push_str(&format!("note: {note}\n"));
    }
    out
}

fn counts_line(label: &str, c: &BinaryCounts) -> String {
    format!("{label}: a={} b={} c={} d={} (pairs {})\n", c.a, c.b, c.c, c.d, c.m_pairs)
}

fn measure_table(r: &MeasureReport) -> String {
    let mut out = String::from("measure   value\n");
    for (m, v) in &r.values {
        out.push_str(&format!("{:<9} {}\n", m.id(), fmt_value(*v)));
    }
    out
}

fn per_class_table(per_class: &[MeasureValues]) -> String {
    let mut out = format!("{:<9}", "measure");
    for j in 1..=per_class.len() {
        out.push_str(&format!(" {:>8}", format!("class {j}")));
    }
    out.push('\n');
    let Some(first) = per_class.first() else { return out };
    for m in first.keys() {
        out.push_str(&format!("{:<9}", m.id()));
        for values in per_class {
            out.push_str(&format!(" {:>8}", fmt_value(values.get(m).copied().flatten())));
        }
        out.push('\n');
    }
    out
}

pub fn evaluation_table(ev: &Evaluation) -> String {
    let r = &ev.report;
    let mut out = matrix_header(&ev.matrix);
    out.push_str(&format!("source: {}\n", r.source));
    if let Some(p) = &ev.pairs {
        out.push_str(&counts_line("pairs", &p.counts));
        if let Some(lit) = &p.literal {
            out.push_str(&counts_line("pairs (uncorrected)", lit));
        }
    }
    if let Some(s) = &ev.spectrum {
        out.push('\n');
        out.push_str(&spectrum_block(s));
    }
    out.push('\n');
    out.push_str(&measure_table(r));
    if let Some(lr) = ev.pairs.as_ref().and_then(|p| p.literal_report.as_ref()) {
        out.push_str("\nuncorrected pair counts\n");
        out.push_str(&measure_table(lr));
    }
    if let Some(per_class) = &r.per_class {
        out.push_str("\none-vs-rest\n");
        out.push_str(&per_class_table(per_class));
    }
    if !r.unsupported.is_empty() {
        let names: Vec<&str> = r.unsupported.iter().map(|m| m.id()).collect();
        out.push_str(&format!("\nnot applicable to {} classes: {}\n", ev.matrix.n, names.join(", ")));
    }
    if ev.echo_tolerance {
        out.push('\n');
        out.push_str(&tolerance_lines());
    }
    out
}

pub fn bounds_table(m: &MatrixSummary, s: &SpectrumSummary) -> String {
    matrix_header(m) + &spectrum_block(s)
}

pub fn bounds_json(m: &MatrixSummary, s: &SpectrumSummary) -> String {
    let out = json!({ "matrix": matrix_json(m), "spectrum": spectrum_json(s) });
    serde_json::to_string_pretty(&out).expect("json values are finite") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_format_with_na() {
        assert_eq!(fmt_value(None), "NA");
        assert_eq!(fmt_value(Some(0.5)), "0.5000");
        assert_eq!(fmt_value(Some(-0.02)), "-0.0200");
    }
}
