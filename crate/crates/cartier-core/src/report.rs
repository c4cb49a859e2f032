//! Deterministic text and CSV rendering for reports. Identical inputs give
//! byte-identical output, independent of thread counts.

use num_rational::BigRational;
use num_traits::One;

use crate::algebra::ValidationReport;
use crate::analysis::{ComplexityReport, ConsistencyReport, GaugeReport};
use crate::cartier::{Exactness, GaugeValue};
use crate::exponent::Degree;
use crate::poly::Polynomial;

/// Shortest exact form: integers drop the denominator.
pub fn rational_short(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// CSV form: always `a/b`.
pub fn rational_csv(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Bracketed generator list in the ideal grammar.
pub fn format_ideal(gens: &[Polynomial]) -> String {
    if gens.is_empty() {
        return "[0]".into();
    }
    let parts: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn gauge_value_short(v: &GaugeValue) -> String {
    match (v.value, v.exactness) {
        (Degree::NegInf, _) => "-inf".into(),
        (Degree::Finite(d), Exactness::Exact) => d.to_string(),
        (Degree::Finite(d), Exactness::UpperBound) => format!("<={d}"),
    }
}

fn aligned_table(header: &[&str], rows: &[Vec<String>], last_is_text: bool) -> String {
    let cols = header.len();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate().take(cols) {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let render_row = |cells: &[String], out: &mut String| {
        let mut parts = Vec::with_capacity(cols);
        for i in 0..cols {
            let cell = cells.get(i).map(String::as_str).unwrap_or("");
            if last_is_text && i + 1 == cols {
                parts.push(cell.to_string());
            } else {
                parts.push(format!("{cell:>width$}", width = widths[i]));
            }
        }
        out.push_str("  ");
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    let header_cells: Vec<String> = header.iter().map(|h| h.to_string()).collect();
    render_row(&header_cells, &mut out);
    for row in rows {
        render_row(row, &mut out);
    }
    out
}

pub fn render_validation(report: &ValidationReport) -> String {
    if let Some(v) = &report.closure_violation {
        return format!(
            "validation: INVALID: closure fails at (a, b) = ({}, {}): witness {} not in J_{}\n",
            v.level_a,
            v.level_b,
            v.witness,
            v.level_a + v.level_b
        );
    }
    if report.nonzero_level.is_none() {
        return format!(
            "validation: INVALID: J_e = 0 for all 1 <= e <= {}\n",
            report.e_max
        );
    }
    format!(
        "validation: valid (closure J_a^[p^b]*J_b in J_(a+b) checked for a+b <= {})\n",
        report.e_max
    )
}

pub fn render_complexity(report: &ComplexityReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "complexity sequence (convention: k_0 = {}, the level-0 identity)\n",
        report.k0
    ));
    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.level.to_string(),
                r.cumulative.to_string(),
                r.new_generators.to_string(),
                r.max_total_degree.to_string(),
                r.max_norm_degree.to_string(),
            ]
        })
        .collect();
    out.push_str(&aligned_table(
        &["e", "k_e", "delta_k", "d_Je", "d_norm"],
        &rows,
        false,
    ));
    out.push_str(&format!(
        "  cx_estimate   = {} (window e_max = {}, dyadic floor)\n",
        rational_short(&report.cx_estimate),
        report.e_max
    ));
    out.push_str(&format!(
        "  expF_estimate = {}\n",
        rational_short(&report.expf_estimate)
    ));
    out.push_str(&format!(
        "  trend (last 3 positive levels): {}\n",
        report.trend.as_str()
    ));
    out
}

pub fn render_gauge(report: &GaugeReport) -> String {
    let mut out = String::new();
    out.push_str("gauge growth\n");
    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            let gens: Vec<String> = r
                .generators
                .iter()
                .zip(&r.gauges)
                .map(|(g, v)| format!("{} ({})", g, gauge_value_short(v)))
                .collect();
            vec![
                r.level.to_string(),
                r.g.as_ref().map(rational_short).unwrap_or_else(|| "-inf".into()),
                if gens.is_empty() {
                    "(zero ideal)".into()
                } else {
                    gens.join(", ")
                },
            ]
        })
        .collect();
    out.push_str(&aligned_table(&["e", "g(e)", "generators (gauge)"], &rows, true));
    out.push_str(&format!(
        "  sup g(e) = {}\n",
        report
            .sup_g
            .as_ref()
            .map(rational_short)
            .unwrap_or_else(|| "-inf".into())
    ));
    if !report.all_exact {
        out.push_str("  note: some gauges are upper bounds (non-monomial quotient)\n");
    }
    if let Some(k) = &report.k_window {
        out.push_str(&format!("  K_window = {}\n", rational_short(k)));
    }
    if let Some(ok) = report.claim_check_ok {
        out.push_str(&format!(
            "  claim check delta(f_i) <= K_window * p^e: {}\n",
            if ok { "ok" } else { "FAILED" }
        ));
    }
    out.push_str(&format!("  verdict  = {}\n", report.verdict.as_str()));
    out
}

pub fn render_consistency(report: &ConsistencyReport) -> String {
    let mut out = String::new();
    out.push_str("theorem check (gauge bounded => cx <= p^n)\n");
    out.push_str(&format!(
        "  gauge verdict = {}\n",
        report.gauge_verdict.as_str()
    ));
    out.push_str(&format!(
        "  cx_estimate   = {}\n",
        rational_short(&report.cx_estimate)
    ));
    out.push_str(&format!("  cap p^n       = {}\n", report.cx_cap));
    let status = match report.consistent {
        Some(true) => "consistent (cx_estimate <= p^n)".to_string(),
        Some(false) => "INCONSISTENT (cx_estimate > p^n)".to_string(),
        None => "not applicable".to_string(),
    };
    out.push_str(&format!("  status        = {status}\n"));
    out.push_str(&format!("  note: {}\n", report.note));
    out
}

/// RFC-4180 quoting: quote a field iff it holds a comma, quote, or line
/// break; quotes double inside.
fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') || s.contains('\r') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// One fixed schema for all analysis commands; columns a given command did
/// not compute stay empty.
pub fn csv_report(
    complexity: Option<&ComplexityReport>,
    gauge: Option<&GaugeReport>,
) -> String {
    let mut out = String::from("e,k_e,delta_k,d_Je,gauge_g,verdict\n");
    let e_max = complexity
        .map(|c| c.e_max)
        .or(gauge.map(|g| g.e_max))
        .unwrap_or(0);
    for e in 1..=e_max {
        let mut fields: Vec<String> = vec![e.to_string()];
        if let Some(c) = complexity.and_then(|c| c.rows.get(e as usize - 1)) {
            fields.push(c.cumulative.to_string());
            fields.push(c.new_generators.to_string());
            fields.push(c.max_total_degree.to_string());
        } else {
            fields.extend(["".into(), "".into(), "".into()]);
        }
        if let Some(g) = gauge.and_then(|g| g.rows.get(e as usize - 1)) {
            fields.push(
                g.g.as_ref()
                    .map(rational_csv)
                    .unwrap_or_else(|| "-inf".into()),
            );
        } else {
            fields.push("".into());
        }
        fields.push(
            gauge
                .map(|g| g.verdict.as_str().to_string())
                .unwrap_or_default(),
        );
        let line: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}
