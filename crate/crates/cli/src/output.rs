use serde::Serialize;
use serde_json::Value;
use wgcoe_core::exact::RationalFunction;
use wgcoe_core::sampling::{EstimateReport, GaussianLimitReport};
use wgcoe_core::Regime;

/// Rendered result of one subcommand.
pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    pub fn ok(text: String) -> Self {
        Self { text, code: 0 }
    }
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

/// JSON shape shared by every exact computation.
#[derive(Serialize)]
pub struct ExactOutput {
    pub command: &'static str,
    pub spec: Value,
    #[serde(rename = "N")]
    pub big_n: Option<u64>,
    pub regime: Regime,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational_function: Option<RationalFunction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<String>,
}

impl ExactOutput {
    pub fn text(&self) -> String {
        let mut s = self.value.clone();
        if self.regime == Regime::Truncated {
            s.push_str("  (truncated: N is below the Weingarten degree)");
        }
        s.push('\n');
        if let Some(series) = &self.series {
            s.push_str(series);
            s.push('\n');
        }
        s
    }
}

fn fmt_opt(x: Option<f64>, prec: usize) -> String {
    match x {
        Some(v) if v.is_finite() => format!("{v:.prec$}"),
        Some(v) => v.to_string(),
        None => "-".into(),
    }
}

pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut s = line(header.to_vec());
    for r in rows {
        s.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    s
}

pub fn estimate_table(reports: &[EstimateReport]) -> String {
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.target.clone(),
                format!("{:.6}{:+.6}i", r.mean.re, r.mean.im),
                format!("{:.3e}", r.stderr),
                r.exact.as_ref().map_or("-".into(), |q| q.to_string()),
                fmt_opt(r.exact_float, 6),
                fmt_opt(r.z_score, 2),
            ]
        })
        .collect();
    let first = reports.first().map_or(String::new(), |r| {
        format!("ensemble {}  N = {}  samples = {}  seed = {}\n", r.ensemble, r.n, r.samples, r.seed)
    });
    first + &table(&["target", "mean", "stderr", "exact", "exact~", "z"], &rows)
}

pub fn limit_table(report: &GaussianLimitReport) -> String {
    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                format!("{:.6}", r.rescaled_exact),
                format!("{:.3e}", r.relative_gap),
                fmt_opt(r.rescaled_mean, 6),
                fmt_opt(r.rescaled_stderr, 6),
                fmt_opt(r.z_score, 2),
            ]
        })
        .collect();
    format!("limit n! = {}\n", report.limit)
        + &table(&["N", "exact", "rel.gap", "mc", "stderr", "z"], &rows)
}
