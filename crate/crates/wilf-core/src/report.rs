//! Side-by-side comparison of exact counts against the logarithmic
//! estimates, with CSV and JSON emission.

use serde::Serialize;

use crate::asym::{log_fixed_estimate, log_wilf_estimate};
use crate::count::{count_fixed_with_limit, count_wilf_with_limit, Count};

/// Largest weights for which the exact columns are attempted. Rows beyond a
/// limit simply omit that column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportLimits {
    pub wilf_limit: u64,
    pub fixed_limit: u64,
}

impl Default for ReportLimits {
    fn default() -> Self {
        ReportLimits {
            wilf_limit: 200,
            fixed_limit: 400,
        }
    }
}

/// One comparison row. Exact fields are present only within the limits;
/// `ln_F` and `ratio` additionally require a positive fixed-point count,
/// and estimates require `n >= 2`.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub n: u64,
    pub f_exact: Option<Count>,
    #[serde(rename = "F_exact")]
    pub fixed_exact: Option<Count>,
    #[serde(rename = "ln_F")]
    pub ln_fixed: Option<f64>,
    pub estimate_f: Option<f64>,
    #[serde(rename = "estimate_F")]
    pub estimate_fixed: Option<f64>,
    pub ratio: Option<f64>,
}

/// Observed range of `ln F(n) / estimate_F(n)` over `50 <= n <= 300`,
/// widened to three decimals. Regression guard, not a theorem: convergence
/// of the ratio toward 1 is far slower than any desk-scale window.
pub const RATIO_BAND: (f64, f64) = (0.613, 1.000);

pub fn report_row(n: u64, limits: &ReportLimits) -> ReportRow {
    let f_exact = count_wilf_with_limit(n, limits.wilf_limit).ok();
    let fixed_exact = count_fixed_with_limit(n, limits.fixed_limit).ok();
    let ln_fixed = fixed_exact.and_then(|c| if c > 0 { Some((c as f64).ln()) } else { None });
    let estimate_f = log_wilf_estimate(n).ok();
    let estimate_fixed = log_fixed_estimate(n).ok();
    let ratio = match (ln_fixed, estimate_fixed) {
        (Some(l), Some(e)) => Some(l / e),
        _ => None,
    };
    ReportRow {
        n,
        f_exact,
        fixed_exact,
        ln_fixed,
        estimate_f,
        estimate_fixed,
        ratio,
    }
}

/// Rows for each weight in order, under the default limits.
pub fn report(ns: &[u64]) -> Vec<ReportRow> {
    report_with_limits(ns, &ReportLimits::default())
}

pub fn report_with_limits(ns: &[u64], limits: &ReportLimits) -> Vec<ReportRow> {
    ns.iter().map(|&n| report_row(n, limits)).collect()
}

fn push_float(out: &mut String, v: Option<f64>) {
    if let Some(v) = v {
        out.push_str(&format!("{v:.6}"));
    }
}

/// CSV with the fixed column order
/// `n,f_exact,F_exact,ln_F,estimate_f,estimate_F,ratio`; missing values
/// are empty fields, floats carry six decimals.
pub fn to_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from("n,f_exact,F_exact,ln_F,estimate_f,estimate_F,ratio\n");
    for row in rows {
        out.push_str(&row.n.to_string());
        out.push(',');
        if let Some(f) = row.f_exact {
            out.push_str(&f.to_string());
        }
        out.push(',');
        if let Some(c) = row.fixed_exact {
            out.push_str(&c.to_string());
        }
        out.push(',');
        push_float(&mut out, row.ln_fixed);
        out.push(',');
        push_float(&mut out, row.estimate_f);
        out.push(',');
        push_float(&mut out, row.estimate_fixed);
        out.push(',');
        push_float(&mut out, row.ratio);
        out.push('\n');
    }
    out
}

/// JSON array mirroring the CSV columns; missing values are nulls.
pub fn to_json(rows: &[ReportRow]) -> String {
    serde_json::to_string_pretty(rows).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_for_twenty_matches_exact_table() {
        let row = report_row(20, &ReportLimits::default());
        assert_eq!(row.f_exact, Some(172));
        assert_eq!(row.fixed_exact, Some(6));
        let ln_f = row.ln_fixed.unwrap();
        assert!((ln_f - 1.791_759_469_228_055).abs() < 1e-12);
        let est = row.estimate_fixed.unwrap();
        assert!((est - 2.462_703_701_500_107_8).abs() < 1e-12);
        let ratio = row.ratio.unwrap();
        assert!((ratio - ln_f / est).abs() < 1e-15);
        assert!(ratio > 0.7 && ratio < 0.75);
    }

    #[test]
    fn zero_count_rows_omit_log_and_ratio() {
        let row = report_row(2, &ReportLimits::default());
        assert_eq!(row.fixed_exact, Some(0));
        assert_eq!(row.ln_fixed, None);
        assert_eq!(row.ratio, None);
        assert!(row.estimate_f.is_some());
    }

    #[test]
    fn huge_rows_keep_only_estimates() {
        let row = report_row(1_000_000, &ReportLimits::default());
        assert_eq!(row.f_exact, None);
        assert_eq!(row.fixed_exact, None);
        assert_eq!(row.ln_fixed, None);
        assert_eq!(row.ratio, None);
        assert!(row.estimate_f.is_some());
        assert!(row.estimate_fixed.is_some());
    }

    #[test]
    fn tiny_rows_keep_only_exact_counts() {
        let row = report_row(1, &ReportLimits::default());
        assert_eq!(row.f_exact, Some(1));
        assert_eq!(row.fixed_exact, Some(1));
        assert_eq!(row.estimate_f, None);
        assert_eq!(row.estimate_fixed, None);
        assert_eq!(row.ratio, None);
    }

    #[test]
    fn estimate_halving_is_exact() {
        for row in report(&[2, 5, 17, 100, 12345]) {
            let (f, half) = (row.estimate_f.unwrap(), row.estimate_fixed.unwrap());
            assert_eq!(half, f / 2.0);
        }
    }

    #[test]
    fn csv_shape_and_empty_fields() {
        let rows = report(&[2, 20, 1_000_000]);
        let csv = to_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "n,f_exact,F_exact,ln_F,estimate_f,estimate_F,ratio"
        );
        for line in lines {
            assert_eq!(line.split(',').count(), 7, "column count in {line}");
        }
        let two = csv.lines().nth(1).unwrap();
        let fields: Vec<&str> = two.split(',').collect();
        assert_eq!(fields[0], "2");
        assert_eq!(fields[2], "0");
        assert_eq!(fields[3], "");
        assert_eq!(fields[6], "");
        let million = csv.lines().nth(3).unwrap();
        assert!(million.starts_with("1000000,,,"));
    }

    #[test]
    fn json_mirrors_column_names() {
        let rows = report(&[20, 2]);
        let json = to_json(&rows);
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        let arr = parsed.as_array().unwrap();
        assert_eq!(arr.len(), 2);
        let first = arr[0].as_object().unwrap();
        for key in [
            "n",
            "f_exact",
            "F_exact",
            "ln_F",
            "estimate_f",
            "estimate_F",
            "ratio",
        ] {
            assert!(first.contains_key(key), "missing {key}");
        }
        assert_eq!(first["F_exact"], serde_json::json!(6));
        assert!(arr[1].as_object().unwrap()["ratio"].is_null());
    }

    #[test]
    fn ratios_stay_inside_the_frozen_band() {
        let ns: Vec<u64> = (50..=300).collect();
        let fixed_only = ReportLimits {
            wilf_limit: 0,
            fixed_limit: 300,
        };
        for row in report_with_limits(&ns, &fixed_only) {
            let ratio = row
                .ratio
                .expect("every weight in 50..=300 has fixed points");
            assert!(
                ratio >= RATIO_BAND.0 && ratio <= RATIO_BAND.1,
                "ratio {ratio} for n = {} outside band",
                row.n
            );
        }
    }
}
