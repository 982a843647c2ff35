use std::fmt::Write as _;

use crate::estimate::{ComparisonReport, FitReport, ModelForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Text,
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(format!("unknown format `{other}` (expected text, json or csv)")),
        }
    }
}

pub fn render_comparison(report: &ComparisonReport<f64>, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => text(report),
        ReportFormat::Json => pretty_json(report),
        ReportFormat::Csv => csv(report),
    }
}

pub fn render_fit_json(fit: &FitReport<f64>) -> String {
    pretty_json(fit)
}

pub fn parse_comparison_json(text: &str) -> Result<ComparisonReport<f64>, serde_json::Error> {
    serde_json::from_str(text)
}

fn pretty_json<S: serde::Serialize>(v: &S) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

/// Shortest representation that parses back to the same `f64`.
fn full(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:?}")
    }
}

/// `digits` significant figures, switching to exponent notation for very
/// small or large magnitudes.
fn sig(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return full(x);
    }
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-4..=8).contains(&mag) {
        return format!("{:.*e}", digits - 1, x);
    }
    let decimals = (digits as i32 - 1 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

/// `7.60e-100`; two-decimal mantissa in [1, 10).
fn evidence_text(report: &ComparisonReport<f64>) -> String {
    let (m, e) = report.evidence().decimal();
    if m == 0.0 || !m.is_finite() {
        return full(report.evidence_ratio);
    }
    let (mut m, mut e) = ((m * 100.0).round() / 100.0, e);
    if m >= 10.0 {
        m /= 10.0;
        e += 1;
    }
    format!("{m:.2}e{e}")
}

fn text(report: &ComparisonReport<f64>) -> String {
    let fits = [&report.tullock, &report.difference];
    let cell = |f: &dyn Fn(&FitReport<f64>) -> String| -> [String; 2] { [f(fits[0]), f(fits[1])] };
    let rows: [(&str, [String; 2]); 5] = [
        (
            "Estimated parameter (SE)",
            cell(&|r| {
                format!(
                    "{} = {} ({})",
                    r.form.parameter_name(),
                    sig(r.parameter(), 5),
                    sig(r.parameter_se(), 3)
                )
            }),
        ),
        ("Number of observations", cell(&|r| r.n.to_string())),
        ("R-squared", cell(&|r| format!("{:.4}", r.r2))),
        ("AIC", cell(&|r| format!("{:.2}", r.aic))),
        ("RMSE", cell(&|r| format!("{:.5}", r.rmse))),
    ];
    let label_w = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    let col_w = rows
        .iter()
        .flat_map(|(_, c)| c.iter().map(String::len))
        .chain(fits.iter().map(|f| f.form.title().len()))
        .max()
        .unwrap_or(0);

    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:label_w$}  {:>col_w$}  {:>col_w$}",
        "",
        ModelForm::Tullock.title(),
        ModelForm::Difference.title()
    );
    let _ = writeln!(out, "{}", "-".repeat(label_w + 2 * (col_w + 2)));
    for (label, [a, b]) in &rows {
        let _ = writeln!(out, "{label:label_w$}  {a:>col_w$}  {b:>col_w$}");
    }
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "Evidence ratio P(Tullock)/P(Difference) = {} (ln = {:.2})",
        evidence_text(report),
        report.evidence_ln_ratio
    );
    let _ = writeln!(out, "Preferred model: {}", report.preferred.title());
    out
}

const CSV_HEADER: &str = "form,parameter_name,parameter,standard_error,n,k,rss,tss,r2,\
r2_uncentered,rmse,rmse_win_pct,loglik,aic,fixed_effects,intercept,\
evidence_ln_ratio,evidence_mantissa,evidence_exponent10,preferred";

fn csv(report: &ComparisonReport<f64>) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in [&report.tullock, &report.difference] {
        let fields = [
            r.form.name().to_string(),
            r.form.parameter_name().to_string(),
            full(r.parameter()),
            full(r.parameter_se()),
            r.n.to_string(),
            r.k.to_string(),
            full(r.rss),
            full(r.tss),
            full(r.r2),
            full(r.r2_uncentered),
            full(r.rmse),
            full(r.rmse_win_pct),
            full(r.loglik),
            full(r.aic),
            r.fixed_effects.to_string(),
            r.intercept.to_string(),
            full(report.evidence_ln_ratio),
            full(report.evidence_mantissa),
            report.evidence_exponent10.to_string(),
            report.preferred.name().to_string(),
        ];
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}
