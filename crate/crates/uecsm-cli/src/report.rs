//! The report document every command emits, and its human rendering.
//!
//! The JSON form is the machine interface: it round-trips losslessly
//! (complex components are printed with enough digits to restore the exact
//! binary values). The text form is for terminals; it rounds for legibility.

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use uecsm::lab::{CampaignStats, MarginHistogram};
use uecsm::{
    Branch, CMatrix64, Certificate, Status, Tolerances64, VerificationReport, Verdict64,
};

/// Everything one decision produced, in one serializable document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub status: Status,
    pub branch: Branch,
    pub margin: f64,
    pub borderline: bool,
    /// 0-based (row, column) of the worst overlap ratio, when one was measured.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_value: Option<Complex<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub tolerances: Tolerances64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate<f64>>,
    /// Echo of the parsed input matrix.
    pub input: CMatrix64,
}

impl Report {
    /// Assemble a report; `with_certificate` controls whether the (possibly
    /// large) certificate travels along.
    pub fn new(input: CMatrix64, tol: Tolerances64, v: Verdict64, with_certificate: bool) -> Self {
        Report {
            status: v.status,
            branch: v.branch,
            margin: v.margin,
            borderline: v.borderline,
            witness: v.witness,
            witness_value: v.witness_value,
            reason: v.reason,
            tolerances: tol,
            certificate: if with_certificate { v.certificate } else { None },
            input,
        }
    }
}

/// Exit code for a decision outcome: 0 equivalent, 1 not, 2 undecided.
pub fn exit_for(status: Status) -> u8 {
    match status {
        Status::Uecsm => 0,
        Status::NotUecsm => 1,
        Status::Inconclusive => 2,
    }
}

fn status_gloss(status: Status) -> &'static str {
    match status {
        Status::Uecsm => "unitarily equivalent to a complex symmetric matrix",
        Status::NotUecsm => "not unitarily equivalent to any complex symmetric matrix",
        Status::Inconclusive => "could not be decided at the current tolerances",
    }
}

/// One number, rounded for terminals.
fn fmt_f(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else if (1e-4..1e6).contains(&x.abs()) {
        let s = format!("{x:.6}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        s.to_string()
    } else {
        format!("{x:.4e}")
    }
}

/// One complex number, rounded for terminals.
pub fn fmt_complex(z: Complex<f64>) -> String {
    if z.im == 0.0 {
        fmt_f(z.re)
    } else if z.re == 0.0 {
        format!("{}i", fmt_f(z.im))
    } else if z.im < 0.0 {
        format!("{}-{}i", fmt_f(z.re), fmt_f(-z.im))
    } else {
        format!("{}+{}i", fmt_f(z.re), fmt_f(z.im))
    }
}

/// A matrix as an aligned block, one bracketed row per line.
pub fn fmt_matrix(m: &CMatrix64) -> String {
    let n = m.dim();
    let cells: Vec<Vec<String>> = (0..n)
        .map(|i| (0..n).map(|j| fmt_complex(m[(i, j)])).collect())
        .collect();
    let width = cells
        .iter()
        .flatten()
        .map(|s| s.len())
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for row in &cells {
        out.push_str("  [");
        for (j, cell) in row.iter().enumerate() {
            if j > 0 {
                out.push_str("  ");
            }
            let _ = write!(out, "{cell:>width$}");
        }
        out.push_str("]\n");
    }
    out
}

fn push_residuals(out: &mut String, v: &VerificationReport<f64>) {
    let rows = [
        ("unitarity", v.residuals.unitarity, v.unitary_limit, "‖U*U − I‖"),
        ("k-symmetry", v.residuals.k_symmetry, v.unitary_limit, "‖K − Kᵗ‖"),
        ("involution", v.residuals.involution, v.unitary_limit, "‖K·conj(K) − I‖"),
        ("symmetry", v.residuals.symmetry, v.symmetry_limit, "‖S − Sᵗ‖"),
        ("c-symmetry", v.residuals.c_symmetry, v.symmetry_limit, "‖K·Tᵗ·conj(K) − T‖"),
    ];
    for (name, value, limit, gloss) in rows {
        let ok = if value <= limit { "ok" } else { "FAIL" };
        let _ = writeln!(
            out,
            "  {name:<12}: {:>10}  ≤ {:>8}  {ok:<4}  ({gloss})",
            format!("{value:.3e}"),
            format!("{limit:.1e}"),
        );
    }
}

/// Render a decision report for terminals.
pub fn render_report(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "status     : {}  ({})", r.status, status_gloss(r.status));
    let _ = writeln!(out, "branch     : {}", r.branch.name());
    let _ = writeln!(out, "margin     : {:.4e}", r.margin);
    let _ = writeln!(out, "borderline : {}", if r.borderline { "yes" } else { "no" });
    if let (Some((i, j)), Some(q)) = (r.witness, r.witness_value) {
        let _ = writeln!(
            out,
            "worst ratio: q[{i}][{j}] = {}  (0-based overlap indices)",
            fmt_complex(q)
        );
    }
    if let Some(reason) = &r.reason {
        let _ = writeln!(out, "reason     : {reason}");
    }
    let t = &r.tolerances;
    let _ = writeln!(
        out,
        "tolerances : real {:.0e}, zero {:.0e}, eig-gap {:.0e}, parallel {:.0e}, normal {:.0e}",
        t.real, t.zero, t.eig_gap, t.parallel, t.normal
    );
    if let Some(cert) = &r.certificate {
        let verification = cert.verify(&r.input);
        out.push_str("residuals  :\n");
        push_residuals(&mut out, &verification);
        let _ = writeln!(out, "U (unitary, columns are the chosen eigenbasis):");
        out.push_str(&fmt_matrix(&cert.u));
        let _ = writeln!(out, "K = U·Uᵗ (conjugation kernel):");
        out.push_str(&fmt_matrix(&cert.k));
        let _ = writeln!(out, "S = U*·T·U (symmetric form):");
        out.push_str(&fmt_matrix(&cert.s));
    }
    out
}

/// Render a verification outcome for terminals.
pub fn render_verification(v: &VerificationReport<f64>) -> String {
    let mut out = String::new();
    push_residuals(&mut out, v);
    let _ = writeln!(out, "verdict    : {}", if v.pass { "PASS" } else { "FAIL" });
    if !v.pass {
        let _ = writeln!(out, "failing    : {}", v.failures().join(", "));
    }
    out
}

fn histogram_lines(h: &MarginHistogram) -> Vec<String> {
    let mut lines = Vec::new();
    let label = |k: usize| -> String {
        if k == 0 {
            "        < 1e-16".into()
        } else if k == MarginHistogram::DECADES + 1 {
            "        ≥ 1e+04".into()
        } else {
            format!("1e{:+03}..1e{:+03}", k as i32 - 17, k as i32 - 16)
        }
    };
    for (k, &count) in h.bins.iter().enumerate() {
        if count > 0 {
            lines.push(format!("{} : {count}", label(k)));
        }
    }
    lines
}

/// Render campaign statistics for terminals.
pub fn render_stats(stats: &CampaignStats, header: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "campaign   : {header}");
    let _ = writeln!(
        out,
        "decided    : UECSM {}, NotUECSM {}, inconclusive {}  (of {} trials)",
        stats.uecsm, stats.not_uecsm, stats.inconclusive, stats.trials
    );
    let _ = writeln!(out, "borderline : {}", stats.borderline);
    let branches = stats
        .branch_counts
        .iter()
        .map(|(b, c)| format!("{} {c}", b.name()))
        .collect::<Vec<_>>()
        .join(", ");
    let _ = writeln!(out, "branches   : {branches}");
    out.push_str("|margin|   :\n");
    for line in histogram_lines(&stats.margin_histogram) {
        let _ = writeln!(out, "  {line}");
    }
    let _ = writeln!(out, "elapsed    : {:.3} s", stats.elapsed_secs);
    out
}
