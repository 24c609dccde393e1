//! Incidence theorems as checkable predicates.
//!
//! Each check reads an [`IncidenceSummary`] and reports whether the statement's
//! hypotheses apply and whether its conclusion holds. The statements are
//! theorems, so an applicable verdict that does not hold points at a bug in the
//! incidence engine. All comparisons are done in integers.

use serde::Serialize;
use thiserror::Error;

use crate::incidence::IncidenceSummary;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error("all points are collinear")]
    CollinearInput,
    #[error("k must be at least 2, got {0}")]
    InvalidK(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma {
    /// Σ l_i ≥ n(n+3)/3 when no line holds more than 2n/3 points.
    Langer,
    /// Some point lies on at least n/3 + 1 spanned lines.
    WeakDirac,
    /// Either a line holds more than γn points, γ = (6+√3)/9, or there are at least n²/9 lines.
    Beck,
    /// At most 4/(k−1)²·|L| lines hold more than k points, when no line holds more than 2n/3.
    RichLines,
}

/// The quantities a verdict was decided on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Incidences { n: usize, incidences: usize, max_multiplicity: usize },
    Degree { n: usize, point: usize, degree: usize },
    Beck {
        n: usize,
        richest_line: usize,
        max_multiplicity: usize,
        line_count: usize,
        rich_branch: bool,
        many_lines_branch: bool,
    },
    RichLines { n: usize, k: usize, rich_lines: usize, line_count: usize, max_multiplicity: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaVerdict {
    pub lemma: Lemma,
    pub applicable: bool,
    /// Meaningful only when `applicable`.
    pub holds: bool,
    pub witness: Witness,
}

impl LemmaVerdict {
    /// True unless the hypotheses apply and the conclusion fails.
    pub fn ok(&self) -> bool {
        !self.applicable || self.holds
    }
}

/// `max_multiplicity ≤ 2n/3`.
fn no_heavy_line(s: &IncidenceSummary) -> bool {
    3 * s.max_multiplicity <= 2 * s.n
}

pub fn langer_check(s: &IncidenceSummary) -> LemmaVerdict {
    let applicable = s.n >= 3 && !s.is_collinear() && no_heavy_line(s);
    LemmaVerdict {
        lemma: Lemma::Langer,
        applicable,
        holds: 3 * s.incidences >= s.n * (s.n + 3),
        witness: Witness::Incidences {
            n: s.n,
            incidences: s.incidences,
            max_multiplicity: s.max_multiplicity,
        },
    }
}

pub fn weak_dirac_check(s: &IncidenceSummary) -> Result<LemmaVerdict, LemmaError> {
    if s.n < 3 || s.is_collinear() {
        return Err(LemmaError::CollinearInput);
    }
    // first point of maximum degree
    let (point, degree) = s
        .degree
        .iter()
        .copied()
        .enumerate()
        .fold((0, 0), |best, (i, d)| if d > best.1 { (i, d) } else { best });
    Ok(LemmaVerdict {
        lemma: Lemma::WeakDirac,
        applicable: true,
        holds: 3 * degree >= s.n + 3,
        witness: Witness::Degree { n: s.n, point, degree },
    })
}

/// `9m > (6 + √3)n`, via `(9m − 6n)² > 3n²` when `9m > 6n`.
pub fn exceeds_gamma(m: usize, n: usize) -> bool {
    let (m, n) = (m as u128, n as u128);
    if 9 * m <= 6 * n {
        return false;
    }
    let d = 9 * m - 6 * n;
    d * d > 3 * n * n
}

pub fn beck_check(s: &IncidenceSummary) -> LemmaVerdict {
    let rich_branch = exceeds_gamma(s.max_multiplicity, s.n);
    let many_lines_branch = 9 * s.line_count as u128 >= (s.n as u128).pow(2);
    LemmaVerdict {
        lemma: Lemma::Beck,
        applicable: s.n >= 2,
        holds: rich_branch || many_lines_branch,
        witness: Witness::Beck {
            n: s.n,
            richest_line: s.richest_line,
            max_multiplicity: s.max_multiplicity,
            line_count: s.line_count,
            rich_branch,
            many_lines_branch,
        },
    }
}

pub fn rich_lines_check(s: &IncidenceSummary, k: usize) -> Result<LemmaVerdict, LemmaError> {
    if k < 2 {
        return Err(LemmaError::InvalidK(k));
    }
    let rich = s.lines_richer_than(k);
    let bound_lhs = rich as u128 * ((k - 1) as u128).pow(2);
    Ok(LemmaVerdict {
        lemma: Lemma::RichLines,
        applicable: no_heavy_line(s),
        holds: bound_lhs <= 4 * s.line_count as u128,
        witness: Witness::RichLines {
            n: s.n,
            k,
            rich_lines: rich,
            line_count: s.line_count,
            max_multiplicity: s.max_multiplicity,
        },
    })
}

/// Every check on one summary: langer, weak Dirac (skipped for collinear input),
/// Beck, then rich lines for each `k`.
pub fn check_all(s: &IncidenceSummary, ks: &[usize]) -> Result<Vec<LemmaVerdict>, LemmaError> {
    let mut out = vec![langer_check(s)];
    match weak_dirac_check(s) {
        Ok(v) => out.push(v),
        Err(LemmaError::CollinearInput) => {}
        Err(e) => return Err(e),
    }
    out.push(beck_check(s));
    for &k in ks {
        out.push(rich_lines_check(s, k)?);
    }
    Ok(out)
}
