//! c-ordinary lines and triangles.
//!
//! Besides the brute-force search this module carries the constructive rich-line
//! procedure: given a line `L` holding at least `λn` points (`λ = 5/(2(c+1))`),
//! take a 2-ordinary line `qr` of the points off `L`; every point of `L` whose
//! lines to `q` and `r` are both c-ordinary (and that is not on `qr`) completes
//! a c-ordinary triangle.

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::lambda_of;
use crate::geometry::{GeometryError, Point, PointSet};
use crate::incidence::{spanned_lines_with, IncidenceError, SpannedLineRecord, SpannedLineSet};
use crate::par::{self, Execution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinaryError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Incidence(#[from] IncidenceError),
    #[error("p and q are the same point")]
    SamePoint,
    #[error("triangle indices must be pairwise distinct")]
    DuplicateIndices,
    #[error("need at least 3 points, got {n}")]
    TooFewPoints { n: usize },
    #[error("all points are collinear")]
    CollinearSet,
    #[error("internal error: {0}")]
    InternalError(String),
    #[error("anchor point {anchor} lies on the line")]
    AnchorOnLine { anchor: usize },
    #[error("no spanned line holds at least λn points")]
    NoRichLine,
    #[error("the points off the rich line are collinear; the set is covered by two lines")]
    Unsatisfied,
}

/// Three non-collinear points whose side lines each hold at most `c` points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleCertificate {
    /// Sorted point indices `i < j < k`.
    pub indices: [usize; 3],
    pub c: usize,
    /// Multiplicities of the sides `ij`, `ik`, `jk`.
    pub side_multiplicities: [usize; 3],
}

/// JSON form of a certificate with the points spelled out.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateReport {
    pub indices: [usize; 3],
    pub points: [Point; 3],
    pub side_multiplicities: [usize; 3],
    pub c: usize,
}

impl TriangleCertificate {
    pub fn report(&self, set: &PointSet) -> CertificateReport {
        let [i, j, k] = self.indices;
        let pts = set.points();
        CertificateReport {
            indices: self.indices,
            points: [pts[i].clone(), pts[j].clone(), pts[k].clone()],
            side_multiplicities: self.side_multiplicities,
            c: self.c,
        }
    }
}

/// Points of a line whose line to `anchor` holds more than `c` points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictedSet {
    pub anchor: usize,
    pub members: Vec<usize>,
}

/// Dense `n × n` table of record indices for every point pair.
pub struct PairTable {
    n: usize,
    ids: Vec<u32>,
    multiplicity: Vec<usize>,
}

impl PairTable {
    pub fn new(lines: &SpannedLineSet) -> Self {
        let n = lines.point_count();
        assert!(lines.line_count() < u32::MAX as usize, "too many lines for a pair table");
        let mut ids = vec![u32::MAX; n * n];
        let mut multiplicity = Vec::with_capacity(lines.line_count());
        for record in lines.records() {
            multiplicity.push(record.multiplicity());
            for (a, &i) in record.incident.iter().enumerate() {
                for &j in &record.incident[a + 1..] {
                    ids[i * n + j] = record.index as u32;
                    ids[j * n + i] = record.index as u32;
                }
            }
        }
        PairTable { n, ids, multiplicity }
    }

    #[inline]
    pub fn line_id(&self, i: usize, j: usize) -> usize {
        self.ids[i * self.n + j] as usize
    }

    #[inline]
    pub fn multiplicity(&self, i: usize, j: usize) -> usize {
        self.multiplicity[self.line_id(i, j)]
    }
}

/// Number of points of `set` on the line through points `p` and `q`.
pub fn line_multiplicity(
    set: &PointSet,
    lines: &SpannedLineSet,
    p: usize,
    q: usize,
) -> Result<usize, OrdinaryError> {
    if p == q {
        return Err(OrdinaryError::SamePoint);
    }
    let line = set.line(p, q)?;
    match lines.find(&line) {
        Some(k) => Ok(lines.record(k).multiplicity()),
        None => Err(OrdinaryError::InternalError(format!(
            "line {line:?} through points {p} and {q} is missing from the spanned-line set"
        ))),
    }
}

/// Certificate for the triangle `i, j, k` if it is c-ordinary.
pub fn is_c_ordinary_triangle(
    set: &PointSet,
    lines: &SpannedLineSet,
    i: usize,
    j: usize,
    k: usize,
    c: usize,
) -> Result<Option<TriangleCertificate>, OrdinaryError> {
    if i == j || i == k || j == k {
        return Err(OrdinaryError::DuplicateIndices);
    }
    let mut idx = [i, j, k];
    idx.sort_unstable();
    let [i, j, k] = idx;
    let ij = set.line(i, j)?;
    if set.on_line(&ij, k) {
        return Ok(None);
    }
    let sides = [
        line_multiplicity(set, lines, i, j)?,
        line_multiplicity(set, lines, i, k)?,
        line_multiplicity(set, lines, j, k)?,
    ];
    Ok(sides.iter().all(|&m| m <= c).then_some(TriangleCertificate {
        indices: idx,
        c,
        side_multiplicities: sides,
    }))
}

/// Lexicographically first c-ordinary triangle by sorted index triple.
pub fn find_c_ordinary_triangle(
    set: &PointSet,
    lines: &SpannedLineSet,
    c: usize,
) -> Result<Option<TriangleCertificate>, OrdinaryError> {
    find_c_ordinary_triangle_with(set, lines, c, Execution::default())
}

pub fn find_c_ordinary_triangle_with(
    set: &PointSet,
    lines: &SpannedLineSet,
    c: usize,
    exec: Execution,
) -> Result<Option<TriangleCertificate>, OrdinaryError> {
    let n = set.len();
    if n < 3 {
        return Err(OrdinaryError::TooFewPoints { n });
    }
    let table = PairTable::new(lines);
    Ok(par::find_map_first(exec, n, |i| first_triangle_from(&table, n, i, c)))
}

fn first_triangle_from(table: &PairTable, n: usize, i: usize, c: usize) -> Option<TriangleCertificate> {
    for j in i + 1..n {
        let m_ij = table.multiplicity(i, j);
        if m_ij > c {
            continue;
        }
        let id_ij = table.line_id(i, j);
        for k in j + 1..n {
            if table.line_id(i, k) == id_ij {
                continue;
            }
            let m_ik = table.multiplicity(i, k);
            if m_ik > c {
                continue;
            }
            let m_jk = table.multiplicity(j, k);
            if m_jk <= c {
                return Some(TriangleCertificate {
                    indices: [i, j, k],
                    c,
                    side_multiplicities: [m_ij, m_ik, m_jk],
                });
            }
        }
    }
    None
}

/// First spanned line (canonical order) with exactly two points.
pub fn find_two_ordinary_line<'a>(
    set: &PointSet,
    lines: &'a SpannedLineSet,
) -> Result<SpannedLineRecord<'a>, OrdinaryError> {
    if set.len() < 3 || lines.line_count() == 1 {
        return Err(OrdinaryError::CollinearSet);
    }
    lines.records().find(|r| r.multiplicity() == 2).ok_or_else(|| {
        OrdinaryError::InternalError("non-collinear set without a 2-point line".into())
    })
}

pub fn restricted_set(
    set: &PointSet,
    lines: &SpannedLineSet,
    line: SpannedLineRecord<'_>,
    anchor: usize,
    c: usize,
) -> Result<RestrictedSet, OrdinaryError> {
    set.check_index(anchor)?;
    if line.contains_index(anchor) {
        return Err(OrdinaryError::AnchorOnLine { anchor });
    }
    let mut members = Vec::new();
    for &p in line.incident {
        if line_multiplicity(set, lines, p, anchor)? > c {
            members.push(p);
        }
    }
    Ok(RestrictedSet { anchor, members })
}

/// Points `p ≠ q` whose line to `q` holds at most `c` points.
pub fn neighborhood_set(
    set: &PointSet,
    lines: &SpannedLineSet,
    q: usize,
    c: usize,
) -> Result<Vec<usize>, OrdinaryError> {
    set.check_index(q)?;
    let mut out = Vec::new();
    for p in (0..set.len()).filter(|&p| p != q) {
        if line_multiplicity(set, lines, q, p)? <= c {
            out.push(p);
        }
    }
    Ok(out)
}

/// Which side of the `λn` split a set falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseSplit {
    /// Some line holds at least `λn` points; `record` is the first such line.
    RichLine { record: usize },
    /// Every line holds fewer than `λn` points.
    AllPoor,
}

/// True iff `multiplicity ≥ λn` for `λ = 5/(2(c+1))`.
pub fn meets_lambda(multiplicity: usize, n: usize, c: usize) -> bool {
    let lambda = lambda_of(c as u64);
    num_rational::BigRational::from_integer(BigInt::from(multiplicity))
        >= lambda * BigInt::from(n)
}

pub fn case_split(lines: &SpannedLineSet, c: usize) -> CaseSplit {
    let n = lines.point_count();
    lines
        .records()
        .find(|r| meets_lambda(r.multiplicity(), n, c))
        .map_or(CaseSplit::AllPoor, |r| CaseSplit::RichLine { record: r.index })
}

/// Everything the rich-line procedure computed on its way to a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Case1Trace {
    pub rich_line: usize,
    pub rich_multiplicity: usize,
    pub q: usize,
    pub r: usize,
    pub p_q: RestrictedSet,
    pub p_r: RestrictedSet,
    /// Points of the rich line outside `P_q ∪ P_r` and off the line `qr`.
    pub survivors: Vec<usize>,
    pub certificate: Option<TriangleCertificate>,
}

pub fn case1_find(
    set: &PointSet,
    lines: &SpannedLineSet,
    c: usize,
) -> Result<Option<TriangleCertificate>, OrdinaryError> {
    Ok(case1_trace(set, lines, c)?.certificate)
}

pub fn case1_trace(set: &PointSet, lines: &SpannedLineSet, c: usize) -> Result<Case1Trace, OrdinaryError> {
    case1_trace_with(set, lines, c, Execution::default())
}

pub fn case1_trace_with(
    set: &PointSet,
    lines: &SpannedLineSet,
    c: usize,
    exec: Execution,
) -> Result<Case1Trace, OrdinaryError> {
    let CaseSplit::RichLine { record } = case_split(lines, c) else {
        return Err(OrdinaryError::NoRichLine);
    };
    let rich = lines.record(record);

    // The 2-ordinary line has to be ordinary among the points off the rich line,
    // so it is found in a fresh enumeration of that subset.
    let off: Vec<usize> = (0..set.len()).filter(|&i| !rich.contains_index(i)).collect();
    let rest = set.subset(&off);
    if rest.is_collinear() {
        return Err(OrdinaryError::Unsatisfied);
    }
    let rest_lines = spanned_lines_with(&rest, exec)?;
    let ordinary = find_two_ordinary_line(&rest, &rest_lines)?;
    let (q, r) = (off[ordinary.incident[0]], off[ordinary.incident[1]]);
    let qr = set.line(q, r)?;

    let p_q = restricted_set(set, lines, rich, q, c)?;
    let p_r = restricted_set(set, lines, rich, r, c)?;
    let survivors: Vec<usize> = rich
        .incident
        .iter()
        .copied()
        .filter(|s| p_q.members.binary_search(s).is_err() && p_r.members.binary_search(s).is_err())
        .filter(|&s| !set.on_line(&qr, s))
        .collect();

    let mut certificate = None;
    for &s in &survivors {
        if let Some(cert) = is_c_ordinary_triangle(set, lines, q, r, s, c)? {
            certificate = Some(cert);
            break;
        }
    }
    Ok(Case1Trace {
        rich_line: record,
        rich_multiplicity: rich.multiplicity(),
        q,
        r,
        p_q,
        p_r,
        survivors,
        certificate,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Case1,
    Auto,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleSearch {
    pub requested: Method,
    /// The procedure that produced the answer (`brute` or `case1`).
    pub used: Method,
    pub split: CaseSplit,
    pub certificate: Option<TriangleCertificate>,
}

/// Searches for a c-ordinary triangle with the chosen method.
///
/// `Auto` runs the rich-line procedure when the set has a `λn`-rich line and
/// falls back to brute force otherwise, or when that procedure cannot apply.
pub fn find_triangle(
    set: &PointSet,
    lines: &SpannedLineSet,
    c: usize,
    method: Method,
    exec: Execution,
) -> Result<TriangleSearch, OrdinaryError> {
    let split = case_split(lines, c);
    let brute = |used| -> Result<TriangleSearch, OrdinaryError> {
        Ok(TriangleSearch {
            requested: method,
            used,
            split,
            certificate: find_c_ordinary_triangle_with(set, lines, c, exec)?,
        })
    };
    match method {
        Method::Brute => brute(Method::Brute),
        Method::Case1 => Ok(TriangleSearch {
            requested: method,
            used: Method::Case1,
            split,
            certificate: case1_trace_with(set, lines, c, exec)?.certificate,
        }),
        Method::Auto => match split {
            CaseSplit::AllPoor => brute(Method::Brute),
            CaseSplit::RichLine { .. } => match case1_trace_with(set, lines, c, exec) {
                Ok(Case1Trace { certificate: Some(cert), .. }) => Ok(TriangleSearch {
                    requested: method,
                    used: Method::Case1,
                    split,
                    certificate: Some(cert),
                }),
                Ok(_) | Err(OrdinaryError::Unsatisfied) => brute(Method::Brute),
                Err(e) => Err(e),
            },
        },
    }
}
