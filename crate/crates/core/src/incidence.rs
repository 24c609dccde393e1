//! Spanned-line enumeration and incidence statistics.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::geometry::{CanonicalLine, PointSet};
use crate::par::{self, Execution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IncidenceError {
    #[error("need at least 2 points, got {n}")]
    TooFewPoints { n: usize },
    #[error("the point set is empty")]
    EmptySet,
}

/// One spanned line together with the sorted indices of the points on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpannedLineRecord<'a> {
    pub index: usize,
    pub line: &'a CanonicalLine,
    pub incident: &'a [usize],
}

impl SpannedLineRecord<'_> {
    pub fn multiplicity(&self) -> usize {
        self.incident.len()
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.incident.binary_search(&i).is_ok()
    }
}

/// Every line through at least two points of a set, sorted by canonical line.
///
/// Incident lists are stored back to back; record `k` owns
/// `incident[offsets[k]..offsets[k + 1]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpannedLineSet {
    n: usize,
    lines: Vec<CanonicalLine>,
    offsets: Vec<usize>,
    incident: Vec<usize>,
}

impl SpannedLineSet {
    pub fn point_count(&self) -> usize {
        self.n
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    pub fn record(&self, k: usize) -> SpannedLineRecord<'_> {
        SpannedLineRecord {
            index: k,
            line: &self.lines[k],
            incident: &self.incident[self.offsets[k]..self.offsets[k + 1]],
        }
    }

    pub fn records(&self) -> impl ExactSizeIterator<Item = SpannedLineRecord<'_>> + '_ {
        (0..self.lines.len()).map(move |k| self.record(k))
    }

    pub fn lines(&self) -> &[CanonicalLine] {
        &self.lines
    }

    /// Record index of `line`, if it is spanned.
    pub fn find(&self, line: &CanonicalLine) -> Option<usize> {
        self.lines.binary_search(line).ok()
    }

    pub fn multiplicity_of(&self, line: &CanonicalLine) -> usize {
        self.find(line).map_or(0, |k| self.record(k).multiplicity())
    }

    pub fn total_incidences(&self) -> usize {
        self.incident.len()
    }
}

/// Enumerates the spanned lines of `set` with the default execution strategy.
pub fn spanned_lines(set: &PointSet) -> Result<SpannedLineSet, IncidenceError> {
    spanned_lines_with(set, Execution::default())
}

/// Enumerates the spanned lines of `set`.
///
/// For each point `i`, the lines to every other point are grouped; a group is
/// emitted only by its smallest member, so each line appears exactly once with
/// its complete incident list. Work per point is independent, which is what
/// the parallel strategy splits on.
pub fn spanned_lines_with(set: &PointSet, exec: Execution) -> Result<SpannedLineSet, IncidenceError> {
    let n = set.len();
    if n < 2 {
        return Err(IncidenceError::TooFewPoints { n });
    }
    let per_point: Vec<Vec<(CanonicalLine, Vec<usize>)>> = par::map_range(exec, n, |i| {
        let mut rays: Vec<(CanonicalLine, usize)> = (0..n)
            .filter(|&j| j != i)
            .map(|j| (set.line_unchecked(i, j).expect("points are distinct"), j))
            .collect();
        rays.sort_by(|a, b| a.0.cmp(&b.0));
        let mut owned = Vec::new();
        let mut start = 0;
        while start < rays.len() {
            let mut end = start + 1;
            while end < rays.len() && rays[end].0 == rays[start].0 {
                end += 1;
            }
            // stable sort keeps j ascending inside a group
            if i < rays[start].1 {
                let mut members = Vec::with_capacity(end - start + 1);
                members.push(i);
                members.extend(rays[start..end].iter().map(|r| r.1));
                owned.push((rays[start].0.clone(), members));
            }
            start = end;
        }
        owned
    });

    let mut all: Vec<(CanonicalLine, Vec<usize>)> = per_point.into_iter().flatten().collect();
    all.sort_by(|a, b| a.0.cmp(&b.0));
    let mut lines = Vec::with_capacity(all.len());
    let mut offsets = Vec::with_capacity(all.len() + 1);
    let mut incident = Vec::new();
    offsets.push(0);
    for (line, members) in all {
        lines.push(line);
        incident.extend(members);
        offsets.push(incident.len());
    }
    Ok(SpannedLineSet { n, lines, offsets, incident })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceSummary {
    pub n: usize,
    pub line_count: usize,
    /// Σ l_i over spanned lines.
    pub incidences: usize,
    /// multiplicity → number of lines with that multiplicity
    pub profile: BTreeMap<usize, usize>,
    pub max_multiplicity: usize,
    /// First record (canonical order) attaining `max_multiplicity`.
    pub richest_line: usize,
    /// Number of spanned lines through each point.
    pub degree: Vec<usize>,
}

impl IncidenceSummary {
    /// Number of lines with more than `k` points.
    pub fn lines_richer_than(&self, k: usize) -> usize {
        self.profile.range(k + 1..).map(|(_, &count)| count).sum()
    }

    pub fn is_collinear(&self) -> bool {
        self.line_count == 1
    }

    pub fn report(&self) -> IncidenceReport {
        IncidenceReport {
            n: self.n,
            line_count: self.line_count,
            incidences: self.incidences,
            profile: self.profile.clone(),
            max_multiplicity: self.max_multiplicity,
        }
    }
}

/// Serialized form of an [`IncidenceSummary`]; field order is the JSON key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IncidenceReport {
    pub n: usize,
    pub line_count: usize,
    pub incidences: usize,
    pub profile: BTreeMap<usize, usize>,
    pub max_multiplicity: usize,
}

pub fn summarize(set: &PointSet, lines: &SpannedLineSet) -> IncidenceSummary {
    debug_assert_eq!(set.len(), lines.point_count());
    let mut profile = BTreeMap::new();
    let mut degree = vec![0; set.len()];
    let mut max_multiplicity = 0;
    let mut richest_line = 0;
    for record in lines.records() {
        let m = record.multiplicity();
        *profile.entry(m).or_insert(0) += 1;
        if m > max_multiplicity {
            max_multiplicity = m;
            richest_line = record.index;
        }
        for &i in record.incident {
            degree[i] += 1;
        }
    }
    IncidenceSummary {
        n: set.len(),
        line_count: lines.line_count(),
        incidences: lines.total_incidences(),
        profile,
        max_multiplicity,
        richest_line,
        degree,
    }
}

/// Returns two lines whose union contains `set`, or `None` if no such pair exists.
///
/// For a collinear set both lines are the same. Otherwise a covering pair must
/// contain a side of any non-collinear triple, so only three candidates are tried.
pub fn covered_by_two_lines(
    set: &PointSet,
) -> Result<Option<(CanonicalLine, CanonicalLine)>, IncidenceError> {
    let n = set.len();
    if n == 0 {
        return Err(IncidenceError::EmptySet);
    }
    if n == 1 {
        let l = horizontal_through(set, 0);
        return Ok(Some((l.clone(), l)));
    }
    let ab = set.line_unchecked(0, 1).expect("points are distinct");
    let Some(c) = (2..n).find(|&i| !set.on_line(&ab, i)) else {
        return Ok(Some((ab.clone(), ab)));
    };
    let candidates = [
        ab,
        set.line_unchecked(0, c).expect("points are distinct"),
        set.line_unchecked(1, c).expect("points are distinct"),
    ];
    for first in candidates {
        let rest: Vec<usize> = (0..n).filter(|&i| !set.on_line(&first, i)).collect();
        match rest.len() {
            0 => return Ok(Some((first.clone(), first))),
            1 => return Ok(Some((first, horizontal_through(set, rest[0])))),
            _ => {
                let second = set.line_unchecked(rest[0], rest[1]).expect("points are distinct");
                if rest[2..].iter().all(|&i| set.on_line(&second, i)) {
                    return Ok(Some((first, second)));
                }
            }
        }
    }
    Ok(None)
}

fn horizontal_through(set: &PointSet, i: usize) -> CanonicalLine {
    let y = set.points()[i].y();
    CanonicalLine::from_rationals(&BigRational::zero(), &BigRational::one(), &-y)
        .expect("b = 1 is nonzero")
}
