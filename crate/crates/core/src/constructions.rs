//! Point-set generators: the line-blocker constructions and the fixture families.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::geometry::{intersect, CanonicalLine, GeometryError, Point, PointSet};
use crate::incidence::{spanned_lines, IncidenceError};

/// Identifier of the pseudo-random scheme behind [`ConstructionSpec::RandomRational`].
///
/// `rr-v1`: a `ChaCha8Rng` seeded with `seed_from_u64(seed)`. Each coordinate draws
/// a denominator `q` uniformly from `1..=max_den`, then a numerator uniformly
/// from `-range·q..=range·q` (x first, then y). Points already drawn are
/// rejected and redrawn until `n` distinct points exist.
pub const RANDOM_SCHEME: &str = "rr-v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("blocker line passes through point {index}")]
    LineHitsPointSet { index: usize },
    #[error("blocker line is parallel to the spanned line {line}")]
    ParallelSpannedLine { line: CanonicalLine },
    #[error("blocker lines must be pairwise distinct")]
    DuplicateBlockerLines,
    #[error("no admissible blocker line found among the candidates")]
    NoBlockerLine,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

impl From<IncidenceError> for ConstructionError {
    fn from(e: IncidenceError) -> Self {
        ConstructionError::InvalidParameters(e.to_string())
    }
}

/// How the blocker lines of a construction are chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockerLines {
    /// Search for this many admissible lines with [`find_blocker_lines`].
    Auto(usize),
    Given(Vec<CanonicalLine>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionSpec {
    Blocker { base: PointSet, line: Option<CanonicalLine> },
    KLineBlocker { base: PointSet, lines: BlockerLines },
    /// `{0..width} × {0..height}`, x varying fastest.
    Grid { width: usize, height: usize },
    RandomRational { n: usize, seed: u64, range: u64, max_den: u64 },
    /// `on_x` points `(i, 0)` for `i in 0..on_x`, `on_y` points `(0, j)` for
    /// `j in 1..=on_y`, then the extras.
    TwoLineConfig { on_x: usize, on_y: usize, extras: Vec<Point> },
    /// `k` points `(i, 0)` plus the apex `(0, 1)`.
    NearPencil { k: usize },
    /// Points `(t, t³)`; three are collinear iff their parameters sum to zero.
    CubicFamily { params: Vec<BigRational> },
}

impl ConstructionSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            ConstructionSpec::Blocker { .. } => "blocker",
            ConstructionSpec::KLineBlocker { .. } => "k_line_blocker",
            ConstructionSpec::Grid { .. } => "grid",
            ConstructionSpec::RandomRational { .. } => "random_rational",
            ConstructionSpec::TwoLineConfig { .. } => "two_line_config",
            ConstructionSpec::NearPencil { .. } => "near_pencil",
            ConstructionSpec::CubicFamily { .. } => "cubic_family",
        }
    }
}

pub fn generate(spec: &ConstructionSpec) -> Result<PointSet, ConstructionError> {
    let invalid = |m: &str| Err(ConstructionError::InvalidParameters(m.to_string()));
    match spec {
        ConstructionSpec::Blocker { base, line } => {
            let line = match line {
                Some(l) => l.clone(),
                None => find_blocker_lines(base, 1)?.remove(0),
            };
            blocker(base, &line)
        }
        ConstructionSpec::KLineBlocker { base, lines } => {
            let lines = match lines {
                BlockerLines::Auto(count) => find_blocker_lines(base, *count)?,
                BlockerLines::Given(lines) => lines.clone(),
            };
            k_line_blocker(base, &lines)
        }
        &ConstructionSpec::Grid { width, height } => {
            if width == 0 || height == 0 {
                return invalid("grid dimensions must be positive");
            }
            let mut pts = Vec::with_capacity(width * height);
            for y in 0..height as i64 {
                for x in 0..width as i64 {
                    pts.push(Point::from_ints(x, y));
                }
            }
            Ok(PointSet::new(pts)?)
        }
        &ConstructionSpec::RandomRational { n, seed, range, max_den } => {
            random_rational(n, seed, range, max_den)
        }
        ConstructionSpec::TwoLineConfig { on_x, on_y, extras } => {
            let mut pts: Vec<Point> = (0..*on_x as i64).map(|i| Point::from_ints(i, 0)).collect();
            pts.extend((1..=*on_y as i64).map(|j| Point::from_ints(0, j)));
            pts.extend(extras.iter().cloned());
            PointSet::new(pts).map_err(|e| ConstructionError::InvalidParameters(e.to_string()))
        }
        &ConstructionSpec::NearPencil { k } => {
            if k == 0 {
                return invalid("near_pencil needs k ≥ 1");
            }
            let mut pts: Vec<Point> = (0..k as i64).map(|i| Point::from_ints(i, 0)).collect();
            pts.push(Point::from_ints(0, 1));
            Ok(PointSet::new(pts)?)
        }
        ConstructionSpec::CubicFamily { params } => {
            let pts = params.iter().map(|t| Point::new(t.clone(), t * t * t)).collect();
            PointSet::new(pts).map_err(|_| {
                ConstructionError::InvalidParameters("cubic_family parameters must be distinct".into())
            })
        }
    }
}

fn random_rational(n: usize, seed: u64, range: u64, max_den: u64) -> Result<PointSet, ConstructionError> {
    if range == 0 || max_den == 0 {
        return Err(ConstructionError::InvalidParameters(
            "random_rational needs range ≥ 1 and max_den ≥ 1".into(),
        ));
    }
    let range = i64::try_from(range)
        .ok()
        .filter(|r| r.checked_mul(max_den as i64).is_some())
        .ok_or_else(|| ConstructionError::InvalidParameters("range × max_den overflows".into()))?;
    // (2·range + 1)² integer points alone are available; demand far fewer
    let available = (2 * range as u128 + 1).pow(2);
    if n as u128 > available / 2 {
        return Err(ConstructionError::InvalidParameters(format!(
            "{n} distinct points requested from a range of {range}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coord = |rng: &mut ChaCha8Rng| {
        let q = rng.gen_range(1..=max_den as i64);
        let p = rng.gen_range(-range * q..=range * q);
        BigRational::new(p.into(), q.into())
    };
    let mut seen = HashSet::with_capacity(n);
    let mut pts = Vec::with_capacity(n);
    while pts.len() < n {
        let x = coord(&mut rng);
        let y = coord(&mut rng);
        let p = Point::new(x, y);
        if seen.insert(p.clone()) {
            pts.push(p);
        }
    }
    Ok(PointSet::new(pts)?)
}

fn check_blocker(set: &PointSet, line: &CanonicalLine, spanned: &[CanonicalLine]) -> Result<(), ConstructionError> {
    if let Some(index) = set.points().iter().position(|p| line.contains(p)) {
        return Err(ConstructionError::LineHitsPointSet { index });
    }
    if let Some(l) = spanned.iter().find(|l| l.is_parallel_to(line)) {
        return Err(ConstructionError::ParallelSpannedLine { line: l.clone() });
    }
    Ok(())
}

fn spanned_or_empty(set: &PointSet) -> Result<Vec<CanonicalLine>, ConstructionError> {
    if set.len() < 2 {
        return Ok(Vec::new());
    }
    Ok(spanned_lines(set)?.lines().to_vec())
}

/// Adds to `set` the point where `line` meets each of its spanned lines.
///
/// Afterwards every originally spanned line carries a third point, so no
/// triangle in the result is 2-ordinary.
pub fn blocker(set: &PointSet, line: &CanonicalLine) -> Result<PointSet, ConstructionError> {
    k_line_blocker(set, std::slice::from_ref(line))
}

/// [`blocker`] for several lines at once. Intersections are taken with the
/// lines spanned by the original set only.
pub fn k_line_blocker(set: &PointSet, lines: &[CanonicalLine]) -> Result<PointSet, ConstructionError> {
    let distinct: HashSet<&CanonicalLine> = lines.iter().collect();
    if distinct.len() != lines.len() {
        return Err(ConstructionError::DuplicateBlockerLines);
    }
    let spanned = spanned_or_empty(set)?;
    for line in lines {
        check_blocker(set, line, &spanned)?;
    }
    let mut pts = set.points().to_vec();
    for line in lines {
        for s in &spanned {
            let p = intersect(s, line)?.expect("non-parallel was checked");
            pts.push(p);
        }
    }
    // several spanned lines may cross a blocker line at one point
    Ok(PointSet::new_dedup(pts))
}

/// Finds `count` admissible blocker lines for `set`.
///
/// Vertical lines `x = X` right of every point are tried first; if some spanned
/// line is vertical, lines `y = sx + t` with slopes `1, −1, 2, −2, 1/2, −1/2, …`
/// are tried instead, with `t` above every point. All lines returned share one
/// direction, so they are pairwise distinct and never meet inside the set.
pub fn find_blocker_lines(set: &PointSet, count: usize) -> Result<Vec<CanonicalLine>, ConstructionError> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let spanned = spanned_or_empty(set)?;
    let pts = set.points();
    if !spanned.iter().any(CanonicalLine::is_vertical) {
        let max_x = pts.iter().map(|p| p.x().floor()).max().unwrap_or_else(BigRational::zero);
        let lines = (1..=count)
            .map(|k| {
                let x = max_x.clone() + BigRational::from_integer(k.into());
                CanonicalLine::from_rationals(&BigRational::one(), &BigRational::zero(), &-x)
            })
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(lines);
    }
    for slope in slope_candidates(64) {
        let probe = CanonicalLine::from_rationals(&slope, &-BigRational::one(), &BigRational::zero())?;
        if spanned.iter().any(|l| l.is_parallel_to(&probe)) {
            continue;
        }
        let top = pts
            .iter()
            .map(|p| (p.y() - &slope * p.x()).floor())
            .max()
            .unwrap_or_else(BigRational::zero);
        let lines = (1..=count)
            .map(|k| {
                let t = top.clone() + BigRational::from_integer(k.into());
                CanonicalLine::from_rationals(&slope, &-BigRational::one(), &t)
            })
            .collect::<Result<Vec<_>, _>>()?;
        for line in &lines {
            check_blocker(set, line, &spanned)?;
        }
        return Ok(lines);
    }
    Err(ConstructionError::NoBlockerLine)
}

/// Nonzero reduced slopes `±p/q` ordered by `max(p, q)`, then by size.
fn slope_candidates(max_height: i64) -> impl Iterator<Item = BigRational> {
    (1..=max_height).flat_map(|h| {
        let mut fracs: Vec<(i64, i64)> = Vec::new();
        for p in 1..=h {
            for q in 1..=h {
                if p.max(q) == h && p.gcd(&q) == 1 {
                    fracs.push((p, q));
                }
            }
        }
        fracs.sort_by(|a, b| (b.0 * a.1).cmp(&(a.0 * b.1)));
        fracs.into_iter().flat_map(|(p, q)| {
            [
                BigRational::new(BigInt::from(p), BigInt::from(q)),
                BigRational::new(BigInt::from(-p), BigInt::from(q)),
            ]
        })
    })
}
