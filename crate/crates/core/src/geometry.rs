//! Exact rational points, canonical integer lines and the predicates built on them.
//!
//! Points are stored as reduced rationals. For the hot paths every point also
//! carries a homogeneous integer form `(X, Y, Z)` with `Z > 0`, so that the line
//! through two points is a plain integer cross product. When all three
//! homogeneous coordinates fit in an `i64`, the cross product is done in `i128`
//! and never overflows.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("the two points are identical")]
    IdenticalPoints,
    #[error("the two lines coincide")]
    CoincidentLines,
    #[error("line coefficients a and b are both zero")]
    DegenerateLine,
    #[error("point {second} duplicates point {first}")]
    DuplicatePoint { first: usize, second: usize },
    #[error("point index {index} out of range for a set of {len} points")]
    IndexOutOfRange { index: usize, len: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

/// A planar point with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    x: BigRational,
    y: BigRational,
}

impl Point {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(BigRational::from_integer(x.into()), BigRational::from_integer(y.into()))
    }

    /// `(xn/xd, yn/yd)`. Panics on a zero denominator.
    pub fn from_fracs(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        Point::new(
            BigRational::new(xn.into(), xd.into()),
            BigRational::new(yn.into(), yd.into()),
        )
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn y(&self) -> &BigRational {
        &self.y
    }

    pub(crate) fn homogeneous(&self) -> Homogeneous {
        let xd = self.x.denom();
        let yd = self.y.denom();
        let z = xd.lcm(yd);
        let hx = self.x.numer() * (&z / xd);
        let hy = self.y.numer() * (&z / yd);
        Homogeneous::from_big(hx, hy, z)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.x, self.y)
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(2))?;
        seq.serialize_element(&self.x.to_string())?;
        seq.serialize_element(&self.y.to_string())?;
        seq.end()
    }
}

/// Homogeneous integer coordinates `(X, Y, Z)` of an affine point, `Z > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Homogeneous {
    Small([i64; 3]),
    Big(Box<[BigInt; 3]>),
}

impl Homogeneous {
    fn from_big(x: BigInt, y: BigInt, z: BigInt) -> Self {
        match (x.to_i64(), y.to_i64(), z.to_i64()) {
            (Some(x), Some(y), Some(z)) => Homogeneous::Small([x, y, z]),
            _ => Homogeneous::Big(Box::new([x, y, z])),
        }
    }

    fn to_big(&self) -> [BigInt; 3] {
        match self {
            Homogeneous::Small(v) => [v[0].into(), v[1].into(), v[2].into()],
            Homogeneous::Big(v) => (**v).clone(),
        }
    }
}

fn cross_big(p: &[BigInt; 3], q: &[BigInt; 3]) -> [BigInt; 3] {
    [
        &p[1] * &q[2] - &p[2] * &q[1],
        &p[2] * &q[0] - &p[0] * &q[2],
        &p[0] * &q[1] - &p[1] * &q[0],
    ]
}

fn dot_big(l: &[BigInt; 3], p: &[BigInt; 3]) -> BigInt {
    &l[0] * &p[0] + &l[1] * &p[1] + &l[2] * &p[2]
}

/// Line through two points given in homogeneous form, or `None` if they coincide.
pub(crate) fn line_through_homogeneous(p: &Homogeneous, q: &Homogeneous) -> Option<CanonicalLine> {
    match (p, q) {
        (Homogeneous::Small(p), Homogeneous::Small(q)) => {
            let (p0, p1, p2) = (p[0] as i128, p[1] as i128, p[2] as i128);
            let (q0, q1, q2) = (q[0] as i128, q[1] as i128, q[2] as i128);
            // Both points are affine (Z > 0), so scaling by Z keeps the sign convention
            // of (y1 - y2, x2 - x1, ...) and the cross product is exactly that line.
            let a = p1 * q2 - p2 * q1;
            let b = p2 * q0 - p0 * q2;
            let c = p0 * q1 - p1 * q0;
            CanonicalLine::from_i128(a, b, c)
        }
        _ => {
            let l = cross_big(&p.to_big(), &q.to_big());
            CanonicalLine::from_big(l[0].clone(), l[1].clone(), l[2].clone()).ok()
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Coeffs {
    Small([i64; 3]),
    Big(Box<[BigInt; 3]>),
}

/// A line `ax + by + c = 0` in canonical integer form.
///
/// `gcd(|a|, |b|, |c|) = 1` and the first nonzero coefficient is positive, so two
/// values compare equal exactly when they describe the same geometric line.
/// Ordering is lexicographic on `(a, b, c)`.
#[derive(Clone, PartialEq, Eq)]
pub struct CanonicalLine(Coeffs);

impl Hash for CanonicalLine {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl CanonicalLine {
    /// Normalizes arbitrary integer coefficients.
    pub fn from_big(a: BigInt, b: BigInt, c: BigInt) -> Result<Self, GeometryError> {
        if a.is_zero() && b.is_zero() {
            return Err(GeometryError::DegenerateLine);
        }
        let g = a.gcd(&b).gcd(&c);
        let (mut a, mut b, mut c) = (a / &g, b / &g, c / &g);
        let first_negative = if !a.is_zero() { a.is_negative() } else { b.is_negative() };
        if first_negative {
            a = -a;
            b = -b;
            c = -c;
        }
        Ok(match (a.to_i64(), b.to_i64(), c.to_i64()) {
            (Some(a), Some(b), Some(c)) => CanonicalLine(Coeffs::Small([a, b, c])),
            _ => CanonicalLine(Coeffs::Big(Box::new([a, b, c]))),
        })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self, GeometryError> {
        Self::from_big(a.into(), b.into(), c.into())
    }

    /// Line `ax + by + c = 0` with rational coefficients.
    pub fn from_rationals(
        a: &BigRational,
        b: &BigRational,
        c: &BigRational,
    ) -> Result<Self, GeometryError> {
        let den = a.denom().lcm(b.denom()).lcm(c.denom());
        let scale = |r: &BigRational| r.numer() * (&den / r.denom());
        Self::from_big(scale(a), scale(b), scale(c))
    }

    fn from_i128(a: i128, b: i128, c: i128) -> Option<Self> {
        if a == 0 && b == 0 {
            return None;
        }
        let g = a.gcd(&b).gcd(&c);
        let (mut a, mut b, mut c) = (a / g, b / g, c / g);
        if a < 0 || (a == 0 && b < 0) {
            a = -a;
            b = -b;
            c = -c;
        }
        Some(match (i64::try_from(a), i64::try_from(b), i64::try_from(c)) {
            (Ok(a), Ok(b), Ok(c)) => CanonicalLine(Coeffs::Small([a, b, c])),
            _ => CanonicalLine(Coeffs::Big(Box::new([a.into(), b.into(), c.into()]))),
        })
    }

    /// Coefficients `(a, b, c)`.
    pub fn coefficients(&self) -> [BigInt; 3] {
        match &self.0 {
            Coeffs::Small(v) => [v[0].into(), v[1].into(), v[2].into()],
            Coeffs::Big(v) => (**v).clone(),
        }
    }

    /// Exact membership test by substitution.
    pub fn contains(&self, p: &Point) -> bool {
        self.contains_homogeneous(&p.homogeneous())
    }

    pub(crate) fn contains_homogeneous(&self, p: &Homogeneous) -> bool {
        match (&self.0, p) {
            (Coeffs::Small(l), Homogeneous::Small(p)) => {
                let l = l.map(|v| v as i128);
                let p = p.map(|v| v as i128);
                // |l_i p_i| < 2^126, so the sum of three terms can overflow;
                // checked arithmetic falls back to the big path.
                let sum = (l[0] * p[0])
                    .checked_add(l[1] * p[1])
                    .and_then(|s| s.checked_add(l[2] * p[2]));
                match sum {
                    Some(s) => s == 0,
                    None => dot_big(&self.coefficients(), &p.map(BigInt::from)).is_zero(),
                }
            }
            _ => dot_big(&self.coefficients(), &p.to_big()).is_zero(),
        }
    }

    /// True when the two lines have proportional `(a, b)`.
    pub fn is_parallel_to(&self, other: &CanonicalLine) -> bool {
        let l = self.coefficients();
        let m = other.coefficients();
        (&l[0] * &m[1] - &l[1] * &m[0]).is_zero()
    }

    pub fn is_vertical(&self) -> bool {
        match &self.0 {
            Coeffs::Small(v) => v[1] == 0,
            Coeffs::Big(v) => v[1].is_zero(),
        }
    }
}

impl Ord for CanonicalLine {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Coeffs::Small(a), Coeffs::Small(b)) => a.cmp(b),
            _ => self.coefficients().cmp(&other.coefficients()),
        }
    }
}

impl PartialOrd for CanonicalLine {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CanonicalLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.coefficients();
        write!(f, "({a}, {b}, {c})")
    }
}

impl fmt::Display for CanonicalLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.coefficients();
        write!(f, "{a}x + {b}y + {c} = 0")
    }
}

impl Serialize for CanonicalLine {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(3))?;
        for v in self.coefficients() {
            seq.serialize_element(&v.to_string())?;
        }
        seq.end()
    }
}

impl FromStr for CanonicalLine {
    type Err = String;

    /// Parses `a,b,c` (integers or fractions) as the line `ax + by + c = 0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(format!("expected three comma-separated coefficients, got {s:?}"));
        }
        let coeffs = parts
            .iter()
            .map(|p| parse_rational(p))
            .collect::<Result<Vec<_>, _>>()?;
        CanonicalLine::from_rationals(&coeffs[0], &coeffs[1], &coeffs[2]).map_err(|e| e.to_string())
    }
}

/// The line through `p` and `q`.
pub fn line_through(p: &Point, q: &Point) -> Result<CanonicalLine, GeometryError> {
    line_through_homogeneous(&p.homogeneous(), &q.homogeneous()).ok_or(GeometryError::IdenticalPoints)
}

/// True iff the orientation determinant of `p, q, r` is exactly zero.
pub fn collinear(p: &Point, q: &Point, r: &Point) -> bool {
    let dx1 = &q.x - &p.x;
    let dy1 = &q.y - &p.y;
    let dx2 = &r.x - &p.x;
    let dy2 = &r.y - &p.y;
    (dx1 * dy2 - dy1 * dx2).is_zero()
}

/// The common point of two distinct lines, or `None` when they are parallel.
pub fn intersect(l1: &CanonicalLine, l2: &CanonicalLine) -> Result<Option<Point>, GeometryError> {
    if l1 == l2 {
        return Err(GeometryError::CoincidentLines);
    }
    let [x, y, z] = cross_big(&l1.coefficients(), &l2.coefficients());
    if z.is_zero() {
        return Ok(None);
    }
    Ok(Some(Point::new(
        BigRational::new(x, z.clone()),
        BigRational::new(y, z),
    )))
}

/// An ordered set of distinct points. Indices are stable for the lifetime of the set.
#[derive(Clone)]
pub struct PointSet {
    points: Vec<Point>,
    homogeneous: Vec<Homogeneous>,
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points
    }
}

impl Eq for PointSet {}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.points).finish()
    }
}

impl PointSet {
    /// Builds a set, rejecting repeated points.
    pub fn new(points: Vec<Point>) -> Result<Self, GeometryError> {
        let mut seen = std::collections::HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if let Some(&first) = seen.get(p) {
                return Err(GeometryError::DuplicatePoint { first, second: i });
            }
            seen.insert(p, i);
        }
        let homogeneous = points.iter().map(Point::homogeneous).collect();
        Ok(PointSet { points, homogeneous })
    }

    /// Builds a set keeping the first occurrence of each point.
    pub fn new_dedup(points: Vec<Point>) -> Self {
        let mut seen = std::collections::HashSet::with_capacity(points.len());
        let points: Vec<Point> = points.into_iter().filter(|p| seen.insert(p.clone())).collect();
        let homogeneous = points.iter().map(Point::homogeneous).collect();
        PointSet { points, homogeneous }
    }

    pub fn from_ints(coords: &[(i64, i64)]) -> Result<Self, GeometryError> {
        Self::new(coords.iter().map(|&(x, y)| Point::from_ints(x, y)).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, index: usize) -> Result<&Point, GeometryError> {
        self.points.get(index).ok_or(GeometryError::IndexOutOfRange { index, len: self.len() })
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    /// Line through points `i` and `j` of the set.
    pub fn line(&self, i: usize, j: usize) -> Result<CanonicalLine, GeometryError> {
        self.check_index(i)?;
        self.check_index(j)?;
        line_through_homogeneous(&self.homogeneous[i], &self.homogeneous[j])
            .ok_or(GeometryError::IdenticalPoints)
    }

    pub(crate) fn line_unchecked(&self, i: usize, j: usize) -> Option<CanonicalLine> {
        line_through_homogeneous(&self.homogeneous[i], &self.homogeneous[j])
    }

    pub(crate) fn on_line(&self, line: &CanonicalLine, i: usize) -> bool {
        line.contains_homogeneous(&self.homogeneous[i])
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<(), GeometryError> {
        if index < self.len() {
            Ok(())
        } else {
            Err(GeometryError::IndexOutOfRange { index, len: self.len() })
        }
    }

    /// Subset by index list, in the given order.
    pub fn subset(&self, indices: &[usize]) -> PointSet {
        PointSet {
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
            homogeneous: indices.iter().map(|&i| self.homogeneous[i].clone()).collect(),
        }
    }

    /// True when every point lies on one line (vacuously for n ≤ 2).
    pub fn is_collinear(&self) -> bool {
        if self.len() <= 2 {
            return true;
        }
        let line = self.line_unchecked(0, 1).expect("distinct points");
        (2..self.len()).all(|i| self.on_line(&line, i))
    }

    /// Serializes to the point-set text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.points {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the point-set text format: one `x y` pair per line, coordinates as
    /// signed integers or `p/q` fractions, `#` comments, blank lines ignored.
    pub fn parse(text: &str) -> Result<PointSet, ParseError> {
        let mut points = Vec::new();
        let mut line_of = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = no + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(ParseError {
                    line,
                    message: format!("expected two coordinates, found {}", fields.len()),
                });
            }
            let x = parse_rational(fields[0]).map_err(|message| ParseError { line, message })?;
            let y = parse_rational(fields[1]).map_err(|message| ParseError { line, message })?;
            points.push(Point::new(x, y));
            line_of.push(line);
        }
        PointSet::new(points).map_err(|e| match e {
            GeometryError::DuplicatePoint { first, second } => ParseError {
                line: line_of[second],
                message: format!("duplicate of the point on line {}", line_of[first]),
            },
            other => ParseError { line: 0, message: other.to_string() },
        })
    }
}

/// Parses `[+-]digits` or `[+-]digits/digits`.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    fn int(s: &str, whole: &str) -> Result<BigInt, String> {
        let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("malformed number {whole:?}"));
        }
        let v: BigInt = digits.parse().map_err(|_| format!("malformed number {whole:?}"))?;
        Ok(if s.starts_with('-') { -v } else { v })
    }
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(int(s, s)?)),
        Some((n, d)) => {
            let n = int(n, s)?;
            let d = int(d, s)?;
            if d.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(n, d))
        }
    }
}
