//! Brute-force oracles that share no code path with the engine beyond `Point`
//! and `collinear`.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_rational::BigRational;
use ordtri::geometry::{collinear, Point, PointSet};
use proptest::prelude::*;

/// Slope/intercept key: `Vertical(x)` or `Sloped(m, b)` for `y = mx + b`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum NaiveLine {
    Vertical(BigRational),
    Sloped(BigRational, BigRational),
}

pub fn naive_key(p: &Point, q: &Point) -> NaiveLine {
    if p.x() == q.x() {
        NaiveLine::Vertical(p.x().clone())
    } else {
        let m = (q.y() - p.y()) / (q.x() - p.x());
        let b = p.y() - &m * p.x();
        NaiveLine::Sloped(m, b)
    }
}

/// Every spanned line with its incident indices, found by deduplicating all pairs.
pub fn naive_lines(set: &PointSet) -> BTreeMap<NaiveLine, Vec<usize>> {
    let pts = set.points();
    let mut out = BTreeMap::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let key = naive_key(&pts[i], &pts[j]);
            out.entry(key).or_insert_with(|| {
                (0..pts.len()).filter(|&k| k == i || k == j || collinear(&pts[i], &pts[j], &pts[k])).collect()
            });
        }
    }
    out
}

pub fn naive_count_on(set: &PointSet, i: usize, j: usize) -> usize {
    let pts = set.points();
    (0..pts.len()).filter(|&k| k == i || k == j || collinear(&pts[i], &pts[j], &pts[k])).count()
}

/// Unpruned triple scan in index order.
pub fn naive_triangle(set: &PointSet, c: usize) -> Option<([usize; 3], [usize; 3])> {
    let pts = set.points();
    let n = pts.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if collinear(&pts[i], &pts[j], &pts[k]) {
                    continue;
                }
                let sides = [naive_count_on(set, i, j), naive_count_on(set, i, k), naive_count_on(set, j, k)];
                if sides.iter().all(|&m| m <= c) {
                    return Some(([i, j, k], sides));
                }
            }
        }
    }
    None
}

pub fn naive_degrees(set: &PointSet) -> Vec<usize> {
    let mut deg = vec![0; set.len()];
    for incident in naive_lines(set).values() {
        for &i in incident {
            deg[i] += 1;
        }
    }
    deg
}

pub fn grid(w: i64, h: i64) -> PointSet {
    let mut pts = Vec::new();
    for y in 0..h {
        for x in 0..w {
            pts.push((x, y));
        }
    }
    PointSet::from_ints(&pts).unwrap()
}

/// Small integer point sets; a narrow range makes collinear triples common.
pub fn small_int_set(max_len: usize, range: i64) -> impl Strategy<Value = PointSet> {
    prop::collection::btree_set((-range..=range, -range..=range), 2..=max_len)
        .prop_map(|s| PointSet::from_ints(&s.into_iter().collect::<Vec<_>>()).unwrap())
}

/// Rational point sets with small denominators.
pub fn small_rational_set(max_len: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::vec((-6i64..=6, 1i64..=3, -6i64..=6, 1i64..=3), 2..=max_len).prop_filter_map(
        "need two distinct points",
        |v| {
            let set = PointSet::new_dedup(v.into_iter().map(|(a, b, c, d)| Point::from_fracs(a, b, c, d)).collect());
            (set.len() >= 2).then_some(set)
        },
    )
}
