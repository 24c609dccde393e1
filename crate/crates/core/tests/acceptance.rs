//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{naive_count_on, naive_degrees, naive_lines, naive_triangle};
use ordtri::bounds::{self, DEFAULT_DIGITS, GUARD_DIGITS};
use ordtri::constructions::{generate, ConstructionSpec};
use ordtri::geometry::{collinear, Point, PointSet};
use ordtri::incidence::{spanned_lines, summarize};
use ordtri::lemmas::check_all;
use ordtri::ordinary::{case1_trace, meets_lambda};
use ordtri::real::Real;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn random(n: usize, seed: u64, range: u64, max_den: u64) -> PointSet {
    generate(&ConstructionSpec::RandomRational { n, seed, range, max_den }).unwrap()
}

fn threshold() -> Outcome {
    let d = DEFAULT_DIGITS;
    let eleven = Real::from_int(11, d + GUARD_DIGITS);
    let t = bounds::threshold_n(11).unwrap();
    let at = bounds::final_bound(7697, d).unwrap();
    let before = bounds::final_bound(7696, d).unwrap();
    let numeric = at < eleven && eleven < before;
    let exact = bounds::final_bound_below(7697, 11) && !bounds::final_bound_below(7696, 11);
    let report = bounds::threshold_report(11, d).unwrap();
    outcome(
        t == 7697 && numeric && exact && report.exact_confirmed,
        format!(
            "threshold_n(11) = {t}; final_bound(7697) = {}; final_bound(7696) = {}; exact = {exact}",
            at.to_sig_string(20),
            before.to_sig_string(20)
        ),
    )
}

fn limit_constant() -> Outcome {
    let d = DEFAULT_DIGITS;
    let s = d + GUARD_DIGITS;
    let v = bounds::final_bound(1_000_000_000_000, d).unwrap();
    let limit = bounds::limit_constant(d);
    let diff = v.sub(&limit).abs();
    let tol = Real::from_ratio(1, 100_000, s);
    outcome(
        diff <= tol,
        format!(
            "final_bound(10^12) = {}, 3(√6+1) = {}, |diff| = {} vs tolerance 1e-5",
            v.to_sig_string(15),
            limit.to_sig_string(15),
            diff.to_sig_string(4)
        ),
    )
}

fn blocker_property() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    let mut counterexamples = 0;
    let mut largest = 0;
    while checked < 200 {
        let n = rng.gen_range(3..=7);
        // a narrow range keeps collinear triples in play
        let base = random(n, rng.gen(), 3, 2);
        if base.is_collinear() {
            continue;
        }
        let out = generate(&ConstructionSpec::Blocker { base, line: None }).unwrap();
        largest = largest.max(out.len());
        if naive_triangle(&out, 2).is_some() {
            counterexamples += 1;
        }
        checked += 1;
    }
    outcome(
        counterexamples == 0,
        format!("{checked} bases, {counterexamples} counterexamples, largest output {largest} points"),
    )
}

fn sample_set(i: usize, rng: &mut ChaCha8Rng) -> (&'static str, PointSet) {
    let spec = match i % 6 {
        0 => ConstructionSpec::Grid { width: rng.gen_range(1..=12), height: rng.gen_range(1..=12) },
        1 => ConstructionSpec::RandomRational {
            n: rng.gen_range(3..=120),
            seed: rng.gen(),
            range: rng.gen_range(8..=30),
            max_den: rng.gen_range(1..=4),
        },
        2 => ConstructionSpec::NearPencil { k: rng.gen_range(2..=60) },
        3 => {
            let extras = (0..rng.gen_range(0..=3))
                .map(|_| Point::from_ints(rng.gen_range(1..=20), rng.gen_range(1..=20)))
                .collect::<Vec<_>>();
            let mut extras_dedup = extras.clone();
            extras_dedup.sort();
            extras_dedup.dedup();
            ConstructionSpec::TwoLineConfig { on_x: rng.gen_range(1..=40), on_y: rng.gen_range(1..=40), extras: extras_dedup }
        }
        4 => {
            let count = rng.gen_range(3..=40);
            let mut ts: Vec<i64> = (-25..=25).collect();
            for k in (1..ts.len()).rev() {
                ts.swap(k, rng.gen_range(0..=k));
            }
            ts.truncate(count);
            ConstructionSpec::CubicFamily { params: ts.into_iter().map(|t| BigRational::from_integer(t.into())).collect() }
        }
        _ => loop {
            let base = random(rng.gen_range(3..=8), rng.gen(), 5, 2);
            if !base.is_collinear() {
                break ConstructionSpec::Blocker { base, line: None };
            }
        },
    };
    (spec.kind(), generate(&spec).unwrap())
}

fn lemma_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let ks: Vec<usize> = (2..=12).collect();
    let (mut verdicts, mut applicable, mut failures) = (0, 0, Vec::new());
    for i in 0..500 {
        let (kind, set) = sample_set(i, &mut rng);
        if set.len() < 2 {
            continue;
        }
        let summary = summarize(&set, &spanned_lines(&set).unwrap());
        for v in check_all(&summary, &ks).unwrap() {
            verdicts += 1;
            applicable += usize::from(v.applicable);
            if !v.ok() {
                failures.push(format!("set {i} ({kind}): {:?}", v.lemma));
            }
        }
    }
    let mut detail = format!("500 sets, {verdicts} verdicts, {applicable} applicable, {} failures", failures.len());
    if let Some(first) = failures.first() {
        detail.push_str(&format!("; first: {first}"));
    }
    outcome(failures.is_empty(), detail)
}

fn pair_counting() -> Outcome {
    let c2 = |m: u64| m * (m.saturating_sub(1)) / 2;
    let mut sets: Vec<(String, ConstructionSpec)> = [10, 100, 500, 1000, 2000]
        .into_iter()
        .map(|n| {
            (format!("random_rational n={n}"), ConstructionSpec::RandomRational { n, seed: n as u64, range: 1000, max_den: 7 })
        })
        .collect();
    sets.push(("random_rational n=2000 dense".into(), ConstructionSpec::RandomRational { n: 2000, seed: 1, range: 40, max_den: 1 }));
    sets.push(("grid 40x50".into(), ConstructionSpec::Grid { width: 40, height: 50 }));
    sets.push(("near_pencil 1999".into(), ConstructionSpec::NearPencil { k: 1999 }));
    sets.push(("two_line 1000+1000".into(), ConstructionSpec::TwoLineConfig { on_x: 1000, on_y: 1000, extras: vec![] }));
    sets.push((
        "cubic_family 2000".into(),
        ConstructionSpec::CubicFamily { params: (-1000..1000).map(|t| BigRational::from_integer(BigInt::from(t))).collect() },
    ));
    let mut pass = true;
    let mut slowest = Duration::ZERO;
    let mut notes = Vec::new();
    for (name, spec) in &sets {
        let set = generate(spec).unwrap();
        let start = Instant::now();
        let lines = spanned_lines(&set).unwrap();
        let elapsed = start.elapsed();
        let lhs: u64 = lines.records().map(|r| c2(r.multiplicity() as u64)).sum();
        let ok = lhs == c2(set.len() as u64);
        if set.len() >= 2000 {
            slowest = slowest.max(elapsed);
        }
        if !ok {
            notes.push(format!("{name}: {lhs} ≠ {}", c2(set.len() as u64)));
        }
        pass &= ok;
    }
    pass &= slowest < Duration::from_secs(60);
    let mut detail = format!("{} sets up to n = 2000, slowest n = 2000 enumeration {:.2?} (limit 60 s)", sets.len(), slowest);
    for note in notes {
        detail.push_str(&format!("; {note}"));
    }
    outcome(pass, detail)
}

/// `clustered` draws small integer off-line points, so lines through them
/// pick up several points of the rich line.
fn case1_instance(rng: &mut ChaCha8Rng, c: usize, clustered: bool) -> PointSet {
    loop {
        let m = rng.gen_range(25..=60usize);
        // m ≥ λn with λ = 5/24 allows up to 24m/5 points in total
        let max_off = (24 * m / 5 - m).min(60);
        let off_count = rng.gen_range(3..=max_off);
        let mut pts: Vec<Point> = (0..m as i64).map(|x| Point::from_ints(x, 0)).collect();
        while pts.len() < m + off_count {
            let p = if clustered {
                Point::from_ints(rng.gen_range(-10..=70), rng.gen_range(1..=4))
            } else {
                let q = rng.gen_range(1..=5i64);
                Point::from_fracs(rng.gen_range(-200..=200), q, rng.gen_range(1..=200), q)
            };
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        let set = PointSet::new(pts).unwrap();
        if meets_lambda(m, set.len(), c) && !set.subset(&(m..set.len()).collect::<Vec<_>>()).is_collinear() {
            return set;
        }
    }
}

fn case1_soundness() -> Outcome {
    let c = 11;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut failures = Vec::new();
    let mut min_ratio = f64::INFINITY;
    for i in 0..100 {
        let set = case1_instance(&mut rng, c, i % 2 == 1);
        let lines = spanned_lines(&set).unwrap();
        let trace = match case1_trace(&set, &lines, c) {
            Ok(t) => t,
            Err(e) => {
                failures.push(format!("instance {i}: {e}"));
                continue;
            }
        };
        let Some(cert) = &trace.certificate else {
            failures.push(format!("instance {i}: no certificate"));
            continue;
        };
        // re-validate by brute force
        let [a, b, d] = cert.indices;
        let p = set.points();
        let sides = [naive_count_on(&set, a, b), naive_count_on(&set, a, d), naive_count_on(&set, b, d)];
        if collinear(&p[a], &p[b], &p[d]) || sides.iter().any(|&m| m > c) || sides != cert.side_multiplicities {
            failures.push(format!("instance {i}: certificate {:?} does not re-validate", cert.indices));
        }
        let l_i = trace.rich_multiplicity;
        if 5 * trace.survivors.len() < l_i {
            failures.push(format!("instance {i}: {} survivors on a {l_i}-point line", trace.survivors.len()));
        }
        min_ratio = min_ratio.min(trace.survivors.len() as f64 / l_i as f64);
    }
    let mut detail = format!("100 instances, c = 11, {} failures, min survivors/l_i = {min_ratio:.3}", failures.len());
    if let Some(first) = failures.first() {
        detail.push_str(&format!("; first: {first}"));
    }
    outcome(failures.is_empty(), detail)
}

fn grid_fixture() -> Outcome {
    let set = common::grid(3, 3);
    let summary = summarize(&set, &spanned_lines(&set).unwrap());
    let oracle = naive_lines(&set);
    let oracle_incidences: usize = oracle.values().map(Vec::len).sum();
    let oracle_degree = naive_degrees(&set)[4];
    let profile: Vec<(usize, usize)> = summary.profile.iter().map(|(&k, &v)| (k, v)).collect();
    let pass = summary.line_count == 20
        && oracle.len() == 20
        && profile == [(2, 12), (3, 8)]
        && summary.incidences == 48
        && oracle_incidences == 48
        && summary.degree[4] == 4
        && oracle_degree == 4;
    outcome(
        pass,
        format!(
            "line_count {}, profile {:?}, incidences {}, center degree {}",
            summary.line_count, summary.profile, summary.incidences, summary.degree[4]
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 threshold reproduction", threshold),
        ("2 limit constant", limit_constant),
        ("3 blocker property", blocker_property),
        ("4 lemma oracle suite", lemma_suite),
        ("5 pair-counting invariant", pair_counting),
        ("6 case-1 soundness", case1_soundness),
        ("7 grid fixtures", grid_fixture),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let o = run();
        failed += usize::from(!o.pass);
        println!("{} criterion {name}: {} [{:.2?}]", if o.pass { "PASS" } else { "FAIL" }, o.detail, start.elapsed());
    }
    println!(
        "NOTE criterion 8 full-scale theorem: not checkable by enumeration; covered by the lemma, \
         case-split and case-1 property suites"
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
