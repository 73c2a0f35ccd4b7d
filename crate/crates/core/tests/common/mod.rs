//! Proptest strategies on dyadic grids, so sums and scalings stay exact.

#![allow(dead_code)]

use fnspace::{FuzzyNum, PlFun};
use proptest::prelude::*;

fn grid(inner: &std::collections::BTreeSet<u32>) -> Vec<f64> {
    let mut ts = vec![0.0];
    ts.extend(inner.iter().map(|&k| k as f64 / 64.0));
    ts.push(1.0);
    ts
}

fn value(k: i32) -> f64 {
    k as f64 / 256.0
}

/// Piecewise-linear with independent segment ends, so jumps are common.
pub fn plfun() -> impl Strategy<Value = PlFun> {
    (
        prop::collection::btree_set(1u32..64, 0..4),
        prop::collection::vec((-768i32..768, -768i32..768), 5),
    )
        .prop_map(|(inner, vals)| {
            let ts = grid(&inner);
            let segs = (0..ts.len() - 1)
                .map(|i| (value(vals[i].0), value(vals[i].1)))
                .collect();
            PlFun::new(ts, segs).expect("sorted grid")
        })
}

pub fn continuous_plfun() -> impl Strategy<Value = PlFun> {
    (
        prop::collection::btree_set(1u32..64, 0..4),
        prop::collection::vec(-768i32..768, 5),
    )
        .prop_map(|(inner, vals)| {
            let ts = grid(&inner);
            let vs: Vec<f64> = vals[..ts.len()].iter().map(|&k| value(k)).collect();
            PlFun::interpolate(&ts, &vs).expect("sorted grid")
        })
}

/// Fuzzy numbers from nonnegative increments; `jump` adds a step to the
/// lower branch at a grid point.
pub fn fuzzy() -> impl Strategy<Value = FuzzyNum> {
    (
        prop::collection::btree_set(1u32..64, 0..3),
        -512i32..512,
        prop::collection::vec(0i32..128, 4),
        0i32..256,
        prop::collection::vec(0i32..128, 4),
        prop::option::of((1u32..64, 1i32..64)),
    )
        .prop_map(|(inner, start, up, core, down, jump)| {
            let ts = grid(&inner);
            let n = ts.len();
            let mut lo = vec![value(start)];
            for k in &up[..n - 1] {
                lo.push(lo.last().unwrap() + value(*k));
            }
            let mut hi = vec![lo[n - 1] + value(core)];
            for k in &down[..n - 1] {
                hi.push(hi.last().unwrap() + value(*k));
            }
            hi.reverse();
            let mut lower = PlFun::interpolate(&ts, &lo).unwrap();
            let upper = PlFun::interpolate(&ts, &hi).unwrap();
            if let Some((at, size)) = jump {
                // a step of `size` at `at`, applied before the core so order holds
                let r = at as f64 / 64.0;
                let step = PlFun::new(vec![0.0, r, 1.0], vec![(0.0, 0.0), (1.0, 1.0)]).unwrap();
                lower = &lower.shift(-value(size)) + &step.scale(value(size));
            }
            FuzzyNum::new(lower, upper).expect("ordered by construction")
        })
}

pub fn scalar() -> impl Strategy<Value = f64> {
    (-48i32..=48).prop_map(|k| k as f64 / 16.0)
}

/// Levels worth probing: a uniform sweep plus every breakpoint and a point
/// just to its right.
pub fn probe_levels(fs: &[&PlFun]) -> Vec<f64> {
    let mut rs: Vec<f64> = (0..=1000).map(|i| i as f64 / 1000.0).collect();
    for f in fs {
        for &b in f.breakpoints() {
            rs.push(b);
            if b < 1.0 {
                rs.push(b + 1e-9);
            }
        }
    }
    rs
}

/// Riemann-Stieltjes sum with trapezoid tags over the merged breakpoints,
/// refined by `delta` just right of every integrator jump. Exact on pieces
/// where both functions are linear; the jump cells carry an O(delta) error.
pub fn rs_sum(h: &PlFun, g: &PlFun, delta: f64) -> f64 {
    let mut ts: Vec<f64> = h
        .breakpoints()
        .iter()
        .chain(g.breakpoints())
        .copied()
        .collect();
    let extra: Vec<f64> = g
        .jumps()
        .map(|(r, _)| r + delta)
        .filter(|&t| t < 1.0)
        .collect();
    ts.extend(extra);
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    ts.windows(2)
        .map(|w| {
            let (s, t) = (w[0], w[1]);
            let hs = h.eval(s).unwrap();
            let ht = h.eval(t).unwrap();
            0.5 * (hs + ht) * (g.eval(t).unwrap() - g.eval(s).unwrap())
        })
        .sum()
}

/// Composite Simpson rule with `panels` (even) subintervals.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let inner: f64 = (1..panels)
        .map(|i| if i % 2 == 1 { 4.0 } else { 2.0 } * f(a + i as f64 * h))
        .sum();
    h / 3.0 * (f(a) + inner + f(b))
}
