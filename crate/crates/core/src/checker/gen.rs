//! Random generators for every core type.
//!
//! Values are snapped to dyadic grids (levels to 1/64, values to 1/256,
//! scalars to 1/16) so most sums and products stay exact in floating point
//! and generated breakpoints collide often enough to exercise shared jumps.

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::fuzznum::FuzzyNum;
use crate::levelfun::PlFun;
use crate::spaces::{
    CurvesLp, CurvesSup, FnCurve, FnSeq, FnTypeSpace, FuzzyNumbers, SeqC, SeqC0, SeqLp, SeqM, Tail,
};

const LEVEL_STEPS: u32 = 64;
const VALUE_QUANTUM: f64 = 1.0 / 256.0;
const SCALAR_QUANTUM: f64 = 1.0 / 16.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    /// Most interior breakpoints in a generated level function.
    pub max_breakpoints: usize,
    /// Cores are drawn from `[-value_range, value_range]`.
    pub value_range: f64,
    /// Chance of a jump at each interior breakpoint.
    pub jump_probability: f64,
    /// Chance that a generated fuzzy number is crisp.
    pub crisp_probability: f64,
    /// Most head entries in a generated sequence.
    pub seq_head_len: usize,
    /// Most interior nodes in a generated curve grid.
    pub curve_grid: usize,
    /// Scalars are drawn from `[-scalar_range, scalar_range]`.
    pub scalar_range: f64,
}

impl Default for GenConfig {
    fn default() -> Self {
        Self {
            max_breakpoints: 4,
            value_range: 4.0,
            jump_probability: 0.25,
            crisp_probability: 0.05,
            seq_head_len: 5,
            curve_grid: 3,
            scalar_range: 3.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Nondecreasing,
    Nonincreasing,
}

fn quantize(x: f64, q: f64) -> f64 {
    (x / q).round() * q
}

impl GenConfig {
    pub fn validate(&self) -> crate::Result<()> {
        let ok = self.value_range.is_finite()
            && self.value_range > 0.0
            && self.scalar_range.is_finite()
            && self.scalar_range > 0.0
            && (0.0..=1.0).contains(&self.jump_probability)
            && (0.0..=1.0).contains(&self.crisp_probability)
            && self.max_breakpoints < LEVEL_STEPS as usize;
        if ok {
            Ok(())
        } else {
            Err(crate::Error::InvalidParameter(format!(
                "bad generator config {self:?}"
            )))
        }
    }

    pub fn value<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        quantize(
            rng.gen_range(-self.value_range..=self.value_range),
            VALUE_QUANTUM,
        )
    }

    pub fn scalar<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        quantize(
            rng.gen_range(-self.scalar_range..=self.scalar_range),
            SCALAR_QUANTUM,
        )
    }

    /// Two scalars with `ab >= 0`.
    pub fn same_sign_pair<R: Rng + ?Sized>(&self, rng: &mut R) -> (f64, f64) {
        let (a, b) = (self.scalar(rng).abs(), self.scalar(rng).abs());
        if rng.gen_bool(0.5) {
            (a, b)
        } else {
            (-a, -b)
        }
    }

    /// Two nonzero scalars of opposite sign.
    pub fn opposite_sign_pair<R: Rng + ?Sized>(&self, rng: &mut R) -> (f64, f64) {
        let mag = |rng: &mut R| loop {
            let s = self.scalar(rng).abs();
            if s > 0.0 {
                return s;
            }
        };
        (mag(rng), -mag(rng))
    }

    fn increment<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let spread = self.value_range / (self.max_breakpoints + 1) as f64;
        quantize(rng.gen_range(0.0..=spread), VALUE_QUANTUM)
    }
}

/// Sorted distinct interior points of `(lo, hi)` on a 1/64 lattice.
fn interior_points<R: Rng + ?Sized>(lo: f64, hi: f64, max: usize, rng: &mut R) -> Vec<f64> {
    let k = rng.gen_range(0..=max);
    let mut idx: Vec<usize> = sample(rng, LEVEL_STEPS as usize - 1, k).into_vec();
    idx.sort_unstable();
    idx.into_iter()
        .map(|i| lo + (hi - lo) * (i + 1) as f64 / LEVEL_STEPS as f64)
        .collect()
}

/// Nondecreasing function on `[lo, hi]` starting at 0.
fn rising<R: Rng + ?Sized>(cfg: &GenConfig, lo: f64, hi: f64, rng: &mut R) -> PlFun {
    let mut breaks = vec![lo];
    breaks.extend(interior_points(lo, hi, cfg.max_breakpoints, rng));
    breaks.push(hi);
    let mut segs = Vec::with_capacity(breaks.len() - 1);
    let mut level = 0.0;
    for i in 0..breaks.len() - 1 {
        if i > 0 && rng.gen_bool(cfg.jump_probability) {
            level += cfg.increment(rng);
        }
        let a = level;
        level += cfg.increment(rng);
        segs.push((a, level));
    }
    PlFun::on_domain(breaks, segs).expect("generated grid is valid")
}

/// A monotone level function on `[0, 1]` with values in the configured range.
pub fn gen_plfun_monotone<R: Rng + ?Sized>(
    cfg: &GenConfig,
    rng: &mut R,
    direction: Direction,
) -> PlFun {
    let f = rising(cfg, 0.0, 1.0, rng);
    let base = cfg.value(rng) - 0.5 * f.end_value();
    let base = quantize(base, VALUE_QUANTUM);
    match direction {
        Direction::Nondecreasing => f.shift(base),
        Direction::Nonincreasing => f.negate().shift(base),
    }
}

/// A continuous level function on `[lo, hi]` with arbitrary shape.
pub fn gen_plfun_continuous<R: Rng + ?Sized>(
    cfg: &GenConfig,
    lo: f64,
    hi: f64,
    rng: &mut R,
) -> PlFun {
    let mut ts = vec![lo];
    ts.extend(interior_points(lo, hi, cfg.max_breakpoints, rng));
    ts.push(hi);
    let vals: Vec<f64> = ts.iter().map(|_| cfg.value(rng)).collect();
    PlFun::interpolate(&ts, &vals).expect("generated grid is valid")
}

/// A level function on `[lo, hi]` with arbitrary shape and jumps.
pub fn gen_plfun_jumpy<R: Rng + ?Sized>(cfg: &GenConfig, lo: f64, hi: f64, rng: &mut R) -> PlFun {
    let mut breaks = vec![lo];
    breaks.extend(interior_points(lo, hi, cfg.max_breakpoints, rng));
    breaks.push(hi);
    let mut segs: Vec<(f64, f64)> = Vec::with_capacity(breaks.len() - 1);
    let mut prev = cfg.value(rng);
    for i in 0..breaks.len() - 1 {
        let a = if i > 0 && rng.gen_bool(cfg.jump_probability) {
            cfg.value(rng)
        } else {
            prev
        };
        prev = cfg.value(rng);
        segs.push((a, prev));
    }
    PlFun::on_domain(breaks, segs).expect("generated grid is valid")
}

/// A fuzzy number: a core `[c1, c2]`, a lower branch falling away to the
/// left of `c1` and an upper branch rising away to the right of `c2`.
pub fn gen_fuzzy<R: Rng + ?Sized>(cfg: &GenConfig, rng: &mut R) -> FuzzyNum {
    let (x, y) = (cfg.value(rng), cfg.value(rng));
    let (c1, c2) = (x.min(y), x.max(y));
    if rng.gen_bool(cfg.crisp_probability) {
        return FuzzyNum::crisp(c1);
    }
    let l = rising(cfg, 0.0, 1.0, rng);
    let lower = l.shift(c1 - l.end_value());
    let u = rising(cfg, 0.0, 1.0, rng);
    let upper = u.negate().shift(c2 + u.end_value());
    FuzzyNum::new(lower, upper).expect("generated branches satisfy the invariants")
}

/// A non-crisp fuzzy number.
pub fn gen_fuzzy_noncrisp<R: Rng + ?Sized>(cfg: &GenConfig, rng: &mut R) -> FuzzyNum {
    loop {
        let u = gen_fuzzy(cfg, rng);
        if !u.is_crisp() {
            return u;
        }
    }
}

/// A sequence; `zero_tail` forces the `l^p` / `c⁰` shape, otherwise the
/// tail is a random constant half of the time.
pub fn gen_seq<R: Rng + ?Sized>(cfg: &GenConfig, rng: &mut R, zero_tail: bool) -> FnSeq {
    let n = rng.gen_range(0..=cfg.seq_head_len);
    let head = (0..n).map(|_| gen_fuzzy(cfg, rng)).collect();
    let tail = if zero_tail || rng.gen_bool(0.5) {
        Tail::Zero
    } else {
        Tail::Const(gen_fuzzy(cfg, rng))
    };
    FnSeq::new(head, tail)
}

pub fn gen_curve<R: Rng + ?Sized>(cfg: &GenConfig, a: f64, b: f64, rng: &mut R) -> FnCurve {
    let mut grid = vec![a];
    grid.extend(interior_points(a, b, cfg.curve_grid, rng));
    grid.push(b);
    let values = grid.iter().map(|_| gen_fuzzy(cfg, rng)).collect();
    FnCurve::new(grid, values).expect("generated grid is valid")
}

/// Spaces that can sample their own elements.
pub trait Generate: FnTypeSpace {
    fn generate<R: Rng + ?Sized>(&self, cfg: &GenConfig, rng: &mut R) -> Self::Elem;

    /// Fixed elements worth trying before random ones.
    fn probes(&self) -> Vec<Self::Elem> {
        Vec::new()
    }
}

impl Generate for FuzzyNumbers {
    fn generate<R: Rng + ?Sized>(&self, cfg: &GenConfig, rng: &mut R) -> FuzzyNum {
        gen_fuzzy(cfg, rng)
    }

    /// Unit-norm extreme points: one endpoint moving, the other pinned.
    fn probes(&self) -> Vec<FuzzyNum> {
        let one = PlFun::constant(1.0);
        let minus = PlFun::constant(-1.0);
        [
            (PlFun::linear(-1.0, 1.0), one.clone()),
            (PlFun::linear(-1.0, 0.0), one.clone()),
            (PlFun::linear(0.0, 1.0), one.clone()),
            (minus.clone(), PlFun::linear(1.0, -1.0)),
            (minus.clone(), PlFun::linear(0.0, -1.0)),
            (minus.clone(), PlFun::linear(1.0, 0.0)),
            (minus.clone(), one.clone()),
            (one.clone(), one),
            (minus.clone(), minus),
        ]
        .into_iter()
        .map(|(l, u)| FuzzyNum::new(l, u).expect("probe is a fuzzy number"))
        .collect()
    }
}

impl Generate for SeqLp {
    fn generate<R: Rng + ?Sized>(&self, cfg: &GenConfig, rng: &mut R) -> FnSeq {
        gen_seq(cfg, rng, true)
    }
}

impl Generate for SeqC0 {
    fn generate<R: Rng + ?Sized>(&self, cfg: &GenConfig, rng: &mut R) -> FnSeq {
        gen_seq(cfg, rng, true)
    }
}

impl Generate for SeqC {
    fn generate<R: Rng + ?Sized>(&self, cfg: &GenConfig, rng: &mut R) -> FnSeq {
        gen_seq(cfg, rng, false)
    }
}

impl Generate for SeqM {
    fn generate<R: Rng + ?Sized>(&self, cfg: &GenConfig, rng: &mut R) -> FnSeq {
        gen_seq(cfg, rng, false)
    }
}

impl Generate for CurvesSup {
    fn generate<R: Rng + ?Sized>(&self, cfg: &GenConfig, rng: &mut R) -> FnCurve {
        let (a, b) = self.domain();
        gen_curve(cfg, a, b, rng)
    }
}

impl Generate for CurvesLp {
    fn generate<R: Rng + ?Sized>(&self, cfg: &GenConfig, rng: &mut R) -> FnCurve {
        let (a, b) = self.domain();
        gen_curve(cfg, a, b, rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_values_are_valid_and_replayable() {
        let cfg = GenConfig::default();
        let mut r1 = ChaCha8Rng::seed_from_u64(3);
        let mut r2 = ChaCha8Rng::seed_from_u64(3);
        let mut other = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..500 {
            let u = gen_fuzzy(&cfg, &mut r1);
            let again = gen_fuzzy(&cfg, &mut r2);
            assert_eq!(u, again);
            FuzzyNum::new(u.lower().clone(), u.upper().clone()).unwrap();
            let r = &mut other;
            assert!(gen_plfun_monotone(&cfg, r, Direction::Nondecreasing).is_nondecreasing());
            assert!(gen_plfun_monotone(&cfg, r, Direction::Nonincreasing).is_nonincreasing());
            assert!(gen_plfun_continuous(&cfg, 0.0, 1.0, r).is_continuous());
            assert_eq!(gen_seq(&cfg, r, true).tail(), &Tail::Zero);
            assert_eq!(gen_curve(&cfg, -1.0, 2.0, r).domain(), (-1.0, 2.0));
        }
    }

    #[test]
    fn probes_have_unit_norm() {
        for p in FuzzyNumbers.probes() {
            assert_eq!(p.norm_f(), 1.0);
        }
    }

    #[test]
    fn scalar_pairs_respect_signs() {
        let cfg = GenConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let (a, b) = cfg.same_sign_pair(&mut rng);
            assert!(a * b >= 0.0);
            let (a, b) = cfg.opposite_sign_pair(&mut rng);
            assert!(a > 0.0 && b < 0.0);
        }
    }
}
