//! Piecewise-linear functions with finitely many jumps.
//!
//! A [`PlFun`] is the computational model for the endpoint functions of a
//! fuzzy number. It is stored as a strictly increasing breakpoint list
//! `r_0 < r_1 < ... < r_m` together with one pair `(a_i, b_i)` per piece:
//! on `(r_{i-1}, r_i]` the function runs affinely from the right limit `a_i`
//! to the value `b_i`. The value at `r_0` is `a_1`. This makes every
//! function left continuous on `(r_0, r_m]` and right continuous at `r_0`,
//! with right limits stored explicitly.
//!
//! Every constructor and operation returns a normalized function: adjacent
//! pieces that meet without a jump and lie on one line are merged, so the
//! derived `PartialEq` is structural equality of the represented functions.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PlFunRepr", into = "PlFunRepr")]
pub struct PlFun {
    breaks: Vec<f64>,
    segs: Vec<(f64, f64)>,
}

/// Wire form: `{"breakpoints": [...], "segments": [[a, b], ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlFunRepr {
    pub breakpoints: Vec<f64>,
    pub segments: Vec<[f64; 2]>,
}

impl TryFrom<PlFunRepr> for PlFun {
    type Error = Error;

    fn try_from(repr: PlFunRepr) -> Result<Self> {
        PlFun::new(
            repr.breakpoints,
            repr.segments.into_iter().map(|[a, b]| (a, b)).collect(),
        )
    }
}

impl From<PlFun> for PlFunRepr {
    fn from(f: PlFun) -> Self {
        PlFunRepr {
            breakpoints: f.breaks,
            segments: f.segs.into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

impl PlFunRepr {
    /// Builds a function on whatever domain the breakpoints span.
    pub fn into_fun_on_domain(self) -> Result<PlFun> {
        PlFun::on_domain(
            self.breakpoints,
            self.segments.into_iter().map(|[a, b]| (a, b)).collect(),
        )
    }
}

/// Value at `s` of the affine piece running from `a` at `r0` to `b` at `r1`.
///
/// The result is clamped to the segment's value range so monotone pieces
/// stay monotone after rounding.
fn interp(r0: f64, r1: f64, a: f64, b: f64, s: f64) -> f64 {
    if a == b {
        return a;
    }
    let t = (s - r0) / (r1 - r0);
    let v = a + t * (b - a);
    v.clamp(a.min(b), a.max(b))
}

pub(crate) fn merged_grid(x: &[f64], y: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let next = match (x.get(i), y.get(j)) {
            (Some(&p), Some(&q)) if p == q => {
                i += 1;
                j += 1;
                p
            }
            (Some(&p), Some(&q)) if p < q => {
                i += 1;
                p
            }
            (Some(_), Some(&q)) => {
                j += 1;
                q
            }
            (Some(&p), None) => {
                i += 1;
                p
            }
            (None, Some(&q)) => {
                j += 1;
                q
            }
            (None, None) => unreachable!(),
        };
        out.push(next);
    }
    out
}

fn validate(breaks: &[f64], segs: &[(f64, f64)]) -> Result<()> {
    if breaks.len() < 2 {
        return Err(Error::MalformedFunction(
            "at least two breakpoints are required".into(),
        ));
    }
    if segs.len() + 1 != breaks.len() {
        return Err(Error::MalformedFunction(format!(
            "{} breakpoints need {} segments, got {}",
            breaks.len(),
            breaks.len() - 1,
            segs.len()
        )));
    }
    if let Some(x) = breaks.iter().find(|x| !x.is_finite()) {
        return Err(Error::MalformedFunction(format!(
            "non-finite breakpoint {x}"
        )));
    }
    if let Some((a, b)) = segs.iter().find(|(a, b)| !a.is_finite() || !b.is_finite()) {
        return Err(Error::MalformedFunction(format!(
            "non-finite segment value ({a}, {b})"
        )));
    }
    if let Some(w) = breaks.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::MalformedFunction(format!(
            "breakpoints must be strictly increasing ({} then {})",
            w[0], w[1]
        )));
    }
    Ok(())
}

impl PlFun {
    /// Builds a level function on `[0, 1]`.
    pub fn new(breakpoints: Vec<f64>, segments: Vec<(f64, f64)>) -> Result<Self> {
        validate(&breakpoints, &segments)?;
        if breakpoints[0] != 0.0 || *breakpoints.last().unwrap() != 1.0 {
            return Err(Error::MalformedFunction(format!(
                "level grid must run from 0 to 1, got [{}, {}]",
                breakpoints[0],
                breakpoints.last().unwrap()
            )));
        }
        Ok(Self::normalized(breakpoints, segments))
    }

    /// Builds a function on the domain spanned by `breakpoints`.
    pub fn on_domain(breakpoints: Vec<f64>, segments: Vec<(f64, f64)>) -> Result<Self> {
        validate(&breakpoints, &segments)?;
        Ok(Self::normalized(breakpoints, segments))
    }

    pub fn constant(c: f64) -> Self {
        Self::constant_on(0.0, 1.0, c)
    }

    pub fn constant_on(lo: f64, hi: f64, c: f64) -> Self {
        Self {
            breaks: vec![lo, hi],
            segs: vec![(c, c)],
        }
    }

    pub fn identity() -> Self {
        Self::linear(0.0, 1.0)
    }

    /// `r ↦ v0 + (v1 - v0) r` on `[0, 1]`.
    pub fn linear(v0: f64, v1: f64) -> Self {
        Self::normalized(vec![0.0, 1.0], vec![(v0, v1)])
    }

    /// Continuous interpolant through `(ts[k], values[k])`.
    pub fn interpolate(ts: &[f64], values: &[f64]) -> Result<Self> {
        if ts.len() != values.len() {
            return Err(Error::MalformedFunction(format!(
                "{} nodes but {} values",
                ts.len(),
                values.len()
            )));
        }
        let segs = values.windows(2).map(|w| (w[0], w[1])).collect();
        Self::on_domain(ts.to_vec(), segs)
    }

    fn normalized(breaks: Vec<f64>, segs: Vec<(f64, f64)>) -> Self {
        let mut nb: Vec<f64> = Vec::with_capacity(breaks.len());
        let mut ns: Vec<(f64, f64)> = Vec::with_capacity(segs.len());
        // interior points already absorbed into the last piece
        let mut dropped: Vec<(f64, f64)> = Vec::new();
        nb.push(breaks[0]);
        for (k, &(a, b)) in segs.iter().enumerate() {
            let r1 = breaks[k + 1];
            if let Some(&(pa, pb)) = ns.last() {
                let r0 = nb[nb.len() - 2];
                let rm = nb[nb.len() - 1];
                let collinear = pb == a && (pb - pa) * (r1 - rm) == (b - a) * (rm - r0);
                if collinear
                    && interp(r0, r1, pa, b, rm) == pb
                    && dropped.iter().all(|&(r, v)| interp(r0, r1, pa, b, r) == v)
                {
                    dropped.push((rm, pb));
                    *ns.last_mut().unwrap() = (pa, b);
                    *nb.last_mut().unwrap() = r1;
                    continue;
                }
            }
            dropped.clear();
            nb.push(r1);
            ns.push((a, b));
        }
        Self {
            breaks: nb,
            segs: ns,
        }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breaks
    }

    pub fn segments(&self) -> &[(f64, f64)] {
        &self.segs
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.breaks[0], *self.breaks.last().unwrap())
    }

    pub fn same_domain(&self, other: &PlFun) -> bool {
        self.domain() == other.domain()
    }

    fn check_domain(&self, r: f64) -> Result<()> {
        let (lo, hi) = self.domain();
        if r.is_nan() || r < lo || r > hi {
            Err(Error::OutOfDomain(r))
        } else {
            Ok(())
        }
    }

    /// Left-continuous value; the value at the left end is the right limit.
    pub fn eval(&self, r: f64) -> Result<f64> {
        self.check_domain(r)?;
        let i = self.breaks.partition_point(|&b| b < r);
        if i == 0 {
            return Ok(self.segs[0].0);
        }
        let (a, b) = self.segs[i - 1];
        if r == self.breaks[i] {
            Ok(b)
        } else {
            Ok(interp(self.breaks[i - 1], self.breaks[i], a, b, r))
        }
    }

    /// `lim_{s→r+} f(s)`; at the right end this is `f(r)` itself.
    pub fn right_limit(&self, r: f64) -> Result<f64> {
        self.check_domain(r)?;
        let i = self.breaks.partition_point(|&b| b <= r);
        if i == self.breaks.len() {
            return Ok(self.segs.last().unwrap().1);
        }
        let (a, b) = self.segs[i - 1];
        if r == self.breaks[i - 1] {
            Ok(a)
        } else {
            Ok(interp(self.breaks[i - 1], self.breaks[i], a, b, r))
        }
    }

    /// Value at the left end of the domain.
    pub fn start_value(&self) -> f64 {
        self.segs[0].0
    }

    /// Value at the right end of the domain.
    pub fn end_value(&self) -> f64 {
        self.segs.last().unwrap().1
    }

    /// Piece values of `self` on a refinement `grid` of its breakpoints.
    fn resample(&self, grid: &[f64]) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(grid.len() - 1);
        let mut i = 0;
        for w in grid.windows(2) {
            let (s0, s1) = (w[0], w[1]);
            while self.breaks[i + 1] < s1 {
                i += 1;
            }
            let (r0, r1) = (self.breaks[i], self.breaks[i + 1]);
            let (a, b) = self.segs[i];
            let va = if s0 == r0 {
                a
            } else {
                interp(r0, r1, a, b, s0)
            };
            let vb = if s1 == r1 {
                b
            } else {
                interp(r0, r1, a, b, s1)
            };
            out.push((va, vb));
        }
        out
    }

    /// Both functions on their common breakpoint grid.
    pub(crate) fn aligned(&self, other: &PlFun) -> (Vec<f64>, Vec<(f64, f64)>, Vec<(f64, f64)>) {
        assert!(
            self.same_domain(other),
            "domain mismatch: {:?} vs {:?}",
            self.domain(),
            other.domain()
        );
        let grid = merged_grid(&self.breaks, &other.breaks);
        let x = self.resample(&grid);
        let y = other.resample(&grid);
        (grid, x, y)
    }

    fn zip_with(&self, other: &PlFun, op: impl Fn(f64, f64) -> f64) -> PlFun {
        let (grid, x, y) = self.aligned(other);
        let segs = x
            .iter()
            .zip(&y)
            .map(|(&(xa, xb), &(ya, yb))| (op(xa, ya), op(xb, yb)))
            .collect();
        Self::normalized(grid, segs)
    }

    fn map(&self, op: impl Fn(f64) -> f64) -> PlFun {
        let segs = self.segs.iter().map(|&(a, b)| (op(a), op(b))).collect();
        Self::normalized(self.breaks.clone(), segs)
    }

    /// Pointwise sum. Panics if the domains differ.
    pub fn add(&self, other: &PlFun) -> PlFun {
        self.zip_with(other, |x, y| x + y)
    }

    /// Pointwise difference. Panics if the domains differ.
    pub fn sub(&self, other: &PlFun) -> PlFun {
        self.zip_with(other, |x, y| x - y)
    }

    pub fn scale(&self, c: f64) -> PlFun {
        self.map(|x| c * x)
    }

    pub fn negate(&self) -> PlFun {
        self.map(|x| -x)
    }

    /// `f + c` for a constant `c`.
    pub fn shift(&self, c: f64) -> PlFun {
        self.map(|x| x + c)
    }

    /// Exact `sup |f - g|`.
    ///
    /// Over each half-open piece the difference is affine, so the supremum
    /// is reached or approached at the piece's endpoint values.
    pub fn sup_dist(&self, other: &PlFun) -> f64 {
        let (_, x, y) = self.aligned(other);
        x.iter()
            .zip(&y)
            .map(|(&(xa, xb), &(ya, yb))| (xa - ya).abs().max((xb - yb).abs()))
            .fold(0.0, f64::max)
    }

    pub fn sup_norm(&self) -> f64 {
        self.segs
            .iter()
            .map(|&(a, b)| a.abs().max(b.abs()))
            .fold(0.0, f64::max)
    }

    /// Piece variation plus jump sizes.
    pub fn total_variation(&self) -> f64 {
        let pieces: f64 = self.segs.iter().map(|&(a, b)| (b - a).abs()).sum();
        let jumps: f64 = self.segs.windows(2).map(|w| (w[1].0 - w[0].1).abs()).sum();
        pieces + jumps
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.segs.iter().all(|&(a, b)| a <= b) && self.segs.windows(2).all(|w| w[0].1 <= w[1].0)
    }

    pub fn is_nonincreasing(&self) -> bool {
        self.segs.iter().all(|&(a, b)| a >= b) && self.segs.windows(2).all(|w| w[0].1 >= w[1].0)
    }

    /// `f(r) <= g(r)` for every `r`, right limits included.
    pub fn leq(&self, other: &PlFun) -> bool {
        let (_, x, y) = self.aligned(other);
        x.iter()
            .zip(&y)
            .all(|(&(xa, xb), &(ya, yb))| xa <= ya && xb <= yb)
    }

    /// Interior breakpoints where the function jumps, with the jump size.
    pub fn jumps(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.segs
            .windows(2)
            .zip(&self.breaks[1..])
            .filter(|(w, _)| w[0].1 != w[1].0)
            .map(|(w, &r)| (r, w[1].0 - w[0].1))
    }

    pub fn is_continuous(&self) -> bool {
        self.jumps().next().is_none()
    }

    /// `∫ f(r) dr` over the domain.
    pub fn integral(&self) -> f64 {
        self.segs
            .iter()
            .zip(self.breaks.windows(2))
            .map(|(&(a, b), w)| 0.5 * (a + b) * (w[1] - w[0]))
            .sum()
    }

    /// `∫ f(r) g(r) dr`, exact for the product of two piecewise-linear functions.
    pub fn integral_product(&self, other: &PlFun) -> f64 {
        let (grid, x, y) = self.aligned(other);
        x.iter()
            .zip(&y)
            .zip(grid.windows(2))
            .map(|((&(fa, fb), &(ga, gb)), w)| {
                (w[1] - w[0]) * (2.0 * fa * ga + fa * gb + fb * ga + 2.0 * fb * gb) / 6.0
            })
            .sum()
    }
}

impl Add for &PlFun {
    type Output = PlFun;
    fn add(self, rhs: &PlFun) -> PlFun {
        PlFun::add(self, rhs)
    }
}

impl Sub for &PlFun {
    type Output = PlFun;
    fn sub(self, rhs: &PlFun) -> PlFun {
        PlFun::sub(self, rhs)
    }
}

impl Neg for &PlFun {
    type Output = PlFun;
    fn neg(self) -> PlFun {
        self.negate()
    }
}

impl Mul<&PlFun> for f64 {
    type Output = PlFun;
    fn mul(self, rhs: &PlFun) -> PlFun {
        rhs.scale(self)
    }
}

fn stieltjes(f: &PlFun, g: &PlFun) -> Result<f64> {
    if !f.same_domain(g) {
        return Err(Error::DomainMismatch(format!(
            "integrand on {:?}, integrator on {:?}",
            f.domain(),
            g.domain()
        )));
    }
    let (grid, fs, gs) = f.aligned(g);
    let mut total = 0.0;
    for (&(fa, fb), &(ga, gb)) in fs.iter().zip(&gs) {
        total += (gb - ga) * 0.5 * (fa + fb);
    }
    for j in 0..gs.len() - 1 {
        let jump = gs[j + 1].0 - gs[j].1;
        if jump != 0.0 {
            if fs[j].1 != fs[j + 1].0 {
                return Err(Error::CommonDiscontinuity(grid[j + 1]));
            }
            total += fs[j].1 * jump;
        }
    }
    Ok(total)
}

/// Riemann–Stieltjes integral `∫ h dg` for a continuous integrand `h`.
///
/// Each linear piece of `g` contributes its slope times the exact integral
/// of `h` over the piece; each interior jump of `g` at `r` contributes
/// `h(r)` times the jump.
pub fn rs_integral(h: &PlFun, g: &PlFun) -> Result<f64> {
    if let Some((r, _)) = h.jumps().next() {
        return Err(Error::DiscontinuousIntegrand(r));
    }
    stieltjes(h, g)
}

/// `∫ f dg` where at every point at least one of `f`, `g` is continuous.
///
/// Used for the integration-by-parts form, where the integrator is a
/// continuous weight and the integrand may jump.
pub fn rs_integral_mixed(f: &PlFun, g: &PlFun) -> Result<f64> {
    stieltjes(f, g)
}

/// A witness that `u = f + g` with `f` nondecreasing, `g` nonincreasing
/// and `f <= g`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ADecomp {
    f: PlFun,
    g: PlFun,
}

impl ADecomp {
    pub fn new(f: PlFun, g: PlFun) -> Result<Self> {
        if !f.is_nondecreasing() {
            return Err(Error::NotMonotone("f must be nondecreasing".into()));
        }
        if !g.is_nonincreasing() {
            return Err(Error::NotMonotone("g must be nonincreasing".into()));
        }
        if !f.same_domain(&g) || !f.leq(&g) {
            return Err(Error::BadShape("f must not exceed g".into()));
        }
        Ok(Self { f, g })
    }

    pub fn f(&self) -> &PlFun {
        &self.f
    }

    pub fn g(&self) -> &PlFun {
        &self.g
    }

    pub fn sum(&self) -> PlFun {
        &self.f + &self.g
    }

    pub fn into_parts(self) -> (PlFun, PlFun) {
        (self.f, self.g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn step() -> PlFun {
        PlFun::new(vec![0.0, 0.5, 1.0], vec![(0.0, 0.0), (1.0, 1.0)]).unwrap()
    }

    /// Dense left-continuous sampling, plus right limits at each sample.
    fn sampled_sup(f: &PlFun, n: usize) -> f64 {
        (0..=n)
            .map(|k| k as f64 / n as f64)
            .flat_map(|r| [f.eval(r).unwrap(), f.right_limit(r).unwrap()])
            .fold(0.0, |m: f64, v| m.max(v.abs()))
    }

    /// Riemann–Stieltjes sum with midpoint tags on a uniform partition.
    fn rs_sum(h: &PlFun, g: &PlFun, n: usize) -> f64 {
        (1..=n)
            .map(|k| {
                let t0 = (k - 1) as f64 / n as f64;
                let t1 = k as f64 / n as f64;
                h.eval(0.5 * (t0 + t1)).unwrap() * (g.eval(t1).unwrap() - g.eval(t0).unwrap())
            })
            .sum()
    }

    #[test]
    fn constant_identity_step() {
        let c = PlFun::new(vec![0.0, 1.0], vec![(2.5, 2.5)]).unwrap();
        assert_eq!(c, PlFun::constant(2.5));
        assert_eq!(c.eval(0.7).unwrap(), 2.5);
        let id = PlFun::new(vec![0.0, 1.0], vec![(0.0, 1.0)]).unwrap();
        assert_eq!(id.eval(0.3).unwrap(), 0.3);
        let s = step();
        assert_eq!(s.eval(0.5).unwrap(), 0.0);
        assert_eq!(s.right_limit(0.5).unwrap(), 1.0);
        assert_eq!(s.eval(0.0).unwrap(), 0.0);
        assert_eq!(s.right_limit(1.0).unwrap(), 1.0);
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(
            PlFun::new(vec![0.0, 1.0], vec![(f64::NAN, 0.0)]),
            Err(Error::MalformedFunction(_))
        ));
        assert!(PlFun::new(vec![0.0, 0.5, 0.5, 1.0], vec![(0.0, 0.0); 3]).is_err());
        assert!(PlFun::new(vec![0.1, 1.0], vec![(0.0, 0.0)]).is_err());
        assert!(PlFun::new(vec![0.0, 1.0], vec![(0.0, 0.0), (1.0, 1.0)]).is_err());
        assert!(PlFun::new(vec![0.0, f64::INFINITY], vec![(0.0, 0.0)]).is_err());
        assert!(PlFun::new(vec![0.0], vec![]).is_err());
    }

    #[test]
    fn eval_out_of_domain() {
        assert_eq!(PlFun::identity().eval(1.5), Err(Error::OutOfDomain(1.5)));
        assert!(PlFun::identity().right_limit(-0.1).is_err());
        assert!(PlFun::identity().eval(f64::NAN).is_err());
    }

    #[test]
    fn normalization_merges_collinear_pieces() {
        let f = PlFun::new(vec![0.0, 0.5, 1.0], vec![(0.0, 0.5), (0.5, 1.0)]).unwrap();
        assert_eq!(f, PlFun::identity());
        let g = PlFun::new(vec![0.0, 0.25, 0.5, 1.0], vec![(3.0, 3.0); 3]).unwrap();
        assert_eq!(g.breakpoints(), &[0.0, 1.0]);
        // a kink is kept
        let k = PlFun::new(vec![0.0, 0.5, 1.0], vec![(0.0, 0.5), (0.5, 0.5)]).unwrap();
        assert_eq!(k.breakpoints().len(), 3);
    }

    #[test]
    fn algebra_examples() {
        let id = PlFun::identity();
        let one = PlFun::constant(1.0);
        assert_eq!(&id + &one, PlFun::linear(1.0, 2.0));
        assert_eq!(-1.0 * &id, PlFun::linear(0.0, -1.0));
        assert_eq!(id.negate(), PlFun::linear(0.0, -1.0));
        assert_eq!(&id - &id, PlFun::constant(0.0));
    }

    #[test]
    fn add_preserves_jump_against_pointwise_oracle() {
        let s = step();
        let sum = &s + &PlFun::identity();
        assert_eq!(sum.jumps().collect::<Vec<_>>(), vec![(0.5, 1.0)]);
        for k in 0..=1000 {
            let r = k as f64 / 1000.0;
            let expect = s.eval(r).unwrap() + r;
            assert!((sum.eval(r).unwrap() - expect).abs() <= 1e-12);
            let expect_right = s.right_limit(r).unwrap() + r;
            assert!((sum.right_limit(r).unwrap() - expect_right).abs() <= 1e-12);
        }
    }

    #[test]
    fn sup_examples() {
        let id = PlFun::identity();
        assert_eq!(id.sup_dist(&PlFun::constant(0.0)), 1.0);
        assert_eq!(id.sup_dist(&id), 0.0);
        let s = step();
        assert_eq!(s.sup_norm(), 1.0);
        assert!((sampled_sup(&s, 10_000) - 1.0).abs() <= 1e-12);
        let f = PlFun::new(vec![0.0, 0.3, 1.0], vec![(-2.0, 1.0), (4.0, 0.5)]).unwrap();
        assert_eq!(f.sup_norm(), 4.0);
        assert_eq!(sampled_sup(&f, 10_000), 4.0);
    }

    #[test]
    fn variation_examples() {
        assert_eq!(PlFun::identity().total_variation(), 1.0);
        assert_eq!(step().total_variation(), 1.0);
        let f = PlFun::new(vec![0.0, 0.3, 1.0], vec![(0.0, 1.0), (0.5, 2.0)]).unwrap();
        assert_eq!(f.total_variation(), 1.0 + 0.5 + 1.5);
    }

    #[test]
    fn monotone_checks() {
        let id = PlFun::identity();
        assert!(id.is_nondecreasing());
        assert!(!id.is_nonincreasing());
        assert!(PlFun::linear(0.0, -1.0).is_nonincreasing());
        assert!(PlFun::constant(0.0).leq(&id));
        assert!(!id.leq(&PlFun::constant(0.5)));
        let drop = PlFun::new(vec![0.0, 0.5, 1.0], vec![(0.0, 1.0), (0.5, 1.0)]).unwrap();
        assert!(!drop.is_nondecreasing());
        // right limit above the other function at a shared breakpoint
        let s = step();
        let g = PlFun::new(vec![0.0, 0.5, 1.0], vec![(0.0, 0.0), (0.5, 1.0)]).unwrap();
        assert!(!s.leq(&g));
    }

    #[test]
    fn rs_examples() {
        let id = PlFun::identity();
        assert!((rs_integral(&id, &id).unwrap() - 0.5).abs() <= 1e-15);
        assert_eq!(rs_integral(&id, &step()).unwrap(), 0.5);
        for n in [1_000, 10_000, 100_000] {
            assert!((rs_sum(&id, &step(), n) - 0.5).abs() <= 1.0 / n as f64);
        }
        assert_eq!(
            rs_integral(&step(), &id),
            Err(Error::DiscontinuousIntegrand(0.5))
        );
    }

    #[test]
    fn rs_against_riemann_sums() {
        let h = PlFun::new(vec![0.0, 0.4, 1.0], vec![(1.0, -1.0), (-1.0, 2.0)]).unwrap();
        let g = PlFun::new(
            vec![0.0, 0.25, 0.7, 1.0],
            vec![(0.0, 1.0), (3.0, 2.0), (2.0, 5.0)],
        )
        .unwrap();
        let exact = rs_integral(&h, &g).unwrap();
        let approx = rs_sum(&h, &g, 200_000);
        assert!((exact - approx).abs() < 1e-4, "{exact} vs {approx}");
    }

    #[test]
    fn mixed_integral_rejects_shared_jump() {
        assert_eq!(
            rs_integral_mixed(&step(), &step()),
            Err(Error::CommonDiscontinuity(0.5))
        );
        // integrand jump against a continuous integrator contributes nothing extra
        let v = rs_integral_mixed(&step(), &PlFun::identity()).unwrap();
        assert!((v - 0.5).abs() <= 1e-15);
    }

    #[test]
    fn integrals_of_products() {
        let id = PlFun::identity();
        assert!((id.integral() - 0.5).abs() < 1e-15);
        assert!((id.integral_product(&id) - 1.0 / 3.0).abs() < 1e-15);
        assert!((step().integral_product(&id) - 0.375).abs() < 1e-15);
    }

    #[test]
    fn interpolate_and_domain() {
        let f = PlFun::interpolate(&[-1.0, 0.0, 2.0], &[0.0, 1.0, 1.0]).unwrap();
        assert_eq!(f.domain(), (-1.0, 2.0));
        assert_eq!(f.eval(-0.5).unwrap(), 0.5);
        assert!(f.is_continuous());
        assert!(PlFun::interpolate(&[0.0, 1.0], &[0.0]).is_err());
        assert!(matches!(
            rs_integral(&PlFun::identity(), &f),
            Err(Error::DomainMismatch(_))
        ));
    }

    #[test]
    fn decomposition_witness_checks() {
        assert!(ADecomp::new(PlFun::linear(-1.0, 0.0), PlFun::constant(1.0)).is_ok());
        assert!(matches!(
            ADecomp::new(PlFun::linear(0.0, -1.0), PlFun::constant(1.0)),
            Err(Error::NotMonotone(_))
        ));
        assert!(matches!(
            ADecomp::new(PlFun::constant(2.0), PlFun::constant(1.0)),
            Err(Error::BadShape(_))
        ));
    }

    #[test]
    fn json_round_trip_and_validation() {
        let s = step();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(
            text,
            r#"{"breakpoints":[0.0,0.5,1.0],"segments":[[0.0,0.0],[1.0,1.0]]}"#
        );
        let back: PlFun = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        let bad = r#"{"breakpoints":[0.0,0.6,0.5,1.0],"segments":[[0,0],[0,0],[0,0]]}"#;
        assert!(serde_json::from_str::<PlFun>(bad).is_err());
    }
}
