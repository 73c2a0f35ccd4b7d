//! Fuzzy-number-valued curves on `[a, b]`.
//!
//! A curve is sampled on a grid `a = t_0 < ... < t_k = b`; between two
//! samples the endpoint functions are interpolated linearly in `t`, level by
//! level, i.e. `x(t) = (1-θ) ⊙ x(t_i) ⊕ θ ⊙ x(t_{i+1})`. For fixed `r` every
//! endpoint difference of two curves is then affine in `t` on each merged
//! grid interval, which is what makes `D*` exact on grid nodes and `D_p`
//! computable piece by piece.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzznum::FuzzyNum;
use crate::levelfun::merged_grid;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "FnCurveRepr", into = "FnCurveRepr")]
pub struct FnCurve {
    t_grid: Vec<f64>,
    values: Vec<FuzzyNum>,
}

#[derive(Clone, Serialize, Deserialize)]
struct FnCurveRepr {
    a: f64,
    b: f64,
    t_grid: Vec<f64>,
    values: Vec<FuzzyNum>,
}

impl TryFrom<FnCurveRepr> for FnCurve {
    type Error = Error;
    fn try_from(r: FnCurveRepr) -> Result<Self> {
        let curve = FnCurve::new(r.t_grid, r.values)?;
        if curve.domain() != (r.a, r.b) {
            return Err(Error::MalformedFunction(format!(
                "t_grid spans {:?} but the curve claims [{}, {}]",
                curve.domain(),
                r.a,
                r.b
            )));
        }
        Ok(curve)
    }
}

impl From<FnCurve> for FnCurveRepr {
    fn from(c: FnCurve) -> Self {
        let (a, b) = c.domain();
        FnCurveRepr {
            a,
            b,
            t_grid: c.t_grid,
            values: c.values,
        }
    }
}

fn blend(u: &FuzzyNum, v: &FuzzyNum, theta: f64) -> FuzzyNum {
    if u == v {
        return u.clone();
    }
    &((1.0 - theta) * u) + &(theta * v)
}

/// Mean of `d^p` along the segment from `d0` to `d1` (both `>= 0`).
fn mean_power(d0: f64, d1: f64, p: f64) -> f64 {
    if p == 1.0 {
        return 0.5 * (d0 + d1);
    }
    if p == 2.0 {
        return (d0 * d0 + d0 * d1 + d1 * d1) / 3.0;
    }
    let hi = d0.max(d1);
    if hi == 0.0 {
        return 0.0;
    }
    if (d1 - d0).abs() <= 1e-3 * hi {
        // nearly constant: closed form cancels badly, Gauss–Legendre does not
        const NODES: [f64; 5] = [
            -0.906_179_845_938_664,
            -0.538_469_310_105_683_1,
            0.0,
            0.538_469_310_105_683_1,
            0.906_179_845_938_664,
        ];
        const WEIGHTS: [f64; 5] = [
            0.236_926_885_056_189_1,
            0.478_628_670_499_366_5,
            0.568_888_888_888_888_9,
            0.478_628_670_499_366_5,
            0.236_926_885_056_189_1,
        ];
        return NODES
            .iter()
            .zip(WEIGHTS)
            .map(|(&x, w)| {
                let s = 0.5 * (x + 1.0);
                0.5 * w * (d0 + s * (d1 - d0)).powf(p)
            })
            .sum();
    }
    (d1.powf(p + 1.0) - d0.powf(p + 1.0)) / ((p + 1.0) * (d1 - d0))
}

/// `∫_0^1 (max_k |ℓ_k(θ)|)^p dθ` for the lines `ℓ_k(θ) = v0 + θ (v1 - v0)`.
///
/// Walks the upper envelope of `{±ℓ_k}` from `θ = 0`; every switch moves to
/// a line of strictly larger slope, so the walk ends after at most
/// `2 * lines.len()` pieces.
fn envelope_power_integral(lines: &[(f64, f64)], p: f64) -> f64 {
    let all: Vec<(f64, f64)> = lines
        .iter()
        .flat_map(|&(a, b)| [(a, b), (-a, -b)])
        .collect();
    let slope = |l: (f64, f64)| l.1 - l.0;
    let value = |l: (f64, f64), th: f64| l.0 + th * (l.1 - l.0);
    let Some(mut cur) = all
        .iter()
        .copied()
        .max_by(|x, y| x.0.total_cmp(&y.0).then(slope(*x).total_cmp(&slope(*y))))
    else {
        return 0.0;
    };
    let mut th = 0.0;
    let mut acc = 0.0;
    loop {
        let s = slope(cur);
        let mut next: Option<((f64, f64), f64)> = None;
        for &l in &all {
            let sl = slope(l);
            if sl <= s {
                continue;
            }
            let x = ((cur.0 - l.0) / (sl - s)).max(th);
            let better = match next {
                None => true,
                Some((nl, nx)) => x < nx || (x == nx && sl > slope(nl)),
            };
            if better {
                next = Some((l, x));
            }
        }
        let end = match next {
            Some((_, x)) if x < 1.0 => x,
            _ => 1.0,
        };
        let d0 = value(cur, th).max(0.0);
        let d1 = value(cur, end).max(0.0);
        acc += (end - th) * mean_power(d0, d1, p);
        match next {
            Some((l, _)) if end < 1.0 => {
                cur = l;
                th = end;
            }
            _ => break,
        }
    }
    acc
}

/// Lines `θ ↦ Δ(θ)` for every endpoint-value difference between `f(θ)` and
/// `g(θ)` on one grid interval, where `f(θ)` blends `f0` into `f1`.
fn difference_lines(f0: &FuzzyNum, g0: &FuzzyNum, f1: &FuzzyNum, g1: &FuzzyNum) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let pairs = [
        (f0.lower() - g0.lower(), f1.lower() - g1.lower()),
        (f0.upper() - g0.upper(), f1.upper() - g1.upper()),
    ];
    for (d0, d1) in pairs {
        let (_, x, y) = d0.aligned(&d1);
        for (&(xa, xb), &(ya, yb)) in x.iter().zip(&y) {
            out.push((xa, ya));
            out.push((xb, yb));
        }
    }
    out
}

impl FnCurve {
    pub fn new(t_grid: Vec<f64>, values: Vec<FuzzyNum>) -> Result<Self> {
        if t_grid.len() < 2 {
            return Err(Error::MalformedFunction(
                "a curve needs at least the two endpoints a < b".into(),
            ));
        }
        if t_grid.len() != values.len() {
            return Err(Error::MalformedFunction(format!(
                "{} grid points but {} values",
                t_grid.len(),
                values.len()
            )));
        }
        if t_grid.iter().any(|t| !t.is_finite()) || t_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::MalformedFunction(
                "t_grid must be finite and strictly increasing".into(),
            ));
        }
        Ok(Self { t_grid, values })
    }

    pub fn constant(a: f64, b: f64, u: FuzzyNum) -> Result<Self> {
        Self::new(vec![a, b], vec![u.clone(), u])
    }

    /// The curve moving levelwise-linearly from `u0` at `a` to `u1` at `b`.
    pub fn linear(a: f64, b: f64, u0: FuzzyNum, u1: FuzzyNum) -> Result<Self> {
        Self::new(vec![a, b], vec![u0, u1])
    }

    pub fn zero_on(a: f64, b: f64) -> Result<Self> {
        Self::constant(a, b, FuzzyNum::zero())
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.t_grid[0], *self.t_grid.last().unwrap())
    }

    pub fn t_grid(&self) -> &[f64] {
        &self.t_grid
    }

    pub fn values(&self) -> &[FuzzyNum] {
        &self.values
    }

    pub fn eval(&self, t: f64) -> Result<FuzzyNum> {
        let (a, b) = self.domain();
        if t.is_nan() || t < a || t > b {
            return Err(Error::OutOfDomain(t));
        }
        let i = self.t_grid.partition_point(|&x| x < t);
        if self.t_grid[i] == t {
            return Ok(self.values[i].clone());
        }
        let (t0, t1) = (self.t_grid[i - 1], self.t_grid[i]);
        Ok(blend(
            &self.values[i - 1],
            &self.values[i],
            (t - t0) / (t1 - t0),
        ))
    }

    fn check_same_domain(&self, other: &FnCurve) -> Result<()> {
        if self.domain() != other.domain() {
            return Err(Error::DomainMismatch(format!(
                "curves on {:?} and {:?}",
                self.domain(),
                other.domain()
            )));
        }
        Ok(())
    }

    /// Both curves sampled on their merged grid.
    fn aligned(&self, other: &FnCurve) -> Result<(Vec<f64>, Vec<FuzzyNum>, Vec<FuzzyNum>)> {
        self.check_same_domain(other)?;
        let grid = merged_grid(&self.t_grid, &other.t_grid);
        let xs = grid.iter().map(|&t| self.eval(t)).collect::<Result<_>>()?;
        let ys = grid.iter().map(|&t| other.eval(t)).collect::<Result<_>>()?;
        Ok((grid, xs, ys))
    }

    /// Samples on a grid spanning the same domain (refinement allowed).
    pub fn resample(&self, grid: &[f64]) -> Result<FnCurve> {
        let values = grid.iter().map(|&t| self.eval(t)).collect::<Result<_>>()?;
        let curve = FnCurve::new(grid.to_vec(), values)?;
        self.check_same_domain(&curve)?;
        Ok(curve)
    }

    pub fn add(&self, other: &FnCurve) -> Result<FnCurve> {
        let (grid, xs, ys) = self.aligned(other)?;
        let values = xs.iter().zip(&ys).map(|(x, y)| x + y).collect();
        FnCurve::new(grid, values)
    }

    pub fn scale(&self, lambda: f64) -> FnCurve {
        FnCurve {
            t_grid: self.t_grid.clone(),
            values: self.values.iter().map(|u| lambda * u).collect(),
        }
    }

    /// `D*(f, g) = sup_t D(f(t), g(t))`, attained on the merged grid.
    pub fn metric_dstar(&self, other: &FnCurve) -> Result<f64> {
        let (_, xs, ys) = self.aligned(other)?;
        Ok(xs
            .iter()
            .zip(&ys)
            .map(|(x, y)| x.metric_d(y))
            .fold(0.0, f64::max))
    }

    /// `D_p(f, g) = (∫_a^b D(f(t), g(t))^p dt)^{1/p}`.
    ///
    /// On each merged grid interval `t ↦ D(f(t), g(t))` is the maximum of
    /// finitely many `|affine|` functions; the integral of its `p`-th power
    /// is taken piece by piece along that envelope.
    pub fn metric_dp(&self, other: &FnCurve, p: f64) -> Result<f64> {
        if !(p.is_finite() && p >= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "p must satisfy 1 <= p < inf, got {p}"
            )));
        }
        let (grid, xs, ys) = self.aligned(other)?;
        let mut total = 0.0;
        for j in 0..grid.len() - 1 {
            let lines = difference_lines(&xs[j], &ys[j], &xs[j + 1], &ys[j + 1]);
            total += (grid[j + 1] - grid[j]) * envelope_power_integral(&lines, p);
        }
        Ok(total.powf(1.0 / p))
    }

    /// `‖f‖_F = D*(0̃, f)`.
    pub fn norm_sup(&self) -> f64 {
        self.values.iter().map(FuzzyNum::norm_f).fold(0.0, f64::max)
    }

    /// True iff every value is a real number.
    pub fn has_opposite(&self) -> bool {
        self.values.iter().all(FuzzyNum::is_crisp)
    }
}

impl PartialEq for FnCurve {
    /// Equal as functions of `t`: same domain and equal values on the merged grid.
    fn eq(&self, other: &Self) -> bool {
        match self.aligned(other) {
            Ok((_, xs, ys)) => xs == ys,
            Err(_) => false,
        }
    }
}
