//! Fuzzy numbers as pairs of level-endpoint functions.
//!
//! A fuzzy number `u` is stored through its level sets
//! `[u]^r = [lower(r), upper(r)]`, `r ∈ [0, 1]`. `lower` is nondecreasing,
//! `upper` is nonincreasing and `lower <= upper` everywhere, right limits
//! included. Addition and scalar multiplication act levelwise, and the
//! metric `D` is the sup over levels of the larger endpoint distance.

use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::levelfun::PlFun;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FuzzyRepr", into = "FuzzyOut")]
pub struct FuzzyNum {
    lower: PlFun,
    upper: PlFun,
}

/// A compact interval `[lo, hi]`, serialized as a two-element array.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(Error::BadShape(format!("[{lo}, {hi}] is not an interval")));
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = Error;
    fn try_from([lo, hi]: [f64; 2]) -> Result<Self> {
        Interval::new(lo, hi)
    }
}

impl From<Interval> for [f64; 2] {
    fn from(i: Interval) -> Self {
        [i.lo, i.hi]
    }
}

/// Accepted JSON forms; exactly one of them must be present.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FuzzyRepr {
    lower: Option<PlFun>,
    upper: Option<PlFun>,
    crisp: Option<f64>,
    triangular: Option<[f64; 3]>,
    trapezoidal: Option<[f64; 4]>,
}

#[derive(Serialize)]
struct FuzzyOut {
    lower: PlFun,
    upper: PlFun,
}

impl From<FuzzyNum> for FuzzyOut {
    fn from(u: FuzzyNum) -> Self {
        FuzzyOut {
            lower: u.lower,
            upper: u.upper,
        }
    }
}

impl TryFrom<FuzzyRepr> for FuzzyNum {
    type Error = Error;

    fn try_from(repr: FuzzyRepr) -> Result<Self> {
        match repr {
            FuzzyRepr {
                lower: Some(lower),
                upper: Some(upper),
                crisp: None,
                triangular: None,
                trapezoidal: None,
            } => FuzzyNum::new(lower, upper),
            FuzzyRepr {
                lower: None,
                upper: None,
                crisp: Some(a),
                triangular: None,
                trapezoidal: None,
            } => Ok(FuzzyNum::crisp(a)),
            FuzzyRepr {
                lower: None,
                upper: None,
                crisp: None,
                triangular: Some([a, b, c]),
                trapezoidal: None,
            } => FuzzyNum::triangular(a, b, c),
            FuzzyRepr {
                lower: None,
                upper: None,
                crisp: None,
                triangular: None,
                trapezoidal: Some([a, b, c, d]),
            } => FuzzyNum::trapezoidal(a, b, c, d),
            _ => Err(Error::NotAFuzzyNumber(
                "expected exactly one of {lower, upper}, crisp, triangular, trapezoidal".into(),
            )),
        }
    }
}

/// How far `(lower, upper)` is from satisfying the fuzzy-number invariants.
///
/// Zero exactly when `lower` is nondecreasing, `upper` is nonincreasing and
/// `lower <= upper`; otherwise the largest violation.
pub fn invariant_violation(lower: &PlFun, upper: &PlFun) -> f64 {
    fn rise(f: &PlFun) -> f64 {
        let segs = f.segments();
        let within = segs.iter().map(|&(a, b)| b - a);
        let across = segs.windows(2).map(|w| w[1].0 - w[0].1);
        within.chain(across).fold(0.0, f64::max)
    }
    let fall_of_lower = rise(&lower.negate());
    let rise_of_upper = rise(upper);
    let overlap = (lower - upper)
        .segments()
        .iter()
        .map(|&(a, b)| a.max(b))
        .fold(0.0, f64::max);
    fall_of_lower.max(rise_of_upper).max(overlap)
}

impl FuzzyNum {
    /// Validates the level-set invariants of a fuzzy number.
    pub fn new(lower: PlFun, upper: PlFun) -> Result<Self> {
        if lower.domain() != (0.0, 1.0) || upper.domain() != (0.0, 1.0) {
            return Err(Error::NotAFuzzyNumber(
                "endpoint functions must be defined on [0, 1]".into(),
            ));
        }
        if !lower.is_nondecreasing() {
            return Err(Error::NotAFuzzyNumber(
                "lower endpoint function must be nondecreasing".into(),
            ));
        }
        if !upper.is_nonincreasing() {
            return Err(Error::NotAFuzzyNumber(
                "upper endpoint function must be nonincreasing".into(),
            ));
        }
        if !lower.leq(&upper) {
            return Err(Error::NotAFuzzyNumber(
                "lower endpoint exceeds upper endpoint at some level".into(),
            ));
        }
        Ok(Self { lower, upper })
    }

    // callers guarantee the invariants
    fn from_parts(lower: PlFun, upper: PlFun) -> Self {
        Self { lower, upper }
    }

    /// The real number `a`, i.e. the characteristic function of `{a}`.
    pub fn crisp(a: f64) -> Self {
        Self::from_parts(PlFun::constant(a), PlFun::constant(a))
    }

    /// The neutral element `crisp(0)`.
    pub fn zero() -> Self {
        Self::crisp(0.0)
    }

    pub fn triangular(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::trapezoidal(a, b, b, c)
    }

    pub fn trapezoidal(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let vals = [a, b, c, d];
        if vals.iter().any(|v| !v.is_finite()) || !(a <= b && b <= c && c <= d) {
            return Err(Error::BadShape(format!(
                "need a <= b <= c <= d, got {a}, {b}, {c}, {d}"
            )));
        }
        Ok(Self::from_parts(PlFun::linear(a, b), PlFun::linear(d, c)))
    }

    pub fn lower(&self) -> &PlFun {
        &self.lower
    }

    pub fn upper(&self) -> &PlFun {
        &self.upper
    }

    pub fn level_set(&self, r: f64) -> Result<Interval> {
        Ok(Interval {
            lo: self.lower.eval(r)?,
            hi: self.upper.eval(r)?,
        })
    }

    pub fn add(&self, other: &FuzzyNum) -> FuzzyNum {
        Self::from_parts(&self.lower + &other.lower, &self.upper + &other.upper)
    }

    /// `λ ⊙ u`; a negative factor swaps the endpoint functions.
    pub fn scalar_mul(&self, lambda: f64) -> FuzzyNum {
        if lambda == 0.0 {
            Self::zero()
        } else if lambda > 0.0 {
            Self::from_parts(self.lower.scale(lambda), self.upper.scale(lambda))
        } else {
            Self::from_parts(self.upper.scale(lambda), self.lower.scale(lambda))
        }
    }

    /// Hukuhara difference: the `w` with `other ⊕ w = self`, if it exists.
    pub fn h_difference(&self, other: &FuzzyNum) -> Option<FuzzyNum> {
        FuzzyNum::new(&self.lower - &other.lower, &self.upper - &other.upper).ok()
    }

    pub fn metric_d(&self, other: &FuzzyNum) -> f64 {
        self.lower
            .sup_dist(&other.lower)
            .max(self.upper.sup_dist(&other.upper))
    }

    /// `‖u‖_F = D(u, 0̃)`.
    pub fn norm_f(&self) -> f64 {
        self.lower.sup_norm().max(self.upper.sup_norm())
    }

    /// The embedding `u ↦ (u_-, u_+)` into the product of endpoint spaces.
    pub fn embed(&self) -> (PlFun, PlFun) {
        (self.lower.clone(), self.upper.clone())
    }

    pub fn into_parts(self) -> (PlFun, PlFun) {
        (self.lower, self.upper)
    }

    /// Rebuilds a fuzzy number from a nested family of intervals given on a
    /// level grid `0 = r_0 < ... < r_k = 1`, interpolating endpoints linearly
    /// between grid levels.
    pub fn from_level_family(levels: &[(f64, Interval)]) -> Result<FuzzyNum> {
        if levels.len() < 2 {
            return Err(Error::MalformedFunction(
                "a level family needs at least the levels 0 and 1".into(),
            ));
        }
        for w in levels.windows(2) {
            let ((r, outer), (s, inner)) = (w[0], w[1]);
            if !outer.contains(&inner) {
                return Err(Error::NotNested(format!(
                    "[{}, {}] at level {s} is not inside [{}, {}] at level {r}",
                    inner.lo, inner.hi, outer.lo, outer.hi
                )));
            }
        }
        let rs: Vec<f64> = levels.iter().map(|(r, _)| *r).collect();
        let los: Vec<f64> = levels.iter().map(|(_, i)| i.lo).collect();
        let his: Vec<f64> = levels.iter().map(|(_, i)| i.hi).collect();
        let lower = PlFun::interpolate(&rs, &los)?;
        let upper = PlFun::interpolate(&rs, &his)?;
        if lower.domain() != (0.0, 1.0) {
            return Err(Error::MalformedFunction(format!(
                "level grid must run from 0 to 1, got {:?}",
                lower.domain()
            )));
        }
        Ok(Self::from_parts(lower, upper))
    }

    pub fn is_crisp(&self) -> bool {
        self.lower == self.upper
    }

    /// Only real numbers have an additive opposite: `v ⊕ u = 0̃` forces
    /// `v_- = -u_-` and `v_+ = -u_+`, which is a fuzzy number iff `u_- = u_+`.
    pub fn has_opposite(&self) -> bool {
        self.is_crisp()
    }

    pub fn opposite(&self) -> Option<FuzzyNum> {
        self.has_opposite().then(|| self.scalar_mul(-1.0))
    }
}

impl Add for &FuzzyNum {
    type Output = FuzzyNum;
    fn add(self, rhs: &FuzzyNum) -> FuzzyNum {
        FuzzyNum::add(self, rhs)
    }
}

impl Mul<&FuzzyNum> for f64 {
    type Output = FuzzyNum;
    fn mul(self, rhs: &FuzzyNum) -> FuzzyNum {
        rhs.scalar_mul(self)
    }
}

/// `max(‖f‖, ‖g‖)` on the product of endpoint spaces.
pub fn pair_norm(pair: &(PlFun, PlFun)) -> f64 {
    pair.0.sup_norm().max(pair.1.sup_norm())
}
